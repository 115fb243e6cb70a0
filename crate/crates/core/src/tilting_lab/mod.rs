//! γ-equivariant cluster tilting modules over a mesh algebra: the start
//! module, orbit bookkeeping, rigidity, exchange sequences and mutation,
//! and the endomorphism algebra with its homological invariants.

mod approx;
mod endo;
mod labels;

use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

pub use approx::{
    minimal_left_approx, mutate, mutate_sequence, mutate_with_seed, Approximation, ExchangeRecord, ExchangeSequence,
};
pub use endo::{
    cartan_data, end_algebra, end_data, end_quiver_and_cartan, exchange_matrix, ext_simples, homological_profile,
    EndData, EndQuiver, ExchangeMatrices, HomologicalProfile,
};
pub use labels::{OrbitLabel, SummandLabel};

use crate::algebra_engine::{
    build_algebra, isomorphic_indecomposables, FiniteAlgebra, LoewyDiagram, Module, Morphism, PathAlgebraTable,
    Representation,
};
use crate::dynkin_core::DynkinSpec;
use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::matrix_mutation::{Orbit, OrbitPartitionSpec};
use crate::mesh_calculus::AuslanderAlgebra;
use crate::par;
use crate::quiver::Quiver;
use crate::translation_quiver::{fold, OrbitPresentation};

/// Direction of `γ` relative to the relabelling `σ̃`: `γ(M) = twist^{s}(M)`
/// with `s = GAMMA_SIGN`, where `(twist M)_v = M_{σ̃ v}`.
pub const GAMMA_SIGN: i64 = -1;

/// The mesh algebra `Λ` of a folded Dynkin type, with the Auslander
/// category used to build its start module.
#[derive(Debug)]
pub struct MeshAlgebra<F> {
    pub spec: DynkinSpec,
    pub fold: OrbitPresentation,
    pub quiver: Quiver,
    pub table: PathAlgebraTable<F>,
    pub algebra: FiniteAlgebra<F>,
    pub auslander: AuslanderAlgebra<F>,
}

impl<F: Field> MeshAlgebra<F> {
    pub fn new(spec: &DynkinSpec) -> Result<Self> {
        let fold = fold(spec)?;
        let copies = spec.coxeter_copies.ok_or_else(|| MeshError::UnsupportedOrientation(spec.base_name.clone()))?;
        let quiver = fold.quiver();
        let table = build_algebra(&quiver, &fold.mesh_relations, 6 * copies)?;
        let algebra = FiniteAlgebra::from_table(&table)?;
        let auslander = AuslanderAlgebra::new(spec)?;
        Ok(MeshAlgebra { spec: spec.clone(), fold, quiver, table, algebra, auslander })
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::new(&DynkinSpec::from_tag(tag)?)
    }

    /// `σ̃`-relabelling applied `k` times (any integer `k`).
    pub fn twist(&self, m: &Representation<F>, k: i64) -> Representation<F> {
        let order = self.spec.sigma_order() as i64;
        let k = k.rem_euclid(order);
        (0..k).fold(m.clone(), |acc, _| acc.twist(&self.fold.sigma_vertices, &self.fold.sigma_arrows))
    }

    /// `γ^k(M)`.
    pub fn gamma(&self, m: &Representation<F>, k: i64) -> Representation<F> {
        self.twist(m, GAMMA_SIGN * k)
    }

    /// `γ^k` applied to a morphism (blocks relabelled like the vertices).
    pub fn gamma_morphism(&self, f: &Morphism<F>, k: i64) -> Morphism<F> {
        let order = self.spec.sigma_order() as i64;
        let k = (GAMMA_SIGN * k).rem_euclid(order);
        let mut blocks = f.blocks.clone();
        for _ in 0..k {
            blocks = self.fold.sigma_vertices.iter().map(|&v| blocks[v].clone()).collect();
        }
        Morphism { blocks }
    }

    /// Push-down of a representation of the Auslander category.
    pub fn pushdown(&self, m: &Representation<F>) -> Result<Representation<F>> {
        let aus = &self.auslander;
        let n = self.quiver.n_vertices();
        let mut dims = vec![0; n];
        let mut offsets = vec![0; aus.vertices.len()];
        for (k, &y) in aus.vertices.iter().enumerate() {
            let v = self.fold.project(y);
            offsets[k] = dims[v];
            dims[v] += m.dims[k];
        }
        let mut maps: Vec<crate::linalg::Matrix<F>> =
            self.quiver.arrows.iter().map(|a| crate::linalg::Matrix::zeros(dims[a.tgt], dims[a.src])).collect();
        for (k, &a) in aus.arrows.iter().enumerate() {
            let b = self.fold.project_arrow(a);
            let arrow = &aus.quiver.arrows[k];
            let block = &m.maps[k];
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    maps[b].set(offsets[arrow.tgt] + r, offsets[arrow.src] + c, block.get(r, c).clone());
                }
            }
        }
        let rep = Representation::new(&self.quiver, dims, maps)?;
        rep.check_relations(&self.quiver, &self.fold.mesh_relations)?;
        Ok(rep)
    }

    /// The start-module summand `T(x_i)`: the push-down of `I(i, σ^i x)`.
    pub fn start_summand(&self, label: SummandLabel) -> Result<Representation<F>> {
        let y = (label.level as i64, self.spec.sigma_pow(label.vertex, label.level as i64));
        self.pushdown(&self.auslander.injective(y)?)
    }

    pub fn loewy(&self, m: &Representation<F>) -> LoewyDiagram {
        m.loewy_diagram(&self.quiver)
    }
}

/// An indecomposable summand of a cluster tilting module.
#[derive(Clone, Debug)]
pub struct Summand<F> {
    pub label: SummandLabel,
    pub module: Arc<Module<F>>,
    pub projective: bool,
}

/// Pairwise Hom bases: `homs[i][j]` is a basis of `Hom(T_i, T_j)`.
pub type HomTable<F> = Vec<Vec<Arc<Vec<Morphism<F>>>>>;

/// A basic γ-equivariant cluster tilting module, as a list of labelled
/// indecomposable summands (in `(level, vertex)` label order) together with
/// the partition into γ-orbits.
#[derive(Debug)]
pub struct CTModule<F> {
    pub summands: Vec<Summand<F>>,
    /// Orbits as summand indices in γ-order, starting from the least
    /// member; orbits are ordered by their least member.
    pub orbits: Vec<Vec<usize>>,
    homs: OnceLock<Arc<HomTable<F>>>,
}

impl<F: Field> CTModule<F> {
    pub fn new(summands: Vec<Summand<F>>, orbits: Vec<Vec<usize>>) -> Self {
        CTModule { summands, orbits, homs: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.summands.iter().map(|s| s.label.to_string()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.summands.iter().position(|s| s.label.to_string() == label || s.label.base_string() == label)
    }

    pub fn orbit_label(&self, o: usize) -> OrbitLabel {
        OrbitLabel::of(self.orbits[o].iter().map(|&i| self.summands[i].label))
    }

    pub fn orbit_labels(&self) -> Vec<String> {
        (0..self.orbits.len()).map(|o| self.orbit_label(o).to_string()).collect()
    }

    /// Finds an orbit by its label (`{1,2}@1`, `{1,2}_1`) or by any member
    /// label (`1_1`).
    pub fn find_orbit(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if let Ok(label) = text.parse::<OrbitLabel>() {
            let same = |l: OrbitLabel| l.vertices == label.vertices && l.level == label.level;
            if let Some(o) = (0..self.orbits.len()).find(|&o| same(self.orbit_label(o))) {
                return Ok(o);
            }
        }
        if let Some(i) = self.index_of(text) {
            return Ok(self.orbits.iter().position(|o| o.contains(&i)).expect("every summand lies in an orbit"));
        }
        Err(MeshError::LabelNotFound(text.to_string()))
    }

    pub fn orbit_is_projective(&self, o: usize) -> bool {
        self.orbits[o].iter().any(|&i| self.summands[i].projective)
    }

    /// The orbit partition in matrix-label form.
    pub fn partition(&self) -> OrbitPartitionSpec {
        OrbitPartitionSpec::new(
            (0..self.orbits.len())
                .map(|o| Orbit {
                    name: self.orbit_label(o).to_string(),
                    members: self.orbits[o].iter().map(|&i| self.summands[i].label.to_string()).collect(),
                })
                .collect(),
        )
    }

    pub fn projective_labels(&self) -> Vec<String> {
        self.summands.iter().filter(|s| s.projective).map(|s| s.label.to_string()).collect()
    }

    /// The direct sum of all summands.
    pub fn total(&self, quiver: &Quiver) -> Module<F> {
        let parts: Vec<&Representation<F>> = self.summands.iter().map(|s| s.module.rep()).collect();
        Module::new(Representation::direct_sum(quiver, &parts))
    }

    /// Pairwise Hom bases, computed once.
    pub fn homs(&self, alg: &FiniteAlgebra<F>) -> Arc<HomTable<F>> {
        self.homs.get_or_init(|| Arc::new(compute_homs(alg, &self.summands, None))).clone()
    }

    fn with_homs(self, homs: HomTable<F>) -> Self {
        let _ = self.homs.set(Arc::new(homs));
        self
    }

    /// `dim Ext¹(T, T)`.
    pub fn self_extension_dim(&self, alg: &FiniteAlgebra<F>) -> usize {
        let total = self.total(&alg.quiver);
        par::map(&self.summands, |s| alg.ext_dim(1, &s.module, &total)).into_iter().sum()
    }

    /// Whether `other` has the same summands up to isomorphism (as a set,
    /// ignoring labels and order).
    pub fn same_summands(&self, other: &CTModule<F>, alg: &FiniteAlgebra<F>) -> bool {
        self.len() == other.len()
            && other
                .summands
                .iter()
                .all(|s| self.summands.iter().any(|t| isomorphic_indecomposables(alg, &s.module, &t.module)))
    }

    /// `γ` as a permutation of the summands (by isomorphism type).
    pub fn gamma_permutation(&self, mesh: &MeshAlgebra<F>) -> Result<Vec<usize>> {
        gamma_permutation(mesh, &self.summands)
    }

    pub fn to_json(&self, mesh: &MeshAlgebra<F>) -> Value {
        json!({
            "type": mesh.spec.folded_type.to_string(),
            "field": F::NAME,
            "summands": self.summands.iter().map(|s| json!({
                "label": s.label.to_string(),
                "dims": s.module.dims,
                "projective": s.projective,
                "loewy": mesh.loewy(s.module.rep()).to_string(),
            })).collect::<Vec<_>>(),
            "orbits": (0..self.orbits.len()).map(|o| json!({
                "label": self.orbit_label(o).to_string(),
                "members": self.orbits[o].iter().map(|&i| self.summands[i].label.to_string()).collect::<Vec<_>>(),
                "projective": self.orbit_is_projective(o),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, mesh: &MeshAlgebra<F>) -> String {
        let mut out = format!(
            "{} summands in {} orbits over {}\n",
            self.summands.len(),
            self.orbits.len(),
            mesh.spec.folded_type
        );
        for s in &self.summands {
            out.push_str(&format!(
                "T({}){}  dims {:?}  {}\n",
                s.label,
                if s.projective { " [proj]" } else { "" },
                s.module.dims,
                mesh.loewy(s.module.rep())
            ));
        }
        out.push_str("orbits:");
        for o in 0..self.orbits.len() {
            out.push_str(&format!(" {}", self.orbit_label(o)));
        }
        out.push('\n');
        out
    }
}

/// Lookup of already computed Hom bases between summand indices.
type KnownHoms<'a, F> = &'a (dyn Fn(usize, usize) -> Option<Arc<Vec<Morphism<F>>>> + Sync);

fn compute_homs<F: Field>(
    alg: &FiniteAlgebra<F>,
    summands: &[Summand<F>],
    known: Option<KnownHoms<'_, F>>,
) -> HomTable<F> {
    let n = summands.len();
    let flat = par::map_range(n * n, |k| {
        let (i, j) = (k / n, k % n);
        if let Some(h) = known.and_then(|f| f(i, j)) {
            return h;
        }
        Arc::new(alg.hom_space(&summands[i].module, &summands[j].module))
    });
    let mut rows: HomTable<F> = Vec::with_capacity(n);
    let mut it = flat.into_iter();
    for _ in 0..n {
        rows.push(it.by_ref().take(n).collect());
    }
    rows
}

fn gamma_permutation<F: Field>(mesh: &MeshAlgebra<F>, summands: &[Summand<F>]) -> Result<Vec<usize>> {
    par::map(summands, |s| {
        let twisted = Module::new(mesh.gamma(s.module.rep(), 1));
        summands
            .iter()
            .position(|t| isomorphic_indecomposables(&mesh.algebra, &twisted, &t.module))
            .ok_or_else(|| MeshError::NotGammaAction(format!("twist of {} is not a summand", s.label)))
    })
    .into_iter()
    .collect()
}

/// Orbits of a permutation, each in cycle order from its least element.
fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            orbit.push(x);
            x = perm[x];
        }
        out.push(orbit);
    }
    out
}

/// The start module: one summand `T(x_i) = F_* I(i, σ^i x)` per vertex of
/// the Auslander rectangle, with its γ-orbits. Rigidity is verified.
pub fn start_module<F: Field>(mesh: &MeshAlgebra<F>) -> Result<CTModule<F>> {
    let ct = start_module_unchecked(mesh)?;
    let ext = ct.self_extension_dim(&mesh.algebra);
    if ext != 0 {
        return Err(MeshError::RigidityFailure(format!("start module has dim Ext¹(T, T) = {ext}")));
    }
    Ok(ct)
}

/// The start module without the rigidity check.
pub fn start_module_unchecked<F: Field>(mesh: &MeshAlgebra<F>) -> Result<CTModule<F>> {
    let copies = mesh.spec.coxeter_copies.expect("mesh algebra has a rectangle");
    let labels: Vec<SummandLabel> =
        (0..copies).flat_map(|i| mesh.spec.base_vertices.iter().map(move |&v| SummandLabel::new(v, i))).collect();
    let summands: Vec<Summand<F>> = par::try_map(&labels, |&label| {
        let rep = mesh.start_summand(label)?;
        let module = Arc::new(Module::new(rep));
        let projective = mesh.algebra.is_projective(&module);
        Ok::<_, MeshError>(Summand { label, module, projective })
    })?;
    let perm = gamma_permutation(mesh, &summands)?;
    let orbits = cycles(&perm);
    Ok(CTModule::new(summands, orbits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn cycles_start_at_least_member() {
        assert_eq!(cycles(&[0, 2, 1, 4, 5, 3]), vec![vec![0], vec![1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn b2_start_module() {
        let mesh = MeshAlgebra::<Q>::from_tag("B2").unwrap();
        let t = start_module(&mesh).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.orbits.len(), 4);
        assert_eq!(t.summands.iter().filter(|s| s.projective).count(), 3);
    }
}
