//! Finite-dimensional basic algebras given by a quiver together with their
//! indecomposable projective and injective representations, and the
//! homological machinery built on projective presentations.

use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Span};
use crate::quiver::{Quiver, Relation};

use super::path_algebra::PathAlgebraTable;
use super::representation::{right_inverse, Morphism, Representation};

/// A representation together with lazily computed data that depends on the
/// algebra it is considered over (presentation, path actions).
///
/// A `Module` must only ever be used with one algebra.
#[derive(Debug)]
pub struct Module<F> {
    rep: Representation<F>,
    presentation: OnceLock<Arc<Presentation<F>>>,
    actions: OnceLock<Arc<Vec<Vec<Matrix<F>>>>>,
}

impl<F: Field> Module<F> {
    pub fn new(rep: Representation<F>) -> Self {
        Module { rep, presentation: OnceLock::new(), actions: OnceLock::new() }
    }

    pub fn rep(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn into_rep(self) -> Representation<F> {
        self.rep
    }
}

impl<F: Field> Clone for Module<F> {
    fn clone(&self) -> Self {
        Module::new(self.rep.clone())
    }
}

impl<F> Deref for Module<F> {
    type Target = Representation<F>;

    fn deref(&self) -> &Representation<F> {
        &self.rep
    }
}

impl<F: Field> From<Representation<F>> for Module<F> {
    fn from(rep: Representation<F>) -> Self {
        Module::new(rep)
    }
}

/// Node of the spanning tree of words that gives the basis of a projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordNode {
    pub tgt: usize,
    /// Position of this basis vector inside `P(v)_tgt`.
    pub pos: usize,
    pub parent: Option<usize>,
    pub arrow: Option<usize>,
}

/// A minimal projective presentation `P1 → P0 → M → 0` (with `P1` given
/// by generators of the first syzygy).
#[derive(Debug)]
pub struct Presentation<F> {
    /// Top generators `(vertex, vector in M_vertex)`.
    pub gens: Vec<(usize, Vec<F>)>,
    /// Projective cover `P0 = ⊕_j P(v_j)` and the cover map.
    pub cover: Arc<Module<F>>,
    pub cover_map: Morphism<F>,
    /// Basis of `P0_u` as `(generator, word node)` pairs.
    pub cover_index: Vec<Vec<(usize, usize)>>,
    sections: Vec<Matrix<F>>,
    /// Kernel of the cover map with its inclusion into `P0`.
    pub syzygy: Arc<Module<F>>,
    pub syzygy_inclusion: Morphism<F>,
    /// Generators of the syzygy as `(vertex, vector in P0_vertex)`.
    pub relations: Vec<(usize, Vec<F>)>,
}

/// An `Ext^k` computation: its dimension and cocycles `Ω^k M → N`
/// representing a basis.
#[derive(Debug)]
pub struct ExtResult<F> {
    pub dim: usize,
    pub syzygy: Arc<Module<F>>,
    pub cocycles: Vec<Morphism<F>>,
}

/// A basic algebra presented by its quiver, optional relations, and
/// indecomposable projectives and injectives (one per vertex).
#[derive(Debug)]
pub struct FiniteAlgebra<F> {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    projectives: Vec<Arc<Module<F>>>,
    injectives: Vec<Arc<Module<F>>>,
    words: Vec<Vec<WordNode>>,
    opposite: OnceLock<Arc<FiniteAlgebra<F>>>,
}

/// Top generators of `m` as vectors: a basis of a complement of the radical.
fn top_generators<F: Field>(quiver: &Quiver, m: &Representation<F>) -> Vec<(usize, Vec<F>)> {
    let rad = m.radical_basis(quiver);
    let mut gens = Vec::new();
    for (v, rad_v) in rad.iter().enumerate() {
        let mut span = Span::new(m.dims[v]);
        for c in 0..rad_v.cols() {
            span.insert(&rad_v.column(c));
        }
        for i in 0..m.dims[v] {
            let mut e = vec![F::zero(); m.dims[v]];
            e[i] = F::one();
            if span.insert(&e) {
                gens.push((v, e));
            }
        }
    }
    gens
}

impl<F: Field> FiniteAlgebra<F> {
    /// Builds the algebra from its projectives `P(v)` (each must have simple
    /// top at `v`) and injectives `I(v)` (simple socle at `v`). Projectives
    /// are rewritten in a basis of words applied to their generator.
    pub fn from_projectives(
        quiver: Quiver,
        relations: Vec<Relation>,
        projectives: Vec<Representation<F>>,
        injectives: Vec<Representation<F>>,
    ) -> Result<Self> {
        let n = quiver.n_vertices();
        let mut words = Vec::with_capacity(n);
        let mut projs = Vec::with_capacity(n);
        for (v, p) in projectives.into_iter().enumerate() {
            let gens = top_generators(&quiver, &p);
            if gens.len() != 1 || gens[0].0 != v {
                return Err(MeshError::TheoryViolation(format!("projective at {v} does not have simple top")));
            }
            let mut spans: Vec<Span<F>> = p.dims.iter().map(|&d| Span::new(d)).collect();
            let mut cols: Vec<Vec<Vec<F>>> = vec![Vec::new(); n];
            let mut nodes: Vec<WordNode> = Vec::new();
            let mut vecs: Vec<Vec<F>> = Vec::new();
            spans[v].insert(&gens[0].1);
            cols[v].push(gens[0].1.clone());
            nodes.push(WordNode { tgt: v, pos: 0, parent: None, arrow: None });
            vecs.push(gens[0].1.clone());
            let mut head = 0;
            while head < nodes.len() {
                let u = nodes[head].tgt;
                for a in quiver.outgoing(u) {
                    let w = p.maps[a].mul_vec(&vecs[head]);
                    let t = quiver.arrows[a].tgt;
                    if spans[t].insert(&w) {
                        nodes.push(WordNode { tgt: t, pos: cols[t].len(), parent: Some(head), arrow: Some(a) });
                        cols[t].push(w.clone());
                        vecs.push(w);
                    }
                }
                head += 1;
            }
            if (0..n).any(|u| cols[u].len() != p.dims[u]) {
                return Err(MeshError::TheoryViolation(format!("projective at {v} is not cyclic")));
            }
            let bases: Vec<Matrix<F>> = (0..n).map(|u| Matrix::from_columns(p.dims[u], &cols[u])).collect();
            let invs: Vec<Matrix<F>> = bases.iter().map(|b| b.inverse().expect("word basis")).collect();
            let maps =
                quiver.arrows.iter().enumerate().map(|(k, a)| invs[a.tgt].mul(&p.maps[k]).mul(&bases[a.src])).collect();
            projs.push(Arc::new(Module::new(Representation { dims: p.dims.clone(), maps })));
            words.push(nodes);
        }
        Ok(FiniteAlgebra {
            quiver,
            relations,
            projectives: projs,
            injectives: injectives.into_iter().map(|i| Arc::new(Module::new(i))).collect(),
            words,
            opposite: OnceLock::new(),
        })
    }

    /// The algebra of a path-algebra quotient.
    pub fn from_table(table: &PathAlgebraTable<F>) -> Result<Self> {
        let n = table.quiver.n_vertices();
        Self::from_projectives(
            table.quiver.clone(),
            table.relations.clone(),
            (0..n).map(|v| table.projective(v)).collect(),
            (0..n).map(|v| table.injective(v)).collect(),
        )
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn dim(&self) -> usize {
        self.projectives.iter().map(|p| p.dim()).sum()
    }

    pub fn projective(&self, v: usize) -> Arc<Module<F>> {
        self.projectives[v].clone()
    }

    pub fn injective(&self, v: usize) -> Arc<Module<F>> {
        self.injectives[v].clone()
    }

    pub fn simple(&self, v: usize) -> Module<F> {
        Module::new(Representation::simple(&self.quiver, v))
    }

    pub fn words(&self, v: usize) -> &[WordNode] {
        &self.words[v]
    }

    /// The opposite algebra (quiver reversed, projectives and injectives
    /// exchanged by duality).
    pub fn opposite(&self) -> Arc<FiniteAlgebra<F>> {
        self.opposite
            .get_or_init(|| {
                let relations = self
                    .relations
                    .iter()
                    .map(|r| Relation {
                        terms: r.terms.iter().map(|(c, p)| (*c, p.iter().rev().copied().collect())).collect(),
                    })
                    .collect();
                Arc::new(
                    FiniteAlgebra::from_projectives(
                        self.quiver.opposite(),
                        relations,
                        self.injectives.iter().map(|i| i.dual()).collect(),
                        self.projectives.iter().map(|p| p.dual()).collect(),
                    )
                    .expect("duals of injectives are projective over the opposite algebra"),
                )
            })
            .clone()
    }

    /// Action matrices `N_w: N_v → N_tgt(w)` for every basis word `w` of
    /// every projective `P(v)`.
    pub fn actions(&self, n: &Module<F>) -> Arc<Vec<Vec<Matrix<F>>>> {
        n.actions
            .get_or_init(|| {
                Arc::new(
                    self.words
                        .iter()
                        .enumerate()
                        .map(|(v, nodes)| {
                            let mut out: Vec<Matrix<F>> = Vec::with_capacity(nodes.len());
                            for node in nodes {
                                let m = match (node.parent, node.arrow) {
                                    (Some(p), Some(a)) => n.maps[a].mul(&out[p]),
                                    _ => Matrix::identity(n.dims[v]),
                                };
                                out.push(m);
                            }
                            out
                        })
                        .collect(),
                )
            })
            .clone()
    }

    /// Minimal projective presentation of `m` (cached on the module).
    pub fn presentation(&self, m: &Module<F>) -> Arc<Presentation<F>> {
        m.presentation.get_or_init(|| Arc::new(self.compute_presentation(m))).clone()
    }

    fn compute_presentation(&self, m: &Module<F>) -> Presentation<F> {
        let q = &self.quiver;
        let n = q.n_vertices();
        let gens = top_generators(q, m);
        let parts: Vec<&Representation<F>> = gens.iter().map(|(v, _)| self.projectives[*v].rep()).collect();
        let cover = Representation::direct_sum(q, &parts);
        let mut cover_index: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut eps_cols: Vec<Vec<Vec<F>>> = vec![Vec::new(); n];
        for (j, (v, g)) in gens.iter().enumerate() {
            let nodes = &self.words[*v];
            let mut images: Vec<Vec<F>> = Vec::with_capacity(nodes.len());
            let mut per_vertex: Vec<Vec<(usize, usize, Vec<F>)>> = vec![Vec::new(); n];
            for (k, node) in nodes.iter().enumerate() {
                let img = match (node.parent, node.arrow) {
                    (Some(p), Some(a)) => m.maps[a].mul_vec(&images[p]),
                    _ => g.clone(),
                };
                per_vertex[node.tgt].push((node.pos, k, img.clone()));
                images.push(img);
            }
            for (u, mut list) in per_vertex.into_iter().enumerate() {
                list.sort_by_key(|(pos, _, _)| *pos);
                for (_, k, img) in list {
                    cover_index[u].push((j, k));
                    eps_cols[u].push(img);
                }
            }
        }
        let eps: Vec<Matrix<F>> = (0..n).map(|u| Matrix::from_columns(m.dims[u], &eps_cols[u])).collect();
        let sections = eps.iter().map(right_inverse).collect();
        let cover_map = Morphism { blocks: eps };
        let (syz, inclusion) = super::representation::kernel(q, &cover_map, &cover);
        let relations =
            top_generators(q, &syz).into_iter().map(|(u, v)| (u, inclusion.blocks[u].mul_vec(&v))).collect();
        Presentation {
            gens,
            cover: Arc::new(Module::new(cover)),
            cover_map,
            cover_index,
            sections,
            syzygy: Arc::new(Module::new(syz)),
            syzygy_inclusion: inclusion,
            relations,
        }
    }

    /// The linear system whose null space is `Hom(M, N)` in generator
    /// coordinates; returns it with the generator offsets.
    fn hom_system(&self, pres: &Presentation<F>, n: &Module<F>) -> (Matrix<F>, Vec<usize>, usize) {
        let act = self.actions(n);
        let mut offsets = Vec::with_capacity(pres.gens.len());
        let mut total = 0;
        for (v, _) in &pres.gens {
            offsets.push(total);
            total += n.dims[*v];
        }
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (u, r) in &pres.relations {
            let du = n.dims[*u];
            if du == 0 {
                continue;
            }
            let mut block = vec![vec![F::zero(); total]; du];
            for (idx, &(j, k)) in pres.cover_index[*u].iter().enumerate() {
                let c = &r[idx];
                if c.is_zero() {
                    continue;
                }
                let vj = pres.gens[j].0;
                let a = &act[vj][k];
                for (row, out) in block.iter_mut().enumerate() {
                    for col in 0..n.dims[vj] {
                        let x = a.get(row, col);
                        if !x.is_zero() {
                            out[offsets[j] + col].add_mul_assign(c, x);
                        }
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
        let sys = if rows.is_empty() { Matrix::zeros(0, total) } else { Matrix::from_rows(rows) };
        (sys, offsets, total)
    }

    /// Morphism determined by generator images (concatenated in `values`).
    fn morphism_from_values(
        &self,
        pres: &Presentation<F>,
        n: &Module<F>,
        offsets: &[usize],
        values: &[F],
    ) -> Morphism<F> {
        let act = self.actions(n);
        let blocks = (0..self.n_vertices())
            .map(|u| {
                let cols: Vec<Vec<F>> = pres.cover_index[u]
                    .iter()
                    .map(|&(j, k)| {
                        let vj = pres.gens[j].0;
                        act[vj][k].mul_vec(&values[offsets[j]..offsets[j] + n.dims[vj]])
                    })
                    .collect();
                let e = Matrix::from_columns(n.dims[u], &cols);
                e.mul(&pres.sections[u])
            })
            .collect();
        Morphism { blocks }
    }

    /// A basis of `Hom(M, N)`.
    pub fn hom_space(&self, m: &Module<F>, n: &Module<F>) -> Vec<Morphism<F>> {
        let pres = self.presentation(m);
        let (sys, offsets, total) = self.hom_system(&pres, n);
        let null = if sys.rows() == 0 { Matrix::identity(total) } else { sys.nullspace() };
        (0..null.cols()).map(|c| self.morphism_from_values(&pres, n, &offsets, &null.column(c))).collect()
    }

    pub fn hom_dim(&self, m: &Module<F>, n: &Module<F>) -> usize {
        let pres = self.presentation(m);
        let (sys, _, total) = self.hom_system(&pres, n);
        total - if sys.rows() == 0 { 0 } else { sys.rank() }
    }

    /// Projective cover `P0 → M`.
    pub fn projective_cover(&self, m: &Module<F>) -> (Arc<Module<F>>, Morphism<F>) {
        let pres = self.presentation(m);
        (pres.cover.clone(), pres.cover_map.clone())
    }

    /// First syzygy `Ω M`.
    pub fn syzygy(&self, m: &Module<F>) -> Arc<Module<F>> {
        self.presentation(m).syzygy.clone()
    }

    /// `Ω^k M` (with `Ω^0 M = M`).
    pub fn syzygy_power(&self, m: &Arc<Module<F>>, k: usize) -> Arc<Module<F>> {
        (0..k).fold(m.clone(), |x, _| self.syzygy(&x))
    }

    pub fn is_projective(&self, m: &Module<F>) -> bool {
        self.presentation(m).cover.dim() == m.dim()
    }

    /// `dim Ext^k(M, N)` for `k ≥ 1`, by dimension shifting.
    pub fn ext_dim(&self, k: usize, m: &Arc<Module<F>>, n: &Module<F>) -> usize {
        assert!(k >= 1, "Ext degree starts at 1");
        let x = self.syzygy_power(m, k - 1);
        let pres = self.presentation(&x);
        let cover_hom: usize = pres.gens.iter().map(|(v, _)| n.dims[*v]).sum();
        self.hom_dim(&pres.syzygy, n) + self.hom_dim(&x, n) - cover_hom
    }

    /// `Ext^k(M, N)` with representing cocycles `Ω^k M → N`.
    pub fn ext(&self, k: usize, m: &Arc<Module<F>>, n: &Module<F>) -> Result<ExtResult<F>> {
        if !(1..=3).contains(&k) {
            return Err(MeshError::PreconditionViolated(format!("Ext degree {k} outside 1..=3")));
        }
        let x = self.syzygy_power(m, k - 1);
        let pres = self.presentation(&x);
        let omega = pres.syzygy.clone();
        let homs = self.hom_space(&omega, n);
        let ambient = homs.first().map_or(0, |h| h.flatten().len());
        let mut span = Span::new(ambient);
        let act = self.actions(n);
        // Coboundaries: restrictions of maps P0 → N.
        for (j, (v, _)) in pres.gens.iter().enumerate() {
            for e in 0..n.dims[*v] {
                let blocks: Vec<Matrix<F>> = (0..self.n_vertices())
                    .map(|u| {
                        let cols: Vec<Vec<F>> = pres.cover_index[u]
                            .iter()
                            .map(|&(jj, kk)| if jj == j { act[*v][kk].column(e) } else { vec![F::zero(); n.dims[u]] })
                            .collect();
                        Matrix::from_columns(n.dims[u], &cols)
                    })
                    .collect();
                let phi = Morphism { blocks }.after(&pres.syzygy_inclusion);
                if ambient > 0 {
                    span.insert(&phi.flatten());
                }
            }
        }
        let cocycles: Vec<Morphism<F>> = homs.into_iter().filter(|h| span.insert(&h.flatten())).collect();
        Ok(ExtResult { dim: cocycles.len(), syzygy: omega, cocycles })
    }

    /// First cosyzygy `M → I(M) → Σ M`, via duality with the opposite algebra.
    pub fn cosyzygy(&self, m: &Module<F>) -> Arc<Module<F>> {
        let op = self.opposite();
        let dual = Module::new(m.dual());
        let omega = op.syzygy(&dual);
        Arc::new(Module::new(omega.dual()))
    }

    /// Multiplicities of the injectives in the injective envelope.
    pub fn injective_envelope_dims(&self, m: &Module<F>) -> Vec<usize> {
        m.socle_dims(&self.quiver)
    }

    /// Dimension of `End(M) / rad End(M)`, via the trace form.
    pub fn end_semisimple_dim(&self, m: &Module<F>) -> usize {
        let end = self.hom_space(m, m);
        semisimple_rank(&end)
    }
}

/// Rank of the trace form `(f, g) ↦ tr(f ∘ g)` on a basis of an
/// endomorphism algebra, i.e. the dimension of its semisimple quotient.
pub fn semisimple_rank<F: Field>(end: &[Morphism<F>]) -> usize {
    let n = end.len();
    if n == 0 {
        return 0;
    }
    let gram = Matrix::from_fn(n, n, |i, j| end[i].after(&end[j]).trace());
    gram.rank()
}

/// Whether the endomorphism algebra spanned by `end` is local with residue
/// field the ground field.
pub fn is_local<F: Field>(end: &[Morphism<F>]) -> bool {
    semisimple_rank(end) == 1
}

/// Whether indecomposables `x` and `y` (with local endomorphism rings) are
/// isomorphic: some composite `Y → X → Y` has nonzero trace.
pub fn isomorphic_indecomposables<F: Field>(alg: &FiniteAlgebra<F>, x: &Module<F>, y: &Module<F>) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let f = alg.hom_space(x, y);
    if f.is_empty() {
        return false;
    }
    let g = alg.hom_space(y, x);
    f.iter().any(|fi| g.iter().any(|gj| !gj.after(fi).trace().is_zero()))
}

/// Multiplicity of the indecomposable `x` as a direct summand of `m`.
pub fn multiplicity<F: Field>(alg: &FiniteAlgebra<F>, x: &Module<F>, m: &Module<F>) -> usize {
    let f = alg.hom_space(x, m);
    let g = alg.hom_space(m, x);
    if f.is_empty() || g.is_empty() {
        return 0;
    }
    Matrix::from_fn(f.len(), g.len(), |i, j| g[j].after(&f[i]).trace()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_engine::path_algebra::build_algebra;
    use crate::algebra_engine::representation::hom_space_quiver;
    use crate::field::Q;
    use crate::quiver::Arrow;

    /// `0 → 1 → 2` with the composite killed.
    fn a3_rad2() -> FiniteAlgebra<Q> {
        let q = Quiver::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![Arrow { id: "a".into(), src: 0, tgt: 1 }, Arrow { id: "b".into(), src: 1, tgt: 2 }],
        );
        let rel = Relation { terms: vec![(1, vec![0, 1])] };
        FiniteAlgebra::from_table(&build_algebra(&q, &[rel], 10).unwrap()).unwrap()
    }

    #[test]
    fn presentation_hom_matches_quiver_hom() {
        let alg = a3_rad2();
        let mods: Vec<Module<Q>> = (0..3)
            .flat_map(|v| [alg.projective(v).as_ref().clone(), alg.injective(v).as_ref().clone(), alg.simple(v)])
            .collect();
        for m in &mods {
            for n in &mods {
                let expected = hom_space_quiver(&alg.quiver, m, n).len();
                assert_eq!(alg.hom_dim(m, n), expected);
                for f in alg.hom_space(m, n) {
                    assert!(f.is_morphism(&alg.quiver, m, n));
                }
            }
        }
    }

    #[test]
    fn ext_of_simples() {
        let alg = a3_rad2();
        let s: Vec<Arc<Module<Q>>> = (0..3).map(|v| Arc::new(alg.simple(v))).collect();
        assert_eq!(alg.ext_dim(1, &s[0], &s[1]), 1);
        assert_eq!(alg.ext_dim(1, &s[1], &s[0]), 0);
        assert_eq!(alg.ext_dim(2, &s[0], &s[2]), 1);
        let e = alg.ext(2, &s[0], &s[2]).unwrap();
        assert_eq!(e.dim, 1);
        assert!(alg.is_projective(&alg.syzygy_power(&s[0], 3)));
        assert_eq!(alg.dim(), 5);
    }

    #[test]
    fn cosyzygy_of_simple() {
        let alg = a3_rad2();
        let s = alg.simple(1);
        let c = alg.cosyzygy(&s);
        assert_eq!(c.dims, vec![1, 0, 0]);
        let op = alg.opposite();
        assert_eq!(op.dim(), 5);
    }
}
