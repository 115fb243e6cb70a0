//! Hom dimensions in the mesh category of `ZΔ` by knitting, the dimension
//! data of the injectives of the Auslander category, and covering-sum
//! oracles built on explicit linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::algebra_engine::{build_algebra, hom_space_quiver, FiniteAlgebra, PathAlgebraTable, Representation};
use crate::dynkin_core::DynkinSpec;
use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{Quiver, Relation};
use crate::translation_quiver::{
    auslander_rectangle, build_window, vertex_name, GroupElement, OrbitPresentation, TranslationWindow, Vertex, ZArrow,
};

/// `z ↦ dim Hom(x, z)` in the mesh category, on its (finite) support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammockTable {
    pub source: Vertex,
    pub values: BTreeMap<Vertex, usize>,
}

impl HammockTable {
    pub fn get(&self, z: Vertex) -> usize {
        self.values.get(&z).copied().unwrap_or(0)
    }

    /// The same table for the source moved by `τ^k`.
    fn shifted(&self, k: i64) -> HammockTable {
        HammockTable {
            source: (self.source.0 + k, self.source.1),
            values: self.values.iter().map(|(&(i, v), &h)| ((i + k, v), h)).collect(),
        }
    }

    /// Aligned text: one row per level, one column per base vertex.
    pub fn to_text(&self, spec: &DynkinSpec) -> String {
        let mut out = format!("hammock from {}\n", vertex_name(self.source));
        out.push_str("level");
        for v in &spec.base_vertices {
            out.push_str(&format!(" {v:>3}"));
        }
        out.push('\n');
        let levels: Vec<i64> = {
            let mut l: Vec<i64> = self.values.keys().map(|x| x.0).collect();
            l.dedup();
            l.reverse();
            l
        };
        for i in levels {
            out.push_str(&format!("{i:>5}"));
            for &v in &spec.base_vertices {
                out.push_str(&format!(" {:>3}", self.get((i, v))));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": vertex_name(self.source),
            "values": self.values.iter().map(|(&z, &h)| (vertex_name(z), h)).collect::<BTreeMap<_, _>>(),
        })
    }
}

/// Base vertices in a topological order of the base orientation.
fn topological_order(spec: &DynkinSpec) -> Vec<usize> {
    let n = spec.n();
    let mut indeg = vec![0; n];
    for &(_, w) in &spec.base_arrows {
        indeg[w] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, w) in &spec.base_arrows {
            if s == v {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    order
}

/// Knits `dim Hom(x, −)` from `x` downwards:
/// `h(x) = 1`, `h(z) = max(0, Σ_{y → z} h(y) − h(τz))` otherwise.
pub fn knit(spec: &DynkinSpec, x: Vertex) -> Result<HammockTable> {
    let order = topological_order(spec);
    let cap = 4 * spec.coxeter_copies.unwrap_or_else(|| spec.base_positive_roots());
    let mut values: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut level = x.0;
    loop {
        if (x.0 - level) as usize >= cap {
            return Err(MeshError::NonTerminatingGrowth(cap));
        }
        let mut any = false;
        for &w in &order {
            let z = (level, w);
            let h = if z == x {
                1
            } else {
                let incoming: i64 = TranslationWindow::all_arrows_into(spec, z)
                    .iter()
                    .map(|a| values.get(&a.src(spec)).copied().unwrap_or(0) as i64)
                    .sum();
                let tau = values.get(&(level + 1, w)).copied().unwrap_or(0) as i64;
                (incoming - tau).max(0) as usize
            };
            if h > 0 {
                values.insert(z, h);
                any = true;
            }
        }
        if !any && level < x.0 {
            break;
        }
        level -= 1;
    }
    Ok(HammockTable { source: x, values })
}

/// Memoized knitting, keyed by base vertex (tables are translation
/// invariant). Safe for concurrent readers.
#[derive(Debug)]
pub struct HammockCache {
    spec: DynkinSpec,
    tables: RwLock<HashMap<usize, Arc<HammockTable>>>,
}

impl HammockCache {
    pub fn new(spec: &DynkinSpec) -> Self {
        HammockCache { spec: spec.clone(), tables: RwLock::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &DynkinSpec {
        &self.spec
    }

    fn base_table(&self, v: usize) -> Result<Arc<HammockTable>> {
        if let Some(t) = self.tables.read().expect("cache lock").get(&v) {
            return Ok(t.clone());
        }
        let table = Arc::new(knit(&self.spec, (0, v))?);
        let mut guard = self.tables.write().expect("cache lock");
        Ok(guard.entry(v).or_insert(table).clone())
    }

    pub fn hammock(&self, x: Vertex) -> Result<HammockTable> {
        Ok(self.base_table(x.1)?.shifted(x.0))
    }

    /// `dim Hom(x, z)` in the mesh category of `ZΔ`.
    pub fn hom_dim(&self, x: Vertex, z: Vertex) -> Result<usize> {
        Ok(self.base_table(x.1)?.get((z.0 - x.0, z.1)))
    }

    /// Dimension vector of the injective `I(x)` of the Auslander category:
    /// `y ↦ dim Hom(y, x)` for `y` in the rectangle.
    pub fn injective_dim_vector(&self, x: Vertex) -> Result<BTreeMap<Vertex, usize>> {
        let rect = auslander_rectangle(&self.spec)?;
        if !rect.contains(&x) {
            return Err(MeshError::VertexOutsideRectangle(x.0, x.1));
        }
        let mut out = BTreeMap::new();
        for y in rect {
            let h = self.hom_dim(y, x)?;
            if h > 0 {
                out.insert(y, h);
            }
        }
        Ok(out)
    }

    /// Dimension vector of the push-down of `I(x)` to the folded quiver.
    pub fn pushdown_dim_vector(&self, x: Vertex, fold: &OrbitPresentation) -> Result<Vec<usize>> {
        let mut dims = vec![0; fold.folded_vertices.len()];
        for (y, h) in self.injective_dim_vector(x)? {
            dims[fold.project(y)] += h;
        }
        Ok(dims)
    }
}

/// The Auslander category `Γ_Δ`: the mesh category restricted to the
/// rectangle, as a quiver with relations and its algebra.
#[derive(Debug)]
pub struct AuslanderAlgebra<F> {
    pub spec: DynkinSpec,
    /// Rectangle vertices in `(level, vertex)` order (the quiver's order).
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<ZArrow>,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub table: PathAlgebraTable<F>,
    index: HashMap<Vertex, usize>,
    arrow_index: HashMap<ZArrow, usize>,
}

impl<F: Field> AuslanderAlgebra<F> {
    pub fn new(spec: &DynkinSpec) -> Result<Self> {
        let rect = auslander_rectangle(spec)?;
        let m = spec.coxeter_copies.expect("rectangle exists");
        let window = build_window(spec, 0, m as i64 - 1)?;
        let (quiver, relations, vertices, arrows) = window.restrict(&rect);
        let table = build_algebra(&quiver, &relations, 6 * m)?;
        let index = vertices.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let arrow_index = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        Ok(AuslanderAlgebra { spec: spec.clone(), vertices, arrows, quiver, relations, table, index, arrow_index })
    }

    pub fn vertex_index(&self, x: Vertex) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn arrow_index(&self, a: ZArrow) -> Option<usize> {
        self.arrow_index.get(&a).copied()
    }

    pub fn algebra(&self) -> Result<FiniteAlgebra<F>> {
        FiniteAlgebra::from_table(&self.table)
    }

    /// `dim Hom(y, x)` read off the path basis: paths from `y` to `x`.
    pub fn hom_dim(&self, y: Vertex, x: Vertex) -> Result<usize> {
        let yi = self.vertex_index(y).ok_or(MeshError::VertexOutsideRectangle(y.0, y.1))?;
        let xi = self.vertex_index(x).ok_or(MeshError::VertexOutsideRectangle(x.0, x.1))?;
        Ok(self.table.elements_between(yi, xi).len())
    }

    /// The injective `I(x)` over `Γ_Δ`.
    pub fn injective(&self, x: Vertex) -> Result<Representation<F>> {
        let xi = self.vertex_index(x).ok_or(MeshError::VertexOutsideRectangle(x.0, x.1))?;
        Ok(self.table.injective(xi))
    }

    /// A `Γ_Δ`-representation moved by `g` and placed in `window`, extended by zero.
    pub fn to_window(
        &self,
        m: &Representation<F>,
        g: GroupElement,
        window: &TranslationWindow,
    ) -> Result<Representation<F>> {
        let spec = &self.spec;
        let wq = window.quiver();
        let mut dims = vec![0; wq.n_vertices()];
        for (k, &y) in self.vertices.iter().enumerate() {
            if m.dims[k] == 0 {
                continue;
            }
            let gy = g.act(spec, y);
            let wi = window.vertex_index(gy).ok_or(MeshError::VertexOutsideRectangle(gy.0, gy.1))?;
            dims[wi] = m.dims[k];
        }
        let mut maps: Vec<Matrix<F>> = wq.arrows.iter().map(|a| Matrix::zeros(dims[a.tgt], dims[a.src])).collect();
        for (k, &a) in self.arrows.iter().enumerate() {
            if m.maps[k].rows() == 0 || m.maps[k].cols() == 0 {
                continue;
            }
            let ga = g.act_arrow(spec, a);
            let wi =
                window.arrow_index(ga).ok_or_else(|| MeshError::Parse(format!("arrow {} outside window", ga.id())))?;
            maps[wi] = m.maps[k].clone();
        }
        Representation::new(&wq, dims, maps)
    }

    /// `Σ_k dim Hom(I(y), (στ)^k I(x))` over all `k` for which the supports
    /// can meet: the covering-theory count of `dim Hom(F_* I(y), F_* I(x))`.
    pub fn covering_hom_dim(&self, x: Vertex, y: Vertex) -> Result<usize> {
        let m = self.spec.coxeter_copies.expect("rectangle exists") as i64;
        let window = build_window(&self.spec, -(m - 1), 2 * (m - 1))?;
        let wq = window.quiver();
        let ix = self.injective(x)?;
        let iy = self.to_window(&self.injective(y)?, GroupElement::sigma_tau(0), &window)?;
        let mut total = 0;
        for k in -(m - 1)..=(m - 1) {
            let gx = self.to_window(&ix, GroupElement::sigma_tau(k), &window)?;
            total += hom_space_quiver(&wq, &iy, &gx).len();
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin_core::{folding_datum, FoldedType};
    use crate::field::Q;
    use crate::translation_quiver::fold;

    #[test]
    fn a5_hammock_sizes() {
        let spec = folding_datum(FoldedType::B(3)).unwrap();
        let cache = HammockCache::new(&spec);
        assert_eq!(cache.hom_dim((1, 2), (1, 2)).unwrap(), 1);
        assert_eq!(cache.hom_dim((0, 2), (1, 2)).unwrap(), 0);
        let total: usize =
            auslander_rectangle(&spec).unwrap().into_iter().map(|y| cache.hom_dim(y, (0, 0)).unwrap()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn pushdowns_match_loewy_counts() {
        let spec = folding_datum(FoldedType::B(3)).unwrap();
        let f = fold(&spec).unwrap();
        let cache = HammockCache::new(&spec);
        assert_eq!(cache.pushdown_dim_vector((0, 0), &f).unwrap(), vec![3, 2, 2, 1, 1]);
        assert_eq!(cache.pushdown_dim_vector((2, 3), &f).unwrap(), vec![0, 0, 0, 1, 0]);
        assert_eq!(cache.pushdown_dim_vector((1, 2), &f).unwrap(), vec![1, 2, 1, 2, 0]);
        assert!(cache.injective_dim_vector((3, 0)).is_err());
    }

    #[test]
    fn knitting_matches_path_basis_b2() {
        let spec = folding_datum(FoldedType::B(2)).unwrap();
        let cache = HammockCache::new(&spec);
        let gamma = AuslanderAlgebra::<Q>::new(&spec).unwrap();
        for &x in &gamma.vertices {
            for &y in &gamma.vertices {
                assert_eq!(cache.hom_dim(y, x).unwrap(), gamma.hom_dim(y, x).unwrap(), "{y:?} -> {x:?}");
            }
        }
    }
}
