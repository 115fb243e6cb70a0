//! Finite windows of the translation quiver `ZΔ`, the action of `⟨στ⟩`, the
//! Auslander rectangle, and the folded quiver `ZΔ/⟨στ⟩` with its mesh
//! relations.
//!
//! Vertices of `ZΔ` are pairs `(i, v)`. A base arrow `α: v → w` yields
//! `α_i: (i, v) → (i, w)` and `α'_i: (i, w) → (i − 1, v)`; the translation is
//! `τ(i, v) = (i + 1, v)`, so paths run from higher to lower levels.

use std::collections::HashMap;

use serde_json::Value;

use crate::dynkin_core::DynkinSpec;
use crate::error::{MeshError, Result};
use crate::quiver::{Arrow, Quiver, Relation};

/// A vertex `(i, v)` of `ZΔ`.
pub type Vertex = (i64, usize);

/// An arrow of `ZΔ`: `α_i` (`prime = false`) or `α'_i` (`prime = true`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZArrow {
    pub alpha: usize,
    pub level: i64,
    pub prime: bool,
}

impl ZArrow {
    pub fn src(&self, spec: &DynkinSpec) -> Vertex {
        let (v, w) = spec.base_arrows[self.alpha];
        if self.prime {
            (self.level, w)
        } else {
            (self.level, v)
        }
    }

    pub fn tgt(&self, spec: &DynkinSpec) -> Vertex {
        let (v, w) = spec.base_arrows[self.alpha];
        if self.prime {
            (self.level - 1, v)
        } else {
            (self.level, w)
        }
    }

    /// The mesh partner `β⁻: τ(tgt β) → src β`.
    pub fn partner(&self) -> ZArrow {
        if self.prime {
            ZArrow { alpha: self.alpha, level: self.level, prime: false }
        } else {
            ZArrow { alpha: self.alpha, level: self.level + 1, prime: true }
        }
    }

    pub fn id(&self) -> String {
        let tick = if self.prime { "'" } else { "" };
        format!("a{}{}_{}", self.alpha, tick, self.level)
    }
}

pub fn vertex_name(x: Vertex) -> String {
    format!("({},{})", x.0, x.1)
}

/// Element `(σ^s, τ^t)` of the group generated by `σ` and `τ` (they commute).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub sigma_power: i64,
    pub tau_power: i64,
}

impl GroupElement {
    /// `(στ)^k`.
    pub fn sigma_tau(k: i64) -> Self {
        GroupElement { sigma_power: k, tau_power: k }
    }

    pub fn compose(self, other: Self) -> Self {
        GroupElement { sigma_power: self.sigma_power + other.sigma_power, tau_power: self.tau_power + other.tau_power }
    }

    pub fn inverse(self) -> Self {
        GroupElement { sigma_power: -self.sigma_power, tau_power: -self.tau_power }
    }

    pub fn is_identity(&self, spec: &DynkinSpec) -> bool {
        self.tau_power == 0 && self.sigma_power.rem_euclid(spec.sigma_order() as i64) == 0
    }

    pub fn act(&self, spec: &DynkinSpec, x: Vertex) -> Vertex {
        (x.0 + self.tau_power, spec.sigma_pow(x.1, self.sigma_power))
    }

    pub fn act_arrow(&self, spec: &DynkinSpec, a: ZArrow) -> ZArrow {
        ZArrow { alpha: spec.sigma_arrow(a.alpha, self.sigma_power), level: a.level + self.tau_power, prime: a.prime }
    }
}

/// A finite slice `i_min ≤ i ≤ i_max` of `ZΔ`.
#[derive(Clone, Debug)]
pub struct TranslationWindow {
    pub spec: DynkinSpec,
    pub i_min: i64,
    pub i_max: i64,
    /// Vertices ordered by `(level, vertex)`.
    pub vertices: Vec<Vertex>,
    /// Arrows with both ends inside, ordered by level, base arrow, unprimed first.
    pub arrows: Vec<ZArrow>,
    index: HashMap<Vertex, usize>,
}

/// Builds the window of levels `i_min..=i_max`.
pub fn build_window(spec: &DynkinSpec, i_min: i64, i_max: i64) -> Result<TranslationWindow> {
    if i_min > i_max {
        return Err(MeshError::EmptyRange(i_min, i_max));
    }
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for i in i_min..=i_max {
        for &v in &spec.base_vertices {
            vertices.push((i, v));
        }
        for alpha in 0..spec.base_arrows.len() {
            arrows.push(ZArrow { alpha, level: i, prime: false });
            if i > i_min {
                arrows.push(ZArrow { alpha, level: i, prime: true });
            }
        }
    }
    let index = vertices.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    Ok(TranslationWindow { spec: spec.clone(), i_min, i_max, vertices, arrows, index })
}

/// Result of an admissibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    /// A vertex fixed by a non-identity group element, if any.
    pub witness: Option<Vertex>,
}

/// Checks that no non-identity power of `generator` fixes a window vertex.
///
/// Powers up to `order(σ) · height` are examined, which covers every
/// element that can map the window to itself.
pub fn check_admissible(window: &TranslationWindow, generator: GroupElement) -> Admissibility {
    let spec = &window.spec;
    let height = window.i_max - window.i_min + 1;
    let bound = spec.sigma_order() as i64 * height;
    for k in 1..=bound {
        let g = GroupElement { sigma_power: generator.sigma_power * k, tau_power: generator.tau_power * k };
        if g.is_identity(spec) {
            continue;
        }
        if let Some(&x) = window.vertices.iter().find(|&&x| g.act(spec, x) == x) {
            return Admissibility { admissible: false, witness: Some(x) };
        }
    }
    Admissibility { admissible: true, witness: None }
}

impl TranslationWindow {
    pub fn contains(&self, x: Vertex) -> bool {
        self.index.contains_key(&x)
    }

    pub fn vertex_index(&self, x: Vertex) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn tau(&self, x: Vertex) -> Vertex {
        (x.0 + 1, x.1)
    }

    pub fn arrow_index(&self, a: ZArrow) -> Option<usize> {
        self.arrows.iter().position(|&b| b == a)
    }

    /// Arrows of the window ending at `x`.
    pub fn arrows_into(&self, x: Vertex) -> Vec<ZArrow> {
        self.arrows.iter().copied().filter(|a| a.tgt(&self.spec) == x).collect()
    }

    /// Arrows of `ZΔ` ending at `x` (whether or not they lie in the window).
    pub fn all_arrows_into(spec: &DynkinSpec, x: Vertex) -> Vec<ZArrow> {
        let mut out = Vec::new();
        for (alpha, &(v, w)) in spec.base_arrows.iter().enumerate() {
            if w == x.1 {
                out.push(ZArrow { alpha, level: x.0, prime: false });
            }
            if v == x.1 {
                out.push(ZArrow { alpha, level: x.0 + 1, prime: true });
            }
        }
        out.sort();
        out
    }

    /// The mesh ending at `x` as `(partner, arrow)` pairs, provided `τx`
    /// and every middle vertex lie in the window.
    pub fn mesh(&self, x: Vertex) -> Option<Vec<(ZArrow, ZArrow)>> {
        if !self.contains(x) || !self.contains(self.tau(x)) {
            return None;
        }
        let pairs: Vec<(ZArrow, ZArrow)> =
            Self::all_arrows_into(&self.spec, x).into_iter().map(|b| (b.partner(), b)).collect();
        let inside = pairs.iter().all(|(p, b)| self.arrow_index(*p).is_some() && self.arrow_index(*b).is_some());
        inside.then_some(pairs)
    }

    /// The window as an abstract quiver (vertex order and arrow order as stored).
    pub fn quiver(&self) -> Quiver {
        let spec = &self.spec;
        Quiver::new(
            self.vertices.iter().map(|&x| vertex_name(x)).collect(),
            self.arrows
                .iter()
                .map(|a| Arrow { id: a.id(), src: self.index[&a.src(spec)], tgt: self.index[&a.tgt(spec)] })
                .collect(),
        )
    }

    /// Mesh relations for every vertex whose full mesh lies in the window.
    pub fn mesh_relations(&self) -> Vec<Relation> {
        self.vertices
            .iter()
            .filter_map(|&x| self.mesh(x))
            .map(|pairs| Relation {
                terms: pairs
                    .iter()
                    .map(|(p, b)| (1, vec![self.arrow_index(*p).unwrap(), self.arrow_index(*b).unwrap()]))
                    .collect(),
            })
            .collect()
    }

    /// Restricts to a vertex subset: the full subquiver on `keep` with the
    /// meshes lying entirely inside it.
    pub fn restrict(&self, keep: &[Vertex]) -> (Quiver, Vec<Relation>, Vec<Vertex>, Vec<ZArrow>) {
        let spec = &self.spec;
        let mut vertices: Vec<Vertex> = keep.to_vec();
        vertices.sort();
        let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let arrows: Vec<ZArrow> = self
            .arrows
            .iter()
            .copied()
            .filter(|a| index.contains_key(&a.src(spec)) && index.contains_key(&a.tgt(spec)))
            .collect();
        let arrow_index: HashMap<ZArrow, usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let quiver = Quiver::new(
            vertices.iter().map(|&x| vertex_name(x)).collect(),
            arrows.iter().map(|a| Arrow { id: a.id(), src: index[&a.src(spec)], tgt: index[&a.tgt(spec)] }).collect(),
        );
        let mut relations = Vec::new();
        for &x in &vertices {
            if !index.contains_key(&self.tau(x)) {
                continue;
            }
            let pairs: Vec<(ZArrow, ZArrow)> =
                Self::all_arrows_into(spec, x).into_iter().map(|b| (b.partner(), b)).collect();
            if pairs.iter().all(|(p, b)| arrow_index.contains_key(p) && arrow_index.contains_key(b)) {
                relations.push(Relation {
                    terms: pairs.iter().map(|(p, b)| (1, vec![arrow_index[p], arrow_index[b]])).collect(),
                });
            }
        }
        (quiver, relations, vertices, arrows)
    }

    pub fn to_dot(&self) -> String {
        self.quiver().to_dot(&format!("Z{}", self.spec.base_name), &self.mesh_relations())
    }

    pub fn to_json(&self) -> Value {
        self.quiver().to_json(&self.mesh_relations())
    }
}

/// The Auslander rectangle `{(i, v) : 0 ≤ i < coxeter_copies}`.
pub fn auslander_rectangle(spec: &DynkinSpec) -> Result<Vec<Vertex>> {
    let m = spec.coxeter_copies.ok_or_else(|| MeshError::UnsupportedOrientation(spec.base_name.clone()))?;
    Ok((0..m as i64).flat_map(|i| spec.base_vertices.iter().map(move |&v| (i, v))).collect())
}

/// An arrow of the folded quiver: `(α, +)` or `(α, −)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldedArrow {
    pub id: String,
    pub alpha: usize,
    pub prime: bool,
    pub src: usize,
    pub tgt: usize,
}

/// The orbit quiver `ZΔ/⟨στ⟩` with its mesh relations and the induced
/// permutation `σ̃` of vertices and arrows.
#[derive(Clone, Debug)]
pub struct OrbitPresentation {
    pub spec: DynkinSpec,
    pub folded_vertices: Vec<usize>,
    /// `2k` is `(α_k, +)`, `2k + 1` is `(α_k, −)`.
    pub folded_arrows: Vec<FoldedArrow>,
    /// One relation per folded vertex, in vertex order.
    pub mesh_relations: Vec<Relation>,
    pub sigma_vertices: Vec<usize>,
    pub sigma_arrows: Vec<usize>,
}

/// Folds `ZΔ` by `⟨στ⟩`.
pub fn fold(spec: &DynkinSpec) -> Result<OrbitPresentation> {
    let probe = build_window(spec, 0, 1)?;
    let check = check_admissible(&probe, GroupElement::sigma_tau(1));
    if let Some(w) = check.witness {
        return Err(MeshError::NonAdmissibleAction(w.0, w.1));
    }
    let mut folded_arrows = Vec::new();
    for (alpha, &(v, w)) in spec.base_arrows.iter().enumerate() {
        folded_arrows.push(FoldedArrow { id: format!("a{alpha}+"), alpha, prime: false, src: v, tgt: w });
        folded_arrows.push(FoldedArrow { id: format!("a{alpha}-"), alpha, prime: true, src: w, tgt: spec.sigma[v] });
    }
    let pres = OrbitPresentation {
        spec: spec.clone(),
        folded_vertices: spec.base_vertices.clone(),
        folded_arrows,
        mesh_relations: Vec::new(),
        sigma_vertices: spec.sigma.clone(),
        sigma_arrows: (0..2 * spec.base_arrows.len()).map(|k| 2 * spec.sigma_arrow(k / 2, 1) + k % 2).collect(),
    };
    let mesh_relations = spec
        .base_vertices
        .iter()
        .map(|&z| Relation {
            terms: TranslationWindow::all_arrows_into(spec, (0, z))
                .into_iter()
                .map(|b| (1, vec![pres.project_arrow(b.partner()), pres.project_arrow(b)]))
                .collect(),
        })
        .collect();
    Ok(OrbitPresentation { mesh_relations, ..pres })
}

impl OrbitPresentation {
    /// Orbit map on vertices: `π(i, v) = σ^{−i}(v)`.
    pub fn project(&self, x: Vertex) -> usize {
        self.spec.sigma_pow(x.1, -x.0)
    }

    /// Orbit map on arrows: `α_i ↦ (σ^{−i}α, +)`, `α'_i ↦ (σ^{−i}α, −)`.
    pub fn project_arrow(&self, a: ZArrow) -> usize {
        2 * self.spec.sigma_arrow(a.alpha, -a.level) + a.prime as usize
    }

    pub fn quiver(&self) -> Quiver {
        Quiver::new(
            self.folded_vertices.iter().map(|v| v.to_string()).collect(),
            self.folded_arrows.iter().map(|a| Arrow { id: a.id.clone(), src: a.src, tgt: a.tgt }).collect(),
        )
    }

    /// Image of a relation under `σ̃^k`.
    pub fn twist_relation(&self, r: &Relation, k: usize) -> Relation {
        let map = |a: usize| (0..k).fold(a, |x, _| self.sigma_arrows[x]);
        Relation { terms: r.terms.iter().map(|(c, p)| (*c, p.iter().map(|&a| map(a)).collect())).collect() }
    }

    pub fn to_dot(&self) -> String {
        self.quiver().to_dot(&format!("mesh {}", self.spec.folded_type), &self.mesh_relations)
    }

    pub fn to_json(&self) -> Value {
        self.quiver().to_json(&self.mesh_relations)
    }
}
