//! Basis enumeration for quotients of path algebras by homogeneous
//! quadratic relations.
//!
//! Paths are enumerated length by length. Every length-`L` element is a
//! combination of "candidates" `(b, a)` — a basis element `b` of length
//! `L − 1` followed by an arrow `a`. The relation ideal in length `L` is
//! spanned by the images of `p · r` for basis elements `p` of length
//! `L − 2` and relations `r`; row reduction of these vectors (grouped by
//! endpoints) picks the surviving candidates as basis and expresses the
//! others as normal forms.

use std::collections::HashMap;

use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{Quiver, Relation};

use super::representation::Representation;

/// A sparse vector indexed by (basis path, basis path) pairs.
type SparseRow<F> = HashMap<(usize, usize), F>;

/// Sparse vector over basis indices.
pub type Sparse<F> = Vec<(usize, F)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub src: usize,
    pub tgt: usize,
    pub length: usize,
    /// `None` for the vertex idempotents.
    pub parent: Option<usize>,
    pub arrow: Option<usize>,
}

/// Basis and multiplication table of `KQ / (relations)`.
#[derive(Clone, Debug)]
pub struct PathAlgebraTable<F> {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub basis: Vec<BasisElement>,
    /// Right multiplication of a basis element by an arrow.
    append: HashMap<(usize, usize), Sparse<F>>,
    /// Basis index of each arrow (length-one elements).
    arrow_elements: Vec<Option<usize>>,
}

fn add_scaled<F: Field>(acc: &mut HashMap<usize, F>, v: &Sparse<F>, c: &F) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(F::zero);
        *e = e.add(&x.mul(c));
    }
}

fn to_sparse<F: Field>(acc: HashMap<usize, F>) -> Sparse<F> {
    let mut v: Sparse<F> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Enumerates a basis of `KQ / (relations)`; relations must be homogeneous
/// of length two. Fails once paths of length `cap` survive.
pub fn build_algebra<F: Field>(quiver: &Quiver, relations: &[Relation], cap: usize) -> Result<PathAlgebraTable<F>> {
    let mut rel_ends = Vec::new();
    for r in relations {
        let ends = r.terms.first().and_then(|(_, p)| quiver.path_endpoints(p));
        let ok = ends.is_some() && r.terms.iter().all(|(_, p)| p.len() == 2 && quiver.path_endpoints(p) == ends);
        if !ok {
            return Err(MeshError::RelationViolation("relations must be homogeneous of length two".into()));
        }
        rel_ends.push(ends.unwrap());
    }
    let mut basis: Vec<BasisElement> = (0..quiver.n_vertices())
        .map(|v| BasisElement { src: v, tgt: v, length: 0, parent: None, arrow: None })
        .collect();
    let mut append: HashMap<(usize, usize), Sparse<F>> = HashMap::new();
    let mut levels: Vec<Vec<usize>> = vec![(0..quiver.n_vertices()).collect()];
    let mut length = 1;
    loop {
        let prev = &levels[length - 1];
        // Candidates grouped by endpoints.
        let mut groups: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for &b in prev {
            for a in quiver.outgoing(basis[b].tgt) {
                groups.entry((basis[b].src, quiver.arrows[a].tgt)).or_default().push((b, a));
            }
        }
        // Relation vectors p · r, grouped the same way.
        let mut rel_rows: HashMap<(usize, usize), Vec<SparseRow<F>>> = HashMap::new();
        if length >= 2 {
            for &p in &levels[length - 2] {
                for (r, &(rs, rt)) in relations.iter().zip(&rel_ends) {
                    if rs != basis[p].tgt {
                        continue;
                    }
                    let mut row: HashMap<(usize, usize), F> = HashMap::new();
                    for (c, path) in &r.terms {
                        let c = F::from_i64(*c);
                        for (k, lam) in &append[&(p, path[0])] {
                            let e = row.entry((*k, path[1])).or_insert_with(F::zero);
                            *e = e.add(&lam.mul(&c));
                        }
                    }
                    rel_rows.entry((basis[p].src, rt)).or_default().push(row);
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = groups.keys().copied().collect();
        keys.sort_unstable();
        let mut level = Vec::new();
        for key in keys {
            let cands = &groups[&key];
            let col_of: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let rows: Vec<Vec<F>> = rel_rows
                .get(&key)
                .map(|rs| {
                    rs.iter()
                        .map(|row| {
                            let mut v = vec![F::zero(); cands.len()];
                            for (c, x) in row {
                                v[col_of[c]] = v[col_of[c]].add(x);
                            }
                            v
                        })
                        .collect()
                })
                .unwrap_or_default();
            // Pivot on the latest candidates so that earlier paths survive.
            let reversed: Vec<Vec<F>> = rows.iter().map(|r| r.iter().rev().cloned().collect()).collect();
            let (rref, pivots) = if reversed.is_empty() {
                (Matrix::zeros(0, cands.len()), Vec::new())
            } else {
                let r = Matrix::from_rows(reversed).rref();
                (r.matrix, r.pivots)
            };
            let n = cands.len();
            let is_pivot: Vec<bool> = (0..n).map(|i| pivots.contains(&(n - 1 - i))).collect();
            let mut new_index = vec![usize::MAX; n];
            for i in 0..n {
                if !is_pivot[i] {
                    let (b, a) = cands[i];
                    new_index[i] = basis.len();
                    level.push(basis.len());
                    basis.push(BasisElement { src: key.0, tgt: key.1, length, parent: Some(b), arrow: Some(a) });
                    append.insert((b, a), vec![(new_index[i], F::one())]);
                }
            }
            for (row, &pc) in pivots.iter().enumerate() {
                let i = n - 1 - pc;
                let mut nf = Vec::new();
                for j in 0..n {
                    if is_pivot[j] {
                        continue;
                    }
                    let x = rref.get(row, n - 1 - j);
                    if !x.is_zero() {
                        nf.push((new_index[j], x.neg()));
                    }
                }
                nf.sort_by_key(|(k, _)| *k);
                append.insert(cands[i], nf);
            }
        }
        if level.is_empty() {
            break;
        }
        if length >= cap {
            return Err(MeshError::NonTerminatingGrowth(length));
        }
        levels.push(level);
        length += 1;
    }
    let mut arrow_elements = vec![None; quiver.n_arrows()];
    for (i, b) in basis.iter().enumerate() {
        if b.length == 1 {
            arrow_elements[b.arrow.unwrap()] = Some(i);
        }
    }
    Ok(PathAlgebraTable { quiver: quiver.clone(), relations: relations.to_vec(), basis, append, arrow_elements })
}

impl<F: Field> PathAlgebraTable<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of the longest surviving path plus one.
    pub fn loewy_length(&self) -> usize {
        self.basis.iter().map(|b| b.length).max().unwrap_or(0) + 1
    }

    /// Arrow word of a basis element.
    pub fn word(&self, mut e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some(a) = self.basis[e].arrow {
            w.push(a);
            e = self.basis[e].parent.unwrap();
        }
        w.reverse();
        w
    }

    /// `e · a` for a basis element `e` and an arrow `a`.
    pub fn append_arrow(&self, e: usize, a: usize) -> Sparse<F> {
        if self.basis[e].tgt != self.quiver.arrows[a].src {
            return Vec::new();
        }
        self.append.get(&(e, a)).cloned().unwrap_or_default()
    }

    fn append_sparse(&self, v: &Sparse<F>, a: usize) -> Sparse<F> {
        let mut acc = HashMap::new();
        for (e, c) in v {
            add_scaled(&mut acc, &self.append_arrow(*e, a), c);
        }
        to_sparse(acc)
    }

    /// Product `x · y` of basis elements (walking order: `x` first).
    pub fn multiply(&self, x: usize, y: usize) -> Sparse<F> {
        if self.basis[x].tgt != self.basis[y].src {
            return Vec::new();
        }
        let mut v = vec![(x, F::one())];
        for a in self.word(y) {
            v = self.append_sparse(&v, a);
        }
        v
    }

    /// Basis indices with the given source and target, in index order.
    pub fn elements_between(&self, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].src == src && self.basis[i].tgt == tgt).collect()
    }

    /// The projective `P(v)`: paths starting at `v`, arrows acting by
    /// right multiplication.
    pub fn projective(&self, v: usize) -> Representation<F> {
        let q = &self.quiver;
        let spaces: Vec<Vec<usize>> = (0..q.n_vertices()).map(|u| self.elements_between(v, u)).collect();
        let pos: HashMap<usize, usize> =
            spaces.iter().flat_map(|s| s.iter().enumerate().map(|(i, &e)| (e, i))).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = Matrix::zeros(spaces[a.tgt].len(), spaces[a.src].len());
                for (c, &e) in spaces[a.src].iter().enumerate() {
                    for (f, x) in self.append_arrow(e, k) {
                        m.set(pos[&f], c, x);
                    }
                }
                m
            })
            .collect();
        Representation { dims: spaces.iter().map(Vec::len).collect(), maps }
    }

    /// The injective `I(v)`: the dual of paths ending at `v`, arrows acting
    /// by the transpose of left multiplication.
    pub fn injective(&self, v: usize) -> Representation<F> {
        let q = &self.quiver;
        let spaces: Vec<Vec<usize>> = (0..q.n_vertices()).map(|u| self.elements_between(u, v)).collect();
        let pos: HashMap<usize, usize> =
            spaces.iter().flat_map(|s| s.iter().enumerate().map(|(i, &e)| (e, i))).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                // left multiplication by a: paths (tgt a -> v) to paths (src a -> v)
                let mut left = Matrix::zeros(spaces[a.src].len(), spaces[a.tgt].len());
                let arrow_elem = self.arrow_elements[k];
                for (c, &e) in spaces[a.tgt].iter().enumerate() {
                    let Some(ae) = arrow_elem else { continue };
                    for (f, x) in self.multiply(ae, e) {
                        left.set(pos[&f], c, x);
                    }
                }
                left.transpose()
            })
            .collect();
        Representation { dims: spaces.iter().map(Vec::len).collect(), maps }
    }
}
