//! Quiver representations, morphisms, and the constructions that only need
//! the underlying quiver (kernels, cokernels, sub- and quotient modules,
//! socles, twists, duals, JSON).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::{Coordinates, Matrix, Span};
use crate::quiver::{Quiver, Relation};

/// A representation: one vector space per vertex (given by its dimension)
/// and, for every arrow `a: u → v`, a `dims[v] × dims[u]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation<F> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<F>>,
}

/// A morphism of representations given by its vertex blocks
/// `f_v: M_v → N_v` (a `dims_N[v] × dims_M[v]` matrix).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism<F> {
    pub blocks: Vec<Matrix<F>>,
}

/// Builds a `rows × cols` matrix from columns given as vectors.
fn columns_matrix<F: Field>(rows: usize, cols: &[Vec<F>]) -> Matrix<F> {
    Matrix::from_columns(rows, cols)
}

/// Right inverse of a full-row-rank matrix, supported on its pivot columns.
pub fn right_inverse<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let piv = a.independent_columns();
    assert_eq!(piv.len(), a.rows(), "right inverse of a rank-deficient matrix");
    let inv = a.select_columns(&piv).inverse().expect("pivot block is invertible");
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for (k, &p) in piv.iter().enumerate() {
        for c in 0..a.rows() {
            out.set(p, c, inv.get(k, c).clone());
        }
    }
    out
}

impl<F: Field> Representation<F> {
    /// Builds a representation, checking the matrix shapes.
    pub fn new(quiver: &Quiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n_vertices() || maps.len() != quiver.n_arrows() {
            return Err(MeshError::RelationViolation("representation does not match quiver".into()));
        }
        for (a, m) in quiver.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.tgt] || m.cols() != dims[a.src] {
                return Err(MeshError::RelationViolation(format!("arrow {} has a matrix of the wrong shape", a.id)));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Representation {
            dims: vec![0; quiver.n_vertices()],
            maps: quiver.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// The simple representation at `v`.
    pub fn simple(quiver: &Quiver, v: usize) -> Self {
        let mut dims = vec![0; quiver.n_vertices()];
        dims[v] = 1;
        let maps = quiver.arrows.iter().map(|a| Matrix::zeros(dims[a.tgt], dims[a.src])).collect();
        Representation { dims, maps }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The composite action of a path (walking order).
    pub fn path_map(&self, quiver: &Quiver, path: &[usize]) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[quiver.arrows[path[0]].src]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Checks that every relation acts as zero.
    pub fn check_relations(&self, quiver: &Quiver, relations: &[Relation]) -> Result<()> {
        for r in relations {
            let Some((s, t)) = r.terms.first().and_then(|(_, p)| quiver.path_endpoints(p)) else {
                continue;
            };
            let mut acc = Matrix::zeros(self.dims[t], self.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.path_map(quiver, p).scale(&F::from_i64(*c)));
            }
            if !acc.is_zero() {
                return Err(MeshError::RelationViolation(quiver.relation_to_string(r)));
            }
        }
        Ok(())
    }

    /// Direct sum; vertex spaces are concatenated in argument order.
    pub fn direct_sum(quiver: &Quiver, parts: &[&Representation<F>]) -> Self {
        let dims = (0..quiver.n_vertices()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..quiver.n_arrows())
            .map(|a| {
                let blocks: Vec<&Matrix<F>> = parts.iter().map(|p| &p.maps[a]).collect();
                Matrix::block_diag(&blocks)
            })
            .collect();
        Representation { dims, maps }
    }

    /// The dual representation over the opposite quiver.
    pub fn dual(&self) -> Self {
        Representation { dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }

    /// Twist along vertex and arrow permutations: `(twist M)_v = M_{p(v)}`,
    /// `(twist M)_a = M_{q(a)}`.
    pub fn twist(&self, vertex_perm: &[usize], arrow_perm: &[usize]) -> Self {
        Representation {
            dims: vertex_perm.iter().map(|&p| self.dims[p]).collect(),
            maps: arrow_perm.iter().map(|&q| self.maps[q].clone()).collect(),
        }
    }

    /// Subrepresentation spanned at each vertex by the columns of `basis[v]`
    /// (which must be invariant); returns it together with the inclusion.
    pub fn subrepresentation(&self, quiver: &Quiver, basis: Vec<Matrix<F>>) -> (Self, Morphism<F>) {
        let coords: Vec<Coordinates<F>> = basis.iter().map(|b| Coordinates::new(b.clone())).collect();
        let maps = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| coords[a.tgt].coords_matrix(&self.maps[k].mul(&basis[a.src])))
            .collect();
        let dims = basis.iter().map(|b| b.cols()).collect();
        (Representation { dims, maps }, Morphism { blocks: basis })
    }

    /// Quotient by the invariant subspaces spanned by the columns of
    /// `basis[v]`; returns it together with the projection.
    pub fn quotient(&self, quiver: &Quiver, basis: &[Matrix<F>]) -> (Self, Morphism<F>) {
        let proj: Vec<Matrix<F>> = basis
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| if b.cols() == 0 { Matrix::identity(d) } else { b.transpose().nullspace().transpose() })
            .collect();
        let sections: Vec<Matrix<F>> = proj.iter().map(right_inverse).collect();
        let maps = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| proj[a.tgt].mul(&self.maps[k]).mul(&sections[a.src]))
            .collect();
        let dims = proj.iter().map(|p| p.rows()).collect();
        (Representation { dims, maps }, Morphism { blocks: proj })
    }

    /// Radical subspaces `rad_v = Σ_{a: u → v} im M_a` as column bases.
    pub fn radical_basis(&self, quiver: &Quiver) -> Vec<Matrix<F>> {
        (0..quiver.n_vertices())
            .map(|v| {
                let mut span = Span::new(self.dims[v]);
                let mut cols = Vec::new();
                for a in quiver.incoming(v) {
                    let m = &self.maps[a];
                    for c in 0..m.cols() {
                        let col = m.column(c);
                        if span.insert(&col) {
                            cols.push(col);
                        }
                    }
                }
                columns_matrix(self.dims[v], &cols)
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self, quiver: &Quiver) -> Vec<usize> {
        self.radical_basis(quiver).iter().zip(&self.dims).map(|(r, &d)| d - r.cols()).collect()
    }

    /// Socle subspaces `soc_v = ∩_{a: v → w} ker M_a` as column bases.
    pub fn socle_basis(&self, quiver: &Quiver) -> Vec<Matrix<F>> {
        (0..quiver.n_vertices())
            .map(|v| {
                let outs: Vec<&Matrix<F>> = quiver.outgoing(v).map(|a| &self.maps[a]).collect();
                if outs.is_empty() {
                    return Matrix::identity(self.dims[v]);
                }
                Matrix::vstack(self.dims[v], &outs).nullspace()
            })
            .collect()
    }

    pub fn socle_dims(&self, quiver: &Quiver) -> Vec<usize> {
        self.socle_basis(quiver).iter().map(|b| b.cols()).collect()
    }

    /// Socle series layers, bottom (socle) first, as dimension vectors.
    pub fn socle_layers(&self, quiver: &Quiver) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current = self.clone();
        while !current.is_zero() {
            let soc = current.socle_basis(quiver);
            layers.push(soc.iter().map(|b| b.cols()).collect());
            current = current.quotient(quiver, &soc).0;
        }
        layers
    }

    /// Radical series layers, top first, as dimension vectors.
    pub fn radical_layers(&self, quiver: &Quiver) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current = self.clone();
        while !current.is_zero() {
            let rad = current.radical_basis(quiver);
            layers.push(rad.iter().zip(&current.dims).map(|(r, &d)| d - r.cols()).collect());
            current = current.subrepresentation(quiver, rad).0;
        }
        layers
    }

    /// Loewy diagram from the socle series.
    pub fn loewy_diagram(&self, quiver: &Quiver) -> LoewyDiagram {
        let mut rows: Vec<Vec<String>> = self
            .socle_layers(quiver)
            .into_iter()
            .map(|layer| {
                layer
                    .iter()
                    .enumerate()
                    .flat_map(|(v, &m)| std::iter::repeat_n(quiver.vertex_names[v].clone(), m))
                    .collect()
            })
            .collect();
        rows.reverse();
        LoewyDiagram { rows }
    }

    /// JSON form `{dims: {v: n}, arrows: {id: [[...]]}}` with exact entries as strings.
    pub fn to_json(&self, quiver: &Quiver) -> Value {
        let dims: BTreeMap<String, usize> =
            quiver.vertex_names.iter().cloned().zip(self.dims.iter().copied()).collect();
        let arrows: serde_json::Map<String, Value> = quiver
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let rows: Vec<Vec<String>> =
                    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect();
                (a.id.clone(), json!(rows))
            })
            .collect();
        json!({ "dims": dims, "arrows": arrows })
    }

    pub fn from_json(quiver: &Quiver, value: &Value) -> Result<Self> {
        let bad = |m: &str| MeshError::Parse(m.to_string());
        let dims_obj = value.get("dims").and_then(Value::as_object).ok_or_else(|| bad("missing dims"))?;
        let mut dims = vec![0; quiver.n_vertices()];
        for (k, v) in dims_obj {
            let idx = quiver.vertex_index(k).ok_or_else(|| MeshError::LabelNotFound(k.clone()))?;
            dims[idx] = v.as_u64().ok_or_else(|| bad("dimension is not a natural number"))? as usize;
        }
        let arrows = value.get("arrows").and_then(Value::as_object).ok_or_else(|| bad("missing arrows"))?;
        let mut maps = Vec::with_capacity(quiver.n_arrows());
        for a in &quiver.arrows {
            let rows = match arrows.get(&a.id) {
                Some(Value::Array(rows)) => rows,
                _ => return Err(bad(&format!("missing matrix for {}", a.id))),
            };
            let mut parsed = Vec::new();
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("matrix row is not an array"))?;
                let mut out = Vec::new();
                for e in row {
                    let s = match e {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("matrix entry is not a number")),
                    };
                    out.push(F::parse_exact(&s).ok_or_else(|| bad(&format!("bad entry {s}")))?);
                }
                parsed.push(out);
            }
            let m = if parsed.is_empty() { Matrix::zeros(dims[a.tgt], dims[a.src]) } else { Matrix::from_rows(parsed) };
            maps.push(m);
        }
        Representation::new(quiver, dims, maps)
    }
}

/// Rows of a Loewy diagram, top row first; each row lists composition
/// factors by vertex name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewyDiagram {
    pub rows: Vec<Vec<String>>,
}

impl LoewyDiagram {
    /// Parses `"0 / 1 2 / 0"` (top row first).
    pub fn parse(s: &str) -> Self {
        LoewyDiagram { rows: s.split('/').map(|r| r.split_whitespace().map(str::to_string).collect()).collect() }
    }

    /// Equality of rows as multisets.
    pub fn same_layers(&self, other: &LoewyDiagram) -> bool {
        let norm = |d: &LoewyDiagram| -> Vec<Vec<String>> {
            d.rows
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.sort();
                    r
                })
                .collect()
        };
        norm(self) == norm(other)
    }
}

impl std::fmt::Display for LoewyDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

impl<F: Field> Morphism<F> {
    pub fn zero(src: &Representation<F>, tgt: &Representation<F>) -> Self {
        Morphism { blocks: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect() }
    }

    pub fn identity(m: &Representation<F>) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Morphism<F>) -> Morphism<F> {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism<F>) -> Morphism<F> {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &F) -> Morphism<F> {
        Morphism { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn trace(&self) -> F {
        self.blocks.iter().fold(F::zero(), |acc, b| acc.add(&b.trace()))
    }

    /// Total rank over all vertices.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Entries of all blocks concatenated (row-major, vertex order).
    pub fn flatten(&self) -> Vec<F> {
        self.blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
    }

    pub fn from_flat(src_dims: &[usize], tgt_dims: &[usize], flat: &[F]) -> Self {
        let mut off = 0;
        let blocks = src_dims
            .iter()
            .zip(tgt_dims)
            .map(|(&s, &t)| {
                let b = Matrix::from_fn(t, s, |r, c| flat[off + r * s + c].clone());
                off += s * t;
                b
            })
            .collect();
        Morphism { blocks }
    }

    /// Whether the blocks commute with the arrow actions.
    pub fn is_morphism(&self, quiver: &Quiver, src: &Representation<F>, tgt: &Representation<F>) -> bool {
        quiver
            .arrows
            .iter()
            .enumerate()
            .all(|(k, a)| self.blocks[a.tgt].mul(&src.maps[k]) == tgt.maps[k].mul(&self.blocks[a.src]))
    }

    /// Linear combination `Σ c_i f_i` of morphisms with equal shapes.
    pub fn combination(parts: &[Morphism<F>], coeffs: &[F]) -> Morphism<F> {
        let mut acc = parts[0].scale(&coeffs[0]);
        for (f, c) in parts.iter().zip(coeffs).skip(1) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Basis of `Hom(M, N)` by solving the commuting-square equations directly.
///
/// This needs only the quiver; it is the reference implementation that the
/// presentation-based solver is tested against.
pub fn hom_space_quiver<F: Field>(quiver: &Quiver, m: &Representation<F>, n: &Representation<F>) -> Vec<Morphism<F>> {
    let offsets: Vec<usize> = m
        .dims
        .iter()
        .zip(&n.dims)
        .scan(0, |acc, (&a, &b)| {
            let o = *acc;
            *acc += a * b;
            Some(o)
        })
        .collect();
    let unknowns: usize = m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (k, a) in quiver.arrows.iter().enumerate() {
        let (u, v) = (a.src, a.tgt);
        let (mu, mv, nu, nv) = (m.dims[u], m.dims[v], n.dims[u], n.dims[v]);
        // (f_v M_a - N_a f_u)[r][c] = 0 for r < nv, c < mu
        for r in 0..nv {
            for c in 0..mu {
                let mut row = vec![F::zero(); unknowns];
                for j in 0..mv {
                    let x = m.maps[k].get(j, c);
                    if !x.is_zero() {
                        let idx = offsets[v] + r * mv + j;
                        row[idx] = row[idx].add(x);
                    }
                }
                for j in 0..nu {
                    let x = n.maps[k].get(r, j);
                    if !x.is_zero() {
                        let idx = offsets[u] + j * mu + c;
                        row[idx] = row[idx].sub(x);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() { Matrix::identity(unknowns) } else { Matrix::from_rows(rows).nullspace() };
    (0..sol.cols()).map(|c| Morphism::from_flat(&m.dims, &n.dims, &sol.column(c))).collect()
}

/// Kernel of `f: M → N` with its inclusion.
pub fn kernel<F: Field>(quiver: &Quiver, f: &Morphism<F>, src: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let basis: Vec<Matrix<F>> = f.blocks.iter().map(|b| b.nullspace()).collect();
    src.subrepresentation(quiver, basis)
}

/// Image of `f: M → N` as a subrepresentation of `N`, with its inclusion.
pub fn image<F: Field>(quiver: &Quiver, f: &Morphism<F>, tgt: &Representation<F>) -> (Representation<F>, Morphism<F>) {
    let basis: Vec<Matrix<F>> = f
        .blocks
        .iter()
        .map(|b| {
            let piv = b.independent_columns();
            b.select_columns(&piv)
        })
        .collect();
    tgt.subrepresentation(quiver, basis)
}

/// Cokernel of `f: M → N` with its projection.
pub fn cokernel<F: Field>(
    quiver: &Quiver,
    f: &Morphism<F>,
    tgt: &Representation<F>,
) -> (Representation<F>, Morphism<F>) {
    let basis: Vec<Matrix<F>> = f
        .blocks
        .iter()
        .map(|b| {
            let piv = b.independent_columns();
            b.select_columns(&piv)
        })
        .collect();
    tgt.quotient(quiver, &basis)
}
