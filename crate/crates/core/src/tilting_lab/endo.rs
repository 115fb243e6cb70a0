//! The endomorphism algebra `E = End(T)` of a cluster tilting module: its
//! Gabriel quiver, Cartan and exchange matrices, and homological profile.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra_engine::{FiniteAlgebra, Module, Morphism, Representation};
use crate::dynkin_core::positive_root_count;
use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::{Coordinates, Matrix};
use crate::matrix_mutation::{CartanData, LabeledIntMatrix};
use crate::par;
use crate::quiver::{Arrow, Quiver};

use super::approx::{complement, radical};
use super::{CTModule, HomTable, MeshAlgebra};

/// The Gabriel quiver of `End(T)`: an arrow `M → N` for each irreducible
/// map `T_M → T_N` in `add T`.
#[derive(Debug)]
pub struct EndQuiver<F> {
    pub quiver: Quiver,
    /// The irreducible map chosen for each arrow.
    pub irreducible: Vec<Morphism<F>>,
    /// `counts[m][n]`: number of arrows `m → n`.
    pub counts: Vec<Vec<usize>>,
}

/// Quiver, Cartan data and the endomorphism algebra of `T`.
#[derive(Debug)]
pub struct EndData<F> {
    pub end_quiver: EndQuiver<F>,
    pub cartan: CartanData,
    pub algebra: FiniteAlgebra<F>,
}

/// The exchange matrices derived from `B̃`.
#[derive(Clone, Debug)]
pub struct ExchangeMatrices {
    /// `B̃°`: rows and columns of non-projective summands.
    pub b_tilde_principal: LabeledIntMatrix,
    /// `B°`: the fold of `B̃°`.
    pub b_principal: LabeledIntMatrix,
    /// `B`: the fold of `B̃`.
    pub b_folded: LabeledIntMatrix,
}

/// Global and dominant dimension of `End(T)`; `None` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalProfile {
    pub global_dimension: Option<usize>,
    pub dominant_dimension: Option<usize>,
}

const RESOLUTION_CAP: usize = 6;

/// Irreducible maps between the summands of `t`: complements of `rad²` in
/// `rad` for every ordered pair.
pub fn end_quiver_and_cartan<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>) -> Result<(EndQuiver<F>, CartanData)> {
    let alg = &mesh.algebra;
    let homs = t.homs(alg);
    let n = t.len();
    let rads: Vec<Vec<Morphism<F>>> = par::map_range(n * n, |k| radical(&homs, k / n, k % n));
    let rad = |i: usize, j: usize| &rads[i * n + j];
    let irr: Vec<Vec<Morphism<F>>> = par::map_range(n * n, |k| {
        let (i, j) = (k / n, k % n);
        let mut squares = Vec::new();
        for m in 0..n {
            for g in rad(m, j) {
                for f in rad(i, m) {
                    squares.push(g.after(f));
                }
            }
        }
        complement(&squares, rad(i, j)).into_iter().map(|c| rad(i, j)[c].clone()).collect()
    });
    let labels = t.labels();
    let mut arrows = Vec::new();
    let mut irreducible = Vec::new();
    let mut counts = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for f in &irr[i * n + j] {
                arrows.push(Arrow { id: format!("e{}", arrows.len()), src: i, tgt: j });
                irreducible.push(f.clone());
                counts[i][j] += 1;
            }
        }
    }
    let quiver = Quiver::new(labels.clone(), arrows);
    let c = (0..n).map(|m| (0..n).map(|k| homs[k][m].len() as i64).collect()).collect();
    let b = (0..n).map(|m| (0..n).map(|k| counts[k][m] as i64 - counts[m][k] as i64).collect()).collect();
    let cartan = CartanData {
        c_tilde: LabeledIntMatrix::square(labels.clone(), c)?,
        b_tilde: LabeledIntMatrix::square(labels, b)?,
        partition: t.partition(),
        projective: t.projective_labels(),
    };
    Ok((EndQuiver { quiver, irreducible, counts }, cartan))
}

pub fn cartan_data<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>) -> Result<CartanData> {
    Ok(end_quiver_and_cartan(mesh, t)?.1)
}

/// `B̃°`, `B°` and `B` of a Cartan datum.
pub fn exchange_matrix(data: &CartanData) -> Result<ExchangeMatrices> {
    let np: Vec<String> = data.b_tilde.row_labels.iter().filter(|l| !data.projective.contains(l)).cloned().collect();
    Ok(ExchangeMatrices {
        b_tilde_principal: data.b_tilde.submatrix(&np, &np)?,
        b_principal: data.b_principal()?,
        b_folded: data.b_folded()?,
    })
}

fn coordinates<F: Field>(basis: &[Morphism<F>], ambient: usize) -> Coordinates<F> {
    let cols: Vec<Vec<F>> = basis.iter().map(Morphism::flatten).collect();
    Coordinates::new(Matrix::from_columns(ambient, &cols))
}

fn ambient<F: Field>(homs: &HomTable<F>, t: &CTModule<F>, i: usize, j: usize) -> usize {
    let _ = homs;
    t.summands[i].module.dims.iter().zip(&t.summands[j].module.dims).map(|(a, b)| a * b).sum()
}

/// `E = End(T)` acting covariantly: the projective `P(N)` has
/// `P(N)_M = Hom(T_N, T_M)` with arrows acting by postcomposition with the
/// irreducible maps; `I(N)_M = D Hom(T_M, T_N)`.
pub fn end_algebra<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>, eq: &EndQuiver<F>) -> Result<FiniteAlgebra<F>> {
    let homs = t.homs(&mesh.algebra);
    let n = t.len();
    let coords: Vec<Coordinates<F>> =
        par::map_range(n * n, |k| coordinates(&homs[k / n][k % n], ambient(&homs, t, k / n, k % n)));
    let coord = |i: usize, j: usize| &coords[i * n + j];
    let q = &eq.quiver;
    let projectives: Vec<Representation<F>> = par::map_range(n, |top| {
        let dims: Vec<usize> = (0..n).map(|m| homs[top][m].len()).collect();
        let maps = q
            .arrows
            .iter()
            .zip(&eq.irreducible)
            .map(|(a, phi)| {
                let cols: Vec<Vec<F>> =
                    homs[top][a.src].iter().map(|h| coord(top, a.tgt).coords(&phi.after(h).flatten())).collect();
                Matrix::from_columns(dims[a.tgt], &cols)
            })
            .collect();
        Representation { dims, maps }
    });
    let injectives: Vec<Representation<F>> = par::map_range(n, |soc| {
        let dims: Vec<usize> = (0..n).map(|m| homs[m][soc].len()).collect();
        let maps = q
            .arrows
            .iter()
            .zip(&eq.irreducible)
            .map(|(a, phi)| {
                // precomposition Hom(T_tgt, T_soc) → Hom(T_src, T_soc), transposed
                let cols: Vec<Vec<F>> =
                    homs[a.tgt][soc].iter().map(|g| coord(a.src, soc).coords(&g.after(phi).flatten())).collect();
                Matrix::from_columns(dims[a.src], &cols).transpose()
            })
            .collect();
        Representation { dims, maps }
    });
    FiniteAlgebra::from_projectives(q.clone(), Vec::new(), projectives, injectives)
}

/// Quiver, Cartan data and algebra of `End(T)` in one go.
pub fn end_data<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>) -> Result<EndData<F>> {
    let (end_quiver, cartan) = end_quiver_and_cartan(mesh, t)?;
    let algebra = end_algebra(mesh, t, &end_quiver)?;
    Ok(EndData { end_quiver, cartan, algebra })
}

fn projective_dimension<F: Field>(e: &FiniteAlgebra<F>, m: &Arc<Module<F>>) -> Result<usize> {
    let mut x = m.clone();
    for d in 0..=RESOLUTION_CAP {
        if e.is_projective(&x) {
            return Ok(d);
        }
        x = e.syzygy(&x);
    }
    Err(MeshError::ResolutionCap(RESOLUTION_CAP))
}

/// Number of initial terms of the minimal injective coresolution of `m`
/// that are projective; `None` if the whole (finite) coresolution is.
fn dominant_length<F: Field>(e: &FiniteAlgebra<F>, m: &Module<F>, proj_inj: &[bool]) -> Result<Option<usize>> {
    let mut x = Arc::new(m.clone());
    for d in 0..=RESOLUTION_CAP {
        if x.is_zero() {
            return Ok(None);
        }
        let soc = e.injective_envelope_dims(&x);
        if soc.iter().zip(proj_inj).any(|(&s, &pi)| s > 0 && !pi) {
            return Ok(Some(d));
        }
        x = e.cosyzygy(&x);
    }
    Err(MeshError::ResolutionCap(RESOLUTION_CAP))
}

/// `gl.dim E` and `dom.dim E` for a cluster tilting module whose orbits are
/// as many as the positive roots of the folded type.
pub fn homological_profile<F: Field>(
    mesh: &MeshAlgebra<F>,
    t: &CTModule<F>,
    e: &FiniteAlgebra<F>,
) -> Result<HomologicalProfile> {
    let roots = positive_root_count(mesh.spec.folded_type)?;
    if t.orbits.len() != roots {
        return Err(MeshError::PreconditionViolated(format!("{} orbits but {roots} positive roots", t.orbits.len())));
    }
    let n = e.n_vertices();
    let pds = par::map_range(n, |v| projective_dimension(e, &Arc::new(e.simple(v))));
    let mut gl = 0;
    for pd in pds {
        gl = gl.max(pd?);
    }
    let proj_inj: Vec<bool> = (0..n).map(|v| e.is_projective(&e.injective(v))).collect();
    let doms = par::map_range(n, |v| dominant_length(e, &e.projective(v), &proj_inj));
    let mut dom: Option<usize> = None;
    for d in doms {
        if let Some(d) = d? {
            dom = Some(dom.map_or(d, |x| x.min(d)));
        }
    }
    Ok(HomologicalProfile { global_dimension: Some(gl), dominant_dimension: dom })
}

/// `dim Ext^i_E(S_x, S_z)`: the multiplicity of `P(z)` in the `i`-th term
/// of the minimal projective resolution of `S_x`.
pub fn ext_simples<F: Field>(e: &FiniteAlgebra<F>, i: usize, x: usize, z: usize) -> usize {
    let s = Arc::new(e.simple(x));
    let omega = e.syzygy_power(&s, i);
    omega.top_dims(&e.quiver)[z]
}
