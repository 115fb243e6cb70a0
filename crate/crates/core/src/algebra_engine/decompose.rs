//! Krull–Schmidt decomposition by Fitting splittings of random
//! endomorphisms, with a matrix-unit fallback for isotypic pieces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Span};
use crate::poly;

use super::algebra::{isomorphic_indecomposables, semisimple_rank, FiniteAlgebra, Module};
use super::representation::Morphism;

/// Indecomposable summands grouped into isomorphism classes, with the
/// multiplicity of each class.
#[derive(Debug)]
pub struct Decomposition<F> {
    pub classes: Vec<(Module<F>, usize)>,
}

impl<F: Field> Decomposition<F> {
    pub fn n_summands(&self) -> usize {
        self.classes.iter().map(|(_, m)| m).sum()
    }

    /// Dimension vectors of the classes with multiplicities, sorted.
    pub fn signature(&self) -> Vec<(Vec<usize>, usize)> {
        let mut sig: Vec<(Vec<usize>, usize)> = self.classes.iter().map(|(m, k)| (m.dims.clone(), *k)).collect();
        sig.sort();
        sig
    }
}

const ATTEMPTS: usize = 8;

fn power<F: Field>(y: &Morphism<F>, d: usize) -> Morphism<F> {
    let mut p = y.clone();
    for _ in 1..d.max(1) {
        p = y.after(&p);
    }
    p
}

/// Splits `m` along the Fitting decomposition of `y`, when `y` is neither
/// nilpotent nor invertible.
fn fitting_split<F: Field>(alg: &FiniteAlgebra<F>, m: &Module<F>, y: &Morphism<F>) -> Option<(Module<F>, Module<F>)> {
    let d = m.dims.iter().copied().max().unwrap_or(0);
    let p = power(y, d);
    let ker: Vec<Matrix<F>> = p.blocks.iter().map(|b| b.nullspace()).collect();
    let im: Vec<Matrix<F>> = p
        .blocks
        .iter()
        .map(|b| {
            let piv = b.independent_columns();
            b.select_columns(&piv)
        })
        .collect();
    let k: usize = ker.iter().map(|b| b.cols()).sum();
    if k == 0 || k == m.dim() {
        return None;
    }
    let (a, _) = m.subrepresentation(&alg.quiver, ker);
    let (b, _) = m.subrepresentation(&alg.quiver, im);
    Some((Module::new(a), Module::new(b)))
}

/// Endomorphism algebra acting on a subquotient of `M_v`: either the top
/// (`top = true`) or the socle at vertex `v`. Returns the `t × t` matrices.
fn local_action<F: Field>(
    alg: &FiniteAlgebra<F>,
    m: &Module<F>,
    end: &[Morphism<F>],
    v: usize,
    top: bool,
) -> Vec<Matrix<F>> {
    let dv = m.dims[v];
    if top {
        let rad = m.radical_basis(&alg.quiver)[v].clone();
        let r = rad.cols();
        let mut span = Span::new(dv);
        let mut cols: Vec<Vec<F>> = (0..r).map(|c| rad.column(c)).collect();
        for c in &cols {
            span.insert(c);
        }
        let mut comp = Vec::new();
        for i in 0..dv {
            let mut e = vec![F::zero(); dv];
            e[i] = F::one();
            if span.insert(&e) {
                comp.push(e.clone());
                cols.push(e);
            }
        }
        let basis = Matrix::from_columns(dv, &cols);
        let inv = basis.inverse().expect("radical plus complement is a basis");
        end.iter()
            .map(|f| {
                let coords = inv.mul(&f.blocks[v]).mul(&Matrix::from_columns(dv, &comp));
                Matrix::from_fn(comp.len(), comp.len(), |i, j| coords.get(r + i, j).clone())
            })
            .collect()
    } else {
        let soc = m.socle_basis(&alg.quiver)[v].clone();
        let t = soc.cols();
        let pinv = {
            let piv = soc.transpose().independent_columns();
            let sel = soc.select_rows(&piv);
            (piv, sel.inverse().expect("socle basis has full column rank"))
        };
        end.iter()
            .map(|f| {
                let img = f.blocks[v].mul(&soc);
                let coords = pinv.1.mul(&img.select_rows(&pinv.0));
                Matrix::from_fn(t, t, |i, j| coords.get(i, j).clone())
            })
            .collect()
    }
}

/// Finds an endomorphism acting as a matrix unit on the top or socle of
/// some vertex, when the endomorphism algebra surjects onto a full matrix
/// algebra there.
fn matrix_unit_split<F: Field>(
    alg: &FiniteAlgebra<F>,
    m: &Module<F>,
    end: &[Morphism<F>],
) -> Option<(Module<F>, Module<F>)> {
    for top in [true, false] {
        for v in 0..alg.n_vertices() {
            let acts = local_action(alg, m, end, v, top);
            let t = acts.first().map_or(0, |a| a.rows());
            if t < 2 {
                continue;
            }
            let cols: Vec<Vec<F>> = acts.iter().map(|a| a.data().to_vec()).collect();
            let sys = Matrix::from_columns(t * t, &cols);
            let mut target = vec![F::zero(); t * t];
            target[0] = F::one();
            if let Some(c) = sys.solve(&Matrix::from_columns(t * t, &[target])) {
                let x = Morphism::combination(end, &c.column(0));
                if let Some(split) = fitting_split(alg, m, &x) {
                    return Some(split);
                }
            }
        }
    }
    None
}

fn split_once<F: Field>(
    alg: &FiniteAlgebra<F>,
    m: &Module<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Module<F>, Module<F>)>> {
    let end = alg.hom_space(m, m);
    if semisimple_rank(&end) <= 1 {
        return Ok(None);
    }
    for _ in 0..ATTEMPTS {
        let coeffs: Vec<F> = (0..end.len()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
        let x = Morphism::combination(&end, &coeffs);
        for b in &x.blocks {
            if b.rows() == 0 {
                continue;
            }
            for lambda in F::roots(&poly::charpoly(b)) {
                let id = Morphism::identity(m);
                let y = x.add(&id.scale(&lambda.neg()));
                if let Some(split) = fitting_split(alg, m, &y) {
                    return Ok(Some(split));
                }
            }
        }
    }
    if let Some(split) = matrix_unit_split(alg, m, &end) {
        return Ok(Some(split));
    }
    Err(MeshError::DecompositionUnstable(format!(
        "no splitting endomorphism found for a module of dimension {}",
        m.dim()
    )))
}

/// All indecomposable summands of `m` (with repetition).
pub fn indecomposable_summands<F: Field>(alg: &FiniteAlgebra<F>, m: &Module<F>, seed: u64) -> Result<Vec<Module<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![m.clone()];
    let mut done = Vec::new();
    while let Some(x) = todo.pop() {
        if x.is_zero() {
            continue;
        }
        match split_once(alg, &x, &mut rng)? {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => done.push(x),
        }
    }
    done.sort_by(|a, b| a.dims.cmp(&b.dims));
    Ok(done)
}

/// Groups indecomposables into isomorphism classes.
pub fn group_classes<F: Field>(alg: &FiniteAlgebra<F>, summands: Vec<Module<F>>) -> Vec<(Module<F>, usize)> {
    let mut classes: Vec<(Module<F>, usize)> = Vec::new();
    for s in summands {
        match classes.iter_mut().find(|(c, _)| isomorphic_indecomposables(alg, c, &s)) {
            Some(entry) => entry.1 += 1,
            None => classes.push((s, 1)),
        }
    }
    classes
}

/// Krull–Schmidt decomposition; the result is recomputed with a second
/// seed and must agree, otherwise the random choices are redrawn.
pub fn decompose<F: Field>(alg: &FiniteAlgebra<F>, m: &Module<F>, seed: u64) -> Result<Decomposition<F>> {
    let mut last_err = None;
    for attempt in 0..5u64 {
        let s = seed.wrapping_add(2 * attempt);
        let first = indecomposable_summands(alg, m, s).map(|x| group_classes(alg, x));
        let second = indecomposable_summands(alg, m, s + 1).map(|x| group_classes(alg, x));
        match (first, second) {
            (Ok(a), Ok(b)) => {
                let da = Decomposition { classes: a };
                let db = Decomposition { classes: b };
                if da.signature() == db.signature() {
                    return Ok(da);
                }
                last_err = Some(MeshError::DecompositionUnstable("seeds disagree".into()));
            }
            (Err(e), _) | (_, Err(e)) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| MeshError::DecompositionUnstable("no attempt succeeded".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_engine::path_algebra::build_algebra;
    use crate::algebra_engine::representation::Representation;
    use crate::field::Q;
    use crate::quiver::{Arrow, Quiver};

    fn a3() -> FiniteAlgebra<Q> {
        let q = Quiver::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![Arrow { id: "a".into(), src: 0, tgt: 1 }, Arrow { id: "b".into(), src: 1, tgt: 2 }],
        );
        FiniteAlgebra::from_table(&build_algebra(&q, &[], 10).unwrap()).unwrap()
    }

    #[test]
    fn isotypic_sum_splits() {
        let alg = a3();
        let p = alg.projective(0);
        let s = alg.simple(1);
        let m = Module::new(Representation::direct_sum(&alg.quiver, &[p.rep(), p.rep(), s.rep(), p.rep()]));
        let d = decompose(&alg, &m, 7).unwrap();
        assert_eq!(d.n_summands(), 4);
        assert_eq!(d.signature(), vec![(vec![0, 1, 0], 1), (vec![1, 1, 1], 3)]);
    }

    #[test]
    fn indecomposable_is_kept() {
        let alg = a3();
        let p = alg.projective(1);
        let d = decompose(&alg, &p, 1).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].1, 1);
    }
}
