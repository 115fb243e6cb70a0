//! Minimal left approximations, exchange sequences and mutation of
//! γ-equivariant cluster tilting modules.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra_engine::representation::cokernel;
use crate::algebra_engine::{is_local, isomorphic_indecomposables, FiniteAlgebra, Module, Morphism, Representation};
use crate::error::{MeshError, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Span};
use crate::par;

use super::{compute_homs, CTModule, HomTable, MeshAlgebra, Summand};

fn span_of<F: Field>(items: &[Morphism<F>], ambient: usize) -> Span<F> {
    let mut span = Span::new(ambient);
    for f in items {
        span.insert(&f.flatten());
    }
    span
}

/// Indices of `candidates` that extend the span of `base`, chosen greedily.
pub(crate) fn complement<F: Field>(base: &[Morphism<F>], candidates: &[Morphism<F>]) -> Vec<usize> {
    let Some(first) = candidates.first() else { return Vec::new() };
    let ambient = first.flatten().len();
    let mut span = span_of(base, ambient);
    candidates.iter().enumerate().filter(|(_, f)| span.insert(&f.flatten())).map(|(k, _)| k).collect()
}

/// Basis of the radical of `Hom(T_i, T_j)` between indecomposables: all of
/// it for `i ≠ j`, the trace-zero part of the (local) endomorphism ring
/// for `i = j`.
pub(crate) fn radical<F: Field>(homs: &HomTable<F>, i: usize, j: usize) -> Vec<Morphism<F>> {
    let basis = &homs[i][j];
    if i != j {
        return basis.as_ref().clone();
    }
    let traces = Matrix::from_rows(vec![basis.iter().map(Morphism::trace).collect()]);
    let null = traces.nullspace();
    (0..null.cols()).map(|c| Morphism::combination(basis, &null.column(c))).collect()
}

/// A random unitriangular change of basis of `basis` (the identity when
/// `seed` is `None`), so that greedy complements pick different maps.
fn scramble<F: Field>(basis: &[Morphism<F>], seed: Option<u64>, salt: u64) -> Vec<Morphism<F>> {
    let Some(seed) = seed else { return basis.to_vec() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..basis.len())
        .map(|i| {
            let coeffs: Vec<F> = (0..basis.len())
                .map(|l| match l.cmp(&i) {
                    std::cmp::Ordering::Less => F::zero(),
                    std::cmp::Ordering::Equal => F::one(),
                    std::cmp::Ordering::Greater => F::from_i64(rng.gen_range(-3..=3)),
                })
                .collect();
            Morphism::combination(basis, &coeffs)
        })
        .collect()
}

/// A minimal left approximation `X → ⊕_j R_j^{d_j}` by a set of summands.
#[derive(Debug)]
pub struct Approximation<F> {
    /// Summand indices `j` with multiplicity `d_j > 0`, in index order.
    pub middle: Vec<(usize, usize)>,
    pub middle_module: Module<F>,
    pub map: Morphism<F>,
    pub cokernel: Module<F>,
}

/// Minimal left approximation of `x` by the summands `targets` of `t`.
///
/// `hom_x[j]` must be a basis of `Hom(x, T_j)`. The component maps into
/// `R_j` form a complement of the maps factoring through radical maps
/// between the targets; with a `seed` the complement is chosen from a
/// randomly transformed basis. The approximation property and injectivity
/// are verified.
#[allow(clippy::too_many_arguments)]
pub fn minimal_left_approx<F: Field>(
    alg: &FiniteAlgebra<F>,
    x: &Module<F>,
    name: &str,
    summands: &[Summand<F>],
    targets: &[usize],
    hom_x: &[Arc<Vec<Morphism<F>>>],
    homs: &HomTable<F>,
    seed: Option<u64>,
) -> Result<Approximation<F>> {
    let chosen: Vec<Vec<Morphism<F>>> = par::map(targets, |&j| {
        let mut through = Vec::new();
        for &k in targets {
            let rad = radical(homs, k, j);
            for r in &rad {
                for h in hom_x[k].iter() {
                    through.push(r.after(h));
                }
            }
        }
        let candidates = scramble(&hom_x[j], seed, j as u64);
        complement(&through, &candidates).into_iter().map(|c| candidates[c].clone()).collect()
    });
    // Every map into a target factors through the chosen components.
    for (&j, _) in targets.iter().zip(&chosen) {
        let mut generated = Vec::new();
        for (&k, comps) in targets.iter().zip(&chosen) {
            for g in homs[k][j].iter() {
                for f in comps {
                    generated.push(g.after(f));
                }
            }
        }
        if !complement(&generated, &hom_x[j]).is_empty() {
            return Err(MeshError::TheoryViolation(format!(
                "map from {name} to summand {} does not factor through the approximation",
                summands[j].label
            )));
        }
    }
    let mut middle = Vec::new();
    let mut parts: Vec<&Representation<F>> = Vec::new();
    let mut comps: Vec<&Morphism<F>> = Vec::new();
    for (&j, c) in targets.iter().zip(&chosen) {
        if !c.is_empty() {
            middle.push((j, c.len()));
        }
        for f in c {
            parts.push(summands[j].module.rep());
            comps.push(f);
        }
    }
    let middle_module = Representation::direct_sum(&alg.quiver, &parts);
    let blocks = (0..alg.n_vertices())
        .map(|v| {
            let rows: Vec<&Matrix<F>> = comps.iter().map(|f| &f.blocks[v]).collect();
            Matrix::vstack(x.dims[v], &rows)
        })
        .collect();
    let map = Morphism { blocks };
    if map.rank() != x.dim() {
        return Err(MeshError::NotInjective(name.to_string()));
    }
    let (y, _) = cokernel(&alg.quiver, &map, &middle_module);
    Ok(Approximation { middle, middle_module: Module::new(middle_module), map, cokernel: Module::new(y) })
}

/// An exchange sequence `start → ⊕ middle → end` between summand labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeSequence {
    pub start: String,
    pub middle: Vec<(String, usize)>,
    pub end: String,
}

impl fmt::Display for ExchangeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid: Vec<String> =
            self.middle.iter().map(|(l, d)| if *d == 1 { format!("T({l})") } else { format!("T({l})^{d}") }).collect();
        write!(f, "T({}) -> {} -> T({})", self.start, mid.join(" + "), self.end)
    }
}

/// The exchange sequences of one orbit mutation, one pair per orbit member.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeRecord {
    pub orbit: String,
    pub forward: Vec<ExchangeSequence>,
    pub backward: Vec<ExchangeSequence>,
}

impl fmt::Display for ExchangeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mutation at {}", self.orbit)?;
        for s in &self.forward {
            writeln!(f, "  forward:  {s}")?;
        }
        for s in &self.backward {
            writeln!(f, "  backward: {s}")?;
        }
        Ok(())
    }
}

fn gamma_power(orbits: &[Vec<usize>], n: usize, k: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for o in orbits {
        for (p, &i) in o.iter().enumerate() {
            perm[i] = o[(p + k) % o.len()];
        }
    }
    perm
}

fn sequence_image<F: Field>(
    t: &CTModule<F>,
    perm: &[usize],
    start: usize,
    middle: &[(usize, usize)],
    end: usize,
    labels: &dyn Fn(usize) -> String,
) -> ExchangeSequence {
    let mut mid: Vec<(usize, usize)> = middle.iter().map(|&(j, d)| (perm[j], d)).collect();
    mid.sort_unstable();
    ExchangeSequence {
        start: labels(perm[start]),
        middle: mid.into_iter().map(|(j, d)| (t.summands[j].label.to_string(), d)).collect(),
        end: labels(perm[end]),
    }
}

/// Mutation of `t` at the γ-orbit `o`: every member `X` is replaced by the
/// cokernel `Y` of its minimal left approximation by the other summands.
/// The backward sequence, locality of `End(Y)` and the vanishing of
/// `Ext¹(T*, T*)` at the new summands are verified.
pub fn mutate<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>, o: usize) -> Result<(CTModule<F>, ExchangeRecord)> {
    mutate_with_seed(mesh, t, o, None)
}

/// [`mutate`] with randomly chosen approximation components; the result is
/// unique up to isomorphism, so any seed gives isomorphic summands.
pub fn mutate_with_seed<F: Field>(
    mesh: &MeshAlgebra<F>,
    t: &CTModule<F>,
    o: usize,
    seed: Option<u64>,
) -> Result<(CTModule<F>, ExchangeRecord)> {
    let alg = &mesh.algebra;
    let orbit_name = t.orbit_label(o).to_string();
    if t.orbit_is_projective(o) {
        return Err(MeshError::MutationAtProjective(orbit_name));
    }
    let homs = t.homs(alg);
    let members = t.orbits[o].clone();
    let x0 = members[0];
    let targets: Vec<usize> = (0..t.len()).filter(|i| !members.contains(i)).collect();
    let x_label = t.summands[x0].label;
    let forward = minimal_left_approx(
        alg,
        &t.summands[x0].module,
        &x_label.to_string(),
        &t.summands,
        &targets,
        &homs[x0],
        &homs,
        seed,
    )?;
    let y0 = forward.cokernel;
    if !is_local(&alg.hom_space(&y0, &y0)) {
        return Err(MeshError::TheoryViolation(format!("End of the replacement of {x_label} is not local")));
    }

    let mut summands = t.summands.clone();
    for (k, &i) in members.iter().enumerate() {
        let y = if k == 0 { y0.rep().clone() } else { mesh.gamma(y0.rep(), k as i64) };
        summands[i] = Summand {
            label: t.summands[i].label.next_generation(),
            module: Arc::new(Module::new(y)),
            projective: false,
        };
    }
    let known = |i: usize, j: usize| (!members.contains(&i) && !members.contains(&j)).then(|| homs[i][j].clone());
    let new_homs = compute_homs(alg, &summands, Some(&known));
    let star = CTModule::new(summands, t.orbits.clone()).with_homs(new_homs);
    let star_homs = star.homs(alg);

    let y_arc = star.summands[x0].module.clone();
    let total = star.total(&alg.quiver);
    let ext_out = alg.ext_dim(1, &y_arc, &total);
    let ext_in: usize = par::map(&star.summands, |s| alg.ext_dim(1, &s.module, &y_arc)).into_iter().sum();
    if ext_out + ext_in != 0 {
        return Err(MeshError::RigidityFailure(format!(
            "mutation at {orbit_name}: dim Ext¹(Y, T*) = {ext_out}, dim Ext¹(T*, Y) = {ext_in}"
        )));
    }

    let y_label = star.summands[x0].label;
    let backward = minimal_left_approx(
        alg,
        &y_arc,
        &y_label.to_string(),
        &star.summands,
        &targets,
        &star_homs[x0],
        &star_homs,
        seed,
    )?;
    let back_end = members
        .iter()
        .copied()
        .find(|&i| isomorphic_indecomposables(alg, &backward.cokernel, &t.summands[i].module))
        .ok_or_else(|| {
            MeshError::TheoryViolation(format!("backward sequence of {y_label} does not end in the orbit of {x_label}"))
        })?;

    let old_label = |i: usize| t.summands[i].label.to_string();
    let new_label = |i: usize| star.summands[i].label.to_string();
    let mut record = ExchangeRecord { orbit: orbit_name, forward: Vec::new(), backward: Vec::new() };
    for k in 0..members.len() {
        let perm = gamma_power(&t.orbits, t.len(), k);
        let fwd = sequence_image(t, &perm, x0, &forward.middle, x0, &|i| old_label(i));
        record.forward.push(ExchangeSequence { end: new_label(perm[x0]), ..fwd });
        let bwd = sequence_image(t, &perm, x0, &backward.middle, back_end, &|i| old_label(i));
        record.backward.push(ExchangeSequence { start: new_label(perm[x0]), ..bwd });
    }
    Ok((star, record))
}

/// Mutates along a sequence of orbit labels, returning every step.
pub fn mutate_sequence<F: Field>(
    mesh: &MeshAlgebra<F>,
    t: CTModule<F>,
    orbits: &[String],
    seed: Option<u64>,
) -> Result<(CTModule<F>, Vec<ExchangeRecord>)> {
    let mut current = t;
    let mut records = Vec::new();
    for name in orbits {
        let o = current.find_orbit(name)?;
        let (next, rec) = mutate_with_seed(mesh, &current, o, seed)?;
        current = next;
        records.push(rec);
    }
    Ok((current, records))
}
