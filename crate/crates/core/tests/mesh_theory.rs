use std::sync::{Arc, OnceLock};

use meshct_core::algebra_engine::{isomorphic_indecomposables, Module};
use meshct_core::dynkin_core::{positive_root_count, DynkinSpec};
use meshct_core::matrix_mutation::cartan_identity_suite;
use meshct_core::mesh_calculus::{AuslanderAlgebra, HammockCache};
use meshct_core::tilting_lab::{
    cartan_data, end_data, ext_simples, homological_profile, mutate, mutate_with_seed, start_module, CTModule,
    MeshAlgebra,
};
use meshct_core::Q;
use proptest::prelude::*;

struct Case {
    mesh: MeshAlgebra<Q>,
    start: CTModule<Q>,
}

fn case(tag: &str) -> &'static Case {
    static CASES: OnceLock<Vec<(String, Case)>> = OnceLock::new();
    let cases = CASES.get_or_init(|| {
        ["B2", "B3", "C3", "G2"]
            .iter()
            .map(|&t| {
                let mesh = MeshAlgebra::from_tag(t).unwrap();
                let start = start_module(&mesh).unwrap();
                (t.to_string(), Case { mesh, start })
            })
            .collect()
    });
    &cases.iter().find(|(t, _)| t == tag).expect("known tag").1
}

#[test]
fn knitting_agrees_with_auslander_path_basis() {
    for tag in ["B2", "B3", "C3", "G2"] {
        let spec = DynkinSpec::from_tag(tag).unwrap();
        let cache = HammockCache::new(&spec);
        let gamma = AuslanderAlgebra::<Q>::new(&spec).unwrap();
        for &x in &gamma.vertices {
            for &y in &gamma.vertices {
                assert_eq!(cache.hom_dim(y, x).unwrap(), gamma.hom_dim(y, x).unwrap(), "{tag}: {y:?} -> {x:?}");
            }
        }
    }
}

#[test]
fn orbit_counts_are_positive_root_counts() {
    for (tag, orbits) in [("B2", 4), ("B3", 9), ("C3", 9), ("G2", 6)] {
        let c = case(tag);
        assert_eq!(c.start.orbits.len(), orbits, "{tag}");
        assert_eq!(positive_root_count(c.mesh.spec.folded_type).unwrap(), orbits);
    }
}

#[test]
fn f4_start_module_has_24_orbits() {
    let mesh = MeshAlgebra::<Q>::from_tag("F4").unwrap();
    let t = start_module(&mesh).unwrap();
    assert_eq!(t.len(), 36);
    assert_eq!(t.orbits.len(), 24);
}

#[test]
fn endomorphism_algebras_have_global_and_dominant_dimension_three() {
    for tag in ["B2", "B3", "C3", "G2"] {
        let c = case(tag);
        let e = end_data(&c.mesh, &c.start).unwrap();
        let p = homological_profile(&c.mesh, &c.start, &e.algebra).unwrap();
        assert_eq!(p.global_dimension, Some(3), "{tag}");
        assert_eq!(p.dominant_dimension, Some(3), "{tag}");
    }
}

#[test]
fn ext_duality_between_simples_of_the_endomorphism_algebra() {
    // dim Ext^{3-i}(S_X, S_Z) = dim Ext^i(S_Z, S_{γ⁻¹X}) for non-projective X.
    for tag in ["B2", "G2"] {
        let c = case(tag);
        let e = end_data(&c.mesh, &c.start).unwrap().algebra;
        let gamma = c.start.gamma_permutation(&c.mesh).unwrap();
        let mut gamma_inv = vec![0; gamma.len()];
        for (i, &g) in gamma.iter().enumerate() {
            gamma_inv[g] = i;
        }
        for x in (0..c.start.len()).filter(|&x| !c.start.summands[x].projective) {
            for z in 0..c.start.len() {
                for i in 0..=3 {
                    assert_eq!(
                        ext_simples(&e, 3 - i, x, z),
                        ext_simples(&e, i, z, gamma_inv[x]),
                        "{tag}: i = {i}, X = {}, Z = {}",
                        c.start.summands[x].label,
                        c.start.summands[z].label
                    );
                }
            }
        }
    }
}

#[test]
fn exchange_pairs_have_one_dimensional_ext_only_at_the_partner() {
    for tag in ["B2", "B3", "C3", "G2"] {
        let c = case(tag);
        let alg = &c.mesh.algebra;
        for o in (0..c.start.orbits.len()).filter(|&o| !c.start.orbit_is_projective(o)) {
            let (star, _) = mutate(&c.mesh, &c.start, o).unwrap();
            let members = &c.start.orbits[o];
            for &x in members {
                for &gx in members {
                    let expected = usize::from(gx == x);
                    let y = &star.summands[x].module;
                    let ext = alg.ext_dim(1, y, &c.start.summands[gx].module);
                    assert_eq!(ext, expected, "{tag}: Y of {}", c.start.summands[x].label);
                }
            }
        }
    }
}

#[test]
fn mutation_result_does_not_depend_on_the_seed() {
    for tag in ["B3", "G2"] {
        let c = case(tag);
        let alg = &c.mesh.algebra;
        for o in (0..c.start.orbits.len()).filter(|&o| !c.start.orbit_is_projective(o)) {
            let (a, ra) = mutate_with_seed(&c.mesh, &c.start, o, Some(1)).unwrap();
            let (b, rb) = mutate_with_seed(&c.mesh, &c.start, o, Some(2)).unwrap();
            assert_eq!(ra.forward, rb.forward);
            for &i in &c.start.orbits[o] {
                assert!(isomorphic_indecomposables(alg, &a.summands[i].module, &b.summands[i].module), "{tag}");
            }
        }
    }
}

#[test]
fn double_mutation_returns_to_the_start_module_up_to_gamma_shuffle() {
    for tag in ["B2", "B3", "C3", "G2"] {
        let c = case(tag);
        let alg = &c.mesh.algebra;
        for o in (0..c.start.orbits.len()).filter(|&o| !c.start.orbit_is_projective(o)) {
            let (star, _) = mutate(&c.mesh, &c.start, o).unwrap();
            let (back, _) = mutate(&c.mesh, &star, o).unwrap();
            for (i, s) in back.summands.iter().enumerate() {
                let j = (0..c.start.len())
                    .find(|&j| isomorphic_indecomposables(alg, &s.module, &c.start.summands[j].module))
                    .unwrap_or_else(|| panic!("{tag}: summand {} is new", s.label));
                // Untouched summands stay in place; the orbit may be permuted by γ.
                assert!(j == i || c.start.orbits[o].contains(&j));
            }
        }
    }
}

type Pool = Vec<Arc<Module<Q>>>;

/// Start-module summands, the summands replacing them after one mutation,
/// and the σ̃-twists of all of these.
fn duality_pool(tag: &str) -> &'static [Arc<Module<Q>>] {
    static POOLS: OnceLock<Vec<(String, Pool)>> = OnceLock::new();
    let pools = POOLS.get_or_init(|| {
        ["B2", "B3", "C3", "G2"]
            .iter()
            .map(|&t| {
                let c = case(t);
                let mut pool: Vec<Arc<Module<Q>>> = c.start.summands.iter().map(|s| s.module.clone()).collect();
                for o in (0..c.start.orbits.len()).filter(|&o| !c.start.orbit_is_projective(o)) {
                    let (star, _) = mutate(&c.mesh, &c.start, o).unwrap();
                    pool.extend(c.start.orbits[o].iter().map(|&i| star.summands[i].module.clone()));
                }
                let twisted: Vec<Arc<Module<Q>>> =
                    pool.iter().map(|m| Arc::new(Module::new(c.mesh.twist(m.rep(), 1)))).collect();
                pool.extend(twisted);
                (t.to_string(), pool)
            })
            .collect()
    });
    &pools.iter().find(|(t, _)| t == tag).expect("known tag").1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ext1_duality_with_gamma(tag in prop::sample::select(vec!["B2", "B3", "C3", "G2"]), a in 0usize..1000, b in 0usize..1000) {
        let c = case(tag);
        let pool = duality_pool(tag);
        let x = &pool[a % pool.len()];
        let y = &pool[b % pool.len()];
        let gy = Module::new(c.mesh.gamma(y.rep(), 1));
        prop_assert_eq!(c.mesh.algebra.ext_dim(1, y, x), c.mesh.algebra.ext_dim(1, x, &gy));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_mutation_sequences_stay_rigid(
        tag in prop::sample::select(vec!["B2", "C3"]),
        picks in prop::collection::vec(0usize..100, 1..=5),
    ) {
        let c = case(tag);
        let alg = &c.mesh.algebra;
        let mut data = cartan_data(&c.mesh, &c.start).unwrap();
        let first = cartan_identity_suite(&data, None).unwrap();
        prop_assert!(first.all_pass(), "{}", first);
        let mut current: Option<CTModule<Q>> = None;
        for p in picks {
            let t = current.as_ref().unwrap_or(&c.start);
            let free: Vec<usize> = (0..t.orbits.len()).filter(|&o| !t.orbit_is_projective(o)).collect();
            let o = free[p % free.len()];
            let name = t.orbit_label(o).to_string();
            let (star, _) = mutate(&c.mesh, t, o).unwrap();
            prop_assert_eq!(star.self_extension_dim(alg), 0);
            let star_data = cartan_data(&c.mesh, &star).unwrap();
            let report = cartan_identity_suite(&data, Some((&star_data, &name))).unwrap();
            prop_assert!(report.all_pass(), "{} at {}: {}", tag, name, report);
            data = star_data;
            current = Some(star);
        }
    }
}
