use meshct_core::algebra_engine::LoewyDiagram;
use meshct_core::matrix_mutation::{cartan_identity_suite, LabeledIntMatrix};
use meshct_core::tilting_lab::{
    cartan_data, exchange_matrix, mutate, start_module, CTModule, MeshAlgebra, SummandLabel,
};
use meshct_core::Q;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/b3/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn matrix(name: &str) -> LabeledIntMatrix {
    LabeledIntMatrix::from_csv(&fixture(name)).unwrap()
}

fn setup() -> (MeshAlgebra<Q>, CTModule<Q>) {
    let mesh = MeshAlgebra::<Q>::from_tag("B3").unwrap();
    let t = start_module(&mesh).unwrap();
    (mesh, t)
}

#[test]
fn start_module_shape_and_loewy_diagrams() {
    let (mesh, t) = setup();
    assert_eq!(t.len(), 15);
    assert_eq!(t.orbits.len(), 9);
    assert_eq!(t.projective_labels(), vec!["0_0", "1_0", "2_0", "3_0", "4_0"]);
    for line in fixture("loewy.txt").lines() {
        let (label, diagram) = line.split_once(':').unwrap();
        let i = t.index_of(label.trim()).unwrap();
        let got = mesh.loewy(t.summands[i].module.rep());
        assert!(got.same_layers(&LoewyDiagram::parse(diagram.trim())), "{label}: got {got}, want {diagram}");
    }
}

#[test]
fn exchange_matrices_match_goldens() {
    let (mesh, t) = setup();
    let data = cartan_data(&mesh, &t).unwrap();
    let ex = exchange_matrix(&data).unwrap();
    assert_eq!(ex.b_tilde_principal.to_csv(), fixture("b_tilde_principal.csv"));
    assert_eq!(ex.b_principal.to_csv(), fixture("b_principal.csv"));
    let (u, w) = ex.b_principal.uw_factors("{1,2}@1").unwrap();
    assert_eq!(u, matrix("u_principal.csv"));
    assert_eq!(w, matrix("w_principal.csv"));
    assert_eq!(ex.b_principal.fz_mutate("{1,2}@1").unwrap(), matrix("mu_b_principal.csv"));
    let report = cartan_identity_suite(&data, None).unwrap();
    assert!(report.all_pass(), "{report}");
}

#[test]
fn mutation_at_the_first_non_projective_pair() {
    let (mesh, t) = setup();
    let o = t.find_orbit("{1,2}@1").unwrap();
    let (star, record) = mutate(&mesh, &t, o).unwrap();
    let fwd = &record.forward[0];
    assert_eq!(fwd.start, "1_1");
    assert_eq!(fwd.middle, vec![("1_0".to_string(), 1), ("3_1".to_string(), 1), ("0_2".to_string(), 1)]);
    let bwd = &record.backward[0];
    assert_eq!(bwd.start, "1_1^1");
    assert_eq!(bwd.middle, vec![("3_0".to_string(), 1), ("0_1".to_string(), 1), ("2_2".to_string(), 1)]);
    assert_eq!(bwd.end, "2_1");

    let data = cartan_data(&mesh, &t).unwrap();
    let star_data = cartan_data(&mesh, &star).unwrap();
    let report = cartan_identity_suite(&data, Some((&star_data, "{1,2}@1"))).unwrap();
    assert!(report.all_pass(), "{report}");
    assert_eq!(star_data.b_principal().unwrap().entries, matrix("mu_b_principal.csv").entries);

    let (back, _) = mutate(&mesh, &star, o).unwrap();
    for (a, b) in t.summands.iter().zip(&back.summands) {
        assert!(
            t.summands.iter().any(|s| meshct_core::algebra_engine::isomorphic_indecomposables(
                &mesh.algebra,
                &s.module,
                &b.module
            )),
            "summand {} of the double mutation is not in T",
            b.label
        );
        assert_eq!(a.label.vertex, b.label.vertex);
    }
    assert_eq!(
        back.summands[t.index_of("1_1").unwrap()].label,
        SummandLabel { generation: 2, ..SummandLabel::new(1, 1) }
    );
}
