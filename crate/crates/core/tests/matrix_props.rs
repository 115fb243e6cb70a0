use meshct_core::matrix_mutation::{LabeledIntMatrix, Orbit, OrbitPartitionSpec};
use proptest::prelude::*;

fn zero_diagonal(max: usize) -> impl Strategy<Value = LabeledIntMatrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n)).prop_map(|mut rows| {
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 0;
        }
        let labels = (0..rows.len()).map(|i| format!("v{i}")).collect();
        LabeledIntMatrix::square(labels, rows).unwrap()
    })
}

/// Independent entrywise mutation rule, written with explicit sign cases.
fn mutate_oracle(a: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = a.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -a[i][j]
            } else if a[i][k] > 0 && a[k][j] > 0 {
                a[i][j] + a[i][k] * a[k][j]
            } else if a[i][k] < 0 && a[k][j] < 0 {
                a[i][j] - a[i][k] * a[k][j]
            } else {
                a[i][j]
            };
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mutation_is_an_involution_and_factors(a in zero_diagonal(8), k in 0usize..8) {
        let k = k % a.n_rows();
        let label = a.row_labels[k].clone();
        let m = a.fz_mutate(&label).unwrap();
        prop_assert_eq!(&m.entries, &mutate_oracle(&a.entries, k));
        prop_assert_eq!(&m.fz_mutate(&label).unwrap(), &a);
        let (u, w) = a.uw_factors(&label).unwrap();
        prop_assert_eq!(&w.mul(&a).unwrap().mul(&u).unwrap(), &m);
    }

    #[test]
    fn csv_and_json_round_trip(a in zero_diagonal(8)) {
        prop_assert_eq!(&LabeledIntMatrix::from_csv(&a.to_csv()).unwrap(), &a);
        prop_assert_eq!(&LabeledIntMatrix::from_json(&a.to_json().to_string()).unwrap(), &a);
    }

    #[test]
    fn folding_an_invariant_matrix_sums_orbit_rows(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3)) {
        // Build a matrix invariant under swapping v1 and v2 from a 3x3 seed.
        let labels: Vec<String> = ["v0", "v1", "v2"].iter().map(|s| s.to_string()).collect();
        let swap = [0usize, 2, 1];
        let sym: Vec<Vec<i64>> =
            (0..3).map(|i| (0..3).map(|j| rows[i][j] + rows[swap[i]][swap[j]]).collect()).collect();
        let a = LabeledIntMatrix::square(labels, sym.clone()).unwrap();
        let p = OrbitPartitionSpec::new(vec![
            Orbit { name: "a".into(), members: vec!["v0".into()] },
            Orbit { name: "b".into(), members: vec!["v1".into(), "v2".into()] },
        ]);
        prop_assert!(a.is_gamma_action(&p).unwrap());
        let f = a.fold(&p).unwrap();
        prop_assert_eq!(f.entries[0][0], sym[0][0]);
        prop_assert_eq!(f.entries[1][0], sym[1][0] + sym[2][0]);
        prop_assert_eq!(f.entries[0][1], sym[0][1]);
        prop_assert_eq!(f.entries[1][1], sym[1][1] + sym[2][1]);
    }
}
