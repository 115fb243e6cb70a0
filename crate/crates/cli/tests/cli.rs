use std::path::PathBuf;
use std::process::{Command, Output};

fn meshct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshct")).args(args).env_remove("MESHCT_FIELD").output().expect("meshct runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/b3").join(name)
}

#[test]
fn example_b3_emits_artifacts_in_order_and_passes() {
    let o = meshct(&["example", "b3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let order = [
        "## end_quiver.dot",
        "## b_tilde_principal.csv",
        "## b_principal.csv",
        "## u_principal.csv",
        "## w_principal.csv",
        "## mu_b_principal.csv",
        "## report.txt",
    ];
    let positions: Vec<usize> = order.iter().map(|h| out.find(h).unwrap_or_else(|| panic!("missing {h}"))).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let csv = std::fs::read_to_string(fixture("b_principal.csv")).unwrap();
    assert!(out.contains(&format!("## b_principal.csv\n{csv}")));
}

#[test]
fn example_writes_a_directory_with_metadata() {
    let dir = std::env::temp_dir().join(format!("meshct-example-{}", std::process::id()));
    let o = meshct(&["example", "b3", "--seed", "7", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 7);
    assert_eq!(
        std::fs::read_to_string(dir.join("mu_b_principal.csv")).unwrap(),
        std::fs::read_to_string(fixture("mu_b_principal.csv")).unwrap()
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn start_g2_json_lists_six_orbits_and_records_the_seed() {
    let o = meshct(&["start", "g2", "--format", "json", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["orbits"].as_array().unwrap().len(), 6);
    assert_eq!(json["meta"]["seed"], 42);
    assert_eq!(json["meta"]["field"], "rat");
}

#[test]
fn double_mutation_reports_involution() {
    let o = meshct(&["mutate", "b3", "--seq", "{1,2}@1,{1,2}@1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("involution: ok"));
    assert!(out.contains("admissible: true"));
}

#[test]
fn output_is_deterministic_for_a_fixed_seed() {
    let args = ["mutate", "c3", "--seq", "{1,2}@1,{0}@2,{1,2}@1", "--seed", "3", "--format", "json"];
    assert_eq!(meshct(&args).stdout, meshct(&args).stdout);
}

#[test]
fn field_comes_from_the_environment_unless_overridden() {
    let env = Command::new(env!("CARGO_BIN_EXE_meshct"))
        .args(["start", "b2"])
        .env("MESHCT_FIELD", "fp32003")
        .output()
        .unwrap();
    assert!(stdout(&env).starts_with("# meshct start b2 seed=0 field=fp32003"));
    let flag = Command::new(env!("CARGO_BIN_EXE_meshct"))
        .args(["start", "b2", "--field", "rat"])
        .env("MESHCT_FIELD", "fp32003")
        .output()
        .unwrap();
    assert!(stdout(&flag).starts_with("# meshct start b2 seed=0 field=rat"));
    let bad =
        Command::new(env!("CARGO_BIN_EXE_meshct")).args(["start", "b2"]).env("MESHCT_FIELD", "reals").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["start", "x7"],
        vec!["mutate", "b3", "--seq", "{0}@0"],
        vec!["mutate", "b3", "--seq", "nonsense"],
        vec!["example", "z9"],
        vec!["hammock", "b3", "7"],
        vec!["frobnicate"],
    ] {
        assert_eq!(meshct(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn matrix_subcommands_agree_with_fixtures() {
    let b = fixture("b_principal.csv");
    let o = meshct(&["matrix", "mutate", b.to_str().unwrap(), "--at", "{1,2}@1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let body: String = stdout(&o).lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(body, std::fs::read_to_string(fixture("mu_b_principal.csv")).unwrap());

    let bt = fixture("b_tilde_principal.csv");
    let p = fixture("partition_principal.json");
    let o = meshct(&["matrix", "fold", bt.to_str().unwrap(), "--partition", p.to_str().unwrap(), "--format", "csv"]);
    let body: String = stdout(&o).lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(body, std::fs::read_to_string(&b).unwrap());

    let o = meshct(&["matrix", "mutate", bt.to_str().unwrap(), "--at", "{1,2}@1", "--partition", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("folds_to_folded_mutation: true"));

    let o = meshct(&["matrix", "check", b.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["admissible"], true);
}

#[test]
fn matrix_check_fails_on_a_non_skew_symmetrizable_matrix() {
    let path = std::env::temp_dir().join(format!("meshct-check-{}.csv", std::process::id()));
    std::fs::write(&path, ",a,b\na,0,1\nb,0,0\n").unwrap();
    let o = meshct(&["matrix", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("skew-symmetrizer: none"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_suites_pass_on_small_types() {
    for suite in ["rigidity", "homprofile", "involution"] {
        let o = meshct(&["verify", "b2,g2", "--suite", suite, "--runs", "4", "--max-len", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn hammock_and_export() {
    let o = meshct(&["hammock", "b3", "(0,2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("meshct-export-{}", std::process::id()));
    let o = meshct(&["export", "g2", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for f in ["folded_quiver.dot", "start_module.json", "end_quiver.dot", "b_principal.csv", "metadata.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}
