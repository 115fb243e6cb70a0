use anyhow::{bail, Result};

use meshct_core::algebra_engine::LoewyDiagram;
use meshct_core::matrix_mutation::cartan_identity_suite;
use meshct_core::tilting_lab::{cartan_data, end_data, exchange_matrix, mutate, start_module, MeshAlgebra};
use meshct_core::Field;

use crate::output::{Artifact, Meta, Output};
use crate::{Report, UsageError};

const B3_B_TILDE: &str = include_str!("../../core/fixtures/b3/b_tilde_principal.csv");
const B3_B: &str = include_str!("../../core/fixtures/b3/b_principal.csv");
const B3_U: &str = include_str!("../../core/fixtures/b3/u_principal.csv");
const B3_W: &str = include_str!("../../core/fixtures/b3/w_principal.csv");
const B3_MU: &str = include_str!("../../core/fixtures/b3/mu_b_principal.csv");
const B3_LOEWY: &str = include_str!("../../core/fixtures/b3/loewy.txt");

/// The orbit the worked example mutates at.
const B3_ORBIT: &str = "{1,2}@1";

pub fn run<F: Field>(meta: &Meta, name: &str) -> Result<Report> {
    match name.to_ascii_lowercase().as_str() {
        "b3" => b3::<F>(meta),
        _ => bail!(UsageError(format!("unknown example `{name}` (available: b3)"))),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}

fn b3<F: Field>(meta: &Meta) -> Result<Report> {
    let mesh = MeshAlgebra::<F>::from_tag("b3")?;
    let t = start_module(&mesh)?;
    let e = end_data(&mesh, &t)?;
    let ex = exchange_matrix(&e.cartan)?;
    let (u, w) = ex.b_principal.uw_factors(B3_ORBIT)?;
    let mu = ex.b_principal.fz_mutate(B3_ORBIT)?;

    let mut report = String::new();
    let mut passed = true;
    let mut line = |report: &mut String, what: &str, ok: bool| {
        passed &= ok;
        report.push_str(&format!("{what}: {}\n", verdict(ok)));
    };

    line(&mut report, "15 summands in 9 orbits", t.len() == 15 && t.orbits.len() == 9);
    let loewy_ok = B3_LOEWY.lines().filter(|l| !l.trim().is_empty()).all(|l| {
        let Some((label, diagram)) = l.split_once(':') else { return false };
        t.index_of(label.trim())
            .is_some_and(|i| mesh.loewy(t.summands[i].module.rep()).same_layers(&LoewyDiagram::parse(diagram.trim())))
    });
    line(&mut report, "Loewy diagrams", loewy_ok);

    let artifacts = vec![
        ("b_tilde_principal.csv", ex.b_tilde_principal.to_csv(), B3_B_TILDE),
        ("b_principal.csv", ex.b_principal.to_csv(), B3_B),
        ("u_principal.csv", u.to_csv(), B3_U),
        ("w_principal.csv", w.to_csv(), B3_W),
        ("mu_b_principal.csv", mu.to_csv(), B3_MU),
    ];
    for (name, got, want) in &artifacts {
        line(&mut report, name, got == want);
    }

    let identities = cartan_identity_suite(&e.cartan, None)?;
    line(&mut report, "identity suite at T", identities.all_pass());

    let o = t.find_orbit(B3_ORBIT)?;
    let (star, record) = mutate(&mesh, &t, o)?;
    report.push_str(&record.to_string());
    let star_data = cartan_data(&mesh, &star)?;
    let mutated = cartan_identity_suite(&e.cartan, Some((&star_data, B3_ORBIT)))?;
    line(&mut report, "identity suite across the mutation", mutated.all_pass());
    line(&mut report, "B° of the mutated module equals μ(B°)", star_data.b_principal()?.entries == mu.entries);
    report.push_str(if passed { "example b3: all artifacts match\n" } else { "example b3: MISMATCH\n" });

    let mut out = vec![Artifact { name: "end_quiver.dot".into(), body: e.end_quiver.quiver.to_dot("End(T)", &[]) }];
    out.extend(artifacts.into_iter().map(|(name, body, _)| Artifact { name: name.into(), body }));
    out.push(Artifact { name: "report.txt".into(), body: report });
    Ok(Report { output: Output::Bundle { meta: meta.clone(), artifacts: out }, passed })
}
