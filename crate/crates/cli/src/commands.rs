use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use meshct_core::dynkin_core::{positive_root_count, DynkinSpec};
use meshct_core::matrix_mutation::{cartan_identity_suite, IdentityReport};
use meshct_core::mesh_calculus::HammockCache;
use meshct_core::par;
use meshct_core::tilting_lab::{
    cartan_data, end_data, exchange_matrix, ext_simples, homological_profile, mutate_with_seed, start_module, CTModule,
    MeshAlgebra,
};
use meshct_core::translation_quiver::Vertex;
use meshct_core::Field;

use crate::output::{Artifact, Meta, Output};
use crate::{example, matrix, Cli, Command, FieldKind, Format, Report, Suite, UsageError};

pub fn dispatch<F: Field>(cli: &Cli, field: FieldKind) -> Result<Report> {
    let meta = |what: String| Meta::new(cli, field, what);
    match &cli.command {
        Command::Start { ty } => start::<F>(cli, &meta(format!("start {ty}")), ty),
        Command::Mutate { ty, seq } => mutate::<F>(cli, &meta(format!("mutate {ty} --seq {seq}")), ty, seq),
        Command::Matrix { op } => matrix::run(cli, &meta("matrix".into()), op),
        Command::Hammock { ty, vertex } => hammock(cli, &meta(format!("hammock {ty} {vertex}")), ty, vertex),
        Command::Verify { ty, suite, runs, max_len } => verify::<F>(
            cli,
            &meta(format!("verify {ty} --suite {suite:?}").to_lowercase()),
            ty,
            *suite,
            *runs,
            *max_len,
        ),
        Command::Example { name } => example::run::<F>(&meta(format!("example {name}")), name),
        Command::Export { ty } => export::<F>(&meta(format!("export {ty}")), ty),
    }
}

/// Splits a comma-separated list of orbit labels, ignoring commas inside
/// braces: `{1,2}@1,{0}@2` → `["{1,2}@1", "{0}@2"]`.
pub fn split_sequence(seq: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in seq.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current).trim().to_string());
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

fn start<F: Field>(cli: &Cli, meta: &Meta, ty: &str) -> Result<Report> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let t = start_module(&mesh)?;
    let output = match cli.format {
        Format::Text => Output::text(meta, &t.to_text(&mesh)),
        Format::Json => Output::json(meta, t.to_json(&mesh)),
        Format::Dot => {
            let e = end_data(&mesh, &t)?;
            Output::dot(meta, &e.end_quiver.quiver.to_dot("End(T)", &[]))
        }
        Format::Csv => Output::csv(meta, &cartan_data(&mesh, &t)?.b_tilde.to_csv()),
    };
    Ok(Report { output, passed: true })
}

/// One mutation step with every check the CLI logs.
struct Step<F> {
    orbit: String,
    record: meshct_core::tilting_lab::ExchangeRecord,
    identities: IdentityReport,
    rigid: bool,
    involution: Option<bool>,
    module: CTModule<F>,
}

fn step<F: Field>(mesh: &MeshAlgebra<F>, t: &CTModule<F>, o: usize, seed: u64) -> Result<Step<F>> {
    let orbit = t.orbit_label(o).to_string();
    let (star, record) = mutate_with_seed(mesh, t, o, Some(seed))?;
    let before = cartan_data(mesh, t)?;
    let after = cartan_data(mesh, &star)?;
    let identities = cartan_identity_suite(&before, Some((&after, &orbit)))?;
    let rigid = star.self_extension_dim(&mesh.algebra) == 0;
    Ok(Step { orbit, record, identities, rigid, involution: None, module: star })
}

impl<F> Step<F> {
    fn passed(&self) -> bool {
        self.rigid && self.identities.all_pass() && self.involution != Some(false)
    }

    fn to_text(&self, index: usize) -> String {
        let mut out = format!("step {index}: {}", self.record);
        out.push_str(&format!("  rigid: {}\n", if self.rigid { "yes" } else { "NO" }));
        for line in self.identities.to_string().lines() {
            out.push_str(&format!("  {line}\n"));
        }
        match self.involution {
            Some(true) => out.push_str("  involution: ok\n"),
            Some(false) => out.push_str("  involution: FAILED\n"),
            None => {}
        }
        out
    }

    fn to_json(&self) -> Value {
        json!({
            "orbit": self.orbit,
            "exchange": self.record,
            "admissible": self.identities.admissible,
            "identities": self.identities.checks.iter().map(|(n, c)| json!({"check": n, "result": c.to_string()})).collect::<Vec<_>>(),
            "rigid": self.rigid,
            "involution": self.involution,
        })
    }
}

fn mutate<F: Field>(cli: &Cli, meta: &Meta, ty: &str, seq: &str) -> Result<Report> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let labels = split_sequence(seq);
    if labels.is_empty() {
        bail!(UsageError("empty mutation sequence".into()));
    }
    let mut history: Vec<CTModule<F>> = vec![start_module(&mesh)?];
    let mut orbits: Vec<usize> = Vec::new();
    let mut steps: Vec<Step<F>> = Vec::new();
    for (k, label) in labels.iter().enumerate() {
        let current = history.last().expect("history starts with T");
        let o = current.find_orbit(label)?;
        let mut s = step(&mesh, current, o, cli.seed.wrapping_add(k as u64))?;
        if orbits.last() == Some(&o) {
            let before = &history[history.len() - 2];
            s.involution = Some(s.module.same_summands(before, &mesh.algebra));
        }
        orbits.push(o);
        let module = std::mem::replace(&mut s.module, CTModule::new(Vec::new(), Vec::new()));
        history.push(module);
        steps.push(s);
    }
    let last = history.last().expect("non-empty");
    let passed = steps.iter().all(Step::passed);
    let output = match cli.format {
        Format::Json => Output::json(
            meta,
            json!({
                "type": mesh.spec.folded_type.to_string(),
                "steps": steps.iter().map(Step::to_json).collect::<Vec<_>>(),
                "final": last.to_json(&mesh),
                "passed": passed,
            }),
        ),
        Format::Dot => Output::dot(meta, &end_data(&mesh, last)?.end_quiver.quiver.to_dot("End(T)", &[])),
        Format::Csv => Output::csv(meta, &cartan_data(&mesh, last)?.b_tilde.to_csv()),
        Format::Text => {
            let mut text: String = steps.iter().enumerate().map(|(k, s)| s.to_text(k + 1)).collect();
            text.push_str(&last.to_text(&mesh));
            text.push_str(if passed { "all checks passed\n" } else { "SOME CHECKS FAILED\n" });
            Output::text(meta, &text)
        }
    };
    Ok(Report { output, passed })
}

fn parse_vertex(s: &str) -> Result<Vertex> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (i, v) = inner.split_once(',').ok_or_else(|| UsageError(format!("bad vertex `{s}`, expected (i,v)")))?;
    let i: i64 = i.trim().parse().map_err(|_| UsageError(format!("bad level in `{s}`")))?;
    let v: usize = v.trim().parse().map_err(|_| UsageError(format!("bad vertex in `{s}`")))?;
    Ok((i, v))
}

fn hammock(cli: &Cli, meta: &Meta, ty: &str, vertex: &str) -> Result<Report> {
    let spec = DynkinSpec::from_tag(ty)?;
    let x = parse_vertex(vertex)?;
    if x.1 >= spec.n() {
        bail!(UsageError(format!("vertex {} not in {}", x.1, spec.base_name)));
    }
    let table = HammockCache::new(&spec).hammock(x)?;
    let output = match cli.format {
        Format::Json => Output::json(meta, table.to_json()),
        _ => Output::text(meta, &table.to_text(&spec)),
    };
    Ok(Report { output, passed: true })
}

/// Result of one suite on one type.
struct SuiteResult {
    text: String,
    json: Value,
    passed: bool,
}

fn non_projective_orbits<F: Field>(t: &CTModule<F>) -> Vec<usize> {
    (0..t.orbits.len()).filter(|&o| !t.orbit_is_projective(o)).collect()
}

fn random_sequence<F: Field>(t: &CTModule<F>, rng: &mut ChaCha8Rng) -> usize {
    let free = non_projective_orbits(t);
    free[rng.gen_range(0..free.len())]
}

fn rigidity_suite<F: Field>(ty: &str, seed: u64, runs: usize, max_len: usize) -> Result<SuiteResult> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let start = start_module(&mesh)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    let mut log = Vec::new();
    let mut passed = true;
    for run in 0..runs {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut current: Option<CTModule<F>> = None;
        for k in 0..len {
            let t = current.as_ref().unwrap_or(&start);
            let o = random_sequence(t, &mut rng);
            let s = step(&mesh, t, o, seed.wrapping_add((run * max_len + k) as u64))?;
            passed &= s.passed();
            text.push_str(&format!(
                "run {run} step {k}: {} admissible={} rigid={} identities={}\n",
                s.orbit,
                s.identities.admissible,
                s.rigid,
                if s.identities.all_pass() { "pass" } else { "FAIL" }
            ));
            log.push(json!({"run": run, "step": k, "detail": s.to_json()}));
            current = Some(s.module);
        }
    }
    Ok(SuiteResult { text, json: json!(log), passed })
}

fn homprofile_suite<F: Field>(ty: &str) -> Result<SuiteResult> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let t = start_module(&mesh)?;
    let roots = positive_root_count(mesh.spec.folded_type)?;
    let e = end_data(&mesh, &t)?;
    let profile = homological_profile(&mesh, &t, &e.algebra)?;
    let gamma = t.gamma_permutation(&mesh)?;
    let mut gamma_inv = vec![0; gamma.len()];
    for (i, &g) in gamma.iter().enumerate() {
        gamma_inv[g] = i;
    }
    let mut mismatches = 0;
    for x in (0..t.len()).filter(|&x| !t.summands[x].projective) {
        for z in 0..t.len() {
            for i in 0..=3 {
                if ext_simples(&e.algebra, 3 - i, x, z) != ext_simples(&e.algebra, i, z, gamma_inv[x]) {
                    mismatches += 1;
                }
            }
        }
    }
    let show = |d: Option<usize>| d.map_or("inf".to_string(), |d| d.to_string());
    let passed = profile.global_dimension == Some(3)
        && profile.dominant_dimension == Some(3)
        && mismatches == 0
        && t.orbits.len() == roots;
    let text = format!(
        "orbits: {} (positive roots: {roots})\ngl.dim End(T) = {}\ndom.dim End(T) = {}\nExt^(3-i) duality mismatches: {mismatches}\n",
        t.orbits.len(),
        show(profile.global_dimension),
        show(profile.dominant_dimension),
    );
    let json = json!({
        "orbits": t.orbits.len(),
        "positive_roots": roots,
        "global_dimension": profile.global_dimension,
        "dominant_dimension": profile.dominant_dimension,
        "ext_duality_mismatches": mismatches,
    });
    Ok(SuiteResult { text, json, passed })
}

fn involution_suite<F: Field>(ty: &str, seed: u64, runs: usize, max_len: usize) -> Result<SuiteResult> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let start = start_module(&mesh)?;
    let mut text = String::new();
    let mut log = Vec::new();
    let mut passed = true;
    let mut check = |t: &CTModule<F>, o: usize, origin: &str, text: &mut String| -> Result<()> {
        let name = t.orbit_label(o).to_string();
        let (star, _) = mutate_with_seed(&mesh, t, o, Some(seed))?;
        let (back, _) = mutate_with_seed(&mesh, &star, o, Some(seed.wrapping_add(1)))?;
        let modules = back.same_summands(t, &mesh.algebra);
        let b = exchange_matrix(&cartan_data(&mesh, t)?)?.b_principal;
        let matrices = b.fz_mutate(&name)?.fz_mutate(&name)? == b;
        passed &= modules && matrices;
        text.push_str(&format!(
            "{origin} at {name}: modules {}, matrices {}\n",
            if modules { "ok" } else { "FAILED" },
            if matrices { "ok" } else { "FAILED" }
        ));
        log.push(json!({"from": origin, "orbit": name, "modules": modules, "matrices": matrices}));
        Ok(())
    };
    for o in non_projective_orbits(&start) {
        check(&start, o, "start", &mut text)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for run in 0..runs {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut t: Option<CTModule<F>> = None;
        for _ in 0..len {
            let cur = t.as_ref().unwrap_or(&start);
            let o = random_sequence(cur, &mut rng);
            t = Some(mutate_with_seed(&mesh, cur, o, Some(seed))?.0);
        }
        let cur = t.as_ref().unwrap_or(&start);
        let o = random_sequence(cur, &mut rng);
        check(cur, o, &format!("run {run}"), &mut text)?;
    }
    Ok(SuiteResult { text, json: json!(log), passed })
}

fn verify<F: Field>(cli: &Cli, meta: &Meta, ty: &str, suite: Suite, runs: usize, max_len: usize) -> Result<Report> {
    let types: Vec<String> = if ty.eq_ignore_ascii_case("all") {
        ["b2", "b3", "c3", "g2"].iter().map(|s| s.to_string()).collect()
    } else {
        ty.split(',').map(|s| s.trim().to_lowercase()).collect()
    };
    for t in &types {
        DynkinSpec::from_tag(t)?;
    }
    let results = par::map(&types, |t| match suite {
        Suite::Rigidity => rigidity_suite::<F>(t, cli.seed, runs, max_len),
        Suite::Homprofile => homprofile_suite::<F>(t),
        Suite::Involution => involution_suite::<F>(t, cli.seed, runs, max_len),
    });
    let mut text = String::new();
    let mut json_out = serde_json::Map::new();
    let mut passed = true;
    for (t, r) in types.iter().zip(results) {
        let r = r?;
        passed &= r.passed;
        text.push_str(&format!("== {t} ==\n{}{}\n", r.text, if r.passed { "pass" } else { "FAIL" }));
        json_out.insert(t.clone(), json!({"passed": r.passed, "details": r.json}));
    }
    let output = match cli.format {
        Format::Json => Output::json(
            meta,
            json!({"suite": format!("{suite:?}").to_lowercase(), "results": json_out, "passed": passed}),
        ),
        _ => Output::text(meta, &text),
    };
    Ok(Report { output, passed })
}

fn export<F: Field>(meta: &Meta, ty: &str) -> Result<Report> {
    let mesh = MeshAlgebra::<F>::from_tag(ty)?;
    let t = start_module(&mesh)?;
    let e = end_data(&mesh, &t)?;
    let ex = exchange_matrix(&e.cartan)?;
    let identities = cartan_identity_suite(&e.cartan, None)?;
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("serializable") + "\n";
    let artifacts = vec![
        Artifact { name: "folded_quiver.dot".into(), body: mesh.fold.to_dot() },
        Artifact { name: "folded_quiver.json".into(), body: pretty(&mesh.fold.to_json()) },
        Artifact { name: "start_module.json".into(), body: pretty(&t.to_json(&mesh)) },
        Artifact { name: "end_quiver.dot".into(), body: e.end_quiver.quiver.to_dot("End(T)", &[]) },
        Artifact { name: "partition.json".into(), body: pretty(&serde_json::to_value(&e.cartan.partition)?) },
        Artifact { name: "c_tilde.csv".into(), body: e.cartan.c_tilde.to_csv() },
        Artifact { name: "b_tilde.csv".into(), body: e.cartan.b_tilde.to_csv() },
        Artifact { name: "b_tilde_principal.csv".into(), body: ex.b_tilde_principal.to_csv() },
        Artifact { name: "b_principal.csv".into(), body: ex.b_principal.to_csv() },
        Artifact { name: "b_folded.csv".into(), body: ex.b_folded.to_csv() },
        Artifact { name: "identities.txt".into(), body: identities.to_string() },
    ];
    Ok(Report { output: Output::Bundle { meta: meta.clone(), artifacts }, passed: identities.all_pass() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_split_outside_braces() {
        assert_eq!(split_sequence("{1,2}@1,{0}@2"), vec!["{1,2}@1", "{0}@2"]);
        assert_eq!(split_sequence(" {1,2}_1 , 3_1 "), vec!["{1,2}_1", "3_1"]);
        assert!(split_sequence("").is_empty());
    }

    #[test]
    fn vertices_parse_with_or_without_parentheses() {
        assert_eq!(parse_vertex("(0,2)").unwrap(), (0, 2));
        assert_eq!(parse_vertex("-1, 3").unwrap(), (-1, 3));
        assert!(parse_vertex("3").is_err());
    }
}
