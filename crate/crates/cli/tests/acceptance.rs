//! Acceptance run: one PASS/FAIL line per criterion, with pinned limits.
//! Exact criteria have tolerance 0 (integer arithmetic throughout); timing
//! limits are wall-clock.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use meshct_core::algebra_engine::{LoewyDiagram, Module};
use meshct_core::dynkin_core::{positive_root_count, DynkinSpec};
use meshct_core::matrix_mutation::{cartan_identity_suite, LabeledIntMatrix};
use meshct_core::mesh_calculus::{AuslanderAlgebra, HammockCache};
use meshct_core::tilting_lab::{
    cartan_data, end_data, exchange_matrix, ext_simples, homological_profile, mutate, mutate_with_seed, start_module,
    CTModule, MeshAlgebra,
};
use meshct_core::{Field, Fp, Q};

const LOEWY: &str = include_str!("../../core/fixtures/b3/loewy.txt");
const B_TILDE: &str = include_str!("../../core/fixtures/b3/b_tilde_principal.csv");
const B: &str = include_str!("../../core/fixtures/b3/b_principal.csv");
const U: &str = include_str!("../../core/fixtures/b3/u_principal.csv");
const W: &str = include_str!("../../core/fixtures/b3/w_principal.csv");
const MU: &str = include_str!("../../core/fixtures/b3/mu_b_principal.csv");

/// Integer results must match exactly.
const TOLERANCE: i64 = 0;
const SEED: u64 = 20_251_016;

type Outcome = Result<String, String>;
type Pool = Vec<Arc<Module<Q>>>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn meshct(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_meshct")).args(args).output().expect("meshct runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_1() -> Outcome {
    let mesh = MeshAlgebra::<Q>::from_tag("B3").map_err(|e| e.to_string())?;
    let t = start_module(&mesh).map_err(|e| e.to_string())?;
    ensure(t.len() == 15, format!("{} summands", t.len()))?;
    ensure(t.orbits.len() == 9, format!("{} orbits", t.orbits.len()))?;
    let mut checked = 0;
    for line in LOEWY.lines().filter(|l| !l.trim().is_empty()) {
        let (label, want) = line.split_once(':').ok_or("bad fixture line")?;
        let i = t.index_of(label.trim()).ok_or(format!("no summand {label}"))?;
        let got = mesh.loewy(t.summands[i].module.rep());
        ensure(got.same_layers(&LoewyDiagram::parse(want.trim())), format!("T({label}): {got} != {want}"))?;
        checked += 1;
    }
    Ok(format!("15 summands, 9 orbits, {checked} Loewy diagrams"))
}

fn criterion_2() -> Outcome {
    let mesh = MeshAlgebra::<Q>::from_tag("B3").map_err(|e| e.to_string())?;
    let t = start_module(&mesh).map_err(|e| e.to_string())?;
    let ex = exchange_matrix(&cartan_data(&mesh, &t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (u, w) = ex.b_principal.uw_factors("{1,2}@1").map_err(|e| e.to_string())?;
    let mu = ex.b_principal.fz_mutate("{1,2}@1").map_err(|e| e.to_string())?;
    for (name, got, want) in [
        ("B~°", ex.b_tilde_principal.to_csv(), B_TILDE),
        ("B°", ex.b_principal.to_csv(), B),
        ("U°", u.to_csv(), U),
        ("W°", w.to_csv(), W),
        ("mu(B°)", mu.to_csv(), MU),
    ] {
        ensure(got == want, format!("{name} differs from the golden CSV"))?;
    }
    let (code, out) = meshct(&["example", "b3"]);
    ensure(code == 0, format!("`meshct example b3` exited {code}"))?;
    ensure(out.matches(": match").count() >= 5 && !out.contains("MISMATCH"), "example report has mismatches")?;
    Ok("5 CSVs byte-exact; `meshct example b3` exit 0".into())
}

fn criterion_3() -> Outcome {
    let mesh = MeshAlgebra::<Q>::from_tag("B3").map_err(|e| e.to_string())?;
    let t = start_module(&mesh).map_err(|e| e.to_string())?;
    let o = t.find_orbit("{1,2}@1").map_err(|e| e.to_string())?;
    let (star, record) = mutate(&mesh, &t, o).map_err(|e| e.to_string())?;
    let fwd = &record.forward[0];
    let middle: Vec<&str> = fwd.middle.iter().map(|(l, _)| l.as_str()).collect();
    ensure(fwd.start == "1_1" && fwd.middle.iter().all(|(_, m)| *m == 1), format!("forward: {fwd}"))?;
    ensure(middle == ["1_0", "3_1", "0_2"], format!("forward middle {middle:?}"))?;
    let bwd = record.backward.iter().find(|s| s.start.starts_with("1_1")).ok_or("no backward sequence")?;
    ensure(bwd.end == "2_1", format!("backward ends at {}", bwd.end))?;
    let (back, _) = mutate(&mesh, &star, o).map_err(|e| e.to_string())?;
    ensure(back.same_summands(&t, &mesh.algebra), "double mutation differs from T")?;
    let mu = LabeledIntMatrix::from_csv(MU).map_err(|e| e.to_string())?;
    let star_b = cartan_data(&mesh, &star).and_then(|d| d.b_principal()).map_err(|e| e.to_string())?;
    ensure(star_b.entries == mu.entries, "B° of T* differs from mu(B°)")?;
    let (code, out) = meshct(&["mutate", "b3", "--seq", "{1,2}@1,{1,2}@1"]);
    ensure(code == 0 && out.contains("involution: ok"), "CLI double mutation did not report `involution: ok`")?;
    Ok("forward T(1_0)+T(3_1)+T(0_2), backward ends at T(2_1), mu∘mu ≅ id, B°(T*) = mu(B°)".into())
}

fn orbit_count(tag: &str) -> Result<(usize, usize), String> {
    let mesh = MeshAlgebra::<Q>::from_tag(tag).map_err(|e| e.to_string())?;
    let t = start_module(&mesh).map_err(|e| e.to_string())?;
    Ok((t.orbits.len(), positive_root_count(mesh.spec.folded_type).map_err(|e| e.to_string())?))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (tag, want, limit) in [("B2", 4, 120), ("B3", 9, 120), ("C3", 9, 120), ("G2", 6, 120), ("F4", 24, 600)] {
        let clock = Instant::now();
        let (got, roots) = orbit_count(tag)?;
        let took = clock.elapsed();
        ensure(got == want && roots == want, format!("{tag}: {got} orbits, {roots} roots, want {want}"))?;
        ensure(took < secs(limit), format!("{tag} took {took:.1?} (limit {limit} s)"))?;
        parts.push(format!("{tag}→{got} ({:.1} s)", took.as_secs_f64()));
    }
    let (code, out) = meshct(&["start", "g2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let n = json["orbits"].as_array().map_or(0, Vec::len);
    ensure(code == 0 && n == 6, format!("`meshct start g2 --format json` lists {n} orbits"))?;
    Ok(parts.join(", "))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for tag in ["B2", "B3", "C3"] {
        let clock = Instant::now();
        let mesh = MeshAlgebra::<Q>::from_tag(tag).map_err(|e| e.to_string())?;
        let t = start_module(&mesh).map_err(|e| e.to_string())?;
        let e = end_data(&mesh, &t).map_err(|e| e.to_string())?;
        let p = homological_profile(&mesh, &t, &e.algebra).map_err(|e| e.to_string())?;
        ensure(p.global_dimension == Some(3), format!("{tag}: gl.dim {:?}", p.global_dimension))?;
        ensure(p.dominant_dimension == Some(3), format!("{tag}: dom.dim {:?}", p.dominant_dimension))?;
        ensure(clock.elapsed() < secs(300), format!("{tag} exceeded 5 min"))?;
        parts.push(format!("{tag} gl=dom=3"));
    }
    Ok(parts.join(", "))
}

fn free_orbits<F: Field>(t: &CTModule<F>) -> Vec<usize> {
    (0..t.orbits.len()).filter(|&o| !t.orbit_is_projective(o)).collect()
}

/// 6(a) and 6(d): random mutation sequences on B2 and C3.
fn criterion_6ad() -> Result<(String, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut steps, mut admissible) = (0, 0);
    for tag in ["B2", "C3"] {
        let mesh = MeshAlgebra::<Q>::from_tag(tag).map_err(|e| e.to_string())?;
        let start = start_module(&mesh).map_err(|e| e.to_string())?;
        let start_data = cartan_data(&mesh, &start).map_err(|e| e.to_string())?;
        let first = cartan_identity_suite(&start_data, None).map_err(|e| e.to_string())?;
        ensure(first.all_pass(), format!("{tag} start: {first}"))?;
        for run in 0..20 {
            let len = rng.gen_range(1..=5);
            let mut current: Option<CTModule<Q>> = None;
            let mut data = start_data.clone();
            for _ in 0..len {
                let t = current.as_ref().unwrap_or(&start);
                let free = free_orbits(t);
                let o = free[rng.gen_range(0..free.len())];
                let name = t.orbit_label(o).to_string();
                let (star, _) = mutate_with_seed(&mesh, t, o, Some(rng.gen())).map_err(|e| e.to_string())?;
                let ext = star.self_extension_dim(&mesh.algebra);
                ensure(ext == 0, format!("{tag} run {run} at {name}: Ext¹(T,T) = {ext}"))?;
                let star_data = cartan_data(&mesh, &star).map_err(|e| e.to_string())?;
                let report = cartan_identity_suite(&data, Some((&star_data, &name))).map_err(|e| e.to_string())?;
                ensure(report.all_pass(), format!("{tag} run {run} at {name}: {report}"))?;
                steps += 1;
                admissible += usize::from(report.admissible);
                data = star_data;
                current = Some(star);
            }
        }
    }
    Ok((
        format!("Ext¹ = 0 at all {steps} steps of 40 sequences"),
        format!("identities hold at {steps} steps, admissible at {admissible}"),
    ))
}

fn criterion_6b() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tags = ["B2", "B3", "C3", "G2"];
    let meshes: Vec<(MeshAlgebra<Q>, Pool)> = tags
        .iter()
        .map(|tag| {
            let mesh = MeshAlgebra::<Q>::from_tag(tag).map_err(|e| e.to_string())?;
            let t = start_module(&mesh).map_err(|e| e.to_string())?;
            let mut pool: Vec<Arc<Module<Q>>> = t.summands.iter().map(|s| s.module.clone()).collect();
            let twisted: Vec<_> = pool.iter().map(|m| Arc::new(Module::new(mesh.twist(m.rep(), 1)))).collect();
            pool.extend(twisted);
            Ok((mesh, pool))
        })
        .collect::<Result<_, String>>()?;
    for pair in 0..50 {
        let (mesh, pool) = &meshes[rng.gen_range(0..meshes.len())];
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let gy = Module::new(mesh.gamma(y.rep(), 1));
        let (l, r) = (mesh.algebra.ext_dim(1, y, x), mesh.algebra.ext_dim(1, x, &gy));
        ensure((l as i64 - r as i64).abs() <= TOLERANCE, format!("pair {pair}: {l} != {r}"))?;
    }
    Ok("50 random pairs".into())
}

fn criterion_6c() -> Outcome {
    let mesh = MeshAlgebra::<Q>::from_tag("B2").map_err(|e| e.to_string())?;
    let t = start_module(&mesh).map_err(|e| e.to_string())?;
    let e = end_data(&mesh, &t).map_err(|e| e.to_string())?.algebra;
    let gamma = t.gamma_permutation(&mesh).map_err(|e| e.to_string())?;
    let mut gamma_inv = vec![0; gamma.len()];
    for (i, &g) in gamma.iter().enumerate() {
        gamma_inv[g] = i;
    }
    let mut checked = 0;
    for x in (0..t.len()).filter(|&x| !t.summands[x].projective) {
        for z in 0..t.len() {
            for i in 0..=3 {
                let (l, r) = (ext_simples(&e, 3 - i, x, z), ext_simples(&e, i, z, gamma_inv[x]));
                ensure(l == r, format!("i={i}, X={}, Z={}: {l} != {r}", t.summands[x].label, t.summands[z].label))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} Ext dimensions"))
}

/// Independent FZ oracle: the sign-case form of the exchange rule.
fn fz_oracle(a: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut b = a.to_vec();
    for i in 0..n {
        for j in 0..n {
            b[i][j] = if i == k || j == k {
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
    b
}

fn criterion_6e() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..1000 {
        let n = rng.gen_range(1..=7);
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let entries: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { rng.gen_range(-4..=4) }).collect()).collect();
        let a = LabeledIntMatrix::square(labels.clone(), entries.clone()).map_err(|e| e.to_string())?;
        let k = rng.gen_range(0..n);
        let mu = a.fz_mutate(&labels[k]).map_err(|e| e.to_string())?;
        ensure(mu.entries == fz_oracle(&entries, k), format!("case {case}: FZ differs from oracle"))?;
        ensure(mu.fz_mutate(&labels[k]).map_err(|e| e.to_string())? == a, format!("case {case}: not an involution"))?;
        let (u, w) = a.uw_factors(&labels[k]).map_err(|e| e.to_string())?;
        let wau = w.mul(&a).and_then(|wa| wa.mul(&u)).map_err(|e| e.to_string())?;
        ensure(wau.entries == mu.entries, format!("case {case}: W·A·U != mu(A)"))?;
    }
    Ok("1000 matrices: oracle, involution, W·A·U".into())
}

/// Every dimension the tools report for one type and field.
fn fingerprint<F: Field>(tag: &str) -> Result<Vec<String>, String> {
    let mesh = MeshAlgebra::<F>::from_tag(tag).map_err(|e| e.to_string())?;
    let mut t = start_module(&mesh).map_err(|e| e.to_string())?;
    let mut out = vec![t.to_text(&mesh)];
    let e = end_data(&mesh, &t).map_err(|e| e.to_string())?;
    let p = homological_profile(&mesh, &t, &e.algebra).map_err(|e| e.to_string())?;
    out.push(format!("{p:?}"));
    out.push(e.cartan.c_tilde.to_csv());
    for pick in [0usize, 1, 0, 2, 1] {
        let free = free_orbits(&t);
        let (star, record) = mutate(&mesh, &t, free[pick % free.len()]).map_err(|e| e.to_string())?;
        out.push(record.to_string());
        out.push(cartan_data(&mesh, &star).map_err(|e| e.to_string())?.c_tilde.to_csv());
        out.push(star.to_text(&mesh));
        t = star;
    }
    Ok(out)
}

fn criterion_6f() -> Outcome {
    for tag in ["B2", "C3", "G2"] {
        let (q, p) = (fingerprint::<Q>(tag)?, fingerprint::<Fp>(tag)?);
        ensure(q.len() == p.len(), format!("{tag}: report lengths differ"))?;
        for (a, b) in q.iter().zip(&p) {
            let strip = |s: &str| s.replace(Fp::NAME, "").replace(Q::NAME, "");
            ensure(strip(a) == strip(b), format!("{tag}: Q and F_32003 disagree:\n{a}\nvs\n{b}"))?;
        }
    }
    Ok("B2, C3, G2 agree over Q and F_32003".into())
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for tag in ["B2", "B3", "C3", "G2"] {
        let spec = DynkinSpec::from_tag(tag).map_err(|e| e.to_string())?;
        let knit = HammockCache::new(&spec);
        let gamma = AuslanderAlgebra::<Q>::new(&spec).map_err(|e| e.to_string())?;
        for &x in &gamma.vertices {
            for &y in &gamma.vertices {
                let a = knit.hom_dim(y, x).map_err(|e| e.to_string())?;
                let b = gamma.hom_dim(y, x).map_err(|e| e.to_string())?;
                ensure(a == b, format!("{tag}: Hom({y:?}, {x:?}) knitting {a} vs linear algebra {b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} vertex pairs"))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report =
        |id: &str, limit: Duration, f: &dyn Fn() -> Outcome| {
            let clock = Instant::now();
            let outcome = f();
            let took = clock.elapsed();
            let outcome = outcome.and_then(|detail| {
                if took < limit {
                    Ok(detail)
                } else {
                    Err(format!("took {:.1} s", took.as_secs_f64()))
                }
            });
            let (status, detail) = match outcome {
                Ok(d) => ("PASS", d),
                Err(d) => {
                    failures += 1;
                    ("FAIL", d)
                }
            };
            println!("{status} criterion {id}: {detail} [{:.2} s, limit {} s]", took.as_secs_f64(), limit.as_secs());
        };
    report("1", secs(30), &criterion_1);
    report("2", secs(30), &criterion_2);
    report("3", secs(120), &criterion_3);
    report("4", secs(600), &criterion_4);
    report("5", secs(900), &criterion_5);
    // 6(a) and 6(d) share one run, timed under 6(a).
    let ad = std::cell::OnceCell::new();
    report("6a", secs(600), &|| ad.get_or_init(criterion_6ad).clone().map(|(a, _)| a));
    report("6b", secs(300), &criterion_6b);
    report("6c", secs(300), &criterion_6c);
    report("6d", secs(600), &|| ad.get_or_init(criterion_6ad).clone().map(|(_, d)| d));
    report("6e", secs(300), &criterion_6e);
    report("6f", secs(300), &criterion_6f);
    report("7", secs(300), &criterion_7);
    if failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria FAIL");
        ExitCode::FAILURE
    }
}
