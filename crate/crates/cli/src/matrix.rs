use std::fs;
use std::path::Path;

use anyhow::Result;
use serde_json::json;

use meshct_core::matrix_mutation::{LabeledIntMatrix, OrbitPartitionSpec};
use meshct_core::MeshError;

use crate::output::{Meta, Output};
use crate::{Cli, Format, MatrixOp, Report};

/// Reads a matrix from a `.json` file, or from CSV otherwise.
pub fn read_matrix(path: &Path) -> Result<LabeledIntMatrix> {
    let text = fs::read_to_string(path)?;
    let m = if path.extension().is_some_and(|e| e == "json") {
        LabeledIntMatrix::from_json(&text)?
    } else {
        LabeledIntMatrix::from_csv(&text)?
    };
    Ok(m)
}

pub fn read_partition(path: &Path) -> Result<OrbitPartitionSpec> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| MeshError::Parse(format!("{}: {e}", path.display())).into())
}

fn emit(cli: &Cli, meta: &Meta, m: &LabeledIntMatrix, extra: serde_json::Value) -> Output {
    match cli.format {
        Format::Json => {
            let mut body = json!({ "matrix": m.to_json() });
            if let (Some(obj), serde_json::Value::Object(more)) = (body.as_object_mut(), extra) {
                obj.extend(more);
            }
            Output::json(meta, body)
        }
        Format::Csv => Output::csv(meta, &m.to_csv()),
        _ => {
            let mut text = m.to_string();
            if let serde_json::Value::Object(more) = extra {
                for (k, v) in more {
                    text.push_str(&format!("{k}: {v}\n"));
                }
            }
            Output::text(meta, &text)
        }
    }
}

pub fn run(cli: &Cli, meta: &Meta, op: &MatrixOp) -> Result<Report> {
    match op {
        MatrixOp::Mutate { file, at, partition } => {
            let m = read_matrix(file)?;
            let meta = Meta { command: format!("matrix mutate {} --at {at}", file.display()), ..meta.clone() };
            match partition {
                None => Ok(Report { output: emit(cli, &meta, &m.fz_mutate(at)?, json!({})), passed: true }),
                Some(p) => {
                    // Mutate every member of the orbit and compare the fold of
                    // the result with the mutation of the folded matrix.
                    let p = read_partition(p)?;
                    let mutated = m.orbit_mutate(&p, at)?;
                    let folds = match (mutated.fold(&p), m.fold(&p)) {
                        (Ok(a), Ok(b)) => Some(b.fz_mutate(at).map(|mb| mb == a).unwrap_or(false)),
                        _ => None,
                    };
                    let passed = folds != Some(false);
                    let extra = json!({ "folds_to_folded_mutation": folds });
                    Ok(Report { output: emit(cli, &meta, &mutated, extra), passed })
                }
            }
        }
        MatrixOp::Fold { file, partition } => {
            let m = read_matrix(file)?;
            let p = read_partition(partition)?;
            let meta = Meta { command: format!("matrix fold {}", file.display()), ..meta.clone() };
            Ok(Report { output: emit(cli, &meta, &m.fold(&p)?, json!({})), passed: true })
        }
        MatrixOp::Check { file, partition } => {
            let m = read_matrix(file)?;
            let meta = Meta { command: format!("matrix check {}", file.display()), ..meta.clone() };
            let square = m.row_labels == m.col_labels;
            let zero_diagonal = square && (0..m.n_rows()).all(|i| m.entries[i][i] == 0);
            let symmetrizer = m.skew_symmetrizer();
            let p = match partition {
                Some(p) => read_partition(p)?,
                None => OrbitPartitionSpec::trivial(&m.col_labels),
            };
            let invariant = square && m.is_gamma_action(&p)?;
            let admissible = m.is_admissible(&p)?;
            let passed = zero_diagonal && symmetrizer.is_some() && invariant && admissible;
            let body = json!({
                "square": square,
                "zero_diagonal": zero_diagonal,
                "skew_symmetrizer": symmetrizer,
                "gamma_invariant": invariant,
                "admissible": admissible,
                "passed": passed,
            });
            let output = match cli.format {
                Format::Json => Output::json(&meta, body),
                _ => {
                    let show = |b: bool| if b { "yes" } else { "NO" };
                    let text = format!(
                        "square: {}\nzero diagonal: {}\nskew-symmetrizer: {}\ngamma-invariant: {}\nadmissible: {}\n",
                        show(square),
                        show(zero_diagonal),
                        symmetrizer.as_ref().map_or("none".to_string(), |d| format!("{d:?}")),
                        show(invariant),
                        show(admissible),
                    );
                    Output::text(&meta, &text)
                }
            };
            Ok(Report { output, passed })
        }
    }
}
