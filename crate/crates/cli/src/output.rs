use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value};

use crate::{Cli, FieldKind};

/// Run metadata attached to every artifact.
#[derive(Clone, Debug)]
pub struct Meta {
    pub command: String,
    pub seed: u64,
    pub field: &'static str,
}

impl Meta {
    pub fn new(cli: &Cli, field: FieldKind, command: String) -> Self {
        Meta { command, seed: cli.seed, field: field.name() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "meshct",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.seed,
            "field": self.field,
        })
    }

    /// One-line comment for text formats, with the given comment prefix.
    pub fn comment(&self, prefix: &str) -> String {
        format!("{prefix} meshct {} seed={} field={}\n", self.command, self.seed, self.field)
    }
}

/// A named piece of output.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    pub body: String,
}

/// What a command produces: either one artifact (which carries its own
/// metadata) or a bundle of artifacts that share one metadata record.
#[derive(Clone, Debug)]
pub enum Output {
    Single(String),
    Bundle { meta: Meta, artifacts: Vec<Artifact> },
}

impl Output {
    /// A JSON document with the metadata under `meta`.
    pub fn json(meta: &Meta, mut body: Value) -> Output {
        if let Value::Object(map) = &mut body {
            map.insert("meta".into(), meta.to_json());
        }
        Output::Single(serde_json::to_string_pretty(&body).expect("serializable") + "\n")
    }

    pub fn text(meta: &Meta, body: &str) -> Output {
        Output::Single(meta.comment("#") + body)
    }

    pub fn csv(meta: &Meta, body: &str) -> Output {
        Output::Single(meta.comment("#") + body)
    }

    pub fn dot(meta: &Meta, body: &str) -> Output {
        Output::Single(meta.comment("//") + body)
    }

    /// Writes to stdout, or to `out` (a file for single artifacts, a
    /// directory for bundles).
    pub fn emit(&self, out: Option<&Path>) -> io::Result<()> {
        match (self, out) {
            (Output::Single(body), None) => io::stdout().lock().write_all(body.as_bytes()),
            (Output::Single(body), Some(path)) => fs::write(path, body),
            (Output::Bundle { meta, artifacts }, None) => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(meta.comment("#").as_bytes())?;
                for a in artifacts {
                    writeln!(stdout, "## {}", a.name)?;
                    stdout.write_all(a.body.as_bytes())?;
                }
                Ok(())
            }
            (Output::Bundle { meta, artifacts }, Some(dir)) => {
                fs::create_dir_all(dir)?;
                for a in artifacts {
                    fs::write(dir.join(&a.name), &a.body)?;
                }
                let meta = serde_json::to_string_pretty(&meta.to_json()).expect("serializable") + "\n";
                fs::write(dir.join("metadata.json"), meta)
            }
        }
    }
}
