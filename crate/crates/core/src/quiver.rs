//! Finite quivers and linear relations between their paths.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of paths with integer coefficients. Paths are
/// lists of arrow indices in walking order (first arrow first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Self {
        for a in &arrows {
            assert!(a.src < vertex_names.len() && a.tgt < vertex_names.len(), "arrow endpoint out of range");
        }
        Quiver { vertex_names, arrows }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// The same vertices with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_names: self.vertex_names.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { id: format!("{}^op", a.id), src: a.tgt, tgt: a.src }).collect(),
        }
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.tgt == v).map(|(i, _)| i)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.src == v).map(|(i, _)| i)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    /// Source and target of a nonempty path, checking composability.
    pub fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut end = first.tgt;
        for &a in &path[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.src != end {
                return None;
            }
            end = arrow.tgt;
        }
        Some((first.src, end))
    }

    /// Graphviz rendering; `relations` are listed as a comment.
    pub fn to_dot(&self, name: &str, relations: &[Relation]) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for v in &self.vertex_names {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertex_names[a.src], self.vertex_names[a.tgt], a.id
            ));
        }
        for r in relations {
            out.push_str(&format!("  // relation: {}\n", self.relation_to_string(r)));
        }
        out.push_str("}\n");
        out
    }

    pub fn relation_to_string(&self, r: &Relation) -> String {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(c, p)| {
                let path: Vec<&str> = p.iter().map(|&a| self.arrows[a].id.as_str()).collect();
                format!("{c}*[{}]", path.join(","))
            })
            .collect();
        terms.join(" + ")
    }

    /// JSON form `{vertices, arrows: [{id, src, tgt}], relations: [[{path, coeff}]]}`.
    pub fn to_json(&self, relations: &[Relation]) -> Value {
        json!({
            "vertices": self.vertex_names,
            "arrows": self.arrows.iter().map(|a| json!({
                "id": a.id,
                "src": self.vertex_names[a.src],
                "tgt": self.vertex_names[a.tgt],
            })).collect::<Vec<_>>(),
            "relations": relations.iter().map(|r| r.terms.iter().map(|(c, p)| json!({
                "path": p.iter().map(|&a| self.arrows[a].id.clone()).collect::<Vec<_>>(),
                "coeff": c,
            })).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_opposite() {
        let q = Quiver::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![Arrow { id: "a".into(), src: 0, tgt: 1 }, Arrow { id: "b".into(), src: 1, tgt: 2 }],
        );
        assert_eq!(q.path_endpoints(&[0, 1]), Some((0, 2)));
        assert_eq!(q.path_endpoints(&[1, 0]), None);
        let op = q.opposite();
        assert_eq!(op.path_endpoints(&[1, 0]), Some((2, 0)));
    }
}
