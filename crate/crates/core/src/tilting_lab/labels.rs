use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MeshError;

/// Label `x_i` of a summand of a cluster tilting module: the base vertex
/// `x`, the level `i`, and how often the summand has been replaced by
/// mutation (`x_i^g` for `g > 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SummandLabel {
    pub level: usize,
    pub vertex: usize,
    pub generation: usize,
}

impl SummandLabel {
    pub fn new(vertex: usize, level: usize) -> Self {
        SummandLabel { level, vertex, generation: 0 }
    }

    pub fn next_generation(self) -> Self {
        SummandLabel { generation: self.generation + 1, ..self }
    }

    /// The label without the generation suffix.
    pub fn base_string(&self) -> String {
        format!("{}_{}", self.vertex, self.level)
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.vertex, self.level)?;
        if self.generation > 0 {
            write!(f, "^{}", self.generation)?;
        }
        Ok(())
    }
}

fn parse_usize(s: &str, whole: &str) -> Result<usize, MeshError> {
    s.trim().parse().map_err(|_| MeshError::Parse(format!("bad label `{whole}`")))
}

fn split_generation(s: &str) -> Result<(&str, usize), MeshError> {
    match s.split_once('^') {
        Some((head, g)) => Ok((head, parse_usize(g, s)?)),
        None => Ok((s, 0)),
    }
}

impl FromStr for SummandLabel {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self, MeshError> {
        let (head, generation) = split_generation(s.trim())?;
        let (v, l) = head.split_once('_').ok_or_else(|| MeshError::Parse(format!("bad label `{s}`")))?;
        Ok(SummandLabel { level: parse_usize(l, s)?, vertex: parse_usize(v, s)?, generation })
    }
}

/// Label of a γ-orbit of summands sharing a level: `{1,2}@1`, `{0}@2`,
/// with a `^g` suffix once the orbit has been mutated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub vertices: Vec<usize>,
    pub level: usize,
    pub generation: usize,
}

impl OrbitLabel {
    /// The label of an orbit given by its members.
    pub fn of(members: impl IntoIterator<Item = SummandLabel>) -> Self {
        let members: Vec<SummandLabel> = members.into_iter().collect();
        let first = members.first().copied().expect("orbits are non-empty");
        let mut vertices: Vec<usize> = members.iter().map(|m| m.vertex).collect();
        vertices.sort_unstable();
        vertices.dedup();
        OrbitLabel { vertices, level: first.level, generation: first.generation }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}@{}", vs.join(","), self.level)?;
        if self.generation > 0 {
            write!(f, "^{}", self.generation)?;
        }
        Ok(())
    }
}

impl FromStr for OrbitLabel {
    type Err = MeshError;

    /// Accepts `{1,2}@1` and `{1,2}_1`, optionally followed by `^g`.
    fn from_str(s: &str) -> Result<Self, MeshError> {
        let bad = || MeshError::Parse(format!("bad orbit label `{s}`"));
        let (head, generation) = split_generation(s.trim())?;
        let rest = head.strip_prefix('{').ok_or_else(bad)?;
        let (inner, level) = rest.split_once('}').ok_or_else(bad)?;
        let level = level.strip_prefix('@').or_else(|| level.strip_prefix('_')).ok_or_else(bad)?;
        let mut vertices = inner.split(',').map(|v| parse_usize(v, s)).collect::<Result<Vec<_>, _>>()?;
        vertices.sort_unstable();
        Ok(OrbitLabel { vertices, level: parse_usize(level, s)?, generation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summand_labels_round_trip() {
        let l: SummandLabel = "3_1".parse().unwrap();
        assert_eq!(l, SummandLabel::new(3, 1));
        assert_eq!(l.next_generation().to_string(), "3_1^1");
        assert_eq!("3_1^2".parse::<SummandLabel>().unwrap().generation, 2);
    }

    #[test]
    fn orbit_labels_accept_both_separators() {
        let a: OrbitLabel = "{1,2}@1".parse().unwrap();
        let b: OrbitLabel = "{2, 1}_1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{1,2}@1");
        let c = OrbitLabel::of([SummandLabel::new(0, 2)]);
        assert_eq!(c.to_string(), "{0}@2");
        assert!("1_1".parse::<OrbitLabel>().is_err());
    }
}
