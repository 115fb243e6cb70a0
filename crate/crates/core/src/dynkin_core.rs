//! Static Dynkin data: diagrams with their standard orientations, diagram
//! automorphisms used for folding, and positive-root counts.
//!
//! Vertex labels of the base diagrams:
//!
//! * `A_n`: vertices `0..n`; `1 → 0`, `2 → 0` and `v → v − 2` for `v ≥ 3`,
//!   so odd labels form one arm and even labels the other, both ending in
//!   the sink `0`.
//! * `D_{n+1}`: vertices `0..=n`; fork vertices `0, 1` with `0 → 2`,
//!   `1 → 2`, then `3 → 2`, `4 → 3`, ..., `n → n − 1` (sink `2`).
//! * `E_6`: `4 → 2 → 0 ← 1 ← 3` and `0 → 5` (sink `5`); `E_7` adds
//!   `6 → 4`, `E_8` further adds `7 → 6`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{MeshError, Result};

/// Supported (folded) Dynkin types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FoldedType {
    A(usize),
    D(usize),
    E(usize),
    B(usize),
    C(usize),
    F4,
    G2,
}

impl FoldedType {
    /// Checks the rank constraints of the type.
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            FoldedType::A(n) => n >= 1,
            FoldedType::D(n) => n >= 4,
            FoldedType::E(n) => (6..=8).contains(&n),
            FoldedType::B(k) => k >= 2,
            FoldedType::C(n) => n >= 2,
            FoldedType::F4 | FoldedType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(MeshError::UnsupportedType(self.to_string()))
        }
    }

    /// Lowercase command-line tag such as `b3`.
    pub fn tag(self) -> String {
        self.to_string().to_lowercase()
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, FoldedType::A(_) | FoldedType::D(_) | FoldedType::E(_))
    }
}

impl fmt::Display for FoldedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldedType::A(n) => write!(f, "A{n}"),
            FoldedType::D(n) => write!(f, "D{n}"),
            FoldedType::E(n) => write!(f, "E{n}"),
            FoldedType::B(n) => write!(f, "B{n}"),
            FoldedType::C(n) => write!(f, "C{n}"),
            FoldedType::F4 => write!(f, "F4"),
            FoldedType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for FoldedType {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_lowercase();
        let unsupported = || MeshError::UnsupportedType(s.to_string());
        let mut chars = lower.chars();
        let letter = chars.next().ok_or_else(unsupported)?;
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        let t = match (letter, rank) {
            ('a', n) => FoldedType::A(n),
            ('d', n) => FoldedType::D(n),
            ('e', n) => FoldedType::E(n),
            ('b', n) => FoldedType::B(n),
            ('c', n) => FoldedType::C(n),
            ('f', 4) => FoldedType::F4,
            ('g', 2) => FoldedType::G2,
            _ => return Err(unsupported()),
        };
        t.validate().map_err(|_| unsupported())
    }
}

/// A base simply-laced diagram with its standard orientation and a diagram
/// automorphism `sigma` (the identity for simply-laced types).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinSpec {
    pub folded_type: FoldedType,
    /// Name of the base diagram, e.g. `A5` for `B3`.
    pub base_name: String,
    pub base_vertices: Vec<usize>,
    /// Arrows `(source, target)` in canonical order.
    pub base_arrows: Vec<(usize, usize)>,
    /// `sigma[v]` is the image of vertex `v`.
    pub sigma: Vec<usize>,
    /// Number of copies of the base diagram in the Auslander rectangle;
    /// `None` when the positive roots do not split into whole copies
    /// (type `A_n` with `n` even).
    pub coxeter_copies: Option<usize>,
}

fn a_arrows(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (v, v.saturating_sub(2))).collect()
}

fn d_arrows(vertices: usize) -> Vec<(usize, usize)> {
    let mut arrows = vec![(0, 2), (1, 2)];
    if vertices > 3 {
        arrows.push((3, 2));
    }
    arrows.extend((4..vertices).map(|v| (v, v - 1)));
    arrows
}

fn e_arrows(n: usize) -> Vec<(usize, usize)> {
    let mut arrows = vec![(1, 0), (2, 0), (3, 1), (4, 2), (0, 5)];
    if n >= 7 {
        arrows.push((6, 4));
    }
    if n >= 8 {
        arrows.push((7, 6));
    }
    arrows
}

fn transpositions(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect();
    for &(a, b) in pairs {
        s.swap(a, b);
    }
    s
}

/// Number of positive roots of a simply-laced base diagram.
fn base_roots(name: char, n: usize) -> usize {
    match (name, n) {
        ('A', n) => n * (n + 1) / 2,
        ('D', n) => n * (n - 1),
        ('E', 6) => 36,
        ('E', 7) => 63,
        ('E', 8) => 120,
        _ => unreachable!("validated base diagram"),
    }
}

/// Base diagram, orientation and automorphism for a folded type.
pub fn folding_datum(folded_type: FoldedType) -> Result<DynkinSpec> {
    let t = folded_type.validate()?;
    let (letter, n, arrows, sigma) = match t {
        FoldedType::A(n) => ('A', n, a_arrows(n), (0..n).collect()),
        FoldedType::D(n) => ('D', n, d_arrows(n), (0..n).collect()),
        FoldedType::E(n) => ('E', n, e_arrows(n), (0..n).collect()),
        FoldedType::B(k) => {
            let n = 2 * k - 1;
            let pairs: Vec<(usize, usize)> = (0..k - 1).map(|j| (2 * j + 1, 2 * j + 2)).collect();
            ('A', n, a_arrows(n), transpositions(n, &pairs))
        }
        FoldedType::C(n) => ('D', n + 1, d_arrows(n + 1), transpositions(n + 1, &[(0, 1)])),
        FoldedType::F4 => ('E', 6, e_arrows(6), transpositions(6, &[(1, 2), (3, 4)])),
        // 0 -> 1 -> 3 -> 0
        FoldedType::G2 => ('D', 4, d_arrows(4), vec![1, 3, 2, 0]),
    };
    let roots = base_roots(letter, n);
    let copies = roots.is_multiple_of(n).then_some(roots / n);
    Ok(DynkinSpec {
        folded_type: t,
        base_name: format!("{letter}{n}"),
        base_vertices: (0..n).collect(),
        base_arrows: arrows,
        sigma,
        coxeter_copies: copies,
    })
}

/// Number of positive roots of the folded type.
pub fn positive_root_count(folded_type: FoldedType) -> Result<usize> {
    Ok(match folded_type.validate()? {
        FoldedType::A(n) => n * (n + 1) / 2,
        FoldedType::D(n) => n * (n - 1),
        FoldedType::E(6) => 36,
        FoldedType::E(7) => 63,
        FoldedType::E(_) => 120,
        FoldedType::B(k) => k * k,
        FoldedType::C(n) => n * n,
        FoldedType::F4 => 24,
        FoldedType::G2 => 6,
    })
}

impl DynkinSpec {
    pub fn from_tag(tag: &str) -> Result<Self> {
        folding_datum(tag.parse()?)
    }

    /// Number of base vertices.
    pub fn n(&self) -> usize {
        self.base_vertices.len()
    }

    /// Order of `sigma` as a permutation.
    pub fn sigma_order(&self) -> usize {
        let mut k = 1;
        let mut p = self.sigma.clone();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| self.sigma[x]).collect();
            k += 1;
        }
        k
    }

    /// `sigma^k(v)` for any integer `k`.
    pub fn sigma_pow(&self, v: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.sigma_order() as i64);
        (0..k).fold(v, |x, _| self.sigma[x])
    }

    /// Positive roots of the base diagram.
    pub fn base_positive_roots(&self) -> usize {
        let letter = self.base_name.chars().next().unwrap();
        base_roots(letter, self.n())
    }

    /// Index of the base arrow `sigma^k(alpha)`.
    pub fn sigma_arrow(&self, alpha: usize, k: i64) -> usize {
        let (s, t) = self.base_arrows[alpha];
        let image = (self.sigma_pow(s, k), self.sigma_pow(t, k));
        self.base_arrows.iter().position(|&a| a == image).expect("sigma is a diagram automorphism")
    }

    /// The unique sink of the base orientation.
    pub fn sink(&self) -> usize {
        *self
            .base_vertices
            .iter()
            .find(|&&v| self.base_arrows.iter().all(|&(s, _)| s != v))
            .expect("Dynkin quivers have a sink")
    }

    /// Whether `sigma` maps arrows bijectively onto arrows.
    pub fn sigma_is_automorphism(&self) -> bool {
        let mut images: Vec<(usize, usize)> =
            self.base_arrows.iter().map(|&(s, t)| (self.sigma[s], self.sigma[t])).collect();
        let mut arrows = self.base_arrows.clone();
        images.sort_unstable();
        arrows.sort_unstable();
        images == arrows
    }

    /// The `sigma`-orbit of `v`, in the order `v, sigma(v), ...`.
    pub fn sigma_orbit(&self, v: usize) -> Vec<usize> {
        let mut orbit = vec![v];
        let mut x = self.sigma[v];
        while x != v {
            orbit.push(x);
            x = self.sigma[x];
        }
        orbit
    }
}
