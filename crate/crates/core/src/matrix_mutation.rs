//! Integer matrices with labelled rows and columns: Fomin–Zelevinsky
//! mutation and its `W·A·U` factorization, folding by a group action on the
//! labels, admissibility, skew-symmetrizers, and the Cartan/Ringel identity
//! suite.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{MeshError, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledIntMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

/// A partition of labels into ordered orbits; the action cycles each
/// orbit (`orbit[k] ↦ orbit[k + 1]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartitionSpec {
    pub orbits: Vec<Orbit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub name: String,
    pub members: Vec<String>,
}

impl OrbitPartitionSpec {
    pub fn new(orbits: Vec<Orbit>) -> Self {
        OrbitPartitionSpec { orbits }
    }

    /// Every label its own orbit.
    pub fn trivial(labels: &[String]) -> Self {
        OrbitPartitionSpec {
            orbits: labels.iter().map(|l| Orbit { name: l.clone(), members: vec![l.clone()] }).collect(),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.orbits.iter().map(|o| o.name.clone()).collect()
    }

    /// The action `γ̂` as a permutation of `labels`.
    pub fn permutation(&self, labels: &[String]) -> Result<Vec<usize>> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut perm: Vec<Option<usize>> = vec![None; labels.len()];
        for o in &self.orbits {
            for (k, m) in o.members.iter().enumerate() {
                let next = &o.members[(k + 1) % o.members.len()];
                let (&i, &j) = index
                    .get(m.as_str())
                    .zip(index.get(next.as_str()))
                    .ok_or_else(|| MeshError::LabelMismatch(format!("orbit member {m} not among the labels")))?;
                if perm[i].is_some() {
                    return Err(MeshError::LabelMismatch(format!("label {m} lies in two orbits")));
                }
                perm[i] = Some(j);
            }
        }
        perm.into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| MeshError::LabelMismatch(format!("label {} in no orbit", labels[i]))))
            .collect()
    }

    /// Restriction to the orbits all of whose members are in `labels`.
    pub fn restrict(&self, labels: &[String]) -> OrbitPartitionSpec {
        OrbitPartitionSpec {
            orbits: self.orbits.iter().filter(|o| o.members.iter().all(|m| labels.contains(m))).cloned().collect(),
        }
    }
}

impl LabeledIntMatrix {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != row_labels.len() || entries.iter().any(|r| r.len() != col_labels.len()) {
            return Err(MeshError::LabelMismatch("entries do not match the label lists".into()));
        }
        Ok(LabeledIntMatrix { row_labels, col_labels, entries })
    }

    /// Square matrix with the same labels on rows and columns.
    pub fn square(labels: Vec<String>, entries: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(labels.clone(), labels, entries)
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let n = labels.len();
        let entries = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        LabeledIntMatrix { row_labels: labels.clone(), col_labels: labels, entries }
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    fn is_square(&self) -> bool {
        self.row_labels == self.col_labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.row_labels.iter().position(|l| l == label).ok_or_else(|| MeshError::LabelNotFound(label.to_string()))
    }

    /// Mutation at `k` needs a square matrix with `a_kk = 0`; other diagonal
    /// entries do not enter the formulas (and mutation of a matrix that is
    /// not sign-skew-symmetric can make them nonzero).
    fn require_zero_pivot(&self, k: usize) -> Result<()> {
        if !self.is_square() {
            return Err(MeshError::LabelMismatch("matrix is not square".into()));
        }
        if self.entries[k][k] != 0 {
            return Err(MeshError::NonzeroDiagonal(self.row_labels[k].clone()));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        LabeledIntMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries: (0..self.n_cols()).map(|j| (0..self.n_rows()).map(|i| self.entries[i][j]).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.col_labels != other.row_labels {
            return Err(MeshError::LabelMismatch("inner labels differ in product".into()));
        }
        let entries = (0..self.n_rows())
            .map(|i| {
                (0..other.n_cols())
                    .map(|j| (0..self.n_cols()).map(|k| self.entries[i][k] * other.entries[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(LabeledIntMatrix { row_labels: self.row_labels.clone(), col_labels: other.col_labels.clone(), entries })
    }

    /// Submatrix on the given row and column labels (in the given order).
    pub fn submatrix(&self, rows: &[String], cols: &[String]) -> Result<Self> {
        let ri: Vec<usize> = rows.iter().map(|l| self.label_index(l)).collect::<Result<_>>()?;
        let ci: Vec<usize> = cols
            .iter()
            .map(|l| self.col_labels.iter().position(|c| c == l).ok_or_else(|| MeshError::LabelNotFound(l.clone())))
            .collect::<Result<_>>()?;
        Ok(LabeledIntMatrix {
            row_labels: rows.to_vec(),
            col_labels: cols.to_vec(),
            entries: ri.iter().map(|&i| ci.iter().map(|&j| self.entries[i][j]).collect()).collect(),
        })
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_rows() || !self.is_square() {
            return Err(MeshError::LabelMismatch("relabelling needs a square matrix of the same size".into()));
        }
        Ok(LabeledIntMatrix { row_labels: labels.clone(), col_labels: labels, entries: self.entries.clone() })
    }

    /// `true` iff `ã_{γM, γN} = ã_{M, N}` for all labels.
    pub fn is_gamma_action(&self, p: &OrbitPartitionSpec) -> Result<bool> {
        if !self.is_square() {
            return Err(MeshError::LabelMismatch("matrix is not square".into()));
        }
        let g = p.permutation(&self.row_labels)?;
        let n = self.n_rows();
        Ok((0..n).all(|i| (0..n).all(|j| self.entries[g[i]][g[j]] == self.entries[i][j])))
    }

    /// Quotient matrix: `a_{MN} = Σ_{M̃ ∈ M} ã_{M̃ Ñ}` for the
    /// representative (first member) `Ñ` of `N`.
    pub fn fold(&self, p: &OrbitPartitionSpec) -> Result<Self> {
        if !self.is_gamma_action(p)? {
            return Err(MeshError::NotGammaAction("entries are not invariant under the action".into()));
        }
        let idx = |l: &String| self.label_index(l);
        let entries = p
            .orbits
            .iter()
            .map(|m| {
                p.orbits
                    .iter()
                    .map(|n| {
                        let rep = idx(&n.members[0])?;
                        m.members.iter().map(|l| Ok(self.entries[idx(l)?][rep])).sum::<Result<i64>>()
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledIntMatrix { row_labels: p.names(), col_labels: p.names(), entries })
    }

    /// Fomin–Zelevinsky mutation at `k`.
    pub fn fz_mutate(&self, k: &str) -> Result<Self> {
        let k = self.label_index(k)?;
        self.require_zero_pivot(k)?;
        Ok(self.fz_mutate_index(k))
    }

    fn fz_mutate_index(&self, k: usize) -> Self {
        let n = self.n_rows();
        let a = &self.entries;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == k || j == k {
                            -a[i][j]
                        } else {
                            let s = a[i][k].abs() * a[k][j] + a[i][k] * a[k][j].abs();
                            debug_assert!(s.is_even());
                            a[i][j] + s / 2
                        }
                    })
                    .collect()
            })
            .collect();
        LabeledIntMatrix { row_labels: self.row_labels.clone(), col_labels: self.col_labels.clone(), entries }
    }

    /// Mutation at every member of the orbit `name` of `p`, in orbit order
    /// (the unfolded counterpart of mutating the folded matrix at `name`).
    pub fn orbit_mutate(&self, p: &OrbitPartitionSpec, name: &str) -> Result<Self> {
        let orbit =
            p.orbits.iter().find(|o| o.name == name).ok_or_else(|| MeshError::LabelNotFound(name.to_string()))?;
        orbit.members.iter().try_fold(self.clone(), |acc, m| acc.fz_mutate(m))
    }

    /// `U = I − 2E_kk + Σ_{a_kj ≤ 0} |a_kj| E_kj`,
    /// `W = I − 2E_kk + Σ_{a_ik ≥ 0} |a_ik| E_ik`.
    pub fn uw_factors(&self, k: &str) -> Result<(Self, Self)> {
        let k = self.label_index(k)?;
        self.require_zero_pivot(k)?;
        Ok(self.uw_factors_index(k))
    }

    fn uw_factors_index(&self, k: usize) -> (Self, Self) {
        let n = self.n_rows();
        let mut u = Self::identity(self.row_labels.clone());
        let mut w = Self::identity(self.row_labels.clone());
        for j in 0..n {
            if j == k {
                continue;
            }
            if self.entries[k][j] <= 0 {
                u.entries[k][j] = self.entries[k][j].abs();
            }
            if self.entries[j][k] >= 0 {
                w.entries[j][k] = self.entries[j][k].abs();
            }
        }
        u.entries[k][k] = -1;
        w.entries[k][k] = -1;
        (u, w)
    }

    /// Weak sign constancy of every row across each column orbit.
    pub fn is_admissible(&self, p: &OrbitPartitionSpec) -> Result<bool> {
        for o in &p.orbits {
            let cols: Vec<usize> = o
                .members
                .iter()
                .map(|l| self.col_labels.iter().position(|c| c == l).ok_or_else(|| MeshError::LabelNotFound(l.clone())))
                .collect::<Result<_>>()?;
            for row in &self.entries {
                let pos = cols.iter().any(|&c| row[c] > 0);
                let neg = cols.iter().any(|&c| row[c] < 0);
                if pos && neg {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A positive integer diagonal `D` (smallest per component) with `D·B`
    /// skew-symmetric, if one exists.
    pub fn skew_symmetrizer(&self) -> Option<Vec<i64>> {
        if !self.is_square() {
            return None;
        }
        let n = self.n_rows();
        let b = &self.entries;
        // d as exact rationals, propagated along nonzero entries.
        let mut d: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Q::one());
            let mut stack = vec![start];
            let mut component = vec![start];
            while let Some(i) = stack.pop() {
                let di = d[i].clone().unwrap();
                for j in 0..n {
                    if b[i][j] == 0 && b[j][i] == 0 {
                        continue;
                    }
                    if b[i][j] == 0 || b[j][i] == 0 || (b[i][j] > 0) == (b[j][i] > 0) {
                        return None;
                    }
                    // d_i b_ij = −d_j b_ji
                    let dj = di.mul(&Q::from_i64(b[i][j])).div(&Q::from_i64(-b[j][i]));
                    match &d[j] {
                        Some(x) if *x != dj => return None,
                        Some(_) => {}
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                            component.push(j);
                        }
                    }
                }
            }
            // scale the component to coprime positive integers
            let lcm = component.iter().fold(1i64, |acc, &i| {
                let (_, den) = d[i].as_ref().unwrap().parts();
                acc.lcm(&i64::try_from(den).expect("small denominators"))
            });
            let ints: Vec<i64> = component
                .iter()
                .map(|&i| {
                    let x = d[i].as_ref().unwrap().mul(&Q::from_i64(lcm));
                    x.to_i64().expect("integral after scaling")
                })
                .collect();
            let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            for (&i, &x) in component.iter().zip(&ints) {
                d[i] = Some(Q::from_i64(x / g));
            }
        }
        Some(d.into_iter().map(|x| x.unwrap().to_i64().unwrap()).collect())
    }

    /// Inverse over the integers, if it exists.
    pub fn integer_inverse(&self) -> Result<Option<Self>> {
        let n = self.n_rows();
        let m: Matrix<Q> = Matrix::from_i64_rows(&self.entries);
        let inv = m.inverse().ok_or(MeshError::SingularCartan)?;
        let mut entries = vec![vec![0i64; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                match inv.get(i, j).to_i64() {
                    Some(x) => *e = x,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(LabeledIntMatrix { row_labels: self.col_labels.clone(), col_labels: self.row_labels.clone(), entries }))
    }

    /// CSV: a header row (empty corner, then column labels), then one row
    /// per row label.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.col_labels.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (l, row) in self.row_labels.iter().zip(&self.entries) {
            let mut rec = vec![l.clone()];
            rec.extend(row.iter().map(|x| x.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Parses the format written by [`Self::to_csv`]; lines starting with `#`
    /// are comments.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).comment(Some(b'#')).from_reader(text.as_bytes());
        let mut records = r.records();
        let header = records
            .next()
            .ok_or_else(|| MeshError::Parse("empty CSV".into()))?
            .map_err(|e| MeshError::Parse(e.to_string()))?;
        let col_labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut row_labels = Vec::new();
        let mut entries = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| MeshError::Parse(e.to_string()))?;
            let mut it = rec.iter();
            row_labels.push(it.next().unwrap_or_default().to_string());
            entries.push(
                it.map(|x| x.trim().parse::<i64>().map_err(|e| MeshError::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<Vec<i64>>>()?,
            );
        }
        Self::new(row_labels, col_labels, entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: LabeledIntMatrix = serde_json::from_str(text).map_err(|e| MeshError::Parse(e.to_string()))?;
        Self::new(m.row_labels, m.col_labels, m.entries)
    }
}

impl fmt::Display for LabeledIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .chain(self.col_labels.iter().map(String::len))
            .max()
            .unwrap_or(1);
        let lw = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        write!(f, "{:lw$}", "")?;
        for c in &self.col_labels {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
        for (l, row) in self.row_labels.iter().zip(&self.entries) {
            write!(f, "{l:lw$}")?;
            for x in row {
                write!(f, " {x:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of one identity in the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Check {
    fn from_eq(ok: bool, what: &str) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail(what.to_string())
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Check::Fail(_))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass => write!(f, "pass"),
            Check::Fail(why) => write!(f, "FAIL ({why})"),
            Check::Skipped(why) => write!(f, "skipped ({why})"),
        }
    }
}

/// Matrix data of a cluster tilting module: its Cartan matrix
/// `c̃_{MN} = dim Hom(N, M)`, unfolded exchange matrix, orbit partition and
/// the labels of its projective summands.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub c_tilde: LabeledIntMatrix,
    pub b_tilde: LabeledIntMatrix,
    pub partition: OrbitPartitionSpec,
    pub projective: Vec<String>,
}

impl CartanData {
    fn non_projective_orbits(&self) -> Vec<String> {
        self.partition
            .orbits
            .iter()
            .filter(|o| !o.members.iter().any(|m| self.projective.contains(m)))
            .map(|o| o.name.clone())
            .collect()
    }

    fn non_projective_labels(&self) -> Vec<String> {
        self.b_tilde.row_labels.iter().filter(|l| !self.projective.contains(l)).cloned().collect()
    }

    /// `B°` folded from the principal part of `B̃`.
    pub fn b_principal(&self) -> Result<LabeledIntMatrix> {
        let np = self.non_projective_labels();
        self.b_tilde.submatrix(&np, &np)?.fold(&self.partition.restrict(&np))
    }

    pub fn b_folded(&self) -> Result<LabeledIntMatrix> {
        self.b_tilde.fold(&self.partition)
    }

    pub fn g_folded(&self) -> Result<LabeledIntMatrix> {
        self.c_tilde.transpose().fold(&self.partition)
    }

    pub fn is_admissible(&self) -> Result<bool> {
        self.b_tilde.is_admissible(&self.partition)
    }
}

/// Results of the identity suite, in a fixed order.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub admissible: bool,
    pub checks: Vec<(String, Check)>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        !self.checks.iter().any(|(_, c)| c.is_failure())
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "admissible: {}", self.admissible)?;
        for (name, c) in &self.checks {
            writeln!(f, "{name}: {c}")?;
        }
        Ok(())
    }
}

/// Checks `R̃ = C̃^{−t}` is integral, `R·G = I`, `B° = R°`, and, for an
/// admissible `T` mutated at orbit `x` into `T*`, `G_{T*} = U G_T W` and
/// `B°_{T*} = μ_x(B°_T)`. The orbits of `T*` must be listed in the same
/// order as those of `T`, with `Y` in the slot of `x`.
pub fn cartan_identity_suite(t: &CartanData, mutated: Option<(&CartanData, &str)>) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    let admissible = t.is_admissible()?;
    let r_tilde = t.c_tilde.transpose().integer_inverse()?;
    checks.push(("R~ = C~^-t integral".to_string(), Check::from_eq(r_tilde.is_some(), "inverse is not integral")));
    let g = t.g_folded()?;
    let (rg, principal) = match &r_tilde {
        Some(r_tilde) => {
            let r = r_tilde.fold(&t.partition)?;
            let rg = r.mul(&g)?;
            let np = t.non_projective_orbits();
            let r_principal = r.submatrix(&np, &np)?;
            let b_principal = t.b_principal()?;
            (
                Check::from_eq(rg == LabeledIntMatrix::identity(g.row_labels.clone()), "R G differs from I"),
                Check::from_eq(r_principal.entries == b_principal.entries, "principal parts differ"),
            )
        }
        None => (Check::Skipped("R~ not integral".into()), Check::Skipped("R~ not integral".into())),
    };
    checks.push(("R G = I".to_string(), rg));
    checks.push(("B° = R°".to_string(), principal));
    if let Some((star, x)) = mutated {
        if admissible {
            let b = t.b_folded()?;
            let (u, w) = b.uw_factors(x)?;
            let expected = u.mul(&g)?.mul(&w)?;
            let g_star = star.g_folded()?;
            checks.push((
                "G_T* = U G_T W".to_string(),
                Check::from_eq(g_star.entries == expected.entries, "mutated Cartan differs"),
            ));
            let mu = t.b_principal()?.fz_mutate(x)?;
            let b_star = star.b_principal()?;
            checks.push((
                "B°_T* = mu(B°_T)".to_string(),
                Check::from_eq(b_star.entries == mu.entries, "mutated exchange matrix differs"),
            ));
        } else {
            checks.push(("G_T* = U G_T W".to_string(), Check::Skipped("T not admissible".into())));
            checks.push(("B°_T* = mu(B°_T)".to_string(), Check::Skipped("T not admissible".into())));
        }
    }
    Ok(IdentityReport { admissible, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn mutation_is_an_involution_on_a_small_case() {
        let a = LabeledIntMatrix::square(labels(3), vec![vec![0, 1, -2], vec![-1, 0, 3], vec![2, -3, 0]]).unwrap();
        let m = a.fz_mutate("v1").unwrap();
        assert_eq!(m.entries, vec![vec![0, -1, 1], vec![1, 0, -3], vec![-1, 3, 0]]);
        assert_eq!(m.fz_mutate("v1").unwrap(), a);
        let (u, w) = a.uw_factors("v1").unwrap();
        assert_eq!(w.mul(&a).unwrap().mul(&u).unwrap(), m);
    }

    #[test]
    fn orbit_mutation_folds_to_folded_mutation() {
        // v1, v2 form an orbit with no arrows between them.
        let a = LabeledIntMatrix::square(labels(3), vec![vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]]).unwrap();
        let p = OrbitPartitionSpec::new(vec![
            Orbit { name: "a".into(), members: vec!["v0".into()] },
            Orbit { name: "b".into(), members: vec!["v1".into(), "v2".into()] },
        ]);
        let unfolded = a.orbit_mutate(&p, "b").unwrap();
        assert_eq!(unfolded.fold(&p).unwrap(), a.fold(&p).unwrap().fz_mutate("b").unwrap());
    }

    #[test]
    fn nonzero_diagonal_is_rejected() {
        let a = LabeledIntMatrix::square(labels(2), vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert!(matches!(a.fz_mutate("v0"), Err(MeshError::NonzeroDiagonal(_))));
    }

    #[test]
    fn skew_symmetrizers() {
        let b = LabeledIntMatrix::square(labels(2), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(b.skew_symmetrizer(), None);
        let c = LabeledIntMatrix::square(labels(2), vec![vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(c.skew_symmetrizer(), Some(vec![1, 2]));
    }

    #[test]
    fn csv_round_trip_quotes_commas() {
        let a = LabeledIntMatrix::square(vec!["{1,2}@1".into(), "x".into()], vec![vec![0, -1], vec![1, 0]]).unwrap();
        let text = a.to_csv();
        assert_eq!(text, ",\"{1,2}@1\",x\n\"{1,2}@1\",0,-1\nx,1,0\n");
        assert_eq!(LabeledIntMatrix::from_csv(&text).unwrap(), a);
    }

    #[test]
    fn admissibility_detects_mixed_signs() {
        let a = LabeledIntMatrix::square(labels(3), vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]]).unwrap();
        let p = OrbitPartitionSpec::new(vec![
            Orbit { name: "a".into(), members: vec!["v0".into()] },
            Orbit { name: "b".into(), members: vec!["v1".into(), "v2".into()] },
        ]);
        assert!(!a.is_admissible(&p).unwrap());
    }
}
