//! Dense univariate polynomials over a [`Field`], coefficients low degree first.

use crate::field::Field;
use crate::linalg::Matrix;

/// Drops trailing zero coefficients.
pub fn trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn eval<F: Field>(p: &[F], x: &F) -> F {
    p.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
}

pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul_assign(x, y);
        }
    }
    trim(out)
}

pub fn derivative<F: Field>(p: &[F]) -> Vec<F> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c.mul(&F::from_i64(i as i64))).collect())
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv();
    let mut q = vec![F::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap().mul(&lead_inv);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&factor.mul(c));
        }
        q[shift] = factor;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor (empty for gcd(0, 0)).
pub fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

pub fn monic<F: Field>(p: Vec<F>) -> Vec<F> {
    match p.last() {
        Some(l) if !l.is_one() => {
            let inv = l.inv();
            p.iter().map(|c| c.mul(&inv)).collect()
        }
        _ => p,
    }
}

/// Product of the distinct irreducible factors (characteristic larger than
/// the degree is assumed).
pub fn squarefree_part<F: Field>(p: &[F]) -> Vec<F> {
    let p = trim(p.to_vec());
    let g = gcd(&p, &derivative(&p));
    if g.len() <= 1 {
        return monic(p);
    }
    monic(divrem(&p, &g).0)
}

/// Characteristic polynomial `det(t I - A)` via Hessenberg reduction.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Vec<F> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial of a non-square matrix");
    let mut h: Vec<Vec<F>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    // Similarity transforms to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot_inv = h[m][m - 1].inv();
        for j in m + 1..n {
            let u = h[j][m - 1].mul(&pivot_inv);
            if u.is_zero() {
                continue;
            }
            let (upper, lower) = h.split_at_mut(j);
            for (target, source) in lower[0].iter_mut().zip(&upper[m]) {
                let t = source.mul(&u);
                *target = target.sub(&t);
            }
            for row in h.iter_mut() {
                let t = row[j].mul(&u);
                row[m] = row[m].add(&t);
            }
        }
    }
    // Recurrence on leading principal minors.
    let mut ps: Vec<Vec<F>> = vec![vec![F::one()]];
    for m in 1..=n {
        let mut next = mul(&ps[m - 1], &[h[m - 1][m - 1].neg(), F::one()]);
        let mut prod = F::one();
        for i in 1..m {
            prod = prod.mul(&h[m - i][m - i - 1]);
            let coeff = h[m - i - 1][m - 1].mul(&prod);
            if coeff.is_zero() {
                continue;
            }
            let term: Vec<F> = ps[m - i - 1].iter().map(|c| c.mul(&coeff)).collect();
            let len = next.len().max(term.len());
            next.resize(len, F::zero());
            for (k, t) in term.iter().enumerate() {
                next[k] = next[k].sub(t);
            }
        }
        ps.push(trim(next));
    }
    ps.pop().unwrap()
}
