//! Exact scalar fields.
//!
//! Two backends implement [`Field`]:
//!
//! * [`Q`] — the rationals. Values that fit in machine words stay in a
//!   `(i64, i64)` fast path; anything larger is promoted to a
//!   [`BigRational`]. The representation is canonical (reduced, positive
//!   denominator, demoted whenever it fits), so structural equality is
//!   numerical equality.
//! * [`Fp`] — the prime field with 32003 elements.
//!
//! Besides arithmetic, every field can list the distinct roots of a
//! polynomial that lie in the field; the decomposition code uses this to find
//! eigenvalues of endomorphisms.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic interface shared by the exact backends.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short backend name (`rat` or `fp32003`).
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;
    /// Parses the exact textual form produced by `Display` (`p` or `p/q`).
    fn parse_exact(s: &str) -> Option<Self>;
    /// Distinct roots in the field of the polynomial with coefficients
    /// `coeffs[0] + coeffs[1] t + ...`. The zero polynomial has no roots.
    fn roots(coeffs: &[Self]) -> Vec<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Exact rational number with a machine-word fast path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    /// Reduced fraction `n / d` with `d > 0`; neither field is `i64::MIN`.
    Small(i64, i64),
    /// Reduced fraction that does not fit the small form.
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Q {
    /// Builds `n / d` from wide integers, reducing and choosing the form.
    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        if n == 0 {
            return Q::Small(0, 1);
        }
        let g = gcd_i128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if fits(n) && fits(d) {
            Q::Small(n as i64, d as i64)
        } else {
            Q::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Q {
        // `BigRational` arithmetic keeps values reduced with a positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Q::Small(n, d);
            }
        }
        Q::Big(r)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    /// Numerator and denominator as big integers.
    pub fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Q::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }

    /// Builds `n / d` from big integers.
    pub fn from_parts(n: BigInt, d: BigInt) -> Q {
        Q::from_big(BigRational::new(n, d))
    }

    /// The integer value, if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Q::Small(n, 1) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Field for Q {
    const NAME: &'static str = "rat";

    fn zero() -> Self {
        Q::Small(0, 1)
    }

    fn one() -> Self {
        Q::Small(1, 1)
    }

    fn from_i64(v: i64) -> Self {
        Q::from_i128(v as i128, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    Q::from_i128(*a as i128 + *c as i128, 1)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Q::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(r) => Q::from_big(-r.clone()),
        }
    }

    fn inv(&self) -> Self {
        match self {
            Q::Small(0, _) => panic!("inverse of zero"),
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(Q::from_parts(n, d))
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        rational_roots(coeffs)
    }
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// The prime used by the finite-field backend.
pub const P32003: u32 = 32003;

/// Element of the prime field with [`P32003`] elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(u32);

impl Fp {
    pub fn new(v: i64) -> Fp {
        Fp(v.rem_euclid(P32003 as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P32003 as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    const NAME: &'static str = "fp32003";

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P32003)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P32003 - other.0) % P32003)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P32003 as u64) as u32)
    }

    fn neg(&self) -> Self {
        Fp((P32003 - self.0) % P32003)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P32003 as u64 - 2)
    }

    fn characteristic() -> u64 {
        P32003 as u64
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d = Fp::new(d.trim().parse::<i64>().ok()?);
                if d.is_zero() {
                    return None;
                }
                Some(Fp::new(n.trim().parse::<i64>().ok()?).div(&d))
            }
            None => Some(Fp::new(s.parse::<i64>().ok()?)),
        }
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        let p = crate::poly::trim(coeffs.to_vec());
        if p.len() <= 1 {
            return Vec::new();
        }
        (0..P32003 as i64).map(Fp::new).filter(|x| crate::poly::eval(&p, x).is_zero()).collect()
    }
}

// ---------------------------------------------------------------------------
// Rational root finding
// ---------------------------------------------------------------------------

/// Primes used for the modular root search; all exceed any degree we meet.
const ROOT_PRIMES: [u64; 8] = [32003, 32009, 32027, 32029, 32051, 32057, 32059, 32063];

fn mod_u64(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p)
}

fn is_squarefree_mod(c: &[u64], p: u64) -> bool {
    // gcd(f, f') over F_p must be constant.
    let deriv: Vec<u64> = c.iter().enumerate().skip(1).map(|(i, &a)| a * (i as u64 % p) % p).collect();
    let mut a = trim_mod(c.to_vec());
    let mut b = trim_mod(deriv);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn trim_mod(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead_inv = pow_mod(*b.last().unwrap(), p - 2, p);
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * bc % p) % p;
        }
        r = trim_mod(r);
    }
    r
}

/// Finds `a/b ≡ r (mod m)` with `|a|, b <= sqrt(m/2)`.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

/// Distinct rational roots of a rational polynomial.
///
/// The squarefree part is cleared of denominators; simple roots modulo a
/// small prime are Hensel-lifted until the modulus dominates the
/// rational-root-theorem bound, reconstructed as fractions, and verified
/// exactly.
fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    use crate::poly;
    let f = poly::trim(coeffs.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut s = poly::squarefree_part(&f);
    let mut roots = Vec::new();
    if s[0].is_zero() {
        roots.push(Q::zero());
        s.remove(0);
    }
    if s.len() <= 1 {
        return roots;
    }
    // Clear denominators to a primitive integer polynomial.
    let mut den = BigInt::one();
    for c in &s {
        den = den.lcm(&c.parts().1);
    }
    let mut ints: Vec<BigInt> = s
        .iter()
        .map(|c| {
            let (n, d) = c.parts();
            n * (&den / d)
        })
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for c in ints.iter_mut() {
        *c = &*c / &content;
    }
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let height = if lead > constant { lead } else { constant };
    let target = BigInt::from(2) * &height * &height + BigInt::one();

    for &p in ROOT_PRIMES.iter() {
        let cm: Vec<u64> = ints.iter().map(|c| mod_u64(c, p)).collect();
        if *cm.last().unwrap() == 0 || !is_squarefree_mod(&cm, p) {
            continue;
        }
        let deriv: Vec<u64> = cm.iter().enumerate().skip(1).map(|(i, &a)| a * (i as u64 % p) % p).collect();
        let pb = BigInt::from(p);
        for r0 in 0..p {
            if eval_mod(&cm, r0, p) != 0 {
                continue;
            }
            let u = pow_mod(eval_mod(&deriv, r0, p), p - 2, p);
            let ub = BigInt::from(u);
            let mut r = BigInt::from(r0);
            let mut modulus = pb.clone();
            while modulus < target {
                modulus = &modulus * &pb;
                let val = ints.iter().rev().fold(BigInt::zero(), |acc, c| (acc * &r + c) % &modulus);
                r = (&r - val * &ub).mod_floor(&modulus);
            }
            if let Some((a, b)) = rational_reconstruction(&r, &modulus) {
                let cand = Q::from_parts(a, b);
                if poly::eval(&s, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
        return roots;
    }
    // No usable prime: fall back to no further roots (never observed for the
    // small-height polynomials arising here).
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::from_i64(n).div(&Q::from_i64(d))
    }

    #[test]
    fn small_and_big_agree() {
        let big = Q::from_i64(i64::MAX).mul(&Q::from_i64(3));
        assert!(matches!(big, Q::Big(_)));
        let back = big.div(&Q::from_i64(3));
        assert_eq!(back, Q::Small(i64::MAX, 1));
    }

    #[test]
    fn display_round_trip() {
        for v in [q(3, 4), q(-7, 2), Q::from_i64(5), Q::zero()] {
            assert_eq!(Q::parse_exact(&v.to_string()), Some(v.clone()));
        }
        assert_eq!(q(-6, 4).to_string(), "-3/2");
    }

    #[test]
    fn fp_inverse() {
        for v in 1..50 {
            let x = Fp::new(v);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert_eq!(Fp::new(-1).value(), P32003 - 1);
    }

    #[test]
    fn rational_roots_of_split_polynomial() {
        // (t - 2/3)^2 (t + 5) (t^2 + 1)
        let lin = |c: Q| vec![c.neg(), Q::one()];
        let mut p = vec![Q::one()];
        for f in [lin(q(2, 3)), lin(q(2, 3)), lin(q(-5, 1)), vec![Q::one(), Q::zero(), Q::one()]] {
            p = crate::poly::mul(&p, &f);
        }
        let mut r = Q::roots(&p);
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r, vec![q(-5, 1), q(2, 3)]);
    }

    #[test]
    fn zero_root_found() {
        let p = vec![Q::zero(), Q::zero(), Q::from_i64(-4), Q::one()];
        let mut r = Q::roots(&p);
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r, vec![Q::zero(), Q::from_i64(4)]);
    }

    #[test]
    fn fp_roots() {
        let p = vec![Fp::new(-6), Fp::new(1), Fp::new(1)]; // (t+3)(t-2)
        let r = Fp::roots(&p);
        assert_eq!(r.len(), 2);
        assert!(r.contains(&Fp::new(2)) && r.contains(&Fp::new(-3)));
    }
}
