//! Exact arithmetic in real quadratic fields Q(sqrt(D)).
//!
//! Elements are stored over the basis (1, sqrt(D)) with D squarefree > 1 and
//! rational coordinates, so half-integers and arbitrary denominators are free.
//! Signs at the two real places are computed exactly: a + s*b*sqrt(D) has the
//! sign of the dominant term, decided by comparing a^2 against b^2*D.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ratio::{rat_i64, Rational};

/// Squarefree decomposition n = m * f^2 with m squarefree.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut m = n;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            f *= p;
        }
        p += 1;
    }
    (m, f)
}

pub fn is_squarefree(n: u64) -> bool {
    squarefree_decompose(n).1 == 1
}

/// An element a + b*sqrt(d) of Q(sqrt(d)), d squarefree > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub d: u64,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d > 1 && is_squarefree(d), "d must be squarefree > 1, got {d}");
        QuadElem { a, b, d }
    }

    /// Accepts a non-squarefree radicand and normalizes: a + b*sqrt(m f^2)
    /// becomes a + (bf)*sqrt(m).
    pub fn new_normalizing(a: Rational, b: Rational, d: u64) -> Self {
        let (m, f) = squarefree_decompose(d);
        QuadElem::new(a, b * rat_i64(f as i64), m)
    }

    pub fn from_rational(a: Rational, d: u64) -> Self {
        QuadElem::new(a, Rational::zero(), d)
    }

    pub fn from_int(n: i64, d: u64) -> Self {
        Self::from_rational(rat_i64(n), d)
    }

    pub fn sqrt_gen(d: u64) -> Self {
        QuadElem::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed radicands {} vs {}", self.d, other.d);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        QuadElem::new(&self.a + &other.a, &self.b + &other.b, self.d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        QuadElem::new(&self.a - &other.a, &self.b - &other.b, self.d)
    }

    pub fn neg(&self) -> Self {
        QuadElem::new(-self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d = rat_i64(self.d as i64);
        QuadElem::new(
            &self.a * &other.a + &d * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            self.d,
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadElem::new(&self.a * r, &self.b * r, self.d)
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conj(&self) -> Self {
        QuadElem::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Trace to Q: 2a.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Norm to Q: a^2 - d b^2.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat_i64(self.d as i64) * &self.b * &self.b
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt(d))");
        self.conj().scale(&n.recip())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return QuadElem::new(Rational::one(), Rational::zero(), self.d);
        }
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut acc = QuadElem::new(Rational::one(), Rational::zero(), self.d);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// f64 value of the embedding sending sqrt(d) to s*sqrt(d), s = +-1.
    pub fn eval_f64(&self, s: i32) -> f64 {
        crate::ratio::rational_to_f64(&self.a)
            + s as f64 * crate::ratio::rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

/// Exact sign of a + s*b*sqrt(d) at the real place sending sqrt(d) to
/// s*sqrt(d). Returns 0 iff a = b = 0.
pub fn quad_sign(x: &QuadElem, s: i32) -> i32 {
    assert!(s == 1 || s == -1);
    let sa = crate::ratio::sign_of(&x.a);
    let sb = crate::ratio::sign_of(&x.b) * s;
    if sb == 0 {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // Opposite signs: the term with larger square magnitude wins. Equality of
    // a^2 and d b^2 cannot occur for nonzero parts since d is not a square.
    let a2 = &x.a * &x.a;
    let b2d = &x.b * &x.b * rat_i64(x.d as i64);
    match a2.cmp(&b2d) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Positive at both real places.
pub fn totally_positive(x: &QuadElem) -> bool {
    quad_sign(x, 1) == 1 && quad_sign(x, -1) == 1
}

/// Floor of sqrt(n) for a nonnegative BigInt.
pub fn bigint_sqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_rational_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = bigint_sqrt_floor(r.numer());
    let sd = bigint_sqrt_floor(r.denom());
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Rational interval bounds on sqrt(r) for r >= 0, with width about 2^-bits.
pub fn sqrt_interval(r: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!r.is_negative());
    if r.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits for the precision.
    let pq = r.numer() * r.denom();
    let scale = BigInt::one() << bits;
    let scaled = &pq * (&scale * &scale);
    let s = bigint_sqrt_floor(&scaled);
    let denom = r.denom() * &scale;
    let lo = Rational::new(s.clone(), denom.clone());
    let hi = Rational::new(s + BigInt::one(), denom);
    (lo, hi)
}

/// Interval evaluation of a + s*b*sqrt(d).
pub fn quad_interval(x: &QuadElem, s: i32, bits: u32) -> (Rational, Rational) {
    let (rlo, rhi) = sqrt_interval(&rat_i64(x.d as i64), bits);
    let coeff = x.b.clone() * rat_i64(s as i64);
    let (tlo, thi) = if coeff.is_negative() {
        (&coeff * &rhi, &coeff * &rlo)
    } else {
        (&coeff * &rlo, &coeff * &rhi)
    };
    (&x.a + tlo, &x.a + thi)
}

pub fn quad_to_f64_checked(x: &QuadElem, s: i32) -> f64 {
    let v = x.eval_f64(s);
    if v.is_finite() {
        v
    } else {
        // fall back to interval midpoint at low precision
        let (lo, hi) = quad_interval(x, s, 64);
        (crate::ratio::rational_to_f64(&lo) + crate::ratio::rational_to_f64(&hi)) / 2.0
    }
}

/// Natural log of |x| at the place s, for nonzero x.
pub fn quad_log_abs(x: &QuadElem, s: i32) -> f64 {
    let v = quad_to_f64_checked(x, s);
    if v != 0.0 && v.is_finite() {
        return v.abs().ln();
    }
    // Tiny values can round to zero in f64; use log from numerator/denominator
    // magnitudes via the norm route: |x_s| = |Nm(x)| / |x_{-s}|.
    let n = x.norm();
    let other = quad_to_f64_checked(x, -s).abs();
    (n.numer().to_f64().unwrap_or(f64::MAX).abs().ln() - n.denom().to_f64().unwrap_or(1.0).ln())
        - other.ln()
}
