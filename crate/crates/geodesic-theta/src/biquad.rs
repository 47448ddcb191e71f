//! The biquadratic algebra L = Q(sqrt(D1), sqrt(D2)) for coprime squarefree
//! D1, D2 > 1, over the basis (1, sqrt(D1), sqrt(D2), sqrt(D1 D2)).
//!
//! L is a field here, so a nonzero element has nonzero image under each of
//! the four real embeddings; sign evaluation by interval refinement therefore
//! terminates. Exact zero is the all-coordinates-zero case.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::quad::{is_squarefree, quad_sign, sqrt_interval, QuadElem};
use crate::ratio::{rat_i64, sign_of, Rational};

/// A real embedding of L: sqrt(D1) -> s1*sqrt(D1), sqrt(D2) -> s2*sqrt(D2).
/// Its restriction to F = Q(sqrt(D1 D2)) sends sqrt(D1 D2) to s1*s2*sqrt(D1 D2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealPlace {
    pub s1: i32,
    pub s2: i32,
}

impl RealPlace {
    pub fn new(s1: i32, s2: i32) -> Self {
        assert!((s1 == 1 || s1 == -1) && (s2 == 1 || s2 == -1));
        RealPlace { s1, s2 }
    }

    /// The four places in a fixed order: (+,+), (+,-), (-,+), (-,-).
    pub fn all() -> [RealPlace; 4] {
        [
            RealPlace::new(1, 1),
            RealPlace::new(1, -1),
            RealPlace::new(-1, 1),
            RealPlace::new(-1, -1),
        ]
    }
}

/// c0 + c1*sqrt(D1) + c2*sqrt(D2) + c3*sqrt(D1 D2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiquadElem {
    pub c: [Rational; 4],
    pub d1: u64,
    pub d2: u64,
}

impl BiquadElem {
    pub fn new(c: [Rational; 4], d1: u64, d2: u64) -> Self {
        assert!(d1 > 1 && is_squarefree(d1));
        assert!(d2 > 1 && is_squarefree(d2));
        assert_eq!(d1.gcd(&d2), 1, "D1 and D2 must be coprime");
        BiquadElem { c, d1, d2 }
    }

    pub fn zero(d1: u64, d2: u64) -> Self {
        BiquadElem::new(
            [
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
            d1,
            d2,
        )
    }

    pub fn one(d1: u64, d2: u64) -> Self {
        let mut x = Self::zero(d1, d2);
        x.c[0] = Rational::one();
        x
    }

    /// Embed t = a + b*sqrt(D1) from the first factor.
    pub fn from_f1(t: &QuadElem, d2: u64) -> Self {
        let mut x = Self::zero(t.d, d2);
        x.c[0] = t.a.clone();
        x.c[1] = t.b.clone();
        x
    }

    /// Embed t = a + b*sqrt(D2) from the second factor.
    pub fn from_f2(t: &QuadElem, d1: u64) -> Self {
        let mut x = Self::zero(d1, t.d);
        x.c[0] = t.a.clone();
        x.c[2] = t.b.clone();
        x
    }

    /// Embed t = a + b*sqrt(D1 D2) from the fixed field F.
    pub fn from_f(t: &QuadElem, d1: u64, d2: u64) -> Self {
        assert_eq!(t.d, d1 * d2);
        let mut x = Self::zero(d1, d2);
        x.c[0] = t.a.clone();
        x.c[3] = t.b.clone();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    fn check_same(&self, other: &Self) {
        assert!(self.d1 == other.d1 && self.d2 == other.d2);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut c = self.c.clone();
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a += b;
        }
        BiquadElem { c, ..*self }
    }

    pub fn neg(&self) -> Self {
        let mut c = self.c.clone();
        for v in c.iter_mut() {
            *v = -v.clone();
        }
        BiquadElem { c, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d1 = rat_i64(self.d1 as i64);
        let d2 = rat_i64(self.d2 as i64);
        let a = &self.c;
        let b = &other.c;
        let e0 = &a[0] * &b[0]
            + &d1 * &a[1] * &b[1]
            + &d2 * &a[2] * &b[2]
            + &d1 * &d2 * &a[3] * &b[3];
        let e1 = &a[0] * &b[1] + &a[1] * &b[0] + &d2 * (&a[2] * &b[3] + &a[3] * &b[2]);
        let e2 = &a[0] * &b[2] + &a[2] * &b[0] + &d1 * (&a[1] * &b[3] + &a[3] * &b[1]);
        let e3 = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        BiquadElem {
            c: [e0, e1, e2, e3],
            ..*self
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut c = self.c.clone();
        for v in c.iter_mut() {
            *v = v.clone() * r;
        }
        BiquadElem { c, ..*self }
    }

    pub fn eval_f64(&self, place: RealPlace) -> f64 {
        let r1 = (self.d1 as f64).sqrt() * place.s1 as f64;
        let r2 = (self.d2 as f64).sqrt() * place.s2 as f64;
        crate::ratio::rational_to_f64(&self.c[0])
            + crate::ratio::rational_to_f64(&self.c[1]) * r1
            + crate::ratio::rational_to_f64(&self.c[2]) * r2
            + crate::ratio::rational_to_f64(&self.c[3]) * r1 * r2
    }
}

/// The involution fixing F = Q(sqrt(D1 D2)): negates the sqrt(D1) and
/// sqrt(D2) coordinates.
pub fn eps_involution(x: &BiquadElem) -> BiquadElem {
    BiquadElem {
        c: [
            x.c[0].clone(),
            -x.c[1].clone(),
            -x.c[2].clone(),
            x.c[3].clone(),
        ],
        ..*x
    }
}

/// Galois involution fixing F1 (negates sqrt(D2)).
pub fn eps_fix_f1(x: &BiquadElem) -> BiquadElem {
    BiquadElem {
        c: [
            x.c[0].clone(),
            x.c[1].clone(),
            -x.c[2].clone(),
            -x.c[3].clone(),
        ],
        ..*x
    }
}

/// Galois involution fixing F2 (negates sqrt(D1)).
pub fn eps_fix_f2(x: &BiquadElem) -> BiquadElem {
    BiquadElem {
        c: [
            x.c[0].clone(),
            -x.c[1].clone(),
            x.c[2].clone(),
            -x.c[3].clone(),
        ],
        ..*x
    }
}

/// Trace to F: x + eps(x) = 2c0 + 2c3*sqrt(D1 D2).
pub fn rel_trace(x: &BiquadElem) -> QuadElem {
    QuadElem::new(
        &x.c[0] + &x.c[0],
        &x.c[3] + &x.c[3],
        x.d1 * x.d2,
    )
}

/// Norm to F: x * eps(x), which lands in Q(sqrt(D1 D2)).
pub fn rel_norm(x: &BiquadElem) -> QuadElem {
    let p = x.mul(&eps_involution(x));
    debug_assert!(p.c[1].is_zero() && p.c[2].is_zero());
    QuadElem::new(p.c[0].clone(), p.c[3].clone(), x.d1 * x.d2)
}

/// Norm to F1: x * (conjugate over F1), an element of Q(sqrt(D1)).
pub fn rel_norm_to_f1(x: &BiquadElem) -> QuadElem {
    let p = x.mul(&eps_fix_f1(x));
    debug_assert!(p.c[2].is_zero() && p.c[3].is_zero());
    QuadElem::new(p.c[0].clone(), p.c[1].clone(), x.d1)
}

/// Norm to F2.
pub fn rel_norm_to_f2(x: &BiquadElem) -> QuadElem {
    let p = x.mul(&eps_fix_f2(x));
    debug_assert!(p.c[1].is_zero() && p.c[3].is_zero());
    QuadElem::new(p.c[0].clone(), p.c[2].clone(), x.d2)
}

/// Exact sign of the image of x under the given real place.
///
/// Subfield patterns reduce to `quad_sign`; the general case runs an interval
/// ladder starting at `start_bits`, doubling the precision until the interval
/// excludes zero. A nonzero element of the field L has nonzero image, so this
/// terminates.
pub fn biquad_sign(x: &BiquadElem, place: RealPlace, start_bits: u32) -> i32 {
    if x.is_zero() {
        return 0;
    }
    let (c0, c1, c2, c3) = (&x.c[0], &x.c[1], &x.c[2], &x.c[3]);
    // Subfield shortcuts, exact with no intervals.
    if c2.is_zero() && c3.is_zero() {
        return quad_sign(&QuadElem::new(c0.clone(), c1.clone(), x.d1), place.s1);
    }
    if c1.is_zero() && c3.is_zero() {
        return quad_sign(&QuadElem::new(c0.clone(), c2.clone(), x.d2), place.s2);
    }
    if c1.is_zero() && c2.is_zero() {
        return quad_sign(
            &QuadElem::new(c0.clone(), c3.clone(), x.d1 * x.d2),
            place.s1 * place.s2,
        );
    }
    let mut bits = start_bits.max(8);
    loop {
        let (r1lo, r1hi) = sqrt_interval(&rat_i64(x.d1 as i64), bits);
        let (r2lo, r2hi) = sqrt_interval(&rat_i64(x.d2 as i64), bits);
        let (r12lo, r12hi) = sqrt_interval(&rat_i64((x.d1 * x.d2) as i64), bits);

        let term = |coef: &Rational, s: i32, lo: &Rational, hi: &Rational| {
            let c = coef * rat_i64(s as i64);
            if sign_of(&c) >= 0 {
                (&c * lo, &c * hi)
            } else {
                (&c * hi, &c * lo)
            }
        };
        let (t1lo, t1hi) = term(c1, place.s1, &r1lo, &r1hi);
        let (t2lo, t2hi) = term(c2, place.s2, &r2lo, &r2hi);
        let (t3lo, t3hi) = term(c3, place.s1 * place.s2, &r12lo, &r12hi);
        let lo = c0 + t1lo + t2lo + t3lo;
        let hi = c0 + t1hi + t2hi + t3hi;
        if sign_of(&lo) > 0 {
            return 1;
        }
        if sign_of(&hi) < 0 {
            return -1;
        }
        assert!(
            bits < (1 << 22),
            "interval ladder failed to separate a nonzero element from zero"
        );
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use proptest::prelude::*;

    fn bq(c: [i64; 4]) -> BiquadElem {
        BiquadElem::new(
            [rat(c[0], 1), rat(c[1], 1), rat(c[2], 1), rat(c[3], 1)],
            2,
            5,
        )
    }

    #[test]
    fn eps_examples() {
        let sqrt_d1 = bq([0, 1, 0, 0]);
        assert_eq!(eps_involution(&sqrt_d1), sqrt_d1.neg());
        let one = bq([1, 0, 0, 0]);
        assert_eq!(eps_involution(&one), one);
    }

    #[test]
    fn rel_trace_and_norm_examples() {
        let one = BiquadElem::one(2, 5);
        assert_eq!(rel_trace(&one), QuadElem::from_int(2, 10));
        // Nm(sqrt(D1)) = -D1
        let sqrt_d1 = bq([0, 1, 0, 0]);
        assert_eq!(rel_norm(&sqrt_d1), QuadElem::from_int(-2, 10));
    }

    #[test]
    fn sign_ladder_on_nested_radicals() {
        // sqrt(2) + sqrt(5) - sqrt(10) + 1 > 0 at (+,+)
        let x = bq([1, 1, 1, -1]);
        assert_eq!(biquad_sign(&x, RealPlace::new(1, 1), 128), 1);
        // 1 - sqrt(2) - sqrt(5) + sqrt(10) = (1-sqrt2)(1-sqrt5) > 0
        let y = bq([1, -1, -1, 1]);
        assert_eq!(biquad_sign(&y, RealPlace::new(1, 1), 128), 1);
        // at (+,-) the same element is (1-sqrt2)(1+sqrt5) < 0
        assert_eq!(biquad_sign(&y, RealPlace::new(1, -1), 128), -1);
        assert_eq!(biquad_sign(&BiquadElem::zero(2, 5), RealPlace::new(1, 1), 128), 0);
    }

    #[test]
    fn sign_needs_refinement_for_tight_elements() {
        // 665857/470832 is a continued-fraction convergent of sqrt(2); the
        // difference is about 1e-12 but the exact sign is determined.
        let x = BiquadElem::new(
            [rat(665857, 470832), rat(-1, 1), Rational::zero(), Rational::zero()],
            2,
            5,
        );
        assert_eq!(biquad_sign(&x, RealPlace::new(1, 1), 8), 1);
        // force the ladder path with a nonzero c3 component
        let y = BiquadElem::new(
            [rat(665857, 470832), rat(-1, 1), rat(1, 1000000000000i64), rat(-1, 10000000000000i64)],
            2,
            5,
        );
        assert_eq!(biquad_sign(&y, RealPlace::new(1, 1), 8), 1);
    }

    proptest! {
        #[test]
        fn eps_is_ring_involution(
            a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9,
            e in -9i64..9, f in -9i64..9, g in -9i64..9, h in -9i64..9,
        ) {
            let x = bq([a, b, c, d]);
            let y = bq([e, f, g, h]);
            prop_assert_eq!(eps_involution(&eps_involution(&x)), x.clone());
            prop_assert_eq!(
                eps_involution(&x.mul(&y)),
                eps_involution(&x).mul(&eps_involution(&y))
            );
            // fixed set is exactly c1 = c2 = 0
            let fixed = eps_involution(&x) == x;
            prop_assert_eq!(fixed, b == 0 && c == 0);
        }

        #[test]
        fn rel_norm_multiplicative_trace_additive(
            a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9,
            e in -9i64..9, f in -9i64..9, g in -9i64..9, h in -9i64..9,
        ) {
            let x = bq([a, b, c, d]);
            let y = bq([e, f, g, h]);
            prop_assert_eq!(rel_norm(&x.mul(&y)), rel_norm(&x).mul(&rel_norm(&y)));
            prop_assert_eq!(rel_trace(&x.add(&y)), rel_trace(&x).add(&rel_trace(&y)));
            // off-F coordinates of x*eps(x) vanish
            let p = x.mul(&eps_involution(&x));
            prop_assert!(p.c[1].is_zero() && p.c[2].is_zero());
        }

        #[test]
        fn sign_at_place_matches_f64_for_clear_cases(
            a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9,
            s1 in prop::sample::select(vec![1i32, -1]),
            s2 in prop::sample::select(vec![1i32, -1]),
        ) {
            let x = bq([a, b, c, d]);
            let v = x.eval_f64(RealPlace::new(s1, s2));
            prop_assume!(v.abs() > 1e-6);
            prop_assert_eq!(biquad_sign(&x, RealPlace::new(s1, s2), 32), v.signum() as i32);
        }
    }
}
