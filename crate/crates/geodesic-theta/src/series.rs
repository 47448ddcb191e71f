//! The elliptic coefficient series a_n (both methods), the Hilbert
//! coefficients c(beta) indexed by totally positive beta, and the
//! diagonal-restriction regrouping that ties them together.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::geodesic::oracle_coeff;
use crate::orbits::enumerate_orbits;
use crate::qform::FFormContext;
use crate::ratio::{is_integer, Rational};

/// a_n by the theta route: the sum of varsigma over the norm-n orbits.
/// Zero for n = 0 (the norm form is anisotropic).
pub fn elliptic_coeff(ctx: &FFormContext, n: u32) -> i64 {
    if n == 0 {
        return 0;
    }
    enumerate_orbits(ctx, n)
        .iter()
        .map(|rep| ctx.varsigma(&rep.b).expect("enumerated orbits are totally positive") as i64)
        .sum()
}

/// Coefficient at a rational index: nonzero only at positive integers.
pub fn elliptic_coeff_at_rational(ctx: &FFormContext, n: &Rational) -> i64 {
    if !is_integer(n) {
        return 0;
    }
    match n.to_integer().to_u32() {
        Some(k) if k >= 1 => elliptic_coeff(ctx, k),
        _ => 0,
    }
}

/// Index of a Hilbert coefficient: beta = trace/2 + v*sqrt(D), totally
/// positive. Ordering is by (trace, v), which is the output order.
pub type HilbertKey = (u32, Rational);

/// c(beta) for every totally positive beta with trace at most the bound:
/// group the orbits by the exact value of q_F.
pub fn hilbert_coeffs(ctx: &FFormContext, trace_bound: u32) -> BTreeMap<HilbertKey, i64> {
    let mut out: BTreeMap<HilbertKey, i64> = BTreeMap::new();
    for n in 1..=trace_bound {
        for rep in enumerate_orbits(ctx, n) {
            let q = ctx.q_f(&rep.b);
            debug_assert_eq!(q.trace(), Rational::from_integer(n.into()));
            let s = ctx.varsigma(&rep.b).expect("orbit is totally positive") as i64;
            *out.entry((n, q.b.clone())).or_insert(0) += s;
        }
    }
    out
}

/// One row of the dual-method comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    pub n: u32,
    pub a_theta: i64,
    pub a_oracle: i64,
    /// a_theta == calibration_sign * a_oracle
    pub matches: bool,
    /// gcd(n, N * D_B) == 1: the range where the identity is asserted
    pub coprime_to_level: bool,
}

/// Both coefficient series with the one-time global sign calibration.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub rows: Vec<CoeffRow>,
    pub calibration_sign: i32,
    /// indices with a mismatch after calibration
    pub mismatches: Vec<u32>,
}

impl CoeffTable {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Run both methods for n = 1..n_max, calibrate the global sign at the first
/// index where either method is nonzero, and record matches.
pub fn report(ctx: &FFormContext, n_max: u32, level_disc: u64) -> Result<CoeffTable> {
    let mut theta = Vec::with_capacity(n_max as usize);
    let mut oracle = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        theta.push(elliptic_coeff(ctx, n));
        oracle.push(oracle_coeff(ctx, n)?);
    }
    // empty series calibrate to +1 by convention
    let mut calibration_sign = 1i32;
    for k in 0..theta.len() {
        if theta[k] != 0 || oracle[k] != 0 {
            calibration_sign = if (theta[k] < 0) == (oracle[k] < 0) { 1 } else { -1 };
            break;
        }
    }
    let mut rows = Vec::with_capacity(theta.len());
    let mut mismatches = Vec::new();
    for (k, (&t, &o)) in theta.iter().zip(oracle.iter()).enumerate() {
        let n = k as u32 + 1;
        let matches = t == calibration_sign as i64 * o;
        if !matches {
            mismatches.push(n);
        }
        rows.push(CoeffRow {
            n,
            a_theta: t,
            a_oracle: o,
            matches,
            coprime_to_level: num_integer::gcd(n as u64, level_disc) == 1,
        });
    }
    Ok(CoeffTable {
        rows,
        calibration_sign,
        mismatches,
    })
}
