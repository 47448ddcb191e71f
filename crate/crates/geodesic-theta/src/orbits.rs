//! Enumeration of the orbits of {b in O : nrd(b) = n, q_F(b) totally
//! positive} under +-1 x <g1> x <g2>.
//!
//! Through iota_L the unit action multiplies the image by u1^m u2^k, which on
//! the four archimedean absolute values is a translation by a rank-2 lattice
//! of logarithms. Writing the free log coordinates in that lattice basis
//! gives unit coordinates (t1, t2); a canonical representative has
//! t1, t2 in [0,1) and sign-normalized quaternion coordinates.
//!
//! The positivity constraint pins the products of place values over the two
//! conjugate pairs to (0, n/|sigma(alpha)|), and the t-window bounds the
//! split between the pair members, so each |place value| is bounded. The
//! pulled-back region in order coordinates is finite and is scanned by a
//! Fincke-Pohst style recursion with outward-rounded float bounds; all
//! filters on surviving points are exact.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::biquad::{rel_norm_to_f1, rel_norm_to_f2, BiquadElem, RealPlace};
use crate::error::{Error, Result};
use crate::qform::FFormContext;
use crate::quad::{quad_log_abs, quad_sign};
use crate::quat::Quaternion;
use crate::ratio::Rational;

/// Archimedean data of the unit action: logs of the fundamental units at
/// their positive places and the embedding matrix of the order basis into
/// the four real places of L.
#[derive(Debug, Clone)]
pub struct UnitLogData {
    /// log of u1 at the place sending sqrt(D1) to +sqrt(D1)
    pub l1: f64,
    /// log of u2 at its positive place
    pub l2: f64,
    /// per-place log vectors of u1 and u2 over the place order
    /// (+,+), (+,-), (-,+), (-,-)
    pub log_u1: [f64; 4],
    pub log_u2: [f64; 4],
    /// row p = real place, column j = order basis vector: the embedding
    /// matrix of iota_L(basis_j)
    pub embed: [[f64; 4]; 4],
}

impl UnitLogData {
    pub fn from_context(ctx: &FFormContext) -> Self {
        let l1 = quad_log_abs(&ctx.u1, 1);
        let l2 = quad_log_abs(&ctx.u2, 1);
        let log_u1 = [l1, l1, -l1, -l1];
        let log_u2 = [l2, -l2, l2, -l2];
        // iota_L of each order basis vector, evaluated at the four places
        let mut embed = [[0.0; 4]; 4];
        let places = RealPlace::all();
        for j in 0..4 {
            let bj = ctx.order.basis_element(j);
            let x = ctx.iota_l(&bj);
            for (p, place) in places.iter().enumerate() {
                embed[p][j] = x.eval_f64(*place);
            }
        }
        UnitLogData { l1, l2, log_u1, log_u2, embed }
    }
}

/// Canonical representative of an orbit, with its exact dedup key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitRep {
    pub key: [Rational; 4],
    pub b: Quaternion,
}

/// Exact test for t1 >= m, where t1 is the first unit coordinate of
/// x = iota_L(b). Equivalent to |s+(y)| >= |s-(y)| * u1^{4m} for
/// y = Nm_{L/F1}(x), compared through squares to stay sign-free.
fn t1_ge_exact(ctx: &FFormContext, x: &BiquadElem, m: i64) -> bool {
    let y = rel_norm_to_f1(x);
    let lhs = y.mul(&y);
    let rhs = y.conj().mul(&y.conj()).mul(&ctx.u1.pow(8 * m));
    quad_sign(&lhs.sub(&rhs), 1) >= 0
}

fn t2_ge_exact(ctx: &FFormContext, x: &BiquadElem, k: i64) -> bool {
    let y = rel_norm_to_f2(x);
    let lhs = y.mul(&y);
    let rhs = y.conj().mul(&y.conj()).mul(&ctx.u2.pow(8 * k));
    quad_sign(&lhs.sub(&rhs), 1) >= 0
}

/// Exact floor of a unit coordinate, starting from a float estimate and
/// adjusting with the exact boundary comparisons.
fn exact_floor(
    ctx: &FFormContext,
    x: &BiquadElem,
    estimate: f64,
    ge: impl Fn(&FFormContext, &BiquadElem, i64) -> bool,
) -> i64 {
    let mut m = estimate.floor() as i64;
    // walk down while t < m, up while t >= m+1; generically zero iterations
    while !ge(ctx, x, m) {
        m -= 1;
    }
    while ge(ctx, x, m + 1) {
        m += 1;
    }
    m
}

/// Unit log coordinates (t1, t2) of iota_L(b), as float estimates.
fn t_estimates(logs: &UnitLogData, x: &BiquadElem) -> (f64, f64) {
    let places = RealPlace::all();
    let l: Vec<f64> = places.iter().map(|p| x.eval_f64(*p).abs().ln()).collect();
    let v1 = (l[0] - l[3]) / 2.0;
    let v2 = (l[1] - l[2]) / 2.0;
    let t1 = (v1 + v2) / (2.0 * logs.l1);
    let t2 = (v1 - v2) / (2.0 * logs.l2);
    (t1, t2)
}

/// Reduce b to the orbit representative with t1, t2 in [0,1) and the first
/// nonzero quaternion coordinate positive. Idempotent and constant on
/// +-1 x <g1> x <g2> orbits.
pub fn canonicalize(ctx: &FFormContext, logs: &UnitLogData, b: &Quaternion) -> Result<OrbitRep> {
    if b.is_zero() || !ctx.qf_totally_positive(b) {
        return Err(Error::NotTotallyPositive);
    }
    let x = ctx.iota_l(b);
    let (t1_est, t2_est) = t_estimates(logs, &x);
    if !t1_est.is_finite() || !t2_est.is_finite() {
        return Err(Error::PrecisionExhaustion(64));
    }
    let m = exact_floor(ctx, &x, t1_est, t1_ge_exact);
    let k = exact_floor(ctx, &x, t2_est, t2_ge_exact);
    let mut reduced = ctx.alg.mul(
        &ctx.alg.mul(&ctx.alg.pow(&ctx.g1, -m), b),
        &ctx.alg.pow(&ctx.g2, -k),
    );
    // sign normalization on (1, i, j, k) coordinates
    let coords = reduced.coords();
    let first = coords.iter().find(|c| !c.is_zero());
    if let Some(c) = first {
        if c.is_negative() {
            reduced = reduced.neg();
        }
    }
    let key = reduced.coords();
    Ok(OrbitRep { key, b: reduced })
}

/// Per-place absolute value bounds for canonical representatives with
/// nrd = n, inflated by the configured slack and a rounding margin.
fn place_bounds(ctx: &FFormContext, logs: &UnitLogData, n: u32, scale: f64, slack: f64) -> [f64; 4] {
    let a_plus = ctx.alpha.eval_f64(1).abs();
    let a_minus = ctx.alpha.eval_f64(-1).abs();
    // products over conjugate pairs: |x_1 x_4| <= n/|a+|, |x_2 x_3| <= n/|a-|
    let p1 = (n as f64 / a_plus).sqrt();
    let p2 = (n as f64 / a_minus).sqrt();
    let (l1, l2) = (logs.l1, logs.l2);
    // t1, t2 in [-slack, 1+slack] bound the free log coordinates
    let v1_hi = (1.0 + slack) * (l1 + l2);
    let v1_lo = -slack * (l1 + l2);
    let v2_hi = (1.0 + slack) * l1 + slack * l2;
    let v2_lo = -slack * l1 - (1.0 + slack) * l2;
    let margin = 1.0 + 1e-9;
    [
        p1 * v1_hi.exp() * scale * margin,
        p2 * v2_hi.exp() * scale * margin,
        p2 * (-v2_lo).exp() * scale * margin,
        p1 * (-v1_lo).exp() * scale * margin,
    ]
}

/// Integer Gram matrix data for the fast nrd pre-filter:
/// nrd(sum e_i v_i) = e^T G e / (2 den) with G integral.
struct GramFilter {
    g: [[i64; 4]; 4],
    den: i64,
}

impl GramFilter {
    fn new(ctx: &FFormContext) -> Self {
        let mut gr = [[Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
                      [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
                      [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
                      [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()]];
        let elems: Vec<Quaternion> = (0..4).map(|i| ctx.order.basis_element(i)).collect();
        let mut den = num_bigint::BigInt::one();
        for i in 0..4 {
            for j in 0..4 {
                gr[i][j] = ctx.pair_q(&elems[i], &elems[j]);
                den = num_integer::lcm(den.clone(), gr[i][j].denom().clone());
            }
        }
        let den_i = den.to_i64().expect("Gram denominator fits in i64");
        let mut g = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = &gr[i][j] * Rational::from_integer(den.clone());
                g[i][j] = v.to_integer().to_i64().expect("Gram entry fits in i64");
            }
        }
        GramFilter { g, den: den_i }
    }

    /// e^T G e as i128; nrd(b_e) = n iff this equals 2 n den.
    fn quad_form(&self, e: &[i64; 4]) -> i128 {
        let mut s: i128 = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += self.g[i][j] as i128 * e[i] as i128 * e[j] as i128;
            }
        }
        s
    }
}

/// Cholesky factorization A = R^T R for a positive definite 4x4 matrix.
fn cholesky(a: [[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut r = [[0.0f64; 4]; 4];
    for i in 0..4 {
        let mut diag = a[i][i];
        for k in 0..i {
            diag -= r[k][i] * r[k][i];
        }
        if diag <= 0.0 {
            return None;
        }
        r[i][i] = diag.sqrt();
        for j in (i + 1)..4 {
            let mut v = a[i][j];
            for k in 0..i {
                v -= r[k][i] * r[k][j];
            }
            r[i][j] = v / r[i][i];
        }
    }
    Some(r)
}

/// Enumerate integer points of {e : sum_p (U e)_p^2 / B_p^2 <= radius} with a
/// half-space symmetry cut (the constraint set is symmetric under e -> -e),
/// invoking the visitor on each point.
fn enumerate_ellipsoid(
    u: &[[f64; 4]; 4],
    bounds: &[f64; 4],
    radius: f64,
    mut visit: impl FnMut(&[i64; 4]),
) {
    // A = U^T D U with D = diag(1/B_p^2)
    let mut a = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s = 0.0;
            for p in 0..4 {
                s += u[p][i] * u[p][j] / (bounds[p] * bounds[p]);
            }
            a[i][j] = s;
        }
    }
    let r = match cholesky(a) {
        Some(r) => r,
        None => return,
    };
    // recurse from coordinate 3 down to 0
    let mut e = [0i64; 4];
    fn recurse(
        r: &[[f64; 4]; 4],
        level: isize,
        budget: f64,
        e: &mut [i64; 4],
        visit: &mut impl FnMut(&[i64; 4]),
        symmetric_zero: bool,
    ) {
        if level < 0 {
            if e.iter().any(|&v| v != 0) {
                visit(e);
            }
            return;
        }
        let i = level as usize;
        // linear part from already-fixed coordinates
        let mut lin = 0.0;
        for j in (i + 1)..4 {
            lin += r[i][j] * e[j] as f64;
        }
        let rad = budget.max(0.0).sqrt() / r[i][i];
        let center = -lin / r[i][i];
        let margin = 1e-9 * (1.0 + rad.abs() + center.abs());
        let lo_f = center - rad - margin;
        let hi_f = center + rad + margin;
        if !(lo_f.is_finite() && hi_f.is_finite()) {
            return;
        }
        let lo = if symmetric_zero { 0 } else { lo_f.floor() as i64 };
        let hi = hi_f.ceil() as i64;
        for v in lo..=hi {
            e[i] = v;
            let term = r[i][i] * v as f64 + lin;
            let rem = budget - term * term;
            if rem < -1e-9 {
                continue;
            }
            recurse(r, level - 1, rem.max(0.0), e, visit, symmetric_zero && v == 0);
        }
        e[i] = 0;
    }
    recurse(&r, 3, radius, &mut e, &mut visit, true);
}

/// The enumeration engine shared by `enumerate_orbits` and its oracle
/// variant.
fn enumerate_with(ctx: &FFormContext, n: u32, box_scale: f64, slack: f64) -> Vec<OrbitRep> {
    if n == 0 {
        return Vec::new();
    }
    let logs = UnitLogData::from_context(ctx);
    let bounds = place_bounds(ctx, &logs, n, box_scale, slack);
    let gram = GramFilter::new(ctx);
    let target: i128 = 2 * n as i128 * gram.den as i128;
    let n_rat = Rational::from_integer(num_bigint::BigInt::from(n));

    let mut found: BTreeMap<[Rational; 4], OrbitRep> = BTreeMap::new();
    enumerate_ellipsoid(&logs.embed, &bounds, 4.0 * (1.0 + 1e-9), |e| {
        if gram.quad_form(e) != target {
            return;
        }
        let b = ctx.order.element_from_integer_coords(e);
        // exact confirmation of the norm and positivity
        if ctx.alg.nrd(&b) != n_rat {
            return;
        }
        if !ctx.qf_totally_positive(&b) {
            return;
        }
        let rep = canonicalize(ctx, &logs, &b).expect("positivity already checked");
        found.entry(rep.key.clone()).or_insert(rep);
    });
    found.into_values().collect()
}

/// All orbits of {b in O : nrd(b) = n, q_F(b) totally positive} under
/// +-1 x <g1> x <g2>, each exactly once, deterministically ordered.
pub fn enumerate_orbits(ctx: &FFormContext, n: u32) -> Vec<OrbitRep> {
    enumerate_with(ctx, n, 1.0, ctx.box_slack)
}

/// The same scan without the final quotient: how many raw lattice points of
/// the (scaled) search region canonicalize onto each orbit. Every orbit
/// appears with multiplicity at least 1, and widening the box only grows the
/// multiplicities, never the key set.
pub fn orbit_multiplicities(
    ctx: &FFormContext,
    n: u32,
    box_scale: f64,
) -> BTreeMap<[Rational; 4], usize> {
    let mut out = BTreeMap::new();
    if n == 0 {
        return out;
    }
    let logs = UnitLogData::from_context(ctx);
    let bounds = place_bounds(ctx, &logs, n, box_scale, ctx.box_slack);
    let gram = GramFilter::new(ctx);
    let target: i128 = 2 * n as i128 * gram.den as i128;
    let n_rat = Rational::from_integer(num_bigint::BigInt::from(n));
    enumerate_ellipsoid(&logs.embed, &bounds, 4.0 * (1.0 + 1e-9), |e| {
        if gram.quad_form(e) != target {
            return;
        }
        let b = ctx.order.element_from_integer_coords(e);
        if ctx.alg.nrd(&b) != n_rat || !ctx.qf_totally_positive(&b) {
            return;
        }
        let rep = canonicalize(ctx, &logs, &b).expect("positivity already checked");
        *out.entry(rep.key).or_insert(0) += 1;
    });
    out
}

/// Completeness cross-check variant: all box bounds multiplied by
/// `box_scale` and the t-window slack doubled.
pub fn enumerate_orbits_oracle(ctx: &FFormContext, n: u32, box_scale: f64) -> Vec<OrbitRep> {
    assert!(box_scale >= 1.0);
    enumerate_with(ctx, n, box_scale, 2.0 * ctx.box_slack)
}

/// Trace of q_F(b) as a u32, asserting integrality; used by invariants.
pub fn trace_of_qf(ctx: &FFormContext, b: &Quaternion) -> Option<u32> {
    let tr = ctx.q_f(b).trace();
    if tr.denom().is_one() {
        tr.to_integer().to_u32()
    } else {
        None
    }
}

/// q_F value of an orbit representative split into (trace, sqrt coefficient).
pub fn qf_key(ctx: &FFormContext, b: &Quaternion) -> (Rational, Rational) {
    let q = ctx.q_f(b);
    (q.trace(), q.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::tests::disc14_ctx;

    #[test]
    fn n_zero_and_small_n() {
        let ctx = disc14_ctx();
        assert!(enumerate_orbits(&ctx, 0).is_empty());
        // alpha is totally positive here, so the orbit of 1 appears at n = 1
        let orbits = enumerate_orbits(&ctx, 1);
        assert!(
            orbits.iter().any(|r| {
                let one = Quaternion::one();
                let logs = UnitLogData::from_context(&ctx);
                canonicalize(&ctx, &logs, &one).unwrap().key == r.key
            }),
            "orbit of 1 must appear at n = 1"
        );
        for rep in &orbits {
            assert_eq!(ctx.alg.nrd(&rep.b), Rational::one());
            assert!(ctx.qf_totally_positive(&rep.b));
            assert_eq!(trace_of_qf(&ctx, &rep.b), Some(1));
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_orbit_constant() {
        let ctx = disc14_ctx();
        let logs = UnitLogData::from_context(&ctx);
        for n in [1u32, 2, 3, 4, 5] {
            for rep in enumerate_orbits(&ctx, n) {
                let again = canonicalize(&ctx, &logs, &rep.b).unwrap();
                assert_eq!(again.key, rep.key);
                for m in -2i64..=2 {
                    for k in -2i64..=2 {
                        let moved = ctx.alg.mul(
                            &ctx.alg.mul(&ctx.alg.pow(&ctx.g1, m), &rep.b),
                            &ctx.alg.pow(&ctx.g2, k),
                        );
                        assert_eq!(canonicalize(&ctx, &logs, &moved).unwrap().key, rep.key);
                        assert_eq!(canonicalize(&ctx, &logs, &moved.neg()).unwrap().key, rep.key);
                    }
                }
            }
        }
    }

    #[test]
    fn representatives_are_unrelated_by_small_unit_moves() {
        let ctx = disc14_ctx();
        for n in [1u32, 2, 3, 5, 6] {
            let orbits = enumerate_orbits(&ctx, n);
            for (idx1, r1) in orbits.iter().enumerate() {
                for (idx2, r2) in orbits.iter().enumerate() {
                    if idx1 >= idx2 {
                        continue;
                    }
                    for m in -3i64..=3 {
                        for k in -3i64..=3 {
                            let moved = ctx.alg.mul(
                                &ctx.alg.mul(&ctx.alg.pow(&ctx.g1, m), &r1.b),
                                &ctx.alg.pow(&ctx.g2, k),
                            );
                            assert!(moved != r2.b && moved.neg() != r2.b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn box_scale_does_not_change_the_result() {
        let ctx = disc14_ctx();
        for n in 1u32..=12 {
            let base: Vec<_> = enumerate_orbits(&ctx, n).into_iter().map(|r| r.key).collect();
            let wide: Vec<_> = enumerate_orbits_oracle(&ctx, n, 2.0)
                .into_iter()
                .map(|r| r.key)
                .collect();
            assert_eq!(base, wide, "n = {n}");
        }
    }

    #[test]
    fn multiplicities_collapse_to_one_orbit_set() {
        let ctx = disc14_ctx();
        for n in [1u32, 2, 3, 4] {
            let orbits: Vec<_> = enumerate_orbits(&ctx, n).into_iter().map(|r| r.key).collect();
            let narrow = orbit_multiplicities(&ctx, n, 1.0);
            let wide = orbit_multiplicities(&ctx, n, 2.0);
            // same key set as the quotient, multiplicities at least 1
            let narrow_keys: Vec<_> = narrow.keys().cloned().collect();
            let wide_keys: Vec<_> = wide.keys().cloned().collect();
            assert_eq!(narrow_keys, orbits);
            assert_eq!(wide_keys, orbits);
            for (key, count) in &narrow {
                assert!(*count >= 1);
                // the doubled box covers strictly more unit translates
                assert!(wide[key] > *count, "n = {n}");
            }
        }
    }

    #[test]
    fn both_trace_identities_hold_independently() {
        let ctx = disc14_ctx();
        for n in 1u32..=8 {
            for rep in enumerate_orbits(&ctx, n) {
                assert_eq!(ctx.alg.nrd(&rep.b), Rational::from_integer(n.into()));
                assert_eq!(trace_of_qf(&ctx, &rep.b), Some(n));
            }
        }
    }
}
