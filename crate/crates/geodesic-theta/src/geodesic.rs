//! The geometric route: split B over a real quadratic field, send order
//! elements to 2x2 matrices, and count signed interlacings of geodesic axes
//! on the boundary of the upper half-plane.
//!
//! Boundary points are exact: infinity, or x + y*sqrt(dd) with x, y, dd in
//! the splitting field K = Q(sqrt(m)). Designated roots survive Moebius
//! transport because the image of x + y*sqrt(dd) under a K-matrix is again
//! of that shape with the same dd. Comparisons combine an exact equality
//! test (shared-root criterion) with interval refinement, so interlacing is
//! never misclassified.

use std::cmp::Ordering;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::orbits::{enumerate_orbits, OrbitRep};
use crate::qform::FFormContext;
use crate::quad::{
    quad_interval, quad_sign, sqrt_interval, sqrt_rational_exact, squarefree_decompose, QuadElem,
};
use crate::quat::{QuatAlgebra, Quaternion};
use crate::ratio::{rat, Rational};

/// The 2x2 representation over K = Q(sqrt(s)) for a positive structure
/// constant s in {a, b}.
#[derive(Debug, Clone)]
pub struct SplitRep {
    /// squarefree radicand of K
    pub m: u64,
    /// sqrt(s) as an element of K
    sqrt_s: QuadElem,
    /// the structure constant that stays rational in the matrix entries
    other: Rational,
    /// true when s = a (i diagonal), false when s = b (j diagonal)
    use_a: bool,
}

/// 2x2 matrix over K.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2K {
    pub a: QuadElem,
    pub b: QuadElem,
    pub c: QuadElem,
    pub d: QuadElem,
}

impl Mat2K {
    pub fn det(&self) -> QuadElem {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> QuadElem {
        self.a.add(&self.d)
    }

    pub fn mul(&self, o: &Mat2K) -> Mat2K {
        Mat2K {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

impl SplitRep {
    pub fn new(alg: &QuatAlgebra) -> Result<Self> {
        let (s, other, use_a) = if alg.a.is_positive() {
            (alg.a.clone(), alg.b.clone(), true)
        } else if alg.b.is_positive() {
            (alg.b.clone(), alg.a.clone(), false)
        } else {
            return Err(Error::DegenerateConfiguration(
                "definite algebra has no real splitting".into(),
            ));
        };
        // sqrt(p/q) = sqrt(pq)/q = (g/q) sqrt(m) with pq = m g^2
        let pq = (s.numer() * s.denom())
            .to_u64()
            .ok_or_else(|| Error::InvalidConfig("structure constant too large".into()))?;
        let (m, g) = squarefree_decompose(pq);
        if m == 1 {
            return Err(Error::DegenerateConfiguration(
                "structure constant is a square; the algebra splits".into(),
            ));
        }
        let sqrt_s = QuadElem::new(
            Rational::zero(),
            Rational::new(g.into(), s.denom().clone()),
            m,
        );
        Ok(SplitRep {
            m,
            sqrt_s,
            other,
            use_a,
        })
    }

    /// Ring homomorphism into Mat2(K): det = nrd, trace = trd.
    pub fn split(&self, q: &Quaternion) -> Mat2K {
        let m = self.m;
        let r = &self.sqrt_s;
        let lift = |v: &Rational| QuadElem::from_rational(v.clone(), m);
        if self.use_a {
            // i -> diag(sqrt a, -sqrt a), j -> [[0, b], [1, 0]]
            let a = lift(&q.t).add(&r.scale(&q.x));
            let d = lift(&q.t).sub(&r.scale(&q.x));
            let b = lift(&q.y).add(&r.scale(&q.z)).scale(&self.other);
            let c = lift(&q.y).sub(&r.scale(&q.z));
            Mat2K { a, b, c, d }
        } else {
            // j -> diag(sqrt b, -sqrt b), i -> [[0, a], [1, 0]]
            let a = lift(&q.t).add(&r.scale(&q.y));
            let d = lift(&q.t).sub(&r.scale(&q.y));
            let b = lift(&q.x).sub(&r.scale(&q.z)).scale(&self.other);
            let c = lift(&q.x).add(&r.scale(&q.z));
            Mat2K { a, b, c, d }
        }
    }
}

/// sqrt of z in K = Q(sqrt m), normalized positive at the distinguished
/// embedding, if z is a square in K.
fn sqrt_in_field(z: &QuadElem) -> Option<QuadElem> {
    let m = z.d;
    if z.is_zero() {
        return Some(QuadElem::from_int(0, m));
    }
    if quad_sign(z, 1) < 0 {
        return None;
    }
    if z.b.is_zero() {
        // rational square, or m * (rational square)
        if let Some(r) = sqrt_rational_exact(&z.a) {
            return Some(QuadElem::from_rational(r, m));
        }
        let um = &z.a / crate::ratio::rat_i64(m as i64);
        if let Some(r) = sqrt_rational_exact(&um) {
            let cand = QuadElem::new(Rational::zero(), r, m);
            return Some(if quad_sign(&cand, 1) >= 0 { cand } else { cand.neg() });
        }
        return None;
    }
    let nm = z.norm();
    let n = sqrt_rational_exact(&nm)?;
    for e in [&z.a + &n, &z.a - &n] {
        let half = e / crate::ratio::rat_i64(2);
        if let Some(x) = sqrt_rational_exact(&half) {
            if x.is_zero() {
                continue;
            }
            let y = &z.b / (&x + &x);
            let cand = QuadElem::new(x, y, m);
            if cand.mul(&cand) == *z {
                return Some(if quad_sign(&cand, 1) >= 0 { cand } else { cand.neg() });
            }
        }
    }
    None
}

/// A finite boundary point x + y*sqrt(dd) with x, y, dd in K; normalized so
/// that y = 0 implies dd = 0, and dd is never a square of K.
#[derive(Debug, Clone)]
pub struct Tower {
    pub x: QuadElem,
    pub y: QuadElem,
    pub dd: QuadElem,
}

#[derive(Debug, Clone)]
pub enum BoundaryPoint {
    Infinity,
    Finite(Tower),
}

impl BoundaryPoint {
    pub fn rational(x: QuadElem) -> Self {
        let m = x.d;
        BoundaryPoint::Finite(Tower {
            x,
            y: QuadElem::from_int(0, m),
            dd: QuadElem::from_int(0, m),
        })
    }

    /// Build x + y*sqrt(dd), folding into K when dd is a square and
    /// requiring sigma(dd) >= 0.
    pub fn make(x: QuadElem, y: QuadElem, dd: QuadElem) -> Result<Self> {
        if y.is_zero() || dd.is_zero() {
            return Ok(Self::rational(x));
        }
        if quad_sign(&dd, 1) < 0 {
            return Err(Error::NotHyperbolic);
        }
        if let Some(r) = sqrt_in_field(&dd) {
            return Ok(Self::rational(x.add(&y.mul(&r))));
        }
        Ok(BoundaryPoint::Finite(Tower { x, y, dd }))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }
}

/// Exact equality of normalized towers: equal values iff the K-parts match
/// and the radical parts have equal squares and equal signs.
fn tower_eq(t1: &Tower, t2: &Tower) -> bool {
    let p1 = t1.y.is_zero();
    let p2 = t2.y.is_zero();
    match (p1, p2) {
        (true, true) => t1.x == t2.x,
        (true, false) | (false, true) => false,
        (false, false) => {
            t1.x == t2.x
                && t1.y.mul(&t1.y).mul(&t1.dd) == t2.y.mul(&t2.y).mul(&t2.dd)
                && quad_sign(&t1.y, 1) == quad_sign(&t2.y, 1)
        }
    }
}

fn interval_mul(
    a: (&Rational, &Rational),
    b: (&Rational, &Rational),
) -> (Rational, Rational) {
    let products = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let mut lo = products[0].clone();
    let mut hi = products[0].clone();
    for p in &products[1..] {
        if *p < lo {
            lo = p.clone();
        }
        if *p > hi {
            hi = p.clone();
        }
    }
    (lo, hi)
}

/// Rational interval around sigma(x + y sqrt(dd)).
fn tower_interval(t: &Tower, bits: u32) -> (Rational, Rational) {
    let (xlo, xhi) = quad_interval(&t.x, 1, bits);
    if t.y.is_zero() {
        return (xlo, xhi);
    }
    let (ylo, yhi) = quad_interval(&t.y, 1, bits);
    let (dlo, dhi) = quad_interval(&t.dd, 1, bits);
    let dlo = if dlo.is_negative() { Rational::zero() } else { dlo };
    let slo = sqrt_interval(&dlo, bits).0;
    let shi = sqrt_interval(&dhi, bits).1;
    let (plo, phi) = interval_mul((&ylo, &yhi), (&slo, &shi));
    (xlo + plo, xhi + phi)
}

fn tower_cmp(t1: &Tower, t2: &Tower) -> Ordering {
    if tower_eq(t1, t2) {
        return Ordering::Equal;
    }
    let mut bits = 128u32;
    loop {
        let (lo1, hi1) = tower_interval(t1, bits);
        let (lo2, hi2) = tower_interval(t2, bits);
        if hi1 < lo2 {
            return Ordering::Less;
        }
        if hi2 < lo1 {
            return Ordering::Greater;
        }
        assert!(bits < (1 << 22), "interval refinement failed to separate distinct points");
        bits *= 2;
    }
}

/// Equality of boundary points, exact.
pub fn points_equal(p: &BoundaryPoint, q: &BoundaryPoint) -> bool {
    match (p, q) {
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => tower_eq(a, b),
        _ => false,
    }
}

/// A geodesic of the upper half-plane, oriented from the repelling to the
/// attracting fixed point.
#[derive(Debug, Clone)]
pub struct OrientedGeodesic {
    pub rep: BoundaryPoint,
    pub att: BoundaryPoint,
}

/// Fixed points of a hyperbolic matrix over K, oriented repelling to
/// attracting.
pub fn axis_of_matrix(g: &Mat2K) -> Result<OrientedGeodesic> {
    let m = g.a.d;
    let tr = g.trace();
    let det = g.det();
    // hyperbolic over the distinguished embedding: trace^2 > 4 det
    let disc = tr.mul(&tr).sub(&det.scale(&rat(4, 1)));
    if quad_sign(&disc, 1) <= 0 || quad_sign(&det, 1) <= 0 {
        return Err(Error::NotHyperbolic);
    }
    let tr_sign = quad_sign(&tr, 1);
    if g.c.is_zero() {
        // fixed points: infinity and b/(d-a)
        let diff = g.d.sub(&g.a);
        if diff.is_zero() {
            return Err(Error::NotHyperbolic);
        }
        let finite = BoundaryPoint::rational(g.b.mul(&diff.recip()));
        // infinity attracts iff |a| > |d|
        let a2 = g.a.mul(&g.a);
        let d2 = g.d.mul(&g.d);
        if quad_sign(&a2.sub(&d2), 1) > 0 {
            Ok(OrientedGeodesic {
                rep: finite,
                att: BoundaryPoint::Infinity,
            })
        } else {
            Ok(OrientedGeodesic {
                rep: BoundaryPoint::Infinity,
                att: finite,
            })
        }
    } else {
        // roots of c t^2 + (d-a) t - b: monic t^2 + p t + q
        let cinv = g.c.recip();
        let p = g.d.sub(&g.a).mul(&cinv);
        let q = g.b.mul(&cinv).neg();
        let half = rat(1, 2);
        let x0 = p.scale(&half).neg();
        let dd = p.mul(&p).sub(&q.scale(&rat(4, 1)));
        // attracting root: sign of the sqrt term is sgn(trace)*sgn(c)
        let y_att = QuadElem::from_rational(
            if tr_sign * quad_sign(&g.c, 1) > 0 {
                half.clone()
            } else {
                -half.clone()
            },
            m,
        );
        let att = BoundaryPoint::make(x0.clone(), y_att.clone(), dd.clone())?;
        let rep = BoundaryPoint::make(x0, y_att.neg(), dd)?;
        Ok(OrientedGeodesic { rep, att })
    }
}

/// The axis of the unit image of an embedding: fixed points of the Moebius
/// action of split(embed(u_j)).
pub fn axis(ctx: &FFormContext, split: &SplitRep, first: bool) -> Result<OrientedGeodesic> {
    let g = if first {
        split.split(&ctx.g1)
    } else {
        split.split(&ctx.g2)
    };
    axis_of_matrix(&g)
}

/// Endpoint-wise fractional-linear action, orientation carried along.
/// Requires det(g) positive at the distinguished embedding.
pub fn mobius_image(g: &Mat2K, geo: &OrientedGeodesic) -> Result<OrientedGeodesic> {
    assert!(quad_sign(&g.det(), 1) > 0, "need det > 0");
    Ok(OrientedGeodesic {
        rep: mobius_point(g, &geo.rep)?,
        att: mobius_point(g, &geo.att)?,
    })
}

fn mobius_point(g: &Mat2K, p: &BoundaryPoint) -> Result<BoundaryPoint> {
    match p {
        BoundaryPoint::Infinity => {
            if g.c.is_zero() {
                Ok(BoundaryPoint::Infinity)
            } else {
                Ok(BoundaryPoint::rational(g.a.mul(&g.c.recip())))
            }
        }
        BoundaryPoint::Finite(t) => {
            if t.y.is_zero() {
                let den = g.c.mul(&t.x).add(&g.d);
                if den.is_zero() {
                    return Ok(BoundaryPoint::Infinity);
                }
                let num = g.a.mul(&t.x).add(&g.b);
                return Ok(BoundaryPoint::rational(num.mul(&den.recip())));
            }
            // denominator (c x + d) + c y sqrt(dd); its K-norm
            let cxd = g.c.mul(&t.x).add(&g.d);
            let cy = g.c.mul(&t.y);
            let den_nm = cxd.mul(&cxd).sub(&cy.mul(&cy).mul(&t.dd));
            if den_nm.is_zero() {
                return Ok(BoundaryPoint::Infinity);
            }
            let axb = g.a.mul(&t.x).add(&g.b);
            let inv = den_nm.recip();
            let xx = axb
                .mul(&cxd)
                .sub(&g.a.mul(&cy).mul(&t.y).mul(&t.dd))
                .mul(&inv);
            let yy = t.y.mul(&g.det()).mul(&inv);
            BoundaryPoint::make(xx, yy, t.dd.clone())
        }
    }
}

/// Sign comparison of two finite boundary points, exact.
fn cmp_sign(p: &BoundaryPoint, q: &BoundaryPoint) -> i32 {
    match (p, q) {
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => match tower_cmp(a, b) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        },
        _ => panic!("cmp_sign on infinity"),
    }
}

/// Cyclic orientation of three distinct boundary points on R union infinity,
/// +1 when b lies on the arc from a to c in the positive direction.
fn cyclic(a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint) -> i32 {
    match (a.is_infinity(), b.is_infinity(), c.is_infinity()) {
        (true, false, false) => cmp_sign(c, b),
        (false, true, false) => cmp_sign(a, c),
        (false, false, true) => cmp_sign(b, a),
        (false, false, false) => cmp_sign(b, a) * cmp_sign(c, b) * cmp_sign(c, a),
        _ => panic!("cyclic order of non-distinct points"),
    }
}

/// 0 when the endpoint pairs do not interlace; otherwise +-1 by the cyclic
/// convention: +1 when (rep1, rep2, att1, att2) is positively ordered.
/// Errors when the geodesics share an endpoint.
pub fn crossing_sign(g1: &OrientedGeodesic, g2: &OrientedGeodesic) -> Result<i32> {
    for p in [&g1.rep, &g1.att] {
        for q in [&g2.rep, &g2.att] {
            if points_equal(p, q) {
                return Err(Error::NonTransversal);
            }
        }
    }
    let side_rep = cyclic(&g1.rep, &g2.rep, &g1.att);
    let side_att = cyclic(&g1.rep, &g2.att, &g1.att);
    if side_rep == side_att {
        Ok(0)
    } else {
        Ok(side_rep)
    }
}

/// The geometric intersection count for one Hecke index: the sum over the
/// norm-n orbits of the crossing sign of the first axis with the translated
/// second axis.
pub fn oracle_coeff(ctx: &FFormContext, n: u32) -> Result<i64> {
    let split = SplitRep::new(&ctx.alg)?;
    let a1 = axis(ctx, &split, true)?;
    let a2 = axis(ctx, &split, false)?;
    let mut total = 0i64;
    for rep in enumerate_orbits(ctx, n) {
        let translated = mobius_image(&split.split(&rep.b), &a2)?;
        total += crossing_sign(&a1, &translated)? as i64;
    }
    Ok(total)
}

/// One orbit row of the exploratory term-by-term comparison.
#[derive(Debug, Clone)]
pub struct TermRow {
    pub rep: OrbitRep,
    pub varsigma: i32,
    pub crossing: i32,
}

/// Exploratory per-orbit table plus a scan for crossings among
/// non-totally-positive lattice elements (none are expected).
#[derive(Debug, Clone)]
pub struct TermwiseReport {
    pub n: u32,
    pub rows: Vec<TermRow>,
    /// orbits where the crossing sign equals the algebraic sign
    pub agree: usize,
    /// orbits where it equals the negated algebraic sign; a global
    /// orientation convention shows up as all rows landing on one side
    pub anti: usize,
    pub scanned_nonpositive: usize,
    pub nonpositive_crossings: usize,
}

impl TermwiseReport {
    pub fn theta_total(&self) -> i64 {
        self.rows.iter().map(|r| r.varsigma as i64).sum()
    }

    pub fn crossing_total(&self) -> i64 {
        self.rows.iter().map(|r| r.crossing as i64).sum()
    }
}

pub fn termwise_compare(ctx: &FFormContext, n: u32, scan_radius: i64) -> Result<TermwiseReport> {
    let split = SplitRep::new(&ctx.alg)?;
    let a1 = axis(ctx, &split, true)?;
    let a2 = axis(ctx, &split, false)?;
    let mut rows = Vec::new();
    let mut agree = 0usize;
    let mut anti = 0usize;
    for rep in enumerate_orbits(ctx, n) {
        let translated = mobius_image(&split.split(&rep.b), &a2)?;
        let crossing = crossing_sign(&a1, &translated)?;
        let varsigma = ctx.varsigma(&rep.b)?;
        if crossing == varsigma {
            agree += 1;
        }
        if crossing == -varsigma {
            anti += 1;
        }
        rows.push(TermRow {
            rep,
            varsigma,
            crossing,
        });
    }

    // scan a coordinate box for norm-n elements with q_F not totally
    // positive and report any nonzero crossing
    let mut scanned = 0usize;
    let mut bad = 0usize;
    let n_rat = Rational::from_integer(n.into());
    let r = scan_radius;
    for e0 in -r..=r {
        for e1 in -r..=r {
            for e2 in -r..=r {
                for e3 in -r..=r {
                    let e = [e0, e1, e2, e3];
                    if e == [0, 0, 0, 0] {
                        continue;
                    }
                    let b = ctx.order.element_from_integer_coords(&e);
                    if ctx.alg.nrd(&b) != n_rat || ctx.qf_totally_positive(&b) {
                        continue;
                    }
                    scanned += 1;
                    let translated = mobius_image(&split.split(&b), &a2)?;
                    match crossing_sign(&a1, &translated) {
                        Ok(0) => {}
                        Ok(_) => bad += 1,
                        Err(Error::NonTransversal) => bad += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(TermwiseReport {
        n,
        rows,
        agree,
        anti,
        scanned_nonpositive: scanned,
        nonpositive_crossings: bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::tests::disc14_ctx;
    use crate::ratio::rat_i64;

    fn k_elem(a: i64, b: i64, m: u64) -> QuadElem {
        QuadElem::new(rat_i64(a), rat_i64(b), m)
    }

    #[test]
    fn split_is_a_homomorphism_with_det_nrd() {
        let ctx = disc14_ctx();
        let split = SplitRep::new(&ctx.alg).unwrap();
        // b = 7 is the positive constant: K = Q(sqrt 7)
        assert_eq!(split.m, 7);
        let samples = [
            Quaternion::from_ints(1, 0, 0, 0),
            Quaternion::from_ints(0, 1, 0, 0),
            Quaternion::from_ints(0, 0, 1, 0),
            Quaternion::from_ints(2, -1, 3, 1),
            Quaternion::from_ints(-1, 2, 0, 5),
        ];
        for p in &samples {
            let mp = split.split(p);
            assert_eq!(mp.det(), QuadElem::from_rational(ctx.alg.nrd(p), split.m));
            assert_eq!(mp.trace(), QuadElem::from_rational(ctx.alg.trd(p), split.m));
            for q in &samples {
                let mq = split.split(q);
                assert_eq!(split.split(&ctx.alg.mul(p, q)), mp.mul(&mq));
            }
        }
        assert_eq!(
            split.split(&Quaternion::one()),
            Mat2K {
                a: k_elem(1, 0, 7),
                b: k_elem(0, 0, 7),
                c: k_elem(0, 0, 7),
                d: k_elem(1, 0, 7),
            }
        );
    }

    #[test]
    fn split_with_positive_first_constant() {
        // (3, 5): the i generator goes diagonal, K = Q(sqrt 3)
        let alg = QuatAlgebra::new(rat_i64(3), rat_i64(5)).unwrap();
        let split = SplitRep::new(&alg).unwrap();
        assert_eq!(split.m, 3);
        let i = Quaternion::from_ints(0, 1, 0, 0);
        let j = Quaternion::from_ints(0, 0, 1, 0);
        let mi = split.split(&i);
        assert!(mi.b.is_zero() && mi.c.is_zero());
        assert_eq!(mi.det(), QuadElem::from_int(-3, 3));
        let samples = [
            i.clone(),
            j.clone(),
            Quaternion::from_ints(1, 2, -1, 1),
            Quaternion::from_ints(-2, 0, 3, 1),
        ];
        for p in &samples {
            let mp = split.split(p);
            assert_eq!(mp.det(), QuadElem::from_rational(alg.nrd(p), 3));
            assert_eq!(mp.trace(), QuadElem::from_rational(alg.trd(p), 3));
            for q in &samples {
                assert_eq!(split.split(&alg.mul(p, q)), mp.mul(&split.split(q)));
            }
        }
    }

    #[test]
    fn split_handles_fractional_structure_constants() {
        // s = 1/2: sqrt(s) = sqrt(2)/2, so K = Q(sqrt 2)
        let alg = QuatAlgebra::new(rat(1, 2), rat_i64(-3)).unwrap();
        let split = SplitRep::new(&alg).unwrap();
        assert_eq!(split.m, 2);
        let i = Quaternion::from_ints(0, 1, 0, 0);
        let mi = split.split(&i);
        assert_eq!(mi.a.mul(&mi.a), QuadElem::from_rational(rat(1, 2), 2));
        let samples = [
            Quaternion::from_ints(1, 2, 1, 0),
            Quaternion::from_ints(0, 1, -1, 2),
        ];
        for p in &samples {
            let mp = split.split(p);
            assert_eq!(mp.det(), QuadElem::from_rational(alg.nrd(p), 2));
            for q in &samples {
                assert_eq!(split.split(&alg.mul(p, q)), mp.mul(&split.split(q)));
            }
        }
    }

    #[test]
    fn axis_transports_under_conjugation() {
        // conjugating the embedding by a norm-one element moves the axis by
        // the Moebius action of its split image
        let ctx = disc14_ctx();
        let split = SplitRep::new(&ctx.alg).unwrap();
        let u = ctx.alg.mul(&ctx.g2, &ctx.g1);
        let conj_ctx = ctx.conjugated(&u).unwrap();
        let base = axis(&ctx, &split, true).unwrap();
        let moved = axis(&conj_ctx, &split, true).unwrap();
        let expect = mobius_image(&split.split(&u), &base).unwrap();
        assert!(points_equal(&moved.rep, &expect.rep));
        assert!(points_equal(&moved.att, &expect.att));
    }

    #[test]
    fn diagonal_axis_is_zero_infinity() {
        // diag(lambda, 1/lambda) with lambda = 2 + sqrt(3) > 1 in Q(sqrt 3)
        let lam = k_elem(2, 1, 3);
        let g = Mat2K {
            a: lam.clone(),
            b: k_elem(0, 0, 3),
            c: k_elem(0, 0, 3),
            d: lam.recip(),
        };
        let axis = axis_of_matrix(&g).unwrap();
        assert!(axis.att.is_infinity());
        match &axis.rep {
            BoundaryPoint::Finite(t) => {
                assert!(t.x.is_zero() && t.y.is_zero());
            }
            _ => panic!("repelling endpoint should be 0"),
        }
    }

    #[test]
    fn axis_fixed_by_its_own_matrix_and_by_squares() {
        let ctx = disc14_ctx();
        let split = SplitRep::new(&ctx.alg).unwrap();
        for first in [true, false] {
            let ax = axis(&ctx, &split, first).unwrap();
            let g = if first {
                split.split(&ctx.g1)
            } else {
                split.split(&ctx.g2)
            };
            let moved = mobius_image(&g, &ax).unwrap();
            assert!(points_equal(&ax.rep, &moved.rep));
            assert!(points_equal(&ax.att, &moved.att));
            // same fixed-point set for the square
            let ax2 = axis_of_matrix(&g.mul(&g)).unwrap();
            assert!(points_equal(&ax.rep, &ax2.rep));
            assert!(points_equal(&ax.att, &ax2.att));
        }
    }

    #[test]
    fn mobius_composition_and_translation() {
        let m = 7u64;
        let id = |v: i64| k_elem(v, 0, m);
        // translation by 1: (0, infinity) -> (1, infinity)
        let g = Mat2K {
            a: id(1),
            b: id(1),
            c: id(0),
            d: id(1),
        };
        let geo = OrientedGeodesic {
            rep: BoundaryPoint::rational(k_elem(0, 0, m)),
            att: BoundaryPoint::Infinity,
        };
        let t = mobius_image(&g, &geo).unwrap();
        match &t.rep {
            BoundaryPoint::Finite(p) => assert_eq!(p.x, k_elem(1, 0, m)),
            _ => panic!(),
        }
        assert!(t.att.is_infinity());
        // composition law on a quadratic point
        let h = Mat2K {
            a: id(2),
            b: id(1),
            c: id(1),
            d: id(1),
        };
        let pt = BoundaryPoint::make(k_elem(1, 0, m), k_elem(1, 0, m), k_elem(2, 0, m)).unwrap();
        let one_step = mobius_point(&h, &mobius_point(&g, &pt).unwrap()).unwrap();
        let combined = mobius_point(&h.mul(&g), &pt).unwrap();
        assert!(points_equal(&one_step, &combined));
    }

    #[test]
    fn crossing_sign_basics() {
        let m = 7u64;
        let num = |v: i64| BoundaryPoint::rational(k_elem(v, 0, m));
        let geo = |a: BoundaryPoint, b: BoundaryPoint| OrientedGeodesic { rep: a, att: b };
        // (0, infinity) vs (-1, 1): interlaced
        let g1 = geo(num(0), BoundaryPoint::Infinity);
        let g2 = geo(num(-1), num(1));
        let s = crossing_sign(&g1, &g2).unwrap();
        assert!(s == 1 || s == -1);
        // antisymmetry
        assert_eq!(crossing_sign(&g2, &g1).unwrap(), -s);
        // reversing one orientation flips the sign
        let g2r = geo(num(1), num(-1));
        assert_eq!(crossing_sign(&g1, &g2r).unwrap(), -s);
        // (0, infinity) vs (1, 2): nested, no crossing
        let g3 = geo(num(1), num(2));
        assert_eq!(crossing_sign(&g1, &g3).unwrap(), 0);
        // shared endpoint errors
        let g4 = geo(num(0), num(2));
        assert!(matches!(crossing_sign(&g1, &g4), Err(Error::NonTransversal)));
    }

    #[test]
    fn crossing_sign_invariant_under_simultaneous_mobius() {
        let m = 7u64;
        let id = |v: i64| k_elem(v, 0, m);
        let num = |v: i64| BoundaryPoint::rational(k_elem(v, 0, m));
        let geo = |a: BoundaryPoint, b: BoundaryPoint| OrientedGeodesic { rep: a, att: b };
        let pairs = [
            (geo(num(0), BoundaryPoint::Infinity), geo(num(-1), num(1))),
            (geo(num(2), num(-3)), geo(num(0), num(5))),
            (geo(num(1), num(4)), geo(num(2), num(3))),
        ];
        let g = Mat2K {
            a: id(3),
            b: id(1),
            c: id(5),
            d: id(2),
        }; // det = 1
        for (g1, g2) in pairs {
            let before = crossing_sign(&g1, &g2).unwrap();
            let after = crossing_sign(
                &mobius_image(&g, &g1).unwrap(),
                &mobius_image(&g, &g2).unwrap(),
            )
            .unwrap();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn sqrt_in_field_cases() {
        // 9 is a square in Q(sqrt 7)
        let nine = k_elem(9, 0, 7);
        assert_eq!(sqrt_in_field(&nine).unwrap(), k_elem(3, 0, 7));
        // 7 is a square: sqrt(7) itself
        let seven = k_elem(7, 0, 7);
        assert_eq!(sqrt_in_field(&seven).unwrap(), k_elem(0, 1, 7));
        // 11 + 4 sqrt(7) = (2 + sqrt 7)^2
        let z = k_elem(11, 4, 7);
        assert_eq!(sqrt_in_field(&z).unwrap(), k_elem(2, 1, 7));
        // 2 is not a square in Q(sqrt 7)
        assert!(sqrt_in_field(&k_elem(2, 0, 7)).is_none());
        // negative elements are not squares
        assert!(sqrt_in_field(&k_elem(-4, 0, 7)).is_none());
    }

    #[test]
    fn oracle_is_representative_independent() {
        let ctx = disc14_ctx();
        let split = SplitRep::new(&ctx.alg).unwrap();
        let a1 = axis(&ctx, &split, true).unwrap();
        let a2 = axis(&ctx, &split, false).unwrap();
        for n in [1u32, 2, 3] {
            for rep in enumerate_orbits(&ctx, n) {
                let base = crossing_sign(
                    &a1,
                    &mobius_image(&split.split(&rep.b), &a2).unwrap(),
                )
                .unwrap();
                for (mm, kk) in [(1i64, 0i64), (0, 1), (-1, 1), (1, -1)] {
                    let moved = ctx.alg.mul(
                        &ctx.alg.mul(&ctx.alg.pow(&ctx.g1, mm), &rep.b),
                        &ctx.alg.pow(&ctx.g2, kk),
                    );
                    let s = crossing_sign(
                        &a1,
                        &mobius_image(&split.split(&moved), &a2).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(s, base);
                    let neg = crossing_sign(
                        &a1,
                        &mobius_image(&split.split(&moved.neg()), &a2).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(neg, base);
                }
            }
        }
    }
}
