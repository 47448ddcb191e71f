//! Quaternion algebras B = (a,b | Q), their orders, and verified embeddings
//! of real quadratic orders.
//!
//! The order and the embeddings are input data; this module verifies every
//! declared property (ring axioms, unity, conjugation stability, integral
//! reduced discriminant, w^2 = D, conductors) rather than synthesizing them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::Mat4;
use crate::quad::{bigint_sqrt_floor, is_squarefree, QuadElem};
use crate::ratio::{rat_i64, Rational};

/// B = Q<i,j> with i^2 = a, j^2 = b, ij = -ji = k.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatAlgebra {
    pub a: Rational,
    pub b: Rational,
}

/// Element t + x i + y j + z k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quaternion {
    pub t: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(t: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quaternion { t, x, y, z }
    }

    pub fn from_ints(t: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(rat_i64(t), rat_i64(x), rat_i64(y), rat_i64(z))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [Rational; 4] {
        [
            self.t.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    pub fn from_coords(c: &[Rational; 4]) -> Self {
        Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion::new(&self.t + &o.t, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quaternion::new(&self.t - &o.t, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn neg(&self) -> Self {
        Quaternion::new(
            -self.t.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quaternion::new(&self.t * r, &self.x * r, &self.y * r, &self.z * r)
    }
}

impl QuatAlgebra {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidConfig("structure constants must be nonzero".into()));
        }
        Ok(QuatAlgebra { a, b })
    }

    /// Full multiplication table from i^2 = a, j^2 = b, ij = -ji = k:
    /// ik = a j, ki = -a j, jk = -b i, kj = b i, k^2 = -ab.
    pub fn mul(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        let a = &self.a;
        let b = &self.b;
        let t = &p.t * &q.t + a * &p.x * &q.x + b * &p.y * &q.y - a * b * &p.z * &q.z;
        let x = &p.t * &q.x + &p.x * &q.t - b * &p.y * &q.z + b * &p.z * &q.y;
        let y = &p.t * &q.y + &p.y * &q.t + a * &p.x * &q.z - a * &p.z * &q.x;
        let z = &p.t * &q.z + &p.z * &q.t + &p.x * &q.y - &p.y * &q.x;
        Quaternion::new(t, x, y, z)
    }

    pub fn conj(&self, q: &Quaternion) -> Quaternion {
        Quaternion::new(
            q.t.clone(),
            -q.x.clone(),
            -q.y.clone(),
            -q.z.clone(),
        )
    }

    pub fn trd(&self, q: &Quaternion) -> Rational {
        &q.t + &q.t
    }

    pub fn nrd(&self, q: &Quaternion) -> Rational {
        &q.t * &q.t - &self.a * &q.x * &q.x - &self.b * &q.y * &q.y
            + &self.a * &self.b * &q.z * &q.z
    }

    /// Inverse of a unit (nonzero element of a division algebra).
    pub fn inv(&self, q: &Quaternion) -> Quaternion {
        let n = self.nrd(q);
        assert!(!n.is_zero(), "inverse of a norm-zero element");
        self.conj(q).scale(&n.recip())
    }

    pub fn pow(&self, q: &Quaternion, k: i64) -> Quaternion {
        let base = if k < 0 { self.inv(q) } else { q.clone() };
        let mut acc = Quaternion::one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    pub fn is_indefinite(&self) -> bool {
        self.a.is_positive() || self.b.is_positive()
    }
}

fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A place of Q for Hilbert symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Finite(u64),
    Infinity,
}

/// Legendre symbol (a/p) for odd prime p.
fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let mut r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    // Euler criterion by modular exponentiation.
    let mut exp = (p - 1) / 2;
    let mut base = r.clone();
    r = BigInt::one();
    while exp > 0 {
        if exp & 1 == 1 {
            r = (&r * &base).mod_floor(&pb);
        }
        base = (&base * &base).mod_floor(&pb);
        exp >>= 1;
    }
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Strip the p-part: n = p^v * u.
fn p_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0u32;
    let mut u = n.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

/// Local Hilbert symbol (a, b)_p for nonzero rationals.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            // The symbol only depends on square classes; clear denominators.
            let ai = a.numer() * a.denom();
            let bi = b.numer() * b.denom();
            let (alpha, u) = p_valuation(&ai, p);
            let (beta, v) = p_valuation(&bi, p);
            let alpha = alpha % 2;
            let beta = beta % 2;
            if p == 2 {
                // (-1)^(eps(u)eps(v) + alpha*omega(v) + beta*omega(u))
                let eps = |n: &BigInt| -> u32 {
                    let m = n.mod_floor(&BigInt::from(8)).to_u64_digits().1;
                    let m = if m.is_empty() { 0 } else { m[0] };
                    (((m as i64 - 1) / 2) % 2).unsigned_abs() as u32 & 1
                };
                let omega = |n: &BigInt| -> u32 {
                    let m = n.mod_floor(&BigInt::from(8)).to_u64_digits().1;
                    let m = if m.is_empty() { 0 } else { m[0] };
                    (((m * m - 1) / 8) % 2) as u32
                };
                let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s = 1i32;
                if beta == 1 {
                    s *= legendre(&u, p);
                }
                if alpha == 1 {
                    s *= legendre(&v, p);
                }
                if alpha == 1 && beta == 1 && (p - 1) / 2 % 2 == 1 {
                    s = -s;
                }
                s
            }
        }
    }
}

/// The finite primes where (a,b) ramifies, plus the product D_B.
pub fn ramified_primes(a: &Rational, b: &Rational) -> (Vec<u64>, u64) {
    let mut candidates: Vec<u64> = vec![2];
    for r in [a, b] {
        for part in [r.numer(), r.denom()] {
            let n = part.abs().to_u64_digits().1;
            let n = if n.is_empty() {
                0
            } else if n.len() == 1 {
                n[0]
            } else {
                // factoring beyond u64 is out of scope for config constants
                panic!("structure constants too large to factor");
            };
            if n > 1 {
                for p in factor_u64(n) {
                    if !candidates.contains(&p) {
                        candidates.push(p);
                    }
                }
            }
        }
    }
    candidates.sort_unstable();
    let ramified: Vec<u64> = candidates
        .into_iter()
        .filter(|&p| hilbert_symbol(a, b, Place::Finite(p)) == -1)
        .collect();
    let infinite_ramified = hilbert_symbol(a, b, Place::Infinity) == -1;
    let parity = ramified.len() + usize::from(infinite_ramified);
    assert!(parity % 2 == 0, "ramified set must have even cardinality");
    let disc = ramified.iter().product();
    (ramified, disc)
}

/// A rank-4 lattice in B given by a column basis, verified to be an order.
#[derive(Debug, Clone)]
pub struct EichlerOrderLattice {
    pub basis: Mat4,
    pub basis_inv: Mat4,
    pub reduced_disc: u64,
}

impl EichlerOrderLattice {
    pub fn basis_element(&self, idx: usize) -> Quaternion {
        Quaternion::new(
            self.basis.cols[idx][0].clone(),
            self.basis.cols[idx][1].clone(),
            self.basis.cols[idx][2].clone(),
            self.basis.cols[idx][3].clone(),
        )
    }

    /// Exact order-basis coordinates of q; integral iff q is in the lattice.
    pub fn coords_of(&self, q: &Quaternion) -> [Rational; 4] {
        self.basis_inv.mul_vec(&q.coords())
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        self.coords_of(q).iter().all(|c| c.denom().is_one())
    }

    pub fn element_from_integer_coords(&self, e: &[i64; 4]) -> Quaternion {
        let v = [
            rat_i64(e[0]),
            rat_i64(e[1]),
            rat_i64(e[2]),
            rat_i64(e[3]),
        ];
        Quaternion::from_coords(&self.basis.mul_vec(&v))
    }
}

/// Check the order axioms and compute the reduced discriminant
/// sqrt(|det(trd(e_i * conj(e_j)))|), which must be a positive integer.
pub fn order_verify(alg: &QuatAlgebra, basis: &Mat4) -> Result<EichlerOrderLattice> {
    let basis_inv = basis.inverse().map_err(|_| Error::SingularBasis)?;
    let lat = EichlerOrderLattice {
        basis: basis.clone(),
        basis_inv,
        reduced_disc: 0,
    };

    if !lat.contains(&Quaternion::one()) {
        return Err(Error::MissingUnity);
    }
    let elems: Vec<Quaternion> = (0..4).map(|i| lat.basis_element(i)).collect();
    for (i, ei) in elems.iter().enumerate() {
        if !lat.contains(&alg.conj(ei)) {
            return Err(Error::NotConjClosed);
        }
        for (j, ej) in elems.iter().enumerate() {
            let prod = alg.mul(ei, ej);
            if !lat.contains(&prod) {
                return Err(Error::NotARing(format!(
                    "product of basis elements {i} and {j} escapes the lattice"
                )));
            }
        }
    }

    // Gram determinant of the norm-form pairing <x,y> = trd(x conj(y)).
    let mut g = Mat4::identity();
    for i in 0..4 {
        for j in 0..4 {
            let v = alg.trd(&alg.mul(&elems[i], &alg.conj(&elems[j])));
            g.cols[j][i] = v;
        }
    }
    let det = g.det();
    let abs = if det.is_negative() { -det } else { det };
    if !abs.denom().is_one() || abs.is_zero() {
        return Err(Error::NonIntegralDiscriminant(format!(
            "Gram determinant {abs} is not a positive integer"
        )));
    }
    let n = abs.numer().clone();
    let s = bigint_sqrt_floor(&n);
    if &s * &s != n {
        return Err(Error::NonIntegralDiscriminant(format!(
            "Gram determinant {n} is not a perfect square"
        )));
    }
    let rd: u64 = s
        .to_u64_digits()
        .1
        .first()
        .copied()
        .ok_or_else(|| Error::NonIntegralDiscriminant("zero discriminant".into()))?;
    Ok(EichlerOrderLattice {
        reduced_disc: rd,
        ..lat
    })
}

/// An embedding of Q(sqrt(D)) into B sending sqrt(D) to w, optimal for the
/// order of conductor f.
#[derive(Debug, Clone)]
pub struct EmbeddingData {
    pub d: u64,
    pub w: Quaternion,
    pub f: u64,
}

impl EmbeddingData {
    pub fn new(
        alg: &QuatAlgebra,
        order: &EichlerOrderLattice,
        d: u64,
        w: Quaternion,
        declared_f: Option<u64>,
    ) -> Result<Self> {
        if !(d > 1 && is_squarefree(d)) {
            return Err(Error::InvalidConfig(format!("D = {d} must be squarefree > 1")));
        }
        let sq = alg.mul(&w, &w);
        let expected = Quaternion::new(rat_i64(d as i64), Rational::zero(), Rational::zero(), Rational::zero());
        if sq != expected {
            return Err(Error::EmbeddingSquareMismatch {
                got: format!("{:?}", sq.coords().map(|r| crate::ratio::format_rational(&r))),
                expected: format!("{d}"),
            });
        }
        let f = optimal_conductor(alg, order, d, &w)?;
        if let Some(df) = declared_f {
            if df != f {
                return Err(Error::ConductorMismatch {
                    declared: df,
                    computed: f,
                });
            }
        }
        Ok(EmbeddingData { d, w, f })
    }

    /// a + b*sqrt(D) -> a + b*w; a ring homomorphism by w^2 = D.
    pub fn embed(&self, t: &QuadElem) -> Quaternion {
        assert_eq!(t.d, self.d);
        let mut q = self.w.scale(&t.b);
        q.t = &q.t + &t.a;
        q
    }
}

/// Conductor of the order {t in Q(sqrt(D)) : embed(t) in O}.
///
/// With w_max the standard generator of the maximal order, the preimage is an
/// order Z + f Z w_max; its elements have integer coordinates over (1, w_max),
/// so f is the least integer with f * embed(w_max) in O modulo Z.
pub fn optimal_conductor(
    alg: &QuatAlgebra,
    order: &EichlerOrderLattice,
    d: u64,
    w: &Quaternion,
) -> Result<u64> {
    let w_max = if d % 4 == 1 {
        // (1 + w)/2
        let mut q = w.scale(&crate::ratio::rat(1, 2));
        q.t = &q.t + crate::ratio::rat(1, 2);
        q
    } else {
        w.clone()
    };
    let _ = alg;
    let s = order.coords_of(&w_max);
    // c = lcm of denominators; (0, c) is always in the preimage lattice, so
    // f | c, and f*s must be integral coordinate-wise.
    let mut c = BigInt::one();
    for v in s.iter() {
        c = c.lcm(v.denom());
    }
    let c: u64 = c
        .to_u64_digits()
        .1
        .first()
        .copied()
        .ok_or(Error::EmbeddingNotIntegral)?;
    let mut divisors: Vec<u64> = (1..=c).filter(|k| c % k == 0).collect();
    divisors.sort_unstable();
    for f in divisors {
        let fr = rat_i64(f as i64);
        if s.iter().all(|v| (v * &fr).denom().is_one()) {
            return Ok(f);
        }
    }
    Err(Error::EmbeddingNotIntegral)
}
