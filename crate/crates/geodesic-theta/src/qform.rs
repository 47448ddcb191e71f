//! The F-valued quadratic form q_F on B attached to a pair of embedded real
//! quadratic fields, the change of structure B = L as an L-module, and the
//! per-place sign used by the coefficient formula.
//!
//! With w1 = image of sqrt(D1) and w2 = image of sqrt(D2), the module action
//! is (x tensor y) . b = alpha_1(x) b alpha_2(y); the F-bilinear lift of the
//! norm pairing is pinned by Tr_{F/Q} of it being trd(b1 conj(b2)), which
//! forces Tr_{F/Q} q_F = nrd.

use num_traits::One;

use crate::biquad::{biquad_sign, rel_norm, BiquadElem, RealPlace};
use crate::error::{Error, Result};
use crate::mat::Mat4;
use crate::pell::fundamental_tp_unit;
use crate::quad::{totally_positive, QuadElem};
use crate::quat::{EichlerOrderLattice, EmbeddingData, QuatAlgebra, Quaternion};
use crate::ratio::{rat, rat_i64, Rational};

/// Derived data of a configuration: the base-change matrix M with columns
/// (1, w1, w2, w1 w2), the constant alpha = q_F(1), the fundamental totally
/// positive units and their images g1, g2.
#[derive(Debug, Clone)]
pub struct FFormContext {
    pub alg: QuatAlgebra,
    pub order: EichlerOrderLattice,
    pub emb1: EmbeddingData,
    pub emb2: EmbeddingData,
    pub d1: u64,
    pub d2: u64,
    /// d1 * d2, squarefree since d1, d2 are coprime squarefree
    pub d: u64,
    pub m_mat: Mat4,
    pub m_inv: Mat4,
    pub alpha: QuadElem,
    pub u1: QuadElem,
    pub u2: QuadElem,
    pub g1: Quaternion,
    pub g2: Quaternion,
    pub sign_convention: i32,
    pub box_slack: f64,
    pub precision_bits: u32,
}

impl FFormContext {
    pub fn new(
        alg: QuatAlgebra,
        order: EichlerOrderLattice,
        emb1: EmbeddingData,
        emb2: EmbeddingData,
        sign_convention: i32,
        box_slack: f64,
        precision_bits: u32,
    ) -> Result<Self> {
        let d1 = emb1.d;
        let d2 = emb2.d;
        if num_integer::gcd(d1, d2) != 1 {
            return Err(Error::InvalidConfig(format!(
                "discriminant radicands must be coprime, got {d1} and {d2}"
            )));
        }
        if sign_convention != 1 && sign_convention != -1 {
            return Err(Error::InvalidConfig("sign_convention must be +1 or -1".into()));
        }
        let d = d1 * d2;
        let w1w2 = alg.mul(&emb1.w, &emb2.w);
        let cols = [
            Quaternion::one().coords(),
            emb1.w.coords(),
            emb2.w.coords(),
            w1w2.coords(),
        ];
        let m_mat = Mat4::from_columns(cols);
        let m_inv = m_mat
            .inverse()
            .map_err(|_| Error::DegenerateConfiguration("base-change matrix M is singular".into()))?;

        // alpha = q_F(1) = 1/2 + trd(w1 w2)/(4 D) * sqrt(D)
        let alpha = QuadElem::new(
            rat(1, 2),
            alg.trd(&w1w2) / rat_i64(4 * d as i64),
            d,
        );
        debug_assert_eq!(alpha.trace(), Rational::one());

        let u1 = fundamental_tp_unit(d1, emb1.f);
        let u2 = fundamental_tp_unit(d2, emb2.f);
        let g1 = emb1.embed(&u1);
        let g2 = emb2.embed(&u2);
        if !order.contains(&g1) || !order.contains(&g2) {
            return Err(Error::DegenerateConfiguration(
                "unit image does not lie in the order".into(),
            ));
        }
        debug_assert_eq!(alg.nrd(&g1), Rational::one());
        debug_assert_eq!(alg.nrd(&g2), Rational::one());

        Ok(FFormContext {
            alg,
            order,
            emb1,
            emb2,
            d1,
            d2,
            d,
            m_mat,
            m_inv,
            alpha,
            u1,
            u2,
            g1,
            g2,
            sign_convention,
            box_slack,
            precision_bits,
        })
    }

    /// The L-module action on B, extended additively from the basis
    /// monomials: (sqrt(D1)^m sqrt(D2)^k) . b = w1^m b w2^k.
    pub fn act_l(&self, x: &BiquadElem, b: &Quaternion) -> Quaternion {
        assert!(x.d1 == self.d1 && x.d2 == self.d2);
        let w1b = self.alg.mul(&self.emb1.w, b);
        let bw2 = self.alg.mul(b, &self.emb2.w);
        let w1bw2 = self.alg.mul(&w1b, &self.emb2.w);
        b.scale(&x.c[0])
            .add(&w1b.scale(&x.c[1]))
            .add(&bw2.scale(&x.c[2]))
            .add(&w1bw2.scale(&x.c[3]))
    }

    /// The Q-bilinear norm pairing: <b1, b2> = trd(b1 conj(b2)), so that
    /// <b, b> = 2 nrd(b).
    pub fn pair_q(&self, b1: &Quaternion, b2: &Quaternion) -> Rational {
        self.alg.trd(&self.alg.mul(b1, &self.alg.conj(b2)))
    }

    /// The unique F-bilinear lift with Tr_{F/Q} pair_F = pair_Q:
    /// u + v sqrt(D) with u = pair_Q/2 and v = pair_Q(sqrt(D).b1, b2)/(2D).
    pub fn pair_f(&self, b1: &Quaternion, b2: &Quaternion) -> QuadElem {
        let u = self.pair_q(b1, b2) / rat_i64(2);
        let sqrt_d_b1 = self
            .alg
            .mul(&self.alg.mul(&self.emb1.w, b1), &self.emb2.w);
        let v = self.pair_q(&sqrt_d_b1, b2) / rat_i64(2 * self.d as i64);
        QuadElem::new(u, v, self.d)
    }

    /// q_F(b) = pair_F(b, b)/2; satisfies Tr_{F/Q} q_F(b) = nrd(b) exactly.
    pub fn q_f(&self, b: &Quaternion) -> QuadElem {
        self.pair_f(b, b).scale(&rat(1, 2))
    }

    pub fn qf_totally_positive(&self, b: &Quaternion) -> bool {
        totally_positive(&self.q_f(b))
    }

    /// The inverse of x -> x.1: coordinates of b in the basis
    /// (1, w1, w2, w1 w2), as an element of L.
    pub fn iota_l(&self, b: &Quaternion) -> BiquadElem {
        let c = self.m_inv.mul_vec(&b.coords());
        BiquadElem::new(c, self.d1, self.d2)
    }

    /// Per-place signs of iota_L(b) at the distinguished extensions
    /// (s1 = +1) of the two real places of F.
    pub fn varsigma_components(&self, b: &Quaternion) -> (i32, i32) {
        let x = self.iota_l(b);
        let s_plus = biquad_sign(&x, RealPlace::new(1, 1), self.precision_bits);
        let s_minus = biquad_sign(&x, RealPlace::new(1, -1), self.precision_bits);
        (s_plus, s_minus)
    }

    /// The sign attached to b: the product over the two places of F of the
    /// exact sign of iota_L(b) at the distinguished extension, times the
    /// configured labeling convention. Requires q_F(b) totally positive.
    pub fn varsigma(&self, b: &Quaternion) -> Result<i32> {
        if b.is_zero() || !self.qf_totally_positive(b) {
            return Err(Error::NotTotallyPositive);
        }
        let (sp, sm) = self.varsigma_components(b);
        debug_assert!(sp != 0 && sm != 0);
        Ok(self.sign_convention * sp * sm)
    }

    /// alpha * Nm_{L/F}(iota_L(b)); equals q_F(b) by the isometry identity.
    pub fn q_via_isometry(&self, b: &Quaternion) -> QuadElem {
        self.alpha.mul(&rel_norm(&self.iota_l(b)))
    }

    /// Neither alpha nor the theory needs alpha totally positive, but when it
    /// is, varsigma(b) equals the sign of Nm_{F/Q} Tr_{L/F}(iota_L(b)).
    pub fn alpha_totally_positive(&self) -> bool {
        totally_positive(&self.alpha)
    }

    /// Rebuild the context with both embeddings conjugated by u (nrd(u) = 1):
    /// w_j -> u w_j u^-1. The constant alpha is unchanged.
    pub fn conjugated(&self, u: &Quaternion) -> Result<Self> {
        assert_eq!(self.alg.nrd(u), Rational::one());
        let ui = self.alg.inv(u);
        let w1 = self.alg.mul(&self.alg.mul(u, &self.emb1.w), &ui);
        let w2 = self.alg.mul(&self.alg.mul(u, &self.emb2.w), &ui);
        let emb1 = EmbeddingData::new(&self.alg, &self.order, self.d1, w1, None)?;
        let emb2 = EmbeddingData::new(&self.alg, &self.order, self.d2, w2, None)?;
        FFormContext::new(
            self.alg.clone(),
            self.order.clone(),
            emb1,
            emb2,
            self.sign_convention,
            self.box_slack,
            self.precision_bits,
        )
    }

    /// Rebuild with the two embeddings exchanged.
    pub fn swapped(&self) -> Result<Self> {
        FFormContext::new(
            self.alg.clone(),
            self.order.clone(),
            self.emb2.clone(),
            self.emb1.clone(),
            self.sign_convention,
            self.box_slack,
            self.precision_bits,
        )
    }
}
