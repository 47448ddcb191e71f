//! Intersection numbers of real quadratic geodesics on quaternionic Shimura
//! curves, computed by two independent routes:
//!
//! 1. an exact theta-coefficient formula: a sum of signs over unit-group
//!    orbits of order elements with given reduced norm and totally positive
//!    F-valued norm form, and
//! 2. a geometric oracle: signed interlacing counts of geodesic axes in the
//!    upper half-plane.
//!
//! The two must agree integer-exactly after a one-time global sign
//! calibration; the crate verifies this together with the algebraic
//! identities the construction rests on.

pub mod arch;
pub mod biquad;
pub mod cli;
pub mod config;
pub mod error;
pub mod geodesic;
pub mod mat;
pub mod orbits;
pub mod pell;
pub mod qform;
pub mod quad;
pub mod quat;
pub mod ratio;
pub mod series;

pub use biquad::{
    biquad_sign, eps_involution, rel_norm, rel_norm_to_f1, rel_norm_to_f2, rel_trace, BiquadElem,
    RealPlace,
};
pub use error::{Error, Result};
pub use pell::fundamental_tp_unit;
pub use qform::FFormContext;
pub use quad::{quad_sign, totally_positive, QuadElem};
pub use quat::{
    hilbert_symbol, order_verify, ramified_primes, EichlerOrderLattice, EmbeddingData, Place,
    QuatAlgebra, Quaternion,
};
pub use ratio::Rational;
