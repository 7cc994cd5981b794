#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Certified numerics for Bernstein-type inequalities on the derivative and
//! polar derivative of complex polynomials with restricted zeros.
//!
//! The numerical core is generic over the real scalar ([`Scalar`], i.e.
//! `f32` or `f64`); the aliases below fix it to `f64` for everyday use.

pub mod bounds;
pub mod ensembles;
pub mod error;
pub mod extrema;
pub mod poly;
pub mod scalar;
pub mod verifier;

pub use bounds::{AQuantities, BoundResult, Direction, Target, TheoremId};
pub use error::{Error, Result};
pub use extrema::{CertifiedExtremum, ExtremumKind};
pub use poly::{LacunaryKind, PolyClass, Polynomial, ZeroSide};
pub use scalar::Scalar;

pub use num_complex::Complex;

pub type Real = f64;
pub type C64 = Complex<f64>;
pub type Poly = Polynomial<f64>;
pub type Poly32 = Polynomial<f32>;
pub type Class = PolyClass<f64>;
pub type Extremum = CertifiedExtremum<f64>;
pub type Bound = BoundResult<f64>;

pub type Instance = ensembles::GeneratedInstance<f64>;
