//! Potential-theoretic quantities and weighted polynomial approximation in the
//! complex plane.
//!
//! The crate revolves around compact sets `K` lying outside the open unit disc
//! and touching it at `1`:
//!
//! * [`geometry`] — the built-in compact families, inflated domains `G ⊃ K`,
//!   distances, and the sub-level regions used by the constructive scheme;
//! * [`conformal`] — exterior conformal maps of `ℂ̄ ∖ Ḡ` onto the closed unit
//!   disc, with inverses, boundary derivatives, and Green functions;
//! * [`potential`] — the Poisson kernel, the harmonic-measure positivity
//!   criterion for the weight `z^α`, the thresholds `α*(G)` and `α_K`, the
//!   Green-sup constant `M_K`, and the Solynin envelope;
//! * [`weighted_approx`] — discrete minimax fitting of weighted polynomials
//!   `z^{nσ} Q_{nτ}` by Lawson iteration;
//! * [`construction`] — perturbation polynomials `C^n z^{σn}(1-z)^{τn}`, their
//!   exact partial-sum identities, and the certified constructor of
//!   partial-sum-controlled polynomials with its staged builder;
//! * [`verify`] — the machine-checkable verification suite behind
//!   `wpa verify`.
//!
//! All floating-point code is generic over the scalar type through [`Scalar`];
//! the aliases [`Real`] and [`Cx`] fix the default `f64` instantiation. Exact
//! combinatorial identities use arbitrary-precision integers and live in
//! [`construction::exact`].

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub mod conformal;
pub mod construction;
mod error;
pub mod geometry;
pub mod poly;
pub mod potential;
pub mod report;
mod util;
pub mod verify;
pub mod weighted_approx;

pub use error::{Error, Result};

/// Floating-point scalar the numerical kernels are generic over.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Default real scalar.
pub type Real = f64;
/// Default complex scalar.
pub type Cx = Complex<f64>;
/// Single-precision aliases, for callers that want the narrow instantiation.
pub type Real32 = f32;
pub type Cx32 = Complex<f32>;

/// Shorthand for pulling an `f64` literal into the generic scalar type.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Complex value from two `f64` literals.
#[inline]
pub fn cx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}
