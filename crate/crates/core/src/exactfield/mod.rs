//! Exact scalar arithmetic and the matrix routines every certificate is built on.
//!
//! Three scalar fields are supported:
//!
//! - [`Rational`]: arbitrary-precision ℚ,
//! - [`Fp`]: residues modulo a word-sized prime, created through [`PrimeFieldCtx`],
//! - [`QuadExt`]: elements `r + s·√d` of a real quadratic field ℚ(√d).
//!
//! Elements of 𝔽_p and ℚ(√d) carry their modulus or radicand, so a matrix
//! can check that all of its entries live in one field ([`FieldTag`]).
//! Nothing in this module touches floating point except the explicit
//! [`OrderedField::to_f64`] conversion used for coordinate-level checks.

mod matrix;
mod prime;
mod quadratic;
mod rational;
mod scalar;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::Result;

pub use matrix::{gauss_rank, inertia_psd_rank, rank, solve_linear, Inertia, Matrix};
pub use prime::{is_prime, Fp, PrimeFieldCtx};
pub use quadratic::QuadExt;
pub use rational::{parse_rational, rational, Rational};
pub use scalar::ExactScalar;

/// Identifies which field a scalar belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum FieldTag {
    Rational,
    Prime(u64),
    Quadratic(u64),
}

impl Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
            FieldTag::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// Commutative ring operations with a value-level zero and one.
///
/// Zero and one are produced from an existing element because elements of
/// 𝔽_p and ℚ(√d) need their modulus or radicand.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, value: i64) -> Self;
    fn is_zero(&self) -> bool;
}

/// An exact field.
///
/// The two `matrix_*` hooks let a field swap in a specialised elimination;
/// ℚ uses fraction-free Bareiss elimination over ℤ.
pub trait Field: Ring + Display {
    fn inverse(&self) -> Option<Self>;

    fn tag(&self) -> FieldTag;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        matrix::gauss_rank(m)
    }

    /// Solves `m · X = rhs` for a square nonsingular `m` and a block of
    /// right-hand sides stored column-wise in `rhs`.
    fn matrix_solve(m: &Matrix<Self>, rhs: &Matrix<Self>) -> Result<Matrix<Self>> {
        matrix::gauss_solve(m, rhs)
    }
}

/// A subfield of ℝ: signs are decidable exactly.
pub trait OrderedField: Field {
    fn signum(&self) -> Ordering;

    fn to_f64(&self) -> f64;

    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn exact_cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }

    fn one_like(&self) -> Self {
        1.0
    }

    fn from_i64_like(&self, value: i64) -> Self {
        value as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}
