//! Exact arithmetic: rationals, t-Pochhammer symbols, Pfaffians and
//! determinants, and univariate interpolation.
//!
//! Every verdict in this crate is computed with [`Rational`]. The [`Scalar`]
//! trait lets the same evaluators run over `f64` when only a magnitude
//! estimate is wanted.

mod matrix;
mod poly;
mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use matrix::{determinant, pfaffian, pfaffian_by_elimination, pfaffian_by_expansion, SkewMatrix};
pub use poly::{interpolate, Poly};
pub use rational::{q, Rational};

/// Field operations shared by the exact and the floating-point backends.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact zero test for `Rational`, literal `== 0.0` for `f64`.
    fn is_zero(&self) -> bool;
    /// Absolute value as a double, used only for pivot ranking.
    fn magnitude(&self) -> f64;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.approx().abs()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.approx()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

/// `(a; t)_k = (1 - a)(1 - a t) ... (1 - a t^{k-1})`, and 1 for `k = 0`.
pub fn pochhammer_t<S: Scalar>(a: &S, t: &S, k: usize) -> S {
    let mut acc = S::one();
    let mut at = a.clone();
    for _ in 0..k {
        acc = acc * (S::one() - at.clone());
        at = at * t.clone();
    }
    acc
}
