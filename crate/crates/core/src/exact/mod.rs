//! Exact linear algebra over the rationals and other exact fields.
//!
//! [`Matrix`] and [`Poly`] are generic over [`FieldScalar`], an exact field
//! element. The two instantiations used by the crate are [`Rational`] and the
//! degree-7 cyclotomic numbers from [`crate::cyclo`].

mod charpoly;
mod jordan;
mod matrix;
mod minpoly;
mod poly;

pub use charpoly::{characteristic_polynomial, minimal_polynomial_reference};
pub use jordan::{jordan_block, jordan_structure, jordan_tensor_spec, EigenClass, JordanSpec};
pub use matrix::{parse_matrix_text, write_matrix_text, Matrix};
pub use minpoly::{is_diagonalizable, minimal_polynomial};
pub use poly::Poly;

use crate::Result;

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// An element of an exact field: just enough structure for Gaussian
/// elimination, polynomial arithmetic, and Krylov iteration.
pub trait FieldScalar: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    fn inv(&self) -> Result<Self>;
    fn from_i64(value: i64) -> Self;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl FieldScalar for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if FieldScalar::is_zero(self) {
            return Err(crate::Error::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn from_i64(value: i64) -> Self {
        Rational::from_integer(value.into())
    }
}

/// Shorthand for an integer as a rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Shorthand for the fraction `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
