//! Exact arithmetic in the degree-7 cyclotomic field `Q(z)`, `z` a primitive
//! 7th root of unity, together with the explicit matrix representations used
//! to certify non-diagonalizability of the built-in digraph families.
//!
//! An element is stored on the power basis `1, z, z^2, ..., z^5`; the relation
//! `1 + z + ... + z^6 = 0` eliminates `z^6`. All coefficients are
//! [`Rational`], so every operation is exact.

pub mod fixtures;
pub mod gamma_rep;
pub mod pq;
pub mod sigma_rep;

use crate::exact::{FieldScalar, Poly, Rational};
use crate::{Error, Result};

/// Number of power-basis coefficients (`1, z, ..., z^5`).
pub const CYCLO_DEGREE: usize = 6;

/// An element of the cyclotomic field of 7th roots of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicElement {
    coeffs: [Rational; CYCLO_DEGREE],
}

fn zero_coeffs() -> [Rational; CYCLO_DEGREE] {
    std::array::from_fn(|_| FieldScalar::zero())
}

impl CyclotomicElement {
    /// The zero element.
    pub fn zero() -> Self {
        Self {
            coeffs: zero_coeffs(),
        }
    }

    /// The unit element.
    pub fn one() -> Self {
        Self::integer(1)
    }

    /// The rational number `value` embedded in the field.
    pub fn from_rational(value: Rational) -> Self {
        let mut coeffs = zero_coeffs();
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The integer `value` embedded in the field.
    pub fn integer(value: i64) -> Self {
        Self::from_rational(FieldScalar::from_i64(value))
    }

    /// Builds an element from its six power-basis coefficients.
    pub fn from_coeffs(coeffs: [Rational; CYCLO_DEGREE]) -> Self {
        Self { coeffs }
    }

    /// Builds an element with integer power-basis coefficients.
    pub fn from_i64_coeffs(coeffs: &[i64; CYCLO_DEGREE]) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| FieldScalar::from_i64(coeffs[k])),
        }
    }

    /// The primitive root `z` itself.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// The power `z^e` for any integer exponent (reduced modulo 7).
    pub fn zeta_pow(e: i64) -> Self {
        let e = e.rem_euclid(7) as usize;
        let mut coeffs = zero_coeffs();
        if e < CYCLO_DEGREE {
            coeffs[e] = FieldScalar::one();
        } else {
            // z^6 = -(1 + z + ... + z^5).
            for c in coeffs.iter_mut() {
                *c = FieldScalar::from_i64(-1);
            }
        }
        Self { coeffs }
    }

    /// The power-basis coefficients of `1, z, ..., z^5`.
    pub fn coefficients(&self) -> &[Rational; CYCLO_DEGREE] {
        &self.coeffs
    }

    /// Returns the element as a rational number if it lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(FieldScalar::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// True when the element is a rational integer.
    pub fn is_rational_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    /// True when every power-basis coefficient is a rational integer, i.e.
    /// the element lies in the ring generated by `z` over the integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| self.coeffs[k].add(&rhs.coeffs[k])),
        }
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| self.coeffs[k].sub(&rhs.coeffs[k])),
        }
    }

    fn neg_impl(&self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| self.coeffs[k].neg()),
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        // Convolve to degree 10, fold z^7 = 1, then eliminate z^6.
        let mut conv: Vec<Rational> = vec![FieldScalar::zero(); 2 * CYCLO_DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if FieldScalar::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if FieldScalar::is_zero(b) {
                    continue;
                }
                conv[i + j] = conv[i + j].add(&a.mul(b));
            }
        }
        for k in (7..conv.len()).rev() {
            let carry = std::mem::replace(&mut conv[k], FieldScalar::zero());
            conv[k - 7] = conv[k - 7].add(&carry);
        }
        let top = std::mem::replace(&mut conv[CYCLO_DEGREE], FieldScalar::zero());
        let mut coeffs = zero_coeffs();
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = conv[k].sub(&top);
        }
        Self { coeffs }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial `1 + x + ... + x^6` of `z`.
    fn inv_impl(&self) -> Result<Self> {
        let p = Poly::from_coeffs(self.coeffs.to_vec());
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Poly<Rational> = Poly::from_i64_coeffs(&[1, 1, 1, 1, 1, 1, 1]);
        // Track r = s * p (mod the minimal polynomial); stop when r is a unit.
        let mut r_prev = modulus.clone();
        let mut s_prev: Poly<Rational> = Poly::zero();
        let mut r_cur = p;
        let mut s_cur: Poly<Rational> = Poly::one();
        while r_cur.degree() > Some(0) {
            let (q, r_next) = r_prev.divrem(&r_cur)?;
            let s_next = s_prev.sub(&q.mul(&s_cur));
            r_prev = r_cur;
            s_prev = s_cur;
            r_cur = r_next;
            s_cur = s_next;
        }
        debug_assert_eq!(r_cur.degree(), Some(0), "minimal polynomial is irreducible");
        let unit_inv = r_cur.coeff(0).inv()?;
        let (_, reduced) = s_cur.scale(&unit_inv).divrem(&modulus)?;
        let mut coeffs = zero_coeffs();
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = reduced.coeff(k);
        }
        Ok(Self { coeffs })
    }
}

impl FieldScalar for CyclotomicElement {
    fn zero() -> Self {
        CyclotomicElement::zero()
    }
    fn one() -> Self {
        CyclotomicElement::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldScalar::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_impl(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_impl()
    }
    fn inv(&self) -> Result<Self> {
        self.inv_impl()
    }
    fn from_i64(value: i64) -> Self {
        CyclotomicElement::integer(value)
    }
}

impl std::fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if FieldScalar::is_zero(c) {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type C = CyclotomicElement;

    #[test]
    fn seventh_root_relations_hold() {
        let z = C::zeta();
        let mut pow = C::one();
        let mut sum = C::zero();
        for _ in 0..7 {
            sum = sum.add(&pow);
            pow = pow.mul(&z);
        }
        assert_eq!(pow, C::one(), "z^7 = 1");
        assert!(FieldScalar::is_zero(&sum), "1 + z + ... + z^6 = 0");
        assert_eq!(C::zeta_pow(6).mul(&z), C::one());
        assert_eq!(C::zeta_pow(-1), C::zeta_pow(6));
    }

    #[test]
    fn inverses_round_trip() {
        let samples = [
            C::zeta(),
            C::zeta_pow(4),
            C::one().add(&C::zeta()),
            C::from_i64_coeffs(&[3, -1, 0, 2, 0, -5]),
            C::from_coeffs([
                rat(1) / rat(2),
                rat(-2) / rat(3),
                rat(0),
                rat(7),
                rat(0),
                rat(1),
            ]),
        ];
        for a in samples {
            let b = a.inv().unwrap();
            assert_eq!(a.mul(&b), C::one(), "{a} times its inverse");
        }
        assert!(matches!(C::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn norm_of_one_minus_zeta_is_seven() {
        // The product of (1 - z^k) over k = 1..6 equals the value at 1 of the
        // minimal polynomial of z, namely 7.
        let mut product = C::one();
        for k in 1..7 {
            product = product.mul(&C::one().sub(&C::zeta_pow(k)));
        }
        assert_eq!(product, C::integer(7));
    }

    #[test]
    fn rational_detection() {
        assert_eq!(C::integer(5).as_rational(), Some(&rat(5)));
        assert!(C::integer(-2).is_rational_integer());
        assert!(C::zeta().as_rational().is_none());
        // z + z^6 = -1 - z^2 - z^3 - z^4 - z^5 + ... is not rational, but
        // z^3 * z^4 = 1 is.
        assert!(C::zeta_pow(3).mul(&C::zeta_pow(4)).is_rational_integer());
        let half = C::from_rational(rat(1) / rat(2));
        assert!(half.as_rational().is_some());
        assert!(!half.is_rational_integer());
    }

    #[test]
    fn division_via_field_trait() {
        let a = C::from_i64_coeffs(&[2, 0, 1, 0, 0, 0]);
        let b = C::from_i64_coeffs(&[0, 3, 0, 0, -1, 0]);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }
}
