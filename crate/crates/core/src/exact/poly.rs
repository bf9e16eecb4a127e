use super::FieldScalar;
use crate::{Error, Result};
use std::fmt;

/// Univariate polynomial with exact field coefficients, stored ascending
/// with no trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: FieldScalar> Poly<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(T::is_one)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(T::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(factor)).collect())
    }

    /// Quotient and remainder; `Err(ZeroPolynomial)` when dividing by zero.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dlead_inv = divisor.leading().expect("nonzero").inv()?;
        let ddeg = divisor.degree().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![T::zero(); qlen];
        for k in (0..qlen).rev() {
            let factor = rem[k + ddeg].mul(&dlead_inv);
            if factor.is_zero() {
                continue;
            }
            quot[k] = factor.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&factor.mul(d));
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lead.inv()?))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    /// Monic least common multiple.
    pub fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(rhs);
        self.mul(rhs)
            .div_exact(&g)
            .expect("gcd divides product")
            .monic()
            .expect("nonzero")
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul(&T::from_i64(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Whether the polynomial has no repeated roots over the algebraic
    /// closure: `gcd(p, p')` is constant. Errors on the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        if self.is_zero() {
            return rhs.is_zero();
        }
        rhs.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }
}

impl<T: FieldScalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            // A leading minus can move into the separator only when the
            // scalar rendered as a single term.
            let single_term = !text.contains(' ');
            let negative = single_term && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if !single_term {
                text = format!("({text})");
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = text == "1";
            match k {
                0 => write!(f, "{text}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{text}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{text}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: FieldScalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}
