//! Frozen matrix fixtures over the cyclotomic field, stored as JSON files
//! with human-readable entries.
//!
//! Entries are expressions in `z`, a primitive 7th root of unity: integer
//! literals, `z`, previously defined constant names, `+`, `-`, `*`, `^` and
//! parentheses. Each matrix carries a rational `scale` applied to every
//! entry, so `1/14` prefactors stay exact.

use std::collections::BTreeMap;

use crate::cyclo::CyclotomicElement;
use crate::exact::{FieldScalar, Matrix, Rational};
use crate::{Error, Result};

const PHI_IMAGES_JSON: &str = include_str!("../../fixtures/phi_images.json");
const BLOCK_REDUCTION_JSON: &str = include_str!("../../fixtures/block_reduction.json");

#[derive(serde::Deserialize)]
struct FixtureFile {
    #[allow(dead_code)]
    format: String,
    constants: Vec<(String, String)>,
    matrices: BTreeMap<String, MatrixSpec>,
}

#[derive(serde::Deserialize)]
struct MatrixSpec {
    scale: String,
    entries: Vec<Vec<String>>,
}

/// Evaluates an entry expression in the environment of named constants.
pub fn parse_cyclo_expr(
    text: &str,
    env: &BTreeMap<String, CyclotomicElement>,
) -> Result<CyclotomicElement> {
    let mut parser = ExprParser {
        bytes: text.as_bytes(),
        pos: 0,
        env,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    env: &'a BTreeMap<String, CyclotomicElement>,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse(format!(
            "{message} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.bytes)
        ))
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CyclotomicElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CyclotomicElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CyclotomicElement> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exponent = self.unsigned_int()?;
            let mut acc = CyclotomicElement::one();
            for _ in 0..exponent {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<CyclotomicElement> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected closing parenthesis"));
                }
                self.pos += 1;
                Ok(value)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.unsigned_int()?;
                Ok(CyclotomicElement::from_rational(Rational::from_integer(
                    value.into(),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("identifier bytes are ASCII");
                if name == "z" {
                    return Ok(CyclotomicElement::zeta());
                }
                self.env
                    .get(name)
                    .cloned()
                    .ok_or_else(|| self.error(&format!("unknown constant {name:?}")))
            }
            _ => Err(self.error("expected integer, name, or parenthesized expression")),
        }
    }

    fn unsigned_int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digit bytes are ASCII")
            .parse()
            .map_err(|e| self.error(&format!("integer literal out of range: {e}")))
    }
}

fn load_fixture(json: &str) -> Result<BTreeMap<String, Matrix<CyclotomicElement>>> {
    let file: FixtureFile = serde_json::from_str(json)?;
    let mut env = BTreeMap::new();
    for (name, expr) in &file.constants {
        let value = parse_cyclo_expr(expr, &env)?;
        env.insert(name.clone(), value);
    }
    let mut matrices = BTreeMap::new();
    for (name, spec) in &file.matrices {
        let scale: Rational = spec
            .scale
            .parse()
            .map_err(|e| Error::Parse(format!("bad scale {:?} for {name}: {e}", spec.scale)))?;
        let scale = CyclotomicElement::from_rational(scale);
        let rows = spec
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| Ok(parse_cyclo_expr(entry, &env)?.mul(&scale)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        matrices.insert(name.clone(), Matrix::from_rows(rows));
    }
    Ok(matrices)
}

fn take(
    matrices: &mut BTreeMap<String, Matrix<CyclotomicElement>>,
    name: &str,
) -> Result<Matrix<CyclotomicElement>> {
    matrices
        .remove(name)
        .ok_or_else(|| Error::Parse(format!("fixture is missing matrix {name:?}")))
}

/// The frozen images of the six connection-set pieces under the
/// 3-dimensional representation.
#[derive(Clone, Debug)]
pub struct PhiImageFixture {
    pub p1: Matrix<CyclotomicElement>,
    pub p1_inv: Matrix<CyclotomicElement>,
    pub p2: Matrix<CyclotomicElement>,
    pub p3: Matrix<CyclotomicElement>,
    pub p3_inv: Matrix<CyclotomicElement>,
    pub p4: Matrix<CyclotomicElement>,
}

/// Loads the frozen 3-dimensional representation images.
pub fn phi_image_fixture() -> Result<PhiImageFixture> {
    let mut m = load_fixture(PHI_IMAGES_JSON)?;
    Ok(PhiImageFixture {
        p1: take(&mut m, "p1")?,
        p1_inv: take(&mut m, "p1_inv")?,
        p2: take(&mut m, "p2")?,
        p3: take(&mut m, "p3")?,
        p3_inv: take(&mut m, "p3_inv")?,
        p4: take(&mut m, "p4")?,
    })
}

/// Change-of-basis matrices and target blocks for the 9-dimensional
/// block decomposition.
#[derive(Clone, Debug)]
pub struct BlockReductionFixture {
    /// Basis change on the first tensor factor (includes its 1/14 prefactor).
    pub t1: Matrix<CyclotomicElement>,
    /// Basis change on the second tensor factor (includes its 1/14 prefactor).
    pub t2: Matrix<CyclotomicElement>,
    /// Stated inverse of `t1`.
    pub t1_inv: Matrix<CyclotomicElement>,
    /// Stated inverse of `t2`.
    pub t2_inv: Matrix<CyclotomicElement>,
    /// Secondary basis change on the last six coordinates.
    pub t3: Matrix<CyclotomicElement>,
    /// Twice the final diagonal blocks, sizes 3, 2, 2, 2.
    pub half_a: Matrix<CyclotomicElement>,
    pub half_b: Matrix<CyclotomicElement>,
    pub half_c: Matrix<CyclotomicElement>,
    pub half_d: Matrix<CyclotomicElement>,
}

/// Loads the frozen block-decomposition data.
pub fn block_reduction_fixture() -> Result<BlockReductionFixture> {
    let mut m = load_fixture(BLOCK_REDUCTION_JSON)?;
    Ok(BlockReductionFixture {
        t1: take(&mut m, "t1")?,
        t2: take(&mut m, "t2")?,
        t1_inv: take(&mut m, "t1_inv")?,
        t2_inv: take(&mut m, "t2_inv")?,
        t3: take(&mut m, "t3")?,
        half_a: take(&mut m, "half_a")?,
        half_b: take(&mut m, "half_b")?,
        half_c: take(&mut m, "half_c")?,
        half_d: take(&mut m, "half_d")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type C = CyclotomicElement;

    #[test]
    fn expressions_evaluate_exactly() {
        let mut env = BTreeMap::new();
        let empty = env.clone();
        assert_eq!(
            parse_cyclo_expr("z^6+z^2", &empty).unwrap(),
            C::zeta_pow(6).add(&C::zeta_pow(2))
        );
        assert_eq!(
            parse_cyclo_expr(" -3 * ( 2 - z ) ", &empty).unwrap(),
            C::integer(-6).add(&C::zeta().mul(&C::integer(3)))
        );
        // x3 = z^5 + 2 z^4 + 4 z^3 + 2 z^2 + z, so -2*(2*x3 - 7*z^3) has
        // coefficient vector (0, -4, -8, -2, -8, -4).
        env.insert("x3".to_owned(), C::from_i64_coeffs(&[0, 1, 2, 4, 2, 1]));
        assert_eq!(
            parse_cyclo_expr("-2*(2*x3-7*z^3)", &env).unwrap(),
            C::from_i64_coeffs(&[0, -4, -8, -2, -8, -4])
        );
    }

    #[test]
    fn malformed_expressions_are_rejected() {
        let env = BTreeMap::new();
        for bad in ["z^", "(z", "z q", "2 +", "w", "99999999999999999999"] {
            assert!(
                matches!(parse_cyclo_expr(bad, &env), Err(Error::Parse(_))),
                "{bad:?} should fail to parse"
            );
        }
    }

    #[test]
    fn phi_fixture_loads_with_expected_shapes() {
        let fx = phi_image_fixture().unwrap();
        for m in [&fx.p1, &fx.p1_inv, &fx.p2, &fx.p3, &fx.p3_inv, &fx.p4] {
            assert_eq!((m.rows(), m.cols()), (3, 3));
        }
        assert_eq!(*fx.p2.get(0, 0), C::zero());
        assert_eq!(*fx.p1.get(0, 1), C::zeta_pow(6));
    }

    #[test]
    fn block_fixture_loads_with_expected_shapes() {
        let fx = block_reduction_fixture().unwrap();
        assert_eq!((fx.t1.rows(), fx.t1.cols()), (3, 3));
        assert_eq!((fx.t3.rows(), fx.t3.cols()), (6, 6));
        assert_eq!((fx.half_a.rows(), fx.half_a.cols()), (3, 3));
        for m in [&fx.half_b, &fx.half_c, &fx.half_d] {
            assert_eq!((m.rows(), m.cols()), (2, 2));
        }
        // The 1/14 prefactor is already applied.
        assert_eq!(*fx.t1.get(0, 0), C::from_rational(rat(1) / rat(14)));
        // The target blocks are plain integer matrices.
        assert_eq!(*fx.half_c.get(0, 1), C::integer(24));
    }
}
