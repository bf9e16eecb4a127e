//! The 3- and 9-dimensional representations that certify, by exact linear
//! algebra, that the 441-vertex vertex-primitive digraph has a
//! non-diagonalizable adjacency matrix.
//!
//! The order-21 group acts on a 3-dimensional space with basis `w^0, w^1,
//! w^2` by `(w^j)^phi(a^k b^l) = z^(k * 2^j) * w^(j - l)`, where `z` is a
//! primitive 7th root of unity and the exponent of `w` is read modulo 3.
//! Matrices act on row vectors, so `phi(xy) = phi(x) * phi(y)` with products
//! composed left to right. The 9-dimensional representation of the square of
//! the group is the Kronecker product of `phi` with itself composed with the
//! coordinate swap; summing it over the 160-element connection set gives a
//! 9 x 9 matrix whose Jordan structure is certified against frozen
//! change-of-basis data.

use crate::cyclo::fixtures::{block_reduction_fixture, phi_image_fixture, PhiImageFixture};
use crate::cyclo::pq::{connection_pieces, PqElement};
use crate::cyclo::CyclotomicElement;
use crate::exact::{FieldScalar, Matrix, Rational};
use crate::{Error, Result};

/// Powers of 2 modulo 7, indexed by the basis exponent `j`.
const POW2: [i64; 3] = [1, 2, 4];

/// The image of a single group element under the 3-dimensional
/// representation: one nonzero entry per row.
pub fn phi(g: &PqElement) -> Matrix<CyclotomicElement> {
    let mut out = Matrix::zeros(3, 3);
    let k = i64::from(g.exp_a());
    let l = g.exp_b() as usize;
    for (j, &power) in POW2.iter().enumerate() {
        let col = (j + 3 - l) % 3;
        out.set(j, col, CyclotomicElement::zeta_pow(k * power));
    }
    out
}

/// The entrywise sum of `phi` over a list of group elements.
pub fn phi_sum(elems: &[PqElement]) -> Matrix<CyclotomicElement> {
    let mut acc = Matrix::zeros(3, 3);
    for g in elems {
        acc = acc.add(&phi(g)).expect("3x3 shapes always agree");
    }
    acc
}

/// The computed images of the six connection-set pieces.
pub fn computed_piece_images() -> PhiImageFixture {
    let pieces = connection_pieces();
    PhiImageFixture {
        p1: phi_sum(&pieces.p1),
        p1_inv: phi_sum(&pieces.p1_inv),
        p2: phi_sum(&pieces.p2),
        p3: phi_sum(&pieces.p3),
        p3_inv: phi_sum(&pieces.p3_inv),
        p4: phi_sum(&pieces.p4),
    }
}

/// Compares two matrices entry by entry, reporting the first difference.
pub fn ensure_equal(
    context: &str,
    lhs: &Matrix<CyclotomicElement>,
    rhs: &Matrix<CyclotomicElement>,
) -> Result<()> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Err(Error::ShapeMismatch {
            lhs: format!("{}x{}", lhs.rows(), lhs.cols()),
            rhs: format!("{}x{}", rhs.rows(), rhs.cols()),
        });
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Err(Error::EntryMismatch {
                    context: context.to_owned(),
                    row: i,
                    col: j,
                    lhs: lhs.get(i, j).to_string(),
                    rhs: rhs.get(i, j).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Checks the computed piece images against the frozen fixture matrices.
pub fn verify_piece_images() -> Result<()> {
    let fixture = phi_image_fixture()?;
    let computed = computed_piece_images();
    ensure_equal("piece p1 image", &computed.p1, &fixture.p1)?;
    ensure_equal("piece p1_inv image", &computed.p1_inv, &fixture.p1_inv)?;
    ensure_equal("piece p2 image", &computed.p2, &fixture.p2)?;
    ensure_equal("piece p3 image", &computed.p3, &fixture.p3)?;
    ensure_equal("piece p3_inv image", &computed.p3_inv, &fixture.p3_inv)?;
    ensure_equal("piece p4 image", &computed.p4, &fixture.p4)?;
    Ok(())
}

/// The 9 x 9 image of the 160-element connection set under the
/// 9-dimensional representation: the sum of six Kronecker products pairing
/// each piece of the first coordinate with its partner in the second.
pub fn rho_connection_sum() -> Matrix<CyclotomicElement> {
    let im = computed_piece_images();
    let add = |a: &Matrix<CyclotomicElement>, b: &Matrix<CyclotomicElement>| {
        a.add(b).expect("3x3 shapes always agree")
    };
    let p11 = add(&im.p1, &im.p1_inv);
    let p33 = add(&im.p3, &im.p3_inv);
    let mut acc = p11.kronecker(&p33);
    for term in [
        p33.kronecker(&p11),
        im.p1.kronecker(&im.p2),
        im.p2.kronecker(&im.p1),
        im.p1_inv.kronecker(&im.p4),
        im.p4.kronecker(&im.p1_inv),
    ] {
        acc = acc.add(&term).expect("9x9 shapes always agree");
    }
    acc
}

/// Outcome of the exact block-decomposition check.
pub struct BlockReductionOutcome {
    /// The 9 x 9 connection-set image; every entry is integral in `z`.
    pub rho: Matrix<CyclotomicElement>,
    /// The four diagonal blocks (already divided by 2), as rational
    /// matrices of sizes 3, 2, 2, 2. The image is similar to their direct
    /// sum, and the third block is a scaled Jordan block, so the image is
    /// not diagonalizable.
    pub blocks: [Matrix<Rational>; 4],
    /// Determinant of the secondary basis change, verified nonzero.
    pub t3_determinant: CyclotomicElement,
}

fn rational_matrix(context: &str, m: &Matrix<CyclotomicElement>) -> Result<Matrix<Rational>> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let entry = m.get(i, j).as_rational().ok_or_else(|| {
                Error::Parse(format!("{context}: entry ({i},{j}) is not rational"))
            })?;
            row.push(entry.clone());
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows))
}

/// Verifies the full chain of exact identities behind the 9-dimensional
/// block decomposition:
///
/// 1. the stated inverses of the two 3 x 3 basis changes are inverses;
/// 2. conjugating the connection-set image by their Kronecker product and
///    then by the secondary basis change on the last six coordinates yields
///    exactly half the stated block-diagonal matrix;
/// 3. the secondary basis change is invertible, so the image is similar to
///    the block-diagonal matrix.
pub fn verify_block_reduction() -> Result<BlockReductionOutcome> {
    let fx = block_reduction_fixture()?;
    let id3: Matrix<CyclotomicElement> = Matrix::identity(3);
    ensure_equal("t1 * t1_inv", &fx.t1.mul(&fx.t1_inv)?, &id3)?;
    ensure_equal("t1_inv * t1", &fx.t1_inv.mul(&fx.t1)?, &id3)?;
    ensure_equal("t2 * t2_inv", &fx.t2.mul(&fx.t2_inv)?, &id3)?;
    ensure_equal("t2_inv * t2", &fx.t2_inv.mul(&fx.t2)?, &id3)?;

    let rho = rho_connection_sum();
    for i in 0..rho.rows() {
        for j in 0..rho.cols() {
            if !rho.get(i, j).is_integral() {
                return Err(Error::Parse(format!(
                    "connection-set image entry ({i},{j}) is not integral: {}",
                    rho.get(i, j)
                )));
            }
        }
    }

    let basis = fx.t1.kronecker(&fx.t2);
    let basis_inv = fx.t1_inv.kronecker(&fx.t2_inv);
    ensure_equal(
        "kronecker basis inverse",
        &basis.mul(&basis_inv)?,
        &Matrix::identity(9),
    )?;

    let conjugated = basis_inv.mul(&rho)?.mul(&basis)?;
    let outer = Matrix::block_diagonal(&[&id3, &fx.t3]);
    let half = CyclotomicElement::from_rational(Rational::new(1.into(), 2.into()));
    let target =
        Matrix::block_diagonal(&[&fx.half_a, &fx.half_b, &fx.half_c, &fx.half_d]).scale(&half);
    ensure_equal(
        "block reduction identity",
        &outer.mul(&conjugated)?,
        &target.mul(&outer)?,
    )?;

    let t3_determinant = fx.t3.determinant()?;
    if FieldScalar::is_zero(&t3_determinant) {
        return Err(Error::Singular);
    }

    let blocks = [
        rational_matrix("block a", &fx.half_a)?.scale(&Rational::new(1.into(), 2.into())),
        rational_matrix("block b", &fx.half_b)?.scale(&Rational::new(1.into(), 2.into())),
        rational_matrix("block c", &fx.half_c)?.scale(&Rational::new(1.into(), 2.into())),
        rational_matrix("block d", &fx.half_d)?.scale(&Rational::new(1.into(), 2.into())),
    ];
    Ok(BlockReductionOutcome {
        rho,
        blocks,
        t3_determinant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::pq;
    use crate::exact::{is_diagonalizable, minimal_polynomial, Poly};

    #[test]
    fn phi_is_multiplicative_on_all_pairs() {
        let elems = pq::all();
        let images: Vec<_> = elems.iter().map(phi).collect();
        assert_eq!(phi(&PqElement::identity()), Matrix::identity(3));
        for (x, mx) in elems.iter().zip(&images) {
            for (y, my) in elems.iter().zip(&images) {
                assert_eq!(phi(&x.mul(y)), mx.mul(my).unwrap());
            }
        }
    }

    #[test]
    fn phi_images_match_frozen_fixture() {
        verify_piece_images().unwrap();
    }

    #[test]
    fn connection_sum_is_integral_with_correct_augmentation() {
        let rho = rho_connection_sum();
        assert_eq!((rho.rows(), rho.cols()), (9, 9));
        for i in 0..9 {
            for j in 0..9 {
                assert!(rho.get(i, j).is_integral());
            }
        }
        // Sending z to 1 is only a ring map onto the integers modulo 7
        // (the power-basis reduction kills 1 + z + ... + z^6, which maps
        // to 7). Under that map each entry becomes a count of connection
        // elements, and each row must sum to 160 mod 7.
        let seven = num_bigint::BigInt::from(7);
        let at_one_mod_7 = |e: &CyclotomicElement| -> i64 {
            e.coefficients().iter().fold(0, |acc, c| {
                assert!(c.is_integer());
                let r: i64 = (c.numer() % &seven).try_into().expect("small residue");
                (acc + r).rem_euclid(7)
            })
        };
        for i in 0..9 {
            let mut row_sum = 0;
            for j in 0..9 {
                row_sum = (row_sum + at_one_mod_7(rho.get(i, j))) % 7;
            }
            assert_eq!(row_sum, 160 % 7, "row {i}");
        }
    }

    #[test]
    fn block_reduction_identity_holds() {
        let outcome = verify_block_reduction().unwrap();
        assert!(!FieldScalar::is_zero(&outcome.t3_determinant));
        let [a, b, c, d] = &outcome.blocks;
        assert!(is_diagonalizable(a).unwrap());
        assert!(is_diagonalizable(b).unwrap());
        assert!(
            !is_diagonalizable(c).unwrap(),
            "third block is a Jordan cell"
        );
        assert!(is_diagonalizable(d).unwrap());
    }

    #[test]
    fn connection_sum_minimal_polynomial_is_frozen_and_not_squarefree() {
        let rho = rho_connection_sum();
        let min = minimal_polynomial(&rho).unwrap();
        // Hand-expanded least common multiple of the block minimal
        // polynomials (x+8)^2, x-4, and x^2-10x-25:
        // x^5 + 2x^4 - 145x^3 - 556x^2 + 2560x + 6400.
        let expected: Poly<CyclotomicElement> =
            Poly::from_i64_coeffs(&[6400, 2560, -556, -145, 2, 1]);
        assert_eq!(min, expected);
        assert!(!min.is_squarefree().unwrap());
        // All coefficients are rational even though the matrix is not.
        assert!(min.coeffs().iter().all(|c| c.as_rational().is_some()));
    }
}
