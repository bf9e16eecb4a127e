use super::{FieldScalar, Matrix, Poly};
use crate::{Error, Result};

/// Characteristic polynomial det(xI − A), monic, by the Berkowitz method:
/// Samuelson's recurrence expands det(xI − A_m) in terms of the leading
/// principal (m−1)×(m−1) block, using only ring operations. Cubic cost per
/// expansion step; intended for moderate sizes and as an oracle elsewhere.
pub fn characteristic_polynomial<T: FieldScalar>(a: &Matrix<T>) -> Result<Poly<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    // Descending coefficients of det(xI − A_m); starts at the empty matrix.
    let mut c = vec![T::one()];
    for m in 1..=n {
        let diag = a.get(m - 1, m - 1);
        // s[i] = R · M^i · C for the bordering row R, column C and leading
        // block M of A_m.
        let mut s = Vec::with_capacity(m.saturating_sub(1));
        if m >= 2 {
            let mut t: Vec<T> = (0..m - 1).map(|i| a.get(i, m - 1).clone()).collect();
            for step in 0..m - 1 {
                let dot = (0..m - 1)
                    .map(|j| a.get(m - 1, j).mul(&t[j]))
                    .fold(T::zero(), |acc, v| acc.add(&v));
                s.push(dot);
                if step + 1 < m - 1 {
                    t = (0..m - 1)
                        .map(|i| {
                            (0..m - 1)
                                .map(|j| a.get(i, j).mul(&t[j]))
                                .fold(T::zero(), |acc, v| acc.add(&v))
                        })
                        .collect();
                }
            }
        }
        let mut d = vec![T::zero(); m + 1];
        for (j, cj) in c.iter().enumerate() {
            d[j] = d[j].add(cj);
            d[j + 1] = d[j + 1].sub(&diag.mul(cj));
        }
        for k in 0..m.saturating_sub(1) {
            let mut corr = T::zero();
            for j in 0..=k {
                corr = corr.add(&c[j].mul(&s[k - j]));
            }
            d[k + 2] = d[k + 2].sub(&corr);
        }
        c = d;
    }
    c.reverse();
    Ok(Poly::from_coeffs(c))
}

/// Minimal polynomial by an independent route, for cross-checking the
/// Krylov computation: m = charpoly / g where g is the monic gcd of the
/// entries of adj(xI − A). Each adjugate entry is a polynomial of degree
/// < n, recovered by evaluating det(tI − A)·(tI − A)⁻¹ at n interpolation
/// points t where tI − A is invertible, then interpolating.
pub fn minimal_polynomial_reference<T: FieldScalar>(a: &Matrix<T>) -> Result<Poly<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Poly::one());
    }
    let charpoly = characteristic_polynomial(a)?;
    if n == 1 {
        return Ok(charpoly);
    }

    // Collect n points avoiding the (at most n) eigenvalues of A.
    let mut points: Vec<T> = Vec::with_capacity(n);
    let mut adjugates: Vec<Matrix<T>> = Vec::with_capacity(n);
    let mut k: i64 = 0;
    while points.len() < n {
        let t = T::from_i64(k);
        k += 1;
        let det = charpoly.eval(&t);
        if det.is_zero() {
            continue;
        }
        let shifted = a.sub_scalar_identity(&t)?.scale(&T::from_i64(-1));
        let adj = shifted.inverse()?.scale(&det);
        points.push(t);
        adjugates.push(adj);
    }

    let basis = lagrange_basis(&points)?;
    let mut g: Poly<T> = Poly::zero();
    'entries: for i in 0..n {
        for j in 0..n {
            let values: Vec<T> = adjugates.iter().map(|m| m.get(i, j).clone()).collect();
            if values.iter().all(T::is_zero) {
                continue;
            }
            let entry = interpolate(&basis, &values);
            g = g.gcd(&entry);
            if g.degree() == Some(0) {
                break 'entries;
            }
        }
    }
    assert!(!g.is_zero(), "adjugate of xI - A cannot vanish identically");
    charpoly.div_exact(&g)?.monic()
}

struct LagrangeBasis<T> {
    // numerators[k] = Π_{l≠k} (x − t_l), scaled by 1/Π_{l≠k}(t_k − t_l)
    scaled: Vec<Poly<T>>,
}

fn lagrange_basis<T: FieldScalar>(points: &[T]) -> Result<LagrangeBasis<T>> {
    let mut master = Poly::one();
    for t in points {
        master = master.mul(&Poly::from_coeffs(vec![t.neg(), T::one()]));
    }
    let mut scaled = Vec::with_capacity(points.len());
    for t in points {
        let factor = Poly::from_coeffs(vec![t.neg(), T::one()]);
        let numerator = master.div_exact(&factor)?;
        let denom = numerator.eval(t);
        scaled.push(numerator.scale(&denom.inv()?));
    }
    Ok(LagrangeBasis { scaled })
}

fn interpolate<T: FieldScalar>(basis: &LagrangeBasis<T>, values: &[T]) -> Poly<T> {
    let mut out = Poly::zero();
    for (b, v) in basis.scaled.iter().zip(values) {
        if !v.is_zero() {
            out = out.add(&b.scale(v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{minimal_polynomial, rat, Rational};

    type P = Poly<Rational>;
    type M = Matrix<Rational>;

    #[test]
    fn charpoly_small_cases() {
        let empty: M = Matrix::zeros(0, 0);
        assert_eq!(characteristic_polynomial(&empty).unwrap(), P::one());

        let a = M::from_i64_rows(&[&[3]]);
        assert_eq!(
            characteristic_polynomial(&a).unwrap(),
            P::from_i64_coeffs(&[-3, 1])
        );

        let swap = M::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            characteristic_polynomial(&swap).unwrap(),
            P::from_i64_coeffs(&[-1, 0, 1])
        );

        // Companion matrix of x^3 - 2.
        let comp = M::from_i64_rows(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            characteristic_polynomial(&comp).unwrap(),
            P::from_i64_coeffs(&[-2, 0, 0, 1])
        );
    }

    #[test]
    fn charpoly_matches_determinant_shift() {
        // det(xI - A) evaluated at x = 5 equals det(5I - A).
        let a = M::from_i64_rows(&[&[1, 2, 0], &[0, 1, 7], &[3, 0, 2]]);
        let p = characteristic_polynomial(&a).unwrap();
        let shifted = a.sub_scalar_identity(&rat(5)).unwrap().scale(&rat(-1));
        assert_eq!(p.eval(&rat(5)), shifted.determinant().unwrap());
    }

    #[test]
    fn reference_minpoly_frozen_examples() {
        let zero: M = Matrix::zeros(5, 5);
        assert_eq!(
            minimal_polynomial_reference(&zero).unwrap(),
            P::from_i64_coeffs(&[0, 1])
        );

        let id: M = Matrix::identity(4);
        assert_eq!(
            minimal_polynomial_reference(&id).unwrap(),
            P::from_i64_coeffs(&[-1, 1])
        );

        let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            minimal_polynomial_reference(&j).unwrap(),
            P::from_i64_coeffs(&[1, -2, 1])
        );

        let diag = M::from_i64_rows(&[&[1, 0], &[0, 2]]);
        assert_eq!(
            minimal_polynomial_reference(&diag).unwrap(),
            P::from_i64_coeffs(&[2, -3, 1])
        );

        let comp = M::from_i64_rows(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            minimal_polynomial_reference(&comp).unwrap(),
            P::from_i64_coeffs(&[-2, 0, 0, 1])
        );
    }

    #[test]
    fn krylov_agrees_with_reference_battery() {
        let cases: Vec<M> = vec![
            Matrix::zeros(3, 3),
            Matrix::identity(3),
            M::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            M::from_i64_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]),
            M::from_i64_rows(&[&[0, 1], &[-1, 0]]),
            M::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            M::from_i64_rows(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0]]),
            M::from_i64_rows(&[&[5, 1, 0, 0], &[0, 5, 0, 0], &[0, 0, 5, 1], &[0, 0, 0, 5]]),
        ];
        for a in &cases {
            let fast = minimal_polynomial(a).unwrap();
            let slow = minimal_polynomial_reference(a).unwrap();
            assert_eq!(fast, slow, "disagreement on {a:?}");
            let charpoly = characteristic_polynomial(a).unwrap();
            assert!(fast.divides(&charpoly), "minpoly must divide charpoly");
        }
    }

    #[test]
    fn krylov_agrees_with_reference_on_seeded_random_matrices() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
        for trial in 0..24 {
            let n = 1 + (trial % 5);
            let mut m: M = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rat(rng.gen_range(-3..=3)));
                }
            }
            let fast = minimal_polynomial(&m).unwrap();
            let slow = minimal_polynomial_reference(&m).unwrap();
            assert_eq!(fast, slow, "disagreement on trial {trial}: {m:?}");
        }
    }
}
