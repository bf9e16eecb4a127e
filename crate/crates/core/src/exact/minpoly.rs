use super::{FieldScalar, Matrix, Poly};
use crate::{Error, Result};
use rayon::prelude::*;

/// Nonzero entries of each row, for repeated matrix-vector products.
struct SparseRows<T> {
    n: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: FieldScalar> SparseRows<T> {
    fn new(a: &Matrix<T>) -> Self {
        let n = a.rows();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|j| {
                        let v = a.get(i, j);
                        (!v.is_zero()).then(|| (j, v.clone()))
                    })
                    .collect()
            })
            .collect();
        Self { n, rows }
    }

    fn apply(&self, v: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (j, coef) in row {
                    if v[*j].is_zero() {
                        continue;
                    }
                    if coef.is_one() {
                        acc = acc.add(&v[*j]);
                    } else {
                        acc = acc.add(&coef.mul(&v[*j]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Row echelon basis kept in insertion order: every row has zeros at the
/// pivots of all earlier rows, so reducing in insertion order never
/// reintroduces a cleared coordinate.
struct Echelon<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: FieldScalar> Echelon<T> {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        for (pivot, row) in &self.rows {
            let factor = v[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
        }
        v
    }

    /// Reduces and inserts if independent; returns whether the dimension grew.
    fn insert(&mut self, v: Vec<T>) -> Result<bool> {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            None => Ok(false),
            Some(pivot) => {
                let inv = v[pivot].inv()?;
                let row = v.iter().map(|x| x.mul(&inv)).collect();
                self.rows.push((pivot, row));
                Ok(true)
            }
        }
    }
}

/// Echelon basis of one Krylov chain w_0, w_1 = Aw_0, ... that also tracks,
/// for each stored row, its expression in terms of the chain vectors. When a
/// chain vector reduces to zero the tracked combination is a monic
/// annihilator of the seed.
struct TrackedEchelon<T> {
    rows: Vec<(usize, Vec<T>, Vec<T>)>,
}

enum Offer<T> {
    Inserted,
    Dependent(Vec<T>),
}

impl<T: FieldScalar> TrackedEchelon<T> {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Presents w_k (`index` = k). The tracked combination starts as the
    /// unit vector at position k and follows every reduction step.
    fn offer(&mut self, v: &[T], index: usize) -> Result<Offer<T>> {
        let mut v = v.to_vec();
        let mut combo = vec![T::zero(); index + 1];
        combo[index] = T::one();
        for (pivot, row, row_combo) in &self.rows {
            let factor = v[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
            for (c, rc) in combo.iter_mut().zip(row_combo) {
                if !rc.is_zero() {
                    *c = c.sub(&factor.mul(rc));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Ok(Offer::Dependent(combo)),
            Some(pivot) => {
                let inv = v[pivot].inv()?;
                let row = v.iter().map(|x| x.mul(&inv)).collect();
                let row_combo = combo.iter().map(|x| x.mul(&inv)).collect();
                self.rows.push((pivot, row, row_combo));
                Ok(Offer::Inserted)
            }
        }
    }
}

fn unit_vector<T: FieldScalar>(n: usize, j: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[j] = T::one();
    v
}

/// m(A)·e_j by Horner evaluation with sparse matrix-vector products.
fn evaluate_on_basis_vector<T: FieldScalar>(
    sparse: &SparseRows<T>,
    m: &Poly<T>,
    j: usize,
) -> Vec<T> {
    let mut acc = vec![T::zero(); sparse.n];
    for c in m.coeffs().iter().rev() {
        acc = sparse.apply(&acc);
        if !c.is_zero() {
            acc[j] = acc[j].add(c);
        }
    }
    acc
}

/// Monic minimal polynomial of a square matrix.
///
/// Walks Krylov chains e_j, Ae_j, A²e_j, ... seed by seed, extracting the
/// least monic annihilator of each seed and folding them together with lcm.
/// All chain vectors accumulate in one echelon basis of an A-stable
/// subspace; a seed already inside that subspace is annihilated by the
/// current candidate and is skipped, and once the subspace is the full
/// space the remaining seeds are skipped wholesale. The result is checked
/// explicitly: m(A)·e_j = 0 for every j, evaluated in parallel.
pub fn minimal_polynomial<T>(a: &Matrix<T>) -> Result<Poly<T>>
where
    T: FieldScalar + Send + Sync,
{
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
    let sparse = SparseRows::new(a);
    let mut candidate: Poly<T> = Poly::one();
    let mut space = Echelon::new();

    for seed in 0..n {
        if space.dim() == n {
            break;
        }
        let e = unit_vector(n, seed);
        if space.reduce(e.clone()).iter().all(T::is_zero) {
            continue;
        }
        let mut local = TrackedEchelon::new();
        let mut chain: Vec<Vec<T>> = vec![e];
        let annihilator = loop {
            let index = chain.len() - 1;
            match local.offer(chain.last().expect("nonempty"), index)? {
                Offer::Dependent(combo) => break Poly::from_coeffs(combo).monic()?,
                Offer::Inserted => {
                    let next = sparse.apply(chain.last().expect("nonempty"));
                    chain.push(next);
                }
            }
        };
        candidate = candidate.lcm(&annihilator);
        let keep = chain.len() - 1;
        for w in chain.into_iter().take(keep) {
            space.insert(w)?;
        }
    }

    let all_killed = (0..n).into_par_iter().all(|j| {
        evaluate_on_basis_vector(&sparse, &candidate, j)
            .iter()
            .all(T::is_zero)
    });
    assert!(
        all_killed,
        "candidate polynomial fails to annihilate the matrix"
    );
    Ok(candidate)
}

/// Whether the matrix is diagonalizable over the algebraic closure:
/// equivalent to its minimal polynomial being squarefree.
pub fn is_diagonalizable<T>(a: &Matrix<T>) -> Result<bool>
where
    T: FieldScalar + Send + Sync,
{
    minimal_polynomial(a)?.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};

    type P = Poly<Rational>;
    type M = Matrix<Rational>;

    #[test]
    fn frozen_small_cases() {
        let zero: M = Matrix::zeros(5, 5);
        assert_eq!(
            minimal_polynomial(&zero).unwrap(),
            P::from_i64_coeffs(&[0, 1])
        );

        let id: M = Matrix::identity(6);
        assert_eq!(
            minimal_polynomial(&id).unwrap(),
            P::from_i64_coeffs(&[-1, 1])
        );

        let empty: M = Matrix::zeros(0, 0);
        assert_eq!(minimal_polynomial(&empty).unwrap(), P::one());

        let nilpotent = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            minimal_polynomial(&nilpotent).unwrap(),
            P::from_i64_coeffs(&[0, 0, 1])
        );

        let proj = M::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            minimal_polynomial(&proj).unwrap(),
            P::from_i64_coeffs(&[0, -1, 1])
        );
    }

    #[test]
    fn rejects_non_square() {
        let rect: M = Matrix::zeros(2, 3);
        assert!(matches!(
            minimal_polynomial(&rect),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn directed_cycle_is_diagonalizable() {
        // x^n - 1 has distinct complex roots.
        let n = 7;
        let mut cyc: M = Matrix::zeros(n, n);
        for i in 0..n {
            cyc.set(i, (i + 1) % n, rat(1));
        }
        let m = minimal_polynomial(&cyc).unwrap();
        let mut expected = vec![0i64; n + 1];
        expected[0] = -1;
        expected[n] = 1;
        assert_eq!(m, P::from_i64_coeffs(&expected));
        assert!(is_diagonalizable(&cyc).unwrap());
    }

    #[test]
    fn nilpotent_blocks_are_not_diagonalizable() {
        let j2 = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert!(!is_diagonalizable(&j2).unwrap());
        let shifted = M::from_i64_rows(&[&[3, 1], &[0, 3]]);
        assert!(!is_diagonalizable(&shifted).unwrap());
        let diag = M::from_i64_rows(&[&[3, 0], &[0, 4]]);
        assert!(is_diagonalizable(&diag).unwrap());
    }

    #[test]
    fn minpoly_can_have_smaller_degree_than_size() {
        // Two identical companion blocks: minpoly is one block's worth.
        let comp = M::from_i64_rows(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, 1, 0]]);
        assert_eq!(
            minimal_polynomial(&comp).unwrap(),
            P::from_i64_coeffs(&[-2, 0, 1])
        );
    }

    #[test]
    fn annihilation_holds_for_dense_rational_entries() {
        let a = M::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), rat(3)],
            vec![rat(-2), Rational::new(5.into(), 7.into())],
        ]);
        let m = minimal_polynomial(&a).unwrap();
        assert_eq!(m.degree(), Some(2));
        // Evaluate m(A) densely and confirm it vanishes.
        let n = 2;
        let mut acc: M = Matrix::zeros(n, n);
        for c in m.coeffs().iter().rev() {
            acc = acc.mul(&a).unwrap();
            for i in 0..n {
                acc.set(i, i, acc.get(i, i).clone() + c.clone());
            }
        }
        assert!(acc.is_zero());
    }
}
