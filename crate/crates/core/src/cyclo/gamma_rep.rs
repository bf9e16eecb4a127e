//! Closed-form matrix representations of the vertex groups of the 2-valent
//! s-arc-transitive family, used to certify non-diagonalizability without
//! touching the full adjacency matrix.
//!
//! The vertex group of the rank-`s` member is generated by an involution `a`
//! and an element `b` of order `2s`; the conjugates `a_k = b^-k a b^k` for
//! `k = 1..s` commute pairwise, and every element has the word form
//! `a_1^(e_1) ... a_s^(e_s) b^m`. Words multiply by
//! `eps'_k = eps_k + theta_(k+m)` (indices of `theta` mod `s`, exponents mod
//! 2) and `m' = m + n`.
//!
//! The exponent `m` is deliberately kept unreduced: the closed matrix
//! formulas below are multiplicative on words with added exponents. For odd
//! `s` the map also descends to the group itself, but for `s` congruent to 2
//! modulo 4 the two word forms of the same group element `b^(2s) =
//! a_1 a_2 ... a_s` receive matrices differing by sign, so on the group the
//! map is only projective. That is harmless here: multiplicativity on words,
//! the identity image, and the image of the connection set are what feed the
//! spectral argument, and the digraph-level conclusion is additionally
//! checked directly on adjacency matrices elsewhere in the crate.

use crate::exact::{FieldScalar, Matrix, Rational};

/// A word `a_1^(e_1) ... a_s^(e_s) b^m` over the rank-`s` vertex group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalWord {
    eps: Vec<u8>,
    m: u64,
}

impl NormalWord {
    /// Builds a word, reducing involution exponents modulo 2. The power of
    /// `b` is kept as given.
    pub fn new(eps: Vec<u8>, m: u64) -> Self {
        let eps = eps.into_iter().map(|e| e % 2).collect();
        Self { eps, m }
    }

    /// The empty word for rank `s`.
    pub fn identity(s: usize) -> Self {
        Self::new(vec![0; s], 0)
    }

    /// The word form of the connection element `ab`: since `a = a_s`, it is
    /// `a_s b`.
    pub fn word_ab(s: usize) -> Self {
        let mut eps = vec![0; s];
        eps[s - 1] = 1;
        Self::new(eps, 1)
    }

    /// The word form of the connection element `b`.
    pub fn word_b(s: usize) -> Self {
        Self::new(vec![0; s], 1)
    }

    /// Rank of the underlying group.
    pub fn rank(&self) -> usize {
        self.eps.len()
    }

    /// Involution exponents.
    pub fn eps(&self) -> &[u8] {
        &self.eps
    }

    /// Power of `b`, never reduced.
    pub fn power_of_b(&self) -> u64 {
        self.m
    }

    /// The product `self * rhs`, composed left to right: conjugating the
    /// right factor's involutions past `b^m` shifts their indices by `m`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let s = self.eps.len();
        assert_eq!(s, rhs.eps.len(), "ranks must agree");
        let shift = (self.m % s as u64) as usize;
        let eps = (0..s)
            .map(|k| (self.eps[k] + rhs.eps[(k + shift) % s]) % 2)
            .collect();
        Self {
            eps,
            m: self.m + rhs.m,
        }
    }

    /// The closed-form matrix image of the word: dimension `s` for odd
    /// rank, dimension 2 for even rank.
    pub fn rho(&self) -> Matrix<Rational> {
        let s = self.eps.len();
        assert!(s >= 2, "rank must be at least 2");
        if s % 2 == 1 {
            self.rho_odd()
        } else {
            self.rho_even()
        }
    }

    /// Odd rank: basis vector `i` maps to `sign * e_(i + m(s-1)/2)` with
    /// subscripts mod `s` and `sign = (-1)^(eps_(2-2i) + sum of eps)`.
    fn rho_odd(&self) -> Matrix<Rational> {
        let s = self.eps.len();
        let idx0 = |t: i64| -> usize { (t - 1).rem_euclid(s as i64) as usize };
        let total: u8 = self.eps.iter().sum::<u8>() % 2;
        let shift = ((self.m % s as u64) as usize) * ((s - 1) / 2);
        let mut out = Matrix::zeros(s, s);
        for i in 1..=s as i64 {
            let parity = (self.eps[idx0(2 - 2 * i)] + total) % 2;
            let sign: Rational = FieldScalar::from_i64(if parity == 0 { 1 } else { -1 });
            out.set(idx0(i), (idx0(i) + shift) % s, sign);
        }
        out
    }

    /// Even rank: a 2 x 2 image. Writing `ov(t)` for `t mod 2` and
    /// `d_i = eps_i + eps_(i+2) + ... + eps_(i+s-2)`, basis vector `i` maps
    /// to `(-1)^(d_i) * (ov(m+i) e_1 + ov(m+i+1) e_2)`.
    fn rho_even(&self) -> Matrix<Rational> {
        let s = self.eps.len();
        let mut out = Matrix::zeros(2, 2);
        for i in 1..=2u64 {
            let mut delta = 0u8;
            for k in 0..s / 2 {
                delta = (delta + self.eps[2 * k + i as usize - 1]) % 2;
            }
            let sign: i64 = if delta == 0 { 1 } else { -1 };
            let row = (i - 1) as usize;
            out.set(
                row,
                0,
                FieldScalar::from_i64(sign * ((self.m + i) % 2) as i64),
            );
            out.set(
                row,
                1,
                FieldScalar::from_i64(sign * ((self.m + i + 1) % 2) as i64),
            );
        }
        out
    }
}

/// Dimension of the closed-form representation for rank `s`.
pub fn rep_dimension(s: usize) -> usize {
    if s % 2 == 1 {
        s
    } else {
        2
    }
}

/// The representation image of the two-element connection set, i.e.
/// `rho(ab) + rho(b)`.
pub fn connection_sum(s: usize) -> Matrix<Rational> {
    let ab = NormalWord::word_ab(s).rho();
    let b = NormalWord::word_b(s).rho();
    ab.add(&b).expect("equal dimensions")
}

/// The expected value of [`connection_sum`]: twice a matrix unit. For odd
/// `s` it is `2 E_(1,(s+1)/2)`; for even `s` it is `2 E_(1,2)`.
pub fn expected_connection_sum(s: usize) -> Matrix<Rational> {
    let dim = rep_dimension(s);
    let mut out = Matrix::zeros(dim, dim);
    let col = if s % 2 == 1 { s.div_ceil(2) - 1 } else { 1 };
    out.set(0, col, FieldScalar::from_i64(2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::is_diagonalizable;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_word(rng: &mut StdRng, s: usize) -> NormalWord {
        let eps = (0..s).map(|_| rng.gen_range(0..2u8)).collect();
        NormalWord::new(eps, rng.gen_range(0..4 * s as u64))
    }

    #[test]
    fn identity_word_maps_to_identity() {
        for s in 2..=9 {
            assert_eq!(
                NormalWord::identity(s).rho(),
                Matrix::identity(rep_dimension(s)),
                "rank {s}"
            );
        }
    }

    #[test]
    fn rho_is_multiplicative_on_words() {
        let mut rng = StdRng::seed_from_u64(0x00c1_0de5);
        for s in 2..=9 {
            for _ in 0..60 {
                let x = random_word(&mut rng, s);
                let y = random_word(&mut rng, s);
                assert_eq!(
                    x.mul(&y).rho(),
                    x.rho().mul(&y.rho()).unwrap(),
                    "rank {s}: rho({x:?} * {y:?})"
                );
            }
        }
    }

    #[test]
    fn word_multiplication_is_associative() {
        let mut rng = StdRng::seed_from_u64(0x0a55_0c1a);
        for s in 2..=7 {
            for _ in 0..40 {
                let x = random_word(&mut rng, s);
                let y = random_word(&mut rng, s);
                let z = random_word(&mut rng, s);
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            }
        }
    }

    #[test]
    fn connection_sum_is_twice_a_matrix_unit_and_nilpotent() {
        for s in 2..=9 {
            let sum = connection_sum(s);
            assert_eq!(sum, expected_connection_sum(s), "rank {s}");
            assert!(!sum.is_zero());
            let square = sum.mul(&sum).unwrap();
            assert!(square.is_zero(), "rank {s}: the sum squares to zero");
            assert!(!is_diagonalizable(&sum).unwrap(), "rank {s}");
        }
    }

    #[test]
    fn odd_rank_words_reduce_consistently_on_the_group() {
        // For odd rank the closed form descends from words to the group:
        // b^(2s) and a_1 a_2 ... a_s are the same group element, and their
        // word images agree.
        for s in [3usize, 5, 7] {
            let b_to_2s = NormalWord::new(vec![0; s], 2 * s as u64);
            let all_involutions = NormalWord::new(vec![1; s], 0);
            assert_eq!(b_to_2s.rho(), all_involutions.rho(), "rank {s}");
            assert_eq!(b_to_2s.rho(), Matrix::identity(s));
        }
    }

    #[test]
    fn even_rank_sign_ambiguity_is_confined_to_a_global_sign() {
        // For rank 2 mod 4 the two word forms of b^(2s) differ by -1; for
        // rank 0 mod 4 they agree. Either way the off-diagonal structure
        // matches, which is all the spectral argument uses.
        for s in [2usize, 4, 6, 8] {
            let b_to_2s = NormalWord::new(vec![0; s], 2 * s as u64);
            let all_involutions = NormalWord::new(vec![1; s], 0);
            let lhs = b_to_2s.rho();
            let rhs = all_involutions.rho();
            let expected_sign: i64 = if (s / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                lhs,
                rhs.scale(&FieldScalar::from_i64(expected_sign)),
                "rank {s}"
            );
        }
    }
}
