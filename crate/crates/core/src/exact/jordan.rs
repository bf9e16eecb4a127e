use super::{FieldScalar, Matrix};

/// Tag for the eigenvalue of a Jordan block arising from a tensor product
/// J(α,s) ⊗ J(β,t): either 0 or the nonzero product αβ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EigenClass {
    Zero,
    NonzeroProduct,
}

/// Predicted Jordan block multiset of J(α,s) ⊗ J(β,t), together with the
/// parameters it was derived from. Block sizes always sum to s·t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanSpec {
    pub s: usize,
    pub t: usize,
    pub alpha_zero: bool,
    pub beta_zero: bool,
    blocks: Vec<(EigenClass, usize)>,
}

impl JordanSpec {
    fn new(
        s: usize,
        t: usize,
        alpha_zero: bool,
        beta_zero: bool,
        mut blocks: Vec<(EigenClass, usize)>,
    ) -> Self {
        blocks.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let total: usize = blocks.iter().map(|&(_, k)| k).sum();
        assert_eq!(total, s * t, "block sizes must sum to s*t");
        Self {
            s,
            t,
            alpha_zero,
            beta_zero,
            blocks,
        }
    }

    /// Blocks as (eigenvalue tag, size), sorted by decreasing size.
    pub fn blocks(&self) -> &[(EigenClass, usize)] {
        &self.blocks
    }

    /// Sizes of the blocks carrying the given eigenvalue tag, decreasing.
    pub fn sizes_at(&self, class: EigenClass) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|&&(c, _)| c == class)
            .map(|&(_, k)| k)
            .collect()
    }

    /// True when some block has size at least 2, i.e. the product matrix
    /// is not diagonalizable.
    pub fn has_nontrivial_block(&self) -> bool {
        self.blocks.iter().any(|&(_, k)| k >= 2)
    }
}

/// Jordan structure of J(α,s) ⊗ J(β,t), split into the four cases by
/// whether α and β vanish:
///
/// * α = β = 0: J(0, min)^⊕(|s−t|+1) ⊕ ⊕_{k=1}^{min−1} J(0,k)^⊕2
/// * α = 0 ≠ β: J(0, s)^⊕t
/// * α ≠ 0 = β: J(0, t)^⊕s
/// * αβ ≠ 0:    ⊕_{k=1}^{min} J(αβ, s+t+1−2k)
pub fn jordan_tensor_spec(alpha_zero: bool, beta_zero: bool, s: usize, t: usize) -> JordanSpec {
    assert!(s >= 1 && t >= 1, "block sizes must be positive");
    let min = s.min(t);
    let mut blocks = Vec::new();
    match (alpha_zero, beta_zero) {
        (true, true) => {
            let diff = s.abs_diff(t);
            for _ in 0..=diff {
                blocks.push((EigenClass::Zero, min));
            }
            for k in 1..min {
                blocks.push((EigenClass::Zero, k));
                blocks.push((EigenClass::Zero, k));
            }
        }
        (true, false) => {
            for _ in 0..t {
                blocks.push((EigenClass::Zero, s));
            }
        }
        (false, true) => {
            for _ in 0..s {
                blocks.push((EigenClass::Zero, t));
            }
        }
        (false, false) => {
            for k in 1..=min {
                blocks.push((EigenClass::NonzeroProduct, s + t + 1 - 2 * k));
            }
        }
    }
    JordanSpec::new(s, t, alpha_zero, beta_zero, blocks)
}

/// The size×size upper Jordan block J(λ, size).
pub fn jordan_block<T: FieldScalar>(lambda: &T, size: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(size, size);
    for i in 0..size {
        m.set(i, i, lambda.clone());
        if i + 1 < size {
            m.set(i, i + 1, T::one());
        }
    }
    m
}

/// Jordan block sizes of `a` at eigenvalue `lambda`, decreasing, recovered
/// from the rank sequence r_k = rank((A − λI)^k): the number of blocks of
/// size exactly k is r_{k−1} − 2·r_k + r_{k+1}.
pub fn jordan_structure<T: FieldScalar>(a: &Matrix<T>, lambda: &T) -> Vec<usize> {
    assert!(a.is_square(), "square matrix required");
    let n = a.rows();
    let shifted = a.sub_scalar_identity(lambda).expect("square matrix");
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    while *ranks.last().expect("nonempty") > 0 {
        power = power.mul(&shifted).expect("square shapes agree");
        let r = power.rank();
        if r == *ranks.last().expect("nonempty") {
            break;
        }
        ranks.push(r);
    }
    // Pad so r_{k+1} is defined for the largest block size.
    let stable = *ranks.last().expect("nonempty");
    ranks.push(stable);
    ranks.push(stable);
    let mut sizes = Vec::new();
    for k in 1..ranks.len() - 1 {
        let count = (ranks[k - 1] + ranks[k + 1]).saturating_sub(2 * ranks[k]);
        for _ in 0..count {
            sizes.push(k);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
