//! The nonabelian group of order 21 written multiplicatively on two
//! generators: `a` of order 7 and `b` of order 3 with `b^-1 a b = a^2`.
//!
//! Every element has the normal form `a^k b^l` with `k` modulo 7 and `l`
//! modulo 3. Products compose left to right, matching
//! [`Permutation::compose`](crate::perm::Permutation::compose):
//! `(a^k1 b^l1)(a^k2 b^l2) = a^(k1 + 4^l1 * k2) b^(l1 + l2)`.

/// Powers of 4 modulo 7, indexed by the exponent of `b`.
const POW4: [u32; 3] = [1, 4, 2];

/// An element `a^k b^l` of the order-21 group, in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PqElement {
    k: u8,
    l: u8,
}

impl PqElement {
    /// Builds `a^k b^l`, reducing the exponents.
    pub fn new(k: i64, l: i64) -> Self {
        Self {
            k: k.rem_euclid(7) as u8,
            l: l.rem_euclid(3) as u8,
        }
    }

    /// The identity element.
    pub fn identity() -> Self {
        Self::new(0, 0)
    }

    /// The order-7 generator `a`.
    pub fn gen_a() -> Self {
        Self::new(1, 0)
    }

    /// The order-3 generator `b`.
    pub fn gen_b() -> Self {
        Self::new(0, 1)
    }

    /// Exponent of `a` in the normal form.
    pub fn exp_a(&self) -> u32 {
        u32::from(self.k)
    }

    /// Exponent of `b` in the normal form.
    pub fn exp_b(&self) -> u32 {
        u32::from(self.l)
    }

    /// The product `self * rhs`, applied left to right.
    pub fn mul(&self, rhs: &Self) -> Self {
        let k = (u32::from(self.k) + POW4[self.l as usize] * u32::from(rhs.k)) % 7;
        let l = (self.l + rhs.l) % 3;
        Self { k: k as u8, l }
    }

    /// The inverse element.
    pub fn inverse(&self) -> Self {
        let l = (3 - self.l) % 3;
        let k = (7 - (POW4[l as usize] * u32::from(self.k)) % 7) % 7;
        Self { k: k as u8, l }
    }

    /// The power `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = Self::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Index of the element in the canonical enumeration of [`all`].
    pub fn index(&self) -> usize {
        3 * usize::from(self.k) + usize::from(self.l)
    }
}

/// All 21 elements, ordered by `(k, l)` so that `a^k b^l` has index `3k + l`.
pub fn all() -> Vec<PqElement> {
    let mut elems = Vec::with_capacity(21);
    for k in 0..7 {
        for l in 0..3 {
            elems.push(PqElement::new(k, l));
        }
    }
    elems
}

/// The six pieces that assemble the 160-element connection set of the
/// 441-vertex digraph. Within the square of the order-21 group, the
/// connection set is the union of
/// `(P1 u P1inv) x (P3 u P3inv)`, `(P3 u P3inv) x (P1 u P1inv)`,
/// `P1 x P2`, `P2 x P1`, `P1inv x P4`, and `P4 x P1inv`.
#[derive(Clone, Debug)]
pub struct ConnectionPieces {
    /// `{a, a^5, a^6 b, a^6 b^2}`.
    pub p1: Vec<PqElement>,
    /// Inverses of the elements of `p1`.
    pub p1_inv: Vec<PqElement>,
    /// `{a b, a^5 b^2}`, closed under inversion.
    pub p2: Vec<PqElement>,
    /// `{a^3, b, a b^2, a^4 b^2}`.
    pub p3: Vec<PqElement>,
    /// Inverses of the elements of `p3`.
    pub p3_inv: Vec<PqElement>,
    /// `{a^2 b, a^3 b^2}`, closed under inversion.
    pub p4: Vec<PqElement>,
}

impl ConnectionPieces {
    /// The six pieces in display order.
    pub fn as_array(&self) -> [&[PqElement]; 6] {
        [
            &self.p1,
            &self.p1_inv,
            &self.p2,
            &self.p3,
            &self.p3_inv,
            &self.p4,
        ]
    }
}

/// The fixed connection-set pieces.
pub fn connection_pieces() -> ConnectionPieces {
    let pe = PqElement::new;
    ConnectionPieces {
        p1: vec![pe(1, 0), pe(5, 0), pe(6, 1), pe(6, 2)],
        p1_inv: vec![pe(6, 0), pe(2, 0), pe(2, 2), pe(4, 1)],
        p2: vec![pe(1, 1), pe(5, 2)],
        p3: vec![pe(3, 0), pe(0, 1), pe(1, 2), pe(4, 2)],
        p3_inv: vec![pe(4, 0), pe(0, 2), pe(3, 1), pe(5, 1)],
        p4: vec![pe(2, 1), pe(3, 2)],
    }
}
