//! Permutations on `{0, ..., degree-1}` and groups generated by them.
//!
//! Composition is left-to-right: `(p * q)` means "apply `p`, then `q`", so
//! `point^(p*q) = (point^p)^q`. Conjugation follows the same convention:
//! `x.conjugate_by(g)` is `g^-1 * x * g`. Cycle notation in the text formats
//! is 1-based; everything in memory is 0-based.

mod coset;
mod group;

pub use coset::CosetAction;
pub use group::{involutions_in, GroupSpec, PermutationGroup, StabChain};

use crate::{Error, Result};
use std::fmt;

/// A permutation stored as its image array: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from an image array, checking it is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidCycles(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles given with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from == 0 || from > degree || to == 0 || to > degree {
                    return Err(Error::InvalidCycles(format!(
                        "point out of range 1..={degree} in cycle {cycle:?}"
                    )));
                }
                if seen[from - 1] {
                    return Err(Error::InvalidCycles(format!(
                        "point {from} appears in more than one cycle"
                    )));
                }
                seen[from - 1] = true;
                images[from - 1] = to - 1;
            }
        }
        Self::new(images)
    }

    /// Parses 1-based cycle notation such as `"(1,3,5,7,2,4,6,8)"` or
    /// `"(3,4)(7,8)"`. The empty string and `"()"` denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush_number = |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let value: usize = number
                .parse()
                .map_err(|_| Error::InvalidCycles(format!("bad point {number:?}")))?;
            number.clear();
            match current {
                Some(cycle) => cycle.push(value),
                None => {
                    return Err(Error::InvalidCycles(
                        "point outside parentheses".to_string(),
                    ))
                }
            }
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::InvalidCycles("nested parenthesis".to_string()));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush_number(&mut number, &mut current)?;
                    let cycle = current
                        .take()
                        .ok_or_else(|| Error::InvalidCycles("unmatched ')'".to_string()))?;
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                }
                ',' => flush_number(&mut number, &mut current)?,
                c if c.is_ascii_digit() => number.push(c),
                c if c.is_whitespace() => flush_number(&mut number, &mut current)?,
                c => {
                    return Err(Error::InvalidCycles(format!("unexpected character {c:?}")));
                }
            }
        }
        if current.is_some() {
            return Err(Error::InvalidCycles("unmatched '('".to_string()));
        }
        if !number.is_empty() {
            return Err(Error::InvalidCycles(
                "trailing point outside parentheses".to_string(),
            ));
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degrees"
        );
        Self {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Self { images }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut result = Self::identity(self.degree());
        for _ in 0..exponent.unsigned_abs() {
            result = result.compose(&base);
        }
        result
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i != img)
            .map(|(i, _)| i)
    }

    /// Order of the permutation: the lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| num_integer::lcm(acc, c.len() as u128))
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point,
    /// sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut point = self.images[start];
            while point != start {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, point) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", point + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Permutation {
        Permutation::parse_cycles(8, "(3,4)(7,8)").unwrap()
    }

    fn b2() -> Permutation {
        Permutation::parse_cycles(8, "(1,3,5,7,2,4,6,8)").unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let p = b2();
        assert_eq!(p.to_string(), "(1,3,5,7,2,4,6,8)");
        let q = Permutation::parse_cycles(8, &p.to_string()).unwrap();
        assert_eq!(p, q);
        assert_eq!(
            Permutation::parse_cycles(5, "").unwrap(),
            Permutation::identity(5)
        );
        assert_eq!(
            Permutation::parse_cycles(5, "()").unwrap(),
            Permutation::identity(5)
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles(4, "(1,2,5)").is_err());
        assert!(Permutation::parse_cycles(4, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(4, "(0,1)").is_err());
        assert!(Permutation::parse_cycles(4, "(1,2").is_err());
        assert!(Permutation::parse_cycles(4, "1,2").is_err());
        assert!(Permutation::parse_cycles(4, "(1,x)").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        // b maps 1 -> 3 (0-based 0 -> 2).
        assert_eq!(b2().apply(0), 2);
        // g then h with h = (1,2): point 7 -> 1 -> 2 (1-based).
        let g = Permutation::parse_cycles(8, "(1,3,5,7)(2,4,6,8)").unwrap();
        let h = Permutation::parse_cycles(8, "(1,2)").unwrap();
        let gh = g.compose(&h);
        assert_eq!(gh.apply(6), 1);
        assert_eq!(gh, b2());
    }

    #[test]
    fn powers_and_order() {
        let b = b2();
        assert_eq!(b.order(), 8);
        let b4 = b.pow(4);
        assert_eq!(b4.to_string(), "(1,2)(3,4)(5,6)(7,8)");
        assert!(b.pow(8).is_identity());
        assert_eq!(b.pow(-1), b.inverse());
        assert!(b.compose(&b.inverse()).is_identity());
    }

    #[test]
    fn conjugation_matches_right_action() {
        let a = a2();
        let b = b2();
        // a^b = (1,2)(5,6): each point of a pushed through b.
        assert_eq!(a.conjugate_by(&b).to_string(), "(1,2)(5,6)");
        // a * a^b = b^4.
        assert_eq!(a.compose(&a.conjugate_by(&b)), b.pow(4));
    }

    #[test]
    fn smallest_moved_point_and_cycles() {
        assert_eq!(a2().smallest_moved_point(), Some(2));
        assert_eq!(Permutation::identity(6).smallest_moved_point(), None);
        assert_eq!(a2().cycles(), vec![vec![2, 3], vec![6, 7]]);
    }
}
