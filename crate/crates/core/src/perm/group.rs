use super::Permutation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

/// One level of a stabilizer chain: the orbit of `base_point` under the
/// generators fixing all earlier base points, with a transversal element
/// `u` per orbit point satisfying `base_point^u = point`.
#[derive(Debug)]
struct ChainLevel {
    base_point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

/// Deterministic stabilizer chain built by Schreier-Sims. Base points are
/// chosen as the smallest moved point at the time each level is created, so
/// the chain is a pure function of the generator list.
#[derive(Debug)]
pub struct StabChain {
    base: Vec<usize>,
    strong_gens: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: Option<u128>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        let mut chain = loop {
            // Extend the base until every strong generator moves a base point.
            if let Some(g) = strong
                .iter()
                .find(|g| base.iter().all(|&b| g.apply(b) == b))
            {
                base.push(g.smallest_moved_point().expect("non-identity"));
                continue;
            }
            let levels = Self::rebuild_levels(degree, &base, &strong);
            let chain = StabChain {
                base: base.clone(),
                strong_gens: strong.clone(),
                levels,
                order: None,
            };
            match chain.first_schreier_violation() {
                None => break chain,
                Some(residue) => {
                    if base.iter().all(|&b| residue.apply(b) == b) {
                        base.push(residue.smallest_moved_point().expect("non-identity"));
                    }
                    strong.push(residue);
                }
            }
        };
        chain.order = chain.levels.iter().try_fold(1u128, |acc, level| {
            acc.checked_mul(level.orbit.len() as u128)
        });
        chain
    }

    fn rebuild_levels(degree: usize, base: &[usize], strong: &[Permutation]) -> Vec<ChainLevel> {
        let mut levels = Vec::with_capacity(base.len());
        for (i, &base_point) in base.iter().enumerate() {
            let gens: Vec<usize> = strong
                .iter()
                .enumerate()
                .filter(|(_, g)| base[..i].iter().all(|&b| g.apply(b) == b))
                .map(|(k, _)| k)
                .collect();
            let mut orbit = vec![base_point];
            let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
            transversal[base_point] = Some(Permutation::identity(degree));
            let mut head = 0;
            while head < orbit.len() {
                let point = orbit[head];
                head += 1;
                for &gi in &gens {
                    let image = strong[gi].apply(point);
                    if transversal[image].is_none() {
                        let u = transversal[point]
                            .as_ref()
                            .expect("orbit point has transversal")
                            .compose(&strong[gi]);
                        transversal[image] = Some(u);
                        orbit.push(image);
                    }
                }
            }
            levels.push(ChainLevel {
                base_point,
                gens,
                orbit,
                transversal,
            });
        }
        levels
    }

    /// Scans Schreier generators level by level; returns the first nontrivial
    /// sift residue, if any.
    fn first_schreier_violation(&self) -> Option<Permutation> {
        for (i, level) in self.levels.iter().enumerate() {
            for &p in &level.orbit {
                let u_p = level.transversal[p].as_ref().expect("orbit point");
                for &gi in &level.gens {
                    let s = &self.strong_gens[gi];
                    let q = s.apply(p);
                    let u_q = level.transversal[q].as_ref().expect("orbit closed");
                    let schreier = u_p.compose(s).compose(&u_q.inverse());
                    let residue = self.sift_from(i + 1, schreier);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    fn sift_from(&self, start: usize, mut g: Permutation) -> Permutation {
        for level in &self.levels[start..] {
            let p = g.apply(level.base_point);
            match &level.transversal[p] {
                None => return g,
                Some(u) => g = g.compose(&u.inverse()),
            }
        }
        g
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.sift_from(0, p.clone()).is_identity()
    }
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Vec<Permutation>>,
}

/// A permutation group given by generators. Cheap to clone; the stabilizer
/// chain and the element list are computed once and shared.
#[derive(Clone)]
pub struct PermutationGroup {
    inner: Arc<GroupInner>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(Self {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                chain: OnceLock::new(),
                elements: OnceLock::new(),
            }),
        })
    }

    pub fn from_cycle_strings(degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::build(self.inner.degree, &self.inner.generators))
    }

    /// Exact group order from the stabilizer chain.
    pub fn order(&self) -> Result<u128> {
        self.chain().order.ok_or(Error::OrderOverflow)
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.inner.degree {
            return Err(Error::DegreeMismatch {
                expected: self.inner.degree,
                got: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    /// Whether `other` is a subgroup (tested on its generators).
    pub fn is_overgroup_of(&self, other: &PermutationGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete element list in breadth-first word order from the identity.
    /// Fails if the group order exceeds `bound`.
    pub fn enumerate(&self, bound: u128) -> Result<&[Permutation]> {
        let order = self.order()?;
        if order > bound {
            return Err(Error::EnumerationBound { order, bound });
        }
        let elements = self.inner.elements.get_or_init(|| {
            let identity = Permutation::identity(self.inner.degree);
            let mut elements = vec![identity.clone()];
            let mut seen: HashSet<Permutation> = HashSet::new();
            seen.insert(identity);
            let mut head = 0;
            while head < elements.len() {
                let current = elements[head].clone();
                head += 1;
                for g in &self.inner.generators {
                    let next = current.compose(g);
                    if seen.insert(next.clone()) {
                        elements.push(next);
                    }
                }
            }
            elements
        });
        debug_assert_eq!(elements.len() as u128, order);
        Ok(elements)
    }

    /// Orbit of a point under the group, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut in_orbit = vec![false; self.inner.degree];
        in_orbit[point] = true;
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.inner.generators {
                let q = g.apply(p);
                if !in_orbit[q] {
                    in_orbit[q] = true;
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    pub fn is_transitive(&self) -> bool {
        self.inner.degree <= 1 || self.orbit(0).len() == self.inner.degree
    }

    /// Primitivity via minimal block systems: for every point `b != 0` the
    /// smallest block containing `{0, b}` must be the whole point set.
    /// Errors if the action is not transitive.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.inner.degree;
        for b in 1..n {
            if self.minimal_block_size(0, b) < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn minimal_block_size(&self, alpha: usize, beta: usize) -> usize {
        let n = self.inner.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let ra = find(&mut parent, alpha);
        let rb = find(&mut parent, beta);
        parent[rb] = ra;
        let mut stack = vec![(alpha, beta)];
        while let Some((u, v)) = stack.pop() {
            for g in &self.inner.generators {
                let (x, y) = (g.apply(u), g.apply(v));
                let rx = find(&mut parent, x);
                let ry = find(&mut parent, y);
                if rx != ry {
                    parent[ry] = rx;
                    stack.push((x, y));
                }
            }
        }
        let root = find(&mut parent, alpha);
        (0..n).filter(|&p| find(&mut parent, p) == root).count()
    }

    /// Involutions of the group, sorted by image array.
    pub fn involutions(&self, bound: u128) -> Result<Vec<Permutation>> {
        Ok(involutions_in(self.enumerate(bound)?))
    }

    /// `|H ∩ H^g|` where `H` is this group and `H^g = g^-1 H g`.
    pub fn conjugate_intersection_order(&self, g: &Permutation, bound: u128) -> Result<u128> {
        if g.degree() != self.inner.degree {
            return Err(Error::DegreeMismatch {
                expected: self.inner.degree,
                got: g.degree(),
            });
        }
        let g_inv = g.inverse();
        let mut count = 0u128;
        for x in self.enumerate(bound)? {
            // x in H^g  <=>  g x g^-1 in H.
            if self.chain().contains(&g.compose(x).compose(&g_inv)) {
                count += 1;
            }
        }
        Ok(count)
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.inner.degree)
            .field("generators", &self.inner.generators)
            .finish()
    }
}

/// Involutions among the given elements (order exactly 2), sorted by image
/// array with duplicates removed.
pub fn involutions_in(elements: &[Permutation]) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = elements
        .iter()
        .filter(|p| !p.is_identity() && p.compose(p).is_identity())
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// On-disk description of a permutation group: degree plus generators in
/// 1-based cycle notation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn from_group(group: &PermutationGroup) -> Self {
        Self {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermutationGroup> {
        let strs: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        PermutationGroup::from_cycle_strings(self.degree, &strs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUM_BOUND;

    fn gamma_groups() -> (PermutationGroup, PermutationGroup, PermutationGroup) {
        // Degree 8 instance: r = <a, b>, g_grp = <h, g>, h_grp = <h, h^g>.
        let a = Permutation::parse_cycles(8, "(3,4)(7,8)").unwrap();
        let b = Permutation::parse_cycles(8, "(1,3,5,7,2,4,6,8)").unwrap();
        let h = Permutation::parse_cycles(8, "(1,2)").unwrap();
        let g = Permutation::parse_cycles(8, "(1,3,5,7)(2,4,6,8)").unwrap();
        let r = PermutationGroup::new(8, vec![a, b]).unwrap();
        let big = PermutationGroup::new(8, vec![h.clone(), g.clone()]).unwrap();
        let sub = PermutationGroup::new(8, vec![h.clone(), h.conjugate_by(&g)]).unwrap();
        (r, big, sub)
    }

    #[test]
    fn orders_of_known_groups() {
        let (r, big, sub) = gamma_groups();
        assert_eq!(r.order().unwrap(), 16);
        assert_eq!(big.order().unwrap(), 64);
        assert_eq!(sub.order().unwrap(), 4);
        let trivial = PermutationGroup::new(5, vec![]).unwrap();
        assert_eq!(trivial.order().unwrap(), 1);
    }

    #[test]
    fn membership_by_sifting() {
        let (_, _, _) = gamma_groups();
        let a = Permutation::parse_cycles(8, "(3,4)(7,8)").unwrap();
        let b = Permutation::parse_cycles(8, "(1,3,5,7,2,4,6,8)").unwrap();
        let n = PermutationGroup::new(8, vec![a.clone(), a.conjugate_by(&b)]).unwrap();
        assert!(n.contains(&b.pow(4)).unwrap());
        assert!(!n.contains(&b).unwrap());

        let h = Permutation::parse_cycles(8, "(1,2)").unwrap();
        let g = Permutation::parse_cycles(8, "(1,3,5,7)(2,4,6,8)").unwrap();
        let sub = PermutationGroup::new(8, vec![h.clone(), h.conjugate_by(&g)]).unwrap();
        let ghg = g.compose(&h).compose(&g.inverse());
        assert_eq!(ghg.to_string(), "(7,8)");
        assert!(!sub.contains(&ghg).unwrap());

        let p5 = Permutation::identity(5);
        assert!(matches!(
            sub.contains(&p5),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_matches_order_and_respects_bound() {
        let (r, _, sub) = gamma_groups();
        assert_eq!(r.enumerate(DEFAULT_ENUM_BOUND).unwrap().len(), 16);
        assert_eq!(sub.enumerate(DEFAULT_ENUM_BOUND).unwrap().len(), 4);
        assert!(matches!(
            r.enumerate(10),
            Err(Error::EnumerationBound {
                order: 16,
                bound: 10
            })
        ));
        // Sym(10) has order 3628800 > 2_000_000.
        let s10 =
            PermutationGroup::from_cycle_strings(10, &["(1,2)", "(1,2,3,4,5,6,7,8,9,10)"]).unwrap();
        assert_eq!(s10.order().unwrap(), 3_628_800);
        assert!(s10.enumerate(DEFAULT_ENUM_BOUND).is_err());
    }

    #[test]
    fn orbits_and_transitivity() {
        let (r, big, sub) = gamma_groups();
        assert!(r.is_transitive());
        assert!(big.is_transitive());
        assert!(!sub.is_transitive());
        // sub moves only {1,2,3,4}; the last point is fixed.
        assert_eq!(sub.orbit(7), vec![7]);
        assert_eq!(sub.orbit(0), vec![0, 1]);
    }

    #[test]
    fn primitivity_of_regular_cyclic_actions() {
        let c4 = PermutationGroup::from_cycle_strings(4, &["(1,2,3,4)"]).unwrap();
        assert!(!c4.is_primitive().unwrap());
        let c5 = PermutationGroup::from_cycle_strings(5, &["(1,2,3,4,5)"]).unwrap();
        assert!(c5.is_primitive().unwrap());
        let (_, _, sub) = gamma_groups();
        assert!(matches!(sub.is_primitive(), Err(Error::NotTransitive)));
    }

    #[test]
    fn involutions_of_small_groups() {
        let c4 = PermutationGroup::from_cycle_strings(4, &["(1,2,3,4)"]).unwrap();
        let inv = c4.involutions(DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].to_string(), "(1,3)(2,4)");
    }

    #[test]
    fn group_spec_roundtrip() {
        let (r, _, _) = gamma_groups();
        let spec = GroupSpec::from_group(&r);
        let json = serde_json::to_string(&spec).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        let group = back.to_group().unwrap();
        assert_eq!(group.order().unwrap(), 16);
        assert_eq!(group.degree(), 8);
    }

    #[test]
    fn chain_base_points_are_smallest_moved() {
        let (_, big, _) = gamma_groups();
        let chain = big.chain();
        // First base point is the smallest point moved by any generator.
        assert_eq!(chain.base()[0], 0);
        // Order recomputed from orbit sizes.
        let product: u128 = 64;
        assert_eq!(big.order().unwrap(), product);
    }
}
