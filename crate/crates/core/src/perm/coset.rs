use super::{Permutation, PermutationGroup};
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// The action of a group `G` on the right cosets of a subgroup `H` by right
/// multiplication: `Hx . g = Hxg`.
///
/// Each coset is identified by a canonical fingerprint: the lexicographically
/// least image array among `{h*x : h in H}`. Labels are assigned in
/// breadth-first order from the coset `H` using the parent generators in the
/// given order, so the labelling is deterministic.
pub struct CosetAction {
    parent: PermutationGroup,
    subgroup: PermutationGroup,
    sub_elements: Vec<Permutation>,
    labels: HashMap<Vec<usize>, usize>,
    reps: Vec<Permutation>,
    induced: Vec<Permutation>,
}

impl CosetAction {
    pub fn new(
        parent: &PermutationGroup,
        subgroup: &PermutationGroup,
        enum_bound: u128,
    ) -> Result<Self> {
        if parent.degree() != subgroup.degree() {
            return Err(Error::DegreeMismatch {
                expected: parent.degree(),
                got: subgroup.degree(),
            });
        }
        if !parent.is_overgroup_of(subgroup)? {
            return Err(Error::NotASubgroup);
        }
        let parent_order = parent.order()?;
        if parent_order > enum_bound {
            return Err(Error::EnumerationBound {
                order: parent_order,
                bound: enum_bound,
            });
        }
        let sub_elements = subgroup.enumerate(enum_bound)?.to_vec();
        let expected_degree = (parent_order / sub_elements.len() as u128) as usize;

        let mut action = Self {
            parent: parent.clone(),
            subgroup: subgroup.clone(),
            sub_elements,
            labels: HashMap::new(),
            reps: Vec::new(),
            induced: Vec::new(),
        };

        let identity = Permutation::identity(parent.degree());
        let first = action.fingerprint(&identity);
        action.labels.insert(first.images().to_vec(), 0);
        action.reps.push(first);

        let mut images: Vec<Vec<usize>> = vec![Vec::new(); parent.generators().len()];
        let mut head = 0;
        while head < action.reps.len() {
            let rep = action.reps[head].clone();
            for (k, g) in parent.generators().iter().enumerate() {
                let moved = action.fingerprint(&rep.compose(g));
                let next_label = action.labels.len();
                let label = *action
                    .labels
                    .entry(moved.images().to_vec())
                    .or_insert(next_label);
                if label == next_label {
                    action.reps.push(moved);
                }
                images[k].push(label);
            }
            head += 1;
        }
        debug_assert_eq!(action.reps.len(), expected_degree);
        action.induced = images
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(action)
    }

    /// Lexicographically least element of the coset `H * x`.
    fn fingerprint(&self, x: &Permutation) -> Permutation {
        let n = x.degree();
        let ximg = x.images();
        let mut best: Vec<usize> = ximg.to_vec();
        for h in &self.sub_elements[1..] {
            let himg = h.images();
            // Lexicographic comparison of (h*x) against best, materialising
            // the candidate only when it wins.
            let mut verdict = std::cmp::Ordering::Equal;
            for i in 0..n {
                let c = ximg[himg[i]].cmp(&best[i]);
                if c != std::cmp::Ordering::Equal {
                    verdict = c;
                    break;
                }
            }
            if verdict == std::cmp::Ordering::Less {
                for i in 0..n {
                    best[i] = ximg[himg[i]];
                }
            }
        }
        Permutation::new(best).expect("coset fingerprint is a permutation")
    }

    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn parent(&self) -> &PermutationGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.subgroup
    }

    pub fn subgroup_elements(&self) -> &[Permutation] {
        &self.sub_elements
    }

    /// Label of the coset `H` itself.
    pub fn identity_label(&self) -> usize {
        0
    }

    /// Canonical representative of a labelled coset.
    pub fn representative(&self, label: usize) -> &Permutation {
        &self.reps[label]
    }

    /// Permutations of the labels induced by the parent generators, in
    /// generator order.
    pub fn induced_generators(&self) -> &[Permutation] {
        &self.induced
    }

    /// The induced permutation group on coset labels.
    pub fn induced_group(&self) -> Result<PermutationGroup> {
        PermutationGroup::new(self.degree(), self.induced.clone())
    }

    /// Label of the coset containing `x`; `Err(NotInGroup)` if `x` is not an
    /// element of the parent group.
    pub fn label_of(&self, x: &Permutation) -> Result<usize> {
        if x.degree() != self.parent.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.parent.degree(),
                got: x.degree(),
            });
        }
        let fp = self.fingerprint(x);
        self.labels
            .get(fp.images())
            .copied()
            .ok_or(Error::NotInGroup)
    }

    /// Labels of the cosets contained in the double coset `H g H`, sorted.
    pub fn double_coset_cosets(&self, g: &Permutation) -> Result<Vec<usize>> {
        // Label lookup doubles as a membership check for g.
        self.label_of(g)?;
        let mut out = BTreeSet::new();
        for h in &self.sub_elements {
            out.insert(self.label_of(&g.compose(h))?);
        }
        Ok(out.into_iter().collect())
    }

    /// `|H g H|`, computed as (number of cosets in the double coset) * |H|.
    pub fn double_coset_size(&self, g: &Permutation) -> Result<u128> {
        Ok(self.double_coset_cosets(g)?.len() as u128 * self.sub_elements.len() as u128)
    }
}

impl std::fmt::Debug for CosetAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CosetAction")
            .field("degree", &self.degree())
            .field("subgroup_order", &self.sub_elements.len())
            .finish()
    }
}
