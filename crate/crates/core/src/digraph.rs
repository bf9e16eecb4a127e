//! Digraphs with sorted forward stars.
//!
//! Construction from groups (Cayley and coset forms), tensor products,
//! strong connectivity, s-arc counting and enumeration, and transitivity
//! certificates obtained by orbit computation under explicitly checked
//! automorphism witnesses.

use crate::exact::{rat, Matrix, Rational};
use crate::perm::{CosetAction, Permutation};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

/// Finite digraph: an irreflexive arc relation on `0..n`, stored as sorted
/// out-neighbor lists, with optional display labels for the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// Result of an s-arc orbit computation under a witness group. `transitive`
/// certifies s-arc-transitivity of the digraph when true; when false it
/// only shows this particular witness group is not transitive on s-arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcOrbitWitness {
    pub s: usize,
    pub total_arcs: u128,
    pub orbit_size: u128,
    pub transitive: bool,
}

/// Serialized digraph: vertex count, sorted arc list, optional labels.
#[derive(Serialize, Deserialize)]
pub struct DigraphFile {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Default vertex cap for GraphViz export; renderers choke far beyond this.
pub const DOT_VERTEX_CAP: usize = 2000;

impl Digraph {
    /// Builds from out-neighbor lists; sorts and deduplicates each list.
    pub fn from_out_neighbors(mut out_adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = out_adj.len();
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &v in list.iter() {
                if v >= n {
                    return Err(Error::ArcOutOfRange { u, v, n });
                }
                if v == u {
                    return Err(Error::SelfLoop { v });
                }
            }
        }
        Ok(Self {
            out_adj,
            labels: None,
        })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::ArcOutOfRange { u, v, n });
            }
            out_adj[u].push(v);
        }
        Self::from_out_neighbors(out_adj)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::ModelSizeMismatch {
                digraph: self.vertex_count(),
                cosets: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for (_, v) in self.arcs() {
            deg[v] += 1;
        }
        deg
    }

    /// The common in- and out-valency, if the digraph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return Some(0);
        }
        let d = self.out_degree(0);
        if (0..n).all(|v| self.out_degree(v) == d) && self.in_degrees().iter().all(|&x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    /// 0/1 adjacency matrix with entry (u, v) = 1 iff u → v.
    pub fn adjacency_matrix(&self) -> Matrix<Rational> {
        let n = self.vertex_count();
        let mut m = Matrix::zeros(n, n);
        for (u, v) in self.arcs() {
            m.set(u, v, rat(1));
        }
        m
    }

    fn reaches_all(&self, start: usize, forward: bool) -> bool {
        let n = self.vertex_count();
        let rev_adj;
        let adj: &[Vec<usize>] = if forward {
            &self.out_adj
        } else {
            let mut r = vec![Vec::new(); n];
            for (u, v) in self.arcs() {
                r[v].push(u);
            }
            rev_adj = r;
            &rev_adj
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Every vertex reaches every other by directed paths.
    pub fn is_strongly_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.reaches_all(0, true) && self.reaches_all(0, false)
    }

    /// Number of s-arcs (directed walks visiting s+1 vertices; a 0-arc is a
    /// vertex).
    pub fn count_s_arcs(&self, s: usize) -> Result<u128> {
        let n = self.vertex_count();
        let mut counts = vec![1u128; n];
        for _ in 0..s {
            let mut next = vec![0u128; n];
            for (neighbors, &count) in self.out_adj.iter().zip(&counts) {
                if count == 0 {
                    continue;
                }
                for &v in neighbors {
                    next[v] = next[v].checked_add(count).ok_or(Error::ArcCountOverflow)?;
                }
            }
            counts = next;
        }
        counts
            .iter()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::ArcCountOverflow)
    }

    /// Lexicographically first s-arc, if any exists.
    pub fn first_s_arc(&self, s: usize) -> Option<Vec<usize>> {
        for start in 0..self.vertex_count() {
            let mut path = vec![start];
            let mut cursor = vec![0usize];
            while let Some(&v) = path.last() {
                if path.len() == s + 1 {
                    return Some(path);
                }
                let i = cursor.last_mut().expect("parallel to path");
                if *i < self.out_adj[v].len() {
                    let w = self.out_adj[v][*i];
                    *i += 1;
                    path.push(w);
                    cursor.push(0);
                } else {
                    path.pop();
                    cursor.pop();
                }
            }
        }
        None
    }

    fn all_s_arcs(&self, s: usize, bound: u128) -> Result<Vec<Vec<usize>>> {
        let total = self.count_s_arcs(s)?;
        if total > bound {
            return Err(Error::ArcBoundExceeded {
                count: total,
                bound,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut path = Vec::with_capacity(s + 1);
        let mut cursor: Vec<usize> = Vec::with_capacity(s + 1);
        for start in 0..self.vertex_count() {
            path.push(start);
            cursor.push(0);
            while let Some(&v) = path.last() {
                if path.len() == s + 1 {
                    out.push(path.clone());
                    path.pop();
                    cursor.pop();
                    continue;
                }
                let i = cursor.last_mut().expect("parallel to path");
                if *i < self.out_adj[v].len() {
                    let w = self.out_adj[v][*i];
                    *i += 1;
                    path.push(w);
                    cursor.push(0);
                } else {
                    path.pop();
                    cursor.pop();
                }
            }
        }
        Ok(out)
    }

    /// Checks that every witness generator preserves arcs, naming the first
    /// violated arc otherwise.
    pub fn check_automorphisms(&self, witness_gens: &[Permutation]) -> Result<()> {
        let n = self.vertex_count();
        for (gen_index, g) in witness_gens.iter().enumerate() {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    got: g.degree(),
                });
            }
            for (u, v) in self.arcs() {
                if !self.has_arc(g.apply(u), g.apply(v)) {
                    return Err(Error::NotAnAutomorphism {
                        gen_index,
                        from: u,
                        to: v,
                    });
                }
            }
        }
        Ok(())
    }

    /// Orbit of the lexicographically first s-arc under the witness
    /// generators. The generators must be automorphisms (checked). The
    /// computation refuses to run when the digraph has more than
    /// `max_arcs` s-arcs.
    pub fn is_s_arc_transitive_under(
        &self,
        witness_gens: &[Permutation],
        s: usize,
        max_arcs: u128,
    ) -> Result<ArcOrbitWitness> {
        self.check_automorphisms(witness_gens)?;
        let total_arcs = self.count_s_arcs(s)?;
        if total_arcs > max_arcs {
            return Err(Error::ArcBoundExceeded {
                count: total_arcs,
                bound: max_arcs,
            });
        }
        let orbit_size = match self.first_s_arc(s) {
            None => 0,
            Some(first) => {
                let mut seen: HashSet<Vec<usize>> = HashSet::new();
                seen.insert(first.clone());
                let mut queue = VecDeque::from([first]);
                while let Some(arc) = queue.pop_front() {
                    for g in witness_gens {
                        let image: Vec<usize> = arc.iter().map(|&v| g.apply(v)).collect();
                        if seen.insert(image.clone()) {
                            queue.push_back(image);
                        }
                    }
                }
                seen.len() as u128
            }
        };
        Ok(ArcOrbitWitness {
            s,
            total_arcs,
            orbit_size,
            transitive: orbit_size == total_arcs,
        })
    }

    /// Number of orbits of the witness generators on all s-arcs.
    pub fn count_s_arc_orbits(
        &self,
        witness_gens: &[Permutation],
        s: usize,
        max_arcs: u128,
    ) -> Result<usize> {
        self.check_automorphisms(witness_gens)?;
        let arcs = self.all_s_arcs(s, max_arcs)?;
        let mut unvisited: HashSet<Vec<usize>> = arcs.iter().cloned().collect();
        let mut orbits = 0;
        for arc in &arcs {
            if !unvisited.remove(arc) {
                continue;
            }
            orbits += 1;
            let mut queue = VecDeque::from([arc.clone()]);
            while let Some(a) = queue.pop_front() {
                for g in witness_gens {
                    let image: Vec<usize> = a.iter().map(|&v| g.apply(v)).collect();
                    if unvisited.remove(&image) {
                        queue.push_back(image);
                    }
                }
            }
        }
        Ok(orbits)
    }

    /// Tensor (direct) product: vertex (u, v) ↦ u·n₂ + v, with an arc iff
    /// both coordinates carry arcs.
    pub fn tensor_product(&self, other: &Digraph) -> Digraph {
        let n2 = other.vertex_count();
        let mut out_adj = Vec::with_capacity(self.vertex_count() * n2);
        for u in 0..self.vertex_count() {
            for v in 0..n2 {
                let mut list = Vec::with_capacity(self.out_degree(u) * other.out_degree(v));
                for &u2 in &self.out_adj[u] {
                    for &v2 in &other.out_adj[v] {
                        list.push(u2 * n2 + v2);
                    }
                }
                out_adj.push(list);
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let mut combined = Vec::with_capacity(a.len() * b.len());
                for la in a {
                    for lb in b {
                        combined.push(format!("({la},{lb})"));
                    }
                }
                Some(combined)
            }
            _ => None,
        };
        let mut d = Digraph::from_out_neighbors(out_adj).expect("factors are irreflexive");
        d.labels = labels;
        d
    }

    pub fn to_json(&self) -> Result<String> {
        let file = DigraphFile {
            n: self.vertex_count(),
            arcs: self.arcs().collect(),
            labels: self.labels.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DigraphFile = serde_json::from_str(text)?;
        let d = Self::from_arcs(file.n, &file.arcs)?;
        match file.labels {
            Some(labels) => d.with_labels(labels),
            None => Ok(d),
        }
    }

    /// GraphViz export; refuses to render more than [`DOT_VERTEX_CAP`]
    /// vertices.
    pub fn to_dot(&self) -> Result<String> {
        self.to_dot_capped(DOT_VERTEX_CAP)
    }

    /// GraphViz export with an explicit vertex cap.
    pub fn to_dot_capped(&self, cap: usize) -> Result<String> {
        let n = self.vertex_count();
        if n > cap {
            return Err(Error::ResourceLimit(format!(
                "dot export capped at {cap} vertices, digraph has {n}"
            )));
        }
        let mut out = String::from("digraph {\n");
        if let Some(labels) = &self.labels {
            for (v, label) in labels.iter().enumerate() {
                out.push_str(&format!(
                    "  {v} [label=\"{}\"];\n",
                    label.replace('"', "\\\"")
                ));
            }
        }
        for (u, v) in self.arcs() {
            out.push_str(&format!("  {u} -> {v};\n"));
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Cayley digraph on an explicitly enumerated group: vertex i is
/// `elements[i]`, with an arc x → y iff y·x⁻¹ is in the connection set.
/// Equivalently the out-neighbors of x are the products s·x.
pub fn cayley_digraph(elements: &[Permutation], connection: &[Permutation]) -> Result<Digraph> {
    let mut index: HashMap<&[usize], usize> = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if let Some(j) = index.insert(e.images(), i) {
            return Err(Error::DuplicateElement { i: j, j: i });
        }
    }
    for (i, s) in connection.iter().enumerate() {
        if s.is_identity() {
            return Err(Error::IdentityInConnectionSet);
        }
        if !index.contains_key(s.images()) {
            return Err(Error::ConnectionSetNotInGroup { index: i });
        }
    }
    let mut out_adj = Vec::with_capacity(elements.len());
    for x in elements {
        let mut list = Vec::with_capacity(connection.len());
        for (i, s) in connection.iter().enumerate() {
            // y = s·x, composed left-to-right: apply s, then x.
            let y = s.compose(x);
            let &target = index
                .get(y.images())
                .ok_or(Error::ConnectionSetNotInGroup { index: i })?;
            list.push(target);
        }
        out_adj.push(list);
    }
    Digraph::from_out_neighbors(out_adj)
}

/// Coset digraph on the cosets of `action`: arc Hx → Hy iff y·x⁻¹ lies in
/// the union of the double cosets H·rep·H. Out-neighbors of Hx are the
/// cosets H·d·x for d running over coset representatives of that union.
pub fn coset_digraph(action: &CosetAction, reps: &[Permutation]) -> Result<Digraph> {
    let mut connection_labels: Vec<usize> = Vec::new();
    for (index, rep) in reps.iter().enumerate() {
        if action.label_of(rep)? == action.identity_label() {
            return Err(Error::ConnectionElementInSubgroup { index });
        }
        connection_labels.extend(action.double_coset_cosets(rep)?);
    }
    connection_labels.sort_unstable();
    connection_labels.dedup();
    let n = action.degree();
    let mut out_adj = Vec::with_capacity(n);
    for x in 0..n {
        let rep_x = action.representative(x);
        let mut list = Vec::with_capacity(connection_labels.len());
        for &label in &connection_labels {
            let d = action.representative(label);
            list.push(action.label_of(&d.compose(rep_x))?);
        }
        out_adj.push(list);
    }
    Digraph::from_out_neighbors(out_adj)
}

/// Checks that `transversal` realizes an isomorphism from `gamma` onto the
/// coset digraph of `action` with connection set ∪ H·rep·H, via
/// ψ: vertex i ↦ coset of `transversal[i]`. Comparing the full sorted
/// forward stars through ψ is equivalent to checking both arc directions
/// on every vertex pair. Errors identify the failure: size mismatch, two
/// transversal entries in one coset, an entry outside the group, or a
/// vertex whose arcs do not transport.
pub fn verify_coset_model(
    gamma: &Digraph,
    action: &CosetAction,
    reps: &[Permutation],
    transversal: &[Permutation],
) -> Result<()> {
    let n = gamma.vertex_count();
    if action.degree() != n {
        return Err(Error::ModelSizeMismatch {
            digraph: n,
            cosets: action.degree(),
        });
    }
    if transversal.len() != n {
        return Err(Error::ModelSizeMismatch {
            digraph: n,
            cosets: transversal.len(),
        });
    }
    let mut psi = Vec::with_capacity(n);
    let mut owner: HashMap<usize, usize> = HashMap::with_capacity(n);
    for (i, t) in transversal.iter().enumerate() {
        let label = action.label_of(t)?;
        if let Some(&j) = owner.get(&label) {
            return Err(Error::TransversalCollision { i: j, j: i });
        }
        owner.insert(label, i);
        psi.push(label);
    }
    let cos = coset_digraph(action, reps)?;
    for u in 0..n {
        let mut mapped: Vec<usize> = gamma.out_neighbors(u).iter().map(|&v| psi[v]).collect();
        mapped.sort_unstable();
        if mapped != cos.out_neighbors(psi[u]) {
            return Err(Error::CosetModelArcMismatch { vertex: u });
        }
    }
    Ok(())
}

/// Permutation of pair indices (u, v) ↦ (u^p, v^q) on degree |p|·|q|,
/// with (u, v) encoded as u·|q| + v.
pub fn product_permutation(p: &Permutation, q: &Permutation) -> Permutation {
    let n2 = q.degree();
    let images = (0..p.degree() * n2)
        .map(|i| p.apply(i / n2) * n2 + q.apply(i % n2))
        .collect();
    Permutation::new(images).expect("bijection by construction")
}

/// Permutation of pair indices (u, v) ↦ (v, u) on n² points.
pub fn swap_permutation(n: usize) -> Permutation {
    let images = (0..n * n).map(|i| (i % n) * n + i / n).collect();
    Permutation::new(images).expect("bijection by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationGroup;
    use crate::DEFAULT_ENUM_BOUND;

    fn directed_cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cycle_basics() {
        let c5 = directed_cycle(5);
        assert_eq!(c5.vertex_count(), 5);
        assert_eq!(c5.arc_count(), 5);
        assert_eq!(c5.regular_valency(), Some(1));
        assert!(c5.is_strongly_connected());
        assert_eq!(c5.count_s_arcs(0).unwrap(), 5);
        assert_eq!(c5.count_s_arcs(3).unwrap(), 5);
        assert_eq!(c5.first_s_arc(3).unwrap(), vec![0, 1, 2, 3]);
        assert!(c5.has_arc(4, 0));
        assert!(!c5.has_arc(0, 4));
    }

    #[test]
    fn construction_rejects_bad_arcs() {
        assert!(matches!(
            Digraph::from_arcs(3, &[(0, 0)]),
            Err(Error::SelfLoop { v: 0 })
        ));
        assert!(matches!(
            Digraph::from_arcs(3, &[(0, 7)]),
            Err(Error::ArcOutOfRange { u: 0, v: 7, n: 3 })
        ));
    }

    #[test]
    fn disjoint_triangles_are_not_strongly_connected() {
        let arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let d = Digraph::from_arcs(6, &arcs).unwrap();
        assert!(!d.is_strongly_connected());
        assert_eq!(d.regular_valency(), Some(1));
    }

    #[test]
    fn tensor_of_coprime_cycles_is_a_cycle() {
        let prod = directed_cycle(2).tensor_product(&directed_cycle(3));
        assert_eq!(prod.vertex_count(), 6);
        assert_eq!(prod.regular_valency(), Some(1));
        assert!(prod.is_strongly_connected());
    }

    #[test]
    fn tensor_adjacency_is_kronecker() {
        let a = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        let b = directed_cycle(2);
        let prod = a.tensor_product(&b);
        assert_eq!(
            prod.adjacency_matrix(),
            a.adjacency_matrix().kronecker(&b.adjacency_matrix())
        );
        let empty = Digraph::from_arcs(2, &[]).unwrap();
        assert_eq!(a.tensor_product(&empty).arc_count(), 0);
    }

    #[test]
    fn cayley_digraph_of_cyclic_group_is_a_cycle() {
        let g = PermutationGroup::from_cycle_strings(4, &["(1,2,3,4)"]).unwrap();
        let elements = g.enumerate(DEFAULT_ENUM_BOUND).unwrap();
        let d = cayley_digraph(elements, &[g.generators()[0].clone()]).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.regular_valency(), Some(1));
        assert!(d.is_strongly_connected());
        // Identity sits at vertex 0.
        assert!(elements[0].is_identity());
    }

    #[test]
    fn cayley_digraph_rejects_bad_connection_sets() {
        let g = PermutationGroup::from_cycle_strings(4, &["(1,2,3,4)"]).unwrap();
        let elements = g.enumerate(DEFAULT_ENUM_BOUND).unwrap();
        let id = Permutation::identity(4);
        assert!(matches!(
            cayley_digraph(elements, &[id]),
            Err(Error::IdentityInConnectionSet)
        ));
        let outsider = Permutation::parse_cycles(4, "(1,2)").unwrap();
        assert!(matches!(
            cayley_digraph(elements, &[outsider]),
            Err(Error::ConnectionSetNotInGroup { index: 0 })
        ));
    }

    #[test]
    fn arc_transitivity_of_cycle_under_rotation() {
        let c6 = directed_cycle(6);
        let rot = Permutation::parse_cycles(6, "(1,2,3,4,5,6)").unwrap();
        for s in 0..4 {
            let w = c6
                .is_s_arc_transitive_under(std::slice::from_ref(&rot), s, 1 << 20)
                .unwrap();
            assert_eq!(w.total_arcs, 6);
            assert_eq!(w.orbit_size, 6);
            assert!(w.transitive);
        }
        assert_eq!(c6.count_s_arc_orbits(&[rot], 2, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn non_automorphism_is_rejected_with_the_violated_arc() {
        let c3 = directed_cycle(3);
        let reflection = Permutation::parse_cycles(3, "(2,3)").unwrap();
        let err = c3
            .is_s_arc_transitive_under(&[reflection], 1, 100)
            .unwrap_err();
        match err {
            Error::NotAnAutomorphism {
                gen_index: 0,
                from,
                to,
            } => {
                assert!(c3.has_arc(from, to));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn intransitive_witness_yields_partial_orbit() {
        // Two generators fixing arcs of one triangle cannot reach the other.
        let arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let d = Digraph::from_arcs(6, &arcs).unwrap();
        let rot = Permutation::parse_cycles(6, "(1,2,3)(4,5,6)").unwrap();
        let w = d
            .is_s_arc_transitive_under(std::slice::from_ref(&rot), 1, 100)
            .unwrap();
        assert_eq!(w.total_arcs, 6);
        assert_eq!(w.orbit_size, 3);
        assert!(!w.transitive);
        // One orbit per triangle: no witness element mixes the components.
        assert_eq!(
            d.count_s_arc_orbits(std::slice::from_ref(&rot), 1, 100)
                .unwrap(),
            2
        );
        // A witness fixing the second triangle pointwise splits its three
        // arcs into singleton orbits.
        let half = Permutation::parse_cycles(6, "(1,2,3)").unwrap();
        assert_eq!(d.count_s_arc_orbits(&[half], 1, 100).unwrap(), 4);
    }

    #[test]
    fn coset_model_of_regular_action_matches_cayley_form() {
        let g = PermutationGroup::from_cycle_strings(5, &["(1,2,3,4,5)"]).unwrap();
        let elements: Vec<Permutation> = g.enumerate(DEFAULT_ENUM_BOUND).unwrap().to_vec();
        let gamma = cayley_digraph(&elements, &[g.generators()[0].clone()]).unwrap();
        let trivial = PermutationGroup::new(5, Vec::new()).unwrap();
        let action = CosetAction::new(&g, &trivial, DEFAULT_ENUM_BOUND).unwrap();
        let reps = [g.generators()[0].clone()];
        verify_coset_model(&gamma, &action, &reps, &elements).unwrap();

        // A repeated transversal entry is reported as a collision.
        let mut broken = elements.clone();
        broken[3] = broken[2].clone();
        assert!(matches!(
            verify_coset_model(&gamma, &action, &reps, &broken),
            Err(Error::TransversalCollision { i: 2, j: 3 })
        ));

        // Wrong connection set: arcs fail to transport.
        let reps_sq = [g.generators()[0].compose(&g.generators()[0])];
        assert!(verify_coset_model(&gamma, &action, &reps_sq, &elements).is_err());
    }

    #[test]
    fn coset_digraph_rejects_subgroup_elements() {
        let g = PermutationGroup::from_cycle_strings(4, &["(1,2)", "(3,4)"]).unwrap();
        let h = PermutationGroup::from_cycle_strings(4, &["(1,2)"]).unwrap();
        let action = CosetAction::new(&g, &h, DEFAULT_ENUM_BOUND).unwrap();
        let inside = Permutation::parse_cycles(4, "(1,2)").unwrap();
        assert!(matches!(
            coset_digraph(&action, &[inside]),
            Err(Error::ConnectionElementInSubgroup { index: 0 })
        ));
    }

    #[test]
    fn product_and_swap_permutations() {
        let p = Permutation::parse_cycles(2, "(1,2)").unwrap();
        let q = Permutation::identity(3);
        let prod = product_permutation(&p, &q);
        assert_eq!(prod.degree(), 6);
        // (0, v) ↔ (1, v): index v ↔ 3 + v.
        assert_eq!(prod.apply(0), 3);
        assert_eq!(prod.apply(4), 1);

        let swap = swap_permutation(3);
        assert_eq!(swap.apply(1), 3); // (0,1) ↦ (1,0)
        assert_eq!(swap.apply(4), 4); // (1,1) fixed
        assert!(swap.compose(&swap).is_identity());
    }

    #[test]
    fn swap_is_an_automorphism_of_the_tensor_square() {
        let a = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        let sq = a.tensor_product(&a);
        sq.check_automorphisms(&[swap_permutation(3)]).unwrap();
    }

    #[test]
    fn json_roundtrip_and_dot_guard() {
        let d = directed_cycle(3)
            .with_labels(vec!["e".into(), "g".into(), "g^2".into()])
            .unwrap();
        let text = d.to_json().unwrap();
        let back = Digraph::from_json(&text).unwrap();
        assert_eq!(d, back);
        let dot = d.to_dot().unwrap();
        assert!(dot.contains("0 -> 1"));
        assert!(dot.contains("label=\"g^2\""));

        let big = Digraph::from_arcs(2001, &[]).unwrap();
        assert!(matches!(big.to_dot(), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn s_arc_bound_is_enforced() {
        let c4 = directed_cycle(4);
        let rot = Permutation::parse_cycles(4, "(1,2,3,4)").unwrap();
        assert!(matches!(
            c4.is_s_arc_transitive_under(&[rot], 1, 3),
            Err(Error::ArcBoundExceeded { count: 4, bound: 3 })
        ));
    }
}
