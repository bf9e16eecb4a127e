//! Factories for the built-in digraph families.
//!
//! Two families are provided, both as Cayley digraphs on explicit
//! permutation groups together with the larger groups witnessing their
//! symmetry:
//!
//! * [`build_gamma`] — for each rank `s ≥ 2`, a 2-valent digraph on a
//!   group of order `2^(s+1)·s`, acted on by a witness group of order
//!   `2^(2s)·2s` in which the vertex group is a right transversal of a
//!   point stabilizer of order `2^s`.
//! * [`build_sigma`] — a single digraph on 441 vertices of valency 160,
//!   built from linear fractional transformations of the projective line
//!   over F7 acting coordinate-wise on 64 points, with a witness group of
//!   order 112896 and a point stabilizer of order 256.
//!
//! The module also provides [`linear_fractional`], [`evaluate_word`] (a
//! reader for elements written as words in named generators, used by the
//! identity fixtures in `fixtures/sigma_identities.json`), and
//! [`tensor_power`].

use std::collections::{BTreeMap, HashSet};

use serde::Deserialize;

use crate::cyclo::pq::{connection_pieces, PqElement};
use crate::digraph::{cayley_digraph, product_permutation, swap_permutation, Digraph};
use crate::perm::{CosetAction, Permutation, PermutationGroup};
use crate::{Error, Result, DEFAULT_ENUM_BOUND};

/// Number of points of the projective line over F7; 0..=6 are the field
/// elements and 7 encodes the point at infinity.
pub const PROJECTIVE_LINE_POINTS: usize = 8;

const INFINITY: usize = 7;

/// Multiplicative inverses mod 7, indexed by 1..=6.
const INVERSE_MOD_7: [i64; 7] = [0, 1, 4, 5, 2, 3, 6];

fn ensure(cond: bool, context: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(context()))
    }
}

/// Permutation of the projective line over F7 induced by an invertible
/// matrix `[[a, b], [c, d]]` acting on row vectors: `x ↦ (ax + c)/(bx + d)`,
/// with `x = -d/b ↦ ∞` and `∞ ↦ a/b` (`∞ ↦ ∞` when `b = 0`).
pub fn linear_fractional(matrix: [[i64; 2]; 2]) -> Result<Permutation> {
    let a = matrix[0][0].rem_euclid(7);
    let b = matrix[0][1].rem_euclid(7);
    let c = matrix[1][0].rem_euclid(7);
    let d = matrix[1][1].rem_euclid(7);
    if (a * d - b * c) % 7 == 0 {
        return Err(Error::Singular);
    }
    let mut images = Vec::with_capacity(PROJECTIVE_LINE_POINTS);
    for x in 0..7 {
        let num = (a * x + c).rem_euclid(7);
        let den = (b * x + d).rem_euclid(7);
        images.push(if den == 0 {
            INFINITY
        } else {
            ((num * INVERSE_MOD_7[den as usize]) % 7) as usize
        });
    }
    images.push(if b == 0 {
        INFINITY
    } else {
        ((a * INVERSE_MOD_7[b as usize]) % 7) as usize
    });
    Permutation::new(images)
}

// ---------------------------------------------------------------------------
// Word evaluation
// ---------------------------------------------------------------------------

/// Evaluates a word in named generator permutations.
///
/// Grammar: a word is a sequence of factors multiplied left to right; each
/// factor is a generator name, `1` (the identity), or a parenthesized word,
/// optionally followed by an integer exponent written `^k`, `^-k`, or
/// `^{k}`. Whitespace and `*` are ignored. Generator names are matched
/// greedily (longest first), so multi-letter names such as `alpha` take
/// precedence over the single letter `a`. The empty word is the identity.
pub fn evaluate_word(
    text: &str,
    generators: &BTreeMap<String, Permutation>,
) -> Result<Permutation> {
    let degree = match generators.values().next() {
        Some(p) => p.degree(),
        None => {
            return Err(Error::Parse(
                "no generators given for word evaluation".into(),
            ))
        }
    };
    for (name, p) in generators {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: p.degree(),
            });
        }
        if name.is_empty() || !name.bytes().all(|b| b.is_ascii_alphabetic()) {
            return Err(Error::Parse(format!(
                "generator name {name:?} must be non-empty and alphabetic"
            )));
        }
    }
    let mut names: Vec<&str> = generators.keys().map(String::as_str).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    let mut parser = WordParser {
        text: text.as_bytes(),
        pos: 0,
        degree,
        generators,
        names,
    };
    let result = parser.word()?;
    parser.skip_filler();
    if parser.pos != parser.text.len() {
        return Err(parser.fail("unexpected trailing input"));
    }
    Ok(result)
}

struct WordParser<'a> {
    text: &'a [u8],
    pos: usize,
    degree: usize,
    generators: &'a BTreeMap<String, Permutation>,
    /// Generator names, longest first.
    names: Vec<&'a str>,
}

impl WordParser<'_> {
    fn fail(&self, message: &str) -> Error {
        Error::Parse(format!(
            "{message} at byte {} of word {:?}",
            self.pos,
            String::from_utf8_lossy(self.text)
        ))
    }

    fn skip_filler(&mut self) {
        while let Some(&b) = self.text.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'*' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Permutation> {
        let mut acc = Permutation::identity(self.degree);
        loop {
            self.skip_filler();
            match self.peek() {
                None | Some(b')') => return Ok(acc),
                _ => acc = acc.compose(&self.factor()?),
            }
        }
    }

    fn factor(&mut self) -> Result<Permutation> {
        let atom = self.atom()?;
        self.skip_filler();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exponent = self.integer()?;
            Ok(atom.pow(exponent))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Permutation> {
        self.skip_filler();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Permutation::identity(self.degree))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let rest = &self.text[self.pos..];
                for name in &self.names {
                    if rest.starts_with(name.as_bytes()) {
                        self.pos += name.len();
                        return Ok(self.generators[*name].clone());
                    }
                }
                Err(self.fail("unknown generator name"))
            }
            _ => Err(self.fail("expected a generator, '1', or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_filler();
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
            self.skip_filler();
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected an integer exponent"));
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        let mut value: i64 = digits
            .parse()
            .map_err(|_| self.fail("exponent out of range"))?;
        if negative {
            value = -value;
        }
        if braced {
            self.skip_filler();
            if self.peek() != Some(b'}') {
                return Err(self.fail("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(value)
    }
}

// ---------------------------------------------------------------------------
// The rank-parameterized 2-valent family
// ---------------------------------------------------------------------------

/// One member of the rank-parameterized 2-valent family, with every group
/// needed to witness its symmetry.
///
/// All permutations act on `4s` points. The vertex group `R = <a, b>` has
/// order `2^(s+1)·s`; its Cayley digraph on the connection set `{a·b, b}`
/// is the digraph of interest. The witness group `G = <h, g>` has order
/// `2^(2s)·2s` and contains `R` as a right transversal of the point
/// stabilizer `H = <h, h^g, …, h^(g^(s-1))>` of order `2^s`, so `G` acts
/// on the digraph through the coset action.
pub struct GammaFamilyInstance {
    /// Rank parameter.
    pub s: usize,
    /// The double transposition `(2s-1, 2s)(4s-1, 4s)`.
    pub gen_a: Permutation,
    /// The `4s`-cycle `(1, 3, …, 4s-1, 2, 4, …, 4s)`.
    pub gen_b: Permutation,
    /// The transposition `(1, 2)`.
    pub gen_h: Permutation,
    /// The product of the two `2s`-cycles `(1, 3, …, 4s-1)(2, 4, …, 4s)`.
    pub gen_g: Permutation,
    /// Vertex group `R = <a, b>`.
    pub vertex_group: PermutationGroup,
    /// Elementary abelian normal subgroup `N = <a, a^b, …, a^(b^(s-1))>`
    /// of `R`, of order `2^s`.
    pub normal_subgroup: PermutationGroup,
    /// Witness group `G = <h, g>`.
    pub witness_group: PermutationGroup,
    /// Point stabilizer `H = <h, h^g, …, h^(g^(s-1))>` inside `G`.
    pub stabilizer: PermutationGroup,
    /// All elements of the vertex group, in breadth-first word order from
    /// the identity over the connection set.
    pub vertex_elements: Vec<Permutation>,
    /// Connection set `[a·b, b]`.
    pub connection: [Permutation; 2],
    /// Cayley digraph of the vertex group over the connection set.
    pub digraph: Digraph,
    /// Action of the witness group on the right cosets of the stabilizer.
    pub coset_action: CosetAction,
}

/// Builds the rank-`s` member of the 2-valent family with the default
/// enumeration bound.
pub fn build_gamma(s: usize) -> Result<GammaFamilyInstance> {
    build_gamma_bounded(s, DEFAULT_ENUM_BOUND)
}

/// Builds the rank-`s` member of the 2-valent family. The witness group
/// has order `2^(2s)·2s`, which must stay within `enum_bound`.
pub fn build_gamma_bounded(s: usize, enum_bound: u128) -> Result<GammaFamilyInstance> {
    ensure(s >= 2, || {
        format!("rank parameter must be at least 2, got {s}")
    })?;
    ensure(s <= 40, || {
        format!("rank parameter {s} is out of the supported range")
    })?;
    let degree = 4 * s;
    let odds: Vec<usize> = (1..=degree).step_by(2).collect();
    let evens: Vec<usize> = (2..=degree).step_by(2).collect();

    let gen_a =
        Permutation::from_cycles(degree, &[vec![2 * s - 1, 2 * s], vec![4 * s - 1, 4 * s]])?;
    let mut long_cycle = odds.clone();
    long_cycle.extend(&evens);
    let gen_b = Permutation::from_cycles(degree, &[long_cycle])?;
    let gen_h = Permutation::from_cycles(degree, &[vec![1, 2]])?;
    let gen_g = Permutation::from_cycles(degree, &[odds, evens])?;

    // The vertex-group generators are recovered inside the witness group.
    let expected_a = gen_h
        .conjugate_by(&gen_g.pow(s as i64 - 1))
        .compose(&gen_h.conjugate_by(&gen_g.pow(-1)));
    ensure(gen_a == expected_a, || {
        format!("a != h^(g^{})·h^(g^-1) at rank {s}", s - 1)
    })?;
    ensure(gen_b == gen_g.compose(&gen_h), || {
        format!("b != g·h at rank {s}")
    })?;

    let vertex_group = PermutationGroup::new(degree, vec![gen_a.clone(), gen_b.clone()])?;
    let r_order = (1u128 << (s + 1)) * s as u128;
    ensure(vertex_group.order()? == r_order, || {
        format!("vertex group order is not 2^{}·{s}", s + 1)
    })?;

    let normal_subgroup = PermutationGroup::new(
        degree,
        (0..s)
            .map(|l| gen_a.conjugate_by(&gen_b.pow(l as i64)))
            .collect(),
    )?;
    ensure(normal_subgroup.order()? == 1u128 << s, || {
        format!("normal subgroup order is not 2^{s}")
    })?;

    let witness_group = PermutationGroup::new(degree, vec![gen_h.clone(), gen_g.clone()])?;
    let g_order = (1u128 << (2 * s)) * (2 * s) as u128;
    ensure(witness_group.order()? == g_order, || {
        format!("witness group order is not 2^{}·{}", 2 * s, 2 * s)
    })?;
    if g_order > enum_bound {
        return Err(Error::EnumerationBound {
            order: g_order,
            bound: enum_bound,
        });
    }

    let stabilizer = PermutationGroup::new(
        degree,
        (0..s)
            .map(|i| gen_h.conjugate_by(&gen_g.pow(i as i64)))
            .collect(),
    )?;
    ensure(stabilizer.order()? == 1u128 << s, || {
        format!("stabilizer order is not 2^{s}")
    })?;

    let ab = gen_a.compose(&gen_b);
    let connection = [ab, gen_b.clone()];
    let vertex_elements = breadth_first_elements(degree, &connection, r_order as usize)?;
    let digraph = cayley_digraph(&vertex_elements, &connection)?;
    let coset_action = CosetAction::new(&witness_group, &stabilizer, enum_bound)?;

    Ok(GammaFamilyInstance {
        s,
        gen_a,
        gen_b,
        gen_h,
        gen_g,
        vertex_group,
        normal_subgroup,
        witness_group,
        stabilizer,
        vertex_elements,
        connection,
        digraph,
        coset_action,
    })
}

impl GammaFamilyInstance {
    /// Named generators for word evaluation: `a`, `b`, `h`, `g`.
    pub fn generator_map(&self) -> BTreeMap<String, Permutation> {
        BTreeMap::from([
            ("a".into(), self.gen_a.clone()),
            ("b".into(), self.gen_b.clone()),
            ("h".into(), self.gen_h.clone()),
            ("g".into(), self.gen_g.clone()),
        ])
    }
}

/// Enumerates the group generated by `connection` in breadth-first order
/// from the identity, multiplying by connection elements on the left (the
/// out-neighbor direction of the Cayley digraph). Fails if the count does
/// not match `expected`.
fn breadth_first_elements(
    degree: usize,
    connection: &[Permutation],
    expected: usize,
) -> Result<Vec<Permutation>> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(expected);
    seen.insert(identity.images().to_vec());
    let mut order = vec![identity];
    let mut head = 0;
    while head < order.len() {
        let current = order[head].clone();
        head += 1;
        for s in connection {
            let next = s.compose(&current);
            if order.len() >= expected && !seen.contains(next.images()) {
                return Err(Error::Invariant(format!(
                    "breadth-first enumeration exceeds the expected {expected} elements"
                )));
            }
            if seen.insert(next.images().to_vec()) {
                order.push(next);
            }
        }
    }
    ensure(order.len() == expected, || {
        format!(
            "connection set generates {} elements, expected {expected}",
            order.len()
        )
    })?;
    Ok(order)
}

// ---------------------------------------------------------------------------
// The 441-vertex valency-160 construction
// ---------------------------------------------------------------------------

/// The 441-vertex digraph of valency 160, with its groups.
///
/// All permutations act on the 64 points of the square of the projective
/// line over F7, a pair `(x, y)` being encoded as `8·x + y` with `∞ ↦ 7`.
/// Generators `a, b` move the first coordinate (`x ↦ x+1`, `x ↦ 2x`)
/// and `c, d` are their second-coordinate copies; the vertex group
/// `R = <a, b, c, d>` has order 441 and the digraph is its Cayley digraph
/// over the 160-element connection set assembled from six product blocks.
/// The stabilizer generators are `s: x ↦ (2x+1)/(x+1)`, `t: x ↦ -1/x`,
/// their second-coordinate copies `u, v`, the diagonal `alpha:
/// z ↦ -z/(z+1)` on both coordinates, and the coordinate swap `beta`.
pub struct SigmaInstance {
    /// `(x, y) ↦ (x + 1, y)`.
    pub gen_a: Permutation,
    /// `(x, y) ↦ (2x, y)`.
    pub gen_b: Permutation,
    /// `(x, y) ↦ (x, y + 1)`.
    pub gen_c: Permutation,
    /// `(x, y) ↦ (x, 2y)`.
    pub gen_d: Permutation,
    /// `(x, y) ↦ ((2x+1)/(x+1), y)`.
    pub gen_s: Permutation,
    /// `(x, y) ↦ (-1/x, y)`.
    pub gen_t: Permutation,
    /// Second-coordinate copy of `s` (equals `s^beta`).
    pub gen_u: Permutation,
    /// Second-coordinate copy of `t` (equals `t^beta`).
    pub gen_v: Permutation,
    /// `(x, y) ↦ (-x/(x+1), -y/(y+1))`.
    pub gen_alpha: Permutation,
    /// `(x, y) ↦ (y, x)`.
    pub gen_beta: Permutation,
    /// First double-coset representative `a^4·c^5`, acting as
    /// `(x, y) ↦ (x + 4, y + 5)`.
    pub g1: Permutation,
    /// Second double-coset representative `a^2·c^3·d^2`, acting as
    /// `(x, y) ↦ (x + 2, 4y + 5)`.
    pub g2: Permutation,
    /// Vertex group `R = <a, b, c, d>` of order 441.
    pub vertex_group: PermutationGroup,
    /// Witness group `G = <a, b, c, d, t, v, alpha, beta>` of order 112896.
    pub witness_group: PermutationGroup,
    /// Point stabilizer `H = <s, t, u, v, alpha, beta>` of order 256.
    pub stabilizer: PermutationGroup,
    /// The 441 vertex-group elements in normal-form order: `a^i b^j c^k d^l`
    /// at index `63i + 21j + 3k + l`.
    pub vertex_elements: Vec<Permutation>,
    /// The six pairwise disjoint product blocks of the connection set, in
    /// display order.
    pub connection_blocks: [Vec<Permutation>; 6],
    /// The full 160-element connection set (blocks concatenated).
    pub connection: Vec<Permutation>,
    /// Cayley digraph of the vertex group over the connection set.
    pub digraph: Digraph,
    /// Action of the witness group on the right cosets of the stabilizer.
    pub coset_action: CosetAction,
}

/// Builds the 441-vertex instance with the default enumeration bound.
pub fn build_sigma() -> Result<SigmaInstance> {
    build_sigma_bounded(DEFAULT_ENUM_BOUND)
}

/// Builds the 441-vertex instance, enumerating subgroups up to `enum_bound`.
pub fn build_sigma_bounded(enum_bound: u128) -> Result<SigmaInstance> {
    let id8 = Permutation::identity(PROJECTIVE_LINE_POINTS);
    let shift = linear_fractional([[1, 0], [1, 1]])?; // x ↦ x + 1
    let double = linear_fractional([[2, 0], [0, 1]])?; // x ↦ 2x
    let quarter_turn = linear_fractional([[2, 1], [1, 1]])?; // x ↦ (2x+1)/(x+1)
    let negate_invert = linear_fractional([[0, 1], [-1, 0]])?; // x ↦ -1/x
    let diagonal_part = linear_fractional([[-1, 1], [0, 1]])?; // x ↦ -x/(x+1)

    let gen_a = product_permutation(&shift, &id8);
    let gen_b = product_permutation(&double, &id8);
    let gen_c = product_permutation(&id8, &shift);
    let gen_d = product_permutation(&id8, &double);
    let gen_s = product_permutation(&quarter_turn, &id8);
    let gen_t = product_permutation(&negate_invert, &id8);
    let gen_u = product_permutation(&id8, &quarter_turn);
    let gen_v = product_permutation(&id8, &negate_invert);
    let gen_alpha = product_permutation(&diagonal_part, &diagonal_part);
    let gen_beta = swap_permutation(PROJECTIVE_LINE_POINTS);

    ensure(gen_u == gen_s.conjugate_by(&gen_beta), || {
        "u is not the beta-conjugate of s".into()
    })?;
    ensure(gen_v == gen_t.conjugate_by(&gen_beta), || {
        "v is not the beta-conjugate of t".into()
    })?;

    let g1 = gen_a.pow(4).compose(&gen_c.pow(5));
    let g2 = gen_a.pow(2).compose(&gen_c.pow(3)).compose(&gen_d.pow(2));

    let vertex_group = PermutationGroup::new(
        64,
        vec![gen_a.clone(), gen_b.clone(), gen_c.clone(), gen_d.clone()],
    )?;
    ensure(vertex_group.order()? == 441, || {
        "vertex group order is not 441".into()
    })?;

    let witness_group = PermutationGroup::new(
        64,
        vec![
            gen_a.clone(),
            gen_b.clone(),
            gen_c.clone(),
            gen_d.clone(),
            gen_t.clone(),
            gen_v.clone(),
            gen_alpha.clone(),
            gen_beta.clone(),
        ],
    )?;
    ensure(witness_group.order()? == 112_896, || {
        "witness group order is not 112896".into()
    })?;

    let stabilizer = PermutationGroup::new(
        64,
        vec![
            gen_s.clone(),
            gen_t.clone(),
            gen_u.clone(),
            gen_v.clone(),
            gen_alpha.clone(),
            gen_beta.clone(),
        ],
    )?;
    ensure(stabilizer.order()? == 256, || {
        "stabilizer order is not 256".into()
    })?;

    // Powers of the coordinate generators for normal-form products.
    let embed_first = |e: &PqElement| -> Permutation {
        gen_a
            .pow(e.exp_a() as i64)
            .compose(&gen_b.pow(e.exp_b() as i64))
    };
    let embed_second = |e: &PqElement| -> Permutation {
        gen_c
            .pow(e.exp_a() as i64)
            .compose(&gen_d.pow(e.exp_b() as i64))
    };

    let mut vertex_elements = Vec::with_capacity(441);
    for i in 0..7 {
        for j in 0..3 {
            let first = embed_first(&PqElement::new(i, j));
            for k in 0..7 {
                for l in 0..3 {
                    vertex_elements.push(first.compose(&embed_second(&PqElement::new(k, l))));
                }
            }
        }
    }

    let pieces = connection_pieces();
    let with_inverses = |xs: &[PqElement], ys: &[PqElement]| -> Vec<PqElement> {
        let mut all = xs.to_vec();
        all.extend_from_slice(ys);
        all
    };
    let p1_full = with_inverses(&pieces.p1, &pieces.p1_inv);
    let p3_full = with_inverses(&pieces.p3, &pieces.p3_inv);
    let block = |firsts: &[PqElement], seconds: &[PqElement]| -> Vec<Permutation> {
        let mut out = Vec::with_capacity(firsts.len() * seconds.len());
        for x in firsts {
            for y in seconds {
                out.push(embed_first(x).compose(&embed_second(y)));
            }
        }
        out
    };
    let connection_blocks = [
        block(&p1_full, &p3_full),
        block(&p3_full, &p1_full),
        block(&pieces.p1, &pieces.p2),
        block(&pieces.p2, &pieces.p1),
        block(&pieces.p1_inv, &pieces.p4),
        block(&pieces.p4, &pieces.p1_inv),
    ];

    let mut connection = Vec::with_capacity(160);
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(160);
    for (index, piece) in connection_blocks.iter().enumerate() {
        for x in piece {
            ensure(seen.insert(x.images().to_vec()), || {
                format!("connection block {} overlaps an earlier block", index + 1)
            })?;
            connection.push(x.clone());
        }
    }
    ensure(connection.len() == 160, || {
        format!(
            "connection set has {} elements, expected 160",
            connection.len()
        )
    })?;

    let digraph = cayley_digraph(&vertex_elements, &connection)?;
    let coset_action = CosetAction::new(&witness_group, &stabilizer, enum_bound)?;

    Ok(SigmaInstance {
        gen_a,
        gen_b,
        gen_c,
        gen_d,
        gen_s,
        gen_t,
        gen_u,
        gen_v,
        gen_alpha,
        gen_beta,
        g1,
        g2,
        vertex_group,
        witness_group,
        stabilizer,
        vertex_elements,
        connection_blocks,
        connection,
        digraph,
        coset_action,
    })
}

impl SigmaInstance {
    /// Named generators for word evaluation: `a`, `b`, `c`, `d`, `s`, `t`,
    /// `u`, `v`, `alpha`, `beta`.
    pub fn generator_map(&self) -> BTreeMap<String, Permutation> {
        BTreeMap::from([
            ("a".into(), self.gen_a.clone()),
            ("b".into(), self.gen_b.clone()),
            ("c".into(), self.gen_c.clone()),
            ("d".into(), self.gen_d.clone()),
            ("s".into(), self.gen_s.clone()),
            ("t".into(), self.gen_t.clone()),
            ("u".into(), self.gen_u.clone()),
            ("v".into(), self.gen_v.clone()),
            ("alpha".into(), self.gen_alpha.clone()),
            ("beta".into(), self.gen_beta.clone()),
        ])
    }

    /// The double-coset representative for `j ∈ {1, 2}`.
    pub fn coset_rep(&self, j: u8) -> Result<&Permutation> {
        match j {
            1 => Ok(&self.g1),
            2 => Ok(&self.g2),
            _ => Err(Error::Invariant(format!(
                "double-coset representative index must be 1 or 2, got {j}"
            ))),
        }
    }

    /// Involutions of a conjugate of a stabilizer piece, named by a key
    /// from [`INVOLUTION_SET_KEYS`]: `st`/`uv` name the dihedral factors
    /// `<s, t>` and `<u, v>`, `n_alpha`, `n_beta` and `n_alpha_beta` name
    /// the cosets of `N = <s, t, u, v>` in the stabilizer, and the suffix
    /// picks the conjugating representative `g1` or `g2`.
    pub fn conjugate_involutions(&self, key: &str) -> Result<Vec<Permutation>> {
        let (base, conjugator) = match key.rsplit_once("_g") {
            Some((base, "1")) => (base, &self.g1),
            Some((base, "2")) => (base, &self.g2),
            _ => {
                return Err(Error::Invariant(format!(
                    "unknown involution-set key {key:?}"
                )))
            }
        };
        let shift = match base {
            "st" | "uv" => None,
            "n_alpha" => Some(self.gen_alpha.clone()),
            "n_beta" => Some(self.gen_beta.clone()),
            "n_alpha_beta" => Some(self.gen_alpha.compose(&self.gen_beta)),
            _ => {
                return Err(Error::Invariant(format!(
                    "unknown involution-set key {key:?}"
                )))
            }
        };
        let generators = match base {
            "st" => vec![self.gen_s.clone(), self.gen_t.clone()],
            "uv" => vec![self.gen_u.clone(), self.gen_v.clone()],
            _ => vec![
                self.gen_s.clone(),
                self.gen_t.clone(),
                self.gen_u.clone(),
                self.gen_v.clone(),
            ],
        };
        let group = PermutationGroup::new(64, generators)?;
        let mut involutions = Vec::new();
        for element in group.enumerate(DEFAULT_ENUM_BOUND)? {
            let coset_element = match &shift {
                Some(sh) => element.compose(sh),
                None => element.clone(),
            };
            let conjugated = coset_element.conjugate_by(conjugator);
            if !conjugated.is_identity() && conjugated.compose(&conjugated).is_identity() {
                involutions.push(conjugated);
            }
        }
        Ok(involutions)
    }
}

/// Keys of the ten frozen conjugate involution sets, in fixture order.
pub const INVOLUTION_SET_KEYS: [&str; 10] = [
    "st_g1",
    "uv_g1",
    "n_alpha_g1",
    "n_beta_g1",
    "n_alpha_beta_g1",
    "st_g2",
    "uv_g2",
    "n_alpha_g2",
    "n_beta_g2",
    "n_alpha_beta_g2",
];

// ---------------------------------------------------------------------------
// Tensor powers
// ---------------------------------------------------------------------------

/// The `n`-fold tensor power of a digraph (`n ≥ 1`); vertex tuples are
/// flattened in row-major order, matching iterated Kronecker products of
/// the adjacency matrix.
pub fn tensor_power(digraph: &Digraph, n: usize) -> Result<Digraph> {
    ensure(n >= 1, || "tensor power must be at least 1".into())?;
    let mut result = digraph.clone();
    for _ in 1..n {
        result = result.tensor_product(digraph);
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Frozen word fixtures
// ---------------------------------------------------------------------------

/// One row of the double-coset factorization fixture: the connection-set
/// element `x` (a word in the vertex group) equals `h·g_j·k` with `h` and
/// `k` words in the point stabilizer.
#[derive(Clone, Debug, Deserialize)]
pub struct DoubleCosetRow {
    pub x: String,
    pub h: String,
    pub k: String,
    pub j: u8,
}

/// Frozen word identities for the 441-vertex instance: the double-coset
/// factorization of 48 connection-set elements, the ten conjugate
/// involution sets, and the stabilizer meets.
#[derive(Clone, Debug, Deserialize)]
pub struct SigmaWordData {
    pub format: String,
    pub double_coset_rows: Vec<DoubleCosetRow>,
    pub conjugate_involution_sets: BTreeMap<String, Vec<String>>,
    pub stabilizer_meet_g1: Vec<String>,
    pub stabilizer_meet_g2: Vec<String>,
    pub stabilizer_intersection_g2: Vec<String>,
}

const SIGMA_IDENTITIES_JSON: &str = include_str!("../fixtures/sigma_identities.json");

/// Loads the frozen word-identity fixture.
pub fn sigma_word_data() -> Result<SigmaWordData> {
    Ok(serde_json::from_str(SIGMA_IDENTITIES_JSON)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::gamma_rep::NormalWord;
    use crate::perm::involutions_in;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::sync::OnceLock;

    /// Exponents (k, l, m, n, e, f) of a stabilizer normal form
    /// s^k t^l u^m v^n alpha^e beta^f.
    type NormalFormExponents = (i64, i64, i64, i64, i64, i64);

    fn sigma() -> &'static SigmaInstance {
        static SIGMA: OnceLock<SigmaInstance> = OnceLock::new();
        SIGMA.get_or_init(|| build_sigma().expect("441-vertex instance builds"))
    }

    fn image_set(perms: &[Permutation]) -> HashSet<Vec<usize>> {
        perms.iter().map(|p| p.images().to_vec()).collect()
    }

    fn parse_words(words: &[String], map: &BTreeMap<String, Permutation>) -> Vec<Permutation> {
        words
            .iter()
            .map(|w| evaluate_word(w, map).expect("fixture word parses"))
            .collect()
    }

    #[test]
    fn linear_fractional_basics() {
        let id = linear_fractional([[1, 0], [0, 1]]).unwrap();
        assert!(id.is_identity());

        let quarter = linear_fractional([[0, 1], [-1, 0]]).unwrap();
        assert_eq!(quarter.apply(0), INFINITY);
        assert_eq!(quarter.apply(INFINITY), 0);
        assert_eq!(quarter.apply(1), 6); // -1/1 = 6 mod 7

        let diagonal = linear_fractional([[-1, 1], [0, 1]]).unwrap();
        assert_eq!(diagonal.apply(0), 0);
        assert_eq!(diagonal.apply(6), INFINITY); // x = -d/b = -1 ↦ ∞
        assert_eq!(diagonal.apply(INFINITY), 6); // ∞ ↦ a/b = -1

        assert!(matches!(
            linear_fractional([[2, 4], [3, 6]]),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn linear_fractional_is_multiplicative() {
        let samples = [
            [[1, 0], [1, 1]],
            [[2, 0], [0, 1]],
            [[2, 1], [1, 1]],
            [[0, 1], [-1, 0]],
            [[-1, 1], [0, 1]],
            [[3, 2], [5, 2]],
        ];
        for m1 in &samples {
            for m2 in &samples {
                let product = [
                    [
                        m1[0][0] * m2[0][0] + m1[0][1] * m2[1][0],
                        m1[0][0] * m2[0][1] + m1[0][1] * m2[1][1],
                    ],
                    [
                        m1[1][0] * m2[0][0] + m1[1][1] * m2[1][0],
                        m1[1][0] * m2[0][1] + m1[1][1] * m2[1][1],
                    ],
                ];
                // Row vectors: (x : 1)·(M1·M2) = ((x : 1)·M1)·M2, so the
                // permutation of the product is the left-to-right composite.
                assert_eq!(
                    linear_fractional(product).unwrap(),
                    linear_fractional(*m1)
                        .unwrap()
                        .compose(&linear_fractional(*m2).unwrap())
                );
            }
        }
    }

    #[test]
    fn word_evaluation_handles_grammar() {
        let gamma = build_gamma(2).unwrap();
        let map = gamma.generator_map();
        let a = &gamma.gen_a;
        let b = &gamma.gen_b;

        assert!(evaluate_word("", &map).unwrap().is_identity());
        assert!(evaluate_word("1", &map).unwrap().is_identity());
        assert_eq!(evaluate_word("ab", &map).unwrap(), a.compose(b));
        assert_eq!(evaluate_word("a b^2", &map).unwrap(), a.compose(&b.pow(2)));
        assert_eq!(evaluate_word("b^{10}", &map).unwrap(), b.pow(10));
        assert_eq!(evaluate_word("b^-1ab", &map).unwrap(), a.conjugate_by(b));
        assert_eq!(
            evaluate_word("(ab^2)^-1", &map).unwrap(),
            a.compose(&b.pow(2)).inverse()
        );
        assert_eq!(evaluate_word(" a * b ", &map).unwrap(), a.compose(b));

        assert!(evaluate_word("ax", &map).is_err());
        assert!(evaluate_word("(ab", &map).is_err());
        assert!(evaluate_word("a^", &map).is_err());
        assert!(evaluate_word("a^{2", &map).is_err());
        assert!(evaluate_word("ab)", &map).is_err());
    }

    #[test]
    fn word_evaluation_prefers_longest_name() {
        let sigma = sigma();
        let map = sigma.generator_map();
        assert_eq!(
            evaluate_word("alpha beta", &map).unwrap(),
            sigma.gen_alpha.compose(&sigma.gen_beta)
        );
        // "ab" must parse as a·b even though "alpha" starts with 'a'.
        assert_eq!(
            evaluate_word("ab", &map).unwrap(),
            sigma.gen_a.compose(&sigma.gen_b)
        );
        assert_eq!(
            evaluate_word("alphabeta", &map).unwrap(),
            sigma.gen_alpha.compose(&sigma.gen_beta)
        );
    }

    #[test]
    fn rank_two_and_three_instances_have_documented_structure() {
        for s in [2usize, 3] {
            let inst = build_gamma(s).unwrap();
            assert_eq!(inst.vertex_elements.len(), (1 << (s + 1)) * s);
            assert_eq!(inst.digraph.vertex_count(), (1 << (s + 1)) * s);

            // Conjugates of the double transposition walk along the cycle.
            for l in 1..=s {
                let expected = Permutation::from_cycles(
                    4 * s,
                    &[
                        vec![2 * l - 1, 2 * l],
                        vec![2 * s + 2 * l - 1, 2 * s + 2 * l],
                    ],
                )
                .unwrap();
                assert_eq!(inst.gen_a.conjugate_by(&inst.gen_b.pow(l as i64)), expected);
            }

            // The stabilizer is the direct product of the s transpositions
            // (1,2), (3,4), …, (2s-1, 2s).
            let transpositions: Vec<Permutation> = (0..s)
                .map(|i| Permutation::from_cycles(4 * s, &[vec![2 * i + 1, 2 * i + 2]]).unwrap())
                .collect();
            let product_group = PermutationGroup::new(4 * s, transpositions).unwrap();
            assert_eq!(product_group.order().unwrap(), 1 << s);
            assert!(inst.stabilizer.is_overgroup_of(&product_group).unwrap());
            assert!(product_group.is_overgroup_of(&inst.stabilizer).unwrap());

            // b^(2s) is the product of all stabilized double transpositions.
            let mut all_involutions = Permutation::identity(4 * s);
            for l in 0..s {
                all_involutions =
                    all_involutions.compose(&inst.gen_a.conjugate_by(&inst.gen_b.pow(l as i64)));
            }
            assert_eq!(inst.gen_b.pow(2 * s as i64), all_involutions);

            // g·h·g^-1 moves the transposition out of the stabilizer.
            let moved = inst.gen_h.conjugate_by(&inst.gen_g.pow(-1));
            assert_eq!(
                moved,
                Permutation::from_cycles(4 * s, &[vec![4 * s - 1, 4 * s]]).unwrap()
            );
            assert!(!inst.stabilizer.contains(&moved).unwrap());

            // The normal subgroup is normal in the vertex group and the
            // quotient is cyclic of order 2s, witnessed by b's image.
            for r in inst.vertex_group.generators() {
                for n in inst.normal_subgroup.generators() {
                    assert!(inst.normal_subgroup.contains(&n.conjugate_by(r)).unwrap());
                }
            }
            assert!(inst
                .normal_subgroup
                .contains(&inst.gen_b.pow(2 * s as i64))
                .unwrap());

            // The vertex group meets the stabilizer trivially and labels
            // every coset exactly once (right transversal).
            let mut labels = HashSet::new();
            for x in &inst.vertex_elements {
                assert!(x.is_identity() || !inst.stabilizer.contains(x).unwrap());
                assert!(labels.insert(inst.coset_action.label_of(x).unwrap()));
            }
            assert_eq!(labels.len(), inst.coset_action.degree());
        }
    }

    #[test]
    fn rank_parameter_below_two_is_rejected() {
        assert!(build_gamma(0).is_err());
        assert!(build_gamma(1).is_err());
    }

    #[test]
    fn normal_form_words_map_onto_vertex_group() {
        // The abstract normal-form words multiply exactly like the
        // permutations they name: eps[k] is the exponent of the conjugate
        // a^(b^(k+1)) and m the power of b.
        let mut rng = StdRng::seed_from_u64(0x5eed_c0de);
        for s in 2..=5usize {
            let inst = build_gamma(s).unwrap();
            let to_perm = |w: &NormalWord| -> Permutation {
                let mut acc = Permutation::identity(4 * s);
                for (k, &e) in w.eps().iter().enumerate() {
                    if e == 1 {
                        acc = acc.compose(&inst.gen_a.conjugate_by(&inst.gen_b.pow(k as i64 + 1)));
                    }
                }
                acc.compose(&inst.gen_b.pow(w.power_of_b() as i64))
            };

            assert_eq!(to_perm(&NormalWord::word_ab(s)), inst.connection[0]);
            assert_eq!(to_perm(&NormalWord::word_b(s)), inst.connection[1]);

            for _ in 0..40 {
                let random_word = |rng: &mut StdRng| {
                    let eps: Vec<u8> = (0..s).map(|_| rng.gen_range(0..2u8)).collect();
                    NormalWord::new(eps, rng.gen_range(0..4 * s as u64))
                };
                let x = random_word(&mut rng);
                let y = random_word(&mut rng);
                assert_eq!(to_perm(&x.mul(&y)), to_perm(&x).compose(&to_perm(&y)));
            }
        }
    }

    #[test]
    fn sigma_groups_have_documented_orders() {
        let inst = sigma();
        assert_eq!(inst.vertex_group.order().unwrap(), 441);
        assert_eq!(inst.witness_group.order().unwrap(), 112_896);
        assert_eq!(inst.stabilizer.order().unwrap(), 256);
        assert_eq!(inst.vertex_elements.len(), 441);
        assert_eq!(inst.connection.len(), 160);
        assert_eq!(
            inst.connection_blocks
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>(),
            vec![64, 64, 8, 8, 8, 8]
        );
        assert_eq!(inst.digraph.vertex_count(), 441);
        assert_eq!(inst.coset_action.degree(), 441);
    }

    #[test]
    fn coset_representatives_translate_coordinates() {
        let inst = sigma();
        let expect = |p: &Permutation, f: &dyn Fn(usize) -> usize, g: &dyn Fn(usize) -> usize| {
            for x in 0..8 {
                for y in 0..8 {
                    let fx = if x == INFINITY { INFINITY } else { f(x) };
                    let gy = if y == INFINITY { INFINITY } else { g(y) };
                    assert_eq!(p.apply(8 * x + y), 8 * fx + gy);
                }
            }
        };
        // (x, y) ↦ (x + 4, y + 5)
        expect(&inst.g1, &|x| (x + 4) % 7, &|y| (y + 5) % 7);
        // (x, y) ↦ (x + 2, 4y + 5)
        expect(&inst.g2, &|x| (x + 2) % 7, &|y| (4 * y + 5) % 7);
    }

    #[test]
    fn vertex_elements_follow_normal_form_arithmetic() {
        let inst = sigma();
        // Index arithmetic: a^i b^j c^k d^l sits at 63i + 21j + 3k + l.
        let all = crate::cyclo::pq::all();
        for first in &all {
            for second in &all {
                let index = 21 * first.index() + second.index();
                let expected = inst
                    .gen_a
                    .pow(first.exp_a() as i64)
                    .compose(&inst.gen_b.pow(first.exp_b() as i64))
                    .compose(&inst.gen_c.pow(second.exp_a() as i64))
                    .compose(&inst.gen_d.pow(second.exp_b() as i64));
                assert_eq!(inst.vertex_elements[index], expected);
            }
        }
        // The permutations multiply exactly like the abstract normal forms
        // on the first coordinate.
        for x in &all {
            for y in &all {
                let px = inst
                    .gen_a
                    .pow(x.exp_a() as i64)
                    .compose(&inst.gen_b.pow(x.exp_b() as i64));
                let py = inst
                    .gen_a
                    .pow(y.exp_a() as i64)
                    .compose(&inst.gen_b.pow(y.exp_b() as i64));
                let z = x.mul(y);
                let pz = inst
                    .gen_a
                    .pow(z.exp_a() as i64)
                    .compose(&inst.gen_b.pow(z.exp_b() as i64));
                assert_eq!(px.compose(&py), pz);
            }
        }
    }

    #[test]
    fn stabilizer_facts_hold() {
        let inst = sigma();
        let map = inst.generator_map();

        // Element orders.
        for (word, order) in [
            ("s", 4u128),
            ("u", 4),
            ("s^2", 2),
            ("u^2", 2),
            ("t", 2),
            ("v", 2),
            ("alpha", 2),
            ("beta", 2),
            ("a", 7),
            ("b", 3),
            ("c", 7),
            ("d", 3),
        ] {
            assert_eq!(
                evaluate_word(word, &map).unwrap().order(),
                order,
                "order of {word}"
            );
        }

        // Generation and conjugation identities.
        for (lhs, rhs) in [
            ("s", "(alpha t)^2"),
            ("u", "(alpha v)^2"),
            ("t^-1st", "s^-1"),
            ("v^-1uv", "u^-1"),
            ("alpha^-1s alpha", "s^3"),
            ("alpha^-1t alpha", "st"),
            ("alpha^-1u alpha", "u^3"),
            ("alpha^-1v alpha", "uv"),
            ("beta^-1alpha beta", "alpha"),
            ("beta^-1s beta", "u"),
            ("beta^-1t beta", "v"),
            ("b^-1ab", "a^2"),
            ("d^-1cd", "c^2"),
        ] {
            assert_eq!(
                evaluate_word(lhs, &map).unwrap(),
                evaluate_word(rhs, &map).unwrap(),
                "{lhs} = {rhs}"
            );
        }

        // The vertex group meets the stabilizer trivially and is a right
        // transversal: 441 distinct coset labels.
        let mut labels = HashSet::new();
        for x in &inst.vertex_elements {
            assert!(x.is_identity() || !inst.stabilizer.contains(x).unwrap());
            assert!(labels.insert(inst.coset_action.label_of(x).unwrap()));
        }
        assert_eq!(labels.len(), 441);
    }

    #[test]
    fn stabilizer_normal_form_is_unique_and_sign_is_multiplicative() {
        let inst = sigma();
        // Every element of the 256-element stabilizer is uniquely
        // s^k t^l u^m v^n alpha^e beta^f with k,m in 0..4 and l,n,e,f in 0..2.
        let mut by_image: BTreeMap<Vec<usize>, NormalFormExponents> = BTreeMap::new();
        for k in 0..4 {
            for l in 0..2 {
                for m in 0..4 {
                    for n in 0..2 {
                        for e in 0..2 {
                            for f in 0..2 {
                                let p = inst
                                    .gen_s
                                    .pow(k)
                                    .compose(&inst.gen_t.pow(l))
                                    .compose(&inst.gen_u.pow(m))
                                    .compose(&inst.gen_v.pow(n))
                                    .compose(&inst.gen_alpha.pow(e))
                                    .compose(&inst.gen_beta.pow(f));
                                let fresh = by_image
                                    .insert(p.images().to_vec(), (k, l, m, n, e, f))
                                    .is_none();
                                assert!(fresh, "normal form collision at {:?}", (k, l, m, n, e, f));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(by_image.len(), 256);
        let enumerated = image_set(inst.stabilizer.enumerate(DEFAULT_ENUM_BOUND).unwrap());
        assert_eq!(image_set_of_keys(&by_image), enumerated);

        // The sign (-1)^(l + n) of the normal form is a homomorphism.
        let sign = |p: &Permutation| -> i32 {
            let (_, l, _, n, _, _) = by_image[&p.images().to_vec()];
            if (l + n) % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let elements = inst.stabilizer.enumerate(DEFAULT_ENUM_BOUND).unwrap();
        let mut rng = StdRng::seed_from_u64(0x0441);
        for _ in 0..400 {
            let x = &elements[rng.gen_range(0..elements.len())];
            let y = &elements[rng.gen_range(0..elements.len())];
            assert_eq!(sign(&x.compose(y)), sign(x) * sign(y));
        }
    }

    fn image_set_of_keys(map: &BTreeMap<Vec<usize>, NormalFormExponents>) -> HashSet<Vec<usize>> {
        map.keys().cloned().collect()
    }

    #[test]
    fn double_coset_rows_hold_as_permutation_identities() {
        let inst = sigma();
        let map = inst.generator_map();
        let data = sigma_word_data().unwrap();
        assert_eq!(data.double_coset_rows.len(), 48);

        let connection_images = image_set(&inst.connection);
        for (index, row) in data.double_coset_rows.iter().enumerate() {
            let x = evaluate_word(&row.x, &map).unwrap();
            let h = evaluate_word(&row.h, &map).unwrap();
            let k = evaluate_word(&row.k, &map).unwrap();
            let g = inst.coset_rep(row.j).unwrap();
            assert_eq!(
                x,
                h.compose(g).compose(&k),
                "row {index}: {} = {}·g{}·{}",
                row.x,
                row.h,
                row.j,
                row.k
            );
            assert!(
                connection_images.contains(x.images()),
                "row {index}: x lies in the connection set"
            );
            assert!(inst.stabilizer.contains(&h).unwrap());
            assert!(inst.stabilizer.contains(&k).unwrap());
        }

        // The 48 x-words are pairwise distinct elements.
        let xs: HashSet<Vec<usize>> = data
            .double_coset_rows
            .iter()
            .map(|row| evaluate_word(&row.x, &map).unwrap().images().to_vec())
            .collect();
        assert_eq!(xs.len(), 48);
    }

    #[test]
    fn conjugate_involution_sets_match_frozen_words() {
        let inst = sigma();
        let map = inst.generator_map();
        let data = sigma_word_data().unwrap();
        assert_eq!(data.conjugate_involution_sets.len(), 10);

        let expected_sizes: BTreeMap<&str, usize> = [
            ("st_g1", 5),
            ("uv_g1", 5),
            ("n_alpha_g1", 16),
            ("n_beta_g1", 8),
            ("n_alpha_beta_g1", 8),
            ("st_g2", 5),
            ("uv_g2", 5),
            ("n_alpha_g2", 16),
            ("n_beta_g2", 8),
            ("n_alpha_beta_g2", 8),
        ]
        .into();

        for key in INVOLUTION_SET_KEYS {
            let words = &data.conjugate_involution_sets[key];
            assert_eq!(words.len(), expected_sizes[key], "{key} size");
            let frozen = image_set(&parse_words(words, &map));
            assert_eq!(frozen.len(), words.len(), "{key} has distinct entries");
            let computed = image_set(&inst.conjugate_involutions(key).unwrap());
            assert_eq!(computed, frozen, "{key} matches the frozen word list");
        }
    }

    #[test]
    fn stabilizer_meets_match_frozen_words() {
        let inst = sigma();
        let map = inst.generator_map();
        let data = sigma_word_data().unwrap();

        let h_elements = image_set(inst.stabilizer.enumerate(DEFAULT_ENUM_BOUND).unwrap());
        for (conjugator, frozen_words) in [
            (&inst.g1, &data.stabilizer_meet_g1),
            (&inst.g2, &data.stabilizer_meet_g2),
        ] {
            // Involutions of H^g that lie in H.
            let involutions = involutions_in(
                &inst
                    .stabilizer
                    .enumerate(DEFAULT_ENUM_BOUND)
                    .unwrap()
                    .iter()
                    .map(|x| x.conjugate_by(conjugator))
                    .collect::<Vec<_>>(),
            );
            let meet: HashSet<Vec<usize>> = involutions
                .iter()
                .filter(|x| h_elements.contains(x.images()))
                .map(|x| x.images().to_vec())
                .collect();
            assert_eq!(meet, image_set(&parse_words(frozen_words, &map)));
        }

        // Full intersection H ∩ H^(g2) as an explicit 8-element set.
        let conj_elements: HashSet<Vec<usize>> = inst
            .stabilizer
            .enumerate(DEFAULT_ENUM_BOUND)
            .unwrap()
            .iter()
            .map(|x| x.conjugate_by(&inst.g2).images().to_vec())
            .collect();
        let intersection: HashSet<Vec<usize>> =
            h_elements.intersection(&conj_elements).cloned().collect();
        assert_eq!(
            intersection,
            image_set(&parse_words(&data.stabilizer_intersection_g2, &map))
        );
        assert_eq!(intersection.len(), 8);

        assert_eq!(
            inst.stabilizer
                .conjugate_intersection_order(&inst.g1, DEFAULT_ENUM_BOUND)
                .unwrap(),
            2
        );
        assert_eq!(
            inst.stabilizer
                .conjugate_intersection_order(&inst.g2, DEFAULT_ENUM_BOUND)
                .unwrap(),
            8
        );
    }

    #[test]
    fn connection_set_generates_the_vertex_group() {
        let inst = sigma();
        let map = inst.generator_map();
        // Explicit generation identities: each right-hand factor is a
        // connection-set element.
        for (target, word) in [
            ("a", "(a^5cd)^3"),
            ("b", "(cb)^7"),
            ("c", "(cb)b^-1"),
            ("d", "a^-1(ad)"),
        ] {
            assert_eq!(
                evaluate_word(target, &map).unwrap(),
                evaluate_word(word, &map).unwrap(),
                "{target} = {word}"
            );
        }
        let connection_images = image_set(&inst.connection);
        for witness in ["a^5cd", "cb", "ad"] {
            let x = evaluate_word(witness, &map).unwrap();
            assert!(
                connection_images.contains(x.images()),
                "{witness} lies in the connection set"
            );
        }
    }

    #[test]
    fn tensor_power_multiplies_vertex_counts() {
        let inst = build_gamma(2).unwrap();
        let square = tensor_power(&inst.digraph, 2).unwrap();
        assert_eq!(square.vertex_count(), 16 * 16);
        assert!(tensor_power(&inst.digraph, 0).is_err());
        let first = tensor_power(&inst.digraph, 1).unwrap();
        assert_eq!(first.vertex_count(), 16);
    }
}
