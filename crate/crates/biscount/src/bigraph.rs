//! Bipartite graph representation and set/neighborhood combinatorics.
//!
//! Vertices of each part are dense 0-based indices. A [`VertexSet`] over the
//! whole vertex set `V = X ∪ Y` indexes `X` as `0..n` and `Y` as `n..2n`.

use std::cmp::Ordering;
use std::fmt;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Which part of the bipartition a [`VertexSet`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    X,
    Y,
    /// The whole vertex set `V = X ∪ Y`.
    Full,
}

impl Part {
    fn name(self) -> &'static str {
        match self {
            Part::X => "X",
            Part::Y => "Y",
            Part::Full => "V",
        }
    }
}

/// A subset of one part (or of `V`), backed by a bit vector.
///
/// Equality and hashing are structural; the canonical encoding of a set is
/// its sorted index list, which also defines the ordering used wherever a
/// family of sets is emitted in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    part: Part,
    cap: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(part: Part, cap: usize) -> Self {
        VertexSet {
            part,
            cap,
            words: vec![0; cap.div_ceil(64)],
        }
    }

    pub fn full(part: Part, cap: usize) -> Self {
        let mut s = Self::empty(part, cap);
        for i in 0..cap {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(part: Part, cap: usize, idx: &[usize]) -> Self {
        let mut s = Self::empty(part, cap);
        for &i in idx {
            s.insert(i);
        }
        s
    }

    pub fn part(&self) -> Part {
        self.part
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.cap, "index {i} out of range {}", self.cap);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.cap);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.cap && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Canonical encoding: the sorted index list.
    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_compatible(&self, other: &VertexSet) {
        assert_eq!(self.part, other.part, "vertex set part mismatch");
        assert_eq!(self.cap, other.cap, "vertex set capacity mismatch");
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.check_compatible(other);
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_compatible(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.check_compatible(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.check_compatible(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    /// `|self △ other|`.
    pub fn sym_diff_len(&self, other: &VertexSet) -> usize {
        self.check_compatible(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.check_compatible(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.part.name(), self.indices())
    }
}

/// The density parameter `δ`, a rational in `(0, 1]` with `⌊δ·n⌋ = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaParam {
    num: u64,
    den: u64,
}

impl DeltaParam {
    pub fn new(num: u64, den: u64, n: usize, d: usize) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "delta {num}/{den} not in (0, 1]"
            )));
        }
        if (num as u128 * n as u128 / den as u128) as usize != d {
            return Err(Error::InvalidParameter(format!(
                "⌊({num}/{den})·{n}⌋ != {d}"
            )));
        }
        Ok(DeltaParam { num, den })
    }

    /// The canonical choice `δ = d/n`, which always satisfies `⌊δn⌋ = d`.
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        DeltaParam {
            num: g.degree() as u64,
            den: g.part_size() as u64,
        }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// A d-regular bipartite graph on parts X and Y of size n each.
///
/// Immutable after construction; all query operations are pure, so a graph
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    d: usize,
    /// Neighborhood of each x ∈ X as a Y-side set.
    nbr_x: Vec<VertexSet>,
    /// Neighborhood of each y ∈ Y as an X-side set.
    nbr_y: Vec<VertexSet>,
}

impl BipartiteGraph {
    /// Builds a graph from edges `(u, v)` meaning `{X_u, Y_v}` and validates
    /// regularity, simplicity, and index ranges.
    pub fn new(n: usize, d: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, d, edges.iter().map(|&e| (e, None)))
    }

    fn build(
        n: usize,
        d: usize,
        edges: impl Iterator<Item = ((usize, usize), Option<usize>)>,
    ) -> Result<Self> {
        if n == 0 || d == 0 || d > n {
            return Err(Error::InvalidGraph {
                line: None,
                msg: format!("invalid parameters n={n}, d={d} (need 1 <= d <= n)"),
            });
        }
        let mut nbr_x = vec![VertexSet::empty(Part::Y, n); n];
        let mut nbr_y = vec![VertexSet::empty(Part::X, n); n];
        let mut count = 0usize;
        for ((u, v), line) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph {
                    line,
                    msg: format!("edge ({u}, {v}) out of range for n={n}"),
                });
            }
            if nbr_x[u].contains(v) {
                return Err(Error::InvalidGraph {
                    line,
                    msg: format!("duplicate edge ({u}, {v})"),
                });
            }
            nbr_x[u].insert(v);
            nbr_y[v].insert(u);
            count += 1;
        }
        if count != n * d {
            return Err(Error::InvalidGraph {
                line: None,
                msg: format!("expected {} edges, found {count}", n * d),
            });
        }
        for (u, s) in nbr_x.iter().enumerate() {
            if s.len() != d {
                return Err(Error::InvalidGraph {
                    line: None,
                    msg: format!("vertex X_{u} has degree {} != {d}", s.len()),
                });
            }
        }
        for (v, s) in nbr_y.iter().enumerate() {
            if s.len() != d {
                return Err(Error::InvalidGraph {
                    line: None,
                    msg: format!("vertex Y_{v} has degree {} != {d}", s.len()),
                });
            }
        }
        Ok(BipartiteGraph { n, d, nbr_x, nbr_y })
    }

    /// Vertices per part.
    pub fn part_size(&self) -> usize {
        self.n
    }

    /// The regular degree d.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Total vertex count `N = 2n`.
    pub fn num_vertices(&self) -> usize {
        2 * self.n
    }

    pub fn neighbors_of_x(&self, u: usize) -> &VertexSet {
        &self.nbr_x[u]
    }

    pub fn neighbors_of_y(&self, v: usize) -> &VertexSet {
        &self.nbr_y[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * self.d);
        for u in 0..self.n {
            for v in self.nbr_x[u].iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// `N(A)` for `A ⊆ X`.
    pub fn neighbors(&self, a: &VertexSet) -> Result<VertexSet> {
        if a.part() != Part::X {
            return Err(Error::PartMismatch {
                expected: "X",
                found: a.part().name(),
            });
        }
        Ok(self.nbhd_x(a))
    }

    /// `N(B)` for `B ⊆ Y`.
    pub fn neighbors_y(&self, b: &VertexSet) -> Result<VertexSet> {
        if b.part() != Part::Y {
            return Err(Error::PartMismatch {
                expected: "Y",
                found: b.part().name(),
            });
        }
        let mut out = VertexSet::empty(Part::X, self.n);
        for v in b.iter() {
            out.union_with(&self.nbr_y[v]);
        }
        Ok(out)
    }

    pub(crate) fn nbhd_x(&self, a: &VertexSet) -> VertexSet {
        debug_assert_eq!(a.part(), Part::X);
        let mut out = VertexSet::empty(Part::Y, self.n);
        for u in a.iter() {
            out.union_with(&self.nbr_x[u]);
        }
        out
    }

    /// The closure `[A] = { x ∈ X : N(x) ⊆ N(A) }`.
    ///
    /// Note: some statements of this definition in the literature read
    /// `N(x) ⊆ A`, which is a type mismatch (`N(x) ⊆ Y` while `A ⊆ X`); the
    /// neighborhood-based reading used here makes `N([A]) = N(A)` and
    /// "A is closed iff each component of A is closed" hold.
    pub fn closure(&self, a: &VertexSet) -> Result<VertexSet> {
        let na = self.neighbors(a)?;
        Ok(self.closure_of_neighborhood(&na))
    }

    /// `{ x ∈ X : N(x) ⊆ W }` for a Y-side set `W`. The closure of any set
    /// depends only on its neighborhood, which this exposes directly.
    pub fn closure_of_neighborhood(&self, w: &VertexSet) -> VertexSet {
        debug_assert_eq!(w.part(), Part::Y);
        let mut out = VertexSet::empty(Part::X, self.n);
        for u in 0..self.n {
            if self.nbr_x[u].is_subset(w) {
                out.insert(u);
            }
        }
        out
    }

    pub fn is_closed(&self, a: &VertexSet) -> Result<bool> {
        Ok(&self.closure(a)? == a)
    }

    /// `|N(A)| < |[A]| + t`.
    pub fn is_t_contracting(&self, a: &VertexSet, t: usize) -> Result<bool> {
        let na = self.neighbors(a)?;
        let cl = self.closure_of_neighborhood(&na);
        Ok(na.len() < cl.len() + t)
    }

    /// The unique partition of `A ⊆ X` into maximal 2-linked subsets,
    /// ordered by smallest vertex index.
    pub fn two_linked_components(&self, a: &VertexSet) -> Result<Vec<VertexSet>> {
        if a.part() != Part::X {
            return Err(Error::PartMismatch {
                expected: "X",
                found: a.part().name(),
            });
        }
        let members: Vec<usize> = a.iter().collect();
        let mut seen = vec![false; members.len()];
        let mut out = Vec::new();
        for start in 0..members.len() {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(Part::X, self.n);
            let mut reach = VertexSet::empty(Part::Y, self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.insert(members[i]);
                reach.union_with(&self.nbr_x[members[i]]);
                for (j, &x) in members.iter().enumerate() {
                    if !seen[j] && self.nbr_x[x].intersects(&reach) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    /// `A` is 2-linked (connected in G²); the empty set counts as 2-linked.
    pub fn is_two_linked(&self, a: &VertexSet) -> Result<bool> {
        Ok(self.two_linked_components(a)?.len() <= 1)
    }

    /// Number of edges with exactly one endpoint in the full-V cut `C`.
    pub fn cut_value(&self, c: &VertexSet) -> usize {
        debug_assert_eq!(c.part(), Part::Full);
        let mut val = 0;
        for u in 0..self.n {
            let in_x = c.contains(u);
            for v in self.nbr_x[u].iter() {
                if in_x != c.contains(self.n + v) {
                    val += 1;
                }
            }
        }
        val
    }

    /// `N²(A) = { x ∈ X : N(x) ∩ N(A) ≠ ∅ }`.
    pub fn second_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        let na = self.neighbors(a)?;
        let mut out = VertexSet::empty(Part::X, self.n);
        for u in 0..self.n {
            if self.nbr_x[u].intersects(&na) {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// Splits a full-V cut into its X and Y halves as part-local sets.
    pub fn split_cut(&self, c: &VertexSet) -> (VertexSet, VertexSet) {
        debug_assert_eq!(c.part(), Part::Full);
        let mut cx = VertexSet::empty(Part::X, self.n);
        let mut cy = VertexSet::empty(Part::Y, self.n);
        for i in c.iter() {
            if i < self.n {
                cx.insert(i);
            } else {
                cy.insert(i - self.n);
            }
        }
        (cx, cy)
    }

    /// Joins an X-side and a Y-side set into a full-V cut.
    pub fn join_cut(&self, ax: &VertexSet, by: &VertexSet) -> VertexSet {
        debug_assert_eq!(ax.part(), Part::X);
        debug_assert_eq!(by.part(), Part::Y);
        let mut c = VertexSet::empty(Part::Full, 2 * self.n);
        for i in ax.iter() {
            c.insert(i);
        }
        for i in by.iter() {
            c.insert(self.n + i);
        }
        c
    }
}

/// Whole-matching rejection attempts per matching before switching to the
/// explicit matching construction.
const GENERATOR_ATTEMPT_BUDGET: u64 = 200;

/// Kuhn's augmenting-path step over the still-unused pairs.
fn try_augment(
    u: usize,
    order: &[Vec<usize>],
    match_y: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &v in &order[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if match_y[v].is_none() || try_augment(match_y[v].unwrap(), order, match_y, visited) {
            match_y[v] = Some(u);
            return true;
        }
    }
    false
}

/// Random simple d-regular bipartite graph, built as the union of d random
/// perfect matchings. A colliding matching is resampled; once the unused
/// pairs become too sparse for rejection sampling, the matching is built
/// directly by augmenting paths over randomly ordered unused pairs (the
/// unused pairs form a regular bipartite graph, so a perfect matching always
/// exists). Deterministic given the seed.
pub fn generate_regular(n: usize, d: usize, seed: u64) -> Result<BipartiteGraph> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameter(format!(
            "generate_regular needs 1 <= d <= n, got n={n}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: Vec<VertexSet> = vec![VertexSet::empty(Part::Y, n); n];
    let mut matchings_done = 0usize;
    let mut perm: Vec<usize> = (0..n).collect();
    while matchings_done < d {
        let mut accepted = false;
        for _ in 0..GENERATOR_ATTEMPT_BUDGET {
            perm.shuffle(&mut rng);
            if !perm.iter().enumerate().any(|(u, &v)| used[u].contains(v)) {
                accepted = true;
                break;
            }
        }
        if !accepted {
            let mut order: Vec<Vec<usize>> = (0..n)
                .map(|u| (0..n).filter(|&v| !used[u].contains(v)).collect())
                .collect();
            let mut xs: Vec<usize> = (0..n).collect();
            xs.shuffle(&mut rng);
            for row in order.iter_mut() {
                row.shuffle(&mut rng);
            }
            let mut match_y: Vec<Option<usize>> = vec![None; n];
            for &u in &xs {
                let mut visited = vec![false; n];
                if !try_augment(u, &order, &mut match_y, &mut visited) {
                    return Err(Error::GeneratorExhausted {
                        attempts: GENERATOR_ATTEMPT_BUDGET,
                    });
                }
            }
            for (v, u) in match_y.iter().enumerate() {
                perm[u.expect("matching is perfect")] = v;
            }
        }
        for (u, &v) in perm.iter().enumerate() {
            used[u].insert(v);
        }
        matchings_done += 1;
    }
    let mut edges = Vec::with_capacity(n * d);
    for (u, s) in used.iter().enumerate() {
        for v in s.iter() {
            edges.push((u, v));
        }
    }
    BipartiteGraph::new(n, d, &edges)
}

/// Reads the edge-list text format: header `"n d"`, then exactly `n·d` lines
/// `"u v"` meaning edge `{X_u, Y_v}`.
pub fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text)
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::InvalidGraph {
        line: Some(1),
        msg: "empty file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let parse_field = |s: Option<&str>, what: &str| -> Result<usize> {
        s.and_then(|v| v.parse().ok()).ok_or(Error::InvalidGraph {
            line: Some(1),
            msg: format!("malformed header: expected \"n d\", missing or bad {what}"),
        })
    };
    let n = parse_field(parts.next(), "n")?;
    let d = parse_field(parts.next(), "d")?;
    if parts.next().is_some() {
        return Err(Error::InvalidGraph {
            line: Some(1),
            msg: "malformed header: trailing tokens".into(),
        });
    }
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let bad = || Error::InvalidGraph {
            line: Some(lineno),
            msg: format!("malformed edge line {line:?}"),
        };
        let u: usize = it.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let v: usize = it.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        edges.push(((u, v), Some(lineno)));
    }
    BipartiteGraph::build(n, d, edges.into_iter())
}

/// Writes the edge-list format; `read_graph(write_graph(G)) == G`.
pub fn write_graph(g: &BipartiteGraph, path: &Path) -> Result<()> {
    fs::write(path, format_graph(g))?;
    Ok(())
}

pub fn format_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.part_size(), g.degree());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    /// C6 as in the small examples: xi ~ yi and xi ~ y_{i+1 mod 3}.
    pub(crate) fn c6() -> BipartiteGraph {
        BipartiteGraph::new(3, 2, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    fn xset(g: &BipartiteGraph, idx: &[usize]) -> VertexSet {
        VertexSet::from_indices(Part::X, g.part_size(), idx)
    }

    #[test]
    fn neighbors_basic() {
        let g = k22();
        let n = g.neighbors(&xset(&g, &[0])).unwrap();
        assert_eq!(n.indices(), vec![0, 1]);
        assert!(g.neighbors(&xset(&g, &[])).unwrap().is_empty());
        let g = c6();
        let n = g.neighbors(&xset(&g, &[0, 2])).unwrap();
        assert_eq!(n.indices(), vec![0, 1, 2]);
    }

    #[test]
    fn neighbors_part_mismatch() {
        let g = k22();
        let b = VertexSet::from_indices(Part::Y, 2, &[0]);
        assert!(matches!(g.neighbors(&b), Err(Error::PartMismatch { .. })));
    }

    #[test]
    fn closure_examples() {
        let g = k22();
        assert_eq!(g.closure(&xset(&g, &[0])).unwrap().indices(), vec![0, 1]);
        assert!(g.closure(&xset(&g, &[])).unwrap().is_empty());
        let g = c6();
        assert_eq!(g.closure(&xset(&g, &[0])).unwrap().indices(), vec![0]);
    }

    #[test]
    fn two_linked_examples() {
        let g = k22();
        assert!(g.two_linked_components(&xset(&g, &[])).unwrap().is_empty());
        let comps = g.two_linked_components(&xset(&g, &[0, 1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].indices(), vec![0, 1]);
        // Two disjoint copies of K_{2,2}: x0, x2 in different copies.
        let g2 = BipartiteGraph::new(
            4,
            2,
            &[
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
                (2, 2),
                (2, 3),
                (3, 2),
                (3, 3),
            ],
        )
        .unwrap();
        let comps = g2.two_linked_components(&xset(&g2, &[0, 2])).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].indices(), vec![0]);
        assert_eq!(comps[1].indices(), vec![2]);
    }

    #[test]
    fn cut_value_examples() {
        let g = k22();
        let empty = VertexSet::empty(Part::Full, 4);
        assert_eq!(g.cut_value(&empty), 0);
        let x_side = VertexSet::from_indices(Part::Full, 4, &[0, 1]);
        assert_eq!(g.cut_value(&x_side), 4);
        let mixed = VertexSet::from_indices(Part::Full, 4, &[0, 2]);
        assert_eq!(g.cut_value(&mixed), 2);
        // Complement symmetry.
        let compl = VertexSet::full(Part::Full, 4).difference(&mixed);
        assert_eq!(g.cut_value(&compl), g.cut_value(&mixed));
    }

    #[test]
    fn contracting_and_closed() {
        let g = k22();
        assert!(g.is_t_contracting(&xset(&g, &[0, 1]), 1).unwrap());
        assert!(!g.is_closed(&xset(&g, &[0])).unwrap());
        assert!(g.is_closed(&xset(&g, &[])).unwrap());
        assert!(g.is_t_contracting(&xset(&g, &[]), 1).unwrap());
    }

    #[test]
    fn generator_edge_cases() {
        let g = generate_regular(1, 1, 3).unwrap();
        assert_eq!(g.edges(), vec![(0, 0)]);
        let g = generate_regular(4, 4, 11).unwrap();
        for u in 0..4 {
            assert_eq!(g.neighbors_of_x(u).len(), 4);
        }
        let g = generate_regular(40, 12, 7).unwrap();
        assert_eq!(g.part_size(), 40);
        assert_eq!(g.degree(), 12);
        // Determinism.
        assert_eq!(generate_regular(40, 12, 7).unwrap(), g);
    }

    #[test]
    fn io_round_trip_and_errors() {
        assert_eq!(parse_graph("1 1\n0 0\n").unwrap().edges(), vec![(0, 0)]);
        let g = parse_graph("2 2\n0 0\n0 1\n1 0\n1 1\n").unwrap();
        assert_eq!(g, k22());
        // Degree d-1 somewhere: regularity error.
        let err = parse_graph("2 2\n0 0\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::InvalidGraph { .. }));
        // Duplicate edge reported with line number.
        match parse_graph("2 2\n0 0\n0 0\n1 0\n1 1\n").unwrap_err() {
            Error::InvalidGraph { line, .. } => assert_eq!(line, Some(3)),
            other => panic!("unexpected: {other}"),
        }
        // Out-of-range index.
        match parse_graph("2 2\n0 0\n0 1\n1 0\n1 5\n").unwrap_err() {
            Error::InvalidGraph { line, .. } => assert_eq!(line, Some(5)),
            other => panic!("unexpected: {other}"),
        }
        let g = generate_regular(6, 3, 5).unwrap();
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn delta_param() {
        let g = generate_regular(10, 5, 1).unwrap();
        let delta = DeltaParam::from_graph(&g);
        assert!((delta.value() - 0.5).abs() < 1e-12);
        assert!(DeltaParam::new(1, 2, 10, 5).is_ok());
        assert!(DeltaParam::new(1, 2, 10, 4).is_err());
    }
}
