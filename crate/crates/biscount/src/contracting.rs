//! Enumeration of closed t-contracting subsets near a candidate cut, and
//! assembly of the family of sets whose 2-linked components are all closed
//! and t0-contracting.

use std::collections::{BTreeSet, HashSet};

use crate::bigraph::{BipartiteGraph, Part, VertexSet};
use crate::spectral::CutFamily;
use crate::{Error, Result};

/// Parameters for [`enumerate_near_cut`].
#[derive(Debug, Clone)]
pub struct NearCutParams {
    /// The distance constant; 32 matches the cut-family guarantee.
    pub c: usize,
    /// Error out when `|S_X| + |S_Y|` exceeds this cap, signalling that the
    /// `t ≤ d/(8c)` regime does not hold for this instance.
    pub subset_cap: usize,
    /// Cap on distinct candidate neighborhoods examined per call.
    pub candidate_budget: u64,
}

impl Default for NearCutParams {
    fn default() -> Self {
        NearCutParams {
            c: 32,
            subset_cap: 40,
            candidate_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyParams {
    pub near_cut: NearCutParams,
    /// Cap on the size of the assembled family.
    pub family_budget: usize,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            near_cut: NearCutParams::default(),
            family_budget: 1_000_000,
        }
    }
}

/// An element of the family: a subset of X whose 2-linked components are
/// each closed and t0-contracting, with cached derived data.
#[derive(Debug, Clone)]
pub struct ContractingSet {
    set: VertexSet,
    neighborhood: VertexSet,
    closure: VertexSet,
    components: Vec<VertexSet>,
    weight_exponent: usize,
}

impl ContractingSet {
    pub fn from_components(g: &BipartiteGraph, components: Vec<VertexSet>) -> Self {
        let n = g.part_size();
        let mut set = VertexSet::empty(Part::X, n);
        for c in &components {
            set.union_with(c);
        }
        let neighborhood = g.nbhd_x(&set);
        let closure = g.closure_of_neighborhood(&neighborhood);
        let weight_exponent = n - neighborhood.len();
        ContractingSet {
            set,
            neighborhood,
            closure,
            components,
            weight_exponent,
        }
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn neighborhood(&self) -> &VertexSet {
        &self.neighborhood
    }

    pub fn closure(&self) -> &VertexSet {
        &self.closure
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    /// `|Y ∖ N(A)|`, the exponent of the 2-power weight of this set.
    pub fn weight_exponent(&self) -> usize {
        self.weight_exponent
    }
}

/// Maximum number of components of any family element: every nonempty
/// t0-contracting closed set has size greater than `d − t0`, so at most
/// `⌊n/(d−t0)⌋` pairwise disjoint ones fit in X.
pub fn max_components(g: &BipartiteGraph, t0: usize) -> Result<usize> {
    let (n, d) = (g.part_size(), g.degree());
    if t0 >= d {
        return Err(Error::InvalidParameter(format!(
            "t0={t0} >= d={d}: component bound is vacuous, use brute force"
        )));
    }
    Ok(n / (d - t0))
}

/// Enumerates the closed t-contracting `A ⊆ X` with `|A △ (C∩X)| ≤ ct` and
/// `|N(A) △ (C∩Y)| ≤ ct`.
///
/// Candidates have the form `[(A′ ∖ N(S′_Y)) ∪ S′_X]` over subsets
/// `S′_X ⊆ S_X`, `S′_Y ⊆ S_Y`. Since the closure of a set depends only on
/// its neighborhood, the subset enumeration is carried out over the distinct
/// neighborhood unions instead of the raw `2^{|S_X|+|S_Y|}` subset pairs,
/// which is equivalent and collapses hard in dense graphs. Every candidate
/// is re-verified against the defining predicate, so the output is sound
/// unconditionally; completeness holds in the `t ≤ d/(8c)` regime.
pub fn enumerate_near_cut(
    g: &BipartiteGraph,
    cut: &VertexSet,
    t: usize,
    params: &NearCutParams,
) -> Result<Vec<VertexSet>> {
    if t == 0 {
        return Err(Error::InvalidParameter("near-cut t must be >= 1".into()));
    }
    let c = params.c;
    let (a_prime, w_prime) = g.split_cut(cut);
    let n = g.part_size();

    let s_x: Vec<usize> = (0..n)
        .filter(|&v| {
            !a_prime.contains(v) && g.neighbors_of_x(v).difference(&w_prime).len() <= 3 * c * t
        })
        .collect();
    let s_y: Vec<usize> = w_prime
        .iter()
        .filter(|&v| g.neighbors_of_y(v).intersection(&a_prime).len() <= c * t)
        .collect();
    if s_x.len() + s_y.len() > params.subset_cap {
        return Err(Error::BudgetExceeded {
            stage: "enumerate_near_cut",
            budget: params.subset_cap as u64,
            detail: format!(
                "|S_X| + |S_Y| = {} (preconditions t <= d/(8c) violated?)",
                s_x.len() + s_y.len()
            ),
        });
    }

    // Distinct removal masks N(S'_Y) ∩ A′ over S'_Y ⊆ S_Y.
    let y_generators: Vec<VertexSet> = s_y
        .iter()
        .map(|&v| g.neighbors_of_y(v).intersection(&a_prime))
        .collect();
    let removals = distinct_unions(
        VertexSet::empty(Part::X, n),
        &y_generators,
        params.candidate_budget,
    )?;

    // Distinct neighborhood unions N(S'_X) over S'_X ⊆ S_X.
    let x_generators: Vec<VertexSet> = s_x.iter().map(|&v| g.neighbors_of_x(v).clone()).collect();
    let additions = distinct_unions(
        VertexSet::empty(Part::Y, n),
        &x_generators,
        params.candidate_budget,
    )?;

    let mut seen_w: HashSet<VertexSet> = HashSet::new();
    let mut out: BTreeSet<VertexSet> = BTreeSet::new();
    let mut candidates = 0u64;
    for removal in &removals {
        let base = a_prime.difference(removal);
        let base_nbhd = g.nbhd_x(&base);
        for add in &additions {
            candidates += 1;
            if candidates > params.candidate_budget {
                return Err(Error::BudgetExceeded {
                    stage: "enumerate_near_cut",
                    budget: params.candidate_budget,
                    detail: "candidate neighborhood budget exceeded".into(),
                });
            }
            let w = base_nbhd.union(add);
            if !seen_w.insert(w.clone()) {
                continue;
            }
            let a = g.closure_of_neighborhood(&w);
            let na = g.nbhd_x(&a);
            // Closed by construction; verify contraction and distances.
            if na.len() < a.len() + t
                && a.sym_diff_len(&a_prime) <= c * t
                && na.sym_diff_len(&w_prime) <= c * t
            {
                out.insert(a);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All distinct unions `seed ∪ ⋃_{i∈I} gens[i]` over `I ⊆ {0..}`, by
/// breadth-first closure with deduplication.
fn distinct_unions(
    seed: VertexSet,
    gens: &[VertexSet],
    budget: u64,
) -> Result<Vec<VertexSet>> {
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut queue = vec![seed.clone()];
    seen.insert(seed);
    while let Some(cur) = queue.pop() {
        for gen in gens {
            let next = cur.union(gen);
            if seen.contains(&next) {
                continue;
            }
            if seen.len() as u64 >= budget {
                return Err(Error::BudgetExceeded {
                    stage: "enumerate_near_cut",
                    budget,
                    detail: "distinct-union budget exceeded".into(),
                });
            }
            seen.insert(next.clone());
            queue.push(next);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Stage 1 of family assembly: 2-linked closed t0-contracting pieces found
/// near the cuts, deduplicated.
pub fn collect_pieces(
    g: &BipartiteGraph,
    cuts: &CutFamily,
    t0: usize,
    max_comps: usize,
    params: &NearCutParams,
) -> Result<Vec<VertexSet>> {
    let process_cut = |cut: &VertexSet| -> Result<BTreeSet<VertexSet>> {
        let mut local: BTreeSet<VertexSet> = BTreeSet::new();
        let mut split_done: HashSet<VertexSet> = HashSet::new();
        for ell in 1..=max_comps {
            for a in enumerate_near_cut(g, cut, ell * t0, params)? {
                if a.is_empty() || !split_done.insert(a.clone()) {
                    continue;
                }
                for comp in g.two_linked_components(&a).expect("X-side set") {
                    let ncomp = g.nbhd_x(&comp);
                    let closed = g.closure_of_neighborhood(&ncomp) == comp;
                    if closed && ncomp.len() < comp.len() + t0 {
                        local.insert(comp);
                    }
                }
            }
        }
        Ok(local)
    };

    #[cfg(feature = "parallel")]
    let results: Vec<Result<BTreeSet<VertexSet>>> = {
        use rayon::prelude::*;
        cuts.cuts().par_iter().map(process_cut).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<BTreeSet<VertexSet>>> = cuts.cuts().iter().map(process_cut).collect();

    let mut pieces: BTreeSet<VertexSet> = BTreeSet::new();
    for r in results {
        pieces.extend(r?);
    }
    Ok(pieces.into_iter().collect())
}

/// Builds the full family: pieces are collected near every cut (stage 1),
/// then combined into all unions of pairwise-neighborhood-disjoint tuples of
/// up to `max_components` pieces (stage 2). The empty union is always a
/// member. Output is canonically ordered by vertex set.
pub fn build_family(
    g: &BipartiteGraph,
    cuts: &CutFamily,
    t0: usize,
    params: &FamilyParams,
) -> Result<Vec<ContractingSet>> {
    let max_comps = max_components(g, t0)?;
    let pieces = collect_pieces(g, cuts, t0, max_comps, &params.near_cut)?;
    let piece_nbhds: Vec<VertexSet> = pieces.iter().map(|p| g.nbhd_x(p)).collect();

    let mut family: Vec<Vec<VertexSet>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    combine(
        g,
        &pieces,
        &piece_nbhds,
        0,
        max_comps,
        &mut stack,
        &mut family,
        params.family_budget,
    )?;

    let mut out: Vec<ContractingSet> = family
        .into_iter()
        .map(|comps| ContractingSet::from_components(g, comps))
        .collect();
    out.sort_by(|a, b| a.set().cmp(b.set()));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn combine(
    g: &BipartiteGraph,
    pieces: &[VertexSet],
    nbhds: &[VertexSet],
    start: usize,
    room: usize,
    stack: &mut Vec<usize>,
    family: &mut Vec<Vec<VertexSet>>,
    budget: usize,
) -> Result<()> {
    if family.len() >= budget {
        return Err(Error::BudgetExceeded {
            stage: "build_family",
            budget: budget as u64,
            detail: "family size budget exceeded".into(),
        });
    }
    family.push(stack.iter().map(|&i| pieces[i].clone()).collect());
    if room == 0 {
        return Ok(());
    }
    for i in start..pieces.len() {
        if stack.iter().any(|&j| nbhds[j].intersects(&nbhds[i])) {
            continue;
        }
        stack.push(i);
        combine(g, pieces, nbhds, i + 1, room - 1, stack, family, budget)?;
        stack.pop();
    }
    Ok(())
}

/// Debug dump: one line per family element with component structure,
/// neighborhood size, and contraction slack.
pub fn dump_family(family: &[ContractingSet], t0: usize) -> String {
    let mut out = String::new();
    for cs in family {
        let comps: Vec<String> = cs
            .components()
            .iter()
            .map(|c| format!("{:?}", c.indices()))
            .collect();
        let slack = (cs.closure().len() + t0) as isize - cs.neighborhood().len() as isize;
        out.push_str(&format!(
            "A={:?} components=[{}] |N(A)|={} slack={}\n",
            cs.set().indices(),
            comps.join(" "),
            cs.neighborhood().len(),
            slack
        ));
    }
    out
}

/// Independent predicate check used by tests and `verify`: does every
/// 2-linked component of `a` come out closed and t0-contracting?
pub fn is_family_member(g: &BipartiteGraph, a: &VertexSet, t0: usize) -> bool {
    g.two_linked_components(a)
        .expect("X-side set")
        .iter()
        .all(|comp| {
            let ncomp = g.nbhd_x(comp);
            g.closure_of_neighborhood(&ncomp) == *comp && ncomp.len() < comp.len() + t0
        })
}

/// Witness sets of the near-cut argument, exposed for diagnostics: the
/// vertices eligible to enter (`S_X`) or leave (`S_Y`) the cut.
pub fn near_cut_witness(
    g: &BipartiteGraph,
    cut: &VertexSet,
    t: usize,
    c: usize,
) -> (VertexSet, VertexSet) {
    let (a_prime, w_prime) = g.split_cut(cut);
    let n = g.part_size();
    let mut sx = VertexSet::empty(Part::X, n);
    for v in 0..n {
        if !a_prime.contains(v) && g.neighbors_of_x(v).difference(&w_prime).len() <= 3 * c * t {
            sx.insert(v);
        }
    }
    let mut sy = VertexSet::empty(Part::Y, n);
    for v in w_prime.iter() {
        if g.neighbors_of_y(v).intersection(&a_prime).len() <= c * t {
            sy.insert(v);
        }
    }
    (sx, sy)
}

/// Reference implementation of the near-cut enumeration by literal subset
/// enumeration over `S'_X ⊆ S_X`, `S'_Y ⊆ S_Y`; used to pin the dedup-based
/// fast path. Only usable when `|S_X| + |S_Y|` is tiny.
#[cfg(test)]
pub(crate) fn enumerate_near_cut_literal(
    g: &BipartiteGraph,
    cut: &VertexSet,
    t: usize,
    c: usize,
) -> Vec<VertexSet> {
    let (a_prime, w_prime) = g.split_cut(cut);
    let (sx, sy) = near_cut_witness(g, cut, t, c);
    let sx: Vec<usize> = sx.iter().collect();
    let sy: Vec<usize> = sy.iter().collect();
    assert!(sx.len() + sy.len() <= 20);
    let mut out = BTreeSet::new();
    for xb in 0u32..1 << sx.len() {
        for yb in 0u32..1 << sy.len() {
            let mut z = a_prime.clone();
            for (j, &y) in sy.iter().enumerate() {
                if yb >> j & 1 == 1 {
                    z = z.difference(g.neighbors_of_y(y));
                }
            }
            for (j, &x) in sx.iter().enumerate() {
                if xb >> j & 1 == 1 {
                    z.insert(x);
                }
            }
            let a = g.closure(&z).unwrap();
            let na = g.nbhd_x(&a);
            if na.len() < a.len() + t
                && a.sym_diff_len(&a_prime) <= c * t
                && na.sym_diff_len(&w_prime) <= c * t
            {
                out.insert(a);
            }
        }
    }
    out.into_iter().collect()
}
