//! Independent brute-force reference implementations used by tests and the
//! `verify` command: exact counts, exact cover counts, the exact family, and
//! the exact polymer partition function.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::bigraph::{BipartiteGraph, Part, VertexSet};
use crate::engine;
use crate::{Error, Result};

/// Canonical oracle entry point for exact `i(G)` via the subset-sum
/// identity.
pub fn exact_count(g: &BipartiteGraph) -> Result<BigUint> {
    engine::brute_force_count(g, engine::DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Second, independent exact counter: direct backtracking enumeration of
/// independent sets over all of `V`, with no shared machinery with the
/// subset-sum identity.
pub fn count_by_backtracking(g: &BipartiteGraph) -> Result<BigUint> {
    let n = g.part_size();
    if 2 * n > 20 {
        return Err(Error::SizeLimit {
            what: "backtracking oracle vertex count",
            limit: 20,
            actual: 2 * n,
        });
    }
    fn rec(g: &BipartiteGraph, v: usize, chosen_x: u64, chosen_y: u64) -> u64 {
        let n = g.part_size();
        if v == 2 * n {
            return 1;
        }
        // Exclude v.
        let mut total = rec(g, v + 1, chosen_x, chosen_y);
        // Include v if no chosen neighbor.
        let ok = if v < n {
            g.neighbors_of_x(v).iter().all(|y| chosen_y >> y & 1 == 0)
        } else {
            g.neighbors_of_y(v - n)
                .iter()
                .all(|x| chosen_x >> x & 1 == 0)
        };
        if ok {
            let (cx, cy) = if v < n {
                (chosen_x | 1 << v, chosen_y)
            } else {
                (chosen_x, chosen_y | 1 << (v - n))
            };
            total += rec(g, v + 1, cx, cy);
        }
        total
    }
    Ok(BigUint::from(rec(g, 0, 0, 0)))
}

/// Exact `𝒟_A`: product over 2-linked components `A'` of the number of
/// 2-linked `B ⊆ A'` with `N(B) = N(A')`, by full subset enumeration.
pub fn exact_da(g: &BipartiteGraph, a: &VertexSet) -> Result<BigUint> {
    if a.len() > 20 {
        return Err(Error::SizeLimit {
            what: "exact_da set size",
            limit: 20,
            actual: a.len(),
        });
    }
    let mut product = BigUint::one();
    for comp in g.two_linked_components(a)? {
        product *= BigUint::from(count_covers(g, &comp));
    }
    Ok(product)
}

fn count_covers(g: &BipartiteGraph, a: &VertexSet) -> u64 {
    let members: Vec<usize> = a.iter().collect();
    let target = g.nbhd_x(a);
    let mut count = 0;
    for bits in 0u64..1 << members.len() {
        let mut b = VertexSet::empty(Part::X, g.part_size());
        for (i, &x) in members.iter().enumerate() {
            if bits >> i & 1 == 1 {
                b.insert(x);
            }
        }
        if g.nbhd_x(&b) == target && g.two_linked_components(&b).unwrap().len() <= 1 {
            count += 1;
        }
    }
    count
}

/// Exact family: all `A ⊆ X` whose every 2-linked component is closed and
/// t0-contracting (the empty set included), by full subset scan.
pub fn exact_family(g: &BipartiteGraph, t0: usize) -> Result<Vec<VertexSet>> {
    let n = g.part_size();
    if n > 16 {
        return Err(Error::SizeLimit {
            what: "exact_family part size",
            limit: 16,
            actual: n,
        });
    }
    let mut out = Vec::new();
    for bits in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
        let a = VertexSet::from_indices(Part::X, n, &idx);
        if crate::contracting::is_family_member(g, &a, t0) {
            out.push(a);
        }
    }
    out.sort();
    Ok(out)
}

/// Explicit polymer model for one anchor: the region, the non-contracting
/// polymers in it, and the exact partition function value.
#[derive(Debug, Clone)]
pub struct PolymerModelSnapshot {
    pub anchor: VertexSet,
    /// `X_A = X ∖ N²(A)`.
    pub x_region: VertexSet,
    /// `Y_A = Y ∖ N(A)`.
    pub y_region: VertexSet,
    /// Polymers (2-linked, not t0-contracting) with their neighborhoods.
    pub polymers: Vec<(VertexSet, VertexSet)>,
    pub xi: BigRational,
}

/// Exact `Ξ_A`: enumerate all 2-linked `B ⊆ X_A` with `|N(B)| ≥ |[B]| + t0`
/// (not t0-contracting), then sum `2^{-Σ|N(B_i)|}` over all collections of
/// pairwise-neighborhood-disjoint polymers, including the empty collection.
pub fn exact_xi(g: &BipartiteGraph, a: &VertexSet, t0: usize) -> Result<PolymerModelSnapshot> {
    let n = g.part_size();
    let x_region = VertexSet::full(Part::X, n).difference(&g.second_neighborhood(a)?);
    let y_region = VertexSet::full(Part::Y, n).difference(&g.nbhd_x(a));
    if x_region.len() > 16 {
        return Err(Error::SizeLimit {
            what: "exact_xi polymer region size",
            limit: 16,
            actual: x_region.len(),
        });
    }
    let members: Vec<usize> = x_region.iter().collect();
    let mut polymers: Vec<(VertexSet, VertexSet)> = Vec::new();
    for bits in 1u32..1 << members.len() {
        let idx: Vec<usize> = members
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let b = VertexSet::from_indices(Part::X, n, &idx);
        if g.two_linked_components(&b)?.len() != 1 {
            continue;
        }
        let nb = g.nbhd_x(&b);
        let closure = g.closure_of_neighborhood(&nb);
        if nb.len() >= closure.len() + t0 {
            polymers.push((b, nb));
        }
    }
    polymers.sort();
    // Branch over polymers in canonical order with neighborhood-disjointness
    // pruning; weight 2^{-|N(B)|} per chosen polymer.
    fn rec(
        g: &BipartiteGraph,
        polymers: &[(VertexSet, VertexSet)],
        i: usize,
        used: &VertexSet,
    ) -> BigRational {
        if i == polymers.len() {
            return BigRational::one();
        }
        let mut total = rec(g, polymers, i + 1, used);
        let (_, nb) = &polymers[i];
        if !nb.intersects(used) {
            let weight = BigRational::new(BigInt::one(), BigInt::one() << nb.len());
            total += weight * rec(g, polymers, i + 1, &used.union(nb));
        }
        total
    }
    let xi = rec(g, &polymers, 0, &VertexSet::empty(Part::Y, n));
    Ok(PolymerModelSnapshot {
        anchor: a.clone(),
        x_region,
        y_region,
        polymers,
        xi,
    })
}

/// Exact evaluation of the master identity
/// `Σ_{A∈𝒜} 𝒟_A · 2^{|Y∖N(A)|} · Ξ_A` over the exact family.
pub fn identity_sum(g: &BipartiteGraph, t0: usize) -> Result<BigRational> {
    let n = g.part_size();
    let mut total = BigRational::from(BigInt::from(0));
    for a in exact_family(g, t0)? {
        let da = exact_da(g, &a)?;
        let weight = BigInt::one() << (n - g.nbhd_x(&a).len());
        let xi = exact_xi(g, &a, t0)?.xi;
        total += BigRational::from(BigInt::from(da)) * BigRational::from(weight) * xi;
    }
    Ok(total)
}

/// Deterministic lower bound `Σ_{A∈𝒜} 𝒟_A · 2^{|Y∖N(A)|} ≤ i(G)`
/// (the partition function of each anchor is at least 1).
pub fn lower_bound_sum(g: &BipartiteGraph, family: &[VertexSet]) -> Result<BigUint> {
    let n = g.part_size();
    let mut total = BigUint::ZERO;
    for a in family {
        total += exact_da(g, a)? << (n - g.nbhd_x(a).len());
    }
    Ok(total)
}
