//! Monte Carlo estimation of per-component cover counts: the number of
//! 2-linked subsets `B ⊆ A` with `N(B) = N(A)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{BipartiteGraph, Part, VertexSet};
use crate::contracting::ContractingSet;
use crate::{mix_seed, Error, Result};

/// Fixed number of deterministic sampling substreams; hit counts are summed
/// exactly, so results do not depend on how substreams map to threads.
const SAMPLE_CHUNKS: u64 = 64;

/// A 2-linked subset `A' ⊆ A` with `N(A') = N(A)`, built greedily and used
/// as a lower bound witness for the hit probability.
#[derive(Debug, Clone)]
pub struct SmallCover {
    set: VertexSet,
}

impl SmallCover {
    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }
}

/// Result of one component estimate, with the exact rational value and the
/// sampling parameters that produced it.
#[derive(Debug, Clone)]
pub struct CoverCountEstimate {
    pub value: BigRational,
    pub eps_prime: f64,
    pub rho: f64,
    pub samples_used: u64,
    pub hits: u64,
    pub cover_size: usize,
}

/// Greedy small cover: start from the smallest-index vertex of `A`, then
/// repeatedly add the vertex of `A` that covers the most of `N(A)` not yet
/// covered, among vertices sharing a neighbor with the current set, breaking
/// ties by smallest index. Any valid cover preserves correctness; its size
/// only drives the sample count.
pub fn find_small_cover(g: &BipartiteGraph, a: &VertexSet) -> Result<SmallCover> {
    if a.is_empty() {
        return Err(Error::InvalidParameter(
            "find_small_cover needs a nonempty set".into(),
        ));
    }
    if !g.is_two_linked(a)? {
        return Err(Error::InvalidParameter(
            "find_small_cover needs a 2-linked set".into(),
        ));
    }
    let target = g.nbhd_x(a);
    let start = a.iter().next().expect("nonempty");
    let mut cover = VertexSet::empty(Part::X, g.part_size());
    cover.insert(start);
    let mut covered = g.neighbors_of_x(start).clone();
    while covered != target {
        let mut best: Option<(usize, usize)> = None;
        for x in a.iter() {
            if cover.contains(x) || !g.neighbors_of_x(x).intersects(&covered) {
                continue;
            }
            let gain = g.neighbors_of_x(x).difference(&covered).len();
            if gain == 0 {
                continue;
            }
            if best.map_or(true, |(bg, bx)| gain > bg || (gain == bg && x < bx)) {
                best = Some((gain, x));
            }
        }
        // A is 2-linked, so progress stalls only once coverage is complete.
        let (_, x) = best.expect("2-linked set always admits a covering step");
        cover.insert(x);
        covered.union_with(g.neighbors_of_x(x));
    }
    Ok(SmallCover { set: cover })
}

/// Sample count realizing the two-sided multiplicative Chernoff bound for a
/// hit probability of at least `2^{-s}`.
pub fn sample_count(eps_prime: f64, rho: f64, cover_size: usize) -> u64 {
    let p_lb = 0.5f64.powi(cover_size as i32);
    (3.0 * (2.0 / rho).ln() / (p_lb * eps_prime * eps_prime)).ceil() as u64
}

/// Precomputed per-member data for fast hit checks.
struct ComponentSampler {
    members: Vec<usize>,
    /// Neighbor bitset of each member over Y, in words.
    nbr_words: Vec<Vec<u64>>,
    /// G²-adjacency among members, as word-packed rows.
    link_rows: Vec<Vec<u64>>,
    target: Vec<u64>,
}

impl ComponentSampler {
    fn new(g: &BipartiteGraph, a: &VertexSet) -> Self {
        let members: Vec<usize> = a.iter().collect();
        let words = g.part_size().div_ceil(64);
        let nbr_words: Vec<Vec<u64>> = members
            .iter()
            .map(|&x| {
                let mut w = vec![0u64; words];
                for v in g.neighbors_of_x(x).iter() {
                    w[v / 64] |= 1 << (v % 64);
                }
                w
            })
            .collect();
        let mrows = members.len().div_ceil(64);
        let mut link_rows = vec![vec![0u64; mrows]; members.len()];
        for i in 0..members.len() {
            for j in 0..members.len() {
                if i != j
                    && nbr_words[i]
                        .iter()
                        .zip(&nbr_words[j])
                        .any(|(a, b)| a & b != 0)
                {
                    link_rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut target = vec![0u64; words];
        for w in &nbr_words {
            for (t, x) in target.iter_mut().zip(w) {
                *t |= x;
            }
        }
        ComponentSampler {
            members,
            nbr_words,
            link_rows,
            target,
        }
    }

    /// Is the member-subset `b` (bit i ↔ members[i]) 2-linked with
    /// `N(B) = N(A)`?
    fn is_hit(&self, b: &[u64]) -> bool {
        let words = self.target.len();
        let mut nb = vec![0u64; words];
        let mut first = None;
        for i in 0..self.members.len() {
            if b[i / 64] >> (i % 64) & 1 == 1 {
                if first.is_none() {
                    first = Some(i);
                }
                for (t, x) in nb.iter_mut().zip(&self.nbr_words[i]) {
                    *t |= x;
                }
            }
        }
        if nb != self.target {
            return false;
        }
        let Some(first) = first else { return false };
        // BFS over the G²-link rows restricted to b.
        let mrows = b.len();
        let mut seen = vec![0u64; mrows];
        seen[first / 64] |= 1 << (first % 64);
        let mut stack = vec![first];
        while let Some(i) = stack.pop() {
            for w in 0..mrows {
                let mut fresh = self.link_rows[i][w] & b[w] & !seen[w];
                while fresh != 0 {
                    let j = w * 64 + fresh.trailing_zeros() as usize;
                    seen[w] |= 1 << (j % 64);
                    fresh &= fresh - 1;
                    stack.push(j);
                }
            }
        }
        seen.iter().zip(b).all(|(s, m)| s & m == *m)
    }
}

/// Relative `eps_prime`-approximation of `#{B ⊆ A : B 2-linked, N(B)=N(A)}`
/// with failure probability at most `rho`, by uniform subset sampling.
///
/// The sample count is `⌈3·ln(2/ρ) / (2^{-s}·ε'²)⌉` where `s` is the size of
/// the greedy small cover: every superset of the cover is a hit, so the true
/// hit probability is at least `2^{-s}`. The returned value
/// `(hits/m)·2^{|A|}` is an exact rational.
pub fn estimate_component(
    g: &BipartiteGraph,
    a: &VertexSet,
    eps_prime: f64,
    rho: f64,
    seed: u64,
    sample_budget: u64,
) -> Result<CoverCountEstimate> {
    if !(eps_prime > 0.0 && eps_prime <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps_prime must be in (0, 1], got {eps_prime}"
        )));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rho must be in (0, 1), got {rho}"
        )));
    }
    let cover = find_small_cover(g, a)?;
    let m = sample_count(eps_prime, rho, cover.size());
    if m > sample_budget {
        return Err(Error::BudgetExceeded {
            stage: "estimate_component",
            budget: sample_budget,
            detail: format!(
                "needs {m} samples for cover size {} (eps'={eps_prime}, rho={rho})",
                cover.size()
            ),
        });
    }
    let sampler = ComponentSampler::new(g, a);
    let mwords = sampler.members.len().div_ceil(64);

    let chunk_sizes: Vec<u64> = (0..SAMPLE_CHUNKS)
        .map(|c| m / SAMPLE_CHUNKS + u64::from(c < m % SAMPLE_CHUNKS))
        .collect();
    let run_chunk = |(chunk, &size): (usize, &u64)| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, chunk as u64));
        let mut hits = 0u64;
        let mut b = vec![0u64; mwords];
        let tail_bits = sampler.members.len() % 64;
        for _ in 0..size {
            for w in b.iter_mut() {
                *w = rng.next_u64();
            }
            if tail_bits != 0 {
                b[mwords - 1] &= (1u64 << tail_bits) - 1;
            }
            if sampler.is_hit(&b) {
                hits += 1;
            }
        }
        hits
    };

    #[cfg(feature = "parallel")]
    let hits: u64 = {
        use rayon::prelude::*;
        chunk_sizes.par_iter().enumerate().map(run_chunk).sum()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: u64 = chunk_sizes.iter().enumerate().map(run_chunk).sum();

    let value = BigRational::new(
        BigInt::from(hits) << a.len(),
        BigInt::from(m),
    );
    Ok(CoverCountEstimate {
        value,
        eps_prime,
        rho,
        samples_used: m,
        hits,
        cover_size: cover.size(),
    })
}

/// Estimate of the full product over components, with per-component relative
/// error `eps/(2·max(ℓ,1))` and per-component failure budget `rho/ℓ`. The
/// empty set yields exactly 1 (empty product).
pub fn estimate_da(
    g: &BipartiteGraph,
    a: &ContractingSet,
    eps: f64,
    rho: f64,
    seed: u64,
    sample_budget: u64,
) -> Result<BigRational> {
    let ell = a.components().len();
    if ell == 0 {
        return Ok(BigRational::from(BigInt::from(1)));
    }
    let eps_prime = eps / (2.0 * ell as f64);
    let rho_comp = rho / ell as f64;
    let mut product = BigRational::from(BigInt::from(1));
    for (i, comp) in a.components().iter().enumerate() {
        let est = estimate_component(
            g,
            comp,
            eps_prime,
            rho_comp,
            mix_seed(seed, i as u64),
            sample_budget,
        )?;
        product *= est.value;
    }
    Ok(product)
}
