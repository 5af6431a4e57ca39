//! Laplacian eigendecomposition, threshold rank, epsilon-net enumeration of
//! the low-eigenvalue subspace, and construction of the candidate cut family.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::bigraph::{BipartiteGraph, Part, VertexSet};
use crate::{Error, Result};

/// Full eigendecomposition of the Laplacian `L = dI - A` together with the
/// threshold rank `k` (adjacency eigenvalue pairs with `|λ| ≥ d/2`).
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    n: usize,
    d: usize,
    /// Laplacian eigenvalues `μ_1 ≤ … ≤ μ_N`.
    eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered to match `eigenvalues`.
    basis: DMatrix<f64>,
    threshold_rank: usize,
}

impl SpectralBasis {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, i: usize) -> DVector<f64> {
        self.basis.column(i).into_owned()
    }

    pub fn basis_matrix(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Threshold rank k: the adjacency matrix has exactly 2k eigenvalues of
    /// absolute value at least d/2, mirrored about zero by bipartiteness.
    pub fn threshold_rank(&self) -> usize {
        self.threshold_rank
    }

    pub fn part_size(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Squared norm of the component of `v` orthogonal to the low subspace U.
    pub fn orthogonal_sq_norm(&self, v: &DVector<f64>) -> f64 {
        let k = self.threshold_rank;
        let total = v.norm_squared();
        let mut low = 0.0;
        for i in 0..k {
            let c = self.basis.column(i).dot(v);
            low += c * c;
        }
        (total - low).max(0.0)
    }
}

fn laplacian(g: &BipartiteGraph) -> DMatrix<f64> {
    let n = g.part_size();
    let big = 2 * n;
    let d = g.degree() as f64;
    let mut l = DMatrix::zeros(big, big);
    for i in 0..big {
        l[(i, i)] = d;
    }
    for (u, v) in g.edges() {
        l[(u, n + v)] = -1.0;
        l[(n + v, u)] = -1.0;
    }
    l
}

/// Dense symmetric eigendecomposition of `L = dI - A` with eigenvalues in
/// ascending order. `tol` is the absolute tolerance used both for the
/// threshold-rank comparison at `d/2` (inclusive ties) and for residual
/// validation.
pub fn decompose(g: &BipartiteGraph, tol: f64) -> Result<SpectralBasis> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "decompose tolerance must be positive, got {tol}"
        )));
    }
    let n = g.part_size();
    let d = g.degree() as f64;
    let l = laplacian(g);
    let eig = l
        .clone()
        .symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut basis = DMatrix::zeros(2 * n, 2 * n);
    for (col, &i) in order.iter().enumerate() {
        basis.set_column(col, &eig.eigenvectors.column(i));
    }
    // Residual check: ‖L e_i − μ_i e_i‖ must be small relative to ‖L‖.
    let scale = 2.0 * d;
    let mut worst = 0.0f64;
    for i in 0..2 * n {
        let e = basis.column(i);
        let r = (&l * e - eigenvalues[i] * e).norm();
        worst = worst.max(r);
    }
    let residual_tol = (tol.max(1e-12)) * scale.max(1.0) * (2 * n) as f64;
    if worst > residual_tol {
        return Err(Error::EigenFailure { residual: worst });
    }
    // Adjacency eigenvalue λ = d − μ, so |λ| ≥ d/2 on the low side means
    // μ ≤ d/2; ties at exactly d/2 count toward k.
    let threshold_rank = eigenvalues.iter().filter(|&&mu| mu <= d / 2.0 + tol).count();
    Ok(SpectralBasis {
        n,
        d: g.degree(),
        eigenvalues,
        basis,
        threshold_rank,
    })
}

/// The deduplicated collection of candidate cuts obtained by rounding
/// epsilon-net points of the low subspace.
#[derive(Debug, Clone)]
pub struct CutFamily {
    cuts: Vec<VertexSet>,
    pub eps: f64,
    pub norm_bound: f64,
}

impl CutFamily {
    pub fn cuts(&self) -> &[VertexSet] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Debug dump: one canonical vertex-index line per cut.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.cuts {
            let idx: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            out.push_str(&idx.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Coordinate-wise rounding of `p` to the nearest 0/1 vector, ties at
/// exactly 1/2 mapped to 1.
pub fn round_to_cut(p: &[f64]) -> VertexSet {
    let mut s = VertexSet::empty(Part::Full, p.len());
    for (i, &x) in p.iter().enumerate() {
        if x >= 0.5 {
            s.insert(i);
        }
    }
    s
}

/// Depth-first enumeration of the lattice `{Σ x_i e_i : x_i ∈ step·ℤ}`
/// intersected with the ball of radius `norm_bound`, for the coordinates
/// `lo..k`, invoking `visit` with each point in vertex coordinates.
///
/// Prunes a prefix as soon as its partial squared norm exceeds the bound;
/// since the basis is orthonormal the partial squared norm is just the sum
/// of squares of the chosen coordinates.
fn net_dfs(
    basis: &SpectralBasis,
    step: f64,
    norm_bound: f64,
    coord: usize,
    k: usize,
    sq_left: f64,
    point: &mut DVector<f64>,
    count: &mut u64,
    budget: u64,
    visit: &mut dyn FnMut(&DVector<f64>),
) -> Result<()> {
    if coord == k {
        *count += 1;
        if *count > budget {
            return Err(Error::BudgetExceeded {
                stage: "epsilon_net",
                budget,
                detail: "lattice point budget exceeded".into(),
            });
        }
        visit(point);
        return Ok(());
    }
    let jmax = (sq_left.max(0.0).sqrt() / step).floor() as i64;
    let e = basis.basis_matrix().column(coord);
    for j in -jmax..=jmax {
        let x = j as f64 * step;
        let rem = sq_left - x * x;
        if rem < -1e-12 {
            continue;
        }
        if x != 0.0 {
            point.axpy(x, &e, 1.0);
        }
        net_dfs(
            basis, step, norm_bound, coord + 1, k, rem, point, count, budget, visit,
        )?;
        if x != 0.0 {
            point.axpy(-x, &e, 1.0);
        }
    }
    Ok(())
}

/// Enumerates all epsilon-net points (lattice spacing `eps/√k` per
/// coordinate, norm at most `norm_bound`) as vectors in vertex coordinates.
/// Mostly a test/debug surface; the cut-family construction streams the net
/// without materializing it.
pub fn epsilon_net(
    basis: &SpectralBasis,
    eps: f64,
    norm_bound: f64,
    budget: u64,
) -> Result<Vec<DVector<f64>>> {
    if eps <= 0.0 {
        return Err(Error::InvalidParameter("epsilon-net eps must be positive".into()));
    }
    let k = basis.threshold_rank();
    let step = eps / (k as f64).sqrt();
    let mut out = Vec::new();
    let mut point = DVector::zeros(2 * basis.part_size());
    let mut count = 0;
    net_dfs(
        basis,
        step,
        norm_bound,
        0,
        k,
        norm_bound * norm_bound + 1e-12,
        &mut point,
        &mut count,
        budget,
        &mut |p| out.push(p.clone()),
    )?;
    Ok(out)
}

/// Builds the candidate cut family: every net point of the low subspace with
/// norm at most `√n` is rounded coordinate-wise to a 0/1 indicator and the
/// resulting vertex sets are deduplicated and canonically ordered.
///
/// The net is streamed; enumeration is split on the first lattice coordinate
/// so branches can run in parallel, with results merged into a canonical
/// order that is independent of thread count.
pub fn build_cut_family(
    g: &BipartiteGraph,
    basis: &SpectralBasis,
    budget: u64,
) -> Result<CutFamily> {
    let eps = std::f64::consts::SQRT_2;
    let norm_bound = (g.part_size() as f64).sqrt();
    let k = basis.threshold_rank();
    let step = eps / (k as f64).sqrt();
    let sq = norm_bound * norm_bound + 1e-12;
    let j0max = (sq.sqrt() / step).floor() as i64;
    let branches: Vec<i64> = (-j0max..=j0max).collect();

    let run_branch = |&j0: &i64| -> Result<(u64, BTreeSet<VertexSet>)> {
        let x0 = j0 as f64 * step;
        let rem = sq - x0 * x0;
        if rem < -1e-12 {
            return Ok((0, BTreeSet::new()));
        }
        let mut point = DVector::zeros(2 * basis.part_size());
        if x0 != 0.0 {
            point.axpy(x0, &basis.basis_matrix().column(0), 1.0);
        }
        let mut local = BTreeSet::new();
        let mut count = 0;
        net_dfs(
            basis,
            step,
            norm_bound,
            1,
            k,
            rem,
            &mut point,
            &mut count,
            budget,
            &mut |p| {
                local.insert(round_to_cut(p.as_slice()));
            },
        )?;
        Ok((count, local))
    };

    #[cfg(feature = "parallel")]
    let results: Vec<Result<(u64, BTreeSet<VertexSet>)>> = {
        use rayon::prelude::*;
        branches.par_iter().map(run_branch).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(u64, BTreeSet<VertexSet>)>> =
        branches.iter().map(run_branch).collect();

    let mut merged = BTreeSet::new();
    let mut total = 0u64;
    for r in results {
        let (count, local) = r?;
        total += count;
        merged.extend(local);
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            stage: "epsilon_net",
            budget,
            detail: format!("net holds {total} points"),
        });
    }
    Ok(CutFamily {
        cuts: merged.into_iter().collect(),
        eps,
        norm_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::generate_regular;

    fn k_dd(d: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..d {
            for v in 0..d {
                edges.push((u, v));
            }
        }
        BipartiteGraph::new(d, d, &edges).unwrap()
    }

    fn two_k_dd(d: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..d {
            for v in 0..d {
                edges.push((u, v));
                edges.push((d + u, d + v));
            }
        }
        BipartiteGraph::new(2 * d, d, &edges).unwrap()
    }

    fn c6() -> BipartiteGraph {
        BipartiteGraph::new(3, 2, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn threshold_rank_examples() {
        let b = decompose(&k_dd(3), 1e-9).unwrap();
        assert_eq!(b.threshold_rank(), 1);
        let b = decompose(&two_k_dd(3), 1e-9).unwrap();
        assert_eq!(b.threshold_rank(), 2);
        // C6: adjacency eigenvalues ±2, ±1, ±1, all of absolute value ≥ 1.
        let b = decompose(&c6(), 1e-9).unwrap();
        assert_eq!(b.threshold_rank(), 3);
    }

    #[test]
    fn spectrum_endpoints_and_orthonormality() {
        let g = generate_regular(8, 4, 2).unwrap();
        let b = decompose(&g, 1e-9).unwrap();
        let mu = b.eigenvalues();
        assert!(mu[0].abs() < 1e-8);
        assert!((mu[mu.len() - 1] - 8.0).abs() < 1e-8);
        let bt_b = b.basis_matrix().transpose() * b.basis_matrix();
        for i in 0..16 {
            for j in 0..16 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((bt_b[(i, j)] - expected).abs() < 1e-8);
            }
        }
        // Trace bound k ≤ 4n/d.
        assert!(b.threshold_rank() <= 4 * g.part_size() / g.degree());
        // μ_{k+1} > d/2 − tol.
        let k = b.threshold_rank();
        assert!(mu[k] > g.degree() as f64 / 2.0 - 1e-9);
    }

    #[test]
    fn net_lattice_counts() {
        // k = 1 cases reduce to one-dimensional lattice enumeration.
        let b = decompose(&k_dd(1), 1e-9).unwrap();
        assert_eq!(b.threshold_rank(), 1);
        // Norm bound 1 < √2 spacing: only the zero point.
        let pts = epsilon_net(&b, std::f64::consts::SQRT_2, 1.0, 1000).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].norm() < 1e-12);
        // Norm bound 2: coordinates {−√2, 0, √2}.
        let pts = epsilon_net(&b, std::f64::consts::SQRT_2, 2.0, 1000).unwrap();
        assert_eq!(pts.len(), 3);
        // The zero vector is always emitted.
        assert!(pts.iter().any(|p| p.norm() < 1e-12));
    }

    #[test]
    fn net_budget_error() {
        let b = decompose(&k_dd(4), 1e-9).unwrap();
        let err = epsilon_net(&b, std::f64::consts::SQRT_2, 2.0, 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn rounding_rules() {
        assert!(round_to_cut(&[0.0, 0.0]).is_empty());
        assert_eq!(round_to_cut(&[1.0, 1.0]).len(), 2);
        let s = round_to_cut(&[0.5, 0.49, 0.51, 0.2]);
        assert_eq!(s.indices(), vec![0, 2]);
    }

    #[test]
    fn projection_bound() {
        // For any S with cut value ≤ td, the component of its indicator
        // orthogonal to U has squared norm ≤ 2t.
        let g = generate_regular(6, 4, 9).unwrap();
        let b = decompose(&g, 1e-9).unwrap();
        for bits in 0u32..1 << 12 {
            let mut s = VertexSet::empty(Part::Full, 12);
            let mut v = DVector::zeros(12);
            for i in 0..12 {
                if bits >> i & 1 == 1 {
                    s.insert(i);
                    v[i] = 1.0;
                }
            }
            let t = (g.cut_value(&s) as f64 / g.degree() as f64).ceil().max(1.0);
            assert!(b.orthogonal_sq_norm(&v) <= 2.0 * t + 1e-8);
        }
    }

    #[test]
    fn cut_family_contains_component_cuts() {
        let g = two_k_dd(4);
        let b = decompose(&g, 1e-9).unwrap();
        let fam = build_cut_family(&g, &b, 10_000_000).unwrap();
        assert!(!fam.is_empty());
        // The 4 component-aligned cuts have value 0 and must be within
        // Hamming distance 32 of some family member with value ≤ 33d.
        let n = g.part_size();
        let copies = [
            vec![],
            (0..4).chain(n..n + 4).collect::<Vec<_>>(),
            (4..8).chain(n + 4..n + 8).collect::<Vec<_>>(),
            (0..8).chain(n..n + 8).collect::<Vec<_>>(),
        ];
        for idx in copies {
            let s = VertexSet::from_indices(Part::Full, 2 * n, &idx);
            assert_eq!(g.cut_value(&s), 0);
            assert!(fam.cuts().iter().any(|c| {
                s.sym_diff_len(c) <= 32 && g.cut_value(c) <= 33 * g.degree()
            }));
        }
    }

    #[test]
    fn cut_family_covering_exhaustive_k22() {
        let g = super::super::bigraph::parse_graph("2 2\n0 0\n0 1\n1 0\n1 1\n").unwrap();
        let b = decompose(&g, 1e-9).unwrap();
        let fam = build_cut_family(&g, &b, 10_000_000).unwrap();
        let d = g.degree();
        for bits in 0u32..16 {
            let idx: Vec<usize> = (0..4).filter(|i| bits >> i & 1 == 1).collect();
            let s = VertexSet::from_indices(Part::Full, 4, &idx);
            let t = (g.cut_value(&s) as f64 / d as f64).ceil().max(1.0) as usize;
            assert!(fam.cuts().iter().any(|c| {
                s.sym_diff_len(c) <= 32 * t && g.cut_value(c) <= 33 * t * d
            }));
        }
    }
}
