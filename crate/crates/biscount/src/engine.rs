//! Top-level approximation scheme: parameter selection, brute-force
//! fallback, orchestration of the family and estimators, and exact
//! accumulation of the final sum.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigraph::BipartiteGraph;
use crate::contracting::{build_family, max_components, FamilyParams, NearCutParams};
use crate::dsampler::estimate_da;
use crate::spectral::{build_cut_family, decompose};
use crate::{mix_seed, Error, Result};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

/// How the estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "fpras")]
    Fpras,
    #[serde(rename = "exact-fallback")]
    ExactFallback,
}

/// Which of the asymptotic parameter regimes the instance satisfies; the
/// theorem's guarantees are only claimed inside them, and outside them the
/// engine falls back to exact counting unless forced.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegimeFlags {
    /// `t0 ≤ 2^{-8}·d` (family enumeration regime).
    pub t0_small: bool,
    /// `L·t0 ≤ d/(8·32)` (near-cut enumeration regime, largest t used).
    pub near_cut: bool,
    /// `ε > n·exp(−d/(2^8·C))` (accuracy not so small that brute force is
    /// cheaper).
    pub eps_not_tiny: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub t0_override: Option<usize>,
    /// Constant in `t0 = ⌈c_const·ln(n/ε)⌉`.
    pub c_const: f64,
    pub net_budget: u64,
    pub family_budget: usize,
    pub sample_budget: u64,
    pub subset_cap: usize,
    /// Instances with `n` at or below this always use the exact fallback.
    pub brute_force_threshold: usize,
    /// Run the sampling pipeline even outside the valid regime and below
    /// the brute-force threshold (used by experiments and acceptance runs;
    /// regime flags still report the violation).
    pub force_fpras: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            epsilon: 1.0,
            seed: 0,
            t0_override: None,
            c_const: 1.0,
            net_budget: 10_000_000,
            family_budget: 1_000_000,
            sample_budget: 100_000_000,
            subset_cap: 40,
            brute_force_threshold: DEFAULT_BRUTE_FORCE_LIMIT,
            force_fpras: false,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.net_budget == 0
            || self.family_budget == 0
            || self.sample_budget == 0
            || self.subset_cap == 0
        {
            return Err(Error::InvalidParameter("budgets must be positive".into()));
        }
        Ok(())
    }
}

/// Result of a counting run. The estimate is an exact rational; only the
/// reported log2 is floating point.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub estimate: BigRational,
    pub log2_estimate: f64,
    pub epsilon: f64,
    pub method: Method,
    pub t0: usize,
    pub family_size: usize,
    pub threshold_rank: usize,
    pub seed: u64,
    pub wall: Duration,
    pub regime: RegimeFlags,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    estimate: &'a str,
    log2_estimate: f64,
    epsilon: f64,
    method: Method,
    t0: usize,
    threshold_rank: usize,
    family_size: usize,
    seed: u64,
    wall_ms: u64,
}

impl ApproxResult {
    /// JSON rendering with the estimate as a decimal string truncated to 40
    /// significant digits.
    pub fn to_json(&self) -> String {
        let est = rational_to_decimal(&self.estimate, 40);
        serde_json::to_string_pretty(&JsonResult {
            estimate: &est,
            log2_estimate: self.log2_estimate,
            epsilon: self.epsilon,
            method: self.method,
            t0: self.t0,
            threshold_rank: self.threshold_rank,
            family_size: self.family_size,
            seed: self.seed,
            wall_ms: self.wall.as_millis() as u64,
        })
        .expect("serialization cannot fail")
    }
}

/// `t0 = max(1, ⌈c_const·ln(n/ε)⌉)`.
pub fn select_t0(n: usize, eps: f64, c_const: f64) -> usize {
    let raw = (c_const * (n as f64 / eps).ln()).ceil();
    if raw.is_finite() && raw >= 1.0 {
        raw as usize
    } else {
        1
    }
}

fn regime_flags(n: usize, d: usize, t0: usize, eps: f64, c_const: f64, ell_max: usize) -> RegimeFlags {
    RegimeFlags {
        t0_small: (t0 as f64) <= d as f64 / 256.0,
        near_cut: (ell_max * t0) as f64 <= d as f64 / 256.0,
        eps_not_tiny: eps > n as f64 * (-(d as f64) / (256.0 * c_const.max(1e-9))).exp(),
    }
}

/// Exact `i(G) = Σ_{A ⊆ X} 2^{|Y∖N(A)|}` by depth-first subset scan,
/// accumulating a histogram of `|Y∖N(A)|` values and forming the final sum
/// in arbitrary precision.
pub fn brute_force_count(g: &BipartiteGraph, limit: usize) -> Result<BigUint> {
    let n = g.part_size();
    if n > limit || n > 63 {
        return Err(Error::SizeLimit {
            what: "brute force part size",
            limit: limit.min(63),
            actual: n,
        });
    }
    let masks: Vec<u64> = (0..n)
        .map(|u| {
            let mut m = 0u64;
            for v in g.neighbors_of_x(u).iter() {
                m |= 1 << v;
            }
            m
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    fn rec(masks: &[u64], u: usize, nbhd: u64, n: usize, hist: &mut [u64]) {
        if u == masks.len() {
            hist[n - nbhd.count_ones() as usize] += 1;
            return;
        }
        rec(masks, u + 1, nbhd, n, hist);
        rec(masks, u + 1, nbhd | masks[u], n, hist);
    }
    rec(&masks, 0, 0, n, &mut hist);
    let mut total = BigUint::ZERO;
    for (w, &count) in hist.iter().enumerate() {
        if count != 0 {
            total += BigUint::from(count) << w;
        }
    }
    Ok(total)
}

/// Approximate (or, on fallback, exact) count of independent sets.
pub fn count_bis(g: &BipartiteGraph, cfg: &RunConfig) -> Result<ApproxResult> {
    cfg.validate()?;
    let start = Instant::now();
    let n = g.part_size();
    let d = g.degree();
    let eps = cfg.epsilon.min(1.0);
    let t0 = cfg.t0_override.unwrap_or_else(|| select_t0(n, eps, cfg.c_const));
    let ell_max = if t0 < d { max_components(g, t0)? } else { 0 };
    let regime = regime_flags(n, d, t0, eps, cfg.c_const, ell_max.max(1));
    let in_regime = regime.t0_small && regime.near_cut && regime.eps_not_tiny && t0 < d;

    let use_fallback = !cfg.force_fpras && (n <= cfg.brute_force_threshold || !in_regime);
    if use_fallback {
        let exact = brute_force_count(g, n.max(DEFAULT_BRUTE_FORCE_LIMIT))?;
        let estimate = BigRational::from(BigInt::from(exact));
        let log2_estimate = log2_rational(&estimate);
        return Ok(ApproxResult {
            estimate,
            log2_estimate,
            epsilon: eps,
            method: Method::ExactFallback,
            t0,
            family_size: 0,
            threshold_rank: 0,
            seed: cfg.seed,
            wall: start.elapsed(),
            regime,
        });
    }
    if t0 >= d {
        return Err(Error::InvalidParameter(format!(
            "t0={t0} >= d={d}: pipeline inapplicable; rerun without --force or lower t0"
        )));
    }

    let basis = decompose(g, 1e-9 * (d as f64).max(1.0))?;
    let cuts = build_cut_family(g, &basis, cfg.net_budget)?;
    let family_params = FamilyParams {
        near_cut: NearCutParams {
            c: 32,
            subset_cap: cfg.subset_cap,
            candidate_budget: cfg.net_budget.max(10_000_000),
        },
        family_budget: cfg.family_budget,
    };
    let family = build_family(g, &cuts, t0, &family_params)?;

    // Failure budget per estimator call: the paper's (n/ε)^{-C'} with C'=3,
    // capped so the union bound over all calls leaves success ≥ 3/4.
    let calls: usize = family.iter().map(|a| a.components().len()).sum();
    let rho_call = ((n as f64 / eps).powi(-3)).min(0.25 / calls.max(1) as f64);

    let mut total = BigRational::zero();
    for (idx, a) in family.iter().enumerate() {
        let ell = a.components().len();
        let da = estimate_da(
            g,
            a,
            eps,
            rho_call * ell.max(1) as f64,
            mix_seed(cfg.seed, idx as u64),
            cfg.sample_budget,
        )?;
        let weight = BigRational::from(BigInt::from(1) << a.weight_exponent());
        total += da * weight;
    }

    let log2_estimate = log2_rational(&total);
    Ok(ApproxResult {
        estimate: total,
        log2_estimate,
        epsilon: eps,
        method: Method::Fpras,
        t0,
        family_size: family.len(),
        threshold_rank: basis.threshold_rank(),
        seed: cfg.seed,
        wall: start.elapsed(),
        regime,
    })
}

/// log2 of a positive rational without overflowing f64, via bit lengths.
pub fn log2_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    assert!(r.is_positive(), "log2 of a negative rational");
    let log2_big = |x: &BigInt| -> f64 {
        let bits = x.bits();
        if bits <= 52 {
            return x.to_f64().unwrap().log2();
        }
        let shift = bits - 52;
        let top = (x >> shift).to_f64().unwrap();
        shift as f64 + top.log2()
    };
    log2_big(r.numer()) - log2_big(r.denom())
}

/// Decimal rendering of a nonnegative rational truncated to `sig` significant
/// digits (truncation, not rounding; magnitude is preserved for integers
/// longer than `sig` digits by padding with zeros).
pub fn rational_to_decimal(r: &BigRational, sig: usize) -> String {
    assert!(!r.is_negative());
    if r.is_zero() {
        return "0".to_string();
    }
    let p = r.numer().magnitude().clone();
    let q = r.denom().magnitude().clone();
    let int_part = &p / &q;
    let int_str = int_part.to_string();
    if !int_part.is_zero() {
        if int_str.len() >= sig {
            let mut s = int_str[..sig].to_string();
            s.push_str(&"0".repeat(int_str.len() - sig));
            return s;
        }
        let frac_digits = sig - int_str.len();
        let rem = &p % &q;
        let scaled = rem * BigUint::from(10u8).pow(frac_digits as u32) / &q;
        let mut frac = format!("{scaled:0>width$}", width = frac_digits);
        while frac.ends_with('0') {
            frac.pop();
        }
        if frac.is_empty() {
            int_str
        } else {
            format!("{int_str}.{frac}")
        }
    } else {
        // Value in (0, 1): find the leading significant digit, then emit.
        let mut zeros = 0usize;
        let ten = BigUint::from(10u8);
        let mut scaled_p = p.clone() * &ten;
        while scaled_p < q {
            zeros += 1;
            scaled_p *= &ten;
            if zeros > 1000 {
                break;
            }
        }
        let digits = zeros + sig;
        let scaled = p * BigUint::from(10u8).pow(digits as u32) / &q;
        let mut frac = format!("{scaled:0>width$}", width = digits);
        while frac.ends_with('0') {
            frac.pop();
        }
        format!("0.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{generate_regular, BipartiteGraph};
    use crate::oracle;
    use num_traits::One;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let g = BipartiteGraph::new(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(brute_force_count(&g, 24).unwrap(), BigUint::from(3u8));
        assert_eq!(brute_force_count(&k22(), 24).unwrap(), BigUint::from(7u8));
        let c6 =
            BipartiteGraph::new(3, 2, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap();
        assert_eq!(brute_force_count(&c6, 24).unwrap(), BigUint::from(18u8));
        assert!(matches!(
            brute_force_count(&k22(), 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn select_t0_examples() {
        assert_eq!(select_t0(100, 1.0, 1.0), 5);
        assert_eq!(select_t0(1, 1.0, 1.0), 1);
        // Regime flag example: t0=5 > 2^{-8}·50.
        let flags = regime_flags(100, 50, 5, 1.0, 1.0, 1);
        assert!(!flags.t0_small);
    }

    #[test]
    fn fallback_on_small_instances() {
        let g = k22();
        let cfg = RunConfig {
            epsilon: 0.2,
            ..RunConfig::default()
        };
        let res = count_bis(&g, &cfg).unwrap();
        assert_eq!(res.method, Method::ExactFallback);
        assert_eq!(res.estimate, BigRational::from(BigInt::from(7)));
        assert!((res.log2_estimate - 7f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn forced_pipeline_matches_oracle_on_small_dense_instance() {
        let g = generate_regular(8, 5, 11).unwrap();
        let cfg = RunConfig {
            epsilon: 0.3,
            seed: 5,
            t0_override: Some(2),
            force_fpras: true,
            ..RunConfig::default()
        };
        let res = count_bis(&g, &cfg).unwrap();
        assert_eq!(res.method, Method::Fpras);
        let exact = oracle::exact_count(&g).unwrap().to_f64().unwrap();
        let got = res.estimate.to_f64().unwrap();
        let ratio = got / exact;
        assert!(ratio >= (-0.3f64).exp() && ratio <= 0.3f64.exp(), "{ratio}");
        assert!(res.estimate >= BigRational::from(BigInt::from(1) << 8) * BigRational::new(BigInt::from(1000), BigInt::from(1350)));
    }

    #[test]
    fn pipeline_deterministic() {
        let g = generate_regular(8, 5, 3).unwrap();
        let cfg = RunConfig {
            epsilon: 0.5,
            seed: 9,
            t0_override: Some(2),
            force_fpras: true,
            ..RunConfig::default()
        };
        let a = count_bis(&g, &cfg).unwrap();
        let b = count_bis(&g, &cfg).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.to_json().replace(&format!("\"wall_ms\": {}", a.wall.as_millis()), ""),
                   b.to_json().replace(&format!("\"wall_ms\": {}", b.wall.as_millis()), ""));
    }

    #[test]
    fn lower_bound_sandwich_exact() {
        // Σ_A exact_DA·2^{|Y∖N(A)|} ≤ i(G), exactly.
        for seed in 0..5 {
            let g = generate_regular(6, 4, seed).unwrap();
            let fam = oracle::exact_family(&g, 2).unwrap();
            let lower = oracle::lower_bound_sum(&g, &fam).unwrap();
            assert!(lower <= oracle::exact_count(&g).unwrap());
        }
    }

    #[test]
    fn decimal_rendering() {
        let r = BigRational::new(BigInt::from(7), BigInt::from(2));
        assert_eq!(rational_to_decimal(&r, 40), "3.5");
        let r = BigRational::from(BigInt::from(1) << 20);
        assert_eq!(rational_to_decimal(&r, 40), "1048576");
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(
            rational_to_decimal(&r, 5),
            "0.33333"
        );
        let r = BigRational::new(BigInt::from(1), BigInt::from(300));
        assert_eq!(rational_to_decimal(&r, 5), "0.0033333");
        let huge = BigRational::from(BigInt::from(10).pow(50) + BigInt::one());
        let s = rational_to_decimal(&huge, 40);
        assert_eq!(s.len(), 51);
        assert!(s.starts_with('1'));
        assert!(s.ends_with('0'));
        assert_eq!(rational_to_decimal(&BigRational::zero(), 40), "0");
    }

    #[test]
    fn log2_rational_large_values() {
        let r = BigRational::from(BigInt::from(1) << 200);
        assert!((log2_rational(&r) - 200.0).abs() < 1e-9);
        let r = BigRational::new(BigInt::from(3), BigInt::from(4));
        assert!((log2_rational(&r) - 0.75f64.log2()).abs() < 1e-9);
    }
}
