//! Approximate counting of independent sets in dense d-regular bipartite
//! graphs.
//!
//! The pipeline enumerates candidate cuts of the graph via an epsilon-net of
//! the low-eigenvalue subspace of the Laplacian, enumerates closed contracting
//! vertex sets near those cuts, estimates per-component cover counts by Monte
//! Carlo sampling, and accumulates the final estimate in exact rational
//! arithmetic. Brute-force oracles certify every stage at small scale.

pub mod bigraph;
pub mod contracting;
pub mod dsampler;
pub mod engine;
pub mod oracle;
pub mod spectral;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("part mismatch: expected {expected}, found {found}")]
    PartMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid graph{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    InvalidGraph { line: Option<usize>, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("budget exceeded in {stage}: {detail} (budget {budget})")]
    BudgetExceeded {
        stage: &'static str,
        budget: u64,
        detail: String,
    },
    #[error("{what} exceeds size limit {limit} (got {actual})")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigensolver did not converge: residual norm {residual}")]
    EigenFailure { residual: f64 },
    #[error("regular graph generator exhausted {attempts} resampling attempts")]
    GeneratorExhausted { attempts: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// SplitMix64 step, used to derive independent RNG substreams from a base
/// seed plus structural indices so output does not depend on thread count.
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e3779b97f4a7c15)
        .wrapping_add(salt.wrapping_mul(0xbf58476d1ce4e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
