//! Size guards for exhaustive computations.

use thiserror::Error;

pub const ENV_VAR: &str = "NCPART_MAX_N";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} with n = {n} exceeds the size limit {limit}; set {ENV_VAR} to raise it")]
pub struct GuardError {
    pub what: String,
    pub n: usize,
    pub limit: usize,
}

/// The active limit: the environment override if set, else `default`.
pub fn limit(default: usize) -> usize {
    std::env::var(ENV_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

pub fn check(what: &str, n: usize, default: usize) -> Result<(), GuardError> {
    let limit = limit(default);
    if n > limit {
        return Err(GuardError { what: what.to_string(), n, limit });
    }
    Ok(())
}
