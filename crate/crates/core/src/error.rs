use thiserror::Error;

/// Errors raised by the circulant toolkit.
///
/// Each variant maps onto a stable process exit code (see [`Error::exit_code`])
/// so the CLI and the C ABI report failures the same way.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("inexact division: {0}")]
    Divisibility(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("hypothesis violated: gcd(a={a}, b={b}, d={d}) = {gcd}, the rules require 1")]
    Hypothesis { d: u64, a: u64, b: u64, gcd: u64 },

    #[error("resource limit: {what} = {requested} exceeds bound {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// 2 for contract-type failures, 3 for resource limits, 1 for failed
    /// self-checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Arity { .. }
            | Error::Divisibility(_)
            | Error::Contract(_)
            | Error::Hypothesis { .. }
            | Error::Parse(_) => 2,
            Error::ResourceLimit { .. } => 3,
            Error::Internal(_) => 1,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Arity { .. } => "arity",
            Error::Divisibility(_) => "divisibility",
            Error::Contract(_) => "contract",
            Error::Hypothesis { .. } => "hypothesis_violation",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::Internal(_) => "internal_consistency",
            Error::Parse(_) => "parse",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let Error::Hypothesis { d, a, b, gcd } = self {
            obj["d"] = (*d).into();
            obj["a"] = (*a).into();
            obj["b"] = (*b).into();
            obj["gcd"] = (*gcd).into();
        }
        obj
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
