use thiserror::Error;

/// A presentation side condition that a metacyclic parameter triple violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetacyclicCondition {
    /// `m` and `n` must be positive.
    Positive,
    /// `0 <= r < m`.
    ExponentRange,
    /// `m` must be odd.
    OddModulus,
    /// `r^n ≡ 1 (mod m)`.
    RootOfUnity,
    /// `gcd(m, n·(r − 1)) = 1`.
    Coprime,
}

impl std::fmt::Display for MetacyclicCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MetacyclicCondition::Positive => "m >= 1 and n >= 1",
            MetacyclicCondition::ExponentRange => "0 <= r < m",
            MetacyclicCondition::OddModulus => "m is odd",
            MetacyclicCondition::RootOfUnity => "r^n = 1 (mod m)",
            MetacyclicCondition::Coprime => "gcd(m, n*(r-1)) = 1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("metacyclic parameters (m={m}, n={n}, r={r}) violate {condition}")]
    Metacyclic {
        m: u64,
        n: u64,
        r: u64,
        condition: MetacyclicCondition,
    },
    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
