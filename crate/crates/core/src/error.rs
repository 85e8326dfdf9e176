use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weight must have at least two entries, got {0}")]
    WeightTooShort(usize),

    #[error("weights have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("weights have different coordinate sums ({0} vs {1})")]
    SumMismatch(i64, i64),

    #[error("simple root index {index} out of range for d = {dim}")]
    RootIndexOutOfRange { index: usize, dim: usize },

    #[error("weight has a negative entry: {0}")]
    NegativeEntry(i64),

    #[error("weight {weight} is not a weight of Sym^{n}")]
    NotSymmetricWeight { weight: String, n: u64 },

    #[error("triple ({lambda}, {mu}, {nu}) does not give an integral root decomposition")]
    NonIntegralRadius { lambda: String, mu: String, nu: String },

    #[error("angular momentum {0}/2 must be nonnegative")]
    NegativeSpin(i64),

    #[error("parity mismatch: {0}")]
    Parity(String),

    #[error("triangle condition violated for j1 = {j1}/2, j2 = {j2}/2, j = {j}/2")]
    Triangle { j1: i64, j2: i64, j: i64 },

    #[error("projection m = {m}/2 out of range for j = {j}/2")]
    ProjectionOutOfRange { j: i64, m: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("weight-count profile exceeds available weights at w_1 = {index}: {requested} > {available}")]
    ProfileTooLarge { index: usize, requested: u64, available: u64 },
}
