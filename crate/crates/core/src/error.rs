use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle length must be at least 1")]
    ZeroCycleLength,

    #[error("substitution T -> T^k needs k >= 1")]
    ZeroSubstitution,

    #[error("dual level must be at least 1")]
    ZeroLevel,

    /// A factor `(1 - T^key)` whose length does not divide the requested dual level.
    #[error("factor (1-T^{key}) does not divide the dual level {level}")]
    DualLevel { key: u64, level: u64 },

    #[error("a semigroup needs at least one generator")]
    EmptyGenerators,

    #[error("generators must be positive")]
    ZeroGenerator,

    #[error("generators must be strictly increasing (position {index})")]
    NotIncreasing { index: usize },

    #[error("generators are not coprime (gcd {gcd})")]
    NotCoprime { gcd: u64 },

    #[error("generator beta_{index} does not lower the gcd chain")]
    RedundantGenerator { index: usize },

    #[error("order condition fails at i={index}: n_i*beta_i = {product} >= beta_(i+1) = {next}")]
    OrderViolation {
        index: usize,
        product: u64,
        next: u64,
    },

    #[error(
        "n_{index}*beta_{index} = {value} has no bounded representation in the previous generators"
    )]
    NotRepresentable { index: usize, value: u64 },

    #[error("index {index} outside 1..={g}")]
    IndexOutOfRange { index: usize, g: usize },

    #[error("operation needs at least one characteristic pair (g >= 1)")]
    SmoothBranch,

    #[error("homology map in degree {degree} is not square")]
    NonSquareMatrix { degree: usize },

    #[error("series order {requested} exceeds the cap {cap}")]
    OrderTooLarge { requested: usize, cap: usize },

    #[error("malformed input: {0}")]
    Input(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI and FFI error reports.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::ZeroCycleLength => "ZeroCycleLength",
            Error::ZeroSubstitution => "ZeroSubstitution",
            Error::ZeroLevel => "ZeroLevel",
            Error::DualLevel { .. } => "DualLevelError",
            Error::EmptyGenerators => "EmptyGenerators",
            Error::ZeroGenerator => "ZeroGenerator",
            Error::NotIncreasing { .. } => "NotIncreasing",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::RedundantGenerator { .. } => "RedundantGenerator",
            Error::OrderViolation { .. } => "OrderViolation",
            Error::NotRepresentable { .. } => "NotRepresentable",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::SmoothBranch => "SmoothBranch",
            Error::NonSquareMatrix { .. } => "NonSquareMatrix",
            Error::OrderTooLarge { .. } => "OrderTooLarge",
            Error::Input(_) => "InvalidInput",
            Error::Internal(_) => "InternalError",
        }
    }
}
