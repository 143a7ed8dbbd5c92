use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("working precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("dominant-root hypothesis violated: {0}")]
    DominanceViolation(String),
    #[error("tail parameters require simple characteristic roots")]
    MultipleRootsUnsupported,
    #[error("height of zero is undefined")]
    ZeroElement,
    #[error("element is not certifiably real and positive under the distinguished embedding")]
    NotRealPositive,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("enclosure of scaled theta[{0}] straddles an integer; raise precision")]
    AmbiguousFloor(usize),
    #[error("lattice matrix is singular")]
    SingularMatrix,
    #[error("reduced-basis test failed; retry with a larger scale C or another gamma")]
    TestFailed,
    #[error("auto-tune search exhausted (largest C tried: 10^{0})")]
    SearchExhausted(u32),
    #[error("factorization budget exceeded for {0}")]
    FactorizationTooHard(String),
    #[error("fixpoint solver did not converge on [{0}, {1}]")]
    NoConvergence(String, String),
    #[error("malformed certificate: {0}")]
    MalformedDocument(String),
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("certificate check failed: {0}")]
    VerificationFailed(String),
    #[error("per-m reduction failed at m = {0}")]
    PerIndexReductionFailed(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
