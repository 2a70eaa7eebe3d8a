use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected an interior point of the half-plane, got {0}")]
    NotInterior(String),
    #[error("expected a boundary point, got {0}")]
    NotBoundary(String),
    #[error("geodesic endpoints must be distinct and well formed: {0}")]
    DegenerateGeodesic(String),
    #[error("perpendicular bisector of a segment [i, i] is undefined")]
    BisectorUndefined,
    #[error("basepoint {0} lies on the bisector; side is ambiguous")]
    BasepointOnBisector(String),
    #[error("matrix does not have positive determinant (det = {0})")]
    BadDeterminant(f64),
    #[error("isometry is not hyperbolic (trace {0})")]
    NotHyperbolic(f64),
    #[error("isometry is not parabolic (trace {0})")]
    NotParabolic(f64),
    #[error("family parameter q must be a rational > 1, got {0}")]
    InvalidParameter(String),
    #[error("family index n must lie in 1..={max}, got {n}")]
    IndexOutOfRange { n: u32, max: u32 },
    #[error("selection of generator {m} (q = {q}) exhausted n <= {n_max}: {diagnostics}")]
    SelectionExhausted {
        m: usize,
        q: String,
        n_max: u32,
        diagnostics: String,
    },
    #[error("enumeration error: {0}")]
    Enumeration(String),
    #[error("ping-pong failure between {first} and {second}: {reason}")]
    Overlap {
        first: String,
        second: String,
        reason: String,
    },
    #[error("injectivity bound violated at z = {z} by word {word}: displacement {displacement} < {bound}")]
    InjectivityViolation {
        z: String,
        word: String,
        displacement: f64,
        bound: f64,
    },
    #[error("no k with r_k in [{lo}, {hi}) (first value past the interval {overshoot} at k = {k}, max increment {max_increment})")]
    NoHit {
        lo: f64,
        hi: f64,
        k: usize,
        overshoot: f64,
        max_increment: f64,
    },
    #[error("only {found} selected generators have q = {q}, {needed} requested; construct a larger group")]
    InsufficientGenerators { q: String, found: usize, needed: usize },
    #[error("profile spans {windows} windows, at least {required} required")]
    ProfileTooShort { windows: usize, required: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed group spec: {0}")]
    MalformedSpec(String),
}
