use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("evaluation at |z| = {modulus} outside guard radius {guard}")]
    EvalOutsideDomain { modulus: f64, guard: f64 },

    #[error("inner map value {value} leaves the outer map's guard radius {guard}")]
    CompositionRange { value: Complex64, guard: f64 },

    #[error("coefficient error estimate {estimate:e} is not below 1e-8")]
    UntrustedCoefficients { estimate: f64 },

    #[error("curve passes within {distance:e} of the target point")]
    CurveTooClose { distance: f64 },

    #[error("winding refinement exceeded {nodes} nodes")]
    NonConvergent { nodes: usize },

    #[error("representation does not support {0}")]
    UnsupportedRepresentation(String),

    #[error("companion-matrix root count {companion} differs from winding count {winding}")]
    RootCountMismatch { companion: usize, winding: i64 },

    #[error("degenerate map: {0}")]
    DegenerateMap(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature node hits a logarithmic singularity after nudging")]
    SingularNode,

    #[error("zero at {zero} lies within the guard band of the contour |z| = {radius}")]
    ZeroOnContour { zero: Complex64, radius: f64 },

    #[error("both maps vanish at the origin; both zero sums are -inf")]
    CenterZero,

    #[error("map leaves the closed unit disk at {at}")]
    RangeViolation { at: Complex64 },

    #[error("point {0} has no preimage")]
    EmptyPreimage(Complex64),

    #[error("probe circle leaves the image at {0}")]
    ProbeExitsImage(Complex64),

    #[error("factor {index} is not injective on the disk")]
    DegenerateFactor { index: usize },

    #[error("first coefficient of g vanishes (|b1| = {0:e})")]
    MissingB1(f64),
}
