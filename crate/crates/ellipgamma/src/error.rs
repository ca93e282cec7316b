//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // numeric substrate
    #[error("exponent overflow: |Im x| * 2*pi exceeds the floating-point exponent range")]
    Overflow,
    #[error("no root in the upper half-plane: all isolated roots are real at the working precision")]
    NoUpperRoot,
    #[error("root refinement failed to converge: {0}")]
    RootFinding(String),

    // exact algebra
    #[error("division by zero in the number field")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the value matrix of the linear form is singular")]
    SingularForm,
    #[error("matrix does not have full rank")]
    RankDeficient,
    #[error("cone generators are linearly dependent (determinant is zero)")]
    DegenerateCone,
    #[error("ideal is not integral (denominator {0} != 1)")]
    NotIntegral(String),

    // gamma evaluation
    #[error("series converges too slowly: decay rate {rate:.3e} is below the floor {floor:.3e}")]
    ConvergenceTooSlow { rate: f64, floor: f64 },
    #[error("argument outside the center strip: Im z = {imz:.6e}, strip height = {height:.6e}")]
    OutsideCenterStrip { imz: f64, height: f64 },
    #[error("translation budget of {0} steps exceeded")]
    DepthExceeded(usize),
    #[error("|sin(pi j tau)| below 2^(-prec/2) at j = {0}: precision insufficient")]
    SmallDenominator(u64),
    #[error("parameter ratio {0} is real at the working precision")]
    RealRatio(String),
    #[error("omega parameter is zero")]
    ZeroOmega,
    #[error("a tau parameter is real at the working precision and no real-variant path applies")]
    RealParameter,
    #[error("argument hits a zero or pole of the Gamma hierarchy (e^(2 pi i z) = 1 within precision)")]
    PoleOrZero,

    // units
    #[error("term argument violates the center-strip guarantee: {0}")]
    CenterStripViolation(String),
    #[error("log of zero value")]
    ZeroValue,
    #[error("no sign assignment matches the reference value")]
    NoMatch,
    #[error("{0} sign assignments match the reference value")]
    Ambiguous(usize),

    // recognition
    #[error("no integer relation found under the height bound")]
    NoRelation,

    // configuration / cli
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
