use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed polynomial `{input}` at byte {pos}: {msg}")]
    Polynomial {
        input: String,
        pos: usize,
        msg: &'static str,
    },
    #[error("line {line}: {msg}")]
    Csv { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the supported bound of {1}")]
    DegreeUnsupported(usize, usize),
    #[error("input must be squarefree")]
    NotSquarefree,
    #[error("irreducibility could not be decided for {0}")]
    Inconclusive(String),
    #[error("{0} is not irreducible, so it does not define a place")]
    NotIrreducible(String),
    #[error("inexact division")]
    InexactDivision,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("the curve is singular")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("unsupported fiber at {place}: v(c4) = {v_c4}, v(disc) = {v_disc}")]
    UnsupportedFiber {
        place: String,
        v_c4: i64,
        v_disc: i64,
    },
    #[error("model is not minimal at {0}")]
    NonMinimal(String),
    #[error("model is not integral at {0}")]
    NonIntegral(String),
    #[error("odd pole order {order} of x at {place}")]
    OddPoleOrder { place: String, order: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("input maps to the zero vector")]
    Degenerate,
    #[error("sides {0} do not form a triangle")]
    NotATriangle(String),
    #[error("inradius of {0} is irrational")]
    IrrationalInradius(String),
    #[error("point does not have positive ratios x/r, y/r, z/r")]
    NonPositiveRatios,
    #[error("point is not on the surface r^2(x+y+z) = xyz")]
    NotOnSurface,
    #[error("parameter s = {0} must be a rational number greater than 1")]
    ParameterOutOfRange(String),
    #[error("index n must be at least 1")]
    IndexOutOfRange,
    #[error("triangles do not share perimeter and area")]
    Mismatched,
    #[error("fiber over s = {0} is singular")]
    SingularFiber(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("characteristic {0} is not supported (need p > 3 prime)")]
    UnsupportedCharacteristic(u64),
    #[error("field order {0} is too large for the counting kernel")]
    FieldTooLarge(u128),
    #[error("neither sign of c4 gives roots of absolute value p")]
    NoValidSign,
    #[error("only the 4-dimensional residual block is supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("need counts for n = 1, 2, 3")]
    MissingCounts,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{check}: expected {expected}, got {actual}")]
    Mismatch {
        check: String,
        expected: String,
        actual: String,
    },
    #[error("{0}")]
    Failed(String),
}

/// Crate-wide error for the high-level entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
