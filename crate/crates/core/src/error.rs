use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants fall into four families (see [`ErrorKind`]): malformed input,
/// a detected mathematical violation, an exhausted search, and plain
/// arithmetic errors surfaced from the ring layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("ring mismatch: {0}")]
    SpecMismatch(String),
    #[error("not a reduction: {0}")]
    NotAReduction(String),
    #[error("ring map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("vector is not in the row span")]
    NoSolution,
    #[error("not a complex: d^{degree} followed by d^{next} is nonzero", next = .degree + 1)]
    NotAComplex { degree: i32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("input complex is not minimal: unit entry in d^{degree} at ({row}, {col})")]
    NotMinimalInput { degree: i32, row: usize, col: usize },
    #[error("input is not homogeneous: {0}")]
    NotGraded(String),
    #[error("hypothesis i: tau profile differs between level {first} and level {level}")]
    TauNotConstant { first: usize, level: usize },
    #[error("hypothesis i: level {level} has tau^{degree} != 0 outside [{lo}, {hi}]")]
    TauOutOfRange { level: usize, degree: i32, lo: i32, hi: i32 },
    #[error("hypothesis ii: level {level}: {detail}")]
    ActionMismatch { level: usize, detail: String },
    #[error("hypothesis ii: level {level}: phi_n(i_n(T_{variable})) is nonzero in R", variable = .variable + 1)]
    AugmentationNotKilled { level: usize, variable: usize },
    #[error("hypothesis iii: level {level}: {detail}")]
    BaseMismatch { level: usize, detail: String },
    #[error("tower has {levels} level(s); need {needed}")]
    InsufficientTower { levels: usize, needed: usize },
    #[error("no compatible chain at precision {precision}: {detail}")]
    NoCompatibleChain { precision: u32, detail: String },
    #[error("support component of height {height} below r = {r}")]
    HeightAmplitudeViolated { height: usize, r: usize },
    #[error("cohomology not concentrated in top degree: {0}")]
    ConcentrationFailed(String),
    #[error("R_inf / i_inf(a) -> R is not an isomorphism: {0}")]
    SurjectionNotIso(String),
    #[error("invalid scenario parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A mathematical property failed (exit 1).
    Violation,
    /// Input could not be used (exit 2).
    InvalidInput,
    /// A bounded search gave up (exit 3).
    SearchFailure,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NotAComplex { .. }
            | TauNotConstant { .. }
            | TauOutOfRange { .. }
            | ActionMismatch { .. }
            | AugmentationNotKilled { .. }
            | BaseMismatch { .. }
            | HeightAmplitudeViolated { .. }
            | ConcentrationFailed(_)
            | SurjectionNotIso(_) => ErrorKind::Violation,
            NoCompatibleChain { .. } => ErrorKind::SearchFailure,
            _ => ErrorKind::InvalidInput,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            NonPrime(_) => "NonPrime",
            InvalidParameter(_) => "InvalidParameter",
            NotAUnit => "NotAUnit",
            SpecMismatch(_) => "SpecMismatch",
            NotAReduction(_) => "NotAReduction",
            IllDefinedMap(_) => "IllDefinedMap",
            NoSolution => "NoSolution",
            NotAComplex { .. } => "NotAComplex",
            ShapeMismatch(_) => "ShapeMismatch",
            UnsupportedRing(_) => "UnsupportedRing",
            NotMinimalInput { .. } => "NotMinimalInput",
            NotGraded(_) => "NotGraded",
            TauNotConstant { .. } => "TauNotConstant",
            TauOutOfRange { .. } => "TauOutOfRange",
            ActionMismatch { .. } => "ActionMismatch",
            AugmentationNotKilled { .. } => "AugmentationNotKilled",
            BaseMismatch { .. } => "BaseMismatch",
            InsufficientTower { .. } => "InsufficientTower",
            NoCompatibleChain { .. } => "NoCompatibleChain",
            HeightAmplitudeViolated { .. } => "HeightAmplitudeViolated",
            ConcentrationFailed(_) => "ConcentrationFailed",
            SurjectionNotIso(_) => "SurjectionNotIso",
            InvalidParams(_) => "InvalidParams",
            Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
