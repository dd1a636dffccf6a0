use std::fmt;

/// A single broken input rule found while validating a case.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Violation {
    #[error("NonPositiveParameter: `{field}` must be > 0 (got {value})")]
    NonPositiveParameter { field: &'static str, value: f64 },
    #[error("NegativeParameter: `{field}` must be >= 0 (got {value})")]
    NegativeParameter { field: &'static str, value: f64 },
    #[error("NonFiniteParameter: `{field}` must be finite (got {value})")]
    NonFiniteParameter { field: &'static str, value: f64 },
    #[error("PsiOutOfRange: psi*L = {psi_l} outside the supported range (1e-8, 700)")]
    PsiOutOfRange { psi_l: f64 },
    #[error("GridMalformed: {0}")]
    GridMalformed(String),
}

/// Every violation found in one validation pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl ValidationError {
    pub fn single(v: Violation) -> Self {
        Self {
            violations: vec![v],
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid case ({} violation", self.violations.len())?;
        if self.violations.len() != 1 {
            write!(f, "s")?;
        }
        write!(f, ")")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("found {count} separate tension zones; expected at most one")]
    MultipleZones { count: usize },
    #[error("singular tridiagonal system (zero pivot at row {row})")]
    SingularSystem { row: usize },
    #[error("figure {0} has no dataset (valid ids are 2..=7)")]
    UnknownFigure(u32),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
