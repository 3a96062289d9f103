use chevtwist::finite::FiniteError;
use chevtwist::twconj::TwconjError;
use chevtwist::{AutError, FieldError, GroupError, LieError, MatrixError, RootError, TwistError};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Twconj(#[from] TwconjError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Serialize)]
pub struct ErrorJson {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn finite(&self) -> Option<&FiniteError> {
        match self {
            CliError::Finite(e) | CliError::Twist(TwistError::Finite(e)) | CliError::Twconj(TwconjError::Finite(e)) => Some(e),
            _ => None,
        }
    }

    fn is_budget(&self) -> bool {
        matches!(self.finite(), Some(FiniteError::BudgetExceeded(_)))
    }

    /// Malformed input rather than a failed computation.
    fn is_usage(&self) -> bool {
        matches!(
            self,
            CliError::Usage(_)
                | CliError::Root(RootError::UnsupportedType { .. } | RootError::InvalidRoot(_) | RootError::ForeignRoot(_))
                | CliError::Field(FieldError::Parse(..) | FieldError::InvalidDescriptor(..))
                | CliError::Aut(AutError::Parse(..))
                | CliError::Group(GroupError::Word(_))
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_budget() {
            EXIT_BUDGET
        } else if self.is_usage() {
            EXIT_USAGE
        } else {
            EXIT_COMPUTATION
        }
    }

    pub fn code(&self) -> &'static str {
        if self.is_budget() {
            return "budget_exceeded";
        }
        match self {
            CliError::Usage(_) => "usage",
            CliError::Root(_) => "root_system",
            CliError::Field(_) => "field",
            CliError::Lie(_) => "lie_algebra",
            CliError::Matrix(_) => "matrix",
            CliError::Group(_) => "group",
            CliError::Aut(_) => "automorphism",
            CliError::Twist(TwistError::NotFinite(_)) => "twist.not_finite",
            CliError::Twist(TwistError::NoSolution(_)) => "twist.no_solution",
            CliError::Twist(TwistError::Invalid(_)) => "twist.invalid",
            CliError::Twist(_) => "twist",
            CliError::Twconj(e) => match e {
                TwconjError::FiniteFieldRejected(_) => "twconj.finite_field_rejected",
                TwconjError::InfiniteOrderFieldPart(_) => "twconj.infinite_order_field_part",
                TwconjError::CertificateFailure(..) => "twconj.certificate_failure",
                TwconjError::ProfileOverlap(..) => "twconj.profile_overlap",
                TwconjError::ConstancyViolation(_) => "twconj.constant_trace",
                TwconjError::InvalidExponent => "twconj.invalid_exponent",
                TwconjError::LemmaViolation(_) => "twconj.lemma_violation",
                _ => "twconj",
            },
            CliError::Finite(_) => "finite_group",
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> ErrorJson {
        ErrorJson { code: self.code(), message: self.to_string() }
    }
}
