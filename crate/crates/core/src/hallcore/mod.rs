//! The twisted Hall algebra: coefficients, elements, products and calibration.

pub mod algebra;
pub mod calibrate;
pub mod convention;
pub mod elem;
pub mod qeps;
pub mod store;
pub mod tensor;

pub use algebra::{swap_vertices, HallAlgebra};
pub use calibrate::{calibrate, Anchor, AnchorOutcome, AnchorReport, CalibrationResult, Calibrator, SearchSpace};
pub use convention::{DividedRule, FactorOrder, Grade, TwistConvention, COPRODUCT_TWIST};
pub use elem::HallElem;
pub use qeps::QEps;
pub use store::{compute_section, Section, StructureStore};
pub use tensor::HallTensor;

use crate::kronrep::KronError;

#[derive(Debug, thiserror::Error)]
pub enum HallError {
    #[error("elements over different fields: F_{0} and F_{1}")]
    FieldMismatch(u32, u32),
    #[error("elements of different orientation")]
    OrientationMismatch,
    #[error(transparent)]
    Kron(#[from] KronError),
    #[error("support precondition fails at class {0}")]
    SupportPrecondition(String),
    #[error("no convention satisfies the anchors: {0}")]
    NoConventionFound(String),
    #[error("{0} conventions satisfy the anchors")]
    MultipleConventions(usize),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<crate::exactfield::FieldError> for HallError {
    fn from(e: crate::exactfield::FieldError) -> Self {
        HallError::Kron(KronError::Field(e))
    }
}
