//! Representations of the Kronecker quiver over F_q.

pub mod classify;
pub mod enumerate;
pub mod label;
pub mod reflect;
pub mod rep;

pub use classify::{
    aut_order, classify, classify_by_fingerprint, gl_order, group_order, indecomposable_rep, indecomposables_within,
    orbit_size, representative, FingerprintTable,
};
pub use enumerate::{
    count_stable, enumerate_cb_index, enumerate_classes, for_each_stable_pair, regular_parts, stable_subspaces,
    sub_and_quotient, MAX_TOTAL_DIM,
};
pub use label::{CbIndex, IndecompLabel, IsoClass};
pub use reflect::{kernel_condition, reflect_at_1};
pub use rep::{euler_form, ext_dim, hom_dim, KronRep, Orientation};

use crate::exactfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KronError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("orientation mismatch")]
    Orientation,
    #[error("kernel condition ker x1 ∩ ker x2 = 0 fails")]
    KernelCondition,
    #[error("inconsistent classification: {0}")]
    Inconsistent(String),
    #[error("{0} candidate classes share a fingerprint")]
    AmbiguousFingerprint(usize),
    #[error("dimension vector {dims:?} exceeds the enumeration bound d0 + d1 <= {max}")]
    BoundExceeded { dims: (usize, usize), max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
