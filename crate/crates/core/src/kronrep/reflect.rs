//! The reflection at vertex 1.

use crate::exactfield::MatrixFq;

use super::rep::{KronRep, Orientation};
use super::KronError;

/// `ker x1 ∩ ker x2 = 0` for a Minus rep (maps `V1 -> V0`).
pub fn kernel_condition(x: &KronRep) -> bool {
    x.orientation() == Orientation::Minus && MatrixFq::vstack(x.x1(), x.x2()).rank() == x.dims().1
}

/// Replaces `V1` by `V1' = coker(V1 -> V0 + V0)`, giving a Plus rep of dims
/// `(d0, 2 d0 - d1)` whose two maps jointly span `V1'`.
///
/// With `M = [x1; x2]` and `Q` a basis of the left kernel of `M`, the new maps
/// are the two column blocks of `Q`.
pub fn reflect_at_1(x: &KronRep) -> Result<KronRep, KronError> {
    if x.orientation() != Orientation::Minus {
        return Err(KronError::Orientation);
    }
    if !kernel_condition(x) {
        return Err(KronError::KernelCondition);
    }
    let (d0, d1) = x.dims();
    let q = x.q();
    let m = MatrixFq::vstack(x.x1(), x.x2());
    let left = m.transpose().kernel();
    let rows = 2 * d0 - d1;
    debug_assert_eq!(left.len(), rows);
    let data: Vec<u32> = left.into_iter().flatten().collect();
    let qm = MatrixFq::from_flat(q, rows, 2 * d0, data);
    KronRep::plus(q, qm.columns(0, d0), qm.columns(d0, 2 * d0))
}
