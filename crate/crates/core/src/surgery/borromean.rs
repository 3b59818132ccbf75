//! Surgeries on the Borromean rings: L-space or taut foliation.

use serde::Serialize;

use super::slope::Slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BorromeanVerdict {
    LSpace,
    TautFoliation,
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BorromeanClass {
    pub verdict: BorromeanVerdict,
    pub has_infinity: bool,
    pub has_zero: bool,
}

/// Finite multislopes are L-spaces exactly when all slopes are at least 1
/// or all are at most −1. Filling one component with `∞` leaves a surgery
/// on a two-component unlink: lens spaces and their sums when the other
/// slopes are nonzero, and a manifold with `b1 > 0` otherwise.
pub fn classify_borromean(r1: Slope, r2: Slope, r3: Slope) -> BorromeanClass {
    let r = [r1, r2, r3];
    let has_infinity = r.iter().any(Slope::is_infinite);
    let has_zero = r.iter().any(Slope::is_zero);
    let verdict = if has_infinity {
        if has_zero {
            BorromeanVerdict::OutOfScope
        } else {
            BorromeanVerdict::LSpace
        }
    } else if r.iter().all(|s| s.ge_int(1)) || r.iter().all(|s| s.le_int(-1)) {
        BorromeanVerdict::LSpace
    } else {
        BorromeanVerdict::TautFoliation
    };
    BorromeanClass { verdict, has_infinity, has_zero }
}
