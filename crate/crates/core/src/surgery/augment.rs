//! Crossing circles and their surgery coefficients.
//!
//! A region with `2k` or `2k + 1` left-handed crossings gets a circle with
//! coefficient `1/k`, `k > 0`; right-handed regions give `k < 0`. Lone
//! crossings have `k = 0` and are kept as crossings without a circle.

use serde::Serialize;
use thiserror::Error;

use super::slope::Slope;
use crate::diagram::LinkDiagram;
use crate::twist::{detect_twist_regions, TwistError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentError {
    #[error("region {0} has no crossings")]
    ZeroK(usize),
    #[error(transparent)]
    Twist(#[from] TwistError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingCircle {
    pub region: usize,
    pub count: usize,
    pub handedness: i32,
    pub k: i64,
    pub parity: Parity,
    pub coefficient: Slope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedLink {
    pub circles: Vec<CrossingCircle>,
    /// Regions made of a single crossing; no circle is added.
    pub kept_crossings: Vec<usize>,
    /// Surgery description of the knot exterior: the knot component is
    /// drilled (`•`) and each circle is filled with its coefficient.
    pub surgery: String,
}

pub fn circle_k(count: usize, handedness: i32) -> i64 {
    handedness.signum() as i64 * (count / 2) as i64
}

/// Augments regions given as `(count, handedness)`.
pub fn augment_regions(regions: impl IntoIterator<Item = (usize, i32)>) -> Result<AugmentedLink, AugmentError> {
    let mut circles = Vec::new();
    let mut kept_crossings = Vec::new();
    for (i, (count, handedness)) in regions.into_iter().enumerate() {
        match count {
            0 => return Err(AugmentError::ZeroK(i)),
            1 => kept_crossings.push(i),
            _ => {
                let k = circle_k(count, handedness);
                circles.push(CrossingCircle {
                    region: i,
                    count,
                    handedness,
                    k,
                    parity: if count % 2 == 0 { Parity::Even } else { Parity::Odd },
                    coefficient: Slope::reciprocal_of(k),
                });
            }
        }
    }
    let coeffs: Vec<String> = circles.iter().map(|c| c.coefficient.to_string()).collect();
    let surgery = if coeffs.is_empty() { "S3_•(L)".to_string() } else { format!("S3_(•,{})(L)", coeffs.join(",")) };
    Ok(AugmentedLink { circles, kept_crossings, surgery })
}

pub fn augment(d: &LinkDiagram) -> Result<AugmentedLink, AugmentError> {
    let regions = detect_twist_regions(d)?;
    augment_regions(regions.iter().map(|r| (r.count, r.handedness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn five_left_handed() {
        let a = augment_regions([(5, 1)]).unwrap();
        let c = &a.circles[0];
        assert_eq!((c.k, c.parity, c.coefficient.to_string()), (2, Parity::Odd, "1/2".into()));
    }

    #[test]
    fn four_right_handed() {
        let a = augment_regions([(4, -1)]).unwrap();
        let c = &a.circles[0];
        assert_eq!((c.k, c.parity, c.coefficient.to_string()), (-2, Parity::Even, "-1/2".into()));
    }

    #[test]
    fn trefoil_has_one_unit_circle() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let a = augment(&d).unwrap();
        assert_eq!(a.circles.len(), 1);
        assert_eq!((a.circles[0].k, a.circles[0].coefficient), (1, Slope::integer(1)));
        assert_eq!(a.surgery, "S3_(•,1)(L)");
    }

    #[test]
    fn lone_crossings_are_kept() {
        let a = augment_regions([(1, 1), (3, -1)]).unwrap();
        assert_eq!(a.kept_crossings, vec![0]);
        assert_eq!(a.circles[0].k, -1);
        assert_eq!(augment_regions([(0, 1)]), Err(AugmentError::ZeroK(0)));
    }
}
