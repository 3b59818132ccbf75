//! Smoothing configurations at crossing-circle discs and a search for an
//! assignment realising every coefficient `1/k`.

use serde::Serialize;
use thiserror::Error;

use super::augment::{AugmentedLink, Parity};
use super::slope::{Slope, SlopeInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    A,
    B,
    C,
    D,
    OddPos,
    OddNeg,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::A, Kind::B, Kind::C, Kind::D, Kind::OddPos, Kind::OddNeg];

    pub fn is_odd(self) -> bool {
        matches!(self, Kind::OddPos | Kind::OddNeg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SmoothingConfig {
    pub kind: Kind,
    /// Reversed coorientation of the regions next to the disc.
    pub flip: bool,
}

/// Slopes realised by a configuration. Reversing the coorientation negates
/// the interval for kinds a-d; the odd-twist intervals do not depend on it.
pub fn realized_interval(c: SmoothingConfig) -> SlopeInterval {
    let base = match c.kind {
        Kind::A => SlopeInterval::int(Some(-1), Some(1)),
        Kind::B => SlopeInterval::int(None, None),
        Kind::C => SlopeInterval::int(Some(-1), None),
        Kind::D => SlopeInterval::int(None, Some(1)),
        Kind::OddPos => SlopeInterval::int(None, Some(1)),
        Kind::OddNeg => SlopeInterval::int(Some(-1), None),
    };
    if c.flip && !c.kind.is_odd() {
        base.neg()
    } else {
        base
    }
}

/// The odd-twist kind for a region: right-handed twists sit next to a
/// positive crossing.
pub fn odd_kind(handedness: i32) -> Kind {
    if handedness > 0 {
        Kind::OddNeg
    } else {
        Kind::OddPos
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigAssignment {
    /// One configuration per circle, in the order of `AugmentedLink::circles`.
    pub configs: Vec<SmoothingConfig>,
    /// Circle with count at least three.
    pub first: usize,
    /// Circle hosting the first cusp; equals `first` only for one circle.
    pub cusp: usize,
    pub flip: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub circle: usize,
    pub slope: Slope,
    pub config: SmoothingConfig,
    pub interval: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("no region has three or more crossings")]
    Hypothesis,
    #[error("no assignment realises every slope: {0:?}")]
    Unsatisfiable(Vec<Violation>),
}

fn allowed(role: Role, parity: Parity, handedness: i32) -> Vec<Kind> {
    if parity == Parity::Odd {
        return vec![odd_kind(handedness)];
    }
    match role {
        Role::First => vec![Kind::A],
        Role::Cusp if handedness < 0 => vec![Kind::D, Kind::C],
        Role::Cusp => vec![Kind::C, Kind::D],
        Role::Other => vec![Kind::B],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    First,
    Cusp,
    Other,
}

fn role_of(i: usize, first: usize, cusp: usize) -> Role {
    if i == cusp {
        Role::Cusp
    } else if i == first {
        Role::First
    } else {
        Role::Other
    }
}

/// Searches the structured assignments: one circle with at least three
/// crossings in `a` (or its odd kind), one other circle in `c`/`d` (or its
/// odd kind), the rest in `b` (or odd), and a single global flip bit.
pub fn plan_configurations(a: &AugmentedLink) -> Result<ConfigAssignment, PlanError> {
    let circles = &a.circles;
    let firsts: Vec<usize> = (0..circles.len()).filter(|&i| circles[i].count >= 3).collect();
    if firsts.is_empty() {
        return Err(PlanError::Hypothesis);
    }
    let mut last_violations = Vec::new();
    for &first in &firsts {
        let cusps: Vec<usize> = if circles.len() == 1 {
            vec![first]
        } else {
            (0..circles.len()).filter(|&i| i != first).collect()
        };
        for &cusp in &cusps {
            for flip in [false, true] {
                let choices: Vec<Vec<Kind>> = circles
                    .iter()
                    .enumerate()
                    .map(|(i, c)| allowed(role_of(i, first, cusp), c.parity, c.handedness))
                    .collect();
                let mut configs = Vec::with_capacity(circles.len());
                let mut violations = Vec::new();
                for (i, c) in circles.iter().enumerate() {
                    let hit = choices[i]
                        .iter()
                        .map(|&kind| SmoothingConfig { kind, flip })
                        .find(|&cfg| realized_interval(cfg).contains(c.coefficient));
                    match hit {
                        Some(cfg) => configs.push(cfg),
                        None => {
                            let cfg = SmoothingConfig { kind: choices[i][0], flip };
                            violations.push(Violation {
                                circle: i,
                                slope: c.coefficient,
                                config: cfg,
                                interval: realized_interval(cfg).to_string(),
                            });
                        }
                    }
                }
                if violations.is_empty() {
                    return Ok(ConfigAssignment { configs, first, cusp, flip });
                }
                last_violations = violations;
            }
        }
    }
    Err(PlanError::Unsatisfiable(last_violations))
}

/// Independent check of an assignment against the interval table and the
/// structural constraints.
pub fn verify_plan(a: &AugmentedLink, plan: &ConfigAssignment) -> Result<(), Vec<Violation>> {
    let mut bad = Vec::new();
    let n = a.circles.len();
    let structural = plan.configs.len() == n
        && plan.first < n
        && plan.cusp < n
        && (plan.first != plan.cusp || n == 1)
        && a.circles[plan.first].count >= 3
        && plan.configs.iter().all(|c| c.flip == plan.flip);
    for (i, (c, cfg)) in a.circles.iter().zip(&plan.configs).enumerate() {
        let kind_ok = match (c.parity, cfg.kind) {
            (Parity::Odd, k) => k == odd_kind(c.handedness),
            (Parity::Even, k) if i == plan.cusp => matches!(k, Kind::C | Kind::D),
            (Parity::Even, k) if i == plan.first => k == Kind::A,
            (Parity::Even, k) => k == Kind::B,
        };
        let interval = realized_interval(*cfg);
        if !structural || !kind_ok || !interval.contains(c.coefficient) {
            bad.push(Violation { circle: i, slope: c.coefficient, config: *cfg, interval: interval.to_string() });
        }
    }
    if !structural && bad.is_empty() {
        bad.push(Violation {
            circle: plan.first,
            slope: Slope::INFINITY,
            config: SmoothingConfig { kind: Kind::A, flip: plan.flip },
            interval: "structure".into(),
        });
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::augment::augment_regions;

    fn cfg(kind: Kind, flip: bool) -> SmoothingConfig {
        SmoothingConfig { kind, flip }
    }

    #[test]
    fn interval_table() {
        assert_eq!(realized_interval(cfg(Kind::A, false)).to_string(), "(-1, 1)");
        assert_eq!(realized_interval(cfg(Kind::B, false)).to_string(), "(-inf, +inf)");
        assert_eq!(realized_interval(cfg(Kind::C, true)).to_string(), "(-inf, 1)");
        assert_eq!(realized_interval(cfg(Kind::OddPos, false)).to_string(), "(-inf, 1)");
        assert_eq!(realized_interval(cfg(Kind::OddNeg, true)).to_string(), "(-1, +inf)");
    }

    #[test]
    fn counts_four_four_six() {
        let a = augment_regions([(4, 1), (4, 1), (6, 1)]).unwrap();
        let plan = plan_configurations(&a).unwrap();
        verify_plan(&a, &plan).unwrap();
        assert_eq!(plan.configs[plan.first].kind, Kind::A);
    }

    #[test]
    fn gate_rejects_small_counts() {
        let a = augment_regions([(2, 1)]).unwrap();
        assert_eq!(plan_configurations(&a), Err(PlanError::Hypothesis));
    }

    #[test]
    fn odd_and_even_mix() {
        let a = augment_regions([(3, 1), (4, -1)]).unwrap();
        let plan = plan_configurations(&a).unwrap();
        verify_plan(&a, &plan).unwrap();
        assert_eq!(plan.configs[0].kind, Kind::OddNeg);
        assert_eq!(plan.configs[1].kind, Kind::D);
    }

    #[test]
    fn tampered_plan_fails_verification() {
        let a = augment_regions([(4, 1), (4, 1), (6, 1)]).unwrap();
        let mut plan = plan_configurations(&a).unwrap();
        plan.configs[plan.first].kind = Kind::B;
        assert!(verify_plan(&a, &plan).is_err());
    }
}
