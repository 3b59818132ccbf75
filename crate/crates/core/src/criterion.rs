//! The main criterion: exclusion of torus closures, weight hypotheses and
//! connectivity of the side graphs.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::side::{self, Color, ConnectivityReport, SideError, SideGraph};
use crate::surgery::augment::{augment_regions, AugmentError, AugmentedLink};
use crate::twist::{self, CollapsedGraph, TwistError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Fail,
    Excluded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Fail => "fail",
            Status::Excluded => "excluded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Reason {
    /// A region (vertex of the normalised collapsed graph) of weight < 2.
    WeightTooSmall(usize),
    NoWeightAboveTwo,
    Disconnected,
    DkDiagram(i64),
    NotAKnot,
    /// Tree with a single vertex.
    SingleVertex,
    EvenStrandCount,
    Interleaving,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::WeightTooSmall(r) => write!(f, "WeightTooSmall({r})"),
            Reason::NoWeightAboveTwo => f.write_str("NoWeightAboveTwo"),
            Reason::Disconnected => f.write_str("Disconnected"),
            Reason::DkDiagram(k) => write!(f, "DkDiagram({k})"),
            Reason::NotAKnot => f.write_str("NotAKnot"),
            Reason::SingleVertex => f.write_str("SingleVertex"),
            Reason::EvenStrandCount => f.write_str("EvenStrandCount"),
            Reason::Interleaving => f.write_str("Interleaving"),
        }
    }
}

impl Serialize for Reason {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
    pub weights_g: Vec<u64>,
    pub weights_r: Vec<u64>,
    pub twist_regions: usize,
}

impl Verdict {
    /// Status follows from the reasons: none means certified.
    pub fn from_reasons(reasons: Vec<Reason>, weights_g: Vec<u64>, weights_r: Vec<u64>, twist_regions: usize) -> Self {
        let status = if reasons.iter().any(|r| matches!(r, Reason::DkDiagram(_))) {
            Status::Excluded
        } else if reasons.is_empty() {
            Status::Certified
        } else {
            Status::Fail
        };
        Verdict { status, reasons, weights_g, weights_r, twist_regions }
    }

    pub fn not_a_knot() -> Self {
        Self::from_reasons(vec![Reason::NotAKnot], vec![], vec![], 0)
    }

    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Side(#[from] SideError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
}

/// Every intermediate object of the main pipeline.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub reduced: LinkDiagram,
    /// Collapsed graph before merging parallel side edges.
    pub raw_collapsed: CollapsedGraph,
    pub collapsed: CollapsedGraph,
    pub green: SideGraph,
    pub red: SideGraph,
    pub connectivity: ConnectivityReport,
    pub disconnected: Vec<Color>,
    pub verdict: Verdict,
}

/// Signed crossing count when the collapsed graph has a single vertex.
pub fn detect_dk(g: &CollapsedGraph) -> Option<i64> {
    (g.vertex_count() == 1).then(|| g.vertices[0].signed_weight())
}

/// Full pipeline on a knot diagram; `None` for links.
pub fn analyze(d: &LinkDiagram) -> Result<Option<Analysis>, CheckError> {
    if d.component_count() != 1 {
        return Ok(None);
    }
    let reduced = twist::reduce_assumption1(d)?;
    let regions = twist::detect_twist_regions(&reduced)?;
    let raw_collapsed = twist::collapse(&reduced, &regions)?;
    let (green, red, collapsed) = side::side_graphs(raw_collapsed.clone())?;
    let connectivity = side::connectivity_report(&green, &red)?;
    let (weights_g, weights_r) = (green.weights(), red.weights());
    let n = collapsed.vertex_count();
    let mut disconnected = Vec::new();
    let mut reasons = Vec::new();
    if let Some(k) = detect_dk(&collapsed) {
        reasons.push(Reason::DkDiagram(k));
    } else {
        for (v, region) in collapsed.vertices.iter().enumerate() {
            if region.count < 2 {
                reasons.push(Reason::WeightTooSmall(v));
            }
        }
        if collapsed.vertices.iter().all(|r| r.count < 3) {
            reasons.push(Reason::NoWeightAboveTwo);
        }
        if !connectivity.connected_g {
            disconnected.push(Color::Green);
        }
        if !connectivity.connected_r {
            disconnected.push(Color::Red);
        }
        if !disconnected.is_empty() {
            reasons.push(Reason::Disconnected);
        }
    }
    let verdict = Verdict::from_reasons(reasons, weights_g, weights_r, n);
    Ok(Some(Analysis { reduced, raw_collapsed, collapsed, green, red, connectivity, disconnected, verdict }))
}

pub fn check_main(d: &LinkDiagram) -> Result<Verdict, CheckError> {
    Ok(analyze(d)?.map_or_else(Verdict::not_a_knot, |a| a.verdict))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Branch {
    /// One region: a (2, k) torus closure.
    Excluded,
    /// More than four faces.
    Main,
    /// Two regions joined by four parallel edges; `m = 0` is the case whose
    /// augmentation is the Borromean link.
    TwoCircleFamily { m: i32 },
    /// Two regions, each carrying a loop.
    ConnectedSum,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    /// Faces of the collapsed graph.
    pub faces: usize,
    pub twist_regions: usize,
    pub branch: Branch,
    pub canonical_axis_regions: usize,
    pub augmentation: AugmentedLink,
}

pub fn diagnose(d: &LinkDiagram) -> Result<Option<Diagnostics>, CheckError> {
    let Some(a) = analyze(d)? else { return Ok(None) };
    let g = &a.collapsed;
    let branch = match g.vertex_count() {
        1 => Branch::Excluded,
        2 if g.loop_count() == 0 => {
            // odd regions leave one crossing each after augmentation
            let odd = g.vertices.iter().filter(|r| r.count % 2 == 1).count() as i32;
            Branch::TwoCircleFamily { m: odd.min(1) }
        }
        2 => Branch::ConnectedSum,
        _ => Branch::Main,
    };
    let augmentation = augment_regions(g.vertices.iter().map(|r| (r.count, r.handedness)))?;
    Ok(Some(Diagnostics {
        faces: g.face_count(),
        twist_regions: g.vertex_count(),
        branch,
        canonical_axis_regions: g.vertices.iter().filter(|r| r.canonical_axis).count(),
        augmentation,
    }))
}
