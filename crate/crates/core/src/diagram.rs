//! Planar link diagrams given as PD codes.
//!
//! Each crossing lists four arc labels counterclockwise. `under_axis` says
//! which opposite pair of slots carries the under-strand: 0 for slots 0/2
//! (the usual `X[a,b,c,d]` reading, `a`-`c` under), 1 for slots 1/3.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::map::{self, Corner, FaceTable, QuadMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("arc {label} is used {uses} time(s); every arc label in 1..={arc_count} must appear exactly twice")]
    ArcCountMismatch { label: u32, uses: usize, arc_count: u32 },
    #[error("rotation system is not a connected sphere embedding ({faces} faces for {crossings} crossings, {pieces} piece(s))")]
    NonSphericalEmbedding { crossings: usize, faces: usize, pieces: usize },
    #[error("diagram has no crossings")]
    EmptyDiagram,
    #[error("under_axis must be 0 or 1, got {0}")]
    BadUnderAxis(u8),
    #[error("invalid JSON diagram: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub under_axis: u8,
}

impl Crossing {
    #[inline]
    pub fn is_under(&self, slot: usize) -> bool {
        slot % 2 == self.under_axis as usize
    }

    /// +1 when sweeping counterclockwise from slot `gap` to slot `gap + 1`
    /// rotates the over-strand onto the under-strand, −1 otherwise.
    /// Opposite gaps carry the same sign.
    #[inline]
    pub fn gap_sign(&self, gap: usize) -> i32 {
        if self.is_under(gap & 3) {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub corners: Vec<Corner>,
}

impl Face {
    pub fn is_monogon(&self) -> bool {
        self.corners.len() == 1
    }

    /// Two corners at two different crossings.
    pub fn is_bigon(&self) -> bool {
        self.corners.len() == 2 && self.corners[0].vertex != self.corners[1].vertex
    }
}

/// A validated, connected diagram on the sphere.
#[derive(Debug, Clone)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
    map: QuadMap,
    faces: FaceTable,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
    }
}

impl Eq for LinkDiagram {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    pub under_axis: Vec<u8>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Err(DiagramError::EmptyDiagram);
        }
        for c in &crossings {
            if c.under_axis > 1 {
                return Err(DiagramError::BadUnderAxis(c.under_axis));
            }
        }
        let arc_count = 2 * crossings.len() as u32;
        let mut uses: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, c) in crossings.iter().enumerate() {
            for (j, &label) in c.slots.iter().enumerate() {
                uses.entry(label).or_default().push(map::stub(i, j));
            }
        }
        let mut labels: Vec<_> = uses.keys().copied().collect();
        labels.sort_unstable();
        for &label in &labels {
            let n = uses[&label].len();
            if label == 0 || label > arc_count || n != 2 {
                return Err(DiagramError::ArcCountMismatch { label, uses: n, arc_count });
            }
        }
        let mut pair = vec![0; 4 * crossings.len()];
        for ends in uses.values() {
            pair[ends[0]] = ends[1];
            pair[ends[1]] = ends[0];
        }
        let map = QuadMap::from_pairing(pair);
        Self::from_parts(crossings, arc_count, map)
    }

    fn from_parts(crossings: Vec<Crossing>, arc_count: u32, map: QuadMap) -> Result<Self, DiagramError> {
        let faces = map.faces();
        let pieces = map.connected_pieces();
        if pieces != 1 || faces.len() != crossings.len() + 2 {
            return Err(DiagramError::NonSphericalEmbedding {
                crossings: crossings.len(),
                faces: faces.len(),
                pieces,
            });
        }
        Ok(Self { crossings, arc_count, map, faces })
    }

    /// Builds a diagram from a stub pairing, labelling arcs 1, 2, … along
    /// each component in turn.
    pub fn from_map(map: QuadMap, under_axis: &[u8]) -> Result<Self, DiagramError> {
        let n = map.vertex_count();
        if n == 0 {
            return Err(DiagramError::EmptyDiagram);
        }
        let mut slots = vec![[0u32; 4]; n];
        let mut label = 0;
        for curve in map.straight_curves() {
            for leave in curve {
                label += 1;
                let arrive = map.mate(leave);
                slots[map::vertex_of(leave)][map::slot_of(leave)] = label;
                slots[map::vertex_of(arrive)][map::slot_of(arrive)] = label;
            }
        }
        let crossings = slots
            .into_iter()
            .zip(under_axis)
            .map(|(slots, &under_axis)| Crossing { slots, under_axis })
            .collect();
        Self::from_parts(crossings, label, map)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn map(&self) -> &QuadMap {
        &self.map
    }

    pub fn face_table(&self) -> &FaceTable {
        &self.faces
    }

    pub fn under_axes(&self) -> Vec<u8> {
        self.crossings.iter().map(|c| c.under_axis).collect()
    }

    pub fn faces(&self) -> Vec<Face> {
        self.faces
            .faces
            .iter()
            .enumerate()
            .map(|(id, corners)| Face { id, corners: corners.clone() })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.map.straight_curves().len()
    }

    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { slots: c.slots, under_axis: 1 - c.under_axis })
            .collect();
        LinkDiagram {
            crossings,
            arc_count: self.arc_count,
            map: self.map.clone(),
            faces: self.faces.clone(),
        }
    }

    #[inline]
    pub fn gap_sign(&self, crossing: usize, gap: usize) -> i32 {
        self.crossings[crossing].gap_sign(gap)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self.crossings.iter().map(|c| c.slots).collect(),
            under_axis: self.under_axes(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self, DiagramError> {
        if json.crossings.len() != json.under_axis.len() {
            return Err(DiagramError::Json(format!(
                "{} crossings but {} under_axis entries",
                json.crossings.len(),
                json.under_axis.len()
            )));
        }
        let crossings = json
            .crossings
            .iter()
            .zip(&json.under_axis)
            .map(|(&slots, &under_axis)| Crossing { slots, under_axis })
            .collect();
        Self::new(crossings)
    }

    pub fn from_json_str(text: &str) -> Result<Self, DiagramError> {
        let json: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// PD text. Crossings whose under-strand sits on slots 1/3 are rotated by
/// one slot so that the first and third labels are always the under-strand.
impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.crossings.iter().enumerate() {
            let s = c.slots;
            let s = if c.under_axis == 0 { s } else { [s[1], s[2], s[3], s[0]] };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X[{},{},{},{}]", s[0], s[1], s[2], s[3])?;
        }
        Ok(())
    }
}

/// Parses `X[a,b,c,d]` tokens separated by whitespace or commas. An
/// optional `PD[ … ]` wrapper is accepted.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix("PD[") {
        body = inner.strip_suffix(']').ok_or_else(|| DiagramError::MalformedToken(text.to_string()))?;
    }
    let mut crossings = Vec::new();
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let Some(after) = rest.strip_prefix("X[") else {
            let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(DiagramError::MalformedToken(tok));
        };
        let close = after
            .find(']')
            .ok_or_else(|| DiagramError::MalformedToken(format!("X[{after}")))?;
        let inner = &after[..close];
        let labels: Vec<u32> = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| DiagramError::MalformedToken(format!("X[{inner}]")))?;
        let slots: [u32; 4] = labels
            .try_into()
            .map_err(|_| DiagramError::MalformedToken(format!("X[{inner}]")))?;
        if slots.contains(&0) {
            return Err(DiagramError::MalformedToken(format!("X[{inner}]")));
        }
        crossings.push(Crossing { slots, under_axis: 0 });
        rest = &after[close + 1..];
    }
    LinkDiagram::new(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        let faces = d.faces();
        assert_eq!(faces.len(), 5);
        assert_eq!(faces.iter().filter(|f| f.is_bigon()).count(), 3);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn kink_has_monogon() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.arc_count(), 2);
        let faces = d.faces();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().any(Face::is_monogon));
    }

    #[test]
    fn figure_eight_faces() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.faces().len(), 6);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn missing_crossing_is_arc_mismatch() {
        let err = parse_pd("X[1,4,2,5] X[3,6,4,1]").unwrap_err();
        assert!(matches!(err, DiagramError::ArcCountMismatch { uses: 1, .. }), "{err:?}");
    }

    #[test]
    fn disjoint_kinks_rejected() {
        let err = parse_pd("X[1,1,2,2] X[3,3,4,4]").unwrap_err();
        assert!(matches!(err, DiagramError::NonSphericalEmbedding { .. }));
    }

    #[test]
    fn hopf_link_has_two_components() {
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::MalformedToken(_))));
        assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(DiagramError::MalformedToken(_))));
        assert!(matches!(parse_pd("X[1,a,2,2]"), Err(DiagramError::MalformedToken(_))));
        assert!(matches!(parse_pd(""), Err(DiagramError::EmptyDiagram)));
    }

    #[test]
    fn pd_wrapper_and_commas() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn mirror_flips_every_crossing() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert!(m.crossings().iter().all(|c| c.under_axis == 1));
        assert_eq!(m.mirror(), d);
        assert_eq!(m.faces().len(), 5);
        // PD text of the mirror is rotated by one slot at every crossing
        let again = parse_pd(&m.to_string()).unwrap();
        assert_eq!(again.faces().len(), 5);
        assert_eq!(again.gap_sign(0, 0), m.gap_sign(0, 1));
    }

    #[test]
    fn json_mirror_round_trip() {
        let d = parse_pd(FIGURE_EIGHT).unwrap().mirror();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        assert!(text.starts_with("{\"crossings\":[[4,2,5,1]"));
        let back = LinkDiagram::from_json_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn gap_signs_alternate_around_crossing() {
        let c = Crossing { slots: [1, 2, 3, 4], under_axis: 0 };
        assert_eq!([c.gap_sign(0), c.gap_sign(1), c.gap_sign(2), c.gap_sign(3)], [-1, 1, -1, 1]);
    }
}
