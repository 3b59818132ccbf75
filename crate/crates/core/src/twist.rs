//! Twist regions and the collapsed four-valent graph.
//!
//! A twist region is a maximal chain of crossings joined by bigons, or a
//! lone crossing. Collapsing each region to a point turns the diagram into
//! a four-valent plane multigraph whose vertices carry the crossing count
//! and handedness of their region.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::map::{self, Corner, FaceTable, QuadMap, UnionFind};

/// Converts the sign of a side gap into handedness. Fixed so that the
/// table trefoil `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]` is left-handed (+1).
pub const SIDE_SIGN_TO_HANDEDNESS: i32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("bigon chain through crossings {crossings:?} mixes handedness; reduce first")]
    NonAlternatingChain { crossings: Vec<usize> },
    #[error("reduction removed every crossing (unknot)")]
    UnknotCollapse,
    #[error("reduction produced an invalid diagram: {0}")]
    Reduction(DiagramError),
    #[error("collapsed graph has {faces} faces for {vertices} vertices")]
    EulerViolation { vertices: usize, faces: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistRegion {
    /// Crossing ids in chain order.
    pub crossings: Vec<usize>,
    pub count: usize,
    /// +1 left-handed, −1 right-handed.
    pub handedness: i32,
    /// Boundary stubs of the diagram in counterclockwise order around
    /// the region. Positions 0/1 sit at the first crossing, 2/3 at the last.
    pub stubs: [usize; 4],
    /// Pairs of positions in `stubs` joined by the two through-strands.
    pub through_pairs: [[usize; 2]; 2],
    /// The two end corners (positions 0-1 and 2-3).
    pub end_gaps: [Corner; 2],
    /// The two side corners (positions 1-2 and 3-0); the red arc joins
    /// the faces containing them.
    pub side_gaps: [Corner; 2],
    /// The bigon chain closes up on itself.
    pub is_cycle: bool,
    /// Lone crossing: the arc direction was chosen canonically.
    pub canonical_axis: bool,
}

impl TwistRegion {
    pub fn signed_count(&self) -> i64 {
        self.handedness as i64 * self.count as i64
    }
}

/// A bigon face's two corners, if the face is one.
fn bigon_corners(face: &[Corner]) -> Option<(Corner, Corner)> {
    (face.len() == 2 && face[0].vertex != face[1].vertex).then(|| (face[0], face[1]))
}

fn has_monogon(faces: &FaceTable, v: usize) -> bool {
    (0..4).any(|g| faces.faces[faces.face_at(v, g)].len() == 1)
}

/// Bigons accepted into twist chains. At each crossing all accepted bigons
/// sit on gaps of one parity; conflicts are settled by face order.
/// Returns, per crossing, the accepted bigon face on each gap.
fn accepted_bigons(d: &LinkDiagram) -> Vec<[Option<usize>; 4]> {
    let faces = d.face_table();
    let n = d.crossing_count();
    let mut axis: Vec<Option<usize>> = vec![None; n];
    let mut on_gap = vec![[None; 4]; n];
    for (fid, face) in faces.faces.iter().enumerate() {
        let Some((a, b)) = bigon_corners(face) else { continue };
        if has_monogon(faces, a.vertex) || has_monogon(faces, b.vertex) {
            continue;
        }
        let ok = |c: Corner| axis[c.vertex].is_none_or(|p| p == c.gap % 2);
        if !ok(a) || !ok(b) {
            continue;
        }
        for c in [a, b] {
            axis[c.vertex] = Some(c.gap % 2);
            on_gap[c.vertex][c.gap] = Some(fid);
        }
    }
    on_gap
}

/// The crossing across the bigon on `gap` of `v`, with that bigon's gap there.
fn across(faces: &FaceTable, v: usize, gap: usize) -> Corner {
    let f = &faces.faces[faces.face_at(v, gap)];
    if f[0].vertex == v {
        f[1]
    } else {
        f[0]
    }
}

pub fn detect_twist_regions(d: &LinkDiagram) -> Result<Vec<TwistRegion>, TwistError> {
    let regions = regions_unchecked(d);
    let acc = accepted_bigons(d);
    for r in &regions {
        let sign = |c: usize| {
            let chain_gap = (0..4).find(|&g| acc[c][g].is_some()).unwrap_or(0);
            d.gap_sign(c, chain_gap + 1)
        };
        let first = sign(r.crossings[0]);
        if r.crossings.iter().any(|&c| sign(c) != first) {
            return Err(TwistError::NonAlternatingChain { crossings: r.crossings.clone() });
        }
    }
    Ok(regions)
}

fn regions_unchecked(d: &LinkDiagram) -> Vec<TwistRegion> {
    let faces = d.face_table();
    let acc = accepted_bigons(d);
    let n = d.crossing_count();
    let mut uf = UnionFind::new(n);
    for (v, gaps) in acc.iter().enumerate() {
        for (g, bigon) in gaps.iter().enumerate() {
            if bigon.is_some() {
                uf.union(v, across(faces, v, g).vertex);
            }
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        members[uf.find(v)].push(v);
    }
    let mut regions: Vec<TwistRegion> = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| build_region(d, &acc, &m))
        .collect();
    regions.sort_by_key(|r| r.crossings.iter().copied().min());
    regions
}

fn build_region(d: &LinkDiagram, acc: &[[Option<usize>; 4]], members: &[usize]) -> TwistRegion {
    let faces = d.face_table();
    let degree = |v: usize| acc[v].iter().filter(|x| x.is_some()).count();
    if members.len() == 1 {
        let c = members[0];
        let stubs = [0, 1, 2, 3].map(|j| map::stub(c, j));
        let mut r = TwistRegion {
            crossings: vec![c],
            count: 1,
            handedness: 0,
            stubs,
            through_pairs: [[0, 2], [1, 3]],
            end_gaps: [Corner { vertex: c, gap: 0 }, Corner { vertex: c, gap: 2 }],
            side_gaps: [Corner { vertex: c, gap: 1 }, Corner { vertex: c, gap: 3 }],
            is_cycle: false,
            canonical_axis: true,
        };
        r.handedness = SIDE_SIGN_TO_HANDEDNESS * d.gap_sign(c, 1);
        return r;
    }
    let is_cycle = members.iter().all(|&v| degree(v) == 2);
    let c1 = if is_cycle {
        members[0]
    } else {
        *members.iter().find(|&&v| degree(v) == 1).expect("path has an end")
    };
    // g1: gap of c1's bigon towards c2
    let g1 = (0..4).find(|&g| acc[c1][g].is_some()).unwrap();
    let mut chain = vec![c1];
    let mut cur = across(faces, c1, g1);
    // gap of the last crossing's bigon towards its predecessor
    let gn = loop {
        chain.push(cur.vertex);
        let next_gap = (cur.gap + 2) % 4;
        if chain.len() == members.len() || acc[cur.vertex][next_gap].is_none() {
            break cur.gap;
        }
        cur = across(faces, cur.vertex, next_gap);
    };
    debug_assert_eq!(chain.len(), members.len());
    let cn = *chain.last().unwrap();
    let stubs = [
        map::stub(c1, g1 + 2),
        map::stub(c1, g1 + 3),
        map::stub(cn, gn + 2),
        map::stub(cn, gn + 3),
    ];
    let through_pairs = through_pairs(d, &chain, &stubs);
    let side_sign = d.gap_sign(c1, (g1 + 1) % 4);
    TwistRegion {
        count: chain.len(),
        crossings: chain,
        handedness: SIDE_SIGN_TO_HANDEDNESS * side_sign,
        stubs,
        through_pairs,
        end_gaps: [Corner { vertex: c1, gap: (g1 + 2) % 4 }, Corner { vertex: cn, gap: (gn + 2) % 4 }],
        side_gaps: [Corner { vertex: c1, gap: (g1 + 3) % 4 }, Corner { vertex: cn, gap: (gn + 3) % 4 }],
        is_cycle,
        canonical_axis: false,
    }
}

/// Follows each strand from a boundary stub straight through the chain.
fn through_pairs(d: &LinkDiagram, chain: &[usize], stubs: &[usize; 4]) -> [[usize; 2]; 2] {
    let map = d.map();
    let inside = |v: usize| chain.contains(&v);
    let exit_of = |start: usize| -> usize {
        let mut s = start;
        loop {
            let out = map::stub(map::vertex_of(s), map::slot_of(s) + 2);
            if stubs.contains(&out) {
                return out;
            }
            let next = map.mate(out);
            debug_assert!(inside(map::vertex_of(next)));
            s = next;
        }
    };
    let pos = |s: usize| stubs.iter().position(|&x| x == s).unwrap();
    let a = pos(exit_of(stubs[0]));
    let other: Vec<usize> = (1..4).filter(|&j| j != a).collect();
    [[0, a], [other[0], other[1]]]
}

/// Sign mismatch across a bigon means its two crossings cancel by a
/// Reidemeister II move.
fn cancelling_bigon(d: &LinkDiagram) -> Option<(Corner, Corner)> {
    d.face_table().faces.iter().find_map(|f| {
        let (a, b) = bigon_corners(f)?;
        (d.gap_sign(a.vertex, a.gap) != d.gap_sign(b.vertex, b.gap)).then_some((a, b))
    })
}

/// Removes cancelling crossing pairs until every bigon is alternating.
pub fn reduce_assumption1(d: &LinkDiagram) -> Result<LinkDiagram, TwistError> {
    let mut cur = d.clone();
    while let Some((a, b)) = cancelling_bigon(&cur) {
        let mut removed = vec![false; cur.crossing_count()];
        removed[a.vertex] = true;
        removed[b.vertex] = true;
        if removed.iter().all(|&r| r) {
            return Err(TwistError::UnknotCollapse);
        }
        let straight = |s: usize| map::stub(map::vertex_of(s), map::slot_of(s) + 2);
        let (m, index, loops) = cur.map().splice(&removed, &straight);
        if loops > 0 {
            return Err(TwistError::Reduction(DiagramError::NonSphericalEmbedding {
                crossings: m.vertex_count(),
                faces: 0,
                pieces: loops + 1,
            }));
        }
        let mut under = vec![0; m.vertex_count()];
        for (v, i) in index.iter().enumerate() {
            if let Some(i) = *i {
                under[i] = cur.crossings()[v].under_axis;
            }
        }
        cur = LinkDiagram::from_map(m, &under).map_err(TwistError::Reduction)?;
    }
    Ok(cur)
}

/// A vertex of the collapsed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionVertex {
    pub count: usize,
    pub handedness: i32,
    /// Diagram crossings folded into this vertex.
    pub crossings: Vec<usize>,
    pub canonical_axis: bool,
}

impl RegionVertex {
    pub fn signed_weight(&self) -> i64 {
        self.handedness as i64 * self.count as i64
    }

    pub fn parity(&self) -> usize {
        self.count % 2
    }
}

/// The four-valent graph obtained by collapsing every twist region.
/// Stubs of vertex `v` follow the region's `stubs` order; gaps 0 and 2 are
/// the end faces, gaps 1 and 3 the side faces joined by the red arc.
#[derive(Debug, Clone)]
pub struct CollapsedGraph {
    pub map: QuadMap,
    pub vertices: Vec<RegionVertex>,
    pub faces: FaceTable,
    /// Diagram faces merged into each face.
    pub face_origin: Vec<Vec<usize>>,
}

impl CollapsedGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces joined by the red arc of vertex `v`.
    pub fn arc_faces(&self, v: usize) -> (usize, usize) {
        (self.faces.face_at(v, 1), self.faces.face_at(v, 3))
    }

    pub fn loop_count(&self) -> usize {
        (0..self.map.pairing().len())
            .filter(|&s| {
                let t = self.map.mate(s);
                s < t && map::vertex_of(s) == map::vertex_of(t)
            })
            .count()
    }

    pub fn euler_ok(&self) -> bool {
        self.face_count() == self.vertex_count() + 2
    }
}

pub fn collapse(d: &LinkDiagram, regions: &[TwistRegion]) -> Result<CollapsedGraph, TwistError> {
    let total = 4 * d.crossing_count();
    let mut position = vec![usize::MAX; total];
    for (r, region) in regions.iter().enumerate() {
        for (j, &s) in region.stubs.iter().enumerate() {
            position[s] = map::stub(r, j);
        }
    }
    let mut pair = vec![0; 4 * regions.len()];
    for region in regions {
        for &s in &region.stubs {
            pair[position[s]] = position[d.map().mate(s)];
        }
    }
    let m = QuadMap::from_pairing(pair);
    let faces = m.faces();
    let dfaces = d.face_table();
    let face_origin = faces
        .faces
        .iter()
        .map(|corners| {
            let mut o: Vec<usize> = corners
                .iter()
                .map(|c| {
                    let r = &regions[c.vertex];
                    let dcorner = match c.gap {
                        0 => r.end_gaps[0],
                        1 => r.side_gaps[0],
                        2 => r.end_gaps[1],
                        _ => r.side_gaps[1],
                    };
                    dfaces.face_at(dcorner.vertex, dcorner.gap)
                })
                .collect();
            o.sort_unstable();
            o.dedup();
            o
        })
        .collect();
    let vertices = regions
        .iter()
        .map(|r| RegionVertex {
            count: r.count,
            handedness: r.handedness,
            crossings: r.crossings.clone(),
            canonical_axis: r.canonical_axis,
        })
        .collect();
    let g = CollapsedGraph { map: m, vertices, faces, face_origin };
    if !g.euler_ok() {
        return Err(TwistError::EulerViolation { vertices: g.vertex_count(), faces: g.face_count() });
    }
    Ok(g)
}
