//! Checkerboard colouring of the collapsed graph and the two side graphs.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::map::{self, UnionFind};
use crate::twist::{CollapsedGraph, RegionVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Green => Color::Red,
            Color::Red => Color::Green,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Green => "green",
            Color::Red => "red",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SideError {
    #[error("face adjacency is not bipartite at face {0}")]
    NotBipartite(usize),
    #[error("normalisation removed every twist region")]
    DegenerateCollapse,
    #[error("tree and connectivity tests disagree: {0:?}")]
    EquivalenceViolation(ConnectivityReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceColoring {
    pub color: Vec<Color>,
}

impl FaceColoring {
    pub fn swapped(&self) -> FaceColoring {
        FaceColoring { color: self.color.iter().map(|c| c.other()).collect() }
    }

    pub fn count(&self, c: Color) -> usize {
        self.color.iter().filter(|&&x| x == c).count()
    }
}

/// Faces on the two sides of each edge.
fn face_adjacency(g: &CollapsedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.face_count()];
    for s in 0..g.map.pairing().len() {
        let (v, j) = (map::vertex_of(s), map::slot_of(s));
        let left = g.faces.face_at(v, j);
        let right = g.faces.face_at(v, (j + 3) % 4);
        adj[left].push(right);
        adj[right].push(left);
    }
    adj
}

/// Two-colours the faces; the face with the smallest id is green.
pub fn color_faces(g: &CollapsedGraph) -> Result<FaceColoring, SideError> {
    let n = g.face_count();
    let adj = face_adjacency(g);
    let mut color: Vec<Option<Color>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Color::Green);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for &h in &adj[f] {
                match color[h] {
                    None => {
                        color[h] = Some(c.other());
                        queue.push_back(h);
                    }
                    Some(x) if x == c => return Err(SideError::NotBipartite(h)),
                    _ => {}
                }
            }
        }
    }
    Ok(FaceColoring { color: color.into_iter().map(Option::unwrap).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
    pub signed_weight: i64,
    /// Vertex of the collapsed graph this edge comes from.
    pub region: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideGraph {
    pub color: Color,
    /// Face ids of this colour, ascending.
    pub vertices: Vec<usize>,
    pub edges: Vec<SideEdge>,
}

impl SideGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    fn components(&self) -> usize {
        let index = |f: usize| self.vertices.binary_search(&f).unwrap();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(index(e.a), index(e.b));
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Connected with no cycles; loops count as cycles.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// First pair of edges joining the same two distinct faces.
    pub fn parallel_pair(&self) -> Option<(usize, usize)> {
        let key = |e: &SideEdge| (e.a.min(e.b), e.a.max(e.b));
        for (i, e) in self.edges.iter().enumerate() {
            if e.a == e.b {
                continue;
            }
            if let Some(j) = self.edges[i + 1..].iter().position(|f| key(f) == key(e)) {
                return Some((i, i + 1 + j));
            }
        }
        None
    }
}

pub fn build_side_graphs(g: &CollapsedGraph, c: &FaceColoring) -> (SideGraph, SideGraph) {
    let mut graphs = [Color::Green, Color::Red].map(|color| SideGraph {
        color,
        vertices: (0..g.face_count()).filter(|&f| c.color[f] == color).collect(),
        edges: Vec::new(),
    });
    for (v, region) in g.vertices.iter().enumerate() {
        let (a, b) = g.arc_faces(v);
        debug_assert_eq!(c.color[a], c.color[b]);
        let idx = match c.color[a] {
            Color::Green => 0,
            Color::Red => 1,
        };
        graphs[idx].edges.push(SideEdge {
            a,
            b,
            weight: region.count as u64,
            signed_weight: region.signed_weight(),
            region: v,
        });
    }
    let [gg, gr] = graphs;
    (gg, gr)
}

/// Removes vertices of the collapsed graph, smoothing each so that its two
/// end faces merge and the faces joined by its arc stay apart.
fn smooth(g: &CollapsedGraph, removed: &[bool], vertices: Vec<RegionVertex>) -> Result<CollapsedGraph, SideError> {
    let internal = |s: usize| map::stub(map::vertex_of(s), 3 - map::slot_of(s));
    let (m, index, loops) = g.map.splice(removed, &internal);
    if m.vertex_count() == 0 || loops > 0 {
        return Err(SideError::DegenerateCollapse);
    }
    let mut old_of = vec![0; m.vertex_count()];
    for (v, i) in index.iter().enumerate() {
        if let Some(i) = *i {
            old_of[i] = v;
        }
    }
    let faces = m.faces();
    let face_origin = faces
        .faces
        .iter()
        .map(|corners| {
            let mut o: Vec<usize> = corners
                .iter()
                .flat_map(|c| g.face_origin[g.faces.face_at(old_of[c.vertex], c.gap)].iter().copied())
                .collect();
            o.sort_unstable();
            o.dedup();
            o
        })
        .collect();
    let out = CollapsedGraph { map: m, vertices, faces, face_origin };
    debug_assert!(out.euler_ok());
    Ok(out)
}

/// Merges parallel side edges until no two edges join the same pair of
/// faces. Signed weights add; a pair summing to zero disappears.
pub fn normalize_assumption2(
    gg: SideGraph,
    gr: SideGraph,
    g: CollapsedGraph,
) -> Result<(SideGraph, SideGraph, CollapsedGraph), SideError> {
    let (mut gg, mut gr, mut g) = (gg, gr, g);
    loop {
        let found = gg.parallel_pair().map(|p| (p, &gg)).or_else(|| gr.parallel_pair().map(|p| (p, &gr)));
        let Some(((i, j), graph)) = found else {
            return Ok((gg, gr, g));
        };
        let (e1, e2) = (&graph.edges[i], &graph.edges[j]);
        let sum = e1.signed_weight + e2.signed_weight;
        let mut removed = vec![false; g.vertex_count()];
        removed[e2.region] = true;
        if sum == 0 {
            removed[e1.region] = true;
        }
        let keep = e1.region;
        let vertices = g
            .vertices
            .iter()
            .enumerate()
            .filter(|(v, _)| !removed[*v])
            .map(|(v, r)| {
                let mut r = r.clone();
                if v == keep {
                    r.count = sum.unsigned_abs() as usize;
                    r.handedness = sum.signum() as i32;
                    r.crossings.extend(g.vertices[e2.region].crossings.iter().copied());
                    r.crossings.sort_unstable();
                }
                r
            })
            .collect();
        g = smooth(&g, &removed, vertices)?;
        let coloring = color_faces(&g)?;
        (gg, gr) = build_side_graphs(&g, &coloring);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected_g: bool,
    pub connected_r: bool,
    pub tree_g: bool,
    pub tree_r: bool,
}

impl ConnectivityReport {
    pub fn both_connected(&self) -> bool {
        self.connected_g && self.connected_r
    }
}

/// Connectivity and tree tests for both graphs. For side graphs of a
/// spherical collapsed graph the four answers coincide.
pub fn connectivity_report(gg: &SideGraph, gr: &SideGraph) -> Result<ConnectivityReport, SideError> {
    let report = ConnectivityReport {
        connected_g: gg.is_connected(),
        connected_r: gr.is_connected(),
        tree_g: gg.is_tree(),
        tree_r: gr.is_tree(),
    };
    let both = report.both_connected();
    if report.tree_g != both || report.tree_r != both {
        return Err(SideError::EquivalenceViolation(report));
    }
    Ok(report)
}

/// Runs colouring, side graphs and normalisation on a collapsed graph.
pub fn side_graphs(g: CollapsedGraph) -> Result<(SideGraph, SideGraph, CollapsedGraph), SideError> {
    let coloring = color_faces(&g)?;
    let (gg, gr) = build_side_graphs(&g, &coloring);
    normalize_assumption2(gg, gr, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::Builder;
    use crate::catalog;
    use crate::diagram::{parse_pd, LinkDiagram};
    use crate::twist::{collapse, detect_twist_regions, reduce_assumption1};

    fn raw(d: &LinkDiagram) -> CollapsedGraph {
        let d = reduce_assumption1(d).unwrap();
        collapse(&d, &detect_twist_regions(&d).unwrap()).unwrap()
    }

    fn counts(c: &FaceColoring) -> [usize; 2] {
        let mut n = [c.count(Color::Green), c.count(Color::Red)];
        n.sort_unstable();
        n
    }

    #[test]
    fn colorings() {
        let g = raw(&catalog::trefoil());
        let c = color_faces(&g).unwrap();
        assert_eq!(counts(&c), [1, 2]);
        assert_eq!(c.color[0], Color::Green);
        assert_eq!(c.swapped().swapped(), c);
        assert_eq!(counts(&color_faces(&raw(&catalog::figure_eight())).unwrap()), [2, 2]);
    }

    #[test]
    fn trefoil_side_graphs() {
        let (gg, gr, _) = side_graphs(raw(&catalog::trefoil())).unwrap();
        let (big, small) = if gg.edges.is_empty() { (gr, gg) } else { (gg, gr) };
        assert_eq!((big.vertex_count(), big.weights()), (2, vec![3]));
        assert_eq!((small.vertex_count(), small.edges.len()), (1, 0));
        let r = connectivity_report(&big, &small).unwrap();
        assert!(r.connected_g && r.connected_r && r.tree_g && r.tree_r);
    }

    #[test]
    fn swapping_colors_swaps_graphs() {
        let g = raw(&catalog::k_n(2));
        let c = color_faces(&g).unwrap();
        let (gg, gr) = build_side_graphs(&g, &c);
        let (sg, sr) = build_side_graphs(&g, &c.swapped());
        assert_eq!((gg.edges.clone(), gr.edges.clone()), (sr.edges.clone(), sg.edges.clone()));
        assert_eq!(connectivity_report(&gg, &gr), connectivity_report(&sr, &sg));
    }

    #[test]
    fn pretzel_has_one_disconnected_graph() {
        let (gg, gr, _) = side_graphs(raw(&catalog::pretzel_m2_3_7())).unwrap();
        let r = connectivity_report(&gg, &gr).unwrap();
        assert_ne!(r.connected_g, r.connected_r);
        assert!(!r.tree_g && !r.tree_r);
    }

    /// Two vertical columns between horizontal twists, numerator closure.
    fn columns_between_twists(a: i32, b: i32, p: i32, q: i32) -> LinkDiagram {
        let mut bd = Builder::new();
        let c1 = bd.vtwist(a.unsigned_abs() as usize, a.signum());
        let c2 = bd.vtwist(b.unsigned_abs() as usize, b.signum());
        let s = bd.hsum(c1, c2);
        let h1 = bd.htwist(p.unsigned_abs() as usize, p.signum());
        let h2 = bd.htwist(q.unsigned_abs() as usize, q.signum());
        let t = bd.vprod(h1, s);
        let t = bd.vprod(t, h2);
        bd.numerator(t);
        bd.finish().unwrap()
    }

    #[test]
    fn parallel_regions_merge() {
        let g = raw(&columns_between_twists(2, 3, 3, 3));
        assert_eq!(g.vertex_count(), 4);
        let (gg, gr, merged) = side_graphs(g).unwrap();
        let mut w: Vec<i64> = merged.vertices.iter().map(|r| r.signed_weight()).collect();
        w.sort_unstable();
        assert_eq!(w, vec![3, 3, 5]);
        assert_eq!(merged.face_count(), 5);
        assert!(gg.parallel_pair().is_none() && gr.parallel_pair().is_none());
    }

    #[test]
    fn cancelling_regions_vanish() {
        let d = parse_pd("X[1,26,28,25] X[25,28,24,27] X[27,24,26,23] X[23,15,22,16] X[16,22,17,21] X[21,17,20,18] X[9,12,10,13] X[14,9,13,8] X[7,14,8,15] X[20,10,19,11] X[11,19,12,18] X[7,4,6,3] X[3,6,2,5] X[5,2,4,1]").unwrap();
        let g = raw(&d);
        assert_eq!(g.vertex_count(), 5);
        let (_, _, merged) = side_graphs(g).unwrap();
        let mut counts: Vec<usize> = merged.vertices.iter().map(|r| r.count).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![2, 3, 3]);
        assert!(merged.euler_ok());
    }

    #[test]
    fn no_parallel_edges_is_a_fixed_point() {
        let g = raw(&catalog::k_n(3));
        let c = color_faces(&g).unwrap();
        let (gg, gr) = build_side_graphs(&g, &c);
        let (ng, nr, _) = normalize_assumption2(gg.clone(), gr.clone(), g).unwrap();
        assert_eq!((ng, nr), (gg, gr));
    }
}
