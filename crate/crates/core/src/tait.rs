//! Tait graphs of the raw diagram, their contraction and an independent
//! version of the main criterion.
//!
//! This module shares nothing with the collapsed-graph route except the
//! diagram itself and the Reidemeister II reduction.

use std::collections::{BTreeMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::criterion::{Reason, Verdict};
use crate::diagram::LinkDiagram;
use crate::twist::{reduce_assumption1, TwistError};

/// Relates the label sum of a cycle-shaped Tait graph to the signed
/// crossing count reported for torus closures.
const CYCLE_LABEL_TO_K: i64 = -1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaitError {
    #[error(transparent)]
    Twist(#[from] TwistError),
    /// Parallel crossings that are not joined by bigons: the diagram is
    /// not normalised and the contracted graph does not apply directly.
    #[error("parallel crossings {0:?} are split across several twist regions")]
    OutsideDomain(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaitEdge {
    pub a: usize,
    pub b: usize,
    pub label: i32,
    pub crossing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaitGraph {
    /// 0 for the colour class of face 0, 1 for the other.
    pub class: u8,
    /// Raw face ids in this colour class.
    pub vertices: Vec<usize>,
    pub edges: Vec<TaitEdge>,
}

impl TaitGraph {
    fn index(&self, f: usize) -> usize {
        self.vertices.binary_search(&f).expect("face of this class")
    }

    /// Degrees, with a loop counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[self.index(e.a)] += 1;
            deg[self.index(e.b)] += 1;
        }
        deg
    }

    /// Connected, with every vertex of degree two.
    pub fn is_cycle(&self) -> bool {
        self.edges.len() == self.vertices.len() && self.degrees().iter().all(|&d| d == 2) && {
            let mut uf = UnionFind::<usize>::new(self.vertices.len());
            for e in &self.edges {
                uf.union(self.index(e.a), self.index(e.b));
            }
            (0..self.vertices.len()).all(|v| uf.equiv(0, v))
        }
    }
}

/// Two-colours the raw faces, face 0 in class 0.
fn face_classes(d: &LinkDiagram) -> Vec<u8> {
    let faces = d.face_table();
    let n = faces.len();
    let mut adj = vec![Vec::new(); n];
    for c in 0..d.crossing_count() {
        for g in 0..4 {
            let (f, h) = (faces.face_at(c, g), faces.face_at(c, (g + 1) % 4));
            adj[f].push(h);
            adj[h].push(f);
        }
    }
    let mut class = vec![u8::MAX; n];
    class[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for &h in &adj[f] {
            if class[h] == u8::MAX {
                class[h] = 1 - class[f];
                queue.push_back(h);
            }
        }
    }
    class
}

/// One edge per crossing in each graph, joining the two faces of that
/// class at the crossing. The label is the sign of those corners.
pub fn build_tait(d: &LinkDiagram) -> (TaitGraph, TaitGraph) {
    let faces = d.face_table();
    let class = face_classes(d);
    let mut graphs = [0u8, 1].map(|k| TaitGraph {
        class: k,
        vertices: (0..faces.len()).filter(|&f| class[f] == k).collect(),
        edges: Vec::new(),
    });
    for c in 0..d.crossing_count() {
        for g in 0..2 {
            let (a, b) = (faces.face_at(c, g), faces.face_at(c, g + 2));
            let k = class[a] as usize;
            graphs[k].edges.push(TaitEdge { a: a.min(b), b: a.max(b), label: d.gap_sign(c, g), crossing: c });
        }
    }
    let [t0, t1] = graphs;
    (t0, t1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergedEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
    pub crossings: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedGraph {
    /// Faces of degree other than two.
    pub vertices: Vec<usize>,
    pub edges: Vec<MergedEdge>,
    /// One entry per chain of degree-two vertices: its size plus one.
    pub c_set: Vec<u64>,
    pub w_set: Vec<u64>,
    /// The whole graph is a single cycle.
    pub cycle: bool,
}

impl ContractedGraph {
    pub fn is_contractible(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let index = |f: usize| self.vertices.binary_search(&f).unwrap();
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for e in &self.edges {
            uf.union(index(e.a), index(e.b));
        }
        let connected = (0..self.vertices.len()).all(|v| uf.equiv(0, v));
        connected && self.edges.len() + 1 == self.vertices.len()
    }

    pub fn elements(&self) -> Vec<u64> {
        let mut all = self.c_set.clone();
        all.extend(&self.w_set);
        all
    }

    pub fn passes(&self) -> bool {
        let all = self.elements();
        all.iter().all(|&x| x > 1) && all.iter().any(|&x| x > 2) && self.is_contractible()
    }
}

pub fn contract(t: &TaitGraph) -> ContractedGraph {
    let deg = t.degrees();
    let bivalent = |f: usize| deg[t.index(f)] == 2;
    let n = t.vertices.len();
    let mut uf = UnionFind::<usize>::new(n);
    for e in &t.edges {
        if bivalent(e.a) && bivalent(e.b) {
            uf.union(t.index(e.a), t.index(e.b));
        }
    }
    let mut chain_size: BTreeMap<usize, u64> = BTreeMap::new();
    for (i, &f) in t.vertices.iter().enumerate() {
        if bivalent(f) {
            *chain_size.entry(uf.find(i)).or_default() += 1;
        }
    }
    let cycle = t.is_cycle();
    let c_set: Vec<u64> = if cycle {
        vec![t.edges.len() as u64]
    } else {
        chain_size.values().map(|&s| s + 1).collect()
    };
    let vertices: Vec<usize> = t.vertices.iter().copied().filter(|&f| !bivalent(f)).collect();
    let mut classes: BTreeMap<(usize, usize), (i64, Vec<usize>)> = BTreeMap::new();
    for e in &t.edges {
        if bivalent(e.a) || bivalent(e.b) {
            continue;
        }
        let entry = classes.entry((e.a, e.b)).or_default();
        entry.0 += e.label as i64;
        entry.1.push(e.crossing);
    }
    let edges: Vec<MergedEdge> = classes
        .into_iter()
        .map(|((a, b), (sum, crossings))| MergedEdge { a, b, weight: sum.unsigned_abs(), crossings })
        .collect();
    let w_set = edges.iter().map(|e| e.weight).collect();
    ContractedGraph { vertices, edges, c_set, w_set, cycle }
}

/// Rejects Tait graphs whose parallel classes (between distinct faces) mix
/// crossings from different twist regions.
fn check_domain(d: &LinkDiagram, t: &TaitGraph) -> Result<(), TaitError> {
    let faces = d.face_table();
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in &t.edges {
        if e.a != e.b {
            classes.entry((e.a, e.b)).or_default().push(e.crossing);
        }
    }
    for crossings in classes.values().filter(|c| c.len() > 1) {
        let mut uf = UnionFind::<usize>::new(crossings.len());
        for (i, &x) in crossings.iter().enumerate() {
            for (j, &y) in crossings.iter().enumerate().skip(i + 1) {
                let shares_bigon = faces.faces.iter().any(|f| {
                    f.len() == 2 && {
                        let (u, v) = (f[0].vertex, f[1].vertex);
                        (u, v) == (x, y) || (u, v) == (y, x)
                    }
                });
                if shares_bigon {
                    uf.union(i, j);
                }
            }
        }
        if (0..crossings.len()).any(|i| !uf.equiv(0, i)) {
            return Err(TaitError::OutsideDomain(crossings.clone()));
        }
    }
    Ok(())
}

fn reasons_for(c: &ContractedGraph) -> Vec<Reason> {
    let mut reasons = Vec::new();
    for (i, &x) in c.elements().iter().enumerate() {
        if x < 2 {
            reasons.push(Reason::WeightTooSmall(i));
        }
    }
    if c.elements().iter().all(|&x| x < 3) {
        reasons.push(Reason::NoWeightAboveTwo);
    }
    if !c.is_contractible() {
        reasons.push(Reason::Disconnected);
    }
    reasons
}

/// The contracted-graph criterion on either Tait graph.
pub fn check_tait(d: &LinkDiagram) -> Result<Verdict, TaitError> {
    if d.component_count() != 1 {
        return Ok(Verdict::not_a_knot());
    }
    let d = reduce_assumption1(d)?;
    let (t0, t1) = build_tait(&d);
    for t in [&t0, &t1] {
        if t.is_cycle() {
            let k = CYCLE_LABEL_TO_K * t.edges.iter().map(|e| e.label as i64).sum::<i64>();
            return Ok(Verdict::from_reasons(vec![Reason::DkDiagram(k)], vec![], vec![], 1));
        }
    }
    check_domain(&d, &t0)?;
    check_domain(&d, &t1)?;
    let (c0, c1) = (contract(&t0), contract(&t1));
    let regions = c0.elements().len();
    let (w0, w1) = (sorted(c0.elements()), sorted(c1.elements()));
    if c0.passes() || c1.passes() {
        return Ok(Verdict::from_reasons(vec![], w0, w1, regions));
    }
    Ok(Verdict::from_reasons(reasons_for(&c0), w0, w1, regions))
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Knot determinant from the Goeritz matrix of the class-0 Tait graph.
pub fn determinant(d: &LinkDiagram) -> u64 {
    let (t, _) = build_tait(d);
    let n = t.vertices.len();
    if n <= 1 {
        return 1;
    }
    let mut g = vec![vec![0i128; n]; n];
    for e in &t.edges {
        let (i, j) = (t.index(e.a), t.index(e.b));
        if i == j {
            continue;
        }
        let l = e.label as i128;
        g[i][j] -= l;
        g[j][i] -= l;
        g[i][i] += l;
        g[j][j] += l;
    }
    let m: Vec<Vec<i128>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss(m).unsigned_abs() as u64
}

/// Fraction-free Gaussian elimination.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{pretzel, torus_2k};
    use crate::criterion::Status;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn trefoil_tait_graphs() {
        let d = parse_pd(TREFOIL).unwrap();
        let (a, b) = build_tait(&d);
        let (cycle, bond) = if a.vertices.len() == 3 { (a, b) } else { (b, a) };
        assert!(cycle.is_cycle());
        assert_eq!(cycle.edges.iter().map(|e| e.label).sum::<i32>().abs(), 3);
        assert_eq!(bond.vertices.len(), 2);
        assert_eq!(bond.edges.len(), 3);
        let c = contract(&bond);
        assert_eq!(c.w_set, vec![3]);
        assert!(c.c_set.is_empty());
        let c = contract(&cycle);
        assert_eq!(c.c_set, vec![3]);
    }

    #[test]
    fn kink_has_loop() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let (a, b) = build_tait(&d);
        assert!(a.edges.iter().chain(&b.edges).any(|e| e.a == e.b));
    }

    #[test]
    fn figure_eight_tait() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let (a, b) = build_tait(&d);
        for t in [&a, &b] {
            assert_eq!((t.vertices.len(), t.edges.len()), (3, 4));
            assert!(t.edges.iter().all(|e| e.label == t.edges[0].label));
        }
        let v = check_tait(&d).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.weights_g, vec![2, 2]);
    }

    #[test]
    fn torus_closures_are_excluded() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(check_tait(&d).unwrap().reasons, vec![Reason::DkDiagram(3)]);
        assert_eq!(check_tait(&d.mirror()).unwrap().reasons, vec![Reason::DkDiagram(-3)]);
        assert_eq!(check_tait(&torus_2k(5)).unwrap().reasons, vec![Reason::DkDiagram(5)]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&parse_pd(TREFOIL).unwrap()), 3);
        assert_eq!(determinant(&parse_pd(FIGURE_EIGHT).unwrap()), 5);
        assert_eq!(determinant(&torus_2k(7)), 7);
        assert_eq!(determinant(&pretzel(&[-2, 3, 7]).unwrap()), 1);
    }

    #[test]
    fn pretzel_is_not_contractible() {
        let v = check_tait(&pretzel(&[-2, 3, 7]).unwrap()).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert!(v.reasons.contains(&Reason::Disconnected));
    }
}
