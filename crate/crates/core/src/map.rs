//! Four-valent combinatorial maps on the sphere.
//!
//! A stub is `4 * vertex + slot`; slots are listed counterclockwise. The
//! only stored data is the involution pairing stubs into edges. Gap `g` of a
//! vertex is the corner between slot `g` and slot `g + 1`.

use serde::{Deserialize, Serialize};

#[inline]
pub fn stub(vertex: usize, slot: usize) -> usize {
    4 * vertex + (slot & 3)
}

#[inline]
pub fn vertex_of(stub: usize) -> usize {
    stub / 4
}

#[inline]
pub fn slot_of(stub: usize) -> usize {
    stub & 3
}

/// A corner of a face: the gap between `slot` and `slot + 1` at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: usize,
    pub gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadMap {
    pair: Vec<usize>,
}

/// Face structure of a [`QuadMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTable {
    /// Corners of each face in traversal order.
    pub faces: Vec<Vec<Corner>>,
    /// `face_of[4 * v + g]` is the face containing gap `g` of vertex `v`.
    pub face_of: Vec<usize>,
}

impl FaceTable {
    pub fn face_at(&self, vertex: usize, gap: usize) -> usize {
        self.face_of[stub(vertex, gap)]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

impl QuadMap {
    /// Builds a map from a stub pairing. Panics if `pair` is not a
    /// fixed-point-free involution of length divisible by 4.
    pub fn from_pairing(pair: Vec<usize>) -> Self {
        assert!(pair.len().is_multiple_of(4), "stub count must be a multiple of 4");
        for (s, &t) in pair.iter().enumerate() {
            assert!(t < pair.len() && t != s && pair[t] == s, "not an involution at stub {s}");
        }
        Self { pair }
    }

    pub fn vertex_count(&self) -> usize {
        self.pair.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.pair.len() / 2
    }

    #[inline]
    pub fn mate(&self, s: usize) -> usize {
        self.pair[s]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pair
    }

    /// Traces faces. Gap `(v, g)` continues along slot `g + 1` to the mate
    /// stub `(w, j)`; the next corner is gap `(w, j)`.
    pub fn faces(&self) -> FaceTable {
        let n = self.pair.len();
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut cur = start;
            loop {
                face_of[cur] = id;
                corners.push(Corner { vertex: vertex_of(cur), gap: slot_of(cur) });
                let leave = stub(vertex_of(cur), slot_of(cur) + 1);
                cur = self.pair[leave];
                if cur == start {
                    break;
                }
            }
            faces.push(corners);
        }
        FaceTable { faces, face_of }
    }

    /// Number of connected pieces of the underlying graph.
    pub fn connected_pieces(&self) -> usize {
        let v = self.vertex_count();
        let mut uf = UnionFind::new(v);
        for (s, &t) in self.pair.iter().enumerate() {
            uf.union(vertex_of(s), vertex_of(t));
        }
        uf.count()
    }

    /// Closed curves obtained by going straight through every vertex
    /// (slot `i` continues to slot `i + 2`). Each curve is listed as the
    /// stubs it leaves from, in order.
    pub fn straight_curves(&self) -> Vec<Vec<usize>> {
        let n = self.pair.len();
        let mut seen = vec![false; n];
        let mut curves = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut curve = Vec::new();
            let mut cur = start;
            loop {
                // `cur` is the stub we leave from
                seen[cur] = true;
                curve.push(cur);
                let arrive = self.pair[cur];
                seen[arrive] = true;
                let next = stub(vertex_of(arrive), slot_of(arrive) + 2);
                if next == start {
                    break;
                }
                cur = next;
            }
            curves.push(curve);
        }
        curves
    }

    /// Removes the vertices in `removed`, wiring their stubs internally by
    /// `internal` (a stub-to-stub involution on removed stubs). Strands are
    /// followed through removed vertices until they land on a surviving
    /// stub. Returns the new map, the new index of each surviving vertex,
    /// and the number of closed loops that vanished.
    pub fn splice(
        &self,
        removed: &[bool],
        internal: &dyn Fn(usize) -> usize,
    ) -> (QuadMap, Vec<Option<usize>>, usize) {
        let nv = self.vertex_count();
        let mut new_index = vec![None; nv];
        let mut next = 0;
        for v in 0..nv {
            if !removed[v] {
                new_index[v] = Some(next);
                next += 1;
            }
        }
        let relabel = |s: usize| stub(new_index[vertex_of(s)].unwrap(), slot_of(s));
        let mut pair = vec![usize::MAX; 4 * next];
        for s in 0..self.pair.len() {
            if removed[vertex_of(s)] {
                continue;
            }
            let mut t = self.pair[s];
            while removed[vertex_of(t)] {
                t = self.pair[internal(t)];
            }
            pair[relabel(s)] = relabel(t);
        }
        // wires made only of removed stubs close up into free loops
        let mut seen = vec![false; self.pair.len()];
        let mut loops = 0;
        for s in 0..self.pair.len() {
            if !removed[vertex_of(s)] || seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut touches_survivor = false;
            while let Some(cur) = stack.pop() {
                if seen[cur] {
                    continue;
                }
                seen[cur] = true;
                let m = self.pair[cur];
                if removed[vertex_of(m)] {
                    stack.push(m);
                } else {
                    touches_survivor = true;
                }
                stack.push(internal(cur));
            }
            if !touches_survivor {
                loops += 1;
            }
        }
        (QuadMap { pair }, new_index, loops)
    }
}

/// Plain union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sets: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kink() -> QuadMap {
        QuadMap::from_pairing(vec![1, 0, 3, 2])
    }

    #[test]
    fn kink_faces() {
        let f = kink().faces();
        assert_eq!(f.len(), 3);
        let mut sizes: Vec<_> = f.faces.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn kink_is_one_curve() {
        assert_eq!(kink().straight_curves().len(), 1);
    }

    #[test]
    fn splice_whole_map_counts_loops() {
        let m = kink();
        let (out, _, loops) = m.splice(&[true], &|s| s ^ 1);
        assert_eq!(out.vertex_count(), 0);
        assert!(loops >= 1);
    }
}
