//! Building diagrams from tangles.
//!
//! A [`Builder`] holds crossings and free points joined by wires. A crossing
//! seen as a tangle has its slots at NE = 0, NW = 1, SW = 2, SE = 3. Free
//! points are pass-through joints; they are contracted away by
//! [`Builder::finish`].

use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::map::{self, QuadMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("point {0} is not wired up correctly")]
    Dangling(usize),
    #[error("construction left {0} closed loop(s) without crossings")]
    FreeLoop(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy)]
enum Point {
    Slot(usize),
    Free,
}

/// Four boundary points of a tangle, by compass corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tangle {
    pub nw: usize,
    pub ne: usize,
    pub sw: usize,
    pub se: usize,
}

#[derive(Debug, Default, Clone)]
pub struct Builder {
    under: Vec<u8>,
    points: Vec<Point>,
    wires: Vec<Vec<usize>>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing_count(&self) -> usize {
        self.under.len()
    }

    fn push_point(&mut self, p: Point) -> usize {
        self.points.push(p);
        self.wires.push(Vec::new());
        self.points.len() - 1
    }

    /// Adds a crossing and returns its four slots as a tangle.
    pub fn crossing(&mut self, under_axis: u8) -> Tangle {
        let c = self.under.len();
        self.under.push(under_axis);
        let s: Vec<usize> = (0..4).map(|j| self.push_point(Point::Slot(map::stub(c, j)))).collect();
        Tangle { ne: s[0], nw: s[1], sw: s[2], se: s[3] }
    }

    pub fn free_point(&mut self) -> usize {
        self.push_point(Point::Free)
    }

    pub fn wire(&mut self, a: usize, b: usize) {
        self.wires[a].push(b);
        self.wires[b].push(a);
    }

    /// Horizontal sum: `t1` on the left, `t2` on the right.
    pub fn hsum(&mut self, t1: Tangle, t2: Tangle) -> Tangle {
        self.wire(t1.ne, t2.nw);
        self.wire(t1.se, t2.sw);
        Tangle { nw: t1.nw, sw: t1.sw, ne: t2.ne, se: t2.se }
    }

    /// Vertical product: `t1` on top of `t2`.
    pub fn vprod(&mut self, t1: Tangle, t2: Tangle) -> Tangle {
        self.wire(t1.sw, t2.nw);
        self.wire(t1.se, t2.ne);
        Tangle { nw: t1.nw, ne: t1.ne, sw: t2.sw, se: t2.se }
    }

    /// `n >= 1` copies of one crossing type side by side.
    pub fn hrow(&mut self, n: usize, under_axis: u8) -> Tangle {
        assert!(n >= 1);
        let mut t = self.crossing(under_axis);
        for _ in 1..n {
            let c = self.crossing(under_axis);
            t = self.hsum(t, c);
        }
        t
    }

    /// `n >= 1` copies of one crossing type stacked vertically.
    pub fn vrow(&mut self, n: usize, under_axis: u8) -> Tangle {
        assert!(n >= 1);
        let mut t = self.crossing(under_axis);
        for _ in 1..n {
            let c = self.crossing(under_axis);
            t = self.vprod(t, c);
        }
        t
    }

    /// Horizontal twist of `n` crossings with the given handedness.
    pub fn htwist(&mut self, n: usize, handedness: i32) -> Tangle {
        self.hrow(n, horizontal_axis(handedness))
    }

    /// Vertical twist; the rotation of a horizontal twist.
    pub fn vtwist(&mut self, n: usize, handedness: i32) -> Tangle {
        let t = self.htwist(n, handedness);
        rotate(t)
    }

    pub fn numerator(&mut self, t: Tangle) {
        self.wire(t.nw, t.ne);
        self.wire(t.sw, t.se);
    }

    pub fn denominator(&mut self, t: Tangle) {
        self.wire(t.nw, t.sw);
        self.wire(t.ne, t.se);
    }

    /// Contracts free points and returns the diagram.
    pub fn finish(self) -> Result<LinkDiagram, BuildError> {
        for (p, w) in self.wires.iter().enumerate() {
            let want = match self.points[p] {
                Point::Slot(_) => 1,
                Point::Free => 2,
            };
            if w.len() != want {
                return Err(BuildError::Dangling(p));
            }
        }
        let mut pair = vec![usize::MAX; 4 * self.under.len()];
        let mut seen_free = vec![false; self.points.len()];
        for (p, point) in self.points.iter().enumerate() {
            let Point::Slot(s) = *point else { continue };
            let (mut prev, mut cur) = (p, self.wires[p][0]);
            while let Point::Free = self.points[cur] {
                seen_free[cur] = true;
                let w = &self.wires[cur];
                let next = if w[0] == prev { w[1] } else { w[0] };
                prev = cur;
                cur = next;
            }
            let Point::Slot(t) = self.points[cur] else { unreachable!() };
            pair[s] = t;
        }
        let loops = free_loops(&self.points, &self.wires, &seen_free);
        if loops > 0 {
            return Err(BuildError::FreeLoop(loops));
        }
        if self.under.is_empty() {
            return Err(DiagramError::EmptyDiagram.into());
        }
        let map = QuadMap::from_pairing(pair);
        Ok(LinkDiagram::from_map(map, &self.under)?)
    }
}

fn free_loops(points: &[Point], wires: &[Vec<usize>], seen: &[bool]) -> usize {
    let mut seen = seen.to_vec();
    let mut loops = 0;
    for p in 0..points.len() {
        if !matches!(points[p], Point::Free) || seen[p] {
            continue;
        }
        loops += 1;
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            stack.extend(wires[q].iter().copied());
        }
    }
    loops
}

/// Quarter turn counterclockwise.
pub fn rotate(t: Tangle) -> Tangle {
    Tangle { nw: t.ne, sw: t.nw, se: t.sw, ne: t.se }
}

/// Under-axis of a crossing that has the given handedness inside a
/// horizontal twist. Left-handed (+1) puts the SW-NE strand over.
pub fn horizontal_axis(handedness: i32) -> u8 {
    if handedness > 0 {
        1
    } else {
        0
    }
}

/// The (2, k) torus closure: a horizontal twist of |k| crossings closed
/// by its numerator. `k > 0` gives a left-handed twist.
pub fn torus_2k(k: i32) -> LinkDiagram {
    assert!(k != 0);
    let mut b = Builder::new();
    let t = b.htwist(k.unsigned_abs() as usize, k.signum());
    b.numerator(t);
    b.finish().expect("torus closure is a valid diagram")
}

/// Pretzel diagram: vertical twist columns side by side, numerator closure.
pub fn pretzel(columns: &[i32]) -> Result<LinkDiagram, BuildError> {
    assert!(!columns.is_empty() && columns.iter().all(|&c| c != 0));
    let mut b = Builder::new();
    let mut t = b.vtwist(columns[0].unsigned_abs() as usize, columns[0].signum());
    for &c in &columns[1..] {
        let next = b.vtwist(c.unsigned_abs() as usize, c.signum());
        t = b.hsum(t, next);
    }
    b.numerator(t);
    b.finish()
}

/// Replaces every crossing by a twist of `plan(c).0` copies of itself,
/// laid horizontally when `plan(c).1` is true and vertically otherwise.
pub fn substitute_twists(
    d: &LinkDiagram,
    plan: &dyn Fn(usize) -> (usize, bool),
) -> Result<LinkDiagram, BuildError> {
    let mut b = Builder::new();
    let mut ports = Vec::with_capacity(d.crossing_count());
    for (c, x) in d.crossings().iter().enumerate() {
        let (m, horizontal) = plan(c);
        let t = if horizontal { b.hrow(m.max(1), x.under_axis) } else { b.vrow(m.max(1), x.under_axis) };
        ports.push([t.ne, t.nw, t.sw, t.se]);
    }
    let map = d.map();
    for s in 0..map.pairing().len() {
        let t = map.mate(s);
        if s < t {
            let ps = ports[map::vertex_of(s)][map::slot_of(s)];
            let pt = ports[map::vertex_of(t)][map::slot_of(t)];
            b.wire(ps, pt);
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_closures_are_knots_or_links() {
        for k in 1..=6 {
            let d = torus_2k(k);
            assert_eq!(d.crossing_count(), k as usize);
            let want = if k % 2 == 1 { 1 } else { 2 };
            assert_eq!(d.component_count(), want, "k = {k}");
        }
    }

    #[test]
    fn denominator_of_twist_is_unknot_shadow() {
        let mut b = Builder::new();
        let t = b.htwist(3, 1);
        b.denominator(t);
        let d = b.finish().unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.faces().iter().filter(|f| f.is_monogon()).count(), 2);
    }

    #[test]
    fn pretzel_237_is_knot() {
        let d = pretzel(&[-2, 3, 7]).unwrap();
        assert_eq!(d.crossing_count(), 12);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn dangling_port_is_reported() {
        let mut b = Builder::new();
        let t = b.crossing(0);
        b.wire(t.nw, t.ne);
        assert!(matches!(b.finish(), Err(BuildError::Dangling(_))));
    }

    #[test]
    fn free_loop_is_reported() {
        let mut b = Builder::new();
        let t = b.crossing(0);
        b.wire(t.nw, t.ne);
        b.wire(t.sw, t.se);
        let (p, q) = (b.free_point(), b.free_point());
        b.wire(p, q);
        b.wire(q, p);
        assert!(matches!(b.finish(), Err(BuildError::FreeLoop(1))));
    }

    #[test]
    fn substitution_multiplies_crossings() {
        let d = torus_2k(3);
        let e = substitute_twists(&d, &|c| (c + 1, c % 2 == 0)).unwrap();
        assert_eq!(e.crossing_count(), 6);
    }
}
