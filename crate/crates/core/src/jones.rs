//! Kauffman bracket and Jones polynomial by state sum. Exponential in the
//! crossing count; meant for identifying small catalogue knots.

use std::collections::BTreeMap;

use crate::diagram::LinkDiagram;
use crate::map::{self, UnionFind};

/// Laurent polynomial as exponent → coefficient, zero terms dropped.
pub type Laurent = BTreeMap<i32, i64>;

fn add_term(p: &mut Laurent, e: i32, c: i64) {
    let v = p.entry(e).or_default();
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn mul(p: &Laurent, q: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&a, &x) in p {
        for (&b, &y) in q {
            add_term(&mut out, a + b, x * y);
        }
    }
    out
}

/// Bracket in the variable A, normalised so the unknot gives 1.
pub fn bracket(d: &LinkDiagram) -> Laurent {
    let n = d.crossing_count();
    assert!(n < 30, "state sum over {n} crossings");
    let pairing = d.map().pairing();
    let axes = d.under_axes();
    // (A-count minus B-count, loops) → number of states
    let mut tally: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for state in 0u64..(1 << n) {
        let mut uf = UnionFind::new(pairing.len());
        for (s, &t) in pairing.iter().enumerate() {
            uf.union(s, t);
        }
        let mut balance = 0;
        for (c, &axis) in axes.iter().enumerate() {
            let u = axis as usize;
            // A joins the under slot to its ccw neighbour
            let shift = if state >> c & 1 == 0 {
                balance += 1;
                u
            } else {
                balance -= 1;
                u + 1
            };
            uf.union(map::stub(c, shift), map::stub(c, shift + 1));
            uf.union(map::stub(c, shift + 2), map::stub(c, shift + 3));
        }
        *tally.entry((balance, uf.count())).or_default() += 1;
    }
    let delta = Laurent::from([(2, -1), (-2, -1)]);
    let mut out = Laurent::new();
    for ((balance, loops), count) in tally {
        let mut term = Laurent::from([(balance, count)]);
        for _ in 1..loops {
            term = mul(&term, &delta);
        }
        for (e, c) in term {
            add_term(&mut out, e, c);
        }
    }
    out
}

/// Writhe of a knot diagram; the orientation does not matter.
pub fn writhe(d: &LinkDiagram) -> i32 {
    let m = d.map();
    let axes = d.under_axes();
    let mut incoming = vec![[usize::MAX; 2]; d.crossing_count()];
    for curve in m.straight_curves() {
        for &leave in &curve {
            let (c, slot) = (map::vertex_of(leave), map::slot_of(leave));
            let over = (slot % 2 != axes[c] as usize % 2) as usize;
            incoming[c][over] = (slot + 2) % 4;
        }
    }
    incoming.iter().map(|&[under, over]| if over == (under + 3) % 4 { 1 } else { -1 }).sum()
}

/// Jones polynomial of a knot in the variable t.
pub fn jones(d: &LinkDiagram) -> Laurent {
    let w = writhe(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    bracket(d)
        .into_iter()
        .map(|(e, c)| {
            let a = e - 3 * w;
            debug_assert_eq!(a % 4, 0);
            (-a / 4, sign * c)
        })
        .collect()
}
