//! Instance generators for sweeps: random twist gluings, small tree shapes
//! and alternating three-strand braid words.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arborescent::WeightedPlanarTree;
use crate::braid::{BraidWord, Syllable};
use crate::build::substitute_twists;
use crate::diagram::LinkDiagram;
use crate::map::QuadMap;
use crate::twist::reduce_assumption1;

/// Random connected planar four-valent map on `vertices` vertices, by
/// rejection sampling of stub pairings.
pub fn random_planar_map<R: Rng>(rng: &mut R, vertices: usize) -> QuadMap {
    let mut stubs: Vec<usize> = (0..4 * vertices).collect();
    loop {
        stubs.shuffle(rng);
        let mut pair = vec![0; 4 * vertices];
        for c in stubs.chunks(2) {
            pair[c[0]] = c[1];
            pair[c[1]] = c[0];
        }
        let m = QuadMap::from_pairing(pair);
        if m.faces().len() == vertices + 2 && m.connected_pieces() == 1 {
            return m;
        }
    }
}

/// Replaces each vertex of a random planar map by a twist of 1..=`max_count`
/// crossings in a random direction. Returns only knots that keep at least
/// one crossing after reduction.
pub fn random_twist_gluing<R: Rng>(rng: &mut R, vertices: usize, max_count: usize) -> LinkDiagram {
    loop {
        let m = random_planar_map(rng, vertices);
        let axes: Vec<u8> = (0..vertices).map(|_| rng.gen_range(0..2)).collect();
        let plan: Vec<(usize, bool)> = (0..vertices).map(|_| (rng.gen_range(1..=max_count), rng.gen())).collect();
        let Ok(shadow) = LinkDiagram::from_map(m, &axes) else { continue };
        if let Ok(d) = substitute_twists(&shadow, &|c| plan[c]) {
            if d.component_count() == 1 && reduce_assumption1(&d).is_ok() {
                return d;
            }
        }
    }
}

/// Parent vectors (`parent[0] == 0`, `parent[i] < i`) of every unlabelled
/// tree with `n` vertices, one per isomorphism class.
pub fn tree_shapes(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parents = vec![0; n];
    fn rec(i: usize, parents: &mut Vec<usize>, seen: &mut BTreeSet<String>, out: &mut Vec<Vec<usize>>) {
        if i == parents.len() {
            if seen.insert(unrooted_form(parents)) {
                out.push(parents.clone());
            }
            return;
        }
        for p in 0..i {
            parents[i] = p;
            rec(i + 1, parents, seen, out);
        }
    }
    rec(1, &mut parents, &mut seen, &mut out);
    out
}

fn rooted_form(adj: &[Vec<usize>], v: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != from).map(|&w| rooted_form(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn unrooted_form(parents: &[usize]) -> String {
    let n = parents.len();
    let mut adj = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate().skip(1) {
        adj[i].push(p);
        adj[p].push(i);
    }
    (0..n).map(|r| rooted_form(&adj, r, usize::MAX)).min().unwrap()
}

/// Tree on a parent vector with the given weights, children in index order.
pub fn tree_from_parents(parents: &[usize], weights: &[i64]) -> WeightedPlanarTree {
    let mut t = WeightedPlanarTree::leaf(weights[0]).expect("nonzero weight");
    for i in 1..parents.len() {
        t.push_child(parents[i], weights[i]).expect("nonzero weight");
    }
    t
}

/// Every assignment of `values` to `n` slots, in lexicographic order.
pub fn weight_assignments(values: &[i64], n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                values.iter().map(move |&x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Cyclically reduced words in σ1, σ2 that alternate between the two
/// generators, with at most `max_len` syllables.
pub fn alternating_b3_words(exponents: &[i64], max_len: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        if len > 1 && len % 2 == 1 {
            continue;
        }
        for first in [1, 2] {
            for exps in weight_assignments(exponents, len) {
                let syllables = exps
                    .iter()
                    .enumerate()
                    .map(|(j, &exponent)| Syllable { generator: if j % 2 == 0 { first } else { 3 - first }, exponent })
                    .collect();
                out.push(BraidWord { strands: 3, syllables });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| tree_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn gluings_are_knots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for v in 2..=5 {
            let d = random_twist_gluing(&mut rng, v, 3);
            assert_eq!(d.component_count(), 1);
        }
    }

    #[test]
    fn b3_word_count() {
        // lengths 1, 2 and 4, two starting generators
        assert_eq!(alternating_b3_words(&[-3, -2, 2, 3], 4).len(), 2 * (4 + 16 + 256));
    }
}
