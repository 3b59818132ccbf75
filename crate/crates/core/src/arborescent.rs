//! Weighted planar trees and their arborescent diagrams.
//!
//! The tangle of a vertex is a horizontal twist of `|w|` crossings followed
//! by the rotated tangles of its children in planar order; the diagram is
//! the numerator closure of the root tangle.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::build::{rotate, BuildError, Builder, Tangle};
use crate::criterion::{self, CheckError, Reason, Status, Verdict};
use crate::diagram::LinkDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex weights must be nonzero")]
    ZeroWeight,
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("generated diagram does not match the tree: {0}")]
    ConstructionMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedPlanarTree {
    pub root: usize,
    pub weights: Vec<i64>,
    pub children: Vec<Vec<usize>>,
}

impl WeightedPlanarTree {
    pub fn leaf(w: i64) -> Result<Self, TreeError> {
        if w == 0 {
            return Err(TreeError::ZeroWeight);
        }
        Ok(Self { root: 0, weights: vec![w], children: vec![vec![]] })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Adds a new last child of `parent` and returns its id.
    pub fn push_child(&mut self, parent: usize, w: i64) -> Result<usize, TreeError> {
        if w == 0 {
            return Err(TreeError::ZeroWeight);
        }
        let id = self.weights.len();
        self.weights.push(w);
        self.children.push(Vec::new());
        self.children[parent].push(id);
        Ok(id)
    }

    fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.len()];
        for (v, cs) in self.children.iter().enumerate() {
            for &c in cs {
                p[c] = Some(v);
            }
        }
        p
    }

    /// Neighbours of each vertex in planar cyclic order: parent first,
    /// then children.
    fn rotation(&self) -> Vec<Vec<usize>> {
        let parents = self.parents();
        (0..self.len())
            .map(|v| parents[v].into_iter().chain(self.children[v].iter().copied()).collect())
            .collect()
    }

    /// The same planar tree hung from another vertex.
    pub fn reroot(&self, new_root: usize) -> WeightedPlanarTree {
        let rot = self.rotation();
        let mut out = WeightedPlanarTree { root: 0, weights: vec![self.weights[new_root]], children: vec![vec![]] };
        // (old vertex, old parent, new id)
        let mut stack = vec![(new_root, None::<usize>, 0usize)];
        while let Some((v, from, id)) = stack.pop() {
            let ring = &rot[v];
            let start = from.map_or(0, |f| ring.iter().position(|&x| x == f).unwrap() + 1);
            let order: Vec<usize> =
                (0..ring.len()).map(|i| ring[(start + i) % ring.len()]).filter(|&x| Some(x) != from).collect();
            for c in order {
                let cid = out.push_child(id, self.weights[c]).expect("weights are nonzero");
                stack.push((c, Some(v), cid));
            }
        }
        out
    }
}

impl fmt::Display for WeightedPlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &WeightedPlanarTree, v: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "({}", t.weights[v])?;
            for &c in &t.children[v] {
                write!(f, " ")?;
                go(t, c, f)?;
            }
            write!(f, ")")
        }
        go(self, self.root, f)
    }
}

/// Parses `(w child child …)` where each child has the same form.
pub fn parse_tree(text: &str) -> Result<WeightedPlanarTree, TreeError> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut tree = WeightedPlanarTree { root: 0, weights: Vec::new(), children: Vec::new() };
    parse_node(&tokens, &mut pos, &mut tree)?;
    if pos != tokens.len() {
        return Err(TreeError::Malformed("trailing input after tree".into()));
    }
    Ok(tree)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Int(i64),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, TreeError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                out.push(Tok::Open);
                chars.next();
            }
            ')' => {
                out.push(Tok::Close);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '-' | '+' | '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d == '-' || d == '+' || d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = s.parse().map_err(|_| TreeError::Malformed(format!("bad weight `{s}`")))?;
                out.push(Tok::Int(n));
            }
            other => return Err(TreeError::Malformed(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn parse_node(tokens: &[Tok], pos: &mut usize, tree: &mut WeightedPlanarTree) -> Result<usize, TreeError> {
    let eof = || TreeError::Malformed("unexpected end of input".into());
    if tokens.get(*pos) != Some(&Tok::Open) {
        return Err(tokens.get(*pos).map_or_else(eof, |_| TreeError::Malformed("expected `(`".into())));
    }
    *pos += 1;
    let w = match tokens.get(*pos) {
        Some(Tok::Int(w)) => *w,
        Some(_) => return Err(TreeError::Malformed("expected a weight after `(`".into())),
        None => return Err(eof()),
    };
    if w == 0 {
        return Err(TreeError::ZeroWeight);
    }
    *pos += 1;
    let id = tree.weights.len();
    tree.weights.push(w);
    tree.children.push(Vec::new());
    loop {
        match tokens.get(*pos) {
            Some(Tok::Close) => {
                *pos += 1;
                return Ok(id);
            }
            Some(Tok::Open) => {
                let c = parse_node(tokens, pos, tree)?;
                tree.children[id].push(c);
            }
            Some(Tok::Int(_)) => return Err(TreeError::Malformed("one weight per vertex".into())),
            None => return Err(eof()),
        }
    }
}

fn vertex_tangle(b: &mut Builder, t: &WeightedPlanarTree, v: usize) -> Tangle {
    let w = t.weights[v];
    let mut tangle = b.htwist(w.unsigned_abs() as usize, w.signum() as i32);
    for &c in &t.children[v] {
        let child = vertex_tangle(b, t, c);
        tangle = b.hsum(tangle, rotate(child));
    }
    tangle
}

pub fn generate_diagram(t: &WeightedPlanarTree) -> Result<LinkDiagram, TreeError> {
    let mut b = Builder::new();
    let root = vertex_tangle(&mut b, t, t.root);
    b.numerator(root);
    Ok(b.finish()?)
}

fn tree_reasons(t: &WeightedPlanarTree) -> Vec<Reason> {
    let mut reasons = Vec::new();
    if t.len() == 1 {
        reasons.push(Reason::SingleVertex);
    }
    for (v, w) in t.weights.iter().enumerate() {
        if w.abs() < 2 {
            reasons.push(Reason::WeightTooSmall(v));
        }
    }
    if t.weights.iter().all(|w| w.abs() < 3) {
        reasons.push(Reason::NoWeightAboveTwo);
    }
    reasons
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Checks the tree hypotheses and validates the generated diagram: for
/// trees with all `|w| >= 2` and more than one vertex, both side graphs
/// must be trees carrying exactly the weights `|w|`, and the main
/// criterion must agree.
pub fn check_arborescent(t: &WeightedPlanarTree) -> Result<Verdict, TreeError> {
    let d = generate_diagram(t)?;
    let Some(analysis) = criterion::analyze(&d)? else {
        return Ok(Verdict::not_a_knot());
    };
    let mut reasons = tree_reasons(t);
    if t.len() == 1 {
        // the diagram of a lone vertex is the torus closure D_w
        reasons.extend(analysis.verdict.reasons.iter().filter(|r| matches!(r, Reason::DkDiagram(_))).cloned());
    }
    let verdict = Verdict::from_reasons(
        reasons,
        analysis.verdict.weights_g.clone(),
        analysis.verdict.weights_r.clone(),
        t.len(),
    );
    if t.len() > 1 && t.weights.iter().all(|w| w.abs() >= 2) {
        let c = analysis.connectivity;
        if !(c.tree_g && c.tree_r) {
            return Err(TreeError::ConstructionMismatch(format!("side graphs are not trees for {t}")));
        }
        let mut got = analysis.verdict.weights_g.clone();
        got.extend(&analysis.verdict.weights_r);
        let want: Vec<u64> = t.weights.iter().map(|w| w.unsigned_abs()).collect();
        if sorted(got.clone()) != sorted(want.clone()) {
            return Err(TreeError::ConstructionMismatch(format!("weights {got:?} differ from tree weights {want:?}")));
        }
        if analysis.verdict.status != verdict.status {
            return Err(TreeError::ConstructionMismatch(format!(
                "main criterion says {} but the tree says {}",
                analysis.verdict.status, verdict.status
            )));
        }
    } else if verdict.status == Status::Certified {
        unreachable!("certified trees have all weights at least two");
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// A path.
    TwoBridge(Vec<i64>),
    /// A centre with one leaf per column.
    Pretzel { center: i64, columns: Vec<i64> },
    /// A centre with one path per rational tangle.
    Montesinos { center: i64, arms: Vec<Vec<i64>> },
}

pub fn family_tree(family: &Family) -> Result<WeightedPlanarTree, TreeError> {
    let empty = || TreeError::Malformed("family parameters are empty".into());
    match family {
        Family::TwoBridge(ws) => {
            let (&first, rest) = ws.split_first().ok_or_else(empty)?;
            let mut t = WeightedPlanarTree::leaf(first)?;
            let mut last = 0;
            for &w in rest {
                last = t.push_child(last, w)?;
            }
            Ok(t)
        }
        Family::Pretzel { center, columns } => {
            if columns.is_empty() {
                return Err(empty());
            }
            let mut t = WeightedPlanarTree::leaf(*center)?;
            for &w in columns {
                t.push_child(0, w)?;
            }
            Ok(t)
        }
        Family::Montesinos { center, arms } => {
            if arms.is_empty() || arms.iter().any(Vec::is_empty) {
                return Err(empty());
            }
            let mut t = WeightedPlanarTree::leaf(*center)?;
            for arm in arms {
                let mut last = 0;
                for &w in arm {
                    last = t.push_child(last, w)?;
                }
            }
            Ok(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::detect_twist_regions;

    #[test]
    fn parse_examples() {
        let t = parse_tree("(5)").unwrap();
        assert_eq!(t.weights, vec![5]);
        let t = parse_tree("(2 (3))").unwrap();
        assert_eq!(t.weights, vec![2, 3]);
        assert_eq!(t.children[0], vec![1]);
        let t = parse_tree(" (5 (2) (-3 (2))) ").unwrap();
        assert_eq!(t.to_string(), "(5 (2) (-3 (2)))");
        assert_eq!(parse_tree("(0)"), Err(TreeError::ZeroWeight));
        for bad in ["", "(", "(2", "()", "(2 3)", "(2))", "x"] {
            assert!(matches!(parse_tree(bad), Err(TreeError::Malformed(_))), "{bad}");
        }
    }

    #[test]
    fn single_vertex_is_torus_closure() {
        let d = generate_diagram(&parse_tree("(3)").unwrap()).unwrap();
        assert_eq!(d.crossing_count(), 3);
        let r = detect_twist_regions(&d).unwrap();
        assert_eq!((r.len(), r[0].count), (1, 3));
    }

    #[test]
    fn two_vertex_tree() {
        let d = generate_diagram(&parse_tree("(2 (3))").unwrap()).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.component_count(), 1);
        let mut counts: Vec<_> = detect_twist_regions(&d).unwrap().iter().map(|r| r.count).collect();
        counts.sort();
        assert_eq!(counts, vec![2, 3]);
    }

    #[test]
    fn verdicts() {
        let v = check_arborescent(&parse_tree("(5)").unwrap()).unwrap();
        assert_eq!(v.status, Status::Excluded);
        assert!(v.reasons.contains(&Reason::SingleVertex));
        assert!(v.reasons.iter().any(|r| matches!(r, Reason::DkDiagram(k) if k.abs() == 5)));
        assert_eq!(check_arborescent(&parse_tree("(2 (3))").unwrap()).unwrap().status, Status::Certified);
        let v = check_arborescent(&parse_tree("(2 (2))").unwrap()).unwrap();
        assert_eq!(v.reasons, vec![Reason::NoWeightAboveTwo]);
    }

    #[test]
    fn reroot_keeps_weights_and_size() {
        let t = parse_tree("(5 (2) (-3 (2)))").unwrap();
        for r in 0..t.len() {
            let u = t.reroot(r);
            assert_eq!(u.len(), t.len());
            let mut a = u.weights.clone();
            let mut b = t.weights.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        assert_eq!(t.reroot(0), t);
    }

    #[test]
    fn families() {
        let t = family_tree(&Family::TwoBridge(vec![2, 3])).unwrap();
        assert_eq!(t.to_string(), "(2 (3))");
        let t = family_tree(&Family::Pretzel { center: 2, columns: vec![3, -3, 5] }).unwrap();
        assert_eq!(t.to_string(), "(2 (3) (-3) (5))");
        let t = family_tree(&Family::Montesinos { center: -2, arms: vec![vec![3, 2], vec![2]] }).unwrap();
        assert_eq!(t.to_string(), "(-2 (3 (2)) (2))");
        assert!(family_tree(&Family::TwoBridge(vec![])).is_err());
    }
}
