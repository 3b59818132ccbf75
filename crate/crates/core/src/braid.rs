//! Braid words, their cyclic reduction and the braid form of the criterion.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::build::{BuildError, Builder};
use crate::criterion::{Reason, Verdict};
use crate::diagram::LinkDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("cannot read braid token {0:?}")]
    Malformed(String),
    #[error("generator s{index} does not exist on {strands} strands")]
    BadGenerator { index: usize, strands: usize },
    #[error("braid word is trivial after reduction")]
    EmptyWord,
    #[error("interleaving needs an odd number of strands, got {0}")]
    EvenStrandCount(usize),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Syllable {
    /// Generator index, 1-based.
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    pub strands: usize,
    pub syllables: Vec<Syllable>,
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}^{}", s.generator, s.exponent)?;
        }
        Ok(())
    }
}

fn parse_token(tok: &str) -> Result<Syllable, BraidError> {
    let bad = || BraidError::Malformed(tok.to_string());
    let rest = tok.strip_prefix(['s', 'S']).ok_or_else(bad)?;
    let (g, e) = rest.split_once('^').unwrap_or((rest, "1"));
    let generator = g.parse::<usize>().map_err(|_| bad())?;
    let exponent = e.parse::<i64>().map_err(|_| bad())?;
    if generator == 0 {
        return Err(bad());
    }
    Ok(Syllable { generator, exponent })
}

/// Merges adjacent syllables on the same generator, first linearly and then
/// across the end of the word.
fn reduce(syllables: impl IntoIterator<Item = Syllable>) -> Vec<Syllable> {
    let mut stack: Vec<Syllable> = Vec::new();
    for s in syllables {
        match stack.last_mut() {
            Some(top) if top.generator == s.generator => {
                top.exponent += s.exponent;
                if top.exponent == 0 {
                    stack.pop();
                }
            }
            _ if s.exponent != 0 => stack.push(s),
            _ => {}
        }
    }
    while stack.len() > 1 && stack[0].generator == stack[stack.len() - 1].generator {
        let last = stack.pop().unwrap();
        stack[0].exponent += last.exponent;
        if stack[0].exponent == 0 {
            stack.remove(0);
        }
    }
    stack
}

/// Parses `s<i>^<a>` tokens separated by spaces, commas or `*`. Without an
/// explicit strand count the word lives on one more strand than its largest
/// generator.
pub fn parse_and_reduce(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
    let raw = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|t| !t.is_empty())
        .map(parse_token)
        .collect::<Result<Vec<_>, _>>()?;
    let top = raw.iter().map(|s| s.generator).max().unwrap_or(0);
    let n = strands.unwrap_or(top + 1).max(2);
    if let Some(s) = raw.iter().find(|s| s.generator >= n) {
        return Err(BraidError::BadGenerator { index: s.generator, strands: n });
    }
    let syllables = reduce(raw);
    if syllables.is_empty() {
        return Err(BraidError::EmptyWord);
    }
    Ok(BraidWord { strands: n, syllables })
}

impl BraidWord {
    /// Positions of each generator's syllables; entry `h - 1` for σ_h.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.strands - 1];
        for (j, s) in self.syllables.iter().enumerate() {
            occ[s.generator - 1].push(j);
        }
        occ
    }

    /// Generators that never occur.
    pub fn missing_generators(&self) -> Vec<usize> {
        let occ = self.occurrences();
        (1..self.strands).filter(|&h| occ[h - 1].is_empty()).collect()
    }

    /// Strand permutation of the braid.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for s in &self.syllables {
            if s.exponent % 2 != 0 {
                perm.swap(s.generator - 1, s.generator);
            }
        }
        perm
    }
}

pub fn closure_components(w: &BraidWord) -> usize {
    let perm = w.permutation();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

/// True if some occurrence of `other` lies strictly between every pair of
/// cyclically consecutive occurrences in `occ`.
fn separated(occ: &[usize], other: &[usize]) -> bool {
    if occ.len() < 2 {
        return true;
    }
    (0..occ.len()).all(|i| {
        let (a, b) = (occ[i], occ[(i + 1) % occ.len()]);
        other.iter().any(|&p| if a < b { a < p && p < b } else { p > a || p < b })
    })
}

/// Odd σ_h need a σ_{h+1} between consecutive occurrences, even σ_h a
/// σ_{h-1}.
pub fn check_interleaving(w: &BraidWord) -> Result<bool, BraidError> {
    if w.strands.is_multiple_of(2) {
        return Err(BraidError::EvenStrandCount(w.strands));
    }
    let occ = w.occurrences();
    Ok((1..w.strands).all(|h| {
        let partner = if h % 2 == 1 { h + 1 } else { h - 1 };
        if partner == 0 || partner >= w.strands {
            return true;
        }
        separated(&occ[h - 1], &occ[partner - 1])
    }))
}

pub fn check_braid(w: &BraidWord) -> Verdict {
    let weights: Vec<u64> = w.syllables.iter().map(|s| s.exponent.unsigned_abs()).collect();
    let regions = weights.len();
    if closure_components(w) != 1 {
        return Verdict::not_a_knot();
    }
    let mut reasons = Vec::new();
    if w.strands.is_multiple_of(2) {
        reasons.push(Reason::EvenStrandCount);
    }
    for (j, &a) in weights.iter().enumerate() {
        if a < 2 {
            reasons.push(Reason::WeightTooSmall(j));
        }
    }
    if weights.iter().all(|&a| a < 3) {
        reasons.push(Reason::NoWeightAboveTwo);
    }
    if w.strands % 2 == 1 && !check_interleaving(w).unwrap_or(false) {
        reasons.push(Reason::Interleaving);
    }
    let mut sorted = weights;
    sorted.sort_unstable();
    Verdict::from_reasons(reasons, sorted, vec![], regions)
}

/// Closure of the braid drawn top to bottom; each syllable is a vertical
/// twist of |a| crossings and a positive exponent gives positive crossings
/// for downward strands.
pub fn braid_to_diagram(w: &BraidWord) -> Result<LinkDiagram, BraidError> {
    let mut b = Builder::new();
    let top: Vec<usize> = (0..w.strands).map(|_| b.free_point()).collect();
    let mut cur = top.clone();
    for s in &w.syllables {
        let i = s.generator - 1;
        let under_axis = if s.exponent > 0 { 1 } else { 0 };
        for _ in 0..s.exponent.unsigned_abs() {
            let x = b.crossing(under_axis);
            b.wire(cur[i], x.nw);
            b.wire(cur[i + 1], x.ne);
            cur[i] = x.sw;
            cur[i + 1] = x.se;
        }
    }
    for (t, c) in top.into_iter().zip(cur) {
        b.wire(c, t);
    }
    Ok(b.finish()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::{check_main, Status};
    use crate::jones::{jones, Laurent};
    use crate::twist::detect_twist_regions;

    fn word(text: &str, n: usize) -> BraidWord {
        parse_and_reduce(text, Some(n)).unwrap()
    }

    #[test]
    fn parsing_and_reduction() {
        assert_eq!(word("s1^2 s1^3", 3).to_string(), "s1^5");
        assert_eq!(word("s1^2 s2^-3", 3).to_string(), "s1^2 s2^-3");
        assert_eq!(word("s1^2 s2^3 s1^-2", 3).to_string(), "s2^3");
        assert_eq!(word("s1 s2^-1 s1", 3).to_string(), "s1^2 s2^-1");
        assert_eq!(parse_and_reduce("s1^2 s1^-2", None), Err(BraidError::EmptyWord));
        assert!(matches!(parse_and_reduce("s3^2", Some(3)), Err(BraidError::BadGenerator { index: 3, .. })));
        assert!(matches!(parse_and_reduce("t1^2", None), Err(BraidError::Malformed(_))));
        assert_eq!(parse_and_reduce("s2^3", None).unwrap().strands, 3);
    }

    #[test]
    fn reduction_is_idempotent() {
        let w = word("s1^2 s2^3 s2^-1 s1^2 s2^2 s1", 3);
        assert_eq!(word(&w.to_string(), 3), w);
    }

    #[test]
    fn components() {
        assert_eq!(closure_components(&word("s1^3 s2^-3", 3)), 1);
        assert_eq!(closure_components(&word("s1^2 s2^2", 3)), 3);
        assert_eq!(closure_components(&word("s1^3 s2^2", 3)), 2);
    }

    #[test]
    fn interleaving() {
        assert_eq!(check_interleaving(&word("s1^2 s2^3 s1^2 s2^2", 3)), Ok(true));
        assert_eq!(check_interleaving(&word("s1^2 s3^2 s1^2 s3^2", 5)), Ok(false));
        assert_eq!(check_interleaving(&word("s1^3 s2^-3", 3)), Ok(true));
        assert_eq!(check_interleaving(&word("s1^3", 4)), Err(BraidError::EvenStrandCount(4)));
    }

    #[test]
    fn verdicts() {
        assert_eq!(check_braid(&word("s1^3 s2^-3", 3)).status, Status::Certified);
        assert_eq!(check_braid(&word("s1^3 s2^2 s1^2 s2^3", 3)).status, Status::Certified);
        let v = check_braid(&word("s1^2 s2^2 s1^2 s2^-2", 3));
        assert_eq!(v.reasons, vec![Reason::NotAKnot]);
        let v = check_braid(&word("s1^3 s2^2 s1^2 s2^-2 s1^2 s2^3", 3));
        assert_eq!(v.status, Status::Certified);
    }

    #[test]
    fn trefoil_closure() {
        let d = braid_to_diagram(&word("s1^3", 2)).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(jones(&d), Laurent::from([(1, 1), (3, 1), (4, -1)]));
        assert_eq!(check_main(&d).unwrap().reasons, vec![Reason::DkDiagram(-3)]);
    }

    #[test]
    fn closures_keep_syllables_as_regions() {
        for (text, want) in [("s1^3 s2^-3", vec![3, 3]), ("s1^2 s2^3 s1^2 s2^2", vec![2, 3, 2, 2])] {
            let d = braid_to_diagram(&word(text, 3)).unwrap();
            let mut got: Vec<usize> = detect_twist_regions(&d).unwrap().iter().map(|r| r.count).collect();
            let mut want = want;
            got.sort_unstable();
            want.sort_unstable();
            assert_eq!(got, want, "{text}");
        }
    }

    #[test]
    fn closure_verdicts_agree() {
        for text in ["s1^3 s2^-3", "s1^3 s2^2 s1^2 s2^3", "s1^-3 s2^3 s1^2 s2^-2", "s1^3 s2^2 s1^2 s2^-2 s1^2 s2^3"] {
            let w = word(text, 3);
            let d = braid_to_diagram(&w).unwrap();
            let main = check_main(&d).unwrap();
            assert_eq!(main.status, check_braid(&w).status, "{text}: {main:?}");
            assert_eq!(main.weights_g.len() + main.weights_r.len(), w.syllables.len());
        }
    }
}
