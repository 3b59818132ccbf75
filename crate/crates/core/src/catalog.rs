//! Named diagrams used by tests, benches and the CLI corpus.

use crate::build::{pretzel, substitute_twists, torus_2k};
use crate::diagram::{parse_pd, LinkDiagram};
use crate::map::QuadMap;

pub const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
pub const FIGURE_EIGHT_PD: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const HOPF_PD: &str = "X[1,3,2,4] X[3,1,4,2]";

/// Four-vertex shadow underlying `k_n`.
const KN_SHADOW: [usize; 16] = [13, 12, 9, 6, 11, 14, 3, 8, 7, 2, 15, 4, 1, 0, 5, 10];
const KN_UNDER_AXIS: [u8; 4] = [1, 1, 0, 0];
const KN_HORIZONTAL: [bool; 4] = [true, true, false, false];

pub fn trefoil() -> LinkDiagram {
    parse_pd(TREFOIL_PD).expect("trefoil")
}

pub fn figure_eight() -> LinkDiagram {
    parse_pd(FIGURE_EIGHT_PD).expect("figure-eight")
}

pub fn hopf() -> LinkDiagram {
    parse_pd(HOPF_PD).expect("Hopf link")
}

/// Standard (2, k) torus closure; negative k gives the mirror.
pub fn d_k(k: i32) -> LinkDiagram {
    torus_2k(k)
}

/// Three-column pretzel diagram of P(-2, 3, 7).
pub fn pretzel_m2_3_7() -> LinkDiagram {
    pretzel(&[-2, 3, 7]).expect("pretzel")
}

/// Four twist regions; region 0 has `2n` crossings, the others two. Both
/// side graphs are trees. `k_n(1)` is the torus knot T(2, 5).
pub fn k_n(n: usize) -> LinkDiagram {
    assert!(n >= 1, "k_n needs n >= 1");
    let shadow = LinkDiagram::from_map(QuadMap::from_pairing(KN_SHADOW.to_vec()), &KN_UNDER_AXIS).expect("shadow");
    substitute_twists(&shadow, &|c| (if c == 0 { 2 * n } else { 2 }, KN_HORIZONTAL[c])).expect("k_n")
}

/// Named knot diagrams that make up the default corpus.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut out = vec![
        ("trefoil".to_string(), trefoil()),
        ("figure_eight".to_string(), figure_eight()),
        ("pretzel_-2_3_7".to_string(), pretzel_m2_3_7()),
    ];
    for k in [3, 5, 7, 9] {
        out.push((format!("d_{k}"), d_k(k)));
        out.push((format!("d_-{k}"), d_k(-k)));
    }
    for n in 1..=4 {
        out.push((format!("k_{n}"), k_n(n)));
    }
    out
}

/// Diagram by corpus name: `trefoil`, `figure_eight`, `hopf`,
/// `pretzel_-2_3_7`, `d_<k>` or `k_<n>`.
pub fn lookup(name: &str) -> Option<LinkDiagram> {
    match name {
        "trefoil" => Some(trefoil()),
        "figure_eight" => Some(figure_eight()),
        "hopf" => Some(hopf()),
        "pretzel_-2_3_7" => Some(pretzel_m2_3_7()),
        _ => {
            if let Some(k) = name.strip_prefix("d_").and_then(|k| k.parse::<i32>().ok()) {
                return (k != 0).then(|| d_k(k));
            }
            let n = name.strip_prefix("k_")?.parse::<usize>().ok()?;
            (n >= 1).then(|| k_n(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::{check_main, Reason, Status};
    use crate::jones::{jones, Laurent};
    use crate::tait::determinant;

    #[test]
    fn k_one_is_torus_knot() {
        let d = k_n(1);
        assert_eq!(d.crossing_count(), 8);
        assert_eq!(determinant(&d), 5);
        let right = Laurent::from([(7, -1), (6, 1), (5, -1), (4, 1), (2, 1)]);
        assert_eq!(jones(&d), right);
    }

    #[test]
    fn k_n_verdicts() {
        let v = check_main(&k_n(1)).unwrap();
        assert_eq!(v.reasons, vec![Reason::NoWeightAboveTwo]);
        for n in 2..=4 {
            let v = check_main(&k_n(n)).unwrap();
            assert_eq!(v.status, Status::Certified, "n = {n}");
            assert_eq!(v.twist_regions, 4);
        }
    }

    #[test]
    fn corpus_is_knots() {
        for (name, d) in corpus() {
            assert_eq!(d.component_count(), 1, "{name}");
        }
    }

    #[test]
    fn lookup_names() {
        for (name, d) in corpus() {
            assert_eq!(lookup(&name).unwrap().to_string(), d.to_string());
        }
        assert!(lookup("hopf").is_some());
        assert!(lookup("d_0").is_none() && lookup("k_0").is_none() && lookup("nope").is_none());
    }
}
