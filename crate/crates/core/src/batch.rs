//! Checking many diagrams at once. With the `parallel` feature the work is
//! spread over rayon's pool; the `_seq` variants always run on one thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::criterion::{check_main, CheckError, Status, Verdict};
use crate::diagram::LinkDiagram;
use crate::tait::{check_tait, TaitError};

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub main: Result<Verdict, String>,
    pub tait: Result<Verdict, String>,
    /// `None` when either side errored or the Tait route was out of domain.
    pub agree: Option<bool>,
}

impl CrossCheck {
    pub fn out_of_domain(&self) -> bool {
        self.tait.is_err()
    }
}

pub fn crosscheck(d: &LinkDiagram) -> CrossCheck {
    let main = check_main(d);
    let tait = check_tait(d);
    let agree = match (&main, &tait) {
        (Ok(m), Ok(t)) => Some(m.status == t.status),
        _ => None,
    };
    CrossCheck {
        main: main.map_err(|e: CheckError| e.to_string()),
        tait: tait.map_err(|e: TaitError| e.to_string()),
        agree,
    }
}

/// Applies `f` to every item, in parallel when the feature is on. Output
/// order matches input order.
pub fn map_items<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_items_seq<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

pub fn check_all(ds: &[LinkDiagram]) -> Vec<Result<Verdict, CheckError>> {
    map_items(ds, check_main)
}

pub fn check_all_seq(ds: &[LinkDiagram]) -> Vec<Result<Verdict, CheckError>> {
    map_items_seq(ds, check_main)
}

pub fn crosscheck_all(ds: &[LinkDiagram]) -> Vec<CrossCheck> {
    map_items(ds, crosscheck)
}

pub fn crosscheck_all_seq(ds: &[LinkDiagram]) -> Vec<CrossCheck> {
    map_items_seq(ds, crosscheck)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub certified: usize,
    pub fail: usize,
    pub excluded: usize,
    pub errors: usize,
}

pub fn summarize<'a>(results: impl IntoIterator<Item = &'a Result<Verdict, CheckError>>) -> Summary {
    let mut s = Summary::default();
    for r in results {
        s.total += 1;
        match r {
            Ok(v) => match v.status {
                Status::Certified => s.certified += 1,
                Status::Fail => s.fail += 1,
                Status::Excluded => s.excluded += 1,
            },
            Err(_) => s.errors += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parallel_matches_sequential() {
        let ds: Vec<LinkDiagram> = catalog::corpus().into_iter().map(|(_, d)| d).collect();
        assert_eq!(check_all(&ds), check_all_seq(&ds));
        let s = summarize(&check_all(&ds));
        assert_eq!(s.total, ds.len());
        assert_eq!(s.excluded, 9);
        assert_eq!(s.errors, 0);
    }

    #[test]
    fn catalogue_crosschecks() {
        for (name, d) in catalog::corpus() {
            let c = crosscheck(&d);
            assert_ne!(c.agree, Some(false), "{name}: {c:?}");
        }
    }
}
