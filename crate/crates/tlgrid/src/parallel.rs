//! Workload fan-out. Engines are written per tile / per query; these
//! helpers run a batch of independent work items, sequentially or over
//! the current rayon pool when the `parallel` feature is enabled, merging
//! one `Metrics` per task deterministically.
//!
//! Results come back in input order whichever path runs, so batch output
//! (and any checksum over it) is identical with one thread or many.

use crate::metrics::Metrics;

/// Runs `f` over every item in order on the calling thread.
pub fn run_batch_seq<T, R>(items: &[T], f: impl Fn(&T, &mut Metrics) -> R) -> (Vec<R>, Metrics) {
    let mut m = Metrics::default();
    let out = items.iter().map(|it| f(it, &mut m)).collect();
    (out, m)
}

/// Runs `f` over the items on the current rayon pool; outputs keep input
/// order and per-task metrics merge in input order.
#[cfg(feature = "parallel")]
pub fn run_batch_par<T, R, F>(items: &[T], f: F) -> (Vec<R>, Metrics)
where
    T: Sync,
    R: Send,
    F: Fn(&T, &mut Metrics) -> R + Sync,
{
    use rayon::prelude::*;
    let results: Vec<(R, Metrics)> = items
        .par_iter()
        .map(|it| {
            let mut local = Metrics::default();
            let r = f(it, &mut local);
            (r, local)
        })
        .collect();
    let mut m = Metrics::default();
    let mut out = Vec::with_capacity(results.len());
    for (r, local) in results {
        m.merge(&local);
        out.push(r);
    }
    (out, m)
}

/// Dispatches to the parallel path when available and requested; the
/// sequential path otherwise.
pub fn run_batch<T, R, F>(items: &[T], f: F, parallel: bool) -> (Vec<R>, Metrics)
where
    T: Sync,
    R: Send,
    F: Fn(&T, &mut Metrics) -> R + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return run_batch_par(items, f);
    }
    let _ = parallel;
    run_batch_seq(items, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_batch_keeps_order_and_merges_metrics() {
        let items: Vec<u64> = (0..100).collect();
        let (out, m) = run_batch_seq(&items, |v, m| {
            m.results_emitted += 1;
            v * 2
        });
        assert_eq!(out[7], 14);
        assert_eq!(m.results_emitted, 100);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_batch_matches_sequential() {
        let items: Vec<u64> = (0..1000).collect();
        let f = |v: &u64, m: &mut Metrics| {
            m.pairs_tested += *v;
            v.wrapping_mul(31)
        };
        let (seq, m_seq) = run_batch_seq(&items, f);
        let (par, m_par) = run_batch_par(&items, f);
        assert_eq!(seq, par);
        assert_eq!(m_seq, m_par);
    }
}
