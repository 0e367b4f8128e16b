//! Multi-threaded drivers.
//!
//! Ray search: the search tree is cut at a fixed depth and the subtrees are searched in
//! parallel. The reported outcome is that of the first subtree, in sequential order, that
//! did not come back exhausted, so it matches the sequential search regardless of the
//! thread count. Node counts are sums over subtrees and flagged approximate.
//!
//! Monte Carlo: a run of `N` draws on `T` threads gives thread `t` the ChaCha8 stream
//! `t` of the seed and `⌊N/T⌋` draws, plus one for `t < N mod T`; sums are merged in
//! thread order.

use std::time::Instant;

use nogo_core::bell::{mc_substream, BlochState, McEstimate, McSums, PauliDecomposition};
use nogo_core::valuation::{ContextSystem, RaySearch, SearchCertificate, SearchOutcome};
use rayon::prelude::*;

/// Depth of the decision prefixes handed to worker threads. Fixed so that outcomes do
/// not depend on the thread count.
pub const FRONTIER_DEPTH: usize = 6;

pub fn thread_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool")
}

pub fn find_valuation_parallel(ctx: &ContextSystem, budget: Option<u64>, threads: usize) -> SearchCertificate {
    let start = Instant::now();
    let mut head = RaySearch::new(ctx);
    let frontier = head.frontier(FRONTIER_DEPTH);
    let results: Vec<SearchCertificate> = thread_pool(threads).install(|| {
        frontier.par_iter().map(|prefix| RaySearch::new(ctx).with_budget(budget).solve_from(prefix)).collect()
    });
    let nodes = head.nodes() + results.iter().map(|c| c.nodes).sum::<u64>();
    let propagations = head.propagations() + results.iter().map(|c| c.propagations).sum::<u64>();
    let outcome = results.into_iter().map(|c| c.outcome).find(|o| !o.is_exhausted()).unwrap_or(SearchOutcome::Exhausted);
    SearchCertificate { outcome, nodes, propagations, elapsed: Some(start.elapsed()), approximate_counts: true }
}

pub fn expectation_mc_parallel(s: &BlochState, d: &PauliDecomposition, n: u64, seed: u64, threads: usize) -> nogo_core::Result<McEstimate> {
    let t = (threads.max(1) as u64).min(n.max(1));
    let sums: Vec<McSums> = thread_pool(t as usize).install(|| {
        (0..t).into_par_iter().map(|k| mc_substream(s, d, n / t + u64::from(k < n % t), seed, k)).collect()
    });
    sums.into_iter().fold(McSums::default(), McSums::merge).estimate()
}

pub fn available_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nogo_core::valuation::find_valuation;

    #[test]
    fn parallel_matches_sequential() {
        // Four mutually unbiased pairs in dim 2: colorable.
        let ctx = ContextSystem { dim: 2, num_rays: 8, pairs: vec![(0, 1), (2, 3), (4, 5), (6, 7)], bases: vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]] };
        let seq = find_valuation(&ctx);
        for threads in [1, 2, 4] {
            assert_eq!(find_valuation_parallel(&ctx, None, threads).outcome, seq.outcome);
        }
    }

    #[test]
    fn mc_reproducible_for_fixed_threads() {
        let s = BlochState::new([0.0, 0.0, 1.0]).unwrap();
        let d = PauliDecomposition::new(0.0, [1.0, 0.0, 0.0]);
        let a = expectation_mc_parallel(&s, &d, 10_001, 7, 3).unwrap();
        let b = expectation_mc_parallel(&s, &d, 10_001, 7, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples, 10_001);
        assert!(expectation_mc_parallel(&s, &d, 0, 7, 3).is_err());
    }
}
