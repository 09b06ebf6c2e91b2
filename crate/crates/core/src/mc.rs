//! Reproducible Monte Carlo batches.
//!
//! Replica `i` of a batch draws from `base.substream(i)`, so the set of draws
//! is a pure function of (seed, stream_id, n): the parallel and sequential
//! runners produce bit-identical outputs, and the parallel one is independent
//! of the worker count. With the default `parallel` feature replicas run on
//! the rayon pool; without it `run_replicas` falls back to the sequential
//! loop.

use rand_chacha::ChaCha12Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::rng::RngStream;

/// Runs `n` replicas sequentially, in replica order.
pub fn run_replicas_seq<T, F>(base: RngStream, n: u64, f: F) -> Vec<T>
where
    F: Fn(u64, &mut ChaCha12Rng) -> T,
{
    (0..n)
        .map(|i| {
            let mut rng = base.substream(i).rng();
            f(i, &mut rng)
        })
        .collect()
}

/// Runs `n` replicas on the rayon pool (or sequentially without the
/// `parallel` feature); output order and values match `run_replicas_seq`
/// exactly.
#[cfg(feature = "parallel")]
pub fn run_replicas<T, F>(base: RngStream, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha12Rng) -> T + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = base.substream(i).rng();
            f(i, &mut rng)
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn run_replicas<T, F>(base: RngStream, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha12Rng) -> T + Sync,
{
    run_replicas_seq(base, n, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let base = RngStream::new(123, 1000);
        let f = |i: u64, rng: &mut ChaCha12Rng| -> (u64, f64) { (i, rng.random()) };
        let par = run_replicas(base, 500, f);
        let seq = run_replicas_seq(base, 500, f);
        assert_eq!(par, seq);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn results_do_not_depend_on_worker_count() {
        let base = RngStream::new(9, 0);
        let f = |_: u64, rng: &mut ChaCha12Rng| rng.random::<f64>();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_replicas(base, 1000, f));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_replicas(base, 1000, f));
        assert_eq!(one, four);
    }
}
