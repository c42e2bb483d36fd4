//! Data-parallel execution with a sequential fallback.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// How randomized suites spread their samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Evaluate `f(0..n)` in index order; parallel when the `parallel` feature is on.
pub fn run_indexed<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Deterministic per-sample generator derived from a suite seed.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn paths_agree() {
        let f = |i: usize| sample_rng(7, i).random::<u64>();
        assert_eq!(run_indexed(Exec::Sequential, 64, f), run_indexed(Exec::Parallel, 64, f));
    }

    #[test]
    fn streams_differ() {
        assert_ne!(sample_rng(1, 0).random::<u64>(), sample_rng(1, 1).random::<u64>());
    }
}
