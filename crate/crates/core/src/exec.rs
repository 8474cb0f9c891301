//! Execution strategy for the embarrassingly parallel loops.
//!
//! The heavy loops (state enumeration, partition sums, multi-start
//! root searches) all reduce over an index range with an order-preserving
//! map followed by a sequential fold. Mapping preserves order under both
//! strategies, and every reduction happens sequentially over the mapped
//! vector, so results are bit-identical whether rayon is enabled or not.
//! The `parallel` feature (on by default) pulls in rayon; without it the
//! parallel strategy silently degrades to the sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Strategy {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Sequential => write!(f, "sequential"),
            Strategy::Parallel => write!(f, "parallel"),
        }
    }
}

/// Maps `f` over `items`, preserving order. Under `Strategy::Parallel`
/// (with the `parallel` feature) the map runs on the rayon pool.
pub fn map_collect<T, U, F>(strategy: Strategy, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match strategy {
        Strategy::Sequential => items.into_iter().map(f).collect(),
        Strategy::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

/// Index-range variant of [`map_collect`].
pub fn map_range<U, F>(strategy: Strategy, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    map_collect(strategy, (0..n).collect(), f)
}
