//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature the sweeps run on rayon's pool; without it
//! [`Exec::Parallel`] quietly degrades to the sequential loop. Either way the
//! results come back in input order, so reports are byte-identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items `find_first` and `all` stay sequential; their
/// predicates are cheap. `map_range` items are whole sub-sweeps.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    #[cfg(feature = "parallel")]
    fn parallel_for(self, len: usize, threshold: usize) -> bool {
        self == Exec::Parallel && len >= threshold
    }

    /// `f(0), f(1), ..., f(len - 1)` in order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel_for(len, 2) {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Least index satisfying `pred`.
    pub fn find_first<F>(self, len: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel_for(len, PAR_THRESHOLD) {
            return (0..len).into_par_iter().find_first(|&i| pred(i));
        }
        (0..len).find(|&i| pred(i))
    }

    /// Whether every index satisfies `pred`.
    pub fn all<F>(self, len: usize, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel_for(len, PAR_THRESHOLD) {
            return (0..len).into_par_iter().all(pred);
        }
        (0..len).all(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let squares = exec.map_range(1000, |i| i * i);
            assert_eq!(squares[999], 998_001);
            assert_eq!(exec.find_first(1000, |i| i > 10 && i % 97 == 0), Some(97));
            assert!(exec.all(1000, |i| i < 1000));
        }
    }
}
