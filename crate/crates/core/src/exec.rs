//! Execution strategy for the data-parallel sweeps.
//!
//! Every sweep in the crate (class enumeration, closure frontiers, atom
//! bases, verification cases, generator subsets) goes through [`Exec`].
//! Results are always gathered in input order, so reports do not depend on
//! the strategy or on scheduling.
//!
//! Without the `parallel` feature [`Exec::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Applies `f` to every index in `0..len` and keeps the `Some` results,
    /// in index order.
    pub fn filter_map_range<U, F>(self, len: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..len).into_par_iter().filter_map(f).collect();
        }
        (0..len).filter_map(f).collect()
    }

    /// Flat-maps `f` over `items`, preserving order.
    pub fn flat_map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Vec<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }
}

/// Size limits for constructions that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of states discovered by a subset or product
    /// construction.
    pub max_states: usize,
    /// Maximum number of elements of a semigroup closure.
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_states: 1 << 22, max_elements: crate::semigroup::DEFAULT_MAX_ELEMENTS }
    }
}
