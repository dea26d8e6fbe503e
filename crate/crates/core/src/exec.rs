//! Execution mode for the data-parallel sweeps.
//!
//! Every batch operation in the crate (ordering enumeration, cone
//! construction, certification sweeps) goes through [`map`], which runs on
//! the rayon pool when the `parallel` feature is enabled and the caller asks
//! for [`ExecMode::Parallel`]. Results always come back in input order, so
//! both modes produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// Whether this mode will actually fan out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Number of worker threads a parallel sweep would use.
pub fn worker_count(mode: ExecMode) -> usize {
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            return rayon::current_num_threads();
        }
    }
    let _ = mode;
    1
}
