//! Execution-mode plumbing: grid maps run on rayon when the `parallel`
//! feature is enabled and the caller asks for it, sequentially otherwise.
//! Results come back in input order either way, so reports never depend on
//! the schedule.

/// How a sweep (or other data-parallel stage) executes.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum RunMode {
    Sequential,
    /// Rayon work-stealing over the instance grid. Falls back to sequential
    /// when the `parallel` feature is disabled.
    #[default]
    Parallel,
}

pub(crate) fn map_slice<T, U, F>(mode: RunMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == RunMode::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(&f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}
