//! Sequential and rayon-backed execution of per-cell kernels.
//!
//! Every kernel is a pure function of a cell's dense index, so both paths
//! produce bit-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How per-cell work is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential execution when the `parallel` feature is off.
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
    /// Overwrite `out[idx]` with `f(idx)` for every index.
    pub fn fill<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => out
                .par_iter_mut()
                .with_min_len(1024)
                .enumerate()
                .for_each(|(idx, slot)| *slot = f(idx)),
            _ => out.iter_mut().enumerate().for_each(|(idx, slot)| *slot = f(idx)),
        }
    }

    /// Map a slice of independent jobs, preserving order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}
