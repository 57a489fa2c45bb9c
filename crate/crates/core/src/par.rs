//! Optional data-parallel tabulation of cochain tensors.
//!
//! Tensor entries are independent, so turning parallelism on never changes a
//! result, only the wall time.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::linalg::C64;

static PARALLEL: AtomicBool = AtomicBool::new(false);

/// Process-wide switch for rayon-backed tensor evaluation.
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

pub(crate) fn tabulate<F>(len: usize, f: F) -> Vec<C64>
where
    F: Fn(usize) -> C64 + Sync + Send,
{
    if parallel_enabled() {
        (0..len).into_par_iter().map(f).collect()
    } else {
        (0..len).map(f).collect()
    }
}

/// Decodes a flat index into `slots` digits base `dim`, most significant first.
pub(crate) fn decode(mut flat: usize, dim: usize, slots: usize) -> Vec<usize> {
    let mut idx = vec![0; slots];
    for s in (0..slots).rev() {
        idx[s] = flat % dim;
        flat /= dim;
    }
    idx
}

pub(crate) fn encode(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}
