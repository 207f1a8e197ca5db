//! Deterministic chunked execution.
//!
//! Hot loops reduce over fixed-size index chunks whose boundaries depend only
//! on the input length, never on thread count. Each chunk is accumulated
//! sequentially and the per-chunk partials are combined in chunk order, so a
//! parallel run is bit-identical to a sequential one.

use std::ops::Range;

const MIN_CHUNK: usize = 4096;
const MAX_CHUNKS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Seq,
    #[cfg(feature = "parallel")]
    Par,
}

fn chunk_ranges(n: usize) -> Vec<Range<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let len = MIN_CHUNK.max(n.div_ceil(MAX_CHUNKS));
    (0..n.div_ceil(len))
        .map(|i| i * len..((i + 1) * len).min(n))
        .collect()
}

/// Evaluates `f` over fixed chunks of `0..n` and returns the partials in
/// chunk order.
pub(crate) fn chunk_partials<T, F>(mode: Mode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let ranges = chunk_ranges(n);
    match mode {
        Mode::Seq => ranges.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Mode::Par => {
            use rayon::prelude::*;
            ranges.into_par_iter().map(f).collect()
        }
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub(crate) fn map_indexed<T, F>(mode: Mode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        Mode::Seq => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Mode::Par => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
    }
}
