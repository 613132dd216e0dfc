//! Data-parallel substrate for the brute-force axiom scans.
//!
//! Every checker enumerates basis tuples, evaluates independently per tuple
//! and collects in input order, so results are identical with and without the
//! `parallel` feature. Disable default features to force the sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice, parallel when the `parallel` feature is
/// enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Always-sequential variant, kept for benchmark comparisons.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// All index pairs `(i, j)` below the given bounds, row-major.
pub fn index_pairs(n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            out.push((i, j));
        }
    }
    out
}

/// All index triples below the given bounds, row-major.
pub fn index_triples(n: usize, m: usize, k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * m * k);
    for i in 0..n {
        for j in 0..m {
            for l in 0..k {
                out.push((i, j, l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<usize> = (0..1000).collect();
        let a = map_collect(&items, |&x| x * x);
        let b = map_collect_seq(&items, |&x| x * x);
        assert_eq!(a, b);
    }
}
