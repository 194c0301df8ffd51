//! Data-parallel map over replica indices and grids.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it everything runs on the calling thread. Results always come back
//! in index order, so outputs do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sequential `(0..count).map(f)`.
pub fn map_indices_sequential<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_indices_parallel<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

/// `(0..count).map(f)` using the configured backend.
pub fn map_indices<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_indices_parallel(count, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indices_sequential(count, f)
    }
}

/// `items.iter().map(f)` using the configured backend.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_indices(items.len(), |i| f(&items[i]))
}

/// Collect a vector of results, keeping the first error in index order.
pub fn collect_results<T, E>(results: Vec<Result<T, E>>) -> Result<Vec<T>, E> {
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = map_indices(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        assert_eq!(v, map_indices_sequential(1000, |i| i * i));
    }
}
