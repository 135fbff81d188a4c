//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel loop in the crate goes through [`map_collect`] so that the
//! result order is the input order regardless of how work is scheduled.
//! Without the `parallel` feature, [`Execution::Parallel`] silently runs
//! sequentially.

/// How data-parallel loops are executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `0..len`, returning results in index order.
pub fn map_collect<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Maps `f` over a slice, returning results in slice order.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Send + Sync,
{
    map_collect(exec, items.len(), |i| f(&items[i]))
}

/// Fills `out` chunk by chunk; `f` receives the chunk and its starting offset.
pub fn fill_chunks<T, F>(exec: Execution, out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T], usize) + Send + Sync,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            out.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(c, i * chunk));
            return;
        }
    }
    let _ = exec;
    for (i, c) in out.chunks_mut(chunk).enumerate() {
        f(c, i * chunk);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let a = map_collect(Execution::Parallel, 1000, |i| i * 3);
        let b = map_collect(Execution::Sequential, 1000, |i| i * 3);
        assert_eq!(a, b);
    }

    #[test]
    fn chunks_cover_everything() {
        let mut v = vec![0usize; 103];
        fill_chunks(Execution::Parallel, &mut v, 10, |c, off| {
            for (j, x) in c.iter_mut().enumerate() {
                *x = off + j;
            }
        });
        assert!(v.iter().enumerate().all(|(i, &x)| i == x));
    }
}
