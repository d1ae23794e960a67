//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) independent work items are mapped
//! with rayon; without it, or after [`set_parallel(false)`], the same closures
//! run sequentially. Results are always returned in input order, so outputs do
//! not depend on the execution mode.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Toggle parallel execution at runtime. Has no effect when the crate is
/// built without the `parallel` feature.
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::SeqCst);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::SeqCst)
}

/// Map `f` over `items`, preserving order.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Map a fallible `f` over `items`; the first error in input order wins.
pub fn try_par_map<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let items: Vec<u64> = (0..200).collect();
        let par = par_map(&items, |x| x * x);
        set_parallel(false);
        let seq = par_map(&items, |x| x * x);
        set_parallel(true);
        assert_eq!(par, seq);
        assert_eq!(par[17], 289);
    }

    #[test]
    fn first_error_wins() {
        let items = vec![1, 2, 3, 4];
        let r: Result<Vec<i32>, i32> = try_par_map(&items, |&x| if x >= 2 { Err(x) } else { Ok(x) });
        assert_eq!(r, Err(2));
    }
}
