//! ω_L on a grid, one slab per task across a scoped thread pool.

use std::thread;

use triplelink_core::charfield::{Grid3, OmegaField, OmegaKernel};
use triplelink_core::linkmodel::Link3;

/// `TRIPLELINK_THREADS` if set to a positive integer, else the machine's
/// available parallelism.
pub fn thread_count() -> usize {
    threads_from(std::env::var("TRIPLELINK_THREADS").ok().as_deref())
}

fn threads_from(var: Option<&str>) -> usize {
    var.and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Same values as [`triplelink_core::charfield::omega_grid`], bit for bit,
/// for any thread count.
pub fn omega_grid(link: &Link3, n: usize) -> OmegaField {
    omega_grid_with(link, n, thread_count())
}

pub fn omega_grid_with(link: &Link3, n: usize, threads: usize) -> OmegaField {
    let ker = OmegaKernel::new(link, n);
    let m = n * n;
    let (mut a, mut b, mut c) = (vec![0.0; n * m], vec![0.0; n * m], vec![0.0; n * m]);
    let per = n.div_ceil(threads.clamp(1, n));
    thread::scope(|scope| {
        for (chunk, ((ca, cb), cc)) in a.chunks_mut(per * m).zip(b.chunks_mut(per * m)).zip(c.chunks_mut(per * m)).enumerate() {
            let ker = &ker;
            scope.spawn(move || {
                for (k, ((sa, sb), sc)) in ca.chunks_mut(m).zip(cb.chunks_mut(m)).zip(cc.chunks_mut(m)).enumerate() {
                    ker.fill_slab(chunk * per + k, sa, sb, sc);
                }
            });
        }
    });
    OmegaField { a: Grid3::new(n, a), b: Grid3::new(n, b), c: Grid3::new(n, c) }
}
