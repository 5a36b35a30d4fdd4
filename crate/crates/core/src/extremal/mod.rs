//! Numerical search for the extremal ratios `f_n(m)` and `g_n`, random
//! convex polygons, and empirical checks of the bounds on `g_n`.

pub mod bounds;
pub mod nelder_mead;
pub mod random;
pub mod search;

pub use bounds::{
    circle_upper_bound, lower_bound, upper_bound, verify_g_bounds, verify_g_recursion, BoundReport,
    RecursionRow, RecursionTable,
};
pub use random::{random_convex_polygon, random_convex_polygon_exact};
pub use search::{estimate_f, estimate_g, Parametrization, SearchConfig, SearchResult};

/// Worker cap read from the environment.
pub const THREADS_ENV: &str = "POLYGAP_THREADS";

/// Runs `op` on a pool sized by `POLYGAP_THREADS` when that is set to a
/// positive integer, otherwise on rayon's global pool.
pub fn install<R: Send>(op: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match threads.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(op),
        None => op(),
    }
}

/// Proven values: `f_4(3)`, `f_5(3)`, `f_5(4)`, `f_6(3)`, `f_6(4)`, `f_6(5)`.
pub fn known_f(n: usize, m: usize) -> Option<f64> {
    let r5 = 5f64.sqrt();
    match (n, m) {
        (4, 3) => Some(0.5),
        (5, 3) => Some(1.0 / r5),
        (5, 4) => Some((5.0 + r5) / 10.0),
        (6, 3) => Some(4.0 / 9.0),
        (6, 4) => Some(2.0 / 3.0),
        (6, 5) => Some(5.0 / 6.0),
        _ => None,
    }
}

/// `g_n = 1 − f_n(n − 1)` where that is known.
pub fn known_g(n: usize) -> Option<f64> {
    if n < 4 {
        return None;
    }
    known_f(n, n - 1).map(|f| 1.0 - f)
}
