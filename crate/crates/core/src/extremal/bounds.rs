//! Closed-form bounds on `g_n`, random sweeps against them, and the
//! recursion check `g_{n+1} ≤ g_n / (1 + g_n)` on search estimates.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::ConvexPolygon;

use super::random::sample_convex_polygon;
use super::search::{estimate_g, SearchConfig};

/// Relative slack on float comparisons against closed forms.
pub const BOUND_RTOL: f64 = 1e-12;
/// Allowed excess of `ĝ_{n+1}` over `ĝ_n / (1 + ĝ_n)`.
pub const RECURSION_SLACK: f64 = 5e-3;

/// `(4/n)·sin²(π/n)`, the smallest-ear ratio of the regular `n`-gon.
pub fn lower_bound(n: usize) -> f64 {
    let s = (PI / n as f64).sin();
    4.0 / n as f64 * s * s
}

/// `(4/n)·sin²(2π/n)`, valid for every convex `n`-gon.
pub fn circle_upper_bound(n: usize) -> f64 {
    let s = (2.0 * PI / n as f64).sin();
    4.0 / n as f64 * s * s
}

/// `min(1/n, (4/n)·sin²(2π/n))` for `n ≥ 6`; the `1/n` term is not a bound below 6.
pub fn upper_bound(n: usize) -> f64 {
    let c = circle_upper_bound(n);
    if n >= 6 {
        c.min(1.0 / n as f64)
    } else {
        c
    }
}

fn exceeds(value: f64, bound: f64) -> bool {
    value > bound * (1.0 + BOUND_RTOL)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub circle_upper: f64,
    /// Largest smallest-ear ratio over the random samples and the regular polygon.
    pub empirical_max_min_ear: f64,
    pub regular_ratio: f64,
    /// Random samples, not counting the regular polygon.
    pub samples: usize,
    pub seed: u64,
}

/// Sweeps `samples` random `n`-gons for each `n` and fails on the first
/// polygon whose smallest-ear ratio exceeds `(4/n)sin²(2π/n)` or, for
/// `n ≥ 6`, `1/n`. The regular polygon must sit on the lower bound.
pub fn verify_g_bounds(
    ns: impl IntoIterator<Item = usize>,
    samples: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    ns.into_iter().map(|n| sweep(n, samples, seed)).collect()
}

fn check_sample(n: usize, p: &ConvexPolygon<f64>) -> Result<f64> {
    let ratio = p.min_ear_ratio().1;
    let circle = circle_upper_bound(n);
    if exceeds(ratio, circle) {
        return Err(violation(n, ratio, circle, "(4/n)sin^2(2pi/n)", p));
    }
    if n >= 6 && exceeds(ratio, 1.0 / n as f64) {
        return Err(violation(n, ratio, 1.0 / n as f64, "1/n", p));
    }
    Ok(ratio)
}

fn violation(n: usize, ratio: f64, bound: f64, which: &'static str, p: &ConvexPolygon<f64>) -> Error {
    Error::BoundViolation { n, ratio, bound, which, polygon: p.to_json().to_string() }
}

fn sweep(n: usize, samples: usize, seed: u64) -> Result<BoundReport> {
    if n < 4 {
        return Err(Error::OutOfRange { n, m: n, min: 4, max: usize::MAX });
    }
    let regular = ConvexPolygon::<f64>::regular(n);
    let regular_ratio = check_sample(n, &regular)?;
    let lower = lower_bound(n);
    if (regular_ratio - lower).abs() > BOUND_RTOL * lower {
        return Err(violation(n, regular_ratio, lower, "regular polygon = (4/n)sin^2(pi/n)", &regular));
    }

    // Fixed-size chunks, each with its own stream, keep the sweep independent of thread count.
    const CHUNK: usize = 256;
    let chunks = samples.div_ceil(CHUNK);
    let maxima: Vec<f64> = super::install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32));
                rng.set_stream(c as u64);
                let count = CHUNK.min(samples - c * CHUNK);
                let mut best = 0.0f64;
                for _ in 0..count {
                    let p = sample_convex_polygon(n, &mut rng)?;
                    best = best.max(check_sample(n, &p)?);
                }
                Ok(best)
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let empirical = maxima.into_iter().fold(regular_ratio, f64::max);

    Ok(BoundReport {
        n,
        lower,
        upper: upper_bound(n),
        circle_upper: circle_upper_bound(n),
        empirical_max_min_ear: empirical,
        regular_ratio,
        samples,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecursionRow {
    pub n: usize,
    pub g_n: f64,
    pub g_next: f64,
    /// `ĝ_n / (1 + ĝ_n)`.
    pub bound: f64,
    /// `bound − ĝ_{n+1}`; negative beyond the slack means failure.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecursionTable {
    /// `(n, ĝ_n)` for every `n` in the range.
    pub estimates: Vec<(usize, f64)>,
    pub rows: Vec<RecursionRow>,
}

impl RecursionTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Estimates `g_n` for each `n` in `n_min..=n_max` with `template`'s search
/// settings and checks each consecutive pair.
pub fn verify_g_recursion(n_min: usize, n_max: usize, template: &SearchConfig) -> Result<RecursionTable> {
    if n_min < 4 || n_max <= n_min {
        return Err(Error::Config(format!("need 4 <= n_min < n_max, got {n_min}..{n_max}")));
    }
    let estimates = (n_min..=n_max)
        .map(|n| {
            let cfg = SearchConfig { n, m: None, parametrization: None, ..template.clone() };
            estimate_g(&cfg).map(|r| (n, r.estimate))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(recursion_rows(estimates))
}

/// Builds the table from given estimates; exposed for checking known values.
pub fn recursion_rows(estimates: Vec<(usize, f64)>) -> RecursionTable {
    let rows = estimates
        .windows(2)
        .map(|w| {
            let ((n, g_n), (_, g_next)) = (w[0], w[1]);
            let bound = g_n / (1.0 + g_n);
            let margin = bound - g_next;
            RecursionRow { n, g_n, g_next, bound, margin, holds: margin >= -RECURSION_SLACK }
        })
        .collect();
    RecursionTable { estimates, rows }
}
