//! Random convex polygons by Valtr's chain construction.
//!
//! Coordinates are drawn on the integer grid `{0, …, GRID}` and divided by
//! `GRID = 2^24`, so the float and exact versions of a draw are the same
//! polygon (the division is exact in `f64`).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Vec2};
use crate::scalar::Rational;

pub const GRID: i64 = 1 << 24;

/// Redraws allowed before giving up on a degenerate sample.
pub const MAX_ATTEMPTS: usize = 1000;

/// Seeded float polygon in the unit square.
pub fn random_convex_polygon(n: usize, seed: u64) -> Result<ConvexPolygon<f64>> {
    sample_convex_polygon(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The same draw as [`random_convex_polygon`], with exact coordinates.
pub fn random_convex_polygon_exact(n: usize, seed: u64) -> Result<ConvexPolygon<Rational>> {
    sample_convex_polygon_exact(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn sample_convex_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ConvexPolygon<f64>> {
    let pts = sample_lattice_polygon(n, rng)?;
    Ok(to_float(&pts))
}

pub fn sample_convex_polygon_exact<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<ConvexPolygon<Rational>> {
    let pts = sample_lattice_polygon(n, rng)?;
    Ok(to_exact(&pts))
}

/// Integer vertices, counterclockwise, strictly convex in both modes.
pub fn sample_lattice_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<(i64, i64)>> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    for _ in 0..MAX_ATTEMPTS {
        if let Some(pts) = valtr_attempt(n, rng) {
            // The float kernel is stricter than exact arithmetic near collinearity.
            if ConvexPolygon::new(float_vertices(&pts)).is_ok() {
                return Ok(pts);
            }
        }
    }
    panic!("no strictly convex {n}-gon after {MAX_ATTEMPTS} draws")
}

fn float_vertices(pts: &[(i64, i64)]) -> Vec<Vec2<f64>> {
    let g = GRID as f64;
    pts.iter().map(|&(x, y)| Vec2::new(x as f64 / g, y as f64 / g)).collect()
}

fn to_float(pts: &[(i64, i64)]) -> ConvexPolygon<f64> {
    ConvexPolygon::new(float_vertices(pts)).expect("lattice polygon was checked in float mode")
}

fn to_exact(pts: &[(i64, i64)]) -> ConvexPolygon<Rational> {
    let g = BigInt::from(GRID);
    let vs = pts
        .iter()
        .map(|&(x, y)| {
            Vec2::new(Rational::new(x.into(), g.clone()), Rational::new(y.into(), g.clone()))
        })
        .collect();
    ConvexPolygon::new(vs).expect("lattice polygon is strictly convex")
}

fn distinct_sorted<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<i64> {
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(rng.random_range(0..=GRID));
    }
    set.into_iter().collect()
}

/// Splits sorted values into two monotone chains between the extremes and
/// returns the `n` signed gaps, which sum to zero.
fn chain_components<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<i64> {
    let xs = distinct_sorted(n, rng);
    let (lo, hi) = (xs[0], xs[n - 1]);
    let mut out = Vec::with_capacity(n);
    let (mut last_a, mut last_b) = (lo, lo);
    for &x in &xs[1..n - 1] {
        if rng.random_bool(0.5) {
            out.push(x - last_a);
            last_a = x;
        } else {
            out.push(last_b - x);
            last_b = x;
        }
    }
    out.push(hi - last_a);
    out.push(last_b - hi);
    out
}

fn half(v: (i64, i64)) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn valtr_attempt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<Vec<(i64, i64)>> {
    let dx = chain_components(n, rng);
    let mut dy = chain_components(n, rng);
    dy.shuffle(rng);
    let mut edges: Vec<(i64, i64)> = dx.into_iter().zip(dy).collect();
    edges.sort_by(|a, b| angle_cmp(*a, *b));

    // Parallel consecutive edges would leave a straight angle.
    for k in 0..n {
        let (a, b) = (edges[k], edges[(k + 1) % n]);
        if cross(a, b) <= 0 {
            return None;
        }
    }

    let mut pts = Vec::with_capacity(n);
    let (mut x, mut y) = (0i64, 0i64);
    for e in &edges {
        pts.push((x, y));
        x += e.0;
        y += e.1;
    }
    let min_x = pts.iter().map(|p| p.0).min().expect("nonempty");
    let min_y = pts.iter().map(|p| p.1).min().expect("nonempty");
    for p in &mut pts {
        p.0 -= min_x;
        p.1 -= min_y;
    }
    Some(pts)
}
