//! Parametrized pentagon and hexagon families and their closed-form area formulas.
//!
//! Both families live in the canonical embedding `u = (1, 0)`, `v = (0, 2)`,
//! so that `u ∧ v = 1` and every area formula below is an area in these
//! coordinates.
//!
//! Pentagon `ABCDE`: `O` is the crossing of diagonals `AC` and `BD`,
//! `A = O + v`, `B = O − a·u`, `C = O − b·v`, `D = O + u`, `E = O + c·u + d·v`.
//!
//! Hexagon `ABCDEF`: `M`, `N`, `P` are the pairwise crossings of the long
//! diagonals, `u = MN`, `v = MP`, and
//! `A = M − a·u`, `B = M − b·v`, `C = N − c·(v − u)`, `D = N + d·u`,
//! `E = P + e·v`, `F = P + f·(v − u)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{triangle_area, ConvexPolygon, Vec2};
use crate::scalar::{sign_plus_sqrt5, snap_to_rational, Rational, Scalar};

pub const PENTAGON_LABELS: [char; 5] = ['A', 'B', 'C', 'D', 'E'];
pub const HEXAGON_LABELS: [char; 6] = ['A', 'B', 'C', 'D', 'E', 'F'];

/// Ear names in the order returned by [`PentagonParams::ear_formulas`].
pub const PENTAGON_EARS: [&str; 5] = ["ABC", "BCD", "CDE", "DEA", "EAB"];
pub const PENTAGON_TRIANGLES: [&str; 3] = ["ABD", "ACD", "BCE"];
pub const HEXAGON_EARS: [&str; 6] = ["ABC", "BCD", "CDE", "DEF", "EFA", "FAB"];
/// Quadrilaterals `Q₁…Q₄` in order.
pub const HEXAGON_QUADS: [&str; 4] = ["BCDF", "ACDE", "BDEF", "BCEF"];

/// Log-uniform sampling range for parameters in property sweeps.
pub const SAMPLE_RANGE: (f64, f64) = (1e-2, 1e2);

/// Denominator used when snapping sampled parameters to rationals.
pub const SAMPLE_DENOMINATOR: i64 = 1 << 30;

fn basis<S: Scalar>() -> (Vec2<S>, Vec2<S>) {
    (
        Vec2::new(S::one(), S::zero()),
        Vec2::new(S::zero(), S::from_i64(2)),
    )
}

fn combo<S: Scalar>(cu: S, cv: S) -> Vec2<S> {
    let (u, v) = basis::<S>();
    u.scale(&cu).add(&v.scale(&cv))
}

fn ensure_positive<S: Scalar>(name: &'static str, value: &S) -> Result<()> {
    if *value > S::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter { name, value: value.to_string() })
    }
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let (lo, hi) = SAMPLE_RANGE;
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Indices of polygon vertices for a label string such as `"BCDF"`.
fn label_indices(name: &str, labels: &[char]) -> Vec<usize> {
    name.chars()
        .map(|c| labels.iter().position(|&l| l == c).expect("known label"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PentagonParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> PentagonParams<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        ensure_positive("a", &a)?;
        ensure_positive("b", &b)?;
        ensure_positive("c", &c)?;
        ensure_positive("d", &d)?;
        Ok(Self { a, b, c, d })
    }

    pub fn as_array(&self) -> [S; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    /// Vertices `A, B, C, D, E` in the canonical embedding (no validation).
    pub fn vertices(&self) -> Vec<Vec2<S>> {
        let z = S::zero;
        vec![
            combo(z(), S::one()),
            combo(-self.a.clone(), z()),
            combo(z(), -self.b.clone()),
            combo(S::one(), z()),
            combo(self.c.clone(), self.d.clone()),
        ]
    }

    /// Concrete pentagon; fails with the offending vertex if not strictly convex.
    pub fn build(&self) -> Result<ConvexPolygon<S>> {
        ConvexPolygon::new(self.vertices())
    }

    /// `a + b + c + d + ab`.
    pub fn area_formula(&self) -> S {
        let Self { a, b, c, d } = self.clone();
        a.clone() + b.clone() + c + d + a * b
    }

    /// `(Δ(ABC), Δ(BCD), Δ(CDE), Δ(DEA), Δ(EAB))
    ///  = (a + ab, b + ab, b + d − bc, c + d − 1, a + c − ad)`.
    pub fn ear_formulas(&self) -> [S; 5] {
        let Self { a, b, c, d } = self.clone();
        let ab = a.clone() * b.clone();
        [
            a.clone() + ab.clone(),
            b.clone() + ab,
            b.clone() + d.clone() - b * c.clone(),
            c.clone() + d.clone() - S::one(),
            a.clone() + c - a * d,
        ]
    }

    /// `(Δ(ABD), Δ(ACD), Δ(BCE)) = (a + 1, b + 1, ab + ad + bc)`.
    pub fn triangle_formulas(&self) -> [S; 3] {
        let Self { a, b, c, d } = self.clone();
        [
            a.clone() + S::one(),
            b.clone() + S::one(),
            a.clone() * b.clone() + a * d + b * c,
        ]
    }

    /// `c ≤ 1`, `d ≤ 1` and `c + d ≤ 1 + a + ab`: what `Δ(DEA)` being the
    /// smallest ear forces on the parameters.
    pub fn satisfies_min_ear_constraints(&self) -> bool {
        let one = S::one();
        let Self { a, b, c, d } = self.clone();
        c <= one && d <= one && c + d <= one.clone() + a.clone() + a * b
    }

    /// Whether `Δ(DEA)` is no larger than any other ear (ties allowed).
    pub fn dea_is_min_ear(&self) -> bool {
        let ears = self.ear_formulas();
        ears.iter().all(|e| ears[3] <= *e)
    }

    pub fn dea_is_strict_min_ear(&self) -> bool {
        let ears = self.ear_formulas();
        ears.iter().enumerate().all(|(k, e)| k == 3 || ears[3] < *e)
    }

    /// `Δ(DEA) ≤ min(Δ(CDE), Δ(EAB))`.
    pub fn dea_below_neighbours(&self) -> bool {
        let ears = self.ear_formulas();
        ears[3] <= ears[2] && ears[3] <= ears[4]
    }

    /// `Δ(DEA) ≤ min(Δ(ABD), Δ(ACD))`.
    pub fn dea_below_diagonal_triangles(&self) -> bool {
        let ears = self.ear_formulas();
        let [abd, acd, _] = self.triangle_formulas();
        ears[3] <= abd && ears[3] <= acd
    }

    /// Recovers parameters from a pentagon whose vertices are labeled `A…E`.
    /// The canonical build of the result is an affine image of `polygon`.
    pub fn fit(polygon: &ConvexPolygon<S>) -> Result<Self> {
        if polygon.len() != 5 {
            return Err(Error::OutOfRange { n: polygon.len(), m: 5, min: 5, max: 5 });
        }
        let [pa, pb, pc, pd, pe] = [0, 1, 2, 3, 4].map(|k| polygon.vertex(k).clone());
        let o = line_intersection(&pa, &pc, &pb, &pd);
        let u = pd.sub(&o);
        let v = pa.sub(&o);
        let a = -project(&pb.sub(&o), &u);
        let b = -project(&pc.sub(&o), &v);
        let (c, d) = coordinates(&pe.sub(&o), &u, &v);
        Self::new(a, b, c, d)
    }
}

impl PentagonParams<Rational> {
    /// `(3 + √5)(c + d) ≤ 5 + √5 + 2a + 2b + 2ab`, decided exactly.
    pub fn quadrilateral_bound_holds(&self) -> bool {
        let Self { a, b, c, d } = self.clone();
        let two = Rational::from_i64(2);
        let cd = c + d;
        let p = Rational::from_i64(5) + two.clone() * (a.clone() + b.clone() + a * b)
            - Rational::from_i64(3) * cd.clone();
        let q = Rational::from_i64(1) - cd;
        sign_plus_sqrt5(&p, &q) >= 0
    }

    /// `max(Δ(ACD), Δ(BCE), Δ(BCD)) / area ≥ 1/√5`, decided exactly.
    pub fn triangle_bound_holds(&self) -> bool {
        let [_, acd, bce] = self.triangle_formulas();
        let bcd = self.ear_formulas()[1].clone();
        let best = [acd, bce, bcd].into_iter().max().expect("nonempty");
        sign_plus_sqrt5(&-self.area_formula(), &best) >= 0
    }
}

impl PentagonParams<f64> {
    /// Independent log-uniform draw of each parameter over [`SAMPLE_RANGE`].
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self { a: log_uniform(rng), b: log_uniform(rng), c: log_uniform(rng), d: log_uniform(rng) }
    }

    /// Snaps each parameter to a multiple of `1/SAMPLE_DENOMINATOR`.
    pub fn snapped(&self) -> Result<PentagonParams<Rational>> {
        let s = |x: f64| snap_to_rational(x, SAMPLE_DENOMINATOR);
        PentagonParams::new(s(self.a), s(self.b), s(self.c), s(self.d))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HexagonParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub e: S,
    pub f: S,
}

impl<S: Scalar> HexagonParams<S> {
    pub fn new(a: S, b: S, c: S, d: S, e: S, f: S) -> Result<Self> {
        ensure_positive("a", &a)?;
        ensure_positive("b", &b)?;
        ensure_positive("c", &c)?;
        ensure_positive("d", &d)?;
        ensure_positive("e", &e)?;
        ensure_positive("f", &f)?;
        Ok(Self { a, b, c, d, e, f })
    }

    pub fn from_array(p: [S; 6]) -> Result<Self> {
        let [a, b, c, d, e, f] = p;
        Self::new(a, b, c, d, e, f)
    }

    pub fn as_array(&self) -> [S; 6] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
            self.f.clone(),
        ]
    }

    /// Vertices `A…F` with `M` at the origin (no validation).
    pub fn vertices(&self) -> Vec<Vec2<S>> {
        let [a, b, c, d, e, f] = self.as_array();
        let one = S::one;
        vec![
            combo(-a, S::zero()),
            combo(S::zero(), -b),
            combo(one() + c.clone(), -c),
            combo(one() + d, S::zero()),
            combo(S::zero(), one() + e),
            combo(-f.clone(), one() + f),
        ]
    }

    pub fn build(&self) -> Result<ConvexPolygon<S>> {
        ConvexPolygon::new(self.vertices())
    }

    /// `1 + a + b + c + d + e + f + ab + bc + cd + de + ef + fa`.
    pub fn area_formula(&self) -> S {
        let p = self.as_array();
        let linear = p.iter().fold(S::one(), |acc, x| acc + x.clone());
        (0..6).fold(linear, |acc, k| acc + p[k].clone() * p[(k + 1) % 6].clone())
    }

    /// Ears `Δ(ABC) … Δ(FAB)`; the ear at vertex `k` is `x_k(x_{k−1} + x_{k+1} + 1) − x_{k−1}x_{k+1}`
    /// with the cyclic parameter order `a, b, c, d, e, f` and the ear at `B` first.
    pub fn ear_formulas(&self) -> [S; 6] {
        let p = self.as_array();
        let ear = |k: usize| {
            let prev = p[(k + 5) % 6].clone();
            let next = p[(k + 1) % 6].clone();
            p[k].clone() * (prev.clone() + next.clone() + S::one()) - prev * next
        };
        [ear(1), ear(2), ear(3), ear(4), ear(5), ear(0)]
    }

    /// `Δ(FAB) = a(1 + b + f) − bf`.
    pub fn fab_formula(&self) -> S {
        let Self { a, b, f, .. } = self.clone();
        a * (S::one() + b.clone() + f.clone()) - b * f
    }

    /// `(Q₁, Q₂, Q₃, Q₄) = (Δ(BCDF), Δ(ACDE), Δ(BDEF), Δ(BCEF))` in closed form.
    pub fn quad_formulas(&self) -> [S; 4] {
        let [a, b, c, d, e, f] = self.as_array();
        let m = |x: &S, y: &S| x.clone() * y.clone();
        let sum = |xs: [&S; 4]| xs.iter().fold(S::one(), |acc, x| acc + (*x).clone());
        [
            sum([&b, &c, &d, &f]) + m(&b, &c) + m(&c, &d) + m(&b, &f) + m(&d, &f),
            sum([&c, &d, &e, &a]) + m(&c, &d) + m(&d, &e) + m(&c, &a) + m(&e, &a),
            sum([&d, &e, &f, &b]) + m(&d, &e) + m(&e, &f) + m(&d, &b) + m(&f, &b),
            sum([&b, &c, &e, &f]) + m(&b, &c) + m(&e, &f) + m(&b, &f) + m(&c, &e),
        ]
    }

    /// `T_i = 3Q_i − 2H`.
    pub fn t_values(&self) -> [S; 4] {
        let h = self.area_formula();
        self.quad_formulas()
            .map(|q| S::from_i64(3) * q - S::from_i64(2) * h.clone())
    }

    /// Recovers parameters from a hexagon labeled `A…F`. Fails when the long
    /// diagonals meet in the opposite orientation (some parameter ≤ 0).
    pub fn fit(polygon: &ConvexPolygon<S>) -> Result<Self> {
        if polygon.len() != 6 {
            return Err(Error::OutOfRange { n: polygon.len(), m: 6, min: 6, max: 6 });
        }
        let [pa, pb, pc, pd, pe, pf] = [0, 1, 2, 3, 4, 5].map(|k| polygon.vertex(k).clone());
        let m = line_intersection(&pa, &pd, &pb, &pe);
        let n = line_intersection(&pa, &pd, &pc, &pf);
        let p = line_intersection(&pc, &pf, &pb, &pe);
        let u = n.sub(&m);
        let v = p.sub(&m);
        let w = v.sub(&u);
        Self::new(
            -project(&pa.sub(&m), &u),
            -project(&pb.sub(&m), &v),
            -project(&pc.sub(&n), &w),
            project(&pd.sub(&n), &u),
            project(&pe.sub(&p), &v),
            project(&pf.sub(&p), &w),
        )
    }
}

impl HexagonParams<f64> {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            a: log_uniform(rng),
            b: log_uniform(rng),
            c: log_uniform(rng),
            d: log_uniform(rng),
            e: log_uniform(rng),
            f: log_uniform(rng),
        }
    }

    pub fn snapped(&self) -> Result<HexagonParams<Rational>> {
        HexagonParams::from_array(self.as_array().map(|x| snap_to_rational(x, SAMPLE_DENOMINATOR)))
    }
}

/// Wedge-computed area of the sub-polygon named by `labels` (e.g. `"BCDF"`).
pub fn labeled_area<S: Scalar>(polygon: &ConvexPolygon<S>, name: &str, labels: &[char]) -> S {
    let idx = label_indices(name, labels);
    if idx.len() == 3 {
        let v = polygon.vertices();
        return triangle_area(&v[idx[0]], &v[idx[1]], &v[idx[2]]);
    }
    polygon.select(&idx).area()
}

/// Crossing point of lines `p1p2` and `q1q2` (assumed non-parallel).
fn line_intersection<S: Scalar>(p1: &Vec2<S>, p2: &Vec2<S>, q1: &Vec2<S>, q2: &Vec2<S>) -> Vec2<S> {
    let r = p2.sub(p1);
    let s = q2.sub(q1);
    let t = q1.sub(p1).cross(&s) / r.cross(&s);
    p1.add(&r.scale(&t))
}

/// Scalar `k` with `x = k·dir` for `x` parallel to `dir`.
fn project<S: Scalar>(x: &Vec2<S>, dir: &Vec2<S>) -> S {
    let dot = |p: &Vec2<S>, q: &Vec2<S>| p.x.clone() * q.x.clone() + p.y.clone() * q.y.clone();
    dot(x, dir) / dot(dir, dir)
}

/// Coordinates `(c, d)` of `x = c·u + d·v`.
fn coordinates<S: Scalar>(x: &Vec2<S>, u: &Vec2<S>, v: &Vec2<S>) -> (S, S) {
    let det = u.cross(v);
    (x.cross(v) / det.clone(), u.cross(x) / det)
}
