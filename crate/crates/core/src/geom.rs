//! Planar geometry kernel: vectors, the half-cross-product `wedge`, convex
//! polygons with their ears, and affine maps.
//!
//! Everything is generic over [`Scalar`], so the same code runs on exact
//! rationals (verification) and on `f64` (search).

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(S::from_i64(x), S::from_i64(y))
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// Full 2-D cross product `x₁y₂ − y₁x₂` (twice the wedge).
    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn to_f64(&self) -> Vec2<f64> {
        Vec2::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl<S: fmt::Display> fmt::Display for Vec2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Outer product `u ∧ v = ½(u.x·v.y − u.y·v.x)`: the signed area of the
/// triangle spanned by `u` and `v`, positive when `v` is counterclockwise of `u`.
pub fn wedge<S: Scalar>(u: &Vec2<S>, v: &Vec2<S>) -> S {
    u.cross(v) / S::from_i64(2)
}

/// Signed area of triangle `abc`.
pub fn triangle_area<S: Scalar>(a: &Vec2<S>, b: &Vec2<S>, c: &Vec2<S>) -> S {
    wedge(&b.sub(a), &c.sub(a))
}

/// Strictly convex polygon with counterclockwise vertices.
///
/// Construction validates every turn, rejects repeated vertices and checks
/// that the boundary winds exactly once.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<S> {
    vertices: Vec<Vec2<S>>,
}

impl<S: Scalar> ConvexPolygon<S> {
    pub fn new(vertices: Vec<Vec2<S>>) -> Result<Self> {
        validate(&vertices)?;
        Ok(Self { vertices })
    }

    /// Skips validation; for sub-polygons of an already validated polygon.
    pub(crate) fn from_trusted(vertices: Vec<Vec2<S>>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec2<S>] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> &Vec2<S> {
        &self.vertices[k % self.len()]
    }

    /// Polygon area as the shoelace sum `Σ A_k ∧ A_{k+1}`.
    pub fn area(&self) -> S {
        self.area_about(&Vec2::zero())
    }

    /// Shoelace sum taken about an arbitrary anchor; equal to [`Self::area`].
    pub fn area_about(&self, anchor: &Vec2<S>) -> S {
        let n = self.len();
        (0..n).fold(S::zero(), |acc, k| {
            let p = self.vertices[k].sub(anchor);
            let q = self.vertices[(k + 1) % n].sub(anchor);
            acc + wedge(&p, &q)
        })
    }

    /// Area of ear `k`, the triangle `A_{k−1} A_k A_{k+1}` (cyclic, 0-based).
    pub fn ear(&self, k: usize) -> S {
        let n = self.len();
        triangle_area(
            &self.vertices[(k + n - 1) % n],
            &self.vertices[k % n],
            &self.vertices[(k + 1) % n],
        )
    }

    pub fn ear_areas(&self) -> Vec<S> {
        (0..self.len()).map(|k| self.ear(k)).collect()
    }

    /// Smallest ear as `(index, ear area / polygon area)`. Ties (exact, or within
    /// the float tie tolerance) go to the smallest index.
    pub fn min_ear_ratio(&self) -> (usize, S) {
        let ears = self.ear_areas();
        let mut best = 0;
        for (k, ear) in ears.iter().enumerate().skip(1) {
            if S::clearly_greater(&ears[best], ear) {
                best = k;
            }
        }
        (best, ears[best].clone() / self.area())
    }

    /// Largest absolute coordinate; the scale used by float convexity checks.
    pub fn scale(&self) -> S {
        coordinate_scale(&self.vertices)
    }

    /// Polygon on the given vertex indices, which must be strictly increasing.
    pub fn select(&self, indices: &[usize]) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self::from_trusted(indices.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// Same polygon with vertex `k` deleted.
    pub fn without_vertex(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.remove(k);
        Self::from_trusted(vertices)
    }

    pub fn to_f64(&self) -> ConvexPolygon<f64> {
        ConvexPolygon::from_trusted(self.vertices.iter().map(Vec2::to_f64).collect())
    }

    pub fn to_json(&self) -> Value {
        let vs: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| json!([v.x.to_json(), v.y.to_json()]))
            .collect();
        json!({ "vertices": vs })
    }
}

impl ConvexPolygon<f64> {
    /// Regular `n`-gon with circumradius 1 and vertex 0 at `(1, 0)`.
    pub fn regular(n: usize) -> Self {
        assert!(n >= 3, "regular polygon needs n >= 3");
        let vertices = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                Vec2::new(t.cos(), t.sin())
            })
            .collect();
        Self::from_trusted(vertices)
    }
}

fn coordinate_scale<S: Scalar>(vertices: &[Vec2<S>]) -> S {
    vertices.iter().fold(S::zero(), |acc, v| {
        S::max_of(S::max_of(acc, v.x.magnitude()), v.y.magnitude())
    })
}

fn validate<S: Scalar>(vertices: &[Vec2<S>]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if vertices[i] == vertices[j] {
                return Err(Error::RepeatedVertex { first: i, second: j });
            }
        }
    }
    let scale = coordinate_scale(vertices);
    for k in 0..n {
        let prev = &vertices[(k + n - 1) % n];
        let cur = &vertices[k];
        let next = &vertices[(k + 1) % n];
        let turn = cur.sub(prev).cross(&next.sub(cur));
        if !S::is_left_turn(&turn, &scale) {
            return Err(Error::NotConvex { vertex: k });
        }
    }
    // Every left turn plus a monotone fan from vertex 0 rules out double winding.
    let origin = &vertices[0];
    for k in 1..n - 1 {
        let fan = vertices[k].sub(origin).cross(&vertices[k + 1].sub(origin));
        if !S::is_left_turn(&fan, &scale) {
            return Err(Error::NotSimple { vertex: k });
        }
    }
    Ok(())
}

/// Affine map `x ↦ L·x + t` with a nondegenerate linear part.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<S> {
    linear: [[S; 2]; 2],
    translation: Vec2<S>,
}

impl<S: Scalar> AffineMap<S> {
    /// `linear` is row-major: `[[a, b], [c, d]]` maps `(x, y)` to `(ax + by, cx + dy)`.
    pub fn new(linear: [[S; 2]; 2], translation: Vec2<S>) -> Result<Self> {
        let map = Self { linear, translation };
        let det = map.det();
        let degenerate = if S::EXACT {
            det.is_zero()
        } else {
            det.magnitude().to_f64() <= 1e-12
        };
        if degenerate {
            return Err(Error::DegenerateMap { det: det.to_string() });
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        Self::new(
            [[S::one(), S::zero()], [S::zero(), S::one()]],
            Vec2::zero(),
        )
        .expect("identity is nondegenerate")
    }

    pub fn det(&self) -> S {
        let [[a, b], [c, d]] = &self.linear;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn apply_point(&self, p: &Vec2<S>) -> Vec2<S> {
        let [[a, b], [c, d]] = &self.linear;
        Vec2::new(
            a.clone() * p.x.clone() + b.clone() * p.y.clone() + self.translation.x.clone(),
            c.clone() * p.x.clone() + d.clone() * p.y.clone() + self.translation.y.clone(),
        )
    }

    /// Image of `polygon`. An orientation-reversing map is followed by the
    /// relabeling `k ↦ −k (mod n)`, which keeps vertex 0 first and restores
    /// counterclockwise order.
    pub fn apply(&self, polygon: &ConvexPolygon<S>) -> Result<ConvexPolygon<S>> {
        let n = polygon.len();
        let image: Vec<Vec2<S>> = polygon.vertices().iter().map(|p| self.apply_point(p)).collect();
        let vertices = if self.det() < S::zero() {
            (0..n).map(|k| image[(n - k) % n].clone()).collect()
        } else {
            image
        };
        ConvexPolygon::new(vertices)
    }
}

/// A polygon read from JSON, in whichever mode its numbers were written.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPolygon {
    Exact(ConvexPolygon<Rational>),
    Float(ConvexPolygon<f64>),
}

impl AnyPolygon {
    /// Parses `{"vertices": [[x, y], ...]}`. All-number coordinates give a
    /// float polygon; all-string `"p/q"` coordinates give an exact one.
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::PolygonFile(msg.to_string());
        let list = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vertices\" array"))?;
        let mut coords = Vec::with_capacity(list.len() * 2);
        for v in list {
            let pair = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("vertex must be [x, y]"))?;
            coords.extend(pair.iter().cloned());
        }
        if coords.iter().all(Value::is_number) {
            let xs: Vec<f64> = coords.iter().map(|c| c.as_f64().unwrap_or(f64::NAN)).collect();
            if xs.iter().any(|x| !x.is_finite()) {
                return Err(bad("non-finite coordinate"));
            }
            let vertices = xs.chunks(2).map(|c| Vec2::new(c[0], c[1])).collect();
            Ok(Self::Float(ConvexPolygon::new(vertices)?))
        } else if coords.iter().all(Value::is_string) {
            let qs = coords
                .iter()
                .map(|c| <Rational as Scalar>::parse(c.as_str().unwrap_or_default()))
                .collect::<Result<Vec<_>>>()?;
            let vertices = qs.chunks(2).map(|c| Vec2::new(c[0].clone(), c[1].clone())).collect();
            Ok(Self::Exact(ConvexPolygon::new(vertices)?))
        } else {
            Err(bad("coordinates must be all numbers (float mode) or all strings (exact mode)"))
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Exact(p) => p.len(),
            Self::Float(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Exact(p) => p.to_json(),
            Self::Float(p) => p.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn qv(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::from_ints(x, y)
    }

    fn unit_square() -> ConvexPolygon<Rational> {
        ConvexPolygon::new(vec![qv(0, 0), qv(1, 0), qv(1, 1), qv(0, 1)]).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&qv(1, 0), &qv(0, 1)), q(1, 2));
        assert_eq!(wedge(&qv(2, 1), &qv(2, 1)), Rational::zero());
        assert_eq!(wedge(&qv(2, 1), &qv(3, 4)), q(5, 2));
    }

    #[test]
    fn area_examples() {
        assert_eq!(unit_square().area(), Rational::one());
        let tri = ConvexPolygon::new(vec![qv(0, 0), qv(1, 0), qv(0, 1)]).unwrap();
        assert_eq!(tri.area(), q(1, 2));
        let hex = ConvexPolygon::regular(6);
        assert!((hex.area() - 1.5 * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn ears_of_square_and_hexagon() {
        assert_eq!(unit_square().ear_areas(), vec![q(1, 2); 4]);
        let hex = ConvexPolygon::regular(6);
        let h = hex.area();
        for ear in hex.ear_areas() {
            assert!(((ear - h / 6.0) / (h / 6.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn min_ear_ratio_examples() {
        assert_eq!(unit_square().min_ear_ratio(), (0, q(1, 2)));
        let (k, r) = ConvexPolygon::regular(6).min_ear_ratio();
        assert_eq!(k, 0);
        assert!((r - 1.0 / 6.0).abs() < 1e-14);
        for n in 3..=40 {
            let (_, r) = ConvexPolygon::regular(n).min_ear_ratio();
            let s = (std::f64::consts::PI / n as f64).sin();
            let expect = 4.0 / n as f64 * s * s;
            assert!((r - expect).abs() < 1e-12, "n={n}: {r} vs {expect}");
        }
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(matches!(
            ConvexPolygon::new(vec![qv(0, 0), qv(1, 0)]),
            Err(Error::TooFewVertices(2))
        ));
        // clockwise
        assert!(matches!(
            ConvexPolygon::new(vec![qv(0, 0), qv(0, 1), qv(1, 1), qv(1, 0)]),
            Err(Error::NotConvex { .. })
        ));
        // collinear middle vertex
        assert!(matches!(
            ConvexPolygon::new(vec![qv(0, 0), qv(1, 0), qv(2, 0), qv(1, 1)]),
            Err(Error::NotConvex { vertex: 1 })
        ));
        assert!(matches!(
            ConvexPolygon::new(vec![qv(0, 0), qv(1, 0), qv(1, 1), qv(1, 0)]),
            Err(Error::RepeatedVertex { .. })
        ));
        // pentagram: every turn is left but it winds twice
        let star: Vec<Vec2<f64>> = (0..5)
            .map(|k| {
                let t = 4.0 * std::f64::consts::PI * k as f64 / 5.0;
                Vec2::new(t.cos(), t.sin())
            })
            .collect();
        assert!(matches!(ConvexPolygon::new(star), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn float_convexity_is_scale_aware() {
        let big = 1e9;
        let nearly_flat = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(big, 0.0),
            Vec2::new(2.0 * big, 1e-3),
            Vec2::new(big, big),
        ];
        assert!(ConvexPolygon::new(nearly_flat).is_err());
        let fine = vec![Vec2::new(0.0, 0.0), Vec2::new(big, 0.0), Vec2::new(0.0, big)];
        assert!(ConvexPolygon::new(fine).is_ok());
    }

    #[test]
    fn affine_examples() {
        let sq = unit_square();
        assert_eq!(AffineMap::identity().apply(&sq).unwrap(), sq);
        let two = Rational::from_i64(2);
        let scale = AffineMap::new(
            [[two.clone(), Rational::zero()], [Rational::zero(), two]],
            Vec2::zero(),
        )
        .unwrap();
        assert_eq!(scale.apply(&sq).unwrap().area(), Rational::from_i64(4));

        let shear = AffineMap::new(
            [[Rational::one(), Rational::one()], [Rational::zero(), Rational::one()]],
            Vec2::zero(),
        )
        .unwrap();
        let p = ConvexPolygon::new(vec![qv(0, 0), qv(4, 1), qv(5, 3), qv(2, 5), qv(-1, 2)]).unwrap();
        assert_eq!(shear.apply(&p).unwrap().min_ear_ratio(), p.min_ear_ratio());
    }

    #[test]
    fn degenerate_map_rejected() {
        let m = AffineMap::new(
            [[Rational::one(), Rational::from_i64(2)], [Rational::from_i64(2), Rational::from_i64(4)]],
            Vec2::zero(),
        );
        assert!(matches!(m, Err(Error::DegenerateMap { .. })));
        let f = AffineMap::new([[1.0, 0.0], [0.0, 1e-13]], Vec2::zero());
        assert!(f.is_err());
    }

    #[test]
    fn reflection_restores_orientation() {
        let p = ConvexPolygon::new(vec![qv(0, 0), qv(4, 1), qv(5, 3), qv(2, 5), qv(-1, 2)]).unwrap();
        let mirror = AffineMap::new(
            [[-Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]],
            Vec2::zero(),
        )
        .unwrap();
        let img = mirror.apply(&p).unwrap();
        assert_eq!(img.area(), p.area());
        assert_eq!(img.vertex(0), &qv(0, 0));
        let (k, r) = p.min_ear_ratio();
        let (k2, r2) = img.min_ear_ratio();
        assert_eq!(r, r2);
        assert_eq!(k2, (p.len() - k) % p.len());
    }

    #[test]
    fn json_modes() {
        let f = AnyPolygon::from_json_str(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        assert!(matches!(f, AnyPolygon::Float(_)));
        let e = AnyPolygon::from_json_str(r#"{"vertices": [["0","0"],["1/2","0"],["0","1/3"]]}"#).unwrap();
        match &e {
            AnyPolygon::Exact(p) => assert_eq!(p.area(), q(1, 12)),
            _ => panic!("expected exact"),
        }
        let back = AnyPolygon::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        assert!(AnyPolygon::from_json_str(r#"{"vertices": [[0,"0"],[1,0],[0,1]]}"#).is_err());
        assert!(AnyPolygon::from_json_str(r#"{"points": []}"#).is_err());
    }
}
