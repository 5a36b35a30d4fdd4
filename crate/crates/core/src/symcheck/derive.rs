//! Symbolic re-derivation of the pentagon and hexagon area formulas from
//! edge vectors written in the basis `u`, `v` with `u ∧ v = 1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::parse::parse_poly;
use super::poly::MultiPoly;
use crate::scalar::Rational;

/// Formal vector `coeff_u·u + coeff_v·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymVec2 {
    pub coeff_u: MultiPoly,
    pub coeff_v: MultiPoly,
}

impl SymVec2 {
    pub fn new(coeff_u: MultiPoly, coeff_v: MultiPoly) -> Self {
        Self { coeff_u, coeff_v }
    }

    /// Parses both coefficients, e.g. `SymVec2::parse("-a", "0")`.
    pub fn parse(coeff_u: &str, coeff_v: &str) -> Result<Self> {
        Ok(Self::new(parse_poly(coeff_u)?, parse_poly(coeff_v)?))
    }

    pub fn u() -> Self {
        Self::new(MultiPoly::one(), MultiPoly::zero())
    }

    pub fn v() -> Self {
        Self::new(MultiPoly::zero(), MultiPoly::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.coeff_u + &o.coeff_u, &self.coeff_v + &o.coeff_v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.coeff_u - &o.coeff_u, &self.coeff_v - &o.coeff_v)
    }

    pub fn scale(&self, k: &MultiPoly) -> Self {
        Self::new(&self.coeff_u * k, &self.coeff_v * k)
    }
}

/// `p ∧ q` under `u ∧ v = 1`: `p_u·q_v − p_v·q_u`.
pub fn sym_wedge(p: &SymVec2, q: &SymVec2) -> MultiPoly {
    &(&p.coeff_u * &q.coeff_v) - &(&p.coeff_v * &q.coeff_u)
}

/// Area of the polygon with the given vertices (position vectors), counterclockwise.
fn sym_area(points: &[&SymVec2]) -> MultiPoly {
    let n = points.len();
    (0..n).fold(MultiPoly::zero(), |acc, k| {
        &acc + &sym_wedge(points[k], points[(k + 1) % n])
    })
}

/// Ear / triangle `xyz` as `xy ∧ yz`.
fn sym_triangle(x: &SymVec2, y: &SymVec2, z: &SymVec2) -> MultiPoly {
    sym_wedge(&y.sub(x), &z.sub(y))
}

pub type FormulaSet = BTreeMap<String, MultiPoly>;

fn check(name: &str, derived: &MultiPoly, stated: &str) -> Result<()> {
    let stated_poly = parse_poly(stated)?;
    if *derived != stated_poly {
        return Err(Error::IdentityMismatch {
            name: name.to_string(),
            derived: derived.to_string(),
            stated: stated.to_string(),
        });
    }
    Ok(())
}

/// Closed forms for the pentagon family (area, ears, three triangles).
pub const PENTAGON_STATED: [(&str, &str); 9] = [
    ("area", "a+b+c+d+ab"),
    ("ABC", "a + ab"),
    ("BCD", "b + ba"),
    ("CDE", "b + d - bc"),
    ("DEA", "c + d - 1"),
    ("EAB", "a + c - ad"),
    ("ABD", "a+1"),
    ("ACD", "b+1"),
    ("BCE", "ab+ad+bc"),
];

/// Rebuilds the pentagon formulas from vertex vectors relative to the
/// diagonal crossing `O` and checks each against [`PENTAGON_STATED`].
pub fn derive_pentagon_formulas() -> Result<FormulaSet> {
    let a = SymVec2::v();
    let b = SymVec2::parse("-a", "0")?;
    let c = SymVec2::parse("0", "-b")?;
    let d = SymVec2::u();
    let e = SymVec2::parse("c", "d")?;

    let mut out = FormulaSet::new();
    out.insert("area".into(), sym_area(&[&a, &b, &c, &d, &e]));
    out.insert("ABC".into(), sym_triangle(&a, &b, &c));
    out.insert("BCD".into(), sym_triangle(&b, &c, &d));
    out.insert("CDE".into(), sym_triangle(&c, &d, &e));
    out.insert("DEA".into(), sym_triangle(&d, &e, &a));
    out.insert("EAB".into(), sym_triangle(&e, &a, &b));
    out.insert("ABD".into(), sym_triangle(&a, &b, &d));
    out.insert("ACD".into(), sym_triangle(&a, &c, &d));
    out.insert("BCE".into(), sym_triangle(&b, &c, &e));

    for (name, stated) in PENTAGON_STATED {
        check(name, &out[name], stated)?;
    }
    // The three triangles also arise as the area minus two ears.
    let area = &out["area"];
    check("ABD", &(&(area - &out["DEA"]) - &out["BCD"]), PENTAGON_STATED[6].1)?;
    check("ACD", &(&(area - &out["DEA"]) - &out["ABC"]), PENTAGON_STATED[7].1)?;
    check("BCE", &(&(area - &out["EAB"]) - &out["CDE"]), PENTAGON_STATED[8].1)?;
    Ok(out)
}

/// Closed forms for the hexagon family.
pub const HEXAGON_STATED: [(&str, &str); 12] = [
    ("H", "1+a+b+c+d+e+f+ab+bc+cd+de+ef+fa"),
    ("ABC", "b(a+c+1)-ac"),
    ("BCD", "c(b+d+1)-bd"),
    ("CDE", "d(c+e+1)-ce"),
    ("DEF", "e(d+f+1)-df"),
    ("EFA", "f(e+a+1)-ea"),
    ("FAB", "a(1+b+f)-bf"),
    ("Q1", "1+b+c+d+f+bc+cd+bf+df"),
    ("Q2", "1+c+d+e+a+cd+de+ca+ea"),
    ("Q3", "1+d+e+f+b+de+ef+db+fb"),
    ("Q4", "1+b+c+e+f+bc+ef+bf+ce"),
    ("FAB", "a(1+f)+b(a-f)"),
];

/// Each `Q_i` is the hexagon minus two ears.
const QUAD_AS_HEXAGON_MINUS_EARS: [(&str, &str, &str); 4] = [
    ("Q1", "FAB", "DEF"),
    ("Q2", "ABC", "EFA"),
    ("Q3", "FAB", "BCD"),
    ("Q4", "FAB", "CDE"),
];

/// Rebuilds the hexagon area, ears, `Q₁…Q₄` and `T_i = 3Q_i − 2H` from
/// vertex vectors relative to `M` and checks them against [`HEXAGON_STATED`].
pub fn derive_hexagon_formulas() -> Result<FormulaSet> {
    let a = SymVec2::parse("-a", "0")?;
    let b = SymVec2::parse("0", "-b")?;
    let c = SymVec2::parse("1+c", "-c")?;
    let d = SymVec2::parse("1+d", "0")?;
    let e = SymVec2::parse("0", "1+e")?;
    let f = SymVec2::parse("-f", "1+f")?;

    let mut out = FormulaSet::new();
    out.insert("H".into(), sym_area(&[&a, &b, &c, &d, &e, &f]));
    out.insert("ABC".into(), sym_triangle(&a, &b, &c));
    out.insert("BCD".into(), sym_triangle(&b, &c, &d));
    out.insert("CDE".into(), sym_triangle(&c, &d, &e));
    out.insert("DEF".into(), sym_triangle(&d, &e, &f));
    out.insert("EFA".into(), sym_triangle(&e, &f, &a));
    out.insert("FAB".into(), sym_triangle(&f, &a, &b));
    out.insert("Q1".into(), sym_area(&[&b, &c, &d, &f]));
    out.insert("Q2".into(), sym_area(&[&a, &c, &d, &e]));
    out.insert("Q3".into(), sym_area(&[&b, &d, &e, &f]));
    out.insert("Q4".into(), sym_area(&[&b, &c, &e, &f]));

    for (name, stated) in HEXAGON_STATED {
        check(name, &out[name], stated)?;
    }
    for (q, ear1, ear2) in QUAD_AS_HEXAGON_MINUS_EARS {
        let via_ears = &(&out["H"] - &out[ear1]) - &out[ear2];
        if via_ears != out[q] {
            return Err(Error::IdentityMismatch {
                name: format!("{q} = H - {ear1} - {ear2}"),
                derived: via_ears.to_string(),
                stated: out[q].to_string(),
            });
        }
    }

    let h2 = out["H"].scale(&Rational::from_integer(2.into()));
    for i in 1..=4 {
        let t = &out[&format!("Q{i}")].scale(&Rational::from_integer(3.into())) - &h2;
        out.insert(format!("T{i}"), t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(sym_wedge(&SymVec2::u(), &SymVec2::v()), MultiPoly::one());
        let q = SymVec2::parse("a+x1^2", "3b-c").unwrap();
        assert!(sym_wedge(&q, &q).is_zero());
        let ab = SymVec2::parse("-a", "-1").unwrap();
        let bc = SymVec2::parse("a", "-b").unwrap();
        assert_eq!(sym_wedge(&ab, &bc), p("a + ab"));
    }

    #[test]
    fn wedge_is_bilinear_and_antisymmetric() {
        let x = SymVec2::parse("a+1", "b").unwrap();
        let y = SymVec2::parse("c", "d-2").unwrap();
        let z = SymVec2::parse("e", "f").unwrap();
        assert_eq!(sym_wedge(&x, &y), -sym_wedge(&y, &x));
        let alpha = p("x1");
        let beta = p("x2+1");
        let lhs = sym_wedge(&x.scale(&alpha).add(&y.scale(&beta)), &z);
        let rhs = &(&alpha * &sym_wedge(&x, &z)) + &(&beta * &sym_wedge(&y, &z));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pentagon_formulas() {
        let f = derive_pentagon_formulas().unwrap();
        assert_eq!(f["DEA"], p("c + d - 1"));
        assert_eq!(f["BCE"], p("ab + ad + bc"));
        assert_eq!(f["area"], p("a+b+c+d+ab"));
    }

    #[test]
    fn hexagon_formulas() {
        let f = derive_hexagon_formulas().unwrap();
        assert_eq!(f["H"], p("1+a+b+c+d+e+f+ab+bc+cd+de+ef+fa"));
        assert_eq!(f["FAB"], p("a + af + ab - bf"));
        assert_eq!(f["Q4"], p("1+b+c+e+f+bc+ef+bf+ce"));
        assert_eq!(f["T1"], &f["Q1"].scale(&Rational::from_integer(3.into())) - &f["H"].scale(&Rational::from_integer(2.into())));
    }

    #[test]
    fn mismatch_is_reported() {
        let err = check("DEA", &p("c + d - 1"), "c + d + 1").unwrap_err();
        assert!(matches!(err, Error::IdentityMismatch { ref name, .. } if name == "DEA"));
    }
}
