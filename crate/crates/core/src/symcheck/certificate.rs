//! Nonnegativity certificates: `lhs ∘ substitution == rhs` with `rhs` having
//! a positive constant and nonnegative coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

use super::derive::{derive_hexagon_formulas, FormulaSet};
use super::parse::parse_poly;
use super::poly::{MultiPoly, Substitution, Var};

pub const CERTIFICATE_FIXTURE: &str = include_str!("../../fixtures/certificates.toml");
pub const FIXTURE_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CertificateFile {
    pub version: u32,
    pub certificate: Vec<CertificateSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CertificateSpec {
    pub name: String,
    pub hypothesis: String,
    /// Integer weights on named hexagon quantities.
    pub lhs: BTreeMap<String, i64>,
    pub substitution: BTreeMap<String, String>,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub hypothesis: String,
    pub equal: bool,
    pub nonnegative: bool,
    pub constant_term: String,
    pub negative_terms: Vec<String>,
    /// `lhs ∘ substitution − rhs`, rendered; `"0"` when equal.
    pub difference: String,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.equal && self.nonnegative
    }
}

pub fn load_certificates(text: &str) -> Result<Vec<CertificateSpec>> {
    let file: CertificateFile = toml::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
    if file.version != FIXTURE_VERSION {
        return Err(Error::Fixture(format!(
            "unsupported certificate fixture version {} (expected {FIXTURE_VERSION})",
            file.version
        )));
    }
    Ok(file.certificate)
}

pub fn builtin_certificates() -> Result<Vec<CertificateSpec>> {
    load_certificates(CERTIFICATE_FIXTURE)
}

/// Checks `lhs` under `subs` against `claimed_rhs`.
///
/// `claimed_rhs` may only mention variables that survive the substitution:
/// those of `lhs` not replaced, plus those introduced by the images.
pub fn check_certificate(
    name: &str,
    lhs: &MultiPoly,
    subs: &Substitution,
    claimed_rhs: &MultiPoly,
) -> Result<CertificateReport> {
    let mut allowed: BTreeSet<Var> = lhs.variables().into_iter().filter(|v| !subs.contains_key(v)).collect();
    for image in subs.values() {
        allowed.extend(image.variables());
    }
    if let Some(v) = claimed_rhs.variables().into_iter().find(|v| !allowed.contains(v)) {
        return Err(Error::VariableMismatch(format!(
            "{name}: right-hand side mentions {v}, which the substituted left-hand side cannot contain"
        )));
    }

    let substituted = lhs.substitute(subs);
    let difference = &substituted - claimed_rhs;
    let constant = claimed_rhs.constant_term();
    let negatives = claimed_rhs.negative_terms();
    Ok(CertificateReport {
        name: name.to_string(),
        hypothesis: String::new(),
        equal: difference.is_zero(),
        nonnegative: constant.is_positive() && negatives.is_empty(),
        constant_term: constant.to_string(),
        negative_terms: negatives.iter().map(|(m, c)| format!("{c}*{m}")).collect(),
        difference: difference.to_string(),
    })
}

/// Weighted sum of named formulas.
pub fn combine(formulas: &FormulaSet, weights: &BTreeMap<String, i64>) -> Result<MultiPoly> {
    weights.iter().try_fold(MultiPoly::zero(), |acc, (name, w)| {
        let f = formulas
            .get(name)
            .ok_or_else(|| Error::Fixture(format!("unknown quantity {name:?}")))?;
        Ok(&acc + &f.scale(&Rational::from_integer((*w).into())))
    })
}

/// Parsed form of a [`CertificateSpec`].
#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: String,
    pub hypothesis: String,
    pub lhs: MultiPoly,
    pub substitution: Substitution,
    pub rhs: MultiPoly,
}

impl Certificate {
    pub fn from_spec(spec: &CertificateSpec, formulas: &FormulaSet) -> Result<Self> {
        let substitution = spec
            .substitution
            .iter()
            .map(|(v, image)| Ok((Var::from_name(v)?, parse_poly(image)?)))
            .collect::<Result<Substitution>>()?;
        Ok(Self {
            name: spec.name.clone(),
            hypothesis: spec.hypothesis.clone(),
            lhs: combine(formulas, &spec.lhs)?,
            substitution,
            rhs: parse_poly(&spec.rhs)?,
        })
    }

    pub fn check(&self) -> Result<CertificateReport> {
        let mut report = check_certificate(&self.name, &self.lhs, &self.substitution, &self.rhs)?;
        report.hypothesis = self.hypothesis.clone();
        Ok(report)
    }
}

pub fn builtin_parsed() -> Result<Vec<Certificate>> {
    let formulas = derive_hexagon_formulas()?;
    builtin_certificates()?
        .iter()
        .map(|s| Certificate::from_spec(s, &formulas))
        .collect()
}

/// Checks every certificate in the built-in fixture, in fixture order.
pub fn run_all_certificates() -> Result<Vec<CertificateReport>> {
    let certs = builtin_parsed()?;
    certs.par_iter().map(Certificate::check).collect()
}

/// True when the report list is nonempty and every entry passed.
pub fn all_passed(reports: &[CertificateReport]) -> bool {
    !reports.is_empty() && reports.iter().all(CertificateReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcheck::poly::{substitution, Assignment};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn all_twelve_pass() {
        let reports = run_all_certificates().unwrap();
        assert_eq!(reports.len(), 12);
        for r in &reports {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(reports[0].constant_term, "1");
        assert!(reports[1..].iter().all(|r| r.constant_term == "3"));
    }

    #[test]
    fn simple_identity() {
        let subs = substitution([("b", p("a+x1"))]).unwrap();
        let r = check_certificate("t", &p("ab+1"), &subs, &p("1+a^2+a x1")).unwrap();
        assert!(r.equal && r.nonnegative);
        let r = check_certificate("t", &p("ab-1"), &subs, &p("-1+a^2+a x1")).unwrap();
        assert!(r.equal && !r.nonnegative);
    }

    #[test]
    fn variable_mismatch() {
        let subs = substitution([("b", p("a+x1"))]).unwrap();
        let err = check_certificate("t", &p("ab"), &subs, &p("ab")).unwrap_err();
        assert!(matches!(err, Error::VariableMismatch(_)));
        let err = check_certificate("t", &p("a"), &subs, &p("a + x2")).unwrap_err();
        assert!(matches!(err, Error::VariableMismatch(_)));
        // A substituted variable that cancels from the left-hand side is fine.
        let subs = substitution([("c", p("x1"))]).unwrap();
        assert!(check_certificate("t", &p("ab"), &subs, &p("ab")).unwrap().equal);
    }

    #[test]
    fn corrupted_rhs_fails() {
        let mut specs = builtin_certificates().unwrap();
        specs[4].rhs = specs[4].rhs.replacen("6x1(x2+x5)", "5x1(x2+x5)", 1);
        let formulas = derive_hexagon_formulas().unwrap();
        let cert = Certificate::from_spec(&specs[4], &formulas).unwrap();
        let r = cert.check().unwrap();
        assert!(!r.equal);
        assert!(r.nonnegative);
        assert_ne!(r.difference, "0");
    }

    #[test]
    fn fixture_version_is_checked() {
        let text = CERTIFICATE_FIXTURE.replacen("version = 1", "version = 2", 1);
        assert!(matches!(load_certificates(&text), Err(Error::Fixture(_))));
    }

    #[test]
    fn zero_shift_gives_constant_term() {
        for cert in builtin_parsed().unwrap() {
            let mut at = Assignment::new();
            at.insert(Var::from_name("a").unwrap(), Rational::zero());
            for x in ["x1", "x2", "x3", "x4", "x5"] {
                at.insert(Var::from_name(x).unwrap(), Rational::zero());
            }
            assert_eq!(cert.rhs.eval(&at).unwrap(), cert.rhs.constant_term(), "{}", cert.name);
        }
    }

    #[test]
    fn random_evaluation_oracle() {
        // Evaluate the original combination at the substituted point rather
        // than expanding symbolically.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cert in builtin_parsed().unwrap() {
            for _ in 0..100 {
                let mut shifted = Assignment::new();
                for name in ["a", "x1", "x2", "x3", "x4", "x5"] {
                    let num: i64 = rng.random_range(0..=40);
                    let den: i64 = rng.random_range(1..=9);
                    shifted.insert(Var::from_name(name).unwrap(), Rational::new(num.into(), den.into()));
                }
                let mut original = shifted.clone();
                for (v, image) in &cert.substitution {
                    original.insert(*v, image.eval(&shifted).unwrap());
                }
                assert_eq!(cert.lhs.eval(&original).unwrap(), cert.rhs.eval(&shifted).unwrap(), "{}", cert.name);
            }
        }
    }
}
