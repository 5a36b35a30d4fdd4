//! Exact symbolic checks of the family area formulas and of the
//! nonnegativity certificates for the hexagon bounds.

pub mod certificate;
pub mod derive;
pub mod parse;
pub mod poly;

pub use certificate::{
    all_passed, check_certificate, run_all_certificates, Certificate, CertificateReport,
    CertificateSpec,
};
pub use derive::{derive_hexagon_formulas, derive_pentagon_formulas, sym_wedge, FormulaSet, SymVec2};
pub use parse::parse_poly;
pub use poly::{substitution, Assignment, Monomial, MultiPoly, Substitution, Var, VARIABLES};
