//! Multi-start simplex search for `f_n(m)` (minimize the best inscribed
//! `m`-gon ratio) and `g_n` (maximize the smallest ear ratio).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{HexagonParams, PentagonParams};
use crate::geom::{triangle_area, ConvexPolygon, Vec2};
use crate::inscribed::max_inscribed_dp;
use crate::scalar::{snap_to_rational, Rational, Scalar};

use super::nelder_mead::{minimize, NelderMeadOptions};

/// Added to every constraint violation so infeasible points never tie a feasible one.
const VIOLATION_FLOOR: f64 = 1e-9;
const PENALTY_WEIGHT: f64 = 1e3;
/// Chart coordinates beyond this magnitude count as violations.
const COORD_LIMIT: f64 = 20.0;
const START_ATTEMPTS: usize = 1000;
/// Fresh simplices started from the incumbent after a converged run.
const MAX_REFRESHES: usize = 6;
const INITIAL_STEP: f64 = 0.5;
/// Denominator used when snapping a witness for the exact audit.
pub const AUDIT_DENOMINATOR: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parametrization {
    PentagonParams,
    HexagonParams,
    CircleAngles,
}

impl Parametrization {
    pub fn default_for(n: usize) -> Self {
        match n {
            5 => Self::PentagonParams,
            6 => Self::HexagonParams,
            _ => Self::CircleAngles,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PentagonParams => "pentagon-params",
            Self::HexagonParams => "hexagon-params",
            Self::CircleAngles => "circle-angles",
        }
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parametrization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pentagon-params" => Ok(Self::PentagonParams),
            "hexagon-params" => Ok(Self::HexagonParams),
            "circle-angles" => Ok(Self::CircleAngles),
            other => Err(Error::Config(format!("unknown parametrization {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    /// Inscribed polygon size for `f`; `None` for `g`.
    pub m: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Simplex size at which a run counts as converged.
    pub tol: f64,
    /// `None` picks [`Parametrization::default_for`].
    pub parametrization: Option<Parametrization>,
    /// Re-evaluate the witness exactly after snapping it to rationals.
    pub exact_audit: bool,
}

impl SearchConfig {
    pub fn f(n: usize, m: usize) -> Self {
        Self { m: Some(m), ..Self::g(n) }
    }

    pub fn g(n: usize) -> Self {
        Self {
            n,
            m: None,
            restarts: 64,
            max_iters: 2000,
            seed: 42,
            tol: 1e-9,
            parametrization: None,
            exact_audit: false,
        }
    }

    pub fn chart(&self) -> Parametrization {
        self.parametrization.unwrap_or_else(|| Parametrization::default_for(self.n))
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Config(format!("n = {} (need n >= 3)", self.n)));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol = {} (need a positive finite number)", self.tol)));
        }
        if let Some(m) = self.m {
            if m < 3 || m >= self.n {
                return Err(Error::Config(format!("m = {m} (need 3 <= m < n = {})", self.n)));
            }
        }
        match (self.chart(), self.n) {
            (Parametrization::PentagonParams, 5)
            | (Parametrization::HexagonParams, 6)
            | (Parametrization::CircleAngles, _) => Ok(()),
            (p, n) => Err(Error::Config(format!("{p} does not describe {n}-gons"))),
        }
    }
}

/// Tally of the smallest-ear constraint check on pentagon-chart candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinEarCrossCheck {
    /// Feasible candidates evaluated.
    pub candidates: u64,
    /// Candidates whose exact `Δ(DEA)` is a smallest ear.
    pub dea_smallest: u64,
    /// Of those, how many break `c ≤ 1, d ≤ 1, c + d ≤ 1 + a + ab`.
    pub violations: u64,
}

impl MinEarCrossCheck {
    fn merge(&mut self, o: &Self) {
        self.candidates += o.candidates;
        self.dea_smallest += o.dea_smallest;
        self.violations += o.violations;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactAudit {
    pub denominator: i64,
    /// Exact objective of the snapped witness, `p/q`.
    pub value: String,
    pub value_f64: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub parametrization: Parametrization,
    pub estimate: f64,
    pub witness: ConvexPolygon<f64>,
    /// Chart parameters of the witness for the pentagon and hexagon charts.
    pub witness_params: Option<Vec<f64>>,
    /// Best objective per restart; `None` if a restart never left the infeasible region.
    pub restart_bests: Vec<Option<f64>>,
    pub best_restart: usize,
    pub converged: bool,
    pub crosscheck: Option<MinEarCrossCheck>,
    pub exact_audit: Option<std::result::Result<ExactAudit, String>>,
}

impl SearchResult {
    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.config.n,
            "m": self.config.m,
            "estimate": self.estimate,
            "parametrization": self.parametrization.name(),
            "restarts": self.config.restarts,
            "max_iters": self.config.max_iters,
            "seed": self.config.seed,
            "tol": self.config.tol,
            "converged": self.converged,
            "best_restart": self.best_restart,
            "restart_bests": self.restart_bests,
            "witness": self.witness.to_json(),
            "witness_params": self.witness_params,
            "crosscheck": self.crosscheck,
            "exact_audit": self.exact_audit.as_ref().map(|a| match a {
                Ok(audit) => json!(audit),
                Err(msg) => json!({ "error": msg }),
            }),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal {
    /// Minimize the largest inscribed `m`-gon ratio.
    F(usize),
    /// Maximize the smallest ear ratio.
    G,
}

impl Goal {
    /// Value in the estimate's own sign.
    fn value(self, p: &ConvexPolygon<f64>) -> f64 {
        match self {
            Goal::F(m) => max_inscribed_dp(p, m).expect("m validated").ratio,
            Goal::G => p.min_ear_ratio().1,
        }
    }

    fn exact_value(self, p: &ConvexPolygon<Rational>) -> Rational {
        match self {
            Goal::F(m) => max_inscribed_dp(p, m).expect("m validated").ratio,
            Goal::G => p.min_ear_ratio().1,
        }
    }

    /// Value the simplex minimizes.
    fn minimized(self, estimate: f64) -> f64 {
        match self {
            Goal::F(_) => estimate,
            Goal::G => -estimate,
        }
    }

    fn from_minimized(self, v: f64) -> f64 {
        self.minimized(v)
    }

    /// Worst feasible minimized value: ratio 1 for `f`, ratio 0 for `g`.
    fn penalty_base(self) -> f64 {
        match self {
            Goal::F(_) => 1.0,
            Goal::G => 0.0,
        }
    }
}

enum Decoded {
    Feasible(ConvexPolygon<f64>),
    Infeasible(f64),
}

/// Violation of `Σ max(0, −ear_k) / |area|` for signed ears.
fn ear_violation(ears: &[f64], area: f64) -> f64 {
    let neg: f64 = ears.iter().map(|e| (-e).max(0.0)).sum();
    neg / area.abs().max(f64::MIN_POSITIVE)
}

fn coord_violation(x: &[f64]) -> f64 {
    x.iter().map(|v| (v.abs() - COORD_LIMIT).max(0.0)).sum()
}

#[derive(Clone, Copy, Debug)]
struct Chart {
    kind: Parametrization,
    n: usize,
}

impl Chart {
    fn dim(self) -> usize {
        match self.kind {
            Parametrization::PentagonParams => 4,
            Parametrization::HexagonParams => 6,
            // n − 1 free gap logits and n radii.
            Parametrization::CircleAngles => 2 * self.n - 1,
        }
    }

    fn params(self, x: &[f64]) -> Option<Vec<f64>> {
        match self.kind {
            Parametrization::CircleAngles => None,
            _ => Some(x.iter().map(|v| v.exp()).collect()),
        }
    }

    fn decode(self, x: &[f64]) -> Decoded {
        let cv = coord_violation(x);
        if cv > 0.0 {
            return Decoded::Infeasible(cv);
        }
        let (vertices, ears, area) = match self.kind {
            Parametrization::PentagonParams => {
                let [a, b, c, d] = [0, 1, 2, 3].map(|i| x[i].exp());
                let p = PentagonParams { a, b, c, d };
                (p.vertices(), p.ear_formulas().to_vec(), p.area_formula())
            }
            Parametrization::HexagonParams => {
                let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(|i| x[i].exp());
                let h = HexagonParams { a, b, c, d, e, f };
                (h.vertices(), h.ear_formulas().to_vec(), h.area_formula())
            }
            Parametrization::CircleAngles => {
                let vs = circle_vertices(self.n, x);
                let n = vs.len();
                let ears: Vec<f64> = (0..n)
                    .map(|k| triangle_area(&vs[(k + n - 1) % n], &vs[k], &vs[(k + 1) % n]))
                    .collect();
                let area: f64 = (0..n).map(|k| vs[k].cross(&vs[(k + 1) % n])).sum::<f64>() / 2.0;
                (vs, ears, area)
            }
        };
        let v = ear_violation(&ears, area);
        if v > 0.0 || area <= 0.0 {
            return Decoded::Infeasible(v);
        }
        match ConvexPolygon::new(vertices) {
            Ok(p) => Decoded::Feasible(p),
            // Positive but below the float turn tolerance.
            Err(_) => Decoded::Infeasible(0.0),
        }
    }

    fn random_point<R: Rng + ?Sized>(self, rng: &mut R) -> Vec<f64> {
        match self.kind {
            Parametrization::PentagonParams | Parametrization::HexagonParams => {
                (0..self.dim()).map(|_| rng.random_range(-2.0..2.0)).collect()
            }
            Parametrization::CircleAngles => {
                let mut x: Vec<f64> = (0..self.n - 1).map(|_| rng.random_range(-0.5..0.5)).collect();
                x.extend((0..self.n).map(|_| rng.random_range(-1.5..1.5)));
                x
            }
        }
    }

    fn start<R: Rng + ?Sized>(self, rng: &mut R) -> Vec<f64> {
        let mut x = self.random_point(rng);
        for _ in 1..START_ATTEMPTS {
            if matches!(self.decode(&x), Decoded::Feasible(_)) {
                break;
            }
            x = self.random_point(rng);
        }
        x
    }
}

/// Vertex 0 at angle 0; gaps are a softmax of `(0, x[0..n−1])`; radius
/// `k` is `0.75 + 0.25·tanh(x[n − 1 + k])`, inside `(0.5, 1)`.
fn circle_vertices(n: usize, x: &[f64]) -> Vec<Vec2<f64>> {
    let logits: Vec<f64> = std::iter::once(0.0).chain(x[..n - 1].iter().copied()).collect();
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut theta = 0.0f64;
    (0..n)
        .map(|k| {
            let r = 0.75 + 0.25 * x[n - 1 + k].tanh();
            let v = Vec2::new(r * theta.cos(), r * theta.sin());
            theta += 2.0 * std::f64::consts::PI * weights[k] / total;
            v
        })
        .collect()
}

struct RestartOutcome {
    x: Vec<f64>,
    value: f64,
    feasible_estimate: Option<f64>,
    converged: bool,
    crosscheck: MinEarCrossCheck,
}

fn run_restart(cfg: &SearchConfig, chart: Chart, goal: Goal, index: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let check = chart.kind == Parametrization::PentagonParams;
    let mut tally = MinEarCrossCheck::default();

    let mut objective = |x: &[f64]| -> f64 {
        match chart.decode(x) {
            Decoded::Feasible(p) => {
                if check {
                    tally.merge(&pentagon_crosscheck(x));
                }
                goal.minimized(goal.value(&p))
            }
            Decoded::Infeasible(v) => goal.penalty_base() + PENALTY_WEIGHT * (v + VIOLATION_FLOOR),
        }
    };

    // The circle chart's origin is the regular polygon; restart 0 starts there.
    let mut x = if index == 0 && chart.kind == Parametrization::CircleAngles {
        vec![0.0; chart.dim()]
    } else {
        chart.start(&mut rng)
    };
    let mut value = f64::INFINITY;
    let mut converged = false;
    let mut budget = cfg.max_iters;
    let mut step = INITIAL_STEP;
    for _ in 0..=MAX_REFRESHES {
        if budget == 0 {
            break;
        }
        let opts = NelderMeadOptions { max_iters: budget, tol: cfg.tol, initial_step: step };
        let run = minimize(&mut objective, &x, &opts);
        budget -= run.iters;
        converged = run.converged;
        let improved = run.value < value - cfg.tol;
        if run.value < value {
            value = run.value;
            x = run.x;
        }
        if !improved || !run.converged {
            break;
        }
        step *= 0.5;
    }

    let feasible_estimate = match chart.decode(&x) {
        Decoded::Feasible(p) => Some(goal.value(&p)),
        Decoded::Infeasible(_) => None,
    };
    RestartOutcome { x, value, feasible_estimate, converged, crosscheck: tally }
}

fn pentagon_crosscheck(x: &[f64]) -> MinEarCrossCheck {
    let mut out = MinEarCrossCheck { candidates: 1, ..Default::default() };
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| x[i].exp());
    let Ok(exact) = PentagonParams { a, b, c, d }.snapped() else {
        return out;
    };
    if exact.dea_is_min_ear() {
        out.dea_smallest = 1;
        if !exact.satisfies_min_ear_constraints() {
            out.violations = 1;
        }
    }
    out
}

fn audit(goal: Goal, witness: &ConvexPolygon<f64>, estimate: f64) -> std::result::Result<ExactAudit, String> {
    let vs = witness
        .vertices()
        .iter()
        .map(|v| {
            Vec2::new(
                snap_to_rational(v.x, AUDIT_DENOMINATOR),
                snap_to_rational(v.y, AUDIT_DENOMINATOR),
            )
        })
        .collect();
    let exact = ConvexPolygon::new(vs).map_err(|e| format!("snapped witness rejected: {e}"))?;
    let value = goal.exact_value(&exact);
    let value_f64 = value.to_f64();
    Ok(ExactAudit {
        denominator: AUDIT_DENOMINATOR,
        value: value.to_string(),
        value_f64,
        abs_diff: (value_f64 - estimate).abs(),
    })
}

fn search(cfg: &SearchConfig, goal: Goal) -> Result<SearchResult> {
    cfg.validate()?;
    let chart = Chart { kind: cfg.chart(), n: cfg.n };
    let outcomes: Vec<RestartOutcome> = super::install(|| {
        (0..cfg.restarts)
            .into_par_iter()
            .map(|i| run_restart(cfg, chart, goal, i))
            .collect()
    });

    // Lowest minimized value among feasible restarts; ties to the lowest index.
    let best_restart = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.feasible_estimate.is_some())
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Config("no restart reached a feasible polygon".into()))?;
    let best = &outcomes[best_restart];
    let Decoded::Feasible(witness) = chart.decode(&best.x) else {
        unreachable!("best restart was checked feasible");
    };
    let estimate = goal.value(&witness);
    debug_assert_eq!(goal.from_minimized(best.value), estimate);

    let crosscheck = (chart.kind == Parametrization::PentagonParams).then(|| {
        let mut total = MinEarCrossCheck::default();
        for o in &outcomes {
            total.merge(&o.crosscheck);
        }
        total
    });
    let exact_audit = cfg.exact_audit.then(|| audit(goal, &witness, estimate));

    Ok(SearchResult {
        config: cfg.clone(),
        parametrization: chart.kind,
        estimate,
        witness_params: chart.params(&best.x),
        witness,
        restart_bests: outcomes.iter().map(|o| o.feasible_estimate).collect(),
        best_restart,
        converged: best.converged,
        crosscheck,
        exact_audit,
    })
}

/// Upper estimate of `f_n(m)`: the smallest largest-inscribed-`m`-gon ratio found.
pub fn estimate_f(cfg: &SearchConfig) -> Result<SearchResult> {
    let m = cfg
        .m
        .ok_or_else(|| Error::Config("estimate_f needs m".into()))?;
    search(cfg, Goal::F(m))
}

/// Lower estimate of `g_n`: the largest smallest-ear ratio found.
pub fn estimate_g(cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.m.is_some() {
        return Err(Error::Config("estimate_g takes no m".into()));
    }
    search(cfg, Goal::G)
}
