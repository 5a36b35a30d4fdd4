//! Nelder–Mead simplex minimization with dimension-adaptive coefficients
//! (Gao and Han).

#[derive(Clone, Debug)]
pub struct NelderMeadOptions {
    /// Simplex iterations allowed (each costs one to `dim + 2` evaluations).
    pub max_iters: usize,
    /// Stop once every vertex lies within this distance of the best one
    /// and the value spread is below it as well.
    pub tol: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iters: usize,
    pub evals: usize,
    pub converged: bool,
}

pub fn minimize<F>(f: F, start: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    Simplex::new(f, start, opts).run()
}

struct Simplex<'o, F> {
    f: F,
    opts: &'o NelderMeadOptions,
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    evals: usize,
}

impl<'o, F: FnMut(&[f64]) -> f64> Simplex<'o, F> {
    fn new(f: F, start: &[f64], opts: &'o NelderMeadOptions) -> Self {
        let mut s = Self { f, opts, points: Vec::new(), values: Vec::new(), evals: 0 };
        let mut pts = vec![start.to_vec()];
        for i in 0..start.len() {
            let mut p = start.to_vec();
            p[i] += opts.initial_step;
            pts.push(p);
        }
        for p in pts {
            let v = s.eval(&p);
            s.points.push(p);
            s.values.push(v);
        }
        s
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Stable sort by value; earlier vertices win ties.
    fn order(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&i, &j| self.values[i].total_cmp(&self.values[j]));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }

    fn converged(&self) -> bool {
        let best = &self.points[0];
        let size = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        let spread = self.values.last().copied().unwrap_or(0.0) - self.values[0];
        size <= self.opts.tol && spread.abs() <= self.opts.tol
    }

    fn run(mut self) -> Minimum {
        let dim = self.points[0].len();
        let nf = dim.max(1) as f64;
        let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);
        let mut converged = false;
        let mut iters = 0;

        while iters < self.opts.max_iters {
            iters += 1;
            self.order();
            if dim == 0 || self.converged() {
                converged = true;
                break;
            }
            let worst = dim;
            let centroid: Vec<f64> = (0..dim)
                .map(|k| self.points[..worst].iter().map(|p| p[k]).sum::<f64>() / nf)
                .collect();
            let along = |t: f64, pts: &[Vec<f64>]| -> Vec<f64> {
                centroid.iter().zip(&pts[worst]).map(|(c, w)| c + t * (c - w)).collect()
            };

            let xr = along(alpha, &self.points);
            let fr = self.eval(&xr);
            if fr < self.values[0] {
                let xe = along(alpha * beta, &self.points);
                let fe = self.eval(&xe);
                if fe < fr {
                    self.replace(worst, xe, fe);
                } else {
                    self.replace(worst, xr, fr);
                }
                continue;
            }
            if fr < self.values[worst - 1] {
                self.replace(worst, xr, fr);
                continue;
            }
            let (xc, fc, accept) = if fr < self.values[worst] {
                let xc = along(alpha * gamma, &self.points);
                let fc = self.eval(&xc);
                let ok = fc <= fr;
                (xc, fc, ok)
            } else {
                let xc = along(-gamma, &self.points);
                let fc = self.eval(&xc);
                let ok = fc < self.values[worst];
                (xc, fc, ok)
            };
            if accept {
                self.replace(worst, xc, fc);
                continue;
            }
            // Shrink towards the best vertex.
            let best = self.points[0].clone();
            for i in 1..=dim {
                let p: Vec<f64> =
                    best.iter().zip(&self.points[i]).map(|(b, x)| b + delta * (x - b)).collect();
                let v = self.eval(&p);
                self.points[i] = p;
                self.values[i] = v;
            }
        }
        self.order();
        Minimum {
            x: self.points[0].clone(),
            value: self.values[0],
            iters,
            evals: self.evals,
            converged,
        }
    }

    fn replace(&mut self, i: usize, x: Vec<f64>, v: f64) {
        self.points[i] = x;
        self.values[i] = v;
    }
}
