use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, Exp, Gamma, Normal, Poisson, StandardNormal, Uniform};

use crate::spec::{Jump, ProcessSpec};
use crate::SimError;

/// A square root `C` of a covariance matrix, `Σ = C Cᵀ`, through the
/// spectral decomposition (so singular `Σ` is allowed).
pub fn covariance_root(sigma: &[Vec<f64>]) -> Result<DMatrix<f64>, SimError> {
    let d = sigma.len();
    if d == 0 || sigma.iter().any(|row| row.len() != d) {
        return Err(SimError::InvalidParameter("covariance must be a nonempty square matrix".into()));
    }
    let scale = sigma.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for (j, row) in sigma.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if !v.is_finite() || (v - sigma[k][j]).abs() > 1e-12 * scale {
                return Err(SimError::InvalidParameter("covariance must be finite and symmetric".into()));
            }
        }
    }
    let m = DMatrix::from_fn(d, d, |j, k| sigma[j][k]);
    let eig = SymmetricEigen::new(m);
    if eig.eigenvalues.iter().any(|&l| l < -1e-10 * scale) {
        return Err(SimError::InvalidParameter("covariance must be positive semidefinite".into()));
    }
    let roots = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.max(0.0).sqrt()));
    Ok(&eig.eigenvectors * roots)
}

#[derive(Clone, Debug)]
enum Law {
    Normal(Normal<f64>),
    Poisson(Option<Poisson<f64>>),
    Gamma(Gamma<f64>),
    /// Poisson with a Gamma-distributed rate.
    Pascal(Gamma<f64>),
    Compound(Option<Poisson<f64>>, JumpLaw),
    Multi(DMatrix<f64>),
}

#[derive(Clone, Debug)]
enum JumpLaw {
    Uniform(Uniform<f64>),
    Normal(Normal<f64>),
    Exponential(Exp<f64>, f64),
    PointMass(f64),
}

impl JumpLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            JumpLaw::Uniform(u) => u.sample(rng),
            JumpLaw::Normal(n) => n.sample(rng),
            JumpLaw::Exponential(e, mean) => e.sample(rng) * mean,
            JumpLaw::PointMass(c) => *c,
        }
    }
}

fn poisson(rate: f64) -> Result<Option<Poisson<f64>>, SimError> {
    if rate == 0.0 {
        return Ok(None);
    }
    Poisson::new(rate).map(Some).map_err(|e| SimError::InvalidParameter(format!("Poisson({rate}): {e}")))
}

fn draw_poisson<R: Rng + ?Sized>(p: &Option<Poisson<f64>>, rng: &mut R) -> f64 {
    p.as_ref().map_or(0.0, |p| p.sample(rng))
}

/// Sampler of the increment `X_{t+dt} - X_t` (whose law depends on `dt`
/// only).
#[derive(Clone, Debug)]
pub struct Increment {
    law: Law,
    dim: usize,
}

impl Increment {
    pub fn new(spec: &ProcessSpec, dt: f64) -> Result<Increment, SimError> {
        spec.validate()?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(SimError::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        let bad = |e: &dyn std::fmt::Display| SimError::InvalidParameter(e.to_string());
        let law = match spec {
            ProcessSpec::Brownian { s } => Law::Normal(Normal::new(0.0, s * dt.sqrt()).map_err(|e| bad(&e))?),
            ProcessSpec::Poisson { lambda } => Law::Poisson(poisson(lambda * dt)?),
            ProcessSpec::Gamma { lambda } => Law::Gamma(Gamma::new(lambda * dt, 1.0).map_err(|e| bad(&e))?),
            ProcessSpec::Pascal { p } => Law::Pascal(Gamma::new(dt, p / (1.0 - p)).map_err(|e| bad(&e))?),
            ProcessSpec::CompoundPoisson { lambda, jump } => {
                let j = match *jump {
                    Jump::Uniform { a, b } => JumpLaw::Uniform(Uniform::new(a, b).map_err(|e| bad(&e))?),
                    Jump::Normal { mean, sd } => JumpLaw::Normal(Normal::new(mean, sd).map_err(|e| bad(&e))?),
                    Jump::Exponential { mean } => JumpLaw::Exponential(Exp::new(1.0).map_err(|e| bad(&e))?, mean),
                    Jump::PointMass { c } => JumpLaw::PointMass(c),
                };
                Law::Compound(poisson(lambda * dt)?, j)
            }
            ProcessSpec::MultivariateBrownian { sigma } => Law::Multi(covariance_root(sigma)? * dt.sqrt()),
        };
        Ok(Increment { law, dim: spec.dim() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Writes one draw into `out` (of length `dim`).
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match &self.law {
            Law::Normal(n) => out[0] = n.sample(rng),
            Law::Poisson(p) => out[0] = draw_poisson(p, rng),
            Law::Gamma(g) => out[0] = g.sample(rng),
            Law::Pascal(g) => {
                let rate = g.sample(rng);
                out[0] = if rate > 0.0 { Poisson::new(rate).map_or(0.0, |p| p.sample(rng)) } else { 0.0 };
            }
            Law::Compound(p, jump) => {
                let n = draw_poisson(p, rng) as u64;
                out[0] = (0..n).map(|_| jump.sample(rng)).sum();
            }
            Law::Multi(c) => {
                let z: Vec<f64> = (0..c.ncols()).map(|_| rng.sample(StandardNormal)).collect();
                for (j, o) in out.iter_mut().enumerate() {
                    *o = (0..c.ncols()).map(|k| c[(j, k)] * z[k]).sum();
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.sample_into(rng, &mut out);
        out
    }
}

/// One draw of `X_{dt}`.
pub fn sample_increment<R: Rng + ?Sized>(spec: &ProcessSpec, dt: f64, rng: &mut R) -> Result<Vec<f64>, SimError> {
    Ok(Increment::new(spec, dt)?.sample(rng))
}
