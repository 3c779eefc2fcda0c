use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use umbral::combinatorics::MultiIndex;
use umbral::multivar::{dot_multi, q_poly_multi};
use umbral::tsh::q_polys;
use umbral::umbra::dot;
use umbral::{Poly, Var};

use crate::numeric::{Neumaier, NumericPoly};
use crate::sample::Increment;
use crate::spec::{to_rational, ProcessSpec, Symbolic};
use crate::SimError;

/// Draws per chunk. Chunk `c` always uses stream `c` of the seeded
/// generator, so results do not depend on the thread count.
pub const CHUNK: usize = 4096;

const MOMENT_STREAMS: u64 = 0;
const MARTINGALE_STREAMS: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub index: Vec<u32>,
    pub symbolic: f64,
    pub empirical: f64,
    pub std_error: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MartingaleRow {
    pub index: Vec<u32>,
    pub s: f64,
    pub t: f64,
    pub mean_residual: f64,
    pub std_error: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub process: ProcessSpec,
    pub seed: u64,
    pub n_samples: u64,
    pub n_outer: u64,
    pub n_inner: u64,
    pub moments: Vec<MomentRow>,
    pub martingale: Vec<MartingaleRow>,
}

impl SimReport {
    fn empty(spec: &ProcessSpec, seed: u64) -> SimReport {
        SimReport {
            process: spec.clone(),
            seed,
            n_samples: 0,
            n_outer: 0,
            n_inner: 0,
            moments: Vec::new(),
            martingale: Vec::new(),
        }
    }

    /// Largest `|z|` over all rows (0 for an empty report).
    pub fn max_abs_z(&self) -> f64 {
        self.moments.iter().map(|r| r.z).chain(self.martingale.iter().map(|r| r.z)).fold(0.0, |m, z| {
            if z.is_nan() {
                f64::INFINITY
            } else {
                m.max(z.abs())
            }
        })
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.max_abs_z() <= threshold
    }
}

fn z_score(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// `(mean, standard error of the mean)` from running sums.
fn mean_se(sum: &Neumaier, sum_sq: &Neumaier, n: u64) -> (f64, f64) {
    let n_f = n as f64;
    let mean = sum.value() / n_f;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((sum_sq.value() - n_f * mean * mean) / (n_f - 1.0)).max(0.0);
    (mean, (var / n_f).sqrt())
}

fn check_time(name: &str, v: f64) -> Result<(), SimError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(SimError::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

fn indices(dim: usize, k_max: usize) -> Vec<MultiIndex> {
    if dim == 1 {
        (0..=k_max as u32).map(|k| MultiIndex::new(vec![k])).collect()
    } else {
        MultiIndex::up_to_order(dim, k_max)
    }
}

fn monomial(x: &[f64], i: &MultiIndex) -> f64 {
    x.iter().zip(&i.0).map(|(v, &e)| v.powi(e as i32)).product()
}

/// `E[X_t^i]` for every row index, from `t·α`.
fn symbolic_moments(spec: &ProcessSpec, t: f64, rows: &[MultiIndex], k_max: usize) -> Result<Vec<f64>, SimError> {
    let tq = Poly::constant(to_rational(t)?);
    let value = |p: Poly| -> Result<f64, SimError> {
        p.eval_f64(&Default::default()).map_err(|v| SimError::Internal(format!("moment still contains {v}")))
    };
    match spec.symbolic(k_max)? {
        Symbolic::Uni(alpha) => {
            let m = dot(&tq, &alpha).moments(k_max);
            rows.iter().map(|i| value(m[i.0[0] as usize].clone())).collect()
        }
        Symbolic::Multi(mu) => {
            let m = dot_multi(&tq, &mu).moments(k_max);
            rows.iter().map(|i| value(m.get(i).cloned().unwrap_or_default())).collect()
        }
    }
}

/// Sums of `f(draw)_r` and `f(draw)_r²` over `n` draws, chunked on fixed
/// streams and merged in chunk order.
fn accumulate<F>(n: u64, seed: u64, stream_base: u64, rows: usize, draw: F) -> Vec<(Neumaier, Neumaier)>
where
    F: Fn(&mut ChaCha8Rng, &mut Vec<f64>) + Sync,
{
    let chunks = n.div_ceil(CHUNK as u64);
    let partial: Vec<Vec<(Neumaier, Neumaier)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_base + c);
            let len = (n - c * CHUNK as u64).min(CHUNK as u64);
            let mut acc = vec![(Neumaier::default(), Neumaier::default()); rows];
            let mut values = vec![0.0; rows];
            for _ in 0..len {
                draw(&mut rng, &mut values);
                for (a, v) in acc.iter_mut().zip(&values) {
                    a.0.add(*v);
                    a.1.add(v * v);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![(Neumaier::default(), Neumaier::default()); rows];
    for part in partial {
        for (t, p) in total.iter_mut().zip(part) {
            t.0.merge(&p.0);
            t.1.merge(&p.1);
        }
    }
    total
}

fn moment_rows(
    spec: &ProcessSpec,
    t: f64,
    k_max: usize,
    n: u64,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
) -> Result<Vec<MomentRow>, SimError> {
    if n == 0 {
        return Err(SimError::InvalidParameter("need at least one sample".into()));
    }
    let rows = indices(spec.dim(), k_max);
    let symbolic = symbolic_moments(spec, t, &rows, k_max)?;
    let dim = spec.dim();
    let sums = accumulate(n, seed, MOMENT_STREAMS, rows.len(), |rng, values| {
        let mut x = vec![0.0; dim];
        draw(rng, &mut x);
        for (v, i) in values.iter_mut().zip(&rows) {
            *v = monomial(&x, i);
        }
    });
    Ok(rows
        .iter()
        .zip(symbolic)
        .zip(sums)
        .map(|((i, sym), (s1, s2))| {
            let (empirical, std_error) = mean_se(&s1, &s2, n);
            MomentRow {
                index: i.0.clone(),
                symbolic: sym,
                empirical,
                std_error,
                z: z_score(empirical - sym, std_error),
            }
        })
        .collect())
}

/// Empirical `E[X_t^i]`, `|i| ≤ k_max`, against the symbolic moments of
/// `t·α`.
pub fn empirical_moments(
    spec: &ProcessSpec,
    t: f64,
    k_max: usize,
    n_samples: u64,
    seed: u64,
) -> Result<SimReport, SimError> {
    check_time("t", t)?;
    let inc = Increment::new(spec, t)?;
    let moments = moment_rows(spec, t, k_max, n_samples, seed, |rng, x| inc.sample_into(rng, x))?;
    Ok(SimReport { n_samples, moments, ..SimReport::empty(spec, seed) })
}

/// Moments of `X_s + ΔX_{t-s}` (two independent increments) against the
/// symbolic moments of `X_t`.
pub fn additivity(
    spec: &ProcessSpec,
    s: f64,
    t: f64,
    k_max: usize,
    n_samples: u64,
    seed: u64,
) -> Result<SimReport, SimError> {
    check_time("s", s)?;
    if t.is_nan() || t <= s {
        return Err(SimError::InvalidParameter(format!("need 0 < s < t, got s = {s}, t = {t}")));
    }
    let (first, second) = (Increment::new(spec, s)?, Increment::new(spec, t - s)?);
    let moments = moment_rows(spec, t, k_max, n_samples, seed, |rng, x| {
        let mut y = vec![0.0; x.len()];
        first.sample_into(rng, x);
        second.sample_into(rng, &mut y);
        for (a, b) in x.iter_mut().zip(y) {
            *a += b;
        }
    })?;
    Ok(SimReport { n_samples, moments, ..SimReport::empty(spec, seed) })
}

/// `Q_i(x, τ)` for every row index, compiled for numeric evaluation in `x`.
fn compiled_q(spec: &ProcessSpec, rows: &[MultiIndex], k: usize, tau: f64) -> Result<Vec<NumericPoly>, SimError> {
    let tau = Poly::constant(to_rational(tau)?);
    let tv = Var::new(umbral::tsh::T);
    match spec.symbolic(k)? {
        Symbolic::Uni(alpha) => {
            let q = q_polys(&alpha, k)?;
            let xs = [Var::new(umbral::tsh::X)];
            rows.iter().map(|i| NumericPoly::compile(&q[i.0[0] as usize].substitute(tv, &tau), &xs)).collect()
        }
        Symbolic::Multi(mu) => {
            let xs: Vec<Var> = (1..=spec.dim()).map(|j| Var::new(&format!("x{j}"))).collect();
            rows.iter().map(|i| NumericPoly::compile(&q_poly_multi(&mu, i)?.substitute(tv, &tau), &xs)).collect()
        }
    }
}

/// Conditional-expectation check of `E[Q_i(X_t, t) | X_s] = Q_i(X_s, s)`:
/// each of `n_outer` draws of `X_s` is continued `n_inner` times to time `t`,
/// and the residual `mean Q_i(X_t, t) - Q_i(X_s, s)` is averaged over the
/// outer draws.
pub fn martingale_mc(
    spec: &ProcessSpec,
    k: usize,
    s: f64,
    t: f64,
    n_outer: u64,
    n_inner: u64,
    seed: u64,
) -> Result<SimReport, SimError> {
    check_time("s", s)?;
    if t.is_nan() || t <= s {
        return Err(SimError::InvalidParameter(format!("need 0 < s < t, got s = {s}, t = {t}")));
    }
    if n_outer == 0 || n_inner == 0 {
        return Err(SimError::InvalidParameter("need at least one outer and one inner draw".into()));
    }
    let rows = indices(spec.dim(), k);
    let q_s = compiled_q(spec, &rows, k, s)?;
    let q_t = compiled_q(spec, &rows, k, t)?;
    let (first, second) = (Increment::new(spec, s)?, Increment::new(spec, t - s)?);
    let dim = spec.dim();
    let sums = accumulate(n_outer, seed, MARTINGALE_STREAMS, rows.len(), |rng, values| {
        let mut xs = vec![0.0; dim];
        first.sample_into(rng, &mut xs);
        let mut inner = vec![Neumaier::default(); values.len()];
        let mut xt = vec![0.0; dim];
        for _ in 0..n_inner {
            second.sample_into(rng, &mut xt);
            for (a, b) in xt.iter_mut().zip(&xs) {
                *a += b;
            }
            for (acc, q) in inner.iter_mut().zip(&q_t) {
                acc.add(q.eval(&xt));
            }
        }
        for ((v, acc), q) in values.iter_mut().zip(&inner).zip(&q_s) {
            *v = acc.value() / n_inner as f64 - q.eval(&xs);
        }
    });
    let martingale = rows
        .iter()
        .zip(sums)
        .map(|(i, (s1, s2))| {
            let (mean_residual, std_error) = mean_se(&s1, &s2, n_outer);
            MartingaleRow { index: i.0.clone(), s, t, mean_residual, std_error, z: z_score(mean_residual, std_error) }
        })
        .collect();
    Ok(SimReport { n_outer, n_inner, martingale, ..SimReport::empty(spec, seed) })
}

/// Moments at `t` from `n_samples` paths plus the martingale check on
/// `(s, t)` with `n_samples / n_inner` outer draws.
pub fn simulate(
    spec: &ProcessSpec,
    k: usize,
    s: f64,
    t: f64,
    n_samples: u64,
    n_inner: u64,
    seed: u64,
) -> Result<SimReport, SimError> {
    if n_inner == 0 {
        return Err(SimError::InvalidParameter("need at least one inner draw".into()));
    }
    let moments = empirical_moments(spec, t, k, n_samples, seed)?;
    let mart = martingale_mc(spec, k, s, t, (n_samples / n_inner).max(1), n_inner, seed)?;
    Ok(SimReport { martingale: mart.martingale, n_outer: mart.n_outer, n_inner, ..moments })
}
