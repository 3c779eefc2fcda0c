use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use umbral::combinatorics::MultiIndex;
use umbral::families::{process_umbra, Family, FamilyParams};
use umbral::multivar::{partition_multi, Moments, MultiUmbra};
use umbral::umbra::{partition_umbra, Umbra};
use umbral::{Poly, Rational};

use crate::SimError;

/// Jump law of a compound Poisson process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum Jump {
    Uniform {
        a: f64,
        b: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    /// Exponential with the given mean.
    Exponential {
        mean: f64,
    },
    PointMass {
        c: f64,
    },
}

/// A concrete Lévy process started at 0.
///
/// `Gamma { lambda }` has `X_t ~ Gamma(shape λt, scale 1)` and
/// `Pascal { p }` has negative binomial marginals with `d = p/(1-p)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProcessSpec {
    Brownian { s: f64 },
    Poisson { lambda: f64 },
    Gamma { lambda: f64 },
    Pascal { p: f64 },
    CompoundPoisson { lambda: f64, jump: Jump },
    MultivariateBrownian { sigma: Vec<Vec<f64>> },
}

/// Unit-time umbra (or tuple) of a process: `X_t ≡ t·α`.
#[derive(Clone, Debug)]
pub enum Symbolic {
    Uni(Umbra),
    Multi(MultiUmbra),
}

/// Nearest small-denominator rational, so that `0.1` becomes `1/10`.
pub fn to_rational(v: f64) -> Result<Rational, SimError> {
    let r = Rational64::approximate_float(v)
        .ok_or_else(|| SimError::InvalidParameter(format!("{v} has no rational approximation")))?;
    Ok(Rational::new((*r.numer()).into(), (*r.denom()).into()))
}

fn rat_poly(v: f64) -> Result<Poly, SimError> {
    Ok(Poly::constant(to_rational(v)?))
}

fn finite(name: &str, v: f64) -> Result<(), SimError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(SimError::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<(), SimError> {
    finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(SimError::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

impl Jump {
    pub fn validate(&self) -> Result<(), SimError> {
        match *self {
            Jump::Uniform { a, b } => {
                finite("a", a)?;
                finite("b", b)?;
                if a >= b {
                    return Err(SimError::InvalidParameter(format!("uniform jumps need a < b, got [{a}, {b}]")));
                }
                Ok(())
            }
            Jump::Normal { mean, sd } => {
                finite("mean", mean)?;
                positive("sd", sd)
            }
            Jump::Exponential { mean } => positive("mean", mean),
            Jump::PointMass { c } => finite("c", c),
        }
    }

    /// `E[J^i]` for `i = 0..=n`.
    pub fn moments(&self, n: usize) -> Result<Vec<Poly>, SimError> {
        let mut m = vec![Poly::one()];
        match *self {
            Jump::Uniform { a, b } => {
                let (a, b) = (rat_poly(a)?, rat_poly(b)?);
                for i in 1..=n {
                    let mut acc = Poly::zero();
                    for j in 0..=i {
                        acc += &(&a.pow(j as u32) * &b.pow((i - j) as u32));
                    }
                    m.push(acc.scale(&Rational::new(1.into(), ((i + 1) as i64).into())));
                }
            }
            Jump::Normal { mean, sd } => {
                let (mu, var) = (rat_poly(mean)?, rat_poly(sd)?.pow(2));
                for i in 1..=n {
                    let mut next = &mu * &m[i - 1];
                    if i >= 2 {
                        next += &(&var * &m[i - 2]).scale(&Rational::from_integer(((i - 1) as i64).into()));
                    }
                    m.push(next);
                }
            }
            Jump::Exponential { mean } => {
                let theta = rat_poly(mean)?;
                for i in 1..=n {
                    let next = (&m[i - 1] * &theta).scale(&Rational::from_integer((i as i64).into()));
                    m.push(next);
                }
            }
            Jump::PointMass { c } => {
                let c = rat_poly(c)?;
                for i in 1..=n {
                    let next = &m[i - 1] * &c;
                    m.push(next);
                }
            }
        }
        Ok(m)
    }
}

impl ProcessSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProcessSpec::Brownian { .. } => "brownian",
            ProcessSpec::Poisson { .. } => "poisson",
            ProcessSpec::Gamma { .. } => "gamma",
            ProcessSpec::Pascal { .. } => "pascal",
            ProcessSpec::CompoundPoisson { .. } => "compound-poisson",
            ProcessSpec::MultivariateBrownian { .. } => "multivariate-brownian",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ProcessSpec::MultivariateBrownian { sigma } => sigma.len(),
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        match self {
            ProcessSpec::Brownian { s } => positive("s", *s),
            ProcessSpec::Poisson { lambda } | ProcessSpec::Gamma { lambda } => positive("lambda", *lambda),
            ProcessSpec::Pascal { p } => {
                finite("p", *p)?;
                if *p > 0.0 && *p < 1.0 {
                    Ok(())
                } else {
                    Err(SimError::InvalidParameter(format!("p must lie in (0, 1), got {p}")))
                }
            }
            ProcessSpec::CompoundPoisson { lambda, jump } => {
                positive("lambda", *lambda)?;
                jump.validate()
            }
            ProcessSpec::MultivariateBrownian { sigma } => crate::sample::covariance_root(sigma).map(|_| ()),
        }
    }

    /// The unit-time umbra `α` with `X_t ≡ t·α`, exact in the parameters
    /// (read as small-denominator rationals). Compound Poisson moments are
    /// exact up to `order`.
    pub fn symbolic(&self, order: usize) -> Result<Symbolic, SimError> {
        self.validate()?;
        let family =
            |f: Family, params: FamilyParams| process_umbra(f, &params).map(Symbolic::Uni).map_err(SimError::from);
        let base = FamilyParams::default();
        match self {
            ProcessSpec::Brownian { s } => family(Family::Hermite, FamilyParams { sigma: rat_poly(*s)?, ..base }),
            ProcessSpec::Poisson { lambda } => {
                family(Family::PoissonCharlier, FamilyParams { lambda: rat_poly(*lambda)?, ..base })
            }
            ProcessSpec::Gamma { lambda } => {
                family(Family::Actuarial, FamilyParams { lambda: rat_poly(*lambda)?, ..base })
            }
            ProcessSpec::Pascal { p } => family(Family::Meixner, FamilyParams { p: to_rational(*p)?, ..base }),
            ProcessSpec::CompoundPoisson { lambda, jump } => {
                let lambda = rat_poly(*lambda)?;
                let kappa: Vec<Poly> = jump
                    .moments(order)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| if i == 0 { m } else { &lambda * &m })
                    .collect();
                let kappa = Umbra::from_moments("lambda J", kappa)?;
                Ok(Symbolic::Uni(partition_umbra(&kappa)))
            }
            ProcessSpec::MultivariateBrownian { sigma } => {
                let d = sigma.len();
                let mut kappa = Moments::new();
                kappa.insert(MultiIndex::zero(d), Poly::one());
                for j in 0..d {
                    for k in j..d {
                        let mut i = vec![0; d];
                        i[j] += 1;
                        i[k] += 1;
                        let v = rat_poly(sigma[j][k])?;
                        if !v.is_zero() {
                            kappa.insert(MultiIndex::new(i), v);
                        }
                    }
                }
                let kappa = MultiUmbra::from_moments("Sigma", d, kappa)?;
                Ok(Symbolic::Multi(partition_multi(&kappa)))
            }
        }
    }
}
