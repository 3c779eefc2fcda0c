//! Multivariate time-space harmonic polynomials
//! `Q_i(x, t) = E[(x - t·μ)^i]` in `x = (x_1, …, x_d)`, and the multivariate
//! Lévy–Sheffer polynomials.

use std::fmt;
use std::str::FromStr;

use super::series::binom;
use super::{
    add_multi, constant_multi, dot_multi, linear_map, partition_multi, scale_multi, special_tuple, split_by_vars,
    Moments, MultiSeries, MultiUmbra,
};
use crate::combinatorics::MultiIndex;
use crate::error::{Result, UmbralError};
use crate::poly::{ratio, Poly, Rational, Var};
use crate::series::{expm1_over_z, Series};
use crate::tsh::{s, t, Identity, S, T};
use crate::umbra::{bell, dot};

/// The indeterminate `x_{j+1}` for the 0-based coordinate `j`.
pub fn x_var(j: usize) -> Poly {
    Poly::var(&format!("x{}", j + 1))
}

fn x_vars(d: usize) -> Vec<Var> {
    (1..=d).map(|j| Var::new(&format!("x{j}"))).collect()
}

fn x_power(i: &MultiIndex) -> Poly {
    i.0.iter().enumerate().fold(Poly::one(), |acc, (j, &e)| &acc * &x_var(j).pow(e))
}

fn check_index(mu: &MultiUmbra, i: &MultiIndex) -> Result<()> {
    if i.dim() == mu.dim() {
        Ok(())
    } else {
        Err(UmbralError::DimensionMismatch(format!("index {i:?} for a {}-tuple", mu.dim())))
    }
}

fn ensure_free(mu: &MultiUmbra, n: usize) -> Result<()> {
    let mut reserved = x_vars(mu.dim());
    reserved.extend([Var::new(T), Var::new(S)]);
    for g in mu.moments(n).values() {
        if let Some(v) = reserved.iter().find(|v| g.contains_var(**v)) {
            return Err(UmbralError::VariableCollision(*v));
        }
    }
    Ok(())
}

/// `Σ_{k ≤ i} C(i,k) x^{i-k} m_k`.
fn binomial_in_x(m: &Moments, i: &MultiIndex) -> Poly {
    let mut acc = Poly::zero();
    for k in i.below() {
        if let Some(mk) = m.get(&k) {
            let rest = i.checked_sub(&k).unwrap();
            acc += &(&x_power(&rest) * mk).scale(&binom(i, &k));
        }
    }
    acc
}

/// `Q_i(x, t) = Σ_{k ≤ i} C(i,k) x^{i-k} E[(-t·μ)^k]`.
pub fn q_poly_multi(mu: &MultiUmbra, i: &MultiIndex) -> Result<Poly> {
    check_index(mu, i)?;
    ensure_free(mu, i.order())?;
    let m = dot_multi(&-t(), mu).moments(i.order());
    Ok(binomial_in_x(&m, i))
}

/// `E[Q_i(X_t, t) | X_s = x] = Q_i(x, s)`, expanded as
/// `Σ_{k ≤ i} C(i,k) E[(x + (t-s)·μ)^k] E[(-t·μ)^{i-k}]`.
pub fn martingale_check_multi(mu: &MultiUmbra, i: &MultiIndex) -> Result<Identity> {
    check_index(mu, i)?;
    ensure_free(mu, i.order())?;
    let n = i.order();
    let xs: Vec<Poly> = (0..mu.dim()).map(x_var).collect();
    let ahead = add_multi(&constant_multi(&xs), &dot_multi(&(&t() - &s()), mu))?.moments(n);
    let back = dot_multi(&-t(), mu).moments(n);
    let mut left = Poly::zero();
    for k in i.below() {
        let rest = i.checked_sub(&k).unwrap();
        if let (Some(a), Some(b)) = (ahead.get(&k), back.get(&rest)) {
            left += &(a * b).scale(&binom(i, &k));
        }
    }
    let right = q_poly_multi(mu, i)?.substitute(Var::new(T), &s());
    Ok(Identity::new(left, right))
}

/// `Σ_{k ≤ v} x^k p_k(t)` with `p_k(t) = Σ_{k ≤ i ≤ v} C(i,k) p_i(0)
/// E[(-t·μ)^{i-k}]`.
pub fn tsh_coefficients_multi(mu: &MultiUmbra, p0: &Moments, v: &MultiIndex) -> Result<Poly> {
    check_index(mu, v)?;
    ensure_free(mu, v.order())?;
    let m = dot_multi(&-t(), mu).moments(v.order());
    let mut acc = Poly::zero();
    for (i, pi) in p0 {
        if !i.le(v) || pi.is_zero() {
            continue;
        }
        for k in i.below() {
            if let Some(mk) = m.get(&i.checked_sub(&k).unwrap()) {
                acc += &(&(&x_power(&k) * pi) * mk).scale(&binom(i, &k));
            }
        }
    }
    Ok(acc)
}

/// Decides whether `P(x, t)` is TSH for `{t·μ}` by rebuilding it from its
/// coefficients at `t = 0`.
pub fn is_tsh_multi(mu: &MultiUmbra, p: &Poly) -> Result<Identity> {
    let d = mu.dim();
    let p0 = split_by_vars(&p.substitute(Var::new(T), &Poly::zero()), &x_vars(d));
    let mut v = MultiIndex::zero(d);
    for i in p.terms().map(|(m, _)| MultiIndex::new(x_vars(d).iter().map(|xv| m.exponent(*xv)).collect())) {
        v = MultiIndex::new(v.0.iter().zip(&i.0).map(|(a, b)| *a.max(b)).collect());
    }
    Ok(Identity::new(p.clone(), tsh_coefficients_multi(mu, &p0, &v)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiFamily {
    Hermite,
    Bernoulli,
    Euler,
}

impl MultiFamily {
    pub const ALL: [MultiFamily; 3] = [MultiFamily::Hermite, MultiFamily::Bernoulli, MultiFamily::Euler];

    pub fn name(self) -> &'static str {
        match self {
            MultiFamily::Hermite => "hermite",
            MultiFamily::Bernoulli => "bernoulli",
            MultiFamily::Euler => "euler",
        }
    }
}

impl fmt::Display for MultiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MultiFamily {
    type Err = UmbralError;

    fn from_str(s: &str) -> Result<MultiFamily> {
        MultiFamily::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| UmbralError::UnknownName(s.to_string()))
    }
}

/// Dimension and covariance square root `C` (used by Hermite only).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiFamilyParams {
    pub dim: usize,
    pub c: Vec<Vec<Poly>>,
}

impl MultiFamilyParams {
    /// `C = I`.
    pub fn new(dim: usize) -> MultiFamilyParams {
        let c = (0..dim).map(|j| (0..dim).map(|k| if j == k { Poly::one() } else { Poly::zero() }).collect()).collect();
        MultiFamilyParams { dim, c }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c.len() != self.dim || self.c.iter().any(|row| row.len() != self.dim) {
            return Err(UmbralError::DimensionMismatch(format!("C must be {0}×{0}", self.dim)));
        }
        Ok(())
    }

    /// `Σ = C Cᵀ`.
    pub fn covariance(&self) -> Vec<Vec<Poly>> {
        let d = self.dim;
        (0..d)
            .map(|j| {
                (0..d).map(|k| (0..d).fold(Poly::zero(), |acc, l| &acc + &(&self.c[j][l] * &self.c[k][l]))).collect()
            })
            .collect()
    }
}

/// Unit-time tuple `μ` of the family's process `{t·μ}`: `β·(δCᵀ)` for
/// Hermite, `-1·ι` for Bernoulli and `½(u + (-1·η))` for Euler.
pub fn process_multi(family: MultiFamily, params: &MultiFamilyParams) -> Result<MultiUmbra> {
    params.validate()?;
    let d = params.dim;
    Ok(match family {
        MultiFamily::Hermite => partition_multi(&linear_map(&special_tuple("gaussian", d)?, &params.c)?),
        MultiFamily::Bernoulli => dot_multi(&Poly::int(-1), &special_tuple("bernoulli", d)?),
        MultiFamily::Euler => {
            let minus_eta = dot_multi(&Poly::int(-1), &special_tuple("euler", d)?);
            let u = special_tuple("unity", d)?;
            scale_multi(&Poly::constant(ratio(1, 2)), &add_multi(&u, &minus_eta)?)
        }
    })
}

/// `H_i(x, Σ)`, `B_i^{(t)}(x)` or `𝓔_i^{(t)}(x)` as `Q_i(x, t)`.
pub fn family_multi(family: MultiFamily, i: &MultiIndex, params: &MultiFamilyParams) -> Result<Poly> {
    q_poly_multi(&process_multi(family, params)?, i)
}

/// The same polynomials read off their generating functions:
/// `exp(x zᵀ - ½ t zΣzᵀ)`, `(S/(e^S - 1))^t e^{x zᵀ}` and
/// `(2/(e^S + 1))^t e^{x zᵀ}` with `S = z_1 + ⋯ + z_d`.
pub fn classical_multi(family: MultiFamily, i: &MultiIndex, params: &MultiFamilyParams) -> Result<Poly> {
    params.validate()?;
    let d = params.dim;
    if i.dim() != d {
        return Err(UmbralError::DimensionMismatch(format!("index {i:?} for d = {d}")));
    }
    let n = i.order();
    let xs: Vec<Poly> = (0..d).map(x_var).collect();
    let ex = MultiSeries::exp_linear(&xs, n);
    let g = match family {
        MultiFamily::Hermite => {
            let sigma = params.covariance();
            let mut quad = Moments::new();
            for j in 0..d {
                for k in j..d {
                    let mut idx = vec![0; d];
                    idx[j] += 1;
                    idx[k] += 1;
                    quad.insert(MultiIndex::new(idx), sigma[j][k].clone());
                }
            }
            // the EGF coefficients of ½ zΣzᵀ are the entries of Σ
            MultiSeries::from_coeffs(d, n, quad).scale(&-t()).exp()?
        }
        MultiFamily::Bernoulli => MultiSeries::of_sum(&expm1_over_z(n), d).pow(&-t())?,
        MultiFamily::Euler => {
            let half_one_plus_e = Series::exp_linear(&Poly::one(), n)
                .add_constant(&Poly::one())
                .scale(&Poly::constant(Rational::new(1.into(), 2.into())));
            MultiSeries::of_sum(&half_one_plus_e, d).pow(&-t())?
        }
    };
    Ok(g.mul(&ex)?.coeff(i))
}

/// `V_k(x, t) = E[(t·μ + (x_1 + ⋯ + x_d)·β·ν)^k]`, whose generating function
/// is `f(μ,z)^t exp{(x_1 + ⋯ + x_d)(f(ν,z) - 1)}`. Every first-order moment
/// of `ν` must be nonzero.
pub fn levy_sheffer_multi(mu: &MultiUmbra, nu: &MultiUmbra, k: &MultiIndex) -> Result<Poly> {
    check_index(mu, k)?;
    check_index(nu, k)?;
    for j in 0..nu.dim() {
        if nu.moment(&MultiIndex::unit(nu.dim(), j)).is_zero() {
            return Err(UmbralError::InvalidParameter(format!(
                "first moment of coordinate {} of {} vanishes",
                j + 1,
                nu.label()
            )));
        }
    }
    ensure_free(mu, k.order())?;
    ensure_free(nu, k.order())?;
    let sum_x = (0..mu.dim()).fold(Poly::zero(), |acc, j| &acc + &x_var(j));
    let space = dot_multi(&dot(&sum_x, &bell()), nu);
    Ok(add_multi(&dot_multi(&t(), mu), &space)?.moment(k))
}
