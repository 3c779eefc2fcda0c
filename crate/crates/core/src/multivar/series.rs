//! Truncated `d`-variate exponential generating functions.
//!
//! The coefficient stored at `i` multiplies `z^i / i!`, and only indices with
//! `|i| ≤ order` are kept. Zero coefficients are not stored.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::One;

use crate::combinatorics::MultiIndex;
use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};
use crate::series::Series;

pub type Moments = BTreeMap<MultiIndex, Poly>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiSeries {
    dim: usize,
    order: usize,
    coeffs: Moments,
}

pub(crate) fn binom(i: &MultiIndex, k: &MultiIndex) -> Rational {
    Rational::from_integer(i.binomial(k))
}

impl MultiSeries {
    pub fn from_coeffs(dim: usize, order: usize, coeffs: Moments) -> MultiSeries {
        let coeffs = coeffs.into_iter().filter(|(i, c)| i.order() <= order && !c.is_zero()).collect();
        MultiSeries { dim, order, coeffs }
    }

    pub fn zero(dim: usize, order: usize) -> MultiSeries {
        MultiSeries { dim, order, coeffs: Moments::new() }
    }

    pub fn one(dim: usize, order: usize) -> MultiSeries {
        MultiSeries::zero(dim, order).add_constant(&Poly::one())
    }

    /// `exp(x zᵀ)`: coefficient `x^i`.
    pub fn exp_linear(x: &[Poly], order: usize) -> MultiSeries {
        let d = x.len();
        let coeffs = MultiIndex::up_to_order(d, order)
            .into_iter()
            .map(|i| {
                let c = i.0.iter().zip(x).fold(Poly::one(), |acc, (&e, xj)| &acc * &xj.pow(e));
                (i, c)
            })
            .collect();
        MultiSeries::from_coeffs(d, order, coeffs)
    }

    /// `F(z_1 + ⋯ + z_d)` for a univariate `F`: the coefficient at `i` is
    /// `F_{|i|}`.
    pub fn of_sum(f: &Series, dim: usize) -> MultiSeries {
        let order = f.order();
        let coeffs = MultiIndex::up_to_order(dim, order)
            .into_iter()
            .map(|i| {
                let c = f.coeff(i.order()).clone();
                (i, c)
            })
            .collect();
        MultiSeries::from_coeffs(dim, order, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &Moments {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Moments {
        self.coeffs
    }

    pub fn coeff(&self, i: &MultiIndex) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn constant_term(&self) -> Poly {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    pub fn scale(&self, c: &Poly) -> MultiSeries {
        let coeffs = self.coeffs.iter().map(|(i, a)| (i.clone(), a * c)).collect();
        MultiSeries::from_coeffs(self.dim, self.order, coeffs)
    }

    pub fn add_constant(&self, c: &Poly) -> MultiSeries {
        let mut coeffs = self.coeffs.clone();
        let zero = MultiIndex::zero(self.dim);
        let c0 = &coeffs.get(&zero).cloned().unwrap_or_default() + c;
        coeffs.insert(zero, c0);
        MultiSeries::from_coeffs(self.dim, self.order, coeffs)
    }

    fn check(&self, other: &MultiSeries) -> Result<()> {
        if self.dim != other.dim {
            return Err(UmbralError::DimensionMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        if self.order != other.order {
            return Err(UmbralError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    /// `h_i = Σ_{k ≤ i} C(i,k) f_k g_{i-k}`.
    pub fn mul(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check(other)?;
        let mut out = Moments::new();
        for (k, fk) in &self.coeffs {
            for (j, gj) in &other.coeffs {
                let i = k.add(j);
                if i.order() > self.order {
                    continue;
                }
                let term = (fk * gj).scale(&binom(&i, k));
                *out.entry(i).or_default() += &term;
            }
        }
        Ok(MultiSeries::from_coeffs(self.dim, self.order, out))
    }

    /// `exp f` for `f` with zero constant term, from `|i| F_i = Σ_{0<k≤i}
    /// C(i,k) |k| f_k F_{i-k}`.
    pub fn exp(&self) -> Result<MultiSeries> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(UmbralError::ConstantTerm(c0.to_string()));
        }
        let mut out = Moments::new();
        for i in MultiIndex::up_to_order(self.dim, self.order) {
            if i.is_zero() {
                out.insert(i, Poly::one());
                continue;
            }
            let mut acc = Poly::zero();
            for k in i.below().into_iter().filter(|k| !k.is_zero()) {
                let (Some(fk), Some(rest)) = (self.coeffs.get(&k), out.get(&i.checked_sub(&k).unwrap())) else {
                    continue;
                };
                acc += &(fk * rest).scale(&(binom(&i, &k) * rat(k.order() as i64)));
            }
            let value = acc.scale(&(Rational::one() / rat(i.order() as i64)));
            if !value.is_zero() {
                out.insert(i, value);
            }
        }
        Ok(MultiSeries::from_coeffs(self.dim, self.order, out))
    }

    /// `log f` for `f` with constant term 1.
    pub fn log(&self) -> Result<MultiSeries> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(UmbralError::ConstantTerm(c0.to_string()));
        }
        let mut out = Moments::new();
        for i in MultiIndex::up_to_order(self.dim, self.order) {
            if i.is_zero() {
                continue;
            }
            let mut acc = Poly::zero();
            for k in i.below().into_iter().filter(|k| !k.is_zero() && *k != i) {
                let (Some(gk), Some(rest)) = (out.get(&k), self.coeffs.get(&i.checked_sub(&k).unwrap())) else {
                    continue;
                };
                acc += &(gk * rest).scale(&(binom(&i, &k) * rat(k.order() as i64)));
            }
            let value = &self.coeff(&i) - &acc.scale(&(Rational::one() / rat(i.order() as i64)));
            if !value.is_zero() {
                out.insert(i, value);
            }
        }
        Ok(MultiSeries::from_coeffs(self.dim, self.order, out))
    }

    /// `f^e = exp(e log f)` for `f` with constant term 1.
    pub fn pow(&self, e: &Poly) -> Result<MultiSeries> {
        self.log()?.scale(e).exp()
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;

    fn add(self, other: &MultiSeries) -> MultiSeries {
        assert_eq!((self.dim, self.order), (other.dim, other.order), "incompatible series");
        let mut coeffs = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            *coeffs.entry(i.clone()).or_default() += c;
        }
        MultiSeries::from_coeffs(self.dim, self.order, coeffs)
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;

    fn sub(self, other: &MultiSeries) -> MultiSeries {
        self + &other.scale(&Poly::int(-1))
    }
}
