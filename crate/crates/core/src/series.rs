//! Truncated exponential generating functions with polynomial coefficients.
//!
//! A [`Series`] of order `N` stores `c_0, …, c_N`, where `c_k` multiplies
//! `z^k / k!`. For the generating function of an umbra the coefficients are
//! exactly its moments, so reading moments back is direct indexing.

use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::{binomial_rat, factorial_rat};
use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};

/// Truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    /// Series with EGF coefficients `coeffs[0..=order]`; missing entries are 0.
    pub fn from_coeffs(coeffs: Vec<Poly>, order: usize) -> Series {
        let mut c = coeffs;
        c.resize(order + 1, Poly::zero());
        Series { coeffs: c }
    }

    /// Series from ordinary coefficients (`c_k` multiplies `z^k`).
    pub fn from_ordinary(ordinary: Vec<Poly>, order: usize) -> Series {
        let coeffs = ordinary.into_iter().enumerate().map(|(k, c)| c.scale(&factorial_rat(k))).collect();
        Series::from_coeffs(coeffs, order)
    }

    pub fn zero(order: usize) -> Series {
        Series::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Series {
        Series::from_coeffs(vec![Poly::one()], order)
    }

    /// The series `z`.
    pub fn z(order: usize) -> Series {
        Series::from_coeffs(vec![Poly::zero(), Poly::one()], order)
    }

    /// `e^{c z}`: coefficients `c^k`.
    pub fn exp_linear(c: &Poly, order: usize) -> Series {
        let mut coeffs = vec![Poly::one()];
        for k in 1..=order {
            let next = &coeffs[k - 1] * c;
            coeffs.push(next);
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// EGF coefficient `c_k`, i.e. the k-th moment for an umbra series.
    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    /// Ordinary coefficient `c_k / k!`.
    pub fn ordinary_coeff(&self, k: usize) -> Poly {
        self.coeffs[k].scale(&(Rational::one() / factorial_rat(k)))
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(UmbralError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Poly) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `f(c z)`.
    pub fn dilate(&self, c: &Poly) -> Series {
        let mut power = Poly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power = &power * c;
        }
        Series { coeffs }
    }

    pub fn add_constant(&self, c: &Poly) -> Series {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + c;
        out
    }

    /// EGF product `h_n = Σ_k C(n,k) f_k g_{n-k}`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let n_max = self.order();
        let mut coeffs = vec![Poly::zero(); n_max + 1];
        for (n, slot) in coeffs.iter_mut().enumerate() {
            let mut acc = Poly::zero();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += &(a * b).scale(&binomial_rat(n, k));
            }
            *slot = acc;
        }
        Series { coeffs }
    }

    /// Formal derivative in `z` (order drops by one, padded back with 0).
    pub fn derivative(&self) -> Series {
        let mut coeffs: Vec<Poly> = self.coeffs[1..].to_vec();
        coeffs.push(Poly::zero());
        Series { coeffs }
    }

    /// `exp(f)`; requires `f_0 = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(UmbralError::ConstantTerm(format!("exp needs f_0 = 0, got {}", self.coeffs[0])));
        }
        // g' = f' g  ⇒  g_{n+1} = Σ_k C(n,k) f_{k+1} g_{n-k}
        let n_max = self.order();
        let mut g = vec![Poly::one()];
        for n in 0..n_max {
            let mut acc = Poly::zero();
            for k in 0..=n {
                let f = &self.coeffs[k + 1];
                if f.is_zero() {
                    continue;
                }
                acc += &(f * &g[n - k]).scale(&binomial_rat(n, k));
            }
            g.push(acc);
        }
        Ok(Series { coeffs: g })
    }

    /// `log(f)`; requires `f_0 = 1`. The result has zero constant term.
    pub fn log(&self) -> Result<Series> {
        self.require_unit_constant("log")?;
        // f' = l' f  ⇒  l_{n+1} = f_{n+1} - Σ_{k<n} C(n,k) l_{k+1} f_{n-k}
        let n_max = self.order();
        let mut l = vec![Poly::zero()];
        for n in 0..n_max {
            let mut acc = self.coeffs[n + 1].clone();
            for k in 0..n {
                let lk = &l[k + 1];
                if lk.is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                acc -= &(lk * &self.coeffs[n - k]).scale(&binomial_rat(n, k));
            }
            l.push(acc);
        }
        Ok(Series { coeffs: l })
    }

    /// `f^e = exp(e log f)` for a polynomial exponent `e`; requires `f_0 = 1`.
    pub fn pow(&self, e: &Poly) -> Result<Series> {
        self.require_unit_constant("pow")?;
        if e.is_zero() {
            return Ok(Series::one(self.order()));
        }
        self.log()?.scale(e).exp()
    }

    /// Multiplicative inverse; `f_0` must be a nonzero rational.
    pub fn recip(&self) -> Result<Series> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| UmbralError::NotInvertible(self.coeffs[0].to_string()))?;
        let inv0 = Rational::one() / c0;
        // Σ_k C(n,k) f_k h_{n-k} = δ_{n,0}
        let n_max = self.order();
        let mut h = vec![Poly::constant(inv0.clone())];
        for n in 1..=n_max {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &h[n - k]).scale(&binomial_rat(n, k));
            }
            h.push((-acc).scale(&inv0));
        }
        Ok(Series { coeffs: h })
    }

    /// `f(g(z) - 1)` truncated at the common order; requires `g_0 = 1`.
    pub fn compose_shifted(&self, g: &Series) -> Result<Series> {
        self.check_order(g)?;
        g.require_unit_constant("compose_shifted")?;
        let inner = g.add_constant(&Poly::int(-1));
        Ok(self.compose_unchecked(&inner))
    }

    /// `f(h(z))` for `h_0 = 0`, via `Σ_k f_k h^k / k!`.
    fn compose_unchecked(&self, h: &Series) -> Series {
        let n_max = self.order();
        let mut out = Series::zero(n_max);
        out.coeffs[0] = self.coeffs[0].clone();
        let mut power = Series::one(n_max);
        for k in 1..=n_max {
            power = power.mul_unchecked(h).scale(&Poly::constant(rat(1) / rat(k as i64)));
            if self.coeffs[k].is_zero() {
                continue;
            }
            out = &out + &power.scale(&self.coeffs[k]);
        }
        out
    }

    /// Compositional inverse in the umbral sense: returns `h` with `h_0 = 1`
    /// and `f(h(z) - 1) = 1 + z`. Needs `f_0 = 1` and `f_1` a nonzero
    /// rational. Newton iteration on `F(H) = z` with `F = f - 1`, `H = h - 1`.
    pub fn revert(&self) -> Result<Series> {
        self.require_unit_constant("revert")?;
        let f1 = self.coeffs[1]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| UmbralError::VanishingFirstMoment(self.coeffs[1].to_string()))?;
        let n_max = self.order();
        let big_f = self.add_constant(&Poly::int(-1));
        let f_prime = self.derivative();
        let z = Series::z(n_max);
        // H ≈ z / f_1 is correct to order 1; each step doubles the precision.
        let mut h = z.scale(&Poly::constant(Rational::one() / f1));
        let mut correct = 1usize;
        while correct < n_max {
            let residual = &big_f.compose_unchecked(&h) - &z;
            let slope = f_prime.compose_unchecked(&h);
            let step = residual.mul_unchecked(&slope.recip()?);
            h = &h - &step;
            correct *= 2;
        }
        Ok(h.add_constant(&Poly::one()))
    }

    fn require_unit_constant(&self, op: &str) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return Err(UmbralError::ConstantTerm(format!("{op} needs f_0 = 1, got {}", self.coeffs[0])));
        }
        Ok(())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

/// Truncated series whose ordinary coefficients are all rational: handy
/// builder for closed forms like `log(1+z)`.
pub fn from_ordinary_fn(order: usize, f: impl Fn(usize) -> Rational) -> Series {
    Series::from_ordinary((0..=order).map(|k| Poly::constant(f(k))).collect(), order)
}

/// `(e^z - 1) / z`, whose EGF coefficients are `1 / (k + 1)`.
pub fn expm1_over_z(order: usize) -> Series {
    Series::from_coeffs(
        (0..=order).map(|k| Poly::constant(Rational::new(1.into(), ((k + 1) as i64).into()))).collect(),
        order,
    )
}

/// `log(1 + z)`: EGF coefficients `(-1)^{k-1} (k-1)!`.
pub fn log1p(order: usize) -> Series {
    from_ordinary_fn(order, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(sign.into(), (k as i64).into())
        }
    })
}
