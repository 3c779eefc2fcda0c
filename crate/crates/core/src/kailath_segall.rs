//! Kailath–Segall polynomials `P_n(x_1, …, x_n)`.
//!
//! `x_i` stands for the `i`-th variation of a process; here the variations
//! are plain indeterminates named `x1, x2, …`.

use num_traits::One;

use crate::combinatorics::{complete_bell, factorial_rat};
use crate::error::{Result, UmbralError};
use crate::families::{Family, FamilyParams};
use crate::poly::{rat, Poly, Rational, Var};
use crate::tsh::{t, x, Identity};
use crate::umbra::{cumulants, Umbra};

/// The indeterminate `x_i`.
pub fn ks_var(i: usize) -> Poly {
    Poly::var(&format!("x{i}"))
}

/// `P_0, …, P_n` from
/// `P_n = (1/n)(P_{n-1} x_1 - P_{n-2} x_2 + ⋯ + (-1)^{n-1} P_0 x_n)`.
pub fn ks_recursive_all(n: usize) -> Vec<Poly> {
    let mut p = vec![Poly::one()];
    for m in 1..=n {
        let mut acc = Poly::zero();
        for i in 1..=m {
            let term = &p[m - i] * &ks_var(i);
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        p.push(acc.scale(&(Rational::one() / rat(m as i64))));
    }
    p
}

pub fn ks_recursive(n: usize) -> Poly {
    ks_recursive_all(n).pop().unwrap()
}

/// `P_n = Y_n(c_1, …, c_n) / n!` with `c_i = (-1)^{i-1} (i-1)! x_i`, the
/// moments of the partition umbra of `(χ·χ) p`.
pub fn ks_umbral(n: usize) -> Poly {
    let c: Vec<Poly> = (1..=n)
        .map(|i| {
            let sign = if i % 2 == 1 { rat(1) } else { rat(-1) };
            ks_var(i).scale(&(sign * factorial_rat(i - 1)))
        })
        .collect();
    complete_bell(n, &c).scale(&(Rational::one() / factorial_rat(n)))
}

/// `P_n` with `x_i` replaced by `values[i-1]` (missing values are 0).
pub fn ks_evaluate(p: &Poly, n: usize, values: &[Poly]) -> Poly {
    let map = (1..=n).map(|i| (Var::new(&format!("x{i}")), values.get(i - 1).cloned().unwrap_or_default())).collect();
    p.substitute_all(&map)
}

/// `P_n(a x_1, a² x_2, …, aⁿ x_n) = aⁿ P_n(x_1, …, x_n)`.
pub fn ks_homogeneity_check(n: usize, a: &Poly) -> Identity {
    let p = ks_recursive(n);
    let scaled: Vec<Poly> = (1..=n).map(|i| &a.pow(i as u32) * &ks_var(i)).collect();
    Identity::new(ks_evaluate(&p, n, &scaled), &a.pow(n as u32) * &p)
}

/// Variations that turn `n! P_n` into `Q_n(x,t)` for the process `{t·α}`:
/// `(-1)^{i-1} (i-1)! x_i = E[κ_{x·u}^i] + E[κ_{-t·α}^i]`, i.e.
/// `x_i = (-1)^{i-1} (x δ_{i,1} - t κ_i(α)) / (i-1)!`.
pub fn tsh_assignment(alpha: &Umbra, n: usize) -> Vec<Poly> {
    let kappa = cumulants(alpha).moments(n);
    (1..=n)
        .map(|i| {
            let mut v = -&(&t() * &kappa[i]);
            if i == 1 {
                v += &x();
            }
            let sign = if i % 2 == 1 { rat(1) } else { rat(-1) };
            v.scale(&(sign / factorial_rat(i - 1)))
        })
        .collect()
}

/// The variations `x_1, …, x_k` used for `family`.
pub fn ks_assignment(family: Family, k: usize, params: &FamilyParams) -> Result<Vec<Poly>> {
    params.validate()?;
    let (x, t) = (x(), t());
    let lt = &params.lambda * &t;
    (1..=k)
        .map(|i| match family {
            Family::Hermite => match i {
                1 => Ok(x.clone()),
                2 => Ok(&params.sigma.pow(2) * &t),
                _ => Ok(Poly::zero()),
            },
            Family::PoissonCharlier => Ok(if i == 1 { &x - &lt } else { x.clone() }),
            // matching log g(z) = λtz - x(e^z - 1) term by term gives
            // x_i = x / (i-1)! (after the sign flip), not x
            Family::Actuarial => Ok(if i == 1 { &x - &lt } else { x.scale(&(Rational::one() / factorial_rat(i - 1))) }),
            Family::Laguerre => Ok(if i == 1 { &t - &x } else { t.clone() }),
            Family::Meixner => {
                let c = (Rational::one() / &params.p).pow(i as i32) - Rational::one();
                Ok(&x.scale(&c) - &t)
            }
            other => Err(UmbralError::InvalidParameter(format!("no Kailath–Segall specialization for {other}"))),
        })
        .collect::<Result<Vec<_>>>()
}

/// `k! P_k` at the family's variations, with the sign `(-1)^k` for Laguerre
/// and actuarial, so that the result equals `families::umbral(family, k)`.
pub fn ks_specialize(family: Family, k: usize, params: &FamilyParams) -> Result<Poly> {
    let values = ks_assignment(family, k, params)?;
    let p = ks_evaluate(&ks_recursive(k), k, &values).scale(&factorial_rat(k));
    let flip = matches!(family, Family::Laguerre | Family::Actuarial) && k % 2 == 1;
    Ok(if flip { -p } else { p })
}
