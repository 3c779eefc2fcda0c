//! Classical polynomial families as TSH polynomials.
//!
//! Every family has two independent constructions:
//!
//! * [`classical`] expands the family's textbook generating function;
//! * [`umbral`] builds it from the process umbra, either as `Q_k` itself or as
//!   `𝒫_k(x,t) = Σ_j Q_j(x,t) B_{k,j}(m_1, …)` for a family-specific `m`.
//!
//! [`Family::normalization`] documents how the two are related, and
//! [`classical_normalized`] applies that map.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::combinatorics::{bell_table, factorial_rat, rising_factorial, stirling_first};
use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};
use crate::series::{from_ordinary_fn, Series};
use crate::tsh::{q_polys, t, x};
use crate::umbra::{
    add, bell, bernoulli, boolean_unity, comp_inverse, composition, constant, cumulants, dot, euler, gaussian,
    partition_umbra, scale, singleton, unity, Umbra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Higher-order (Nørlund) Bernoulli polynomials `B_k^{(t)}(x)`.
    Bernoulli,
    /// Higher-order Euler polynomials `𝓔_k^{(t)}(x)`.
    Euler,
    Krawtchouk,
    PseudoNarumi,
    /// Hermite polynomials `H_k^{(σ²t)}(x)`.
    Hermite,
    PoissonCharlier,
    Laguerre,
    Actuarial,
    /// Meixner polynomials of the first kind.
    Meixner,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Bernoulli,
        Family::Euler,
        Family::Krawtchouk,
        Family::PseudoNarumi,
        Family::Hermite,
        Family::PoissonCharlier,
        Family::Laguerre,
        Family::Actuarial,
        Family::Meixner,
    ];

    /// Families with a Lévy–Meixner (orthogonal) structure.
    pub const ORTHOGONAL: [Family; 4] = [Family::Hermite, Family::PoissonCharlier, Family::Laguerre, Family::Meixner];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
            Family::Krawtchouk => "krawtchouk",
            Family::PseudoNarumi => "pseudo-narumi",
            Family::Hermite => "hermite",
            Family::PoissonCharlier => "poisson-charlier",
            Family::Laguerre => "laguerre",
            Family::Actuarial => "actuarial",
            Family::Meixner => "meixner",
        }
    }

    /// How [`umbral`] relates to [`classical`].
    pub fn normalization(self) -> &'static str {
        match self {
            Family::Bernoulli => "B_k^(t)(x) = Q_k(x,t)",
            Family::Euler => "E_k^(t)(x) = Q_k(x,t)",
            Family::Krawtchouk => "(t)_k K_k(x,p,t) = P_k(x,t)",
            Family::PseudoNarumi => "k! N_k(x,at) = P_k(x,t)",
            Family::Hermite => "H_k^(sigma^2 t)(x) = Q_k(x,t)",
            Family::PoissonCharlier => "C_k(x,lambda t) = sum_j s(k,j) Q_j(x,t)",
            Family::Laguerre => "k! (-1)^k L_k^(t-k)(x) = Q_k(x,t)",
            Family::Actuarial => "g_k(x,t) = P_k(x,t)",
            Family::Meixner => "(-1)^k t^(k) M_k(x,t,p) = P_k(x,t), t^(k) rising",
        }
    }

    /// Whether the umbral side is a `𝒫_k` combination.
    pub fn uses_combination(self) -> bool {
        matches!(self, Family::Krawtchouk | Family::PseudoNarumi | Family::Actuarial | Family::Meixner)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UmbralError;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| UmbralError::UnknownName(s.to_string()))
    }
}

/// Family parameters. `sigma`, `lambda` and `a` may be indeterminates; `p`
/// must be a rational in `(0, 1)` because `1/p` and `p/(1-p)` enter the
/// constructions.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub sigma: Poly,
    pub lambda: Poly,
    pub a: Poly,
    pub p: Rational,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            sigma: Poly::var("sigma"),
            lambda: Poly::var("lambda"),
            a: Poly::var("a"),
            p: Rational::new(1.into(), 2.into()),
        }
    }
}

impl FamilyParams {
    pub fn validate(&self) -> Result<()> {
        if self.p <= Rational::zero() || self.p >= Rational::one() {
            return Err(UmbralError::InvalidParameter(format!("p must lie in (0,1), got {}", self.p)));
        }
        Ok(())
    }

    fn p_poly(&self) -> Poly {
        Poly::constant(self.p.clone())
    }

    /// `d = p / q` with `q = 1 - p`.
    pub fn d(&self) -> Rational {
        &self.p / (Rational::one() - &self.p)
    }
}

/// The umbra `α` of the increment (Tables 3 and 5), so that `{t · α}` is the
/// process and `Q_k(x,t) = E[(x - t·α)^k]`.
pub fn process_umbra(family: Family, params: &FamilyParams) -> Result<Umbra> {
    params.validate()?;
    let minus_one = Poly::int(-1);
    Ok(match family {
        Family::Bernoulli => dot(&minus_one, &bernoulli()),
        // ½(u + (-1·ε)) with ε the Euler-number umbra: generating function
        // (e^z + 1)/2, a fair coin
        Family::Euler => {
            scale(&Poly::constant(Rational::new(1.into(), 2.into())), &add(&unity(), &dot(&minus_one, &euler())))
        }
        Family::Krawtchouk => dot(&singleton(), &dot(&params.p_poly(), &bell())),
        Family::PseudoNarumi => dot(&params.a, &dot(&minus_one, &bernoulli())),
        Family::Hermite => partition_umbra(&scale(&params.sigma, &gaussian())),
        Family::PoissonCharlier => dot(&params.lambda, &bell()),
        Family::Laguerre => boolean_unity(),
        // shape λ, scale 1
        Family::Actuarial => dot(&params.lambda, &boolean_unity()),
        Family::Meixner => dot(&boolean_unity(), &dot(&Poly::constant(params.d()), &bell())),
    }
    .relabel(format!("alpha[{}]", family.name())))
}

/// The sequence `m` of the `𝒫_k` combination, as an umbra.
pub fn m_umbra(family: Family, params: &FamilyParams) -> Result<Option<Umbra>> {
    params.validate()?;
    let minus_one = Poly::int(-1);
    Ok(match family {
        Family::Krawtchouk => {
            let alpha = process_umbra(family, params)?;
            Some(comp_inverse(&dot(&minus_one, &alpha))?)
        }
        Family::PseudoNarumi => Some(comp_inverse(&unity())?),
        // χ·(-χ) with -χ the scaled singleton (generating function 1 - z)
        Family::Actuarial => Some(comp_inverse(&dot(&singleton(), &scale(&minus_one, &singleton())))?),
        Family::Meixner => {
            let inv_p = Poly::constant(Rational::one() / &params.p);
            Some(cumulants(&add(&dot(&minus_one, &singleton()), &scale(&inv_p, &singleton()))))
        }
        _ => None,
    })
}

/// `𝒫_k = Σ_{j=1}^k Q_j B_{k,j}(m_1, …)`, with `𝒫_0 = 1`.
pub fn combination(q: &[Poly], m: &Umbra, k: usize) -> Poly {
    if k == 0 {
        return Poly::one();
    }
    let table = bell_table(k, &m.moments(k));
    let mut acc = Poly::zero();
    for j in 1..=k {
        if !table[k][j].is_zero() {
            acc += &(&q[j] * &table[k][j]);
        }
    }
    acc
}

/// The umbral construction of degree `k`.
pub fn umbral(family: Family, k: usize, params: &FamilyParams) -> Result<Poly> {
    let alpha = process_umbra(family, params)?;
    let q = q_polys(&alpha, k)?;
    if let Some(m) = m_umbra(family, params)? {
        return Ok(combination(&q, &m, k));
    }
    Ok(match family {
        Family::PoissonCharlier => (0..=k).fold(Poly::zero(), |acc, j| &acc + &q[j].scale(&stirling_first(k, j))),
        _ => q[k].clone(),
    })
}

fn series_order(k: usize) -> usize {
    k.max(1)
}

fn one_plus(c: &Poly, order: usize) -> Series {
    Series::from_coeffs(vec![Poly::one(), c.clone()], order)
}

/// The classical polynomial of degree `k`, read off its generating function.
///
/// For Krawtchouk and Meixner, whose classical form is rational in `t`, this
/// returns `(t)_k K_k` and `t^(k) M_k` respectively (falling and rising
/// factorials); see [`Family::normalization`].
pub fn classical(family: Family, k: usize, params: &FamilyParams) -> Result<Poly> {
    params.validate()?;
    let n = series_order(k);
    let (x, t) = (x(), t());
    let exp_xz = Series::exp_linear(&x, n);
    let egf = |s: Series| -> Poly { s.coeff(k).clone() };
    let ogf = |s: Series| -> Poly { s.ordinary_coeff(k) };
    Ok(match family {
        Family::Bernoulli => {
            // (z / (e^z - 1))^t e^{xz}
            let base = crate::series::expm1_over_z(n).recip()?;
            egf(base.pow(&t)?.mul(&exp_xz)?)
        }
        Family::Euler => {
            // (2 / (e^z + 1))^t e^{xz}
            let half_sum = Series::exp_linear(&Poly::one(), n)
                .add_constant(&Poly::one())
                .scale(&Poly::constant(Rational::new(1.into(), 2.into())));
            egf(half_sum.recip()?.pow(&t)?.mul(&exp_xz)?)
        }
        Family::Krawtchouk => {
            // Σ C(t,k) K_k z^k = (1 - (1-p) z / p)^x (1 + z)^{t-x}
            let c = Poly::constant(-(Rational::one() - &params.p) / &params.p);
            let s = one_plus(&c, n).pow(&x)?.mul(&one_plus(&Poly::one(), n).pow(&(&t - &x))?)?;
            egf(s)
        }
        Family::PseudoNarumi => {
            // Σ N_k(x, at) z^k = (1 + z)^x (log(1+z)/z)^{at}
            let log_ratio = from_ordinary_fn(n, |j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                Rational::new(sign.into(), ((j + 1) as i64).into())
            });
            let s = one_plus(&Poly::one(), n).pow(&x)?.mul(&log_ratio.pow(&(&params.a * &t))?)?;
            ogf(s)
        }
        Family::Hermite => {
            // exp(xz - σ² t z²/2)
            let v = &params.sigma.pow(2) * &t;
            egf(Series::from_coeffs(vec![Poly::zero(), x, -&v], n).exp()?)
        }
        Family::PoissonCharlier => {
            // e^{-λtz} (1 + z)^x
            let s = Series::exp_linear(&-(&params.lambda * &t), n).mul(&one_plus(&Poly::one(), n).pow(&x)?)?;
            egf(s)
        }
        Family::Laguerre => {
            // Σ L_k^{(t-k)}(x) z^k = (1 + z)^t e^{-xz}
            let s = one_plus(&Poly::one(), n).pow(&t)?.mul(&Series::exp_linear(&-&x, n))?;
            ogf(s)
        }
        Family::Actuarial => {
            // exp(λtz + x(1 - e^z))
            let mut c = vec![Poly::zero(), &(&params.lambda * &t) - &x];
            c.extend(std::iter::repeat_n(-&x, n.saturating_sub(1)));
            egf(Series::from_coeffs(c, n).exp()?)
        }
        Family::Meixner => {
            // Σ t^(k) M_k z^k / k! = (1 - z/p)^x (1 - z)^{-x-t}
            let c = Poly::constant(-(Rational::one() / &params.p));
            let s = one_plus(&c, n).pow(&x)?.mul(&one_plus(&Poly::int(-1), n).pow(&-(&x + &t))?)?;
            egf(s)
        }
    })
}

/// [`classical`] mapped into the normalization of [`umbral`].
pub fn classical_normalized(family: Family, k: usize, params: &FamilyParams) -> Result<Poly> {
    let c = classical(family, k, params)?;
    let sign = if k.is_multiple_of(2) { rat(1) } else { rat(-1) };
    Ok(match family {
        Family::PseudoNarumi => c.scale(&factorial_rat(k)),
        Family::Laguerre => c.scale(&(factorial_rat(k) * sign)),
        Family::Meixner => c.scale(&sign),
        _ => c,
    })
}

/// Lévy–Sheffer polynomial `V_k(x,t) = E[(x·β·γ + t·α)^k]`, with generating
/// function `f(α,z)^t exp{x (f(γ,z) - 1)}`.
pub fn levy_sheffer(alpha: &Umbra, gamma: &Umbra, k: usize) -> Result<Poly> {
    check_sheffer_pair(alpha, gamma, k)?;
    let space = composition(&constant(&x()), gamma).moments(k);
    let time = dot(&t(), alpha).moments(k);
    Ok(crate::umbra::binomial_convolution(&space, &time).swap_remove(k))
}

/// `V_k = Σ_i E[(x + t·β·κ)^i] B_{k,i}(g_1, …)` with `κ` the cumulant umbra
/// of `α·β·γ^{<-1>}`.
pub fn levy_sheffer_combination(alpha: &Umbra, gamma: &Umbra, k: usize) -> Result<Poly> {
    check_sheffer_pair(alpha, gamma, k)?;
    let kappa = cumulants(&composition(alpha, &comp_inverse(gamma)?));
    let inner = add(&constant(&x()), &dot(&t(), &partition_umbra(&kappa))).moments(k);
    let table = bell_table(k, &gamma.moments(k));
    let mut acc = Poly::zero();
    for i in 0..=k {
        if !table[k][i].is_zero() {
            acc += &(&inner[i] * &table[k][i]);
        }
    }
    Ok(acc)
}

fn check_sheffer_pair(alpha: &Umbra, gamma: &Umbra, k: usize) -> Result<()> {
    let reserved = [crate::poly::Var::new(crate::tsh::X), crate::poly::Var::new(crate::tsh::T)];
    crate::umbra::ensure_free_of(alpha, k, &reserved)?;
    crate::umbra::ensure_free_of(gamma, k, &reserved)?;
    let g1 = gamma.moment(1);
    match g1.as_constant() {
        Some(c) if !c.is_zero() => Ok(()),
        _ => Err(UmbralError::VanishingFirstMoment(g1.to_string())),
    }
}

/// The pair `(α, γ)` presenting an orthogonal family as a Lévy–Sheffer
/// system. Hermite and Meixner give the table polynomials themselves,
/// Poisson–Charlier gives `C̃_k(x, λt)` and Laguerre gives
/// `k! L_k^{(t-1)}(x)`.
pub fn levy_meixner_pair(family: Family, params: &FamilyParams) -> Result<(Umbra, Umbra)> {
    params.validate()?;
    let minus_one = Poly::int(-1);
    Ok(match family {
        Family::Hermite => (dot(&minus_one, &process_umbra(family, params)?), singleton()),
        Family::PoissonCharlier => (scale(&-&params.lambda, &unity()), comp_inverse(&unity())?),
        Family::Laguerre => {
            // f(γ, z) = 1 - z/(1 - z): moments -i!
            let gamma = Umbra::from_fn("gamma[laguerre]", |i| Poly::constant(-factorial_rat(i)));
            (boolean_unity(), gamma)
        }
        Family::Meixner => (dot(&minus_one, &singleton()), m_umbra(family, params)?.expect("meixner m")),
        other => return Err(UmbralError::InvalidParameter(format!("{other} is not a Lévy–Meixner family"))),
    })
}

/// The measure of orthogonality `-t·α·β·γ^{<-1>}`.
pub fn orthogonality_measure(alpha: &Umbra, gamma: &Umbra) -> Result<Umbra> {
    Ok(dot(&-&t(), &composition(alpha, &comp_inverse(gamma)?)))
}

/// `E[V_n(X_t, t) V_m(X_t, t)]` for the orthogonality measure of `family`.
pub fn orthogonality_check(family: Family, n: usize, m: usize, params: &FamilyParams) -> Result<Poly> {
    let (alpha, gamma) = levy_meixner_pair(family, params)?;
    let measure = orthogonality_measure(&alpha, &gamma)?;
    let vn = levy_sheffer(&alpha, &gamma, n)?;
    let vm = levy_sheffer(&alpha, &gamma, m)?;
    let moments = measure.moments(n + m);
    Ok((&vn * &vm).evaluate_powers(crate::poly::Var::new(crate::tsh::X), &moments))
}

/// Hypergeometric and finite-sum closed forms, independent of both
/// generating functions and umbrae. Used as a third path in tests.
pub mod closed_form {
    use super::*;
    use crate::combinatorics::{binomial_rat, falling_factorial};

    /// `(-n)_j` as a rising factorial of a negative integer.
    fn pochhammer_neg(n: usize, j: usize) -> Rational {
        (0..j).fold(rat(1), |acc, i| acc * rat(i as i64 - n as i64))
    }

    /// `H_k^{(v)}(x) = Σ_j k!/(j!(k-2j)!) (-v/2)^j x^{k-2j}`.
    pub fn hermite(k: usize, v: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for j in 0..=k / 2 {
            let c = factorial_rat(k) / (factorial_rat(j) * factorial_rat(k - 2 * j));
            let term = &(-v).scale(&Rational::new(1.into(), 2.into())).pow(j as u32) * &x().pow((k - 2 * j) as u32);
            acc += &term.scale(&c);
        }
        acc
    }

    /// `C̃_k(x, a) = Σ_j C(k,j) (x)_j (-a)^{k-j}`.
    pub fn charlier(k: usize, a: &Poly) -> Poly {
        (0..=k).fold(Poly::zero(), |acc, j| {
            &acc + &(&falling_factorial(&x(), j) * &(-a).pow((k - j) as u32)).scale(&binomial_rat(k, j))
        })
    }

    /// `L_k^{(t-k)}(x) = Σ_i (-1)^i C(t, k-i) x^i / i!`.
    pub fn laguerre(k: usize) -> Poly {
        (0..=k).fold(Poly::zero(), |acc, i| {
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            let c = sign / (factorial_rat(i) * factorial_rat(k - i));
            &acc + &(&falling_factorial(&t(), k - i) * &x().pow(i as u32)).scale(&c)
        })
    }

    /// `(t)_k K_k(x, p, t)` from `K_k = ₂F₁(-k, -x; -t; 1/p)`.
    pub fn krawtchouk(k: usize, p: &Rational) -> Poly {
        let inv_p = Rational::one() / p;
        (0..=k).fold(Poly::zero(), |acc, j| {
            // (t)_k / (-t)_j = (-1)^j (t - j)_{k-j}
            let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
            let c = pochhammer_neg(k, j) * sign * inv_p.pow(j as i32) / factorial_rat(j);
            let rising_neg_x = rising_factorial(&-&x(), j);
            let tail = falling_factorial(&(&t() - &Poly::int(j as i64)), k - j);
            &acc + &(&rising_neg_x * &tail).scale(&c)
        })
    }

    /// `t^(k) M_k(x, t, p)` from `M_k = ₂F₁(-k, -x; t; 1 - 1/p)`.
    pub fn meixner(k: usize, p: &Rational) -> Poly {
        let w = Rational::one() - Rational::one() / p;
        (0..=k).fold(Poly::zero(), |acc, j| {
            let c = pochhammer_neg(k, j) * w.pow(j as i32) / factorial_rat(j);
            let rising_neg_x = rising_factorial(&-&x(), j);
            let tail = rising_factorial(&(&t() + &Poly::int(j as i64)), k - j);
            &acc + &(&rising_neg_x * &tail).scale(&c)
        })
    }
}
