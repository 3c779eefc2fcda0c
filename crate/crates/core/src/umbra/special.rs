use num_traits::Zero;

use super::Umbra;
use crate::combinatorics::{binomial_rat, factorial_rat};
use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};

/// Names accepted by [`special`].
pub const SPECIAL_NAMES: &[&str] =
    &["augmentation", "unity", "boolean-unity", "singleton", "bell", "bernoulli", "euler", "euler-eta", "gaussian"];

/// Special scalar umbra by name. Greek aliases (`epsilon`, `u`, `ubar`, `chi`,
/// `beta`, `iota`, `eta`, `varsigma`) are accepted too.
pub fn special(name: &str) -> Result<Umbra> {
    Ok(match name {
        "augmentation" | "epsilon" => augmentation(),
        "unity" | "u" => unity(),
        "boolean-unity" | "ubar" => boolean_unity(),
        "singleton" | "chi" => singleton(),
        "bell" | "beta" => bell(),
        "bernoulli" | "iota" => bernoulli(),
        "euler" | "varepsilon" => euler(),
        "euler-eta" | "eta" => euler_eta(),
        "gaussian" | "varsigma" => gaussian(),
        other => return Err(UmbralError::UnknownName(other.to_string())),
    })
}

/// `ε`: moments `δ_{0,i}`.
pub fn augmentation() -> Umbra {
    Umbra::from_fn("epsilon", |_| Poly::zero())
}

/// `u`: all moments 1.
pub fn unity() -> Umbra {
    Umbra::from_fn("u", |_| Poly::one())
}

/// `ū`: moments `i!`.
pub fn boolean_unity() -> Umbra {
    Umbra::from_fn("ubar", |i| Poly::constant(factorial_rat(i)))
}

/// `χ`: `E[χ] = 1`, higher moments 0.
pub fn singleton() -> Umbra {
    Umbra::from_fn("chi", |i| if i == 1 { Poly::one() } else { Poly::zero() })
}

/// `β`: Bell numbers, `B_{n+1} = Σ_k C(n,k) B_k`.
pub fn bell() -> Umbra {
    Umbra::from_prefix_fn("beta", |n| {
        let mut b = vec![Rational::from_integer(1.into())];
        for m in 0..n {
            let next = (0..=m).map(|k| binomial_rat(m, k) * &b[k]).sum();
            b.push(next);
        }
        b.into_iter().map(Poly::constant).collect()
    })
}

/// `ι`: Bernoulli numbers with generating function `z / (e^z - 1)`
/// (so `𝔅_1 = -1/2`).
pub fn bernoulli() -> Umbra {
    Umbra::from_prefix_fn("iota", |n| {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1
        let mut b = vec![rat(1)];
        for m in 1..=n {
            let s: Rational = (0..m).map(|k| binomial_rat(m + 1, k) * &b[k]).sum();
            b.push(-s / rat(m as i64 + 1));
        }
        b.into_iter().map(Poly::constant).collect()
    })
}

/// Euler umbra with the Euler numbers `𝔈_i` as moments: generating function
/// `sech z = 2e^z / (e^{2z} + 1)` (moments 1, 0, -1, 0, 5, …).
pub fn euler() -> Umbra {
    Umbra::from_prefix_fn("varepsilon", |n| {
        // cosh(z) sech(z) = 1: Σ_{k ≤ m, m-k even} C(m,k) E_k = 0 for m ≥ 1
        let mut e = vec![rat(1)];
        for m in 1..=n {
            if m % 2 == 1 {
                e.push(Rational::zero());
                continue;
            }
            let s: Rational = (0..m).filter(|k| (m - k) % 2 == 0).map(|k| binomial_rat(m, k) * &e[k]).sum();
            e.push(-s);
        }
        e.into_iter().map(Poly::constant).collect()
    })
}

/// Euler umbra in the `2e^z / (e^z + 1)` normalization (moments
/// 1, 1/2, 0, -1/4, 0, 1/2, …).
pub fn euler_eta() -> Umbra {
    Umbra::from_prefix_fn("eta", |n| {
        // f (e^z + 1) = 2 e^z: 2 f_m + Σ_{k<m} C(m,k) f_k = 2
        let mut f = vec![rat(1)];
        for m in 1..=n {
            let s: Rational = (0..m).map(|k| binomial_rat(m, k) * &f[k]).sum();
            f.push((rat(2) - s) / rat(2));
        }
        f.into_iter().map(Poly::constant).collect()
    })
}

/// `ς` with generating function `1 + z²/2`: only `a_2 = 1` is nonzero.
pub fn gaussian() -> Umbra {
    Umbra::from_fn("varsigma", |i| if i == 2 { Poly::one() } else { Poly::zero() })
}
