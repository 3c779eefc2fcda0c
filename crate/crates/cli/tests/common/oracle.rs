//! Truncated ordinary power series with polynomial coefficients, written
//! from scratch so that test expectations do not go through the library's
//! own series or umbra code.

use umbral::{ratio, Poly, Rational};

pub type Ser = Vec<Poly>;

pub fn fact(n: usize) -> Rational {
    (1..=n as i64).fold(ratio(1, 1), |acc, k| acc * ratio(k, 1))
}

pub fn binom(n: usize, k: usize) -> Rational {
    fact(n) / (fact(k) * fact(n - k))
}

pub fn zero(n: usize) -> Ser {
    vec![Poly::zero(); n + 1]
}

pub fn mul(a: &Ser, b: &Ser) -> Ser {
    let n = a.len() - 1;
    let mut out = zero(n);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += &(ai * bj);
        }
    }
    out
}

pub fn scale(a: &Ser, c: &Poly) -> Ser {
    a.iter().map(|v| v * c).collect()
}

pub fn add(a: &Ser, b: &Ser) -> Ser {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `exp(g)` for `g(0) = 0`, from `n e_n = Σ_k k g_k e_{n-k}`.
pub fn exp(g: &Ser) -> Ser {
    assert!(g[0].is_zero());
    let n = g.len() - 1;
    let mut e = zero(n);
    e[0] = Poly::one();
    for m in 1..=n {
        let mut acc = Poly::zero();
        for k in 1..=m {
            acc += &(&g[k] * &e[m - k]).scale(&ratio(k as i64, 1));
        }
        e[m] = acc.scale(&ratio(1, m as i64));
    }
    e
}

/// `log(f)` for `f(0) = 1`, from `f L' = f'`.
pub fn log(f: &Ser) -> Ser {
    assert!(f[0].is_one());
    let n = f.len() - 1;
    let mut l = zero(n);
    for m in 1..=n {
        let mut acc = f[m].scale(&ratio(m as i64, 1));
        for k in 1..m {
            acc -= &(&l[k] * &f[m - k]).scale(&ratio(k as i64, 1));
        }
        l[m] = acc.scale(&ratio(1, m as i64));
    }
    l
}

/// `log(1 + c z)`.
pub fn log1p(c: &Poly, n: usize) -> Ser {
    let mut out = zero(n);
    for m in 1..=n {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        out[m] = c.pow(m as u32).scale(&ratio(sign, m as i64));
    }
    out
}

/// `c z`.
pub fn linear(c: &Poly, n: usize) -> Ser {
    let mut out = zero(n);
    if n >= 1 {
        out[1] = c.clone();
    }
    out
}

/// The series `Σ a_i z^i / i!` of a moment sequence.
pub fn from_moments(a: &[Poly]) -> Ser {
    a.iter().enumerate().map(|(i, v)| v.scale(&(ratio(1, 1) / fact(i)))).collect()
}

/// `i! [z^i] s`.
pub fn to_moments(s: &Ser) -> Vec<Poly> {
    s.iter().enumerate().map(|(i, v)| v.scale(&fact(i))).collect()
}

/// Moments of `c·α`: `f(α,z)^c`.
pub fn power_moments(a: &[Poly], c: &Poly) -> Vec<Poly> {
    to_moments(&exp(&scale(&log(&from_moments(a)), c)))
}

/// `Σ_j C(k,j) x^j m_{k-j}`.
pub fn binomial_in(x: &Poly, m: &[Poly], k: usize) -> Poly {
    let mut acc = Poly::zero();
    for j in 0..=k {
        acc += &(&x.pow(j as u32) * &m[k - j]).scale(&binom(k, j));
    }
    acc
}

/// `Q_k(x,t)` from `e^{xz} / f(α,z)^t`.
pub fn q_oracle(a: &[Poly], k: usize, x: &Poly, t: &Poly) -> Poly {
    binomial_in(x, &power_moments(a, &-t), k)
}

/// Replaces each `x^j` by `m_j`.
pub fn evaluate_powers(p: &Poly, x: &str, m: &[Poly]) -> Poly {
    let v = umbral::Var::new(x);
    let mut acc = Poly::zero();
    for (j, c) in p.coefficients_in(v).iter().enumerate() {
        acc += &(c * &m[j]);
    }
    acc
}
