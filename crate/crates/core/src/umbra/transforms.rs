//! Boolean and free (noncrossing) cumulants. These act on *ordinary*
//! moment sequences `a_0 = 1, a_1, …, a_n` and use ordinary generating
//! functions `M(z) = Σ a_i z^i`.

use crate::error::{Result, UmbralError};
use crate::poly::Poly;

fn check_unit(a: &[Poly]) -> Result<()> {
    match a.first() {
        Some(a0) if a0.is_one() => Ok(()),
        _ => Err(UmbralError::InvalidParameter("moment sequence must start with a_0 = 1".into())),
    }
}

fn ordinary_mul(f: &[Poly], g: &[Poly], n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); n + 1];
    for (i, fi) in f.iter().enumerate().take(n + 1) {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate().take(n + 1 - i) {
            if !gj.is_zero() {
                out[i + j] += &(fi * gj);
            }
        }
    }
    out
}

/// Boolean cumulants `[0, b_1, …, b_n]` from `M(z) = 1 / (1 - B(z))`.
pub fn boolean_cumulants(a: &[Poly]) -> Result<Vec<Poly>> {
    check_unit(a)?;
    // M = 1 + B M gives a_n = Σ_{k=1}^n b_k a_{n-k}
    let mut b = vec![Poly::zero()];
    for n in 1..a.len() {
        let mut bn = a[n].clone();
        for k in 1..n {
            bn -= &(&b[k] * &a[n - k]);
        }
        b.push(bn);
    }
    Ok(b)
}

/// Inverse of [`boolean_cumulants`]: moments `[1, a_1, …]` from `[_, b_1, …]`.
pub fn boolean_moments(b: &[Poly]) -> Vec<Poly> {
    let mut a = vec![Poly::one()];
    for n in 1..b.len() {
        let mut an = Poly::zero();
        for k in 1..=n {
            an += &(&b[k] * &a[n - k]);
        }
        a.push(an);
    }
    a
}

/// `[z^{n-i}] M(z)^i` for `i = 1..=n`, using only `a_0..a_{n-1}`.
fn power_coefficients(a: &[Poly], n: usize) -> Vec<Poly> {
    let mut prefix: Vec<Poly> = a[..n].to_vec();
    prefix.push(Poly::zero());
    let mut out = vec![Poly::zero(); n + 1];
    let mut power = vec![Poly::one()];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        power = ordinary_mul(&power, &prefix, n - i);
        *slot = power[n - i].clone();
    }
    out
}

/// Free cumulants `[1, r_1, …, r_n]` solving `M(z) = R(z M(z))` with
/// `R(w) = 1 + Σ r_i w^i`.
pub fn free_cumulants(a: &[Poly]) -> Result<Vec<Poly>> {
    check_unit(a)?;
    // a_n = Σ_{i=1}^n r_i [z^{n-i}] M^i, and the i = n term is r_n itself
    let mut r = vec![Poly::one()];
    for n in 1..a.len() {
        let coeffs = power_coefficients(a, n);
        let mut rn = a[n].clone();
        for i in 1..n {
            rn -= &(&r[i] * &coeffs[i]);
        }
        r.push(rn);
    }
    Ok(r)
}

/// Inverse of [`free_cumulants`]: moments `[1, a_1, …]` from `[1, r_1, …]`.
pub fn free_moments(r: &[Poly]) -> Vec<Poly> {
    let mut a = vec![Poly::one()];
    for n in 1..r.len() {
        a.push(Poly::zero());
        let coeffs = power_coefficients(&a, n);
        let mut an = Poly::zero();
        for i in 1..=n {
            an += &(&r[i] * &coeffs[i]);
        }
        a[n] = an;
    }
    a
}
