//! Time-space harmonic polynomials `Q_k(x, t) = E[(x - t·α)^k]` and the
//! identities they satisfy.
//!
//! `x`, `t` and `s` are ring indeterminates, so every check below is an
//! exact polynomial identity rather than a numerical test.

use num_traits::Zero;

use crate::combinatorics::{binomial_rat, complete_bell, partitions, stirling_first};
use crate::error::Result;
use crate::poly::{Poly, Var};
use crate::umbra::{add, constant, cumulants, dot, ensure_free_of, inverse, Umbra};

pub const X: &str = "x";
pub const T: &str = "t";
pub const S: &str = "s";

pub fn x() -> Poly {
    Poly::var(X)
}

pub fn t() -> Poly {
    Poly::var(T)
}

pub fn s() -> Poly {
    Poly::var(S)
}

fn reserved() -> [Var; 3] {
    [Var::new(X), Var::new(T), Var::new(S)]
}

/// A TSH polynomial of degree `k` in `x`, together with the umbra it was
/// built from.
#[derive(Clone, Debug, PartialEq)]
pub struct TshPoly {
    pub degree: usize,
    pub poly: Poly,
    pub umbra: String,
}

impl TshPoly {
    /// Coefficient of `x^j t^i` (a polynomial in any remaining parameters).
    pub fn coefficient(&self, j: u32, i: u32) -> Poly {
        self.poly.coeff_in(Var::new(X), j).coeff_in(Var::new(T), i)
    }
}

/// Outcome of an identity check: the two sides that were compared.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub left: Poly,
    pub right: Poly,
}

impl Identity {
    pub fn new(left: Poly, right: Poly) -> Identity {
        Identity { left, right }
    }

    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

fn tsh(alpha: &Umbra, k: usize, poly: Poly) -> TshPoly {
    TshPoly { degree: k, poly, umbra: alpha.label().to_string() }
}

/// `Σ_j C(k,j) x^j m_{k-j}` for a moment sequence `m`.
fn binomial_in_x(m: &[Poly], k: usize) -> Poly {
    let x = x();
    let mut acc = Poly::zero();
    for j in 0..=k {
        if !m[k - j].is_zero() {
            acc += &(&x.pow(j as u32) * &m[k - j]).scale(&binomial_rat(k, j));
        }
    }
    acc
}

/// `Q_k(x,t) = Σ_j C(k,j) x^j E[(-t·α)^{k-j}]`.
pub fn q_poly(alpha: &Umbra, k: usize) -> Result<TshPoly> {
    ensure_free_of(alpha, k, &reserved())?;
    let m = inverse(&t(), alpha).moments(k);
    Ok(tsh(alpha, k, binomial_in_x(&m, k)))
}

/// `Q_0, …, Q_k` sharing a single moment computation.
pub fn q_polys(alpha: &Umbra, k: usize) -> Result<Vec<Poly>> {
    ensure_free_of(alpha, k, &reserved())?;
    let m = inverse(&t(), alpha).moments(k);
    Ok((0..=k).map(|j| binomial_in_x(&m, j)).collect())
}

/// `Q_k` through the closed form of its coefficients:
/// the coefficient of `x^j t^i` is
/// `C(k,j) Σ_{λ ⊢ k-j} d_λ (-1)^i s(l(λ), i) a_λ`,
/// where `d_λ = (k-j)! / Π_r (r! (part!)^r)` is the number of set partitions
/// of type `λ` of a `(k-j)`-set.
pub fn q_coeffs_direct(alpha: &Umbra, k: usize) -> Result<TshPoly> {
    ensure_free_of(alpha, k, &reserved())?;
    let a = alpha.moments(k);
    let (x, t) = (x(), t());
    let mut acc = Poly::zero();
    for j in 0..=k {
        let outer = binomial_rat(k, j);
        for lambda in partitions(k - j).iter() {
            let d = crate::poly::Rational::from_integer(lambda.set_partition_count());
            let a_lambda = lambda.monomial(&a);
            let l = lambda.len();
            for i in 0..=l {
                let st = stirling_first(l, i);
                if st.is_zero() {
                    continue;
                }
                let sign = if i % 2 == 0 { st } else { -st };
                let c = &outer * &d * sign;
                acc += &(&(&x.pow(j as u32) * &t.pow(i as u32)) * &a_lambda).scale(&c);
            }
        }
    }
    Ok(tsh(alpha, k, acc))
}

/// `Q_k = Y_k(x + h_1, h_2, …, h_k)` with `h` the cumulants of `-t·α`.
pub fn complete_bell_form(alpha: &Umbra, k: usize) -> Result<TshPoly> {
    ensure_free_of(alpha, k, &reserved())?;
    let mut h = cumulants(&inverse(&t(), alpha)).moments(k);
    h.remove(0);
    if let Some(h1) = h.first_mut() {
        *h1 = &*h1 + &x();
    }
    Ok(tsh(alpha, k, complete_bell(k, &h)))
}

/// The conditional-evaluation identity
/// `Σ_j C(k,j) E[(x + (t-s)·α)^j] E[(-t·α)^{k-j}] = Q_k(x, s)`.
pub fn martingale_check(alpha: &Umbra, k: usize) -> Result<Identity> {
    let q = q_poly(alpha, k)?.poly;
    let increment = add(&constant(&x()), &dot(&(&t() - &s()), alpha)).moments(k);
    let back = inverse(&t(), alpha).moments(k);
    let mut left = Poly::zero();
    for j in 0..=k {
        left += &(&increment[j] * &back[k - j]).scale(&binomial_rat(k, j));
    }
    Ok(Identity::new(left, q.substitute(Var::new(T), &s())))
}

/// Wald's identity: replacing `x^j` in `Q_k` by `E[(t·α)^j]` gives `δ_{k,0}`.
pub fn wald_check(alpha: &Umbra, k: usize) -> Result<Identity> {
    let q = q_poly(alpha, k)?.poly;
    let m = dot(&t(), alpha).moments(k);
    let expected = if k == 0 { Poly::one() } else { Poly::zero() };
    Ok(Identity::new(q.evaluate_powers(Var::new(X), &m), expected))
}

/// Appell property `∂_x Q_k = k Q_{k-1}` (for `k = 0` both sides are 0).
pub fn appell_check(alpha: &Umbra, k: usize) -> Result<Identity> {
    let qs = q_polys(alpha, k)?;
    let left = qs[k].derivative(Var::new(X));
    let right = if k == 0 { Poly::zero() } else { qs[k - 1].scale(&crate::poly::rat(k as i64)) };
    Ok(Identity::new(left, right))
}

/// Sheffer identity in `t`:
/// `Q_k(x, t+s) = Σ_j C(k,j) P_j(s) Q_{k-j}(x, t)` with `P_j(s) = Q_j(0, s)`.
pub fn sheffer_split(alpha: &Umbra, k: usize) -> Result<Identity> {
    let qs = q_polys(alpha, k)?;
    let (xv, tv) = (Var::new(X), Var::new(T));
    let left = qs[k].substitute(tv, &(&t() + &s()));
    let mut right = Poly::zero();
    for j in 0..=k {
        let p = qs[j].substitute(xv, &Poly::zero()).substitute(tv, &s());
        right += &(&p * &qs[k - j]).scale(&binomial_rat(k, j));
    }
    Ok(Identity::new(left, right))
}

/// The TSH polynomial `Σ_j x^j p_j(t)` whose coefficients are fixed by their
/// values at `t = 0`: `p_j(t) = Σ_{i=j}^k C(i,j) p_i(0) E[(-t·α)^{i-j}]`.
pub fn tsh_coefficients(alpha: &Umbra, p0: &[Poly]) -> Result<Poly> {
    if p0.is_empty() {
        return Ok(Poly::zero());
    }
    let k = p0.len() - 1;
    ensure_free_of(alpha, k, &reserved())?;
    let m = inverse(&t(), alpha).moments(k);
    let x = x();
    let mut acc = Poly::zero();
    for j in 0..=k {
        let mut pj = Poly::zero();
        for i in j..=k {
            if !p0[i].is_zero() {
                pj += &(&p0[i] * &m[i - j]).scale(&binomial_rat(i, j));
            }
        }
        acc += &(&x.pow(j as u32) * &pj);
    }
    Ok(acc)
}

/// Decides whether `P(x, t)` is TSH for `{t·α}` by rebuilding it from its
/// coefficients at `t = 0`.
pub fn is_tsh(alpha: &Umbra, p: &Poly) -> Result<Identity> {
    let (xv, tv) = (Var::new(X), Var::new(T));
    let at_zero = p.substitute(tv, &Poly::zero());
    let p0 = at_zero.coefficients_in(xv);
    Ok(Identity::new(p.clone(), tsh_coefficients(alpha, &p0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{factorial_rat, IntPartition};
    use crate::poly::{rat, Rational};
    use crate::umbra::{bernoulli, boolean_unity, gaussian, partition_umbra, scale, special, SPECIAL_NAMES};
    use crate::UmbralError;
    use proptest::prelude::*;

    fn small(v: &[i64]) -> Umbra {
        let mut m = vec![Poly::one()];
        m.extend(v.iter().map(|&c| Poly::int(c)));
        Umbra::from_moments("r", m).unwrap()
    }

    #[test]
    fn q_examples() {
        let alpha = small(&[3, 1]);
        assert_eq!(q_poly(&alpha, 0).unwrap().poly, Poly::one());
        assert_eq!(q_poly(&alpha, 1).unwrap().poly, &x() - &t().scale(&rat(3)));
        let sigma = Poly::var("sigma");
        let gauss = partition_umbra(&scale(&sigma, &gaussian()));
        assert_eq!(q_poly(&gauss, 2).unwrap().poly, &x().pow(2) - &(&sigma.pow(2) * &t()));
    }

    #[test]
    fn direct_examples() {
        let a1 = Poly::var("a1");
        let alpha = Umbra::from_moments("a", vec![Poly::one(), a1.clone()]).unwrap();
        let q1 = q_coeffs_direct(&alpha, 1).unwrap();
        assert_eq!(q1.coefficient(0, 1), -&a1);
        for k in 0..6 {
            assert_eq!(q_coeffs_direct(&alpha, k).unwrap().coefficient(k as u32, 0), Poly::one());
        }
        let expected = &(&x().pow(2) - &(&x() * &t()).scale(&rat(2))) + &(&t().pow(2) - &t());
        assert_eq!(q_coeffs_direct(&boolean_unity(), 2).unwrap().poly, expected);
    }

    /// `numerator / Π_r (r! (part!)^r)`.
    fn type_count_with(lambda: &IntPartition, numerator: &Rational) -> Rational {
        let mut den = rat(1);
        for (part, r) in lambda.multiplicities() {
            den = den * factorial_rat(r) * factorial_rat(part).pow(r as i32);
        }
        numerator / den
    }

    /// The alternative reading with `i!` (the power of `t`) in the numerator of
    /// `d_λ` disagrees with the direct expansion already at `k = 2`.
    #[test]
    fn factorial_reading_of_coefficients() {
        let alpha = small(&[2, 3, 5]);
        let k = 3;
        let a = alpha.moments(k);
        let direct = q_poly(&alpha, k).unwrap();
        let mut mismatch = false;
        for j in 0..=k {
            for i in 0..=(k - j) {
                let mut c = Poly::zero();
                for lambda in partitions(k - j).iter() {
                    let d = type_count_with(lambda, &factorial_rat(i));
                    let st = stirling_first(lambda.len(), i);
                    let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
                    c += &lambda.monomial(&a).scale(&(d * st * sign * binomial_rat(k, j)));
                }
                if c != direct.coefficient(j as u32, i as u32) {
                    mismatch = true;
                }
            }
        }
        assert!(mismatch);
    }

    #[test]
    fn three_paths_agree() {
        let mut umbrae: Vec<Umbra> = SPECIAL_NAMES.iter().map(|n| special(n).unwrap()).collect();
        umbrae.push(small(&[1, -2, 3, 0, 5]));
        for alpha in &umbrae {
            for k in 0..=8 {
                let q = q_poly(alpha, k).unwrap();
                assert_eq!(q, q_coeffs_direct(alpha, k).unwrap(), "{alpha:?} k={k}");
                assert_eq!(q, complete_bell_form(alpha, k).unwrap(), "{alpha:?} k={k}");
            }
        }
    }

    #[test]
    fn identities_for_boolean_unity() {
        let u = boolean_unity();
        for k in 0..=8 {
            assert!(martingale_check(&u, k).unwrap().holds());
            assert!(appell_check(&u, k).unwrap().holds());
            assert!(sheffer_split(&u, k).unwrap().holds());
        }
    }

    #[test]
    fn wald_for_bernoulli() {
        for k in 0..=10 {
            assert!(wald_check(&bernoulli(), k).unwrap().holds(), "k={k}");
        }
    }

    #[test]
    fn sheffer_at_zero() {
        let alpha = small(&[2, 1, -1]);
        let id = sheffer_split(&alpha, 4).unwrap();
        let zero = Poly::zero();
        assert_eq!(id.left.substitute(Var::new(S), &zero), id.right.substitute(Var::new(S), &zero));
    }

    #[test]
    fn tsh_coefficients_examples() {
        let alpha = small(&[2, 7, 1]);
        let k = 4;
        let mut unit = vec![Poly::zero(); k + 1];
        unit[k] = Poly::one();
        assert_eq!(tsh_coefficients(&alpha, &unit).unwrap(), q_poly(&alpha, k).unwrap().poly);
        assert!(tsh_coefficients(&alpha, &vec![Poly::zero(); 3]).unwrap().is_zero());
        // x^2 is not TSH unless the process is trivial
        assert!(!is_tsh(&alpha, &x().pow(2)).unwrap().holds());
        assert!(is_tsh(&alpha, &q_poly(&alpha, 3).unwrap().poly).unwrap().holds());
    }

    #[test]
    fn reserved_names_are_rejected() {
        let bad = Umbra::from_moments("bad", vec![Poly::one(), t()]).unwrap();
        assert_eq!(q_poly(&bad, 2), Err(UmbralError::VariableCollision(Var::new(T))));
    }

    #[test]
    fn monic_and_initial_value() {
        let alpha = small(&[1, 4, -2, 3]);
        for k in 0..=12 {
            let q = q_poly(&alpha, k).unwrap();
            assert_eq!(q.coefficient(k as u32, 0), Poly::one());
            assert_eq!(q.poly.substitute(Var::new(T), &Poly::zero()), x().pow(k as u32));
            let mut d = q.poly.clone();
            for _ in 0..k {
                d = d.derivative(Var::new(X));
            }
            assert_eq!(d, Poly::constant(factorial_rat(k)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn random_umbra_identities(v in prop::collection::vec(-4i64..5, 1..6)) {
            let alpha = small(&v);
            for k in 0..=6 {
                prop_assert!(martingale_check(&alpha, k).unwrap().holds());
                prop_assert!(wald_check(&alpha, k).unwrap().holds());
                prop_assert_eq!(q_poly(&alpha, k).unwrap(), complete_bell_form(&alpha, k).unwrap());
                let via_cumulants = partition_umbra(&cumulants(&alpha)).relabel(alpha.label());
                prop_assert_eq!(q_poly(&via_cumulants, k).unwrap(), q_poly(&alpha, k).unwrap());
            }
        }
    }
}
