//! Umbrae as lazily evaluated moment sequences, and the umbral operations
//! built on them.
//!
//! Similar umbrae are the same object here: an [`Umbra`] *is* its moment
//! sequence `a_0 = 1, a_1, a_2, …`. Uncorrelation is implicit, since every
//! binary operation treats its two arguments as distinct symbols.

mod levy;
mod special;
mod transforms;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::combinatorics::{bell_table, binomial_rat, complete_bell_all, falling_factorials, stirling_first_row};
use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};
use crate::series::Series;

pub use levy::{boolean_levy_umbra, free_levy_umbra, levy_cumulant_umbra, levy_umbra, subordinate, LevyTriplet};
pub use special::{
    augmentation, bell, bernoulli, boolean_unity, euler, euler_eta, gaussian, singleton, special, unity, SPECIAL_NAMES,
};
pub use transforms::{boolean_cumulants, boolean_moments, free_cumulants, free_moments};

type Source = dyn Fn(usize) -> Vec<Poly> + Send + Sync;

struct Inner {
    label: String,
    source: Box<Source>,
    cache: Mutex<Vec<Poly>>,
}

/// A symbolic random variable, identified with its moment sequence.
///
/// Moments are computed on demand and cached; asking for moment `n` never
/// forces anything beyond `n`. Cloning is cheap and clones share the cache.
#[derive(Clone)]
pub struct Umbra {
    inner: Arc<Inner>,
}

impl Umbra {
    /// Umbra whose moments `0..=n` are produced in one batch by `prefix(n)`.
    /// `prefix(n)[0]` must be 1.
    pub fn from_prefix_fn(
        label: impl Into<String>,
        prefix: impl Fn(usize) -> Vec<Poly> + Send + Sync + 'static,
    ) -> Umbra {
        Umbra {
            inner: Arc::new(Inner { label: label.into(), source: Box::new(prefix), cache: Mutex::new(Vec::new()) }),
        }
    }

    /// Umbra with an explicit formula for each moment (`f(0)` is ignored and
    /// taken to be 1).
    pub fn from_fn(label: impl Into<String>, f: impl Fn(usize) -> Poly + Send + Sync + 'static) -> Umbra {
        Umbra::from_prefix_fn(label, move |n| (0..=n).map(|i| if i == 0 { Poly::one() } else { f(i) }).collect())
    }

    /// Umbra with finitely many given moments `a_0 = 1, a_1, …, a_m`; all
    /// later moments are zero.
    pub fn from_moments(label: impl Into<String>, moments: Vec<Poly>) -> Result<Umbra> {
        match moments.first() {
            Some(a0) if a0.is_one() => {}
            other => return Err(UmbralError::InvalidParameter(format!("an umbra needs a_0 = 1, got {other:?}"))),
        }
        Ok(Umbra::from_prefix_fn(label, move |n| {
            (0..=n).map(|i| moments.get(i).cloned().unwrap_or_default()).collect()
        }))
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Same moments under a new label.
    pub fn relabel(&self, label: impl Into<String>) -> Umbra {
        let me = self.clone();
        Umbra::from_prefix_fn(label, move |n| me.moments(n))
    }

    /// Moments `a_0, …, a_n`.
    pub fn moments(&self, n: usize) -> Vec<Poly> {
        {
            let cache = self.inner.cache.lock().unwrap();
            if cache.len() > n {
                return cache[..=n].to_vec();
            }
        }
        let computed = (self.inner.source)(n);
        debug_assert_eq!(computed.len(), n + 1);
        debug_assert!(computed[0].is_one(), "a_0 must be 1 for {}", self.label());
        let mut cache = self.inner.cache.lock().unwrap();
        if computed.len() > cache.len() {
            *cache = computed.clone();
        }
        computed
    }

    pub fn moment(&self, n: usize) -> Poly {
        self.moments(n).pop().unwrap()
    }

    /// The generating function `f(α, z)` truncated at `order`.
    pub fn series(&self, order: usize) -> Series {
        Series::from_coeffs(self.moments(order), order)
    }

    /// Umbra read off a generating function (moments past its order are
    /// unavailable: requesting them panics).
    pub fn from_series(label: impl Into<String>, f: &Series) -> Result<Umbra> {
        let coeffs = f.coeffs().to_vec();
        if !coeffs[0].is_one() {
            return Err(UmbralError::ConstantTerm(coeffs[0].to_string()));
        }
        let order = f.order();
        Ok(Umbra::from_prefix_fn(label, move |n| {
            assert!(n <= order, "series-backed umbra only known to order {order}");
            coeffs[..=n].to_vec()
        }))
    }
}

impl fmt::Debug for Umbra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Umbra({})", self.label())
    }
}

/// Anything that can stand on the left of a dot-product `e · α`.
///
/// `falling_moments(n)[k]` is `E[(e)_k]`, the evaluated lower factorial that
/// multiplies `B_{i,k}` in the dot-product moment formula.
pub trait DotFactor {
    fn falling_moments(&self, n: usize) -> Vec<Poly>;
    fn describe(&self) -> String;
}

impl DotFactor for Poly {
    fn falling_moments(&self, n: usize) -> Vec<Poly> {
        falling_factorials(self, n)
    }

    fn describe(&self) -> String {
        let s = self.to_string();
        if self.num_terms() > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

impl DotFactor for Umbra {
    /// `E[(γ)_k] = Σ_j s(k, j) g_j`.
    fn falling_moments(&self, n: usize) -> Vec<Poly> {
        let g = self.moments(n);
        (0..=n)
            .map(|k| {
                let row = stirling_first_row(k);
                let mut acc = Poly::zero();
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        acc += &g[j].scale(&Rational::from_integer(c.clone()));
                    }
                }
                acc
            })
            .collect()
    }

    fn describe(&self) -> String {
        self.label().to_string()
    }
}

/// Dot-product `e · α`: `E[(e·α)^i] = Σ_{k=1}^i E[(e)_k] B_{i,k}(a_1, …)`.
pub fn dot<F>(factor: &F, alpha: &Umbra) -> Umbra
where
    F: DotFactor + Clone + Send + Sync + 'static,
{
    let f = factor.clone();
    let a = alpha.clone();
    let label = format!("{}.{}", factor.describe(), alpha.label());
    Umbra::from_prefix_fn(label, move |n| {
        let moments = a.moments(n);
        let lower = f.falling_moments(n);
        let table = bell_table(n, &moments);
        let mut out = vec![Poly::one()];
        for (i, row) in table.iter().enumerate().skip(1) {
            let mut acc = Poly::zero();
            for k in 1..=i {
                if row[k].is_zero() || lower[k].is_zero() {
                    continue;
                }
                acc += &(&lower[k] * &row[k]);
            }
            out.push(acc);
        }
        out
    })
}

/// `c · α` with a rational/integer multiplier, a shorthand for `dot`.
pub fn dot_int(n: i64, alpha: &Umbra) -> Umbra {
    dot(&Poly::int(n), alpha)
}

/// Sum `α + γ` of uncorrelated umbrae (binomial convolution of moments).
pub fn add(alpha: &Umbra, gamma: &Umbra) -> Umbra {
    let (a, g) = (alpha.clone(), gamma.clone());
    let label = format!("({} + {})", alpha.label(), gamma.label());
    Umbra::from_prefix_fn(label, move |n| binomial_convolution(&a.moments(n), &g.moments(n)))
}

pub(crate) fn binomial_convolution(a: &[Poly], g: &[Poly]) -> Vec<Poly> {
    (0..a.len())
        .map(|i| {
            let mut acc = Poly::zero();
            for k in 0..=i {
                if a[k].is_zero() || g[i - k].is_zero() {
                    continue;
                }
                acc += &(&a[k] * &g[i - k]).scale(&binomial_rat(i, k));
            }
            acc
        })
        .collect()
}

/// Scaling `c α`: moments `c^n a_n`.
pub fn scale(c: &Poly, alpha: &Umbra) -> Umbra {
    let (c, a) = (c.clone(), alpha.clone());
    let label = format!("{}{}", c.describe(), alpha.label());
    Umbra::from_prefix_fn(label, move |n| {
        let mut power = Poly::one();
        a.moments(n)
            .into_iter()
            .map(|m| {
                let out = &m * &power;
                power = &power * &c;
                out
            })
            .collect()
    })
}

/// Product `α γ` of uncorrelated umbrae: moments `a_n g_n`.
pub fn product(alpha: &Umbra, gamma: &Umbra) -> Umbra {
    let (a, g) = (alpha.clone(), gamma.clone());
    let label = format!("{}{}", alpha.label(), gamma.label());
    Umbra::from_prefix_fn(label, move |n| a.moments(n).iter().zip(g.moments(n)).map(|(x, y)| x * &y).collect())
}

/// The α-cumulant umbra `χ · α`.
pub fn cumulants(alpha: &Umbra) -> Umbra {
    dot(&singleton(), alpha).relabel(format!("chi.{}", alpha.label()))
}

/// The α-partition umbra `β · α`: moment `n` is `Y_n(a_1, …, a_n)`.
pub fn partition_umbra(alpha: &Umbra) -> Umbra {
    let a = alpha.clone();
    Umbra::from_prefix_fn(format!("beta.{}", alpha.label()), move |n| {
        let moments = a.moments(n);
        complete_bell_all(n, &moments[1..])
    })
}

/// The inverse `-t · α`, satisfying `-t·α + t·α ≡ ε`.
pub fn inverse(t: &Poly, alpha: &Umbra) -> Umbra {
    dot(&(-t), alpha)
}

/// Derivative umbra `α_D`: moments `i a_{i-1}`.
pub fn derivative(alpha: &Umbra) -> Umbra {
    let a = alpha.clone();
    Umbra::from_prefix_fn(format!("{}_D", alpha.label()), move |n| {
        let prev = a.moments(n.saturating_sub(1));
        (0..=n).map(|i| if i == 0 { Poly::one() } else { prev[i - 1].scale(&rat(i as i64)) }).collect()
    })
}

/// Disjoint sum `α ∔ γ`: moments `a_i + g_i` for `i ≥ 1`.
pub fn disjoint_sum(alpha: &Umbra, gamma: &Umbra) -> Umbra {
    let (a, g) = (alpha.clone(), gamma.clone());
    let label = format!("({} +. {})", alpha.label(), gamma.label());
    Umbra::from_prefix_fn(label, move |n| {
        a.moments(n)
            .iter()
            .zip(g.moments(n))
            .enumerate()
            .map(|(i, (x, y))| if i == 0 { Poly::one() } else { x + &y })
            .collect()
    })
}

/// Composition umbra `α · β · γ`:
/// `E[(α·β·γ)^i] = Σ_{k=1}^i a_k B_{i,k}(g_1, …, g_{i-k+1})`.
pub fn composition(alpha: &Umbra, gamma: &Umbra) -> Umbra {
    let (a, g) = (alpha.clone(), gamma.clone());
    let label = format!("{}.beta.{}", alpha.label(), gamma.label());
    Umbra::from_prefix_fn(label, move |n| {
        let outer = a.moments(n);
        let table = bell_table(n, &g.moments(n));
        let mut out = vec![Poly::one()];
        for (i, row) in table.iter().enumerate().skip(1) {
            let mut acc = Poly::zero();
            for k in 1..=i {
                if row[k].is_zero() || outer[k].is_zero() {
                    continue;
                }
                acc += &(&outer[k] * &row[k]);
            }
            out.push(acc);
        }
        out
    })
}

/// Compositional inverse `α^{<-1>}`, with `α·β·α^{<-1>} ≡ χ`.
///
/// Solved moment by moment from the composition formula: the `k = 1` term of
/// `Σ_k a_k B_{i,k}(g)` is `a_1 g_i`, and every other term only involves
/// `g_1, …, g_{i-1}`.
pub fn comp_inverse(alpha: &Umbra) -> Result<Umbra> {
    let a1 = alpha.moment(1);
    let a1 =
        a1.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| UmbralError::VanishingFirstMoment(a1.to_string()))?;
    let inv_a1 = Rational::from_integer(1.into()) / a1;
    let a = alpha.clone();
    Ok(Umbra::from_prefix_fn(format!("{}^<-1>", alpha.label()), move |n| {
        let outer = a.moments(n);
        let mut g = vec![Poly::one()];
        for i in 1..=n {
            g.push(Poly::zero());
            let table = bell_table(i, &g);
            let mut acc = if i == 1 { Poly::one() } else { Poly::zero() };
            for k in 2..=i {
                if table[i][k].is_zero() || outer[k].is_zero() {
                    continue;
                }
                acc -= &(&outer[k] * &table[i][k]);
            }
            g[i] = acc.scale(&inv_a1);
        }
        g
    }))
}

/// Polynomial umbra `x · u`: the constant `x` viewed as an umbra (moments
/// `x^n`).
pub fn constant(x: &Poly) -> Umbra {
    scale(x, &unity()).relabel(x.describe())
}

/// Checks that none of `reserved` occurs in the first `n` moments.
pub(crate) fn ensure_free_of(alpha: &Umbra, n: usize, reserved: &[crate::poly::Var]) -> Result<()> {
    for m in alpha.moments(n) {
        for v in reserved {
            if m.contains_var(*v) {
                return Err(UmbralError::VariableCollision(*v));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
