//! Multivariate umbrae: `d`-tuples `μ = (μ_1, …, μ_d)` identified with their
//! joint moments `E[μ^i] = g_i`, stored sparsely by multi-index and truncated
//! by total degree `|i|`.

mod series;
mod tsh;

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::combinatorics::{multi_index_partitions, MultiIndex};
use crate::error::{Result, UmbralError};
use crate::poly::{Poly, Rational, Var};
use crate::umbra::{bernoulli, euler, DotFactor, Umbra};

pub use series::{Moments, MultiSeries};
pub use tsh::{
    classical_multi, family_multi, is_tsh_multi, levy_sheffer_multi, martingale_check_multi, process_multi,
    q_poly_multi, tsh_coefficients_multi, x_var, MultiFamily, MultiFamilyParams,
};

type Source = dyn Fn(usize) -> Moments + Send + Sync;

struct Inner {
    label: String,
    dim: usize,
    source: Box<Source>,
    cache: Mutex<Option<(usize, Moments)>>,
}

/// A `d`-tuple of umbral monomials. Clones share the moment cache.
#[derive(Clone)]
pub struct MultiUmbra {
    inner: Arc<Inner>,
}

impl MultiUmbra {
    /// `prefix(n)` returns every nonzero `g_i` with `|i| ≤ n`, including
    /// `g_0 = 1`.
    pub fn from_prefix_fn(
        label: impl Into<String>,
        dim: usize,
        prefix: impl Fn(usize) -> Moments + Send + Sync + 'static,
    ) -> MultiUmbra {
        MultiUmbra {
            inner: Arc::new(Inner { label: label.into(), dim, source: Box::new(prefix), cache: Mutex::new(None) }),
        }
    }

    /// One formula per joint moment (`f(0)` is ignored).
    pub fn from_fn(
        label: impl Into<String>,
        dim: usize,
        f: impl Fn(&MultiIndex) -> Poly + Send + Sync + 'static,
    ) -> MultiUmbra {
        MultiUmbra::from_prefix_fn(label, dim, move |n| {
            MultiIndex::up_to_order(dim, n)
                .into_iter()
                .map(|i| {
                    let g = if i.is_zero() { Poly::one() } else { f(&i) };
                    (i, g)
                })
                .filter(|(_, g)| !g.is_zero())
                .collect()
        })
    }

    /// Finitely many joint moments; every other one is zero.
    pub fn from_moments(label: impl Into<String>, dim: usize, moments: Moments) -> Result<MultiUmbra> {
        let zero = MultiIndex::zero(dim);
        if let Some(i) = moments.keys().find(|i| i.dim() != dim) {
            return Err(UmbralError::DimensionMismatch(format!("index {i:?} in a {dim}-tuple")));
        }
        if moments.get(&zero).is_some_and(|g| !g.is_one()) {
            return Err(UmbralError::InvalidParameter("a tuple needs g_0 = 1".into()));
        }
        Ok(MultiUmbra::from_fn(label, dim, move |i| moments.get(i).cloned().unwrap_or_default()))
    }

    /// Tuple read off a generating function with constant term 1.
    pub fn from_series(label: impl Into<String>, f: &MultiSeries) -> Result<MultiUmbra> {
        let c0 = f.coeff(&MultiIndex::zero(f.dim()));
        if !c0.is_one() {
            return Err(UmbralError::ConstantTerm(c0.to_string()));
        }
        let order = f.order();
        let coeffs = f.coeffs().clone();
        Ok(MultiUmbra::from_prefix_fn(label, f.dim(), move |n| {
            assert!(n <= order, "series-backed tuple only known to order {order}");
            coeffs.iter().filter(|(i, _)| i.order() <= n).map(|(i, c)| (i.clone(), c.clone())).collect()
        }))
    }

    /// A univariate umbra as a 1-tuple.
    pub fn from_umbra(alpha: &Umbra) -> MultiUmbra {
        let a = alpha.clone();
        MultiUmbra::from_prefix_fn(alpha.label(), 1, move |n| {
            a.moments(n)
                .into_iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
                .map(|(k, g)| (MultiIndex::new(vec![k as u32]), g))
                .collect()
        })
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn relabel(&self, label: impl Into<String>) -> MultiUmbra {
        let me = self.clone();
        MultiUmbra::from_prefix_fn(label, self.dim(), move |n| me.moments(n))
    }

    /// Nonzero joint moments with `|i| ≤ n`.
    pub fn moments(&self, n: usize) -> Moments {
        {
            let cache = self.inner.cache.lock().unwrap();
            if let Some((order, m)) = cache.as_ref() {
                if *order >= n {
                    return m.iter().filter(|(i, _)| i.order() <= n).map(|(i, g)| (i.clone(), g.clone())).collect();
                }
            }
        }
        let computed = (self.inner.source)(n);
        debug_assert!(
            computed.get(&MultiIndex::zero(self.dim())).is_some_and(Poly::is_one),
            "g_0 must be 1 for {}",
            self.label()
        );
        let mut cache = self.inner.cache.lock().unwrap();
        if cache.as_ref().is_none_or(|(order, _)| *order < n) {
            *cache = Some((n, computed.clone()));
        }
        computed
    }

    pub fn moment(&self, i: &MultiIndex) -> Poly {
        assert_eq!(i.dim(), self.dim(), "index {i:?} in a {}-tuple", self.dim());
        self.moments(i.order()).remove(i).unwrap_or_default()
    }

    pub fn series(&self, order: usize) -> MultiSeries {
        MultiSeries::from_coeffs(self.dim(), order, self.moments(order))
    }

    /// The `j`-th coordinate `μ_j` (0-based) as a univariate umbra.
    pub fn marginal(&self, j: usize) -> Umbra {
        assert!(j < self.dim(), "coordinate {j} of a {}-tuple", self.dim());
        let me = self.clone();
        let d = self.dim();
        Umbra::from_fn(format!("{}_{}", self.label(), j + 1), move |k| {
            let mut i = vec![0; d];
            i[j] = k as u32;
            me.moment(&MultiIndex::new(i))
        })
    }
}

impl fmt::Debug for MultiUmbra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiUmbra({}, d={})", self.label(), self.dim())
    }
}

fn same_dim(a: &MultiUmbra, b: &MultiUmbra) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(UmbralError::DimensionMismatch(format!("{} vs {}", a.dim(), b.dim())))
    }
}

/// `e · μ`: `E[(e·μ)^i] = Σ_{λ ⊢ i} i!/(𝔪(λ)! λ!) E[(e)_{l(λ)}] g_λ`.
pub fn dot_multi<F>(factor: &F, mu: &MultiUmbra) -> MultiUmbra
where
    F: DotFactor + Clone + Send + Sync + 'static,
{
    let f = factor.clone();
    let m = mu.clone();
    let d = mu.dim();
    let label = format!("{}.{}", factor.describe(), mu.label());
    MultiUmbra::from_prefix_fn(label, d, move |n| {
        let g = m.moments(n);
        let lower = f.falling_moments(n);
        let mut out = Moments::new();
        for i in MultiIndex::up_to_order(d, n) {
            if i.is_zero() {
                out.insert(i, Poly::one());
                continue;
            }
            let mut acc = Poly::zero();
            'partitions: for lambda in multi_index_partitions(&i) {
                let l = lambda.len();
                if lower[l].is_zero() {
                    continue;
                }
                let mut term = lower[l].clone();
                for (col, r) in lambda.columns() {
                    match g.get(col) {
                        Some(gc) => term = &term * &gc.pow(*r as u32),
                        None => continue 'partitions,
                    }
                }
                acc += &term.scale(&Rational::from_integer(lambda.weight(&i)));
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    })
}

/// `μ + ν` for uncorrelated tuples: the generating functions multiply.
pub fn add_multi(mu: &MultiUmbra, nu: &MultiUmbra) -> Result<MultiUmbra> {
    same_dim(mu, nu)?;
    let (a, b) = (mu.clone(), nu.clone());
    Ok(MultiUmbra::from_prefix_fn(format!("({} + {})", mu.label(), nu.label()), mu.dim(), move |n| {
        a.series(n).mul(&b.series(n)).expect("same shape").into_coeffs()
    }))
}

/// `μ ∔ ν`: moments add for every `i ≠ 0`.
pub fn disjoint_sum_multi(mu: &MultiUmbra, nu: &MultiUmbra) -> Result<MultiUmbra> {
    same_dim(mu, nu)?;
    let (a, b) = (mu.clone(), nu.clone());
    Ok(MultiUmbra::from_prefix_fn(format!("({} +. {})", mu.label(), nu.label()), mu.dim(), move |n| {
        let mut out = a.moments(n);
        for (i, g) in b.moments(n) {
            if !i.is_zero() {
                *out.entry(i).or_default() += &g;
            }
        }
        out.retain(|_, g| !g.is_zero());
        out
    }))
}

/// `c μ`: moments `c^{|i|} g_i`.
pub fn scale_multi(c: &Poly, mu: &MultiUmbra) -> MultiUmbra {
    let (c, m) = (c.clone(), mu.clone());
    MultiUmbra::from_prefix_fn(format!("{} {}", c.describe(), mu.label()), mu.dim(), move |n| {
        m.moments(n)
            .into_iter()
            .map(|(i, g)| {
                let k = i.order() as u32;
                (i, &g * &c.pow(k))
            })
            .filter(|(_, g)| !g.is_zero())
            .collect()
    })
}

/// The constant tuple `x`: moments `x^i`.
pub fn constant_multi(x: &[Poly]) -> MultiUmbra {
    let x = x.to_vec();
    let label = format!("({})", x.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "));
    MultiUmbra::from_prefix_fn(label, x.len(), move |n| MultiSeries::exp_linear(&x, n).into_coeffs())
}

/// `χ·m`, with generating function `1 + m zᵀ`.
pub fn singleton_multi(m: &[Poly]) -> MultiUmbra {
    let m = m.to_vec();
    let d = m.len();
    MultiUmbra::from_fn("chi.m", d, move |i| match i.0.iter().position(|&e| e == 1) {
        Some(j) if i.order() == 1 => m[j].clone(),
        _ => Poly::zero(),
    })
}

/// The cumulant tuple `κ_μ`, with `f(κ_μ, z) = 1 + log f(μ, z)`.
pub fn cumulants_multi(mu: &MultiUmbra) -> MultiUmbra {
    let m = mu.clone();
    MultiUmbra::from_prefix_fn(format!("kappa_{}", mu.label()), mu.dim(), move |n| {
        m.series(n).log().expect("g_0 = 1").add_constant(&Poly::one()).into_coeffs()
    })
}

/// `β · μ`, with `f(β·μ, z) = exp(f(μ, z) - 1)`.
pub fn partition_multi(mu: &MultiUmbra) -> MultiUmbra {
    let m = mu.clone();
    MultiUmbra::from_prefix_fn(format!("beta.{}", mu.label()), mu.dim(), move |n| {
        m.series(n).add_constant(&Poly::int(-1)).exp().expect("g_0 = 1").into_coeffs()
    })
}

/// Splits `p` by its exponents in `vars`: the entry at `i` is the coefficient
/// of `vars^i`, a polynomial in the remaining indeterminates.
pub(crate) fn split_by_vars(p: &Poly, vars: &[Var]) -> Moments {
    let mut out = Moments::new();
    for (m, c) in p.terms() {
        let i = MultiIndex::new(vars.iter().map(|v| m.exponent(*v)).collect());
        let rest = crate::poly::Monomial::from_pairs(m.factors().iter().filter(|(v, _)| !vars.contains(v)).cloned());
        *out.entry(i).or_default() += &Poly::monomial(c.clone(), rest);
    }
    out.retain(|_, g| !g.is_zero());
    out
}

/// `μ Cᵀ`, the tuple with coordinates `Y_j = Σ_k C_{jk} μ_k`: its generating
/// function is `f(μ, z C)`. `c` has one row per output coordinate.
pub fn linear_map(mu: &MultiUmbra, c: &[Vec<Poly>]) -> Result<MultiUmbra> {
    if let Some(row) = c.iter().find(|row| row.len() != mu.dim()) {
        return Err(UmbralError::DimensionMismatch(format!(
            "matrix row of length {} for a {}-tuple",
            row.len(),
            mu.dim()
        )));
    }
    let out_dim = c.len();
    let zs: Vec<Var> = (0..out_dim).map(|j| Var::new(&format!("_z{}", j + 1))).collect();
    // w_k = Σ_j z_j C_{jk}
    let w: Vec<Poly> = (0..mu.dim())
        .map(|k| zs.iter().zip(c).fold(Poly::zero(), |acc, (z, row)| &acc + &(&Poly::of_var(*z) * &row[k])))
        .collect();
    let m = mu.clone();
    Ok(MultiUmbra::from_prefix_fn(format!("{} C^T", mu.label()), out_dim, move |n| {
        let mut f = Poly::zero();
        for (i, g) in m.moments(n) {
            let wi = i.0.iter().zip(&w).fold(Poly::one(), |acc, (&e, wk)| &acc * &wk.pow(e));
            let inv = Rational::from_integer(1.into()) / Rational::from_integer(i.factorial());
            f += &(&g * &wi).scale(&inv);
        }
        split_by_vars(&f, &zs)
            .into_iter()
            .map(|(i, g)| {
                let fact = Rational::from_integer(i.factorial());
                (i, g.scale(&fact))
            })
            .collect()
    }))
}

pub const SPECIAL_TUPLE_NAMES: [&str; 4] = ["unity", "gaussian", "bernoulli", "euler"];

/// Special `d`-tuples: the unity `u` (`e^{z_1+⋯+z_d}`), the Gaussian `δ`
/// (`1 + ½ z zᵀ`), and the fully correlated Bernoulli `ι` and Euler `η`
/// tuples (`S/(e^S - 1)` and `2e^S/(e^{2S} + 1)` with `S = z_1 + ⋯ + z_d`).
pub fn special_tuple(name: &str, dim: usize) -> Result<MultiUmbra> {
    Ok(match name {
        "unity" | "u" => MultiUmbra::from_fn("u", dim, |_| Poly::one()),
        "gaussian" | "delta" | "δ" => MultiUmbra::from_fn("delta", dim, |i| {
            if i.order() == 2 && i.0.contains(&2) {
                Poly::one()
            } else {
                Poly::zero()
            }
        }),
        "bernoulli" | "iota" | "ι" => fully_correlated("iota", dim, bernoulli()),
        "euler" | "eta" | "η" => fully_correlated("eta", dim, euler()),
        other => return Err(UmbralError::UnknownName(other.to_string())),
    })
}

/// `(α, …, α)` with one and the same umbra in every slot: `g_i = a_{|i|}`.
pub fn fully_correlated(label: &str, dim: usize, alpha: Umbra) -> MultiUmbra {
    MultiUmbra::from_prefix_fn(label, dim, move |n| {
        let a = alpha.moments(n);
        MultiIndex::up_to_order(dim, n)
            .into_iter()
            .map(|i| {
                let g = a[i.order()].clone();
                (i, g)
            })
            .filter(|(_, g)| !g.is_zero())
            .collect()
    })
}

/// Drift `m`, covariance square root `C` and joint jump moments of a
/// multivariate Lévy process. `jump_moments` holds the nonzero moments of the
/// compensated jump tuple `γ`; first-order moments must vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiLevyTriplet {
    pub drift: Vec<Poly>,
    pub c: Vec<Vec<Poly>>,
    pub jump_moments: Moments,
}

impl MultiLevyTriplet {
    pub fn new(drift: Vec<Poly>, c: Vec<Vec<Poly>>, jump_moments: Moments) -> Result<MultiLevyTriplet> {
        let t = MultiLevyTriplet { drift, c, jump_moments };
        t.validate()?;
        Ok(t)
    }

    pub fn gaussian(drift: Vec<Poly>, c: Vec<Vec<Poly>>) -> Result<MultiLevyTriplet> {
        MultiLevyTriplet::new(drift, c, Moments::new())
    }

    pub fn dim(&self) -> usize {
        self.drift.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if self.c.len() != d || self.c.iter().any(|row| row.len() != d) {
            return Err(UmbralError::DimensionMismatch(format!("C must be {d}×{d}")));
        }
        for (i, g) in &self.jump_moments {
            if i.dim() != d {
                return Err(UmbralError::DimensionMismatch(format!("jump index {i:?} for d = {d}")));
            }
            if i.is_zero() && !g.is_one() {
                return Err(UmbralError::InvalidParameter("jump moments must start with 1".into()));
            }
            if i.order() == 1 && !g.is_zero() {
                return Err(UmbralError::InvalidParameter(
                    "compensated jump tuple must have vanishing first moments".into(),
                ));
            }
        }
        Ok(())
    }

    /// `Σ = C Cᵀ`.
    pub fn covariance(&self) -> Vec<Vec<Poly>> {
        let d = self.dim();
        (0..d)
            .map(|j| {
                (0..d).map(|k| (0..d).fold(Poly::zero(), |acc, l| &acc + &(&self.c[j][l] * &self.c[k][l]))).collect()
            })
            .collect()
    }
}

/// The cumulant tuple `χ·m ∔ δCᵀ ∔ γ`.
pub fn levy_cumulant_multi(triplet: &MultiLevyTriplet) -> Result<MultiUmbra> {
    triplet.validate()?;
    let d = triplet.dim();
    let mut jumps = triplet.jump_moments.clone();
    jumps.insert(MultiIndex::zero(d), Poly::one());
    let gamma = MultiUmbra::from_moments("gamma", d, jumps)?;
    let gauss = linear_map(&special_tuple("gaussian", d)?, &triplet.c)?;
    disjoint_sum_multi(&disjoint_sum_multi(&singleton_multi(&triplet.drift), &gauss)?, &gamma)
}

/// `β · (χ·m ∔ δCᵀ ∔ γ)`, so that `t · levy_multi(triplet)` is the process.
pub fn levy_multi(triplet: &MultiLevyTriplet) -> Result<MultiUmbra> {
    Ok(partition_multi(&levy_cumulant_multi(triplet)?).relabel("levy"))
}

/// `MultiIndex::new(v.to_vec())`.
pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}
