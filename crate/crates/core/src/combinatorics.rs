//! Integer and multi-index partitions, Bell polynomials, Stirling numbers and
//! factorial helpers.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Result, UmbralError};
use crate::poly::{rat, Poly, Rational};

/// Largest `n` whose partition list / Stirling row is kept in the memo tables.
pub const DEFAULT_MEMO_CAP: usize = 64;

static MEMO_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MEMO_CAP);

/// Changes the memoization cap. Values computed beyond the cap are returned
/// but not retained.
pub fn set_memo_cap(cap: usize) {
    MEMO_CAP.store(cap, Ordering::Relaxed);
}

pub fn memo_cap() -> usize {
    MEMO_CAP.load(Ordering::Relaxed)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_rat(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// A partition of a nonnegative integer: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    /// Panics unless `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> IntPartition {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        IntPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `l(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(part, r_part)` pairs for every part value that occurs, ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((q, r)) if *q == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of set partitions of an `n`-set whose block sizes are the parts:
    /// `n! / Π_j (r_j! (j!)^{r_j})`.
    pub fn set_partition_count(&self) -> BigInt {
        let mut den = BigInt::one();
        for (j, r) in self.multiplicities() {
            den *= factorial(r) * num_traits::pow(factorial(j), r);
        }
        factorial(self.size()) / den
    }

    /// `Π a_{λ_j}` where `a[k]` holds the k-th entry (index 0 unused).
    pub fn monomial(&self, a: &[Poly]) -> Poly {
        self.parts.iter().fold(Poly::one(), |acc, &p| &acc * &a[p])
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

static PARTITIONS: Lazy<Mutex<HashMap<usize, Arc<Vec<IntPartition>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// All partitions of `n` in reverse-lexicographic order:
/// `4 → [4], [3,1], [2,2], [2,1,1], [1,1,1,1]`. `partitions(0)` is the single
/// empty partition.
pub fn partitions(n: usize) -> Arc<Vec<IntPartition>> {
    if let Some(hit) = PARTITIONS.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_partitions(n, n, &mut current, &mut out);
    let out = Arc::new(out);
    if n <= memo_cap() {
        PARTITIONS.lock().unwrap().insert(n, out.clone());
    }
    out
}

fn gen_partitions(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
    if rest == 0 {
        out.push(IntPartition { parts: current.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        current.push(p);
        gen_partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// A multi-index `i = (i_1, …, i_d)` of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(v: Vec<u32>) -> MultiIndex {
        MultiIndex(v)
    }

    pub fn zero(d: usize) -> MultiIndex {
        MultiIndex(vec![0; d])
    }

    pub fn unit(d: usize, j: usize) -> MultiIndex {
        let mut v = vec![0; d];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|i|`.
    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `i! = i_1! ⋯ i_d!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e as usize))
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.checked_sub(b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `C(i, k) = Π_j C(i_j, k_j)`.
    pub fn binomial(&self, k: &MultiIndex) -> BigInt {
        self.0.iter().zip(&k.0).fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(a as usize, b as usize))
    }

    /// Every `k ≤ self`, in lexicographic order (starting at zero).
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for prefix in &out {
                for e in 0..=bound {
                    let mut p = prefix.clone();
                    p.push(e);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// Every multi-index of dimension `d` with `|i| ≤ n`, sorted by order then
    /// lexicographically.
    pub fn up_to_order(d: usize, n: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> =
            MultiIndex(vec![n as u32; d]).below().into_iter().filter(|i| i.order() <= n).collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A partition `λ ⊢ i` of a multi-index: a multiset of nonzero columns, kept
/// in increasing lexicographic order with multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndexPartition {
    columns: Vec<(MultiIndex, usize)>,
}

impl MultiIndexPartition {
    pub fn columns(&self) -> &[(MultiIndex, usize)] {
        &self.columns
    }

    /// `l(λ)`, the number of columns counted with multiplicity.
    pub fn len(&self) -> usize {
        self.columns.iter().map(|(_, r)| r).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `𝔪(λ)! = r_1! r_2! ⋯`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.columns.iter().fold(BigInt::one(), |acc, (_, r)| acc * factorial(*r))
    }

    /// `λ! = λ_1! λ_2! ⋯`, each column counted with its multiplicity.
    pub fn factorial(&self) -> BigInt {
        self.columns.iter().fold(BigInt::one(), |acc, (c, r)| acc * num_traits::pow(c.factorial(), *r))
    }

    /// `i! / (𝔪(λ)! λ!)`: the number of ways to split a set typed by `i`
    /// into blocks of the column types.
    pub fn weight(&self, i: &MultiIndex) -> BigInt {
        i.factorial() / (self.multiplicity_factorial() * self.factorial())
    }
}

impl fmt::Debug for MultiIndexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> =
            self.columns.iter().map(|(c, r)| if *r == 1 { format!("{c:?}") } else { format!("{c:?}^{r}") }).collect();
        write!(f, "{{{}}}", cols.join(", "))
    }
}

/// Every partition of the multi-index `i`, each exactly once.
pub fn multi_index_partitions(i: &MultiIndex) -> Vec<MultiIndexPartition> {
    let candidates: Vec<MultiIndex> = i.below().into_iter().filter(|c| !c.is_zero()).collect();
    let mut out = Vec::new();
    let mut current: Vec<(MultiIndex, usize)> = Vec::new();
    gen_multi(i.clone(), &candidates, 0, &mut current, &mut out);
    out
}

fn gen_multi(
    rest: MultiIndex,
    candidates: &[MultiIndex],
    start: usize,
    current: &mut Vec<(MultiIndex, usize)>,
    out: &mut Vec<MultiIndexPartition>,
) {
    if rest.is_zero() {
        out.push(MultiIndexPartition { columns: current.clone() });
        return;
    }
    for (idx, col) in candidates.iter().enumerate().skip(start) {
        let mut remaining = rest.clone();
        let mut r = 0;
        while let Some(next) = remaining.checked_sub(col) {
            remaining = next;
            r += 1;
            current.push((col.clone(), r));
            gen_multi(remaining.clone(), candidates, idx + 1, current, out);
            current.pop();
        }
    }
}

/// Triangle of exponential partial Bell polynomials `B_{n,k}(a_1, …)` for
/// `0 ≤ k ≤ n ≤ max`; `a[j]` is the j-th argument (`a[0]` is ignored).
///
/// Uses `B_{n,k} = Σ_{j=1}^{n-k+1} C(n-1, j-1) a_j B_{n-j,k-1}`.
pub fn bell_table(max: usize, a: &[Poly]) -> Vec<Vec<Poly>> {
    let mut table: Vec<Vec<Poly>> = (0..=max).map(|n| vec![Poly::zero(); n + 1]).collect();
    table[0][0] = Poly::one();
    for n in 1..=max {
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=(n - k + 1) {
                let prev = &table[n - j][k - 1];
                if prev.is_zero() || a[j].is_zero() {
                    continue;
                }
                let c = binomial_rat(n - 1, j - 1);
                acc += &(&a[j] * prev).scale(&c);
            }
            table[n][k] = acc;
        }
    }
    table
}

fn padded(a: &[Poly], len: usize) -> Vec<Poly> {
    let mut v = Vec::with_capacity(len + 1);
    v.push(Poly::zero());
    for j in 0..len {
        v.push(a.get(j).cloned().unwrap_or_default());
    }
    v
}

/// `B_{n,k}(a_1, …, a_{n-k+1})` where `a[0]` holds `a_1`.
pub fn partial_bell(n: usize, k: usize, a: &[Poly]) -> Result<Poly> {
    if n == 0 && k == 0 {
        return Ok(Poly::one());
    }
    if k == 0 || k > n {
        return Err(UmbralError::OutOfRange(format!("partial Bell B_{{{n},{k}}} needs 1 <= k <= n")));
    }
    if a.len() < n - k + 1 {
        return Err(UmbralError::OutOfRange(format!("B_{{{n},{k}}} needs {} arguments, got {}", n - k + 1, a.len())));
    }
    let args = padded(a, n);
    Ok(bell_table(n, &args)[n][k].clone())
}

/// Complete Bell polynomial `Y_n(a_1, …, a_n)`, `a[0]` holding `a_1`.
/// `Y_0 = 1`.
pub fn complete_bell(n: usize, a: &[Poly]) -> Poly {
    complete_bell_all(n, a).pop().unwrap()
}

/// `[Y_0, …, Y_n]` via `Y_{m+1} = Σ_j C(m, j) a_{j+1} Y_{m-j}`.
pub fn complete_bell_all(n: usize, a: &[Poly]) -> Vec<Poly> {
    let args = padded(a, n);
    let mut y = vec![Poly::one()];
    for m in 0..n {
        let mut acc = Poly::zero();
        for j in 0..=m {
            if args[j + 1].is_zero() {
                continue;
            }
            acc += &(&args[j + 1] * &y[m - j]).scale(&binomial_rat(m, j));
        }
        y.push(acc);
    }
    y
}

static STIRLING1: Lazy<Mutex<Vec<Vec<BigInt>>>> = Lazy::new(|| Mutex::new(vec![vec![BigInt::one()]]));

/// Signed Stirling number of the first kind `s(n, k)`, so that
/// `(t)_n = Σ_k s(n, k) t^k`. Zero outside `0 ≤ k ≤ n`.
pub fn stirling_first(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    Rational::from_integer(stirling_first_row(n)[k].clone())
}

/// Row `[s(n,0), …, s(n,n)]`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    {
        let table = STIRLING1.lock().unwrap();
        if n < table.len() {
            return table[n].clone();
        }
    }
    let mut table = STIRLING1.lock().unwrap();
    let mut rows = table.clone();
    while rows.len() <= n {
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mut row = vec![BigInt::zero(); m + 2];
        for k in 1..=m + 1 {
            let left = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
            let here = prev.get(k).cloned().unwrap_or_default();
            row[k] = left - BigInt::from(m) * here;
        }
        rows.push(row);
    }
    let row = rows[n].clone();
    if n <= memo_cap() {
        *table = rows;
    }
    row
}

/// `(t)_n = t(t-1)⋯(t-n+1)` in the indeterminate `t`.
pub fn lower_factorial(n: usize) -> Poly {
    falling_factorial(&Poly::var("t"), n)
}

/// `(e)_n = e(e-1)⋯(e-n+1)` for any polynomial `e`.
pub fn falling_factorial(e: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| &acc * &(e - &Poly::int(j as i64)))
}

/// `[(e)_0, (e)_1, …, (e)_n]`.
pub fn falling_factorials(e: &Poly, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    for j in 0..n {
        let next = &out[j] * &(e - &Poly::int(j as i64));
        out.push(next);
    }
    out
}

/// Rising factorial `e(e+1)⋯(e+n-1)`.
pub fn rising_factorial(e: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| &acc * &(e + &Poly::int(j as i64)))
}

/// `Σ_k s(n,k) e^k`, the Stirling expansion of `(e)_n`.
pub fn stirling_expansion(e: &Poly, n: usize) -> Poly {
    let row = stirling_first_row(n);
    let mut acc = Poly::zero();
    for (k, c) in row.iter().enumerate() {
        if !c.is_zero() {
            acc += &e.pow(k as u32).scale(&Rational::from_integer(c.clone()));
        }
    }
    acc
}

/// Convenience: `n` as a rational.
pub fn rat_usize(n: usize) -> Rational {
    rat(n as i64)
}
