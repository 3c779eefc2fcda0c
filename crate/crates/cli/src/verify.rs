use serde::{Deserialize, Serialize};
use umbral::combinatorics::{factorial_rat, MultiIndex};
use umbral::families::{
    classical_normalized, levy_meixner_pair, levy_sheffer, levy_sheffer_combination, orthogonality_check,
    process_umbra, umbral, Family, FamilyParams,
};
use umbral::kailath_segall::{
    ks_evaluate, ks_homogeneity_check, ks_recursive_all, ks_specialize, ks_umbral, tsh_assignment,
};
use umbral::multivar::{
    add_multi, classical_multi, dot_multi, family_multi, martingale_check_multi, q_poly_multi, MultiFamily,
    MultiFamilyParams, MultiUmbra,
};
use umbral::tsh::{
    appell_check, complete_bell_form, martingale_check, q_coeffs_direct, q_poly, sheffer_split, wald_check, Identity,
};
use umbral::umbra::{
    add, boolean_cumulants, boolean_moments, constant, cumulants, dot, free_cumulants, free_moments, partition_umbra,
    scale, special, SPECIAL_NAMES,
};
use umbral::{Poly, Umbra, Var};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Umbral,
    Tsh,
    Families,
    Ks,
    Multivariate,
    All,
}

impl Suite {
    const EACH: [Suite; 5] = [Suite::Umbral, Suite::Tsh, Suite::Families, Suite::Ks, Suite::Multivariate];

    fn name(self) -> &'static str {
        match self {
            Suite::Umbral => "umbral",
            Suite::Tsh => "tsh",
            Suite::Families => "families",
            Suite::Ks => "ks",
            Suite::Multivariate => "multivariate",
            Suite::All => "all",
        }
    }
}

/// Outcome of one identity at one degree. A failing check carries the
/// difference of the two sides (or the offending value) as `witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub degree: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_degree: usize,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn equal(&mut self, name: impl Into<String>, degree: usize, left: &Poly, right: &Poly) {
        let passed = left == right;
        let witness = (!passed).then(|| (left - right).to_string());
        self.push(name, degree, passed, witness);
    }

    fn identity(&mut self, name: impl Into<String>, degree: usize, id: &Identity) {
        self.equal(name, degree, &id.left, &id.right);
    }

    fn zero(&mut self, name: impl Into<String>, degree: usize, value: &Poly) {
        self.equal(name, degree, value, &Poly::zero());
    }

    fn nonzero(&mut self, name: impl Into<String>, degree: usize, value: &Poly) {
        let passed = !value.is_zero();
        self.push(name, degree, passed, (!passed).then(|| "0".to_string()));
    }

    fn push(&mut self, name: impl Into<String>, degree: usize, passed: bool, witness: Option<String>) {
        self.checks.push(Check { suite: self.suite.into(), name: name.into(), degree, passed, witness });
    }
}

fn integer_umbra(label: &str, v: &[i64]) -> Umbra {
    let mut m = vec![Poly::one()];
    m.extend(v.iter().map(|&c| Poly::int(c)));
    Umbra::from_moments(label, m).expect("unit first moment")
}

/// The special umbrae plus two fixed integer-moment umbrae.
fn test_umbrae() -> Vec<Umbra> {
    let mut v: Vec<Umbra> = SPECIAL_NAMES.iter().map(|n| special(n).expect("listed name")).collect();
    v.push(integer_umbra("r1", &[1, -2, 3, 0, 5, -1, 2, 4, -3, 1]));
    v.push(integer_umbra("r2", &[2, 1, -1, 4, 0, 3, -2, 1, 5, -4]));
    v
}

fn umbral_suite(n: usize, r: &mut Recorder) -> Result<(), CliError> {
    let c = Poly::var("c");
    let (nv, mv) = (Poly::var("n"), Poly::var("m"));
    let umbrae = test_umbrae();
    for alpha in &umbrae {
        let label = alpha.label();
        let a = alpha.moments(n);
        let kappa = cumulants(alpha);
        let back = partition_umbra(&kappa).moments(n);
        let bool_back = boolean_moments(&boolean_cumulants(&a)?);
        let free_back = free_moments(&free_cumulants(&a)?);
        let homogeneous = cumulants(&scale(&c, alpha)).moments(n);
        let shifted = cumulants(&add(alpha, &constant(&c))).moments(n);
        let sum = dot(&(&nv + &mv), alpha).moments(n);
        let split = add(&dot(&nv, alpha), &dot(&mv, alpha)).moments(n);
        let k = kappa.moments(n);
        for d in 0..=n {
            r.equal(format!("cumulant round trip [{label}]"), d, &back[d], &a[d]);
            r.equal(format!("boolean round trip [{label}]"), d, &bool_back[d], &a[d]);
            r.equal(format!("free round trip [{label}]"), d, &free_back[d], &a[d]);
            r.equal(format!("cumulant homogeneity [{label}]"), d, &homogeneous[d], &(&c.pow(d as u32) * &k[d]));
            let expected = if d == 1 { &k[d] + &c } else { k[d].clone() };
            r.equal(format!("cumulant semi-invariance [{label}]"), d, &shifted[d], &expected);
            r.equal(format!("dot distributivity [{label}]"), d, &sum[d], &split[d]);
        }
    }
    for pair in umbrae.windows(2) {
        let (alpha, gamma) = (&pair[0], &pair[1]);
        let joint = cumulants(&add(alpha, gamma)).moments(n);
        let (ka, kg) = (cumulants(alpha).moments(n), cumulants(gamma).moments(n));
        for d in 0..=n {
            let expected = if d == 0 { Poly::zero() } else { &ka[d] + &kg[d] };
            let left = if d == 0 { Poly::zero() } else { joint[d].clone() };
            r.equal(format!("cumulant additivity [{} + {}]", alpha.label(), gamma.label()), d, &left, &expected);
        }
    }
    Ok(())
}

fn tsh_suite(n: usize, r: &mut Recorder) -> Result<(), CliError> {
    for alpha in &test_umbrae() {
        let label = alpha.label();
        for k in 0..=n {
            let q = q_poly(alpha, k)?.poly;
            r.equal(format!("direct coefficients [{label}]"), k, &q_coeffs_direct(alpha, k)?.poly, &q);
            r.equal(format!("complete Bell form [{label}]"), k, &complete_bell_form(alpha, k)?.poly, &q);
            r.identity(format!("martingale [{label}]"), k, &martingale_check(alpha, k)?);
            r.identity(format!("wald [{label}]"), k, &wald_check(alpha, k)?);
            r.identity(format!("appell [{label}]"), k, &appell_check(alpha, k)?);
            r.identity(format!("sheffer [{label}]"), k, &sheffer_split(alpha, k)?);
        }
    }
    Ok(())
}

fn families_suite(n: usize, r: &mut Recorder) -> Result<(), CliError> {
    let params = FamilyParams::default();
    for f in Family::ALL {
        let alpha = process_umbra(f, &params)?;
        for k in 0..=n {
            let u = umbral(f, k, &params)?;
            r.equal(format!("classical equals umbral [{f}]"), k, &classical_normalized(f, k, &params)?, &u);
            r.identity(format!("tsh [{f}]"), k, &umbral::tsh::is_tsh(&alpha, &u)?);
            r.identity(format!("martingale [{f}]"), k, &martingale_check(&alpha, k)?);
            r.identity(format!("wald [{f}]"), k, &wald_check(&alpha, k)?);
        }
    }
    for f in Family::ORTHOGONAL {
        let (alpha, gamma) = levy_meixner_pair(f, &params)?;
        for k in 0..=n {
            let v = levy_sheffer(&alpha, &gamma, k)?;
            r.equal(format!("levy-sheffer paths [{f}]"), k, &levy_sheffer_combination(&alpha, &gamma, k)?, &v);
        }
        for a in 0..=n {
            for b in 0..=a {
                let value = orthogonality_check(f, a, b, &params)?;
                if a == b {
                    r.nonzero(format!("norm [{f}, n={a}]"), a, &value);
                } else {
                    r.zero(format!("orthogonality [{f}, n={a}, m={b}]"), a, &value);
                }
            }
        }
    }
    Ok(())
}

const KS_FAMILIES: [Family; 5] =
    [Family::Hermite, Family::PoissonCharlier, Family::Laguerre, Family::Actuarial, Family::Meixner];

fn ks_suite(n: usize, r: &mut Recorder) -> Result<(), CliError> {
    let params = FamilyParams::default();
    let a = Poly::var("a");
    for (k, p) in ks_recursive_all(n).iter().enumerate() {
        r.equal("recursion equals partition umbra", k, p, &ks_umbral(k));
        r.identity("homogeneity", k, &ks_homogeneity_check(k, &a));
    }
    for f in KS_FAMILIES {
        for k in 0..=n {
            r.equal(format!("specialization [{f}]"), k, &ks_specialize(f, k, &params)?, &umbral(f, k, &params)?);
        }
    }
    let recursive = ks_recursive_all(n);
    for f in Family::ALL {
        let alpha = process_umbra(f, &params)?;
        for (k, p) in recursive.iter().enumerate() {
            let lhs = ks_evaluate(p, k, &tsh_assignment(&alpha, k)).scale(&factorial_rat(k));
            r.equal(format!("variations give Q [{f}]"), k, &lhs, &q_poly(&alpha, k)?.poly);
        }
    }
    Ok(())
}

/// A correlated pair with small integer joint moments.
fn sample_tuple() -> MultiUmbra {
    MultiUmbra::from_fn("g", 2, |i| Poly::int(((3 * i.0[0] + 5 * i.0[1] + 1) % 7) as i64 - 3))
}

fn multivariate_suite(n: usize, r: &mut Recorder) -> Result<(), CliError> {
    let params = MultiFamilyParams::new(2);
    for f in MultiFamily::ALL {
        let mu = umbral::multivar::process_multi(f, &params)?;
        for i in MultiIndex::up_to_order(2, n) {
            let d = i.order();
            let tag = format!("{f} {:?}", i.0);
            r.identity(format!("martingale [{tag}]"), d, &martingale_check_multi(&mu, &i)?);
            r.equal(
                format!("classical equals umbral [{tag}]"),
                d,
                &classical_multi(f, &i, &params)?,
                &family_multi(f, &i, &params)?,
            );
        }
    }
    let g = sample_tuple();
    let two = add_multi(&g, &g)?;
    let three = add_multi(&two, &g)?;
    let (dot2, dot3) = (dot_multi(&Poly::int(2), &g), dot_multi(&Poly::int(3), &g));
    for i in MultiIndex::up_to_order(2, n) {
        let tag = format!("{:?}", i.0);
        r.equal(format!("2-fold dot [{tag}]"), i.order(), &dot2.moment(&i), &two.moment(&i));
        r.equal(format!("3-fold dot [{tag}]"), i.order(), &dot3.moment(&i), &three.moment(&i));
        r.identity(format!("martingale [g {tag}]"), i.order(), &martingale_check_multi(&g, &i)?);
    }
    let x1 = Var::new("x1");
    let x = Poly::var("x");
    for alpha in &test_umbrae() {
        let lifted = MultiUmbra::from_umbra(alpha);
        for k in 0..=n {
            let q = q_poly_multi(&lifted, &MultiIndex::new(vec![k as u32]))?.substitute(x1, &x);
            r.equal(format!("one-dimensional Q [{}]", alpha.label()), k, &q, &q_poly(alpha, k)?.poly);
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, max_degree: usize) -> Result<VerifyReport, CliError> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        let mut r = Recorder { suite: s.name(), checks: Vec::new() };
        match s {
            Suite::Umbral => umbral_suite(max_degree, &mut r)?,
            Suite::Tsh => tsh_suite(max_degree, &mut r)?,
            Suite::Families => families_suite(max_degree, &mut r)?,
            Suite::Ks => ks_suite(max_degree, &mut r)?,
            Suite::Multivariate => multivariate_suite(max_degree, &mut r)?,
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(r.checks);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(VerifyReport {
        suite: suite.name().into(),
        max_degree,
        passed: failed == 0,
        total: checks.len(),
        failed,
        checks,
    })
}
