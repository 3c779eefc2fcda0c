use super::*;
use crate::poly::ratio;
use crate::series::{expm1_over_z, log1p};
use proptest::prelude::*;

fn consts(v: &[i64]) -> Vec<Poly> {
    v.iter().map(|&c| Poly::int(c)).collect()
}

fn t() -> Poly {
    Poly::var("t")
}

fn same(a: &Umbra, b: &Umbra, n: usize) {
    assert_eq!(a.moments(n), b.moments(n), "{a:?} vs {b:?}");
}

#[test]
fn special_moments() {
    assert_eq!(boolean_unity().moments(4), consts(&[1, 1, 2, 6, 24]));
    assert_eq!(singleton().moments(3), consts(&[1, 1, 0, 0]));
    assert_eq!(bell().moments(5), consts(&[1, 1, 2, 5, 15, 52]));
    assert_eq!(augmentation().moments(2), consts(&[1, 0, 0]));
    let iota: Vec<Poly> =
        [ratio(1, 1), ratio(-1, 2), ratio(1, 6), ratio(0, 1), ratio(-1, 30)].into_iter().map(Poly::constant).collect();
    assert_eq!(bernoulli().moments(4), iota);
    assert_eq!(euler().moments(6), consts(&[1, 0, -1, 0, 5, 0, -61]));
    let eta: Vec<Poly> = [ratio(1, 1), ratio(1, 2), ratio(0, 1), ratio(-1, 4), ratio(0, 1), ratio(1, 2)]
        .into_iter()
        .map(Poly::constant)
        .collect();
    assert_eq!(euler_eta().moments(5), eta);
    assert!(special("nope").is_err());
    for name in SPECIAL_NAMES {
        assert!(special(name).is_ok());
    }
}

#[test]
fn special_moments_match_generating_functions() {
    let n = 12;
    let z = Series::z(n);
    let ez = Series::exp_linear(&Poly::one(), n);
    // ι: z/(e^z - 1)
    assert_eq!(bernoulli().series(n), expm1_over_z(n).recip().unwrap());
    // β: exp(e^z - 1)
    assert_eq!(bell().series(n), (&ez - &Series::one(n)).exp().unwrap());
    // ū: 1/(1 - z)
    assert_eq!(boolean_unity().series(n), (&Series::one(n) - &z).recip().unwrap());
    // sech z = 2e^z / (e^{2z} + 1)
    let e2z = Series::exp_linear(&Poly::int(2), n);
    let sech = ez.scale(&Poly::int(2)).mul(&e2z.add_constant(&Poly::one()).recip().unwrap()).unwrap();
    assert_eq!(euler().series(n), sech);
    // 2e^z / (e^z + 1)
    let eta = ez.scale(&Poly::int(2)).mul(&ez.add_constant(&Poly::one()).recip().unwrap()).unwrap();
    assert_eq!(euler_eta().series(n), eta);
}

#[test]
fn add_examples() {
    let alpha = Umbra::from_moments("a", consts(&[1, 2, -1, 3])).unwrap();
    same(&add(&alpha, &augmentation()), &alpha, 6);
    assert_eq!(add(&unity(), &unity()).moments(5), consts(&[1, 2, 4, 8, 16, 32]));
    assert_eq!(add(&singleton(), &singleton()).moments(4), consts(&[1, 2, 2, 0, 0]));
}

#[test]
fn scale_examples() {
    let s = Poly::var("sigma");
    let m = scale(&s, &gaussian()).moments(3);
    assert_eq!(m, vec![Poly::one(), Poly::zero(), s.pow(2), Poly::zero()]);
    assert_eq!(scale(&Poly::int(-1), &singleton()).moments(2), consts(&[1, -1, 0]));
    let alpha = Umbra::from_moments("a", consts(&[1, 2, -1, 3])).unwrap();
    same(&scale(&Poly::one(), &alpha), &alpha, 5);
}

#[test]
fn dot_examples() {
    let a1 = Poly::var("a1");
    let a2 = Poly::var("a2");
    let alpha = Umbra::from_moments("a", vec![Poly::one(), a1.clone(), a2.clone()]).unwrap();
    let two = dot_int(2, &alpha);
    assert_eq!(two.moment(2), &a2.scale(&rat(2)) + &(&a1 * &a1).scale(&rat(2)));
    assert_eq!(dot(&t(), &alpha).moment(1), &t() * &a1);
    // χ·β ≡ u
    assert_eq!(dot(&singleton(), &bell()).moments(8), unity().moments(8));
}

#[test]
fn dot_by_integer_is_repeated_sum() {
    let alpha = Umbra::from_moments("a", consts(&[1, 3, -2, 5, 7, 1])).unwrap();
    let three = add(&add(&alpha, &alpha), &alpha);
    same(&dot_int(3, &alpha), &three, 8);
}

#[test]
fn cumulant_examples() {
    same(&cumulants(&bell()), &unity(), 10);
    let s = Poly::var("sigma");
    let gauss = partition_umbra(&scale(&s, &gaussian()));
    assert_eq!(cumulants(&gauss).moments(4), vec![Poly::one(), Poly::zero(), s.pow(2), Poly::zero(), Poly::zero()]);
    // χ·χ: (-1)^{i-1}(i-1)!
    assert_eq!(cumulants(&singleton()).moments(5), consts(&[1, 1, -1, 2, -6, 24]));
}

#[test]
fn partition_examples() {
    same(&partition_umbra(&unity()), &bell(), 10);
    same(&partition_umbra(&augmentation()), &augmentation(), 6);
}

#[test]
fn inverse_examples() {
    let alpha = Umbra::from_moments("a", consts(&[1, 2, 5, -3])).unwrap();
    assert_eq!(inverse(&t(), &alpha).moment(1), t().scale(&rat(-2)));
    assert_eq!(inverse(&t(), &boolean_unity()).moment(2), &t().pow(2) - &t());
    same(&add(&inverse(&t(), &alpha), &dot(&t(), &alpha)), &augmentation(), 8);
}

#[test]
fn derivative_examples() {
    same(&derivative(&augmentation()), &singleton(), 6);
    assert_eq!(derivative(&unity()).moments(4), consts(&[1, 1, 2, 3, 4]));
    same(&derivative(&boolean_unity()), &boolean_unity(), 8);
}

#[test]
fn disjoint_sum_examples() {
    let alpha = Umbra::from_moments("a", consts(&[1, 2, 5, -3])).unwrap();
    same(&disjoint_sum(&alpha, &augmentation()), &alpha, 6);
    assert_eq!(disjoint_sum(&singleton(), &singleton()).moments(3), consts(&[1, 2, 0, 0]));
}

#[test]
fn composition_and_inverse_examples() {
    let n = 10;
    same(&comp_inverse(&singleton()).unwrap(), &singleton(), n);
    let inv_u = comp_inverse(&unity()).unwrap();
    assert_eq!(inv_u.series(n), log1p(n).add_constant(&Poly::one()));
    let gamma = Umbra::from_moments("g", consts(&[1, 1, 3, -2, 4])).unwrap();
    same(&composition(&unity(), &gamma), &partition_umbra(&gamma), n);
    let alpha = Umbra::from_moments("a", consts(&[1, 2, 3, 4])).unwrap();
    same(&composition(&alpha, &singleton()), &alpha, n);
    // compound Poisson t·β·γ: Σ t^k B_{i,k}(g)
    let tb = dot(&t(), &bell());
    let table = bell_table(6, &gamma.moments(6));
    let expected: Poly = (1..=6).map(|k| &t().pow(k as u32) * &table[6][k]).fold(Poly::zero(), |a, b| a + b);
    assert_eq!(dot(&tb, &gamma).moment(6), expected);
    same(&dot(&tb, &gamma), &composition(&dot(&t(), &unity()), &gamma), 8);
    assert!(matches!(comp_inverse(&gaussian()), Err(UmbralError::VanishingFirstMoment(_))));
}

#[test]
fn composition_matches_series() {
    let n = 9;
    let alpha = Umbra::from_moments("a", consts(&[1, 2, -1, 3, 1])).unwrap();
    let gamma = Umbra::from_moments("g", consts(&[1, 1, 2, 0, -1, 5])).unwrap();
    let via_series = alpha.series(n).compose_shifted(&gamma.series(n)).unwrap();
    assert_eq!(composition(&alpha, &gamma).series(n), via_series);
    // dot with a polynomial is the power of the generating function
    assert_eq!(dot(&t(), &alpha).series(n), alpha.series(n).pow(&t()).unwrap());
    assert_eq!(cumulants(&alpha).series(n), alpha.series(n).log().unwrap().add_constant(&Poly::one()));
    let shifted = &alpha.series(n) - &Series::one(n);
    assert_eq!(partition_umbra(&alpha).series(n), shifted.exp().unwrap());
}

#[test]
fn boolean_and_free_examples() {
    let ones = consts(&[1, 1, 1, 1, 1, 1]);
    assert_eq!(boolean_cumulants(&ones).unwrap(), consts(&[0, 1, 0, 0, 0, 0]));
    let zeros = consts(&[1, 0, 0, 0]);
    assert_eq!(boolean_cumulants(&zeros).unwrap(), consts(&[0, 0, 0, 0]));
    assert_eq!(free_cumulants(&zeros).unwrap(), consts(&[1, 0, 0, 0]));
    // Catalan moments have every free cumulant equal to 1; semicircle moments
    // (Catalan numbers on even indices) have only r_2 = 1.
    let catalan = consts(&[1, 1, 2, 5, 14, 42, 132]);
    assert_eq!(free_cumulants(&catalan).unwrap(), consts(&[1, 1, 1, 1, 1, 1, 1]));
    let semicircle = consts(&[1, 0, 1, 0, 2, 0, 5]);
    assert_eq!(free_cumulants(&semicircle).unwrap(), consts(&[1, 0, 1, 0, 0, 0, 0]));
}

#[test]
fn levy_examples() {
    let s = Poly::var("sigma");
    let c0 = Poly::var("c");
    let n = 6;
    let gauss = levy_umbra(&LevyTriplet::gaussian(Poly::zero(), s.clone()));
    assert_eq!(cumulants(&gauss).moments(n), scale(&s, &gaussian()).moments(n));
    let drift = levy_umbra(&LevyTriplet::gaussian(c0.clone(), Poly::zero()));
    same(&cumulants(&drift), &scale(&c0, &singleton()), n);
    // Poisson λ: drift λ plus jumps with η_i = λ for i ≥ 2
    let lambda = Poly::var("lambda");
    let mut jumps = vec![Poly::one(), Poly::zero()];
    jumps.extend(std::iter::repeat_n(lambda.clone(), 10));
    let poisson = levy_umbra(&LevyTriplet::new(lambda.clone(), Poly::zero(), jumps).unwrap());
    same(&poisson, &dot(&lambda, &bell()), 10);
    assert!(LevyTriplet::new(Poly::zero(), Poly::zero(), consts(&[1, 1])).is_err());
}

#[test]
fn subordination_examples() {
    let n = 6;
    let x = LevyTriplet::new(Poly::int(2), Poly::int(3), consts(&[1, 0, 4, 1])).unwrap();
    let unit_drift = LevyTriplet::gaussian(Poly::one(), Poly::zero());
    same(&subordinate(&unit_drift, &x), &levy_umbra(&x), n);
    let trivial = LevyTriplet::gaussian(Poly::zero(), Poly::zero());
    same(&subordinate(&unit_drift, &trivial), &augmentation(), n);
}

#[test]
fn poisson_subordinated_brownian() {
    // N ~ Poisson(λ), W Brownian: E[W_N^m] = Σ_j E[N^j] c_{m,j} where
    // E[W_n^m] = n^{m/2} (m-1)!! for even m; E[N^j] = Σ_k S(j,k) λ^k.
    let lambda = Poly::var("lambda");
    let mut jumps = vec![Poly::one(), Poly::zero()];
    jumps.extend(std::iter::repeat_n(lambda.clone(), 8));
    let poisson = LevyTriplet::new(lambda.clone(), Poly::zero(), jumps).unwrap();
    let brownian = LevyTriplet::gaussian(Poly::zero(), Poly::one());
    let sub = subordinate(&poisson, &brownian);
    let stirling2 = |j: usize, k: usize| -> i64 {
        // brute-force S(j,k) by the standard recurrence
        let mut s = vec![vec![0i64; j + 1]; j + 1];
        s[0][0] = 1;
        for a in 1..=j {
            for b in 1..=a {
                s[a][b] = b as i64 * s[a - 1][b] + s[a - 1][b - 1];
            }
        }
        s[j][k]
    };
    let poisson_moment = |j: usize| -> Poly {
        (0..=j).fold(Poly::zero(), |acc, k| &acc + &lambda.pow(k as u32).scale(&rat(stirling2(j, k))))
    };
    for m in 0..=6usize {
        let expected = if m % 2 == 1 {
            Poly::zero()
        } else {
            let double_fact: i64 = (1..m as i64).step_by(2).product();
            poisson_moment(m / 2).scale(&rat(double_fact))
        };
        assert_eq!(sub.moment(m), expected, "m = {m}");
    }
}

#[test]
fn boolean_and_free_levy_recover_increment() {
    let moments = consts(&[1, 2, 7, 3, 11, -4, 9]);
    let bar: Vec<Poly> =
        moments.iter().enumerate().map(|(i, a)| a.scale(&crate::combinatorics::factorial_rat(i))).collect();
    assert_eq!(boolean_levy_umbra(&moments).unwrap().moments(6), bar);
    assert_eq!(free_levy_umbra(&moments).unwrap().moments(6), bar);
}

#[test]
fn constant_umbra() {
    let x = Poly::var("x");
    assert_eq!(constant(&x).moment(3), x.pow(3));
}

fn small_umbra(v: Vec<i64>) -> Umbra {
    let mut m = vec![Poly::one()];
    m.extend(v.into_iter().map(Poly::int));
    Umbra::from_moments("r", m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distributive_law(v in prop::collection::vec(-4i64..5, 1..6)) {
        let alpha = small_umbra(v);
        let s = Poly::var("s");
        let left = dot(&(&t() + &s), &alpha);
        let right = add(&dot(&t(), &alpha), &dot(&s, &alpha));
        prop_assert_eq!(left.moments(8), right.moments(8));
    }

    #[test]
    fn dot_associativity(
        a in prop::collection::vec(-3i64..4, 1..4),
        b in prop::collection::vec(-3i64..4, 1..4),
        c in prop::collection::vec(-3i64..4, 1..4),
    ) {
        let (alpha, varsigma, gamma) = (small_umbra(a), small_umbra(b), small_umbra(c));
        let left = dot(&alpha, &dot(&varsigma, &gamma));
        let right = dot(&dot(&alpha, &varsigma), &gamma);
        prop_assert_eq!(left.moments(6), right.moments(6));
    }

    #[test]
    fn cumulant_round_trip(v in prop::collection::vec(-5i64..6, 1..8)) {
        let alpha = small_umbra(v);
        prop_assert_eq!(partition_umbra(&cumulants(&alpha)).moments(10), alpha.moments(10));
    }

    #[test]
    fn cumulant_additivity_and_homogeneity(
        a in prop::collection::vec(-4i64..5, 1..6),
        b in prop::collection::vec(-4i64..5, 1..6),
        c in -3i64..4,
    ) {
        let (alpha, gamma) = (small_umbra(a), small_umbra(b));
        prop_assert_eq!(
            cumulants(&add(&alpha, &gamma)).moments(8),
            disjoint_sum(&cumulants(&alpha), &cumulants(&gamma)).moments(8)
        );
        let scaled = cumulants(&scale(&Poly::int(c), &alpha)).moments(8);
        let plain = cumulants(&alpha).moments(8);
        for i in 0..=8 {
            let factor = if i == 0 { Poly::one() } else { Poly::int(c).pow(i as u32) };
            prop_assert_eq!(&scaled[i], &(&plain[i] * &factor));
        }
    }

    #[test]
    fn semi_invariance(v in prop::collection::vec(-4i64..5, 1..6), a in -5i64..6) {
        let alpha = small_umbra(v);
        let shifted = cumulants(&add(&alpha, &scale(&Poly::int(a), &unity()))).moments(8);
        let plain = cumulants(&alpha).moments(8);
        prop_assert_eq!(&shifted[1], &(&plain[1] + &Poly::int(a)));
        prop_assert_eq!(&shifted[2..], &plain[2..]);
    }

    #[test]
    fn disjoint_sum_distributes(
        a in prop::collection::vec(-4i64..5, 1..5),
        b in prop::collection::vec(-4i64..5, 1..5),
    ) {
        let (alpha, gamma) = (small_umbra(a), small_umbra(b));
        prop_assert_eq!(
            partition_umbra(&disjoint_sum(&alpha, &gamma)).moments(8),
            add(&partition_umbra(&alpha), &partition_umbra(&gamma)).moments(8)
        );
    }

    #[test]
    fn comp_inverse_round_trip(v in prop::collection::vec(-4i64..5, 0..7)) {
        let mut m = vec![1i64, 1];
        m.extend(v);
        let alpha = small_umbra(m[1..].to_vec());
        let inv = comp_inverse(&alpha).unwrap();
        prop_assert_eq!(composition(&alpha, &inv).moments(10), singleton().moments(10));
        prop_assert_eq!(composition(&inv, &alpha).moments(10), singleton().moments(10));
        prop_assert_eq!(inv.series(10), alpha.series(10).revert().unwrap());
    }

    #[test]
    fn boolean_round_trip(v in prop::collection::vec(-6i64..7, 10)) {
        let mut a = vec![Poly::one()];
        a.extend(v.into_iter().map(Poly::int));
        prop_assert_eq!(boolean_moments(&boolean_cumulants(&a).unwrap()), a.clone());
        prop_assert_eq!(free_moments(&free_cumulants(&a).unwrap()), a);
    }
}
