//! Symbolic Lévy processes. A process is `{t · α}` where `α` is the
//! partition umbra of `c0 χ ∔ s ς ∔ η`.

use super::{
    boolean_unity, comp_inverse, composition, derivative, disjoint_sum, dot, free_cumulants, gaussian, partition_umbra,
    scale, singleton, transforms::boolean_cumulants, Umbra,
};
use crate::combinatorics::factorial_rat;
use crate::error::{Result, UmbralError};
use crate::poly::Poly;

/// Drift, Gaussian scale and jump-moment sequence of a Lévy process.
///
/// `jump_moments` lists `η_0 = 1, η_1 = 0, η_2, …`: the compensated jump
/// umbra has generating function `1 + Σ_{i≥2} η_i z^i / i!`. Moments past the
/// end of the list are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyTriplet {
    pub drift: Poly,
    pub scale: Poly,
    pub jump_moments: Vec<Poly>,
}

impl LevyTriplet {
    pub fn new(drift: Poly, scale: Poly, jump_moments: Vec<Poly>) -> Result<LevyTriplet> {
        let jump_moments = if jump_moments.is_empty() { vec![Poly::one()] } else { jump_moments };
        if !jump_moments[0].is_one() {
            return Err(UmbralError::InvalidParameter("jump moments must start with 1".into()));
        }
        if jump_moments.get(1).is_some_and(|m| !m.is_zero()) {
            return Err(UmbralError::InvalidParameter(
                "compensated jump umbra must have vanishing first moment".into(),
            ));
        }
        Ok(LevyTriplet { drift, scale, jump_moments })
    }

    /// Brownian motion with drift `c0` and scale `s`.
    pub fn gaussian(drift: Poly, scale: Poly) -> LevyTriplet {
        LevyTriplet { drift, scale, jump_moments: vec![Poly::one()] }
    }
}

/// The cumulant umbra `c0 χ ∔ s ς ∔ η` of a triplet.
pub fn levy_cumulant_umbra(triplet: &LevyTriplet) -> Umbra {
    let jumps = Umbra::from_moments("eta", triplet.jump_moments.clone()).expect("validated triplet");
    let drift = scale(&triplet.drift, &singleton());
    let gauss = scale(&triplet.scale, &gaussian());
    disjoint_sum(&disjoint_sum(&drift, &gauss), &jumps)
        .relabel(format!("({} chi +. {} varsigma +. eta)", triplet.drift, triplet.scale))
}

/// `β · (c0 χ ∔ s ς ∔ η)`, so that `t · levy_umbra(triplet)` is the process.
pub fn levy_umbra(triplet: &LevyTriplet) -> Umbra {
    partition_umbra(&levy_cumulant_umbra(triplet))
}

/// Umbra of the subordinated process `X_{T_t}` at unit time:
/// `β · γ_T · β · γ_X`, with `γ` the cumulant umbrae of the two triplets.
pub fn subordinate(subordinator: &LevyTriplet, process: &LevyTriplet) -> Umbra {
    composition(&levy_umbra(subordinator), &levy_cumulant_umbra(process))
}

/// Boolean Lévy umbra `ū · β · φ` built from the ordinary moments
/// `[1, a_1, …, a_n]` of the unit-time increment; `φ` has moments
/// `i! b_i` with `b` the boolean cumulants. Valid up to order `n`.
pub fn boolean_levy_umbra(moments: &[Poly]) -> Result<Umbra> {
    let b = boolean_cumulants(moments)?;
    let phi: Vec<Poly> =
        b.iter().enumerate().map(|(i, bi)| if i == 0 { Poly::one() } else { bi.scale(&factorial_rat(i)) }).collect();
    let phi = Umbra::from_moments("phi", phi)?;
    Ok(composition(&boolean_unity(), &phi))
}

/// Free Lévy umbra `K̄ · β · ((-1 · K̄)_D)^{<-1>}`, where `K̄` has moments
/// `i! r_i` with `r` the free cumulants of the given ordinary moments.
/// Valid up to the length of `moments`.
pub fn free_levy_umbra(moments: &[Poly]) -> Result<Umbra> {
    let r = free_cumulants(moments)?;
    let k: Vec<Poly> =
        r.iter().enumerate().map(|(i, ri)| if i == 0 { Poly::one() } else { ri.scale(&factorial_rat(i)) }).collect();
    let k = Umbra::from_moments("K", k)?;
    let inner = comp_inverse(&derivative(&dot(&Poly::int(-1), &k)))?;
    Ok(composition(&k, &inner))
}
