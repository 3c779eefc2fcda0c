use num_traits::ToPrimitive;
use umbral::{Poly, Var};

use crate::SimError;

/// Compensated (Neumaier) running sum.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A polynomial in a fixed list of variables with `f64` coefficients,
/// converted once from the exact form.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    terms: Vec<(Vec<i32>, f64)>,
}

impl NumericPoly {
    pub fn compile(p: &Poly, vars: &[Var]) -> Result<NumericPoly, SimError> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            if let Some((v, _)) = m.factors().iter().find(|(v, _)| !vars.contains(v)) {
                return Err(SimError::Internal(format!("unexpected indeterminate {v}")));
            }
            let exps = vars.iter().map(|v| m.exponent(*v) as i32).collect();
            let c = c.to_f64().ok_or_else(|| SimError::Internal(format!("coefficient {c} overflows f64")))?;
            terms.push((exps, c));
        }
        Ok(NumericPoly { terms })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, c)| c * e.iter().zip(x).map(|(&k, v)| v.powi(k)).product::<f64>()).sum()
    }
}
