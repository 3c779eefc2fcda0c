use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use umbral::{Monomial, Poly, Rational, Var};

use crate::CliError;

/// One exact polynomial together with what it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    /// `tsh` for `Q_k`, `family` for the family in TSH normalization,
    /// `classical` for the family in its own normalization.
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub index: Vec<u32>,
    pub variables: Vec<String>,
    pub terms: Vec<Term>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    /// `p/q` in lowest terms, or `n` for integers.
    pub coefficient: String,
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub normalization: String,
    pub truncation_order: usize,
    pub seed: Option<u64>,
}

impl OutputRecord {
    pub fn new(
        family: &str,
        kind: &str,
        params: BTreeMap<String, String>,
        index: Vec<u32>,
        poly: &Poly,
        normalization: &str,
    ) -> OutputRecord {
        let truncation_order = index.iter().map(|&i| i as usize).sum();
        OutputRecord {
            family: family.to_string(),
            kind: kind.to_string(),
            params,
            index,
            variables: poly.variables().into_iter().map(|v| v.name().to_string()).collect(),
            terms: poly
                .ordered_terms()
                .into_iter()
                .map(|(m, c)| Term {
                    coefficient: c.to_string(),
                    monomial: m.factors().iter().map(|(v, e)| (v.name().to_string(), *e)).collect(),
                })
                .collect(),
            metadata: Metadata { normalization: normalization.to_string(), truncation_order, seed: None },
        }
    }

    /// The polynomial, after checking that every coefficient is a nonzero
    /// rational in lowest terms and that `variables` is accurate.
    pub fn to_poly(&self) -> Result<Poly, CliError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let c: Rational = term
                .coefficient
                .parse()
                .map_err(|_| CliError::usage(format!("bad coefficient `{}`", term.coefficient)))?;
            if c.to_string() != term.coefficient || c == Rational::from_integer(0.into()) {
                return Err(CliError::usage(format!("coefficient `{}` is not in lowest terms", term.coefficient)));
            }
            if term.monomial.values().any(|&e| e == 0) {
                return Err(CliError::usage("zero exponent in monomial".into()));
            }
            let m = Monomial::from_pairs(term.monomial.iter().map(|(v, &e)| (Var::new(v), e)));
            terms.push((m, c));
        }
        let n = terms.len();
        let poly = Poly::from_terms(terms);
        if poly.num_terms() != n {
            return Err(CliError::usage("repeated monomial".into()));
        }
        let vars: Vec<String> = poly.variables().into_iter().map(|v| v.name().to_string()).collect();
        if vars != self.variables {
            return Err(CliError::usage("`variables` does not match the terms".into()));
        }
        Ok(poly)
    }

    pub fn from_json(s: &str) -> Result<OutputRecord, CliError> {
        let r: OutputRecord = serde_json::from_str(s).map_err(|e| CliError::usage(format!("bad record: {e}")))?;
        r.to_poly()?;
        Ok(r)
    }

    fn index_string(&self) -> String {
        self.index.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
    }
}

fn monomial_string(m: &BTreeMap<String, u32>) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") }).collect::<Vec<_>>().join("*")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `family,index,coefficient,monomial`, one row per term.
pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut out = String::from("family,index,coefficient,monomial\n");
    for r in records {
        for term in &r.terms {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.family,
                r.index_string(),
                term.coefficient,
                monomial_string(&term.monomial)
            );
        }
    }
    out
}

pub fn latex_of(record: &OutputRecord) -> Result<String, CliError> {
    Ok(record.to_poly()?.to_latex())
}

/// A `tabular` with one row per record.
pub fn to_latex_table(records: &[OutputRecord]) -> Result<String, CliError> {
    let mut out = String::from("\\begin{tabular}{lll}\nfamily & index & polynomial \\\\\n\\hline\n");
    for r in records {
        let _ = writeln!(out, "{} & ${}$ & ${}$ \\\\", r.family, r.index_string().replace(';', ","), latex_of(r)?);
    }
    out.push_str("\\end{tabular}\n");
    Ok(out)
}
