use std::collections::BTreeMap;

use umbral::combinatorics::MultiIndex;
use umbral::families::{classical, process_umbra, umbral, Family, FamilyParams};
use umbral::multivar::{classical_multi, family_multi, process_multi, q_poly_multi, MultiFamily, MultiFamilyParams};
use umbral::tsh::q_poly;
use umbral::Poly;

use crate::params::{parse_matrix, parse_param, parse_rational};
use crate::record::{latex_of, to_csv, to_json, to_latex_table, OutputRecord};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

/// Which polynomial of a family to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// `Q_k(x,t)` of the family's process.
    Tsh,
    /// The family in its TSH normalization (`Q_k` or a `𝒫_k` combination).
    Family,
    /// The family in its own normalization, from its generating function.
    Classical,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Tsh => "tsh",
            Kind::Family => "family",
            Kind::Classical => "classical",
        }
    }
}

/// Raw family parameters as typed on the command line.
#[derive(Clone, Debug, clap::Args)]
pub struct ParamArgs {
    /// Brownian scale (Hermite); a rational or a symbol.
    #[arg(long, default_value = "1")]
    pub sigma: String,
    /// Poisson rate / Gamma scale (Poisson–Charlier, actuarial).
    #[arg(long, default_value = "lambda")]
    pub lambda: String,
    /// Number of uniforms (pseudo-Narumi).
    #[arg(long, default_value = "a")]
    pub a: String,
    /// Success probability in (0,1), rational (Krawtchouk, Meixner).
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// Covariance root `C` for multivariate Hermite, e.g. "1,0;1/2,1".
    /// Defaults to the identity.
    #[arg(long)]
    pub c: Option<String>,
}

impl ParamArgs {
    pub fn family_params(&self) -> Result<FamilyParams, CliError> {
        let p = parse_rational(&self.p).map_err(|e| CliError::usage(format!("--p: {}", e.message())))?;
        let params = FamilyParams {
            sigma: parse_param("sigma", &self.sigma)?,
            lambda: parse_param("lambda", &self.lambda)?,
            a: parse_param("a", &self.a)?,
            p,
        };
        params.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(params)
    }

    pub fn multi_params(&self, dim: usize) -> Result<MultiFamilyParams, CliError> {
        let mut params = MultiFamilyParams::new(dim);
        if let Some(c) = &self.c {
            params.c = parse_matrix(c, |e| parse_param("c", e))?;
        }
        params.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(params)
    }
}

fn uni_param_map(family: Family, p: &FamilyParams) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    match family {
        Family::Hermite => {
            m.insert("sigma".into(), p.sigma.to_string());
        }
        Family::PoissonCharlier | Family::Actuarial => {
            m.insert("lambda".into(), p.lambda.to_string());
        }
        Family::PseudoNarumi => {
            m.insert("a".into(), p.a.to_string());
        }
        Family::Krawtchouk | Family::Meixner => {
            m.insert("p".into(), p.p.to_string());
        }
        Family::Bernoulli | Family::Euler | Family::Laguerre => {}
    }
    m
}

fn multi_param_map(family: MultiFamily, p: &MultiFamilyParams) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("dim".into(), p.dim.to_string());
    if family == MultiFamily::Hermite {
        let rows: Vec<String> =
            p.c.iter().map(|row| row.iter().map(Poly::to_string).collect::<Vec<_>>().join(",")).collect();
        m.insert("c".into(), rows.join(";"));
    }
    m
}

pub fn uni_record(family: Family, kind: Kind, k: usize, params: &FamilyParams) -> Result<OutputRecord, CliError> {
    let poly = match kind {
        Kind::Tsh => q_poly(&process_umbra(family, params)?, k)?.poly,
        Kind::Family => umbral(family, k, params)?,
        Kind::Classical => classical(family, k, params)?,
    };
    let normalization = match kind {
        Kind::Tsh => "Q_k(x,t) = E[(x - t.alpha)^k]",
        _ => family.normalization(),
    };
    Ok(OutputRecord::new(
        family.name(),
        kind.name(),
        uni_param_map(family, params),
        vec![k as u32],
        &poly,
        normalization,
    ))
}

pub fn multi_record(
    family: MultiFamily,
    kind: Kind,
    i: &MultiIndex,
    params: &MultiFamilyParams,
) -> Result<OutputRecord, CliError> {
    let poly = match kind {
        Kind::Tsh => q_poly_multi(&process_multi(family, params)?, i)?,
        Kind::Family => family_multi(family, i, params)?,
        Kind::Classical => classical_multi(family, i, params)?,
    };
    let normalization = match (kind, family) {
        (Kind::Tsh, _) => "Q_i(x,t) = E[(x - t.mu)^i]",
        (_, MultiFamily::Hermite) => "H_i(x, Sigma t) = Q_i(x,t), Sigma = C C^T",
        (_, MultiFamily::Bernoulli) => "B_i^(t)(x) = Q_i(x,t)",
        (_, MultiFamily::Euler) => "E_i^(t)(x) = Q_i(x,t)",
    };
    Ok(OutputRecord::new(
        family.name(),
        kind.name(),
        multi_param_map(family, params),
        i.0.clone(),
        &poly,
        normalization,
    ))
}

#[derive(Clone, Debug, clap::Args)]
pub struct GenArgs {
    /// One of bernoulli, euler, krawtchouk, pseudo-narumi, hermite,
    /// poisson-charlier, laguerre, actuarial, meixner. With --index only
    /// hermite, bernoulli and euler are available.
    #[arg(long)]
    pub family: String,
    /// Degree of a univariate polynomial.
    #[arg(long, conflicts_with = "index", required_unless_present = "index")]
    pub k: Option<usize>,
    /// Multi-index of a multivariate polynomial, e.g. "1,2".
    #[arg(long)]
    pub index: Option<String>,
    #[arg(long, value_enum, default_value = "family")]
    pub kind: Kind,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

pub fn cmd_gen(args: &GenArgs) -> Result<String, CliError> {
    let record = if let Some(index) = &args.index {
        let i = crate::params::parse_index(index)?;
        let family: MultiFamily = args.family.parse().map_err(|_| unknown_family(&args.family, true))?;
        multi_record(family, args.kind, &i, &args.params.multi_params(i.dim())?)?
    } else {
        let family: Family = args.family.parse().map_err(|_| unknown_family(&args.family, false))?;
        let k = args.k.ok_or_else(|| CliError::usage("--k or --index is required".into()))?;
        uni_record(family, args.kind, k, &args.params.family_params()?)?
    };
    render(std::slice::from_ref(&record), args.format, true)
}

fn unknown_family(name: &str, multi: bool) -> CliError {
    let names: Vec<&str> = if multi {
        MultiFamily::ALL.iter().map(|f| f.name()).collect()
    } else {
        Family::ALL.iter().map(|f| f.name()).collect()
    };
    CliError::usage(format!("unknown family `{name}` (expected one of {})", names.join(", ")))
}

/// A single record is written as a JSON object (or a bare LaTeX fragment),
/// several as an array (or a table).
fn render(records: &[OutputRecord], format: Format, single: bool) -> Result<String, CliError> {
    match (format, single) {
        (Format::Json, true) => to_json(&records[0]),
        (Format::Json, false) => to_json(&records),
        (Format::Csv, _) => Ok(to_csv(records)),
        (Format::Latex, true) => Ok(format!("{}\n", latex_of(&records[0])?)),
        (Format::Latex, false) => to_latex_table(records),
    }
}

#[derive(Clone, Debug, clap::Args)]
pub struct TablesArgs {
    /// 3 and 5: `Q_k` of the random walks and Lévy processes; 4 and 6: the
    /// matching classical families; 8 and 9: the multivariate analogues.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["3", "4", "5", "6", "8", "9"]))]
    pub table: String,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Dimension of the multivariate tables.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

const WALK_FAMILIES: [Family; 4] = [Family::Bernoulli, Family::Euler, Family::Krawtchouk, Family::PseudoNarumi];
const PROCESS_FAMILIES: [Family; 5] =
    [Family::Hermite, Family::PoissonCharlier, Family::Laguerre, Family::Actuarial, Family::Meixner];

pub fn cmd_tables(args: &TablesArgs) -> Result<String, CliError> {
    let mut records = Vec::new();
    match args.table.as_str() {
        "3" | "4" | "5" | "6" => {
            let params = args.params.family_params()?;
            let (families, kind) = match args.table.as_str() {
                "3" => (&WALK_FAMILIES[..], Kind::Tsh),
                "4" => (&WALK_FAMILIES[..], Kind::Classical),
                "5" => (&PROCESS_FAMILIES[..], Kind::Tsh),
                _ => (&PROCESS_FAMILIES[..], Kind::Classical),
            };
            for &f in families {
                for k in 0..=args.max_degree {
                    records.push(uni_record(f, kind, k, &params)?);
                }
            }
        }
        table => {
            if args.dim == 0 {
                return Err(CliError::usage("--dim must be positive".into()));
            }
            let params = args.params.multi_params(args.dim)?;
            let kind = if table == "8" { Kind::Tsh } else { Kind::Classical };
            for f in MultiFamily::ALL {
                for i in MultiIndex::up_to_order(args.dim, args.max_degree) {
                    records.push(multi_record(f, kind, &i, &params)?);
                }
            }
        }
    }
    render(&records, args.format, false)
}
