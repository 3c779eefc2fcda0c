use std::fmt::Write as _;

use umbral_sim::{simulate, Jump, ProcessSpec, SimReport};

use crate::params::{parse_f64, parse_matrix};
use crate::record::to_json;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Process {
    Brownian,
    Poisson,
    Gamma,
    Pascal,
    CompoundPoisson,
    MultivariateBrownian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum JumpLaw {
    Uniform,
    Normal,
    Exponential,
    PointMass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SimFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, clap::Args)]
pub struct SimArgs {
    #[arg(long, value_enum)]
    pub process: Process,
    /// Brownian scale: `Var X_t = s² t`.
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Poisson / compound Poisson rate, Gamma rate of time.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Pascal parameter in (0,1).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, value_enum, default_value = "normal")]
    pub jump: JumpLaw,
    /// Jump law parameters: uniform on [a, b], normal(mean, sd),
    /// exponential(mean), point mass at c.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub jump_a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub jump_b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub jump_mean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub jump_sd: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub jump_c: f64,
    /// Covariance of a multivariate Brownian motion, e.g. "1,0.5;0.5,1".
    #[arg(long)]
    pub sigma: Option<String>,
    /// Time of the moment check and end of the martingale interval.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Start of the martingale interval (default t/2).
    #[arg(long)]
    pub s_time: Option<f64>,
    /// Largest degree (or multi-index order).
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Number of sampled paths.
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    /// Continuations of each path from s to t in the martingale check.
    #[arg(long, default_value_t = 10)]
    pub n_inner: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest acceptable |z|.
    #[arg(long, default_value_t = 5.0)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: SimFormat,
}

impl SimArgs {
    pub fn spec(&self) -> Result<ProcessSpec, CliError> {
        let spec = match self.process {
            Process::Brownian => ProcessSpec::Brownian { s: self.s },
            Process::Poisson => ProcessSpec::Poisson { lambda: self.lambda },
            Process::Gamma => ProcessSpec::Gamma { lambda: self.lambda },
            Process::Pascal => ProcessSpec::Pascal { p: self.p },
            Process::CompoundPoisson => {
                let jump = match self.jump {
                    JumpLaw::Uniform => Jump::Uniform { a: self.jump_a, b: self.jump_b },
                    JumpLaw::Normal => Jump::Normal { mean: self.jump_mean, sd: self.jump_sd },
                    JumpLaw::Exponential => Jump::Exponential { mean: self.jump_mean },
                    JumpLaw::PointMass => Jump::PointMass { c: self.jump_c },
                };
                ProcessSpec::CompoundPoisson { lambda: self.lambda, jump }
            }
            Process::MultivariateBrownian => {
                let sigma = self
                    .sigma
                    .as_deref()
                    .ok_or_else(|| CliError::usage("--sigma is required for multivariate-brownian".into()))?;
                ProcessSpec::MultivariateBrownian { sigma: parse_matrix(sigma, |e| parse_f64("sigma", e))? }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// The report and whether every `|z|` is within the threshold.
pub fn cmd_sim(args: &SimArgs) -> Result<(String, bool), CliError> {
    let spec = args.spec()?;
    if !(args.threshold.is_finite() && args.threshold > 0.0) {
        return Err(CliError::usage("--threshold must be positive".into()));
    }
    let s = args.s_time.unwrap_or(args.t / 2.0);
    let report = simulate(&spec, args.k, s, args.t, args.n, args.n_inner, args.seed)?;
    let ok = report.passes(args.threshold);
    let out = match args.format {
        SimFormat::Json => to_json(&report)?,
        SimFormat::Csv => report_csv(&report),
    };
    Ok((out, ok))
}

fn join(index: &[u32]) -> String {
    index.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
}

/// One row per moment and per martingale residual. For residuals the
/// expected value is 0.
pub fn report_csv(r: &SimReport) -> String {
    let mut out = String::from("check,index,s,t,expected,estimate,std_error,z\n");
    for m in &r.moments {
        let _ = writeln!(out, "moment,{},,,{},{},{},{}", join(&m.index), m.symbolic, m.empirical, m.std_error, m.z);
    }
    for m in &r.martingale {
        let _ = writeln!(
            out,
            "martingale,{},{},{},0,{},{},{}",
            join(&m.index),
            m.s,
            m.t,
            m.mean_residual,
            m.std_error,
            m.z
        );
    }
    out
}
