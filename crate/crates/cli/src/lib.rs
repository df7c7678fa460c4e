//! Command-line front end: figure reproduction, catalog verification,
//! residual reports for surface files, flow checks and the self-test suite.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod selftest;

#[derive(Debug, Parser)]
#[command(name = "mcfsol", version, about = "Self-similar mean curvature flow solitons: checks and figures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Comma-separated output formats
    #[arg(long, global = true, value_delimiter = ',', default_value = "csv,svg,json")]
    pub format: Vec<Format>,
    /// Relative tolerance of the adaptive integrator
    #[arg(long, global = true)]
    pub rtol: Option<f64>,
    /// Absolute tolerance of the adaptive integrator; also the pass
    /// threshold of `residual`
    #[arg(long, global = true)]
    pub atol: Option<f64>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a figure preset (1..=10) and plot the profile
    Figure {
        n: u32,
        /// Use the preset tangent as given instead of normalizing it
        #[arg(long)]
        literal: bool,
        /// End of the integration interval
        #[arg(long, default_value_t = 10.0)]
        s_max: f64,
    },
    /// Verify one catalog entry or `all`
    Verify { target: String },
    /// Residual of a surface description on its grid
    Residual {
        file: PathBuf,
        /// Also check the quartic coefficients against the pointwise residual
        #[arg(long)]
        quartic: bool,
    },
    /// Evolve a named profile and fit self-similar motions
    Flow {
        entry: String,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Final time
        #[arg(long = "t", default_value_t = 0.1)]
        t_end: f64,
        /// Number of curve samples (derived from dt when omitted)
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compare both printed forms of the arctangent solution
    #[command(name = "adjudicate-sol1")]
    AdjudicateSol1,
    /// Run the acceptance suite
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

/// Bad flags or names; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Validated settings shared by all commands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub seed: u64,
}

impl CliConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, UsageError> {
        for (name, v) in [("--rtol", cli.rtol), ("--atol", cli.atol)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(UsageError(format!("{name} must be positive, got {v}")));
                }
            }
        }
        fs::create_dir_all(&cli.out)
            .map_err(|e| UsageError(format!("cannot create {}: {e}", cli.out.display())))?;
        let mut formats = cli.format.clone();
        formats.dedup();
        Ok(Self {
            out: cli.out.clone(),
            formats,
            rtol: cli.rtol,
            atol: cli.atol,
            seed: cli.seed,
        })
    }

    pub fn integration(&self) -> mcfsol::profile::IntegrationConfig {
        let mut cfg = mcfsol::profile::IntegrationConfig::default();
        if let mcfsol::ode::Method::Rk45 { rtol, atol } = &mut cfg.method {
            *rtol = self.rtol.unwrap_or(*rtol);
            *atol = self.atol.unwrap_or(*atol);
        }
        cfg
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Writes `name` when its format is enabled and returns the path.
    pub fn emit(&self, format: Format, name: &str, contents: &str) -> anyhow::Result<Option<PathBuf>> {
        if !self.wants(format) {
            return Ok(None);
        }
        let path = self.out.join(name);
        write_file(&path, contents)?;
        Ok(Some(path))
    }
}

/// A named output file, written only when its format is enabled.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub format: Format,
    pub contents: String,
}

impl Artifact {
    pub fn csv(name: impl Into<String>, contents: String) -> Self {
        Self { name: name.into(), format: Format::Csv, contents }
    }

    pub fn svg(name: impl Into<String>, contents: String) -> Self {
        Self { name: name.into(), format: Format::Svg, contents }
    }

    pub fn json<T: serde::Serialize>(name: impl Into<String>, value: &T) -> Self {
        Self { name: name.into(), format: Format::Json, contents: mcfsol::io::to_json(value) }
    }
}

impl CliConfig {
    pub fn emit_all(&self, artifacts: &[Artifact]) -> anyhow::Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for a in artifacts {
            written.extend(self.emit(a.format, &a.name, &a.contents)?);
        }
        Ok(written)
    }
}

pub fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let cfg = CliConfig::from_cli(cli)?;
    match &cli.command {
        Command::Figure { n, literal, s_max } => commands::figure(&cfg, *n, *literal, *s_max, out),
        Command::Verify { target } => commands::verify(&cfg, target, out),
        Command::Residual { file, quartic } => commands::residual(&cfg, file, *quartic, out),
        Command::Flow { entry, dt, t_end, samples } => commands::flow(&cfg, entry, *dt, *t_end, *samples, out),
        Command::AdjudicateSol1 => commands::adjudicate_sol1(&cfg, out),
        Command::Selftest => commands::selftest(&cfg, out),
    }
}

/// 0 on success, 1 on a failed verification or runtime error, 2 on usage
/// errors (unknown names, bad flags, unreadable input).
pub fn exit_code(result: &anyhow::Result<Outcome>) -> u8 {
    match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) if is_usage(e) => 2,
        Err(_) => 1,
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    use mcfsol::Error as E;
    e.chain().any(|c| {
        c.is::<UsageError>()
            || matches!(
                c.downcast_ref::<E>(),
                Some(E::UnknownFigure(_) | E::UnknownEntry(_) | E::Parse(_) | E::Config(_) | E::CflViolation { .. })
            )
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    let mut stdout = std::io::stdout().lock();
    let result = run(&cli, &mut stdout);
    if let Err(e) = &result {
        let _ = writeln!(std::io::stderr(), "error: {e:#}");
    }
    exit_code(&result)
}
