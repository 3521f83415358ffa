//! Command-line front end.
//!
//! Exit codes: 0 when every executed check passed, 1 when a check found a
//! violation or mismatch, 2 on usage or configuration errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cert::{
    centralizer_sweep, dim_match, dual_lattice_sweep, identity_sweep, jet_dependence_check, jet_sweep,
    jordan_roundtrip_sweep, lemma4_certify, lemma4_sweep, prop2_certify, prop2_sweep, richardson_gl_sweep,
    sl_dim_sweep, so5_remark_check, so5_remark_report, sp_dim_sweep, DimMatchOptions, Sampling,
};
use crate::error::Error;
use crate::liealg::{check_dual_lattice, richardson_class, AlgebraKind, Family, FlagSpec};
use crate::partition::Partition;
use crate::report::{CertReport, DimensionBreakdown};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "nilcone", version, about = "Exact certification of nilpotent-cone valuation bounds and dimension counts")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to rayon's choice, which honours RAYON_NUM_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 12)]
    pub precision: i64,
    /// Bound on sampled integer coefficients.
    #[arg(long, default_value_t = 9)]
    pub bound: i64,
}

impl SamplingArgs {
    fn sampling(&self) -> Sampling {
        Sampling {
            trials: self.trials,
            bound: self.bound,
            precision: self.precision,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Gl,
    Sl,
    Sp,
    So,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Row/column and symplectic partition identities, exhaustively.
    IdentitySweep {
        #[arg(long, default_value_t = 40)]
        max_size: usize,
    },
    /// The (2,2,1) comparison in so(5); passes when the two sides differ.
    So5Remark,
    /// Valuation lower bounds on the coset of a Jordan nilpotent.
    CertifyProp2 {
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Pole bounds on the dual lattice of a symplectic parahoric.
    CertifyLemma4 {
        #[arg(long)]
        flag: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Inclusion and maximality of the dual lattice of a parahoric.
    DualLattice {
        #[arg(long)]
        flag: String,
        #[arg(long, default_value_t = 12)]
        precision: i64,
    },
    /// Finite-jet dependence of invariant coefficients.
    JetCheck {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        j: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generic Jordan type on the nilradical of a parabolic.
    Richardson {
        #[arg(long)]
        flag: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hitchin base dimension against the moduli dimension.
    DimMatch {
        /// Algebra family; with --n this selects the Borel (full flag).
        #[arg(long, value_enum, required_unless_present = "flag")]
        kind: Option<KindArg>,
        /// Rank parameter: the matrix size for gl/sl/so, half of it for sp.
        #[arg(long, requires = "kind")]
        n: Option<usize>,
        /// Explicit flag, e.g. sp6:1,3.
        #[arg(long, conflicts_with_all = ["kind", "n"])]
        flag: Option<String>,
        #[arg(long, default_value_t = 2)]
        genus: i64,
        /// Uniform pole order replacing the sharp per-summand values.
        #[arg(long, allow_hyphen_values = true)]
        pole: Option<i64>,
        /// Richardson sampling trials (sp only).
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The full acceptance battery, cheap exhaustive checks first.
    Suite {
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Largest partition size for the identity sweep.
        #[arg(long, default_value_t = 40)]
        max_size: usize,
    },
}

/// Everything that can be emitted as a report.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Output {
    Cert(CertReport),
    Dimensions(DimensionBreakdown),
    Remark(crate::cert::So5Remark),
    Richardson(RichardsonOutput),
    Suite(SuiteReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct RichardsonOutput {
    pub flag: String,
    pub partition: String,
    pub observed: Vec<String>,
    pub trials: usize,
    pub bound: i64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CertReport>,
    pub pass: bool,
}

impl Output {
    fn passed(&self) -> bool {
        match self {
            Output::Cert(r) => r.pass,
            Output::Dimensions(d) => d.matches != Some(false),
            Output::Remark(r) => !r.equal,
            Output::Richardson(_) => true,
            Output::Suite(s) => s.pass,
        }
    }

    fn text(&self) -> String {
        match self {
            Output::Cert(r) => cert_text(r),
            Output::Dimensions(d) => dims_text(d),
            Output::Remark(r) => format!("so5 remark: lhs {} rhs {} equal {}\n", r.lhs, r.rhs, r.equal),
            Output::Richardson(r) => format!(
                "richardson {}: ({}) from {} trials; observed {}\n",
                r.flag,
                r.partition,
                r.trials,
                r.observed.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" ")
            ),
            Output::Suite(s) => {
                let mut out = String::new();
                for c in &s.checks {
                    out.push_str(&cert_text(c));
                }
                out.push_str(&format!("suite: {}\n", verdict(s.pass)));
                out
            }
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cert_text(r: &CertReport) -> String {
    let p = &r.params;
    let mut label = r.check.clone();
    for item in [&p.partition, &p.flag].into_iter().flatten() {
        label.push(' ');
        label.push_str(item);
    }
    let mut out = format!(
        "{label}: {} ({} cases, {} violations)\n",
        verdict(r.pass),
        r.trials.len(),
        r.violations.len()
    );
    for o in &r.observed_min {
        let min = o.min.map_or("none".to_string(), |m| m.to_string());
        out.push_str(&format!(
            "  F_{}: bound {}, observed min {min}, attained {}/{}\n",
            o.j, o.bound, o.attained, o.samples
        ));
    }
    for v in &r.violations {
        out.push_str(&format!("  violation: {v}\n"));
    }
    out
}

fn dims_text(d: &DimensionBreakdown) -> String {
    let mut out = format!(
        "dim-match {} g={}:",
        d.flag.as_deref().unwrap_or("(summands)"),
        d.genus
    );
    if let Some(l) = &d.richardson {
        out.push_str(&format!(" Richardson ({l})"));
    }
    out.push('\n');
    for s in &d.summands {
        out.push_str(&format!(
            "  d={} c={} deg={} h0={}\n",
            s.degree, s.pole_order, s.line_degree, s.h0
        ));
    }
    out.push_str(&format!("  total {}", d.total));
    if let Some(b) = d.bun_dim {
        out.push_str(&format!(", bun {b}"));
    }
    if let Some(m) = d.matches {
        out.push_str(&format!(", match {m}"));
    }
    out.push('\n');
    out
}

/// Errors that reflect bad input rather than a failed check.
fn is_usage_error(e: &Error) -> bool {
    !matches!(e, Error::Incomparable(_) | Error::NotNilpotent { .. })
}

fn parse_flag(s: &str) -> Result<FlagSpec, Error> {
    s.parse()
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn kind_of(kind: KindArg, n: usize) -> Result<AlgebraKind, Error> {
    match kind {
        KindArg::Gl => AlgebraKind::new(Family::Gl, n),
        KindArg::Sl => AlgebraKind::new(Family::Sl, n),
        KindArg::Sp => AlgebraKind::new(Family::Sp, 2 * n),
        KindArg::So => AlgebraKind::new(Family::So, n),
    }
}

fn execute(command: &Command) -> Result<Output, Error> {
    Ok(match command {
        Command::IdentitySweep { max_size } => Output::Cert(identity_sweep(*max_size)),
        Command::So5Remark => Output::Remark(so5_remark_check()),
        Command::CertifyProp2 { partition, sampling } => {
            Output::Cert(prop2_certify(&parse_partition(partition)?, sampling.sampling())?)
        }
        Command::CertifyLemma4 { flag, sampling } => Output::Cert(lemma4_certify(&parse_flag(flag)?, sampling.sampling())?),
        Command::DualLattice { flag, precision } => Output::Cert(check_dual_lattice(&parse_flag(flag)?, *precision)?),
        Command::JetCheck { m, j, k, trials, seed } => Output::Cert(jet_dependence_check(*m, *j, *k, *trials, *seed)?),
        Command::Richardson {
            flag,
            trials,
            bound,
            seed,
        } => {
            let flag = parse_flag(flag)?;
            let class = richardson_class(&flag, *trials, *bound, *seed)?;
            Output::Richardson(RichardsonOutput {
                flag: flag.to_string(),
                partition: class.partition.to_string(),
                observed: class.observed.iter().map(|p| p.to_string()).collect(),
                trials: *trials,
                bound: *bound,
                seed: *seed,
            })
        }
        Command::DimMatch {
            kind,
            n,
            flag,
            genus,
            pole,
            trials,
            seed,
        } => {
            let flag = match (flag, kind) {
                (Some(f), _) => parse_flag(f)?,
                (None, Some(k)) => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("--kind needs --n".into()))?;
                    FlagSpec::full(kind_of(*k, n)?)
                }
                (None, None) => return Err(Error::InvalidParameter("give --flag or --kind with --n".into())),
            };
            let options = DimMatchOptions {
                richardson: Sampling {
                    trials: *trials,
                    seed: *seed,
                    ..Sampling::default()
                },
                pole_override: *pole,
            };
            Output::Dimensions(dim_match(*genus, &flag, options)?)
        }
        Command::Suite { sampling, max_size } => Output::Suite(run_suite(sampling.sampling(), *max_size)?),
    })
}

/// The acceptance battery in order: exhaustive identities, exact algebra,
/// dimension counts, then the sampled certifiers.
pub fn run_suite(sampling: Sampling, max_size: usize) -> Result<SuiteReport, Error> {
    let mut checks = vec![
        identity_sweep(max_size),
        so5_remark_report(),
        jordan_roundtrip_sweep(10)?,
        centralizer_sweep(8, 7)?,
    ];
    checks.extend(dual_lattice_sweep(4, &[2, 3], sampling.precision)?);
    checks.push(sl_dim_sweep(2..=5, &[2, 3, 4, 5])?);
    let richardson = Sampling {
        trials: sampling.trials.max(1),
        ..sampling
    };
    checks.push(sp_dim_sweep(3, &[2, 3], richardson)?);
    checks.push(richardson_gl_sweep(5, richardson)?);
    checks.extend(jet_sweep(3, 6, 50, sampling.seed)?);
    checks.extend(prop2_sweep(6, sampling)?);
    checks.extend(lemma4_sweep(3, sampling)?);
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: "acceptance".into(),
        seed: sampling.seed,
        checks,
        pass,
    })
}

fn render(output: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(output).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => output.text(),
    }
}

/// Runs one configured command, writing the report to `--out` or `stdout`
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(threads) = config.threads {
        if threads == 0 {
            let _ = writeln!(stderr, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        // A second build in the same process fails harmlessly; the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let output = match execute(&config.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if is_usage_error(&e) { EXIT_USAGE } else { EXIT_VIOLATION };
        }
    };
    let text = render(&output, config.format);
    let written = match &config.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if output.passed() {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

/// Parses `args` (including the program name) and runs; usage errors exit 2.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            code
        }
    }
}

/// Entry point used by the binary.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
