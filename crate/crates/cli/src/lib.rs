//! Batch front end for the certificate engine: instance generation,
//! dichotomy runs, certificate verification, constant schedules and DOT
//! export.
//!
//! [`run`] parses arguments and executes one subcommand in process, returning
//! the exit code and both output streams, so the binary and the test suites
//! share one code path.

pub mod dot;
pub mod generators;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use eh_certify::graph::{io, make_caterpillar};
use eh_certify::oracle::{verify_certificate, Verdict};
use eh_certify::pipeline::{dichotomy_observed, schedule_with, ConstantSchedule, DichotomyOptions, PipelineError};
use eh_certify::rational::{self, Rational};
use eh_certify::{CaterpillarShape, Certificate, Graph};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "EH_CERTIFY_THREADS";

#[derive(Parser, Debug, Clone)]
#[command(name = "eh-certify", version, about = "Certify induced caterpillars or linear homogeneous pairs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Graph file (edge list or graph6).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Pattern graph file; must be a caterpillar.
    #[arg(long, global = true, conflicts_with = "shape")]
    pub pattern: Option<PathBuf>,
    /// Template shape `h,d,t`.
    #[arg(long, global = true, value_parser = parse_shape)]
    pub shape: Option<CaterpillarShape>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Top-level colour count override.
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    /// ε override, as `p/q`.
    #[arg(long, global = true, value_parser = parse_rational)]
    pub eps: Option<Rational>,
    /// Node budget for each direct pattern search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run the pipeline and print a verified certificate.
    Dichotomy {
        /// Refuse schedules that violate the ε condition.
        #[arg(long)]
        guarantee: bool,
        /// Search both polarities concurrently (capped by EH_CERTIFY_THREADS).
        #[arg(long)]
        parallel: bool,
        /// Write every junior-search state as a JSON line.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the run report JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a seeded instance.
    Gen {
        generator: GeneratorKind,
        #[arg(long)]
        n: usize,
        /// Edge probability `p/q`.
        #[arg(long, value_parser = parse_rational, default_value = "1/2")]
        p: Rational,
        #[arg(long)]
        degree: Option<usize>,
        /// Side size of the planted hole.
        #[arg(long)]
        size: Option<usize>,
        /// Planted-certificate file; defaults to `<out>.cert.json`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
    /// Check a certificate against a graph.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print the exact constant schedule for a shape.
    Constants {
        #[arg(long)]
        table: bool,
    },
    /// Render a graph and/or a structure JSON as DOT.
    ExportDot {
        /// Fern, junior caterpillar, search state, certificate or trace.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
pub enum GeneratorKind {
    Gnp,
    BoundedDegree,
    PlantedCaterpillar,
    PlantedBipartiteHole,
    TwoCliques,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Edges,
    Graph6,
}

fn parse_shape(s: &str) -> Result<CaterpillarShape, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("invalid shape {s:?}, expected h,d,t")))
        .collect::<Result<_, _>>()?;
    let [h, d, t] = parts[..] else { return Err(format!("invalid shape {s:?}, expected h,d,t")) };
    CaterpillarShape::new(h, d, t).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s)
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(message: impl Into<String>) -> Self {
        Output { code: EXIT_USAGE, stderr: line(message.into()), ..Output::default() }
    }

    fn failure(message: impl Into<String>) -> Self {
        Output { code: EXIT_FAILURE, stderr: line(message.into()), ..Output::default() }
    }
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => execute(&cfg),
        Err(e) if e.use_stderr() => Output::usage(e.render().to_string()),
        Err(e) => Output { code: EXIT_OK, stdout: e.render().to_string(), ..Output::default() },
    }
}

pub fn execute(cfg: &RunConfig) -> Output {
    let result = match &cfg.command {
        Command::Dichotomy { guarantee, parallel, trace, report } => {
            cmd_dichotomy(cfg, *guarantee, *parallel, trace.as_deref(), report.as_deref())
        }
        Command::Gen { generator, n, p, degree, size, sidecar, format } => {
            cmd_gen(cfg, *generator, *n, p, *degree, *size, sidecar.as_deref(), *format)
        }
        Command::Verify { cert } => cmd_verify(cfg, cert),
        Command::Constants { table } => cmd_constants(cfg, *table),
        Command::ExportDot { structure } => cmd_export_dot(cfg, structure.as_deref()),
    };
    result.unwrap_or_else(|o| o)
}

type CmdResult = Result<Output, Output>;

fn read(path: &Path) -> Result<String, Output> {
    fs::read_to_string(path).map_err(|e| Output::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Output> {
    fs::write(path, contents).map_err(|e| Output::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Output> {
    io::parse_graph_auto(&read(path)?).map_err(|e| Output::usage(format!("{}: {e}", path.display())))
}

fn require_input(cfg: &RunConfig) -> Result<Graph, Output> {
    load_graph(cfg.input.as_deref().ok_or_else(|| Output::usage("--input is required"))?)
}

fn require_shape(cfg: &RunConfig) -> Result<CaterpillarShape, Output> {
    cfg.shape.ok_or_else(|| Output::usage("--shape h,d,t is required"))
}

/// Sends `text` to `--out` when given, otherwise to stdout.
fn emit(cfg: &RunConfig, out: &mut Output, text: &str) -> Result<(), Output> {
    match &cfg.out {
        Some(path) => write(path, text),
        None => {
            out.stdout.push_str(text);
            Ok(())
        }
    }
}

/// Worker threads allowed by the environment (at least one).
pub fn thread_cap() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(2).max(1)
}

pub fn cmd_dichotomy(
    cfg: &RunConfig,
    guarantee: bool,
    parallel: bool,
    trace: Option<&Path>,
    report_path: Option<&Path>,
) -> CmdResult {
    let g = require_input(cfg)?;
    let pattern = match (&cfg.pattern, cfg.shape) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(shape)) => make_caterpillar(shape).map_err(|e| Output::usage(e.to_string()))?.graph,
        (None, None) => return Err(Output::usage("one of --pattern or --shape is required")),
    };
    let mut options = DichotomyOptions {
        ell: cfg.ell,
        eps: cfg.eps.clone(),
        seed: cfg.seed,
        threads: if parallel { thread_cap().min(2) } else { 1 },
        ..DichotomyOptions::default()
    };
    if let Some(b) = cfg.budget {
        options.budget = b;
    }
    if guarantee {
        if let Some((shape, _)) = eh_certify::graph::is_caterpillar(&pattern) {
            let schedule = schedule_with(shape, options.ell, options.eps.clone()).map_err(|e| Output::usage(e.to_string()))?;
            if !schedule.eps_condition_holds {
                return Err(Output::usage("overrides violate the ε condition required in guarantee mode"));
            }
        }
    }

    let mut out = Output::default();
    let mut trace_lines = String::new();
    let verbose = cfg.verbose;
    let mut observer = |_: &eh_certify::ColouredGraph, s: &eh_certify::algorithms::SearchState| {
        if trace.is_some() {
            trace_lines.push_str(&s.to_json());
            trace_lines.push('\n');
        }
        if verbose > 0 {
            let _ = writeln!(out.stderr, "level {} step {}: {} active classes, {} buds", s.level, s.k, s.active.len(), s.bud_count());
        }
    };
    let result = dichotomy_observed(&g, &pattern, &options, &mut observer);
    if let Some(path) = trace {
        write(path, &trace_lines)?;
    }
    match result {
        Ok(run) => {
            let report = run.report.to_json();
            if let Some(path) = report_path {
                write(path, &line(report.clone()))?;
            }
            if verbose > 0 {
                out.stderr.push_str(&line(report));
            }
            emit(cfg, &mut out, &line(run.certificate.to_json()))?;
            Ok(out)
        }
        Err(PipelineError::Input(m)) => Err(Output::usage(m)),
        Err(e) => {
            let mut fail = Output::failure(e.to_string());
            fail.stderr.insert_str(0, &out.stderr);
            if let Some(report) = e.report() {
                if let Some(path) = report_path {
                    write(path, &line(report.to_json()))?;
                }
                fail.stderr.push_str(&line(report.to_json()));
            }
            Err(fail)
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_gen(
    cfg: &RunConfig,
    kind: GeneratorKind,
    n: usize,
    p: &Rational,
    degree: Option<usize>,
    size: Option<usize>,
    sidecar: Option<&Path>,
    format: Format,
) -> CmdResult {
    use generators::*;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Output::usage(format!("{flag} is required for this generator")));
    let instance = match kind {
        GeneratorKind::Gnp => gnp(n, p, cfg.seed),
        GeneratorKind::BoundedDegree => bounded_degree(n, need(degree, "--degree")?, cfg.seed),
        GeneratorKind::PlantedCaterpillar => planted_caterpillar(n, p, require_shape(cfg)?, cfg.seed),
        GeneratorKind::PlantedBipartiteHole => planted_bipartite_hole(n, p, need(size, "--size")?, cfg.seed),
        GeneratorKind::TwoCliques => two_cliques(n),
    }
    .map_err(Output::usage)?;
    let text = match format {
        Format::Edges => io::write_edge_list(&instance.graph),
        Format::Graph6 => line(io::write_graph6(&instance.graph)),
    };
    let mut out = Output::default();
    emit(cfg, &mut out, &text)?;
    if let Some(cert) = &instance.certificate {
        let json = line(cert.to_json());
        let default = cfg.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".cert.json");
            PathBuf::from(s)
        });
        match sidecar.map(Path::to_path_buf).or(default) {
            Some(path) => write(&path, &json)?,
            None => out.stderr.push_str(&json),
        }
    }
    Ok(out)
}

pub fn cmd_verify(cfg: &RunConfig, cert_path: &Path) -> CmdResult {
    let g = require_input(cfg)?;
    let cert: Certificate = serde_json::from_str(&read(cert_path)?)
        .map_err(|e| Output::usage(format!("{}: certificate schema: {e}", cert_path.display())))?;
    match verify_certificate(&g, &cert) {
        Ok(Verdict::Valid) => Ok(Output { stdout: "valid\n".into(), ..Output::default() }),
        Ok(Verdict::Invalid(reason)) => {
            Err(Output { code: EXIT_FAILURE, stdout: line(format!("invalid: {reason}")), ..Output::default() })
        }
        Err(e) => Err(Output::usage(format!("{}: {e}", cert_path.display()))),
    }
}

pub fn cmd_constants(cfg: &RunConfig, table: bool) -> CmdResult {
    let schedule = schedule_with(require_shape(cfg)?, cfg.ell, cfg.eps.clone()).map_err(|e| match e {
        PipelineError::Input(m) => Output::usage(m),
        other => Output::failure(other.to_string()),
    })?;
    let text = if table { constants_table(&schedule) } else { line(schedule.to_json()) };
    let mut out = Output::default();
    emit(cfg, &mut out, &text)?;
    Ok(out)
}

fn constants_table(s: &ConstantSchedule) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "shape {}{}", s.shape, if s.experimental { " (experimental)" } else { "" });
    let _ = writeln!(t, "level\tl0\talpha");
    for l in &s.levels {
        let _ = writeln!(t, "{}\t{}\t{}", l.d, l.ell0, rational::format(&l.alpha));
    }
    let _ = writeln!(t, "ell\t{}", s.ell);
    let _ = writeln!(t, "eps\t{}", rational::format(&s.eps));
    let _ = writeln!(t, "eps/ell\t{}", rational::format(&s.eps_degree));
    let _ = writeln!(t, "eps condition\t{}", if s.eps_condition_holds { "holds" } else { "fails" });
    let _ = writeln!(t, "min n for buds\t{}", s.min_n_bud);
    let _ = writeln!(t, "min n for degree bound\t{}", s.min_n_degree);
    t
}

pub fn cmd_export_dot(cfg: &RunConfig, structure: Option<&Path>) -> CmdResult {
    if cfg.input.is_none() && structure.is_none() {
        return Err(Output::usage("export-dot needs --input and/or --structure"));
    }
    let graph = cfg.input.as_deref().map(load_graph).transpose()?;
    let overlay = match structure {
        Some(path) => Some(dot::Overlay::parse(&read(path)?).map_err(|e| Output::usage(format!("{}: {e}", path.display())))?),
        None => None,
    };
    let mut out = Output::default();
    emit(cfg, &mut out, &dot::to_dot(graph.as_ref(), overlay.as_ref()))?;
    Ok(out)
}
