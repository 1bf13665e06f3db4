//! Command-line front end: classify, enumerate, verify, density.

pub mod cover;
pub mod golden;
pub mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cover::CoverArgs;
use golden::{golden_diff, ClassRecord, Scope};
use log::{info, warn};
use qarith::Q;
use qforbidden::catalog::table_row;
use qforbidden::{census_for, density_upper_bound, table_forbidden_ball, verify_forbidden, ForbiddenError};
use qorders::catalog::{covering_norm_set, dim5_candidates, enumerate_covering_orders, CatalogRecord, DIM5_DISC_BOUND};
use qpacking::export::census_jsonl;
use qpacking::{enumerate_superpacking, saturation_report, CensusKind, CensusOptions};
use std::ffi::OsString;
use std::path::PathBuf;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GOLDEN: i32 = 2;
pub const EXIT_UNSATURATED: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("golden mismatch: {0}")]
    Golden(String),
    #[error("census not saturated: {0}")]
    Unsaturated(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Golden(_) => EXIT_GOLDEN,
            CliError::Unsaturated(_) => EXIT_UNSATURATED,
            CliError::Certificate(_) => EXIT_CERTIFICATE,
        }
    }
}

/// Run configuration: a command plus global options.
#[derive(Parser, Debug)]
#[command(name = "qpack", version, about = "Apollonian-type packings from arithmetic orders")]
pub struct RunConfig {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "QPACK_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orders with covering vectors, compared with the committed tables.
    Classify(ClassifyArgs),
    /// Census of a packing, as JSON lines, optionally with an SVG picture.
    Enumerate(EnumerateArgs),
    /// Forbidden-ball certificate for a cover.
    Verify(VerifyArgs),
    /// Density report for a cover.
    Density(DensityArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub dim: u8,
    /// dim 3: n; dim 4: |n|; dim 5: disc of the algebra.
    #[arg(long)]
    pub disc_bound: Option<i64>,
    /// dim 4 family such as "(-1,n)".
    #[arg(long, allow_hyphen_values = true)]
    pub family: Option<String>,
    /// dim 4: restrict to this n.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip the golden comparison.
    #[arg(long)]
    pub no_golden: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Apollonian,
    Super,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// SVG output (dims 4, 5: a plane section).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub cells: usize,
    #[arg(long, default_value_t = 0.004)]
    pub stroke: f64,
    /// Black strokes instead of colouring by bend.
    #[arg(long)]
    pub mono: bool,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Bound on the normalized bend kappa.
    #[arg(long)]
    pub bend: i64,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Bound on nrm of the translation before each Cohn letter (super only).
    #[arg(long)]
    pub gen_norm: Option<i64>,
    #[arg(long, value_enum, default_value_t = Kind::Apollonian)]
    pub kind: Kind,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Super-packing census bend bound (default: grow until --min-spheres).
    #[arg(long)]
    pub bend: Option<i64>,
    #[arg(long, default_value_t = 500)]
    pub min_spheres: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    #[arg(long)]
    pub bend: i64,
    /// Also sum a super-packing census to this bound.
    #[arg(long)]
    pub super_bend: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub lambda: u32,
    /// Skip the forbidden-ball upper bound.
    #[arg(long)]
    pub no_upper_bound: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, s: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, s).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{s}");
            Ok(())
        }
    }
}

fn parse_family(s: &str) -> Result<i64, CliError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',').next().and_then(|a| a.trim().parse().ok()).ok_or_else(|| CliError::Usage(format!("family {s}")))
}

fn classify(a: &ClassifyArgs) -> Result<(), CliError> {
    let bound = a.disc_bound.unwrap_or(match a.dim {
        3 => 50,
        4 => 30,
        _ => DIM5_DISC_BOUND,
    });
    if bound <= 0 {
        return Err(CliError::Usage("bound must be positive".into()));
    }
    if a.dim == 5 {
        let (kept, pruned) = dim5_candidates();
        eprintln!(
            "dim 5 gate: |disc(H)| < {DIM5_DISC_BOUND} (12 pi^2 = {:.2}); {} candidate algebras, {} pruned below {}",
            12.0 * std::f64::consts::PI.powi(2),
            kept.len(),
            pruned,
            2 * DIM5_DISC_BOUND
        );
    }
    let family_a = a.family.as_deref().map(parse_family).transpose()?;
    let entries = enumerate_covering_orders(a.dim, bound).map_err(|e| CliError::Usage(e.to_string()))?;
    let rows: Vec<ClassRecord> = entries
        .iter()
        .filter(|e| {
            let ai: i64 = e.cover.sig().a.to_integer().try_into().unwrap_or(0);
            let ni: i64 = e.cover.sig().bq().to_integer().try_into().unwrap_or(0);
            a.dim != 4 || (family_a.map_or(true, |f| f == ai) && a.n.map_or(true, |n| n == ni))
        })
        .map(|e| ClassRecord {
            record: CatalogRecord::from_entry(e),
            nrm_u_set: (a.dim == 5).then(|| covering_norm_set(e.order()).iter().map(|x| x.to_string()).collect()),
        })
        .collect();
    info!("classify dim {}: {} orders", a.dim, rows.len());
    emit(&a.out, &serde_json::to_string_pretty(&rows).expect("serializable"))?;
    if a.no_golden {
        return Ok(());
    }
    let diff = golden_diff(&Scope { dim: a.dim, bound, family_a, family_n: a.n }, &rows);
    if diff.uncompared > 0 {
        warn!("{} rows lie outside the golden tables", diff.uncompared);
    }
    if !diff.is_empty() {
        let s = serde_json::to_string_pretty(&diff).expect("serializable");
        eprintln!("{s}");
        return Err(CliError::Golden(format!("{} missing, {} unexpected", diff.missing.len(), diff.unexpected.len())));
    }
    Ok(())
}

fn census_opts(bend: i64, depth: Option<usize>, gen_norm: Option<i64>) -> Result<CensusOptions, CliError> {
    if bend < 0 {
        return Err(CliError::Usage("bend bound must be nonnegative".into()));
    }
    let mut o = CensusOptions::new(bend);
    if let Some(d) = depth {
        o = o.depth(d);
    }
    if let Some(g) = gen_norm {
        o = o.generator_norm(Q::from_integer(g.into()));
    }
    Ok(o)
}

fn enumerate(a: &EnumerateArgs) -> Result<(), CliError> {
    let entry = a.cover.resolve()?;
    let kind = match a.kind {
        Kind::Apollonian => CensusKind::Apollonian,
        Kind::Super => CensusKind::Super,
    };
    let opts = census_opts(a.bend, a.depth, a.gen_norm)?;
    let (c, sat) = saturation_report(&entry.cover, kind, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = census_jsonl(&c, &entry.table_ref).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(&a.out, text.trim_end())?;
    if let Some(p) = &a.render.svg {
        let so = render::SvgOptions { cells: a.render.cells, stroke: a.render.stroke, color_by_bend: !a.render.mono };
        let svg = match kind {
            CensusKind::Apollonian => render::svg(&c, &so).map_err(|e| CliError::Usage(e.to_string()))?,
            CensusKind::Super => return Err(CliError::Usage("svg needs an Apollonian census".into())),
        };
        emit(&Some(p.clone()), &svg)?;
    }
    if !sat.saturated() {
        eprintln!("warning: census not saturated (fixpoint {}, stable under doubling {})", sat.fixpoint, sat.stable);
        return Err(CliError::Unsaturated(format!("bend bound {}", a.bend)));
    }
    Ok(())
}

fn ball_for(args: &CoverArgs) -> Result<Result<qforbidden::ForbiddenBall, String>, CliError> {
    let r = match (&args.row, args.n) {
        (Some(id), Some(n)) => {
            let row = table_row(id).ok_or_else(|| CliError::Usage(format!("unknown table row {id}")))?;
            qforbidden::ball::row_ball(&row, n)
        }
        _ => table_forbidden_ball(&args.resolve()?.cover),
    };
    match r {
        Ok(b) => Ok(Ok(b)),
        Err(ForbiddenError::NotCovered(m)) => Ok(Err(m)),
        Err(e @ ForbiddenError::Certificate(_)) => Err(CliError::Certificate(e.to_string())),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let ball = match ball_for(&a.cover)? {
        Ok(b) => b,
        Err(m) => {
            eprintln!("not covered: {m}");
            return emit(&a.out, &serde_json::json!({ "not_covered": m }).to_string());
        }
    };
    let census = match a.bend {
        Some(b) => enumerate_superpacking(&ball.cover, &census_opts(b, None, None)?),
        None => census_for(&ball, a.min_spheres).map_err(|e| qpacking::PackError::Domain(e.to_string())),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let rep = verify_forbidden(&ball, &census).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(&a.out, &serde_json::to_string_pretty(&rep).expect("serializable"))?;
    if !rep.pass() {
        return Err(CliError::Certificate(format!(
            "{}: symbolic {}, {} empirical failures, {} class disagreements",
            rep.table_ref, rep.symbolic_pass, rep.empirical_failures, rep.class_disagreements
        )));
    }
    Ok(())
}

fn density(a: &DensityArgs) -> Result<(), CliError> {
    let entry = a.cover.resolve()?;
    let opts = census_opts(a.bend, None, None)?;
    let (apol, sat) = saturation_report(&entry.cover, CensusKind::Apollonian, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let sup = match a.super_bend {
        Some(b) => Some(enumerate_superpacking(&entry.cover, &census_opts(b, None, None)?).map_err(|e| CliError::Usage(e.to_string()))?),
        None => None,
    };
    let upper = if a.no_upper_bound {
        None
    } else {
        match table_forbidden_ball(&entry.cover) {
            Ok(b) => density_upper_bound(&b).ok().map(|d| d.value),
            Err(_) => None,
        }
    };
    let ro = qdensity::ReportOptions { table_ref: entry.table_ref.clone(), upper_bound: upper, lambda: a.lambda };
    let rep = qdensity::density_report(&apol, sup.as_ref(), &ro).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(&a.out, &serde_json::to_string_pretty(&rep).expect("serializable"))?;
    if !rep.consistent() {
        return Err(CliError::Certificate("partial density exceeds its upper bound".into()));
    }
    if !sat.saturated() {
        eprintln!("warning: census not saturated (fixpoint {}, stable under doubling {})", sat.fixpoint, sat.stable);
        return Err(CliError::Unsaturated(format!("bend bound {}", a.bend)));
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err(CliError::Usage("threads must be positive".into()));
        }
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match &cfg.command {
        Command::Classify(a) => classify(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Density(a) => density(a),
    }
}

/// Parse arguments, run, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cfg) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}
