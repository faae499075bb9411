//! The `ihara` command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on input,
//! configuration or oracle-cap errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{check_vertex, make_family, FamilyKind, FamilySpec, Graph};
use crate::oracle::{count_closed_geodesics, geodesic_count_matrices, OracleLimits};
use crate::spectral::laplacian_decomposition;
use crate::verify::{run_suite, SuiteConfig};
use crate::zeta::{compare_methods, format_float, Method};

/// Environment variable that overrides the default oracle work cap.
pub const WORK_CAP_ENV: &str = "IHARA_ORACLE_WORK_CAP";

#[derive(Debug, Parser)]
#[command(name = "ihara", version, about = "Local Ihara zeta functions and closed-geodesic counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geodesic-loop and closed-geodesic counts by enumeration.
    Count(CountArgs),
    /// Zeta series by one or more methods, with cross-method comparison.
    Series(SeriesArgs),
    /// Laplacian eigenvalues and the local spectrum at a vertex.
    Spectrum(SpectrumArgs),
    /// Runs the identity suite and prints a pass/fail table; `--output`
    /// also writes the report in `--format`. Exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Writes a generated graph file.
    Family(FamilyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountWhat {
    Loops,
    ClosedGeodesics,
    All,
    /// Geodesic path count matrices `c_m(x, y)`.
    Matrix,
}

#[derive(Debug, Args)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Generate the graph instead of reading it.
    #[arg(long)]
    pub family: Option<FamilyKind>,
    /// Family parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Upper bound on estimated enumeration work.
    #[arg(long)]
    pub oracle_work_cap: Option<u128>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub vertex: usize,
    #[arg(long, default_value_t = 10)]
    pub max_length: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub what: CountWhat,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub vertex: usize,
    /// Second vertex `x` of `Z(u, x0, x)`; defaults to `--vertex`.
    #[arg(long)]
    pub target_vertex: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Method name, comma-separated list, or `all`.
    #[arg(long, default_value = "all")]
    pub method: String,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub vertex: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Fault injection: toggle adjacency entry `i,j` on the operator side.
    #[arg(long, value_delimiter = ',')]
    pub corrupt_adjacency: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub kind: FamilyKind,
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl clap::ValueEnum for FamilyKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[
            FamilyKind::Cycle,
            FamilyKind::Complete,
            FamilyKind::CompleteBipartite,
            FamilyKind::Petersen,
            FamilyKind::Bowtie,
            FamilyKind::TreeBall,
            FamilyKind::GridBall,
        ]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        let (name, alias) = match self {
            FamilyKind::Cycle => ("cycle", "cycle"),
            FamilyKind::Complete => ("complete", "complete"),
            FamilyKind::CompleteBipartite => ("complete_bipartite", "complete-bipartite"),
            FamilyKind::Petersen => ("petersen", "petersen"),
            FamilyKind::Bowtie => ("bowtie", "bowtie"),
            FamilyKind::TreeBall => ("tree_ball", "tree-ball"),
            FamilyKind::GridBall => ("grid_ball", "grid-ball"),
        };
        Some(clap::builder::PossibleValue::new(name).alias(alias))
    }
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match (&self.graph, self.family) {
            (Some(path), _) => Graph::read(path),
            (None, Some(kind)) => make_family(&FamilySpec::new(kind, &self.params)),
            (None, None) => Err(Error::Input("pass --graph FILE or --family KIND --params ...".into())),
        }
    }
}

/// Flag, then environment, then the default cap.
pub fn resolve_limits(flag: Option<u128>) -> Result<OracleLimits> {
    let mut limits = OracleLimits::default();
    if let Some(cap) = flag {
        limits.work_cap = cap;
    } else if let Ok(raw) = std::env::var(WORK_CAP_ENV) {
        limits.work_cap = raw
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{WORK_CAP_ENV} must be a nonnegative integer, got `{raw}`")))?;
    }
    Ok(limits)
}

fn emit(output: Option<&PathBuf>, body: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn count(args: &CountArgs) -> Result<String> {
    let g = args.common.source.load()?;
    check_vertex(&g, args.vertex)?;
    let limits = resolve_limits(args.common.oracle_work_cap)?;
    let l = args.max_length;
    if args.what == CountWhat::Matrix {
        let mats = geodesic_count_matrices(&g, l, &limits)?;
        return Ok(match args.common.format {
            Format::Json => {
                let v: Vec<Vec<Vec<String>>> = mats
                    .iter()
                    .map(|m| (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j).to_string()).collect()).collect())
                    .collect();
                serde_json::to_string_pretty(&json!({ "graph": g.name(), "max_length": l, "c_matrix": v }))?
            }
            Format::Csv => {
                let mut s = String::from("m,x,y,count\n");
                for (m, mat) in mats.iter().enumerate() {
                    for x in 0..mat.dim() {
                        for y in 0..mat.dim() {
                            s.push_str(&format!("{m},{x},{y},{}\n", mat.get(x, y)));
                        }
                    }
                }
                s
            }
        });
    }
    let table = count_closed_geodesics(&g, args.vertex, l, &limits)?;
    Ok(match args.common.format {
        Format::Json => {
            let mut v = serde_json::to_value(&table)?;
            let obj = v.as_object_mut().expect("table is an object");
            match args.what {
                CountWhat::Loops => {
                    obj.remove("N");
                }
                CountWhat::ClosedGeodesics => {
                    obj.remove("c");
                }
                _ => {}
            }
            serde_json::to_string_pretty(&v)?
        }
        Format::Csv => {
            let (loops, closed) = match args.what {
                CountWhat::Loops => (true, false),
                CountWhat::ClosedGeodesics => (false, true),
                _ => (true, true),
            };
            let mut s = String::from("m");
            if loops {
                s.push_str(",c");
            }
            if closed {
                s.push_str(",N");
            }
            s.push('\n');
            let start = if loops { 0 } else { 1 };
            for m in start..=l {
                s.push_str(&m.to_string());
                if loops {
                    s.push_str(&format!(",{}", table.c(m)));
                }
                if closed {
                    if m == 0 {
                        s.push(',');
                    } else {
                        s.push_str(&format!(",{}", table.n(m)));
                    }
                }
                s.push('\n');
            }
            s
        }
    })
}

fn series(args: &SeriesArgs) -> Result<String> {
    if args.order < 1 {
        return Err(Error::Input("--order must be at least 1".into()));
    }
    let g = args.common.source.load()?;
    let limits = resolve_limits(args.common.oracle_work_cap)?;
    let methods = Method::parse_list(&args.method)?;
    let x = args.target_vertex.unwrap_or(args.vertex);
    let report = compare_methods(&g, args.vertex, x, args.order, &methods, &limits)?;
    if report.series.is_empty() {
        let reasons: Vec<String> = report.refused.iter().map(|r| format!("{}: {}", r.method, r.reason)).collect();
        return Err(Error::Assumption(format!("every requested method was refused ({})", reasons.join("; "))));
    }
    Ok(match args.common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    })
}

fn spectrum(args: &SpectrumArgs) -> Result<String> {
    let g = args.common.source.load()?;
    check_vertex(&g, args.vertex)?;
    let d = laplacian_decomposition(&g)?;
    let local = d.local_spectrum(args.vertex);
    Ok(match args.common.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "graph": g.name(),
            "eigenvalues": d.eigenvalues,
            "local_spectrum": local,
        }))?,
        Format::Csv => {
            let mut s = String::from("eigenvalue,local_multiplicity\n");
            for c in &d.clusters {
                let m = c.projector.get(args.vertex, args.vertex);
                s.push_str(&format!("{},{}\n", format_float(c.value), format_float(m)));
            }
            s
        }
    })
}

fn verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let g = args.common.source.load()?;
    let corrupt_adjacency = match args.corrupt_adjacency.as_deref() {
        None => None,
        Some([i, j]) => Some((*i, *j)),
        Some(_) => return Err(Error::Input("--corrupt-adjacency takes i,j".into())),
    };
    let config = SuiteConfig {
        order: args.order,
        limits: resolve_limits(args.common.oracle_work_cap)?,
        corrupt_adjacency,
    };
    let report = run_suite(&g, &config)?;
    let body = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => {
            let mut s = String::from("check,status,detail\n");
            for e in &report.entries {
                s.push_str(&format!("\"{}\",{},\"{}\"\n", e.name, e.status, e.detail.replace('"', "'")));
            }
            s
        }
    };
    print!("{}", report.table());
    Ok((body, report.all_pass()))
}

fn family(args: &FamilyArgs) -> Result<String> {
    let g = make_family(&FamilySpec::new(args.kind, &args.params))?;
    Ok(g.to_json())
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Count(a) => emit(a.common.output.as_ref(), &count(a)?).map(|_| 0),
        Command::Series(a) => emit(a.common.output.as_ref(), &series(a)?).map(|_| 0),
        Command::Spectrum(a) => emit(a.common.output.as_ref(), &spectrum(a)?).map(|_| 0),
        Command::Verify(a) => {
            let (body, pass) = verify(a)?;
            if let Some(path) = &a.common.output {
                std::fs::write(path, body)?;
            }
            Ok(if pass { 0 } else { 1 })
        }
        Command::Family(a) => emit(a.output.as_ref(), &family(a)?).map(|_| 0),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
