//! `mtc`: inspect, verify, condense and export modular data.

mod schema;

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use mtc::catalog::CatalogRegistry;
use mtc::doubles::{fusion_graph_dot, realize_double, AdeCase, ParamKind, RealizationRegistry};
use mtc::modular::{central_charge_mod8, verify_modular};
use mtc::simple_current::{condense_z2, SimpleCurrent};
use mtc::{ModularData, ObjectVector, Tolerances, VerificationReport};

use schema::{to_json, DoubleDoc, ModularDataDoc, VerificationDoc, SCHEMA_VERSION};

const TOLERANCE_VAR: &str = "MTC_TOLERANCE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] mtc::Error),
    /// Output is already rendered; the command still fails.
    #[error("verification failed")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "mtc", version, about = "Modular data of small modular tensor categories")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Catalog families and double cases.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print a catalog entry (`su2:10`, `ising:3`, `fib:g2`, `zn:3:1/3`) or a JSON file.
    Show { id: String },
    /// Load a JSON document and check every modularity axiom.
    Verify { file: String },
    /// Condense a bosonic Z2 simple current.
    Condense {
        /// Catalog id or JSON file.
        source: String,
        /// Label of the current.
        #[arg(long)]
        current: String,
    },
    /// Realize the quantum double of an ADE case.
    Double(DoubleArgs),
    /// Fusion graph of one generator.
    Graph {
        /// Catalog id or JSON file.
        source: String,
        #[arg(long)]
        generator: String,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Debug, Args)]
struct DoubleArgs {
    /// One of a, d, e6, e6bar, e8, e8bar, ghj.
    #[arg(long = "case")]
    case: String,
    /// su(2) level (`a`; also accepted by `d` as 4n-4).
    #[arg(long, conflicts_with = "n")]
    level: Option<u32>,
    /// D_{2n} parameter.
    #[arg(long)]
    n: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn tolerances() -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Ok(text) = std::env::var(TOLERANCE_VAR) {
        let value: f64 =
            text.trim().parse().map_err(|_| CliError::Usage(format!("{TOLERANCE_VAR}=`{text}` is not a number")))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(CliError::Usage(format!("{TOLERANCE_VAR} must be positive")));
        }
        tol.report = value;
    }
    Ok(tol)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let tol = tolerances()?;
    let format = cli.format;
    let no_dot = || {
        if format == Format::Dot {
            Err(CliError::Usage("--format dot applies to `graph` only".into()))
        } else {
            Ok(())
        }
    };
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            no_dot()?;
            catalog_list(format)
        }
        Command::Show { id } => {
            no_dot()?;
            let md = source_data(id, &tol)?;
            let report = verify_modular(&md, &tol);
            finish(render_data(&md, &report, format)?, report.all_passed())
        }
        Command::Verify { file } => {
            no_dot()?;
            let (_, report) = schema::load(&read(file)?, &tol)?;
            let out = match format {
                Format::Json => to_json(&VerificationDoc::from(&report))? + "\n",
                _ => format!("{report}{}\n", if report.all_passed() { "ok" } else { "FAILED" }),
            };
            finish(out, report.all_passed())
        }
        Command::Condense { source, current } => {
            no_dot()?;
            let md = source_data(source, &tol)?;
            let g = SimpleCurrent::by_name(&md, current)?;
            let result = condense_z2(&md, &g, &tol)?;
            let cond = result.selected();
            let report = verify_modular(cond, &tol);
            let mut out = String::new();
            if format == Format::Text {
                let names = |xs: &[usize]| xs.iter().map(|&x| md.names()[x].clone()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(out, "current           {}", md.names()[g.label]);
                let _ = writeln!(out, "free orbits       {}", result.free_orbits.len());
                let _ = writeln!(out, "fixed points      {}", names(&result.fixed_points));
                let _ = writeln!(out, "excluded          {}", names(&result.excluded));
                let _ = writeln!(out, "completions       {}", result.condensed.len());
            }
            out += &render_data(cond, &report, format)?;
            finish(out, report.all_passed())
        }
        Command::Double(args) => {
            no_dot()?;
            let case = double_case(args)?;
            let report = realize_double(case, &tol)?;
            let out = match format {
                Format::Json => to_json(&DoubleDoc::from(&report))? + "\n",
                _ => report.to_string(),
            };
            finish(out, report.all_passed())
        }
        Command::Graph { source, generator } => {
            let md = source_data(source, &tol)?;
            let index = md.label_index(generator).ok_or_else(|| mtc::Error::UnknownLabel(generator.clone()))?;
            let gen = ObjectVector::simple(md.rank(), index);
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct GraphDoc {
                        schema_version: u32,
                        labels: Vec<String>,
                        generator: String,
                        /// `[i, j, multiplicity]` with `i <= j`.
                        edges: Vec<[u64; 3]>,
                    }
                    let mut edges = Vec::new();
                    for i in 0..md.rank() {
                        for (j, m) in md.ring().product(index, i) {
                            if j >= i {
                                edges.push([i as u64, j as u64, u64::from(m)]);
                            }
                        }
                    }
                    let doc = GraphDoc {
                        schema_version: SCHEMA_VERSION,
                        labels: md.names().to_vec(),
                        generator: generator.clone(),
                        edges,
                    };
                    Ok(to_json(&doc)? + "\n")
                }
                _ => Ok(fusion_graph_dot(&md, &gen)?),
            }
        }
    }
}

fn finish(out: String, passed: bool) -> Result<String, CliError> {
    if passed {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// A catalog id, or a JSON file if a file of that name exists.
fn source_data(source: &str, tol: &Tolerances) -> Result<ModularData, CliError> {
    if Path::new(source).is_file() {
        let (md, report) = schema::load(&read(source)?, tol)?;
        if !report.all_passed() {
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            return Err(CliError::Failed(format!("{report}{source}: failing checks {}\n", failed.join(", "))));
        }
        return Ok(md);
    }
    CatalogRegistry::default()
        .build(source)
        .map_err(|e| CliError::Input(format!("`{source}` is neither a file nor a catalog id ({e})")))
}

fn double_case(args: &DoubleArgs) -> Result<AdeCase, CliError> {
    let registry = RealizationRegistry::default();
    let kind =
        registry.param_kind(&args.case).ok_or_else(|| CliError::Usage(format!("unknown case `{}`", args.case)))?;
    let case = match (kind, args.level, args.n) {
        (ParamKind::N, Some(level), None) => AdeCase::d_from_level(level)?,
        (ParamKind::N, None, n) => registry.case(&args.case, n)?,
        (ParamKind::Level, level, None) => registry.case(&args.case, level)?,
        (ParamKind::None, None, None) => registry.case(&args.case, None)?,
        _ => return Err(CliError::Usage(format!("case `{}` does not take that parameter", args.case))),
    };
    Ok(case)
}

fn render_data(md: &ModularData, report: &VerificationReport, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(to_json(&ModularDataDoc::from_data(md))? + "\n");
    }
    let mut out = String::new();
    let _ = writeln!(out, "rank              {}", md.rank());
    let _ = writeln!(out, "global dimension  {:.12}", md.global_dimension());
    match central_charge_mod8(md) {
        Ok(c) => {
            let _ = writeln!(out, "central charge    {c}");
        }
        Err(e) => {
            let _ = writeln!(out, "central charge    unavailable ({e})");
        }
    }
    let width = md.names().iter().map(String::len).max().unwrap_or(1).max(5);
    let _ = writeln!(out, "{:<width$}  {:>8}  {:>16}  dual", "label", "twist", "dim");
    for i in 0..md.rank() {
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>16.12}  {}",
            md.names()[i],
            md.twist(i).to_string(),
            md.dims()[i],
            md.names()[md.ring().dual(i)]
        );
    }
    let _ = write!(out, "{report}");
    Ok(out)
}

fn catalog_list(format: Format) -> Result<String, CliError> {
    let catalog = CatalogRegistry::default();
    let doubles = RealizationRegistry::default();
    if format == Format::Json {
        #[derive(Serialize)]
        struct Entry {
            name: String,
            summary: String,
            example: String,
        }
        #[derive(Serialize)]
        struct ListDoc {
            schema_version: u32,
            families: Vec<Entry>,
            doubles: Vec<Entry>,
        }
        let doc = ListDoc {
            schema_version: SCHEMA_VERSION,
            families: catalog
                .families()
                .map(|f| Entry { name: f.prefix().into(), summary: f.summary().into(), example: f.example().into() })
                .collect(),
            doubles: doubles
                .list()
                .map(|(name, kind, summary)| Entry {
                    name: name.into(),
                    summary: summary.into(),
                    example: double_example(name, kind),
                })
                .collect(),
        };
        return Ok(to_json(&doc)? + "\n");
    }
    let mut out = String::from("catalog families\n");
    for f in catalog.families() {
        let _ = writeln!(out, "  {:<6} {:<14} {}", f.prefix(), f.example(), f.summary());
    }
    out.push_str("double cases\n");
    for (name, kind, summary) in doubles.list() {
        let _ = writeln!(out, "  {:<6} {:<30} {}", name, double_example(name, kind), summary);
    }
    Ok(out)
}

fn double_example(name: &str, kind: ParamKind) -> String {
    match kind {
        ParamKind::None => format!("double --case {name}"),
        ParamKind::Level => format!("double --case {name} --level 10"),
        ParamKind::N => format!("double --case {name} --n 3"),
    }
}
