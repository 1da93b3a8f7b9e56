use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyweb_core::groebner::DEFAULT_PAIR_BUDGET;
use cyweb_core::poly::{parse_document, UniPoly};
use cyweb_core::singularity::{
    analyze_singular_locus, count_cuspidal_fibers, fiber_product_singularities, AnalysisOptions, Hypersurface,
    LocalModel, SingularityReport,
};
use cyweb_core::transition::{
    compute_table, consistency_check, decide_simplicity, dim_image_lambda_report, verify_splitting_family, Finding,
    Severity, TransitionRecord,
};
use cyweb_core::web::WebGraph;
use cyweb_core::Error;

/// Exact analysis of geometric transitions between Calabi–Yau threefolds.
#[derive(Parser, Debug)]
#[command(name = "cyweb", version)]
struct Cli {
    /// Emit CSV where the command supports it.
    #[arg(long, global = true)]
    csv: bool,
    /// Emit DOT where the command supports it.
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for the random linear forms of radicality certificates.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Pair budget per Gröbner basis computation.
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular locus of a hypersurface (.hsf).
    Analyze { file: PathBuf },
    /// Milnor and Tyurina numbers of a local model (.lm).
    Milnor { file: PathBuf },
    /// Derived invariants and consistency findings of a transition record (.tr).
    Transition {
        file: PathBuf,
        /// Print only the invariant table as CSV.
        #[arg(long)]
        table: bool,
    },
    /// Simplicity verdict of a transition record, after verifying its witness.
    Simplicity { file: PathBuf },
    /// Verify the splitting-family witness of a transition record.
    SplitVerify { file: PathBuf },
    /// Cuspidal fibers of a Weierstrass section (.b), and of the fiber product with a second one.
    Cusps { file: PathBuf, other: Option<PathBuf> },
    /// Operations on a web graph (.web).
    Web {
        #[command(subcommand)]
        action: WebAction,
    },
}

#[derive(Subcommand, Debug)]
enum WebAction {
    /// Load the referenced records and print the graph with refreshed verdicts.
    Build { file: PathBuf },
    /// Print validation findings; fails on any ERROR.
    Validate { file: PathBuf },
    /// Shortest undirected arrow path between two nodes.
    Path { file: PathBuf, from: String, to: String },
    /// Canonical text, or DOT / CSV with the global switches.
    Export { file: PathBuf },
}

/// Report text plus exit code.
type Outcome = Result<(String, u8), Error>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn findings_text(out: &mut String, findings: &[Finding]) -> u8 {
    for f in findings {
        let _ = writeln!(out, "{f}");
    }
    u8::from(findings.iter().any(|f| f.severity == Severity::Error))
}

fn analyze(cli: &Cli, opts: &AnalysisOptions, file: &Path) -> Outcome {
    let h = Hypersurface::from_text(&read(file)?)?;
    let report = analyze_singular_locus(&h, opts)?;
    if cli.csv {
        Ok((format!("{}\n{}\n", SingularityReport::CSV_HEADER, report.csv_row()), 0))
    } else {
        Ok((report.to_text(), 0))
    }
}

fn milnor(cli: &Cli, file: &Path) -> Outcome {
    let model = LocalModel::from_text(&read(file)?)?;
    let inv = model.invariants_with_budget(cli.budget)?;
    if cli.csv {
        return Ok((
            format!(
                "mu,tau,hessian_corank,type\n{},{},{},{}\n",
                inv.milnor,
                inv.tyurina,
                inv.hessian_corank,
                inv.type_label()
            ),
            0,
        ));
    }
    let mut out = inv.to_string();
    if let Some(mo) = model.milnor_orlik_check() {
        let _ = writeln!(out, "milnor-orlik product: {mo}");
    }
    Ok((out, 0))
}

fn load_record(file: &Path) -> Result<TransitionRecord, Error> {
    TransitionRecord::from_text(&read(file)?)
}

fn transition(cli: &Cli, file: &Path, table_only: bool) -> Outcome {
    let r = load_record(file)?;
    let table = compute_table(&r)?;
    if table_only || cli.csv {
        return Ok((table.to_csv(), 0));
    }
    let mut out = format!("{} ({})\n", r.name, r.type_tag);
    out.push_str(&table.to_text());
    if let Some(d) = dim_image_lambda_report(&r)? {
        let _ = writeln!(out, "dim im lambda: {d}");
    }
    let findings = consistency_check(&r);
    let code = findings_text(&mut out, &findings);
    Ok((out, code))
}

fn simplicity(opts: &AnalysisOptions, file: &Path) -> Outcome {
    let mut r = load_record(file)?;
    r.verify_witness(opts)?;
    let mut out = format!("{}\n", decide_simplicity(&r));
    if let Some(d) = dim_image_lambda_report(&r)? {
        let _ = writeln!(out, "dim im lambda: {d}");
    }
    Ok((out, 0))
}

fn split_verify(opts: &AnalysisOptions, file: &Path) -> Outcome {
    let r = load_record(file)?;
    let w = r
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidRecord(format!("{} has no witness", r.name)))?;
    let report = verify_splitting_family(&w.family, opts)?;
    let mut out = report.to_text();
    let per_point = report.report.point_count as u64;
    let _ = writeln!(
        out,
        "total nodes: {} x {} = {}",
        r.singular.count,
        per_point,
        r.singular.count as u64 * per_point
    );
    Ok((out, u8::from(!report.verified)))
}

fn weierstrass(file: &Path) -> Result<UniPoly, Error> {
    let doc = parse_document(&read(file)?)?;
    let p = doc.single()?;
    if p.ring().nvars() != 1 {
        return Err(Error::InvalidRecord("a Weierstrass section has one variable".into()));
    }
    UniPoly::from_polynomial(p, 0)
}

fn cusps(file: &Path, other: Option<&Path>) -> Outcome {
    let b1 = weierstrass(file)?;
    let c = count_cuspidal_fibers(&b1)?;
    let mut out = format!(
        "{} distinct cuspidal fibers, all simple: {}\n",
        c.distinct_roots, c.all_simple
    );
    let b2 = match other {
        Some(p) => weierstrass(p)?,
        None => b1.clone(),
    };
    let fp = fiber_product_singularities(&b1, &b2)?;
    let _ = writeln!(out, "fiber product: {} points of type {}", fp.count, fp.kind);
    Ok((out, 0))
}

fn base_dir(file: &Path) -> PathBuf {
    file.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn web(cli: &Cli, opts: &AnalysisOptions, action: &WebAction) -> Outcome {
    let file = match action {
        WebAction::Build { file }
        | WebAction::Validate { file }
        | WebAction::Path { file, .. }
        | WebAction::Export { file } => file,
    };
    let mut g = WebGraph::from_text(&read(file)?)?;
    match action {
        WebAction::Build { .. } => {
            g.load_transitions(&base_dir(file), opts)?;
            Ok((g.to_text(), 0))
        }
        WebAction::Validate { .. } => {
            g.load_transitions(&base_dir(file), opts)?;
            let findings = g.revalidate().to_vec();
            let mut out = String::new();
            let code = findings_text(&mut out, &findings);
            let _ = writeln!(
                out,
                "{} nodes, {} arrows, {} findings",
                g.nodes().len(),
                g.arrows().len(),
                findings.len()
            );
            Ok((out, code))
        }
        WebAction::Path { from, to, .. } => match g.path(from, to)? {
            Some(p) => Ok((format!("{}\n", p.join(" ")), 0)),
            None => Ok((format!("no path from {from} to {to}\n"), 1)),
        },
        WebAction::Export { .. } => Ok((
            if cli.dot {
                g.export_dot()
            } else if cli.csv {
                g.export_csv()
            } else {
                g.to_text()
            },
            0,
        )),
    }
}

fn run(cli: &Cli) -> Outcome {
    let opts = AnalysisOptions {
        seed: cli.seed,
        budget: cli.budget,
    };
    match &cli.command {
        Command::Analyze { file } => analyze(cli, &opts, file),
        Command::Milnor { file } => milnor(cli, file),
        Command::Transition { file, table } => transition(cli, file, *table),
        Command::Simplicity { file } => simplicity(&opts, file),
        Command::SplitVerify { file } => split_verify(&opts, file),
        Command::Cusps { file, other } => cusps(file, other.as_deref()),
        Command::Web { action } => web(cli, &opts, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
