mod commands;

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tropsurf", version, about = "Exact invariants of tropical surfaces")]
struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Rank-3 matroids given by flats or lines.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Bergman fans.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Fan 1-cycles in a fan plane.
    #[command(subcommand)]
    Cycle(CycleCmd),
    /// Intersections of fan curves and surface invariants of a fan plane.
    #[command(subcommand)]
    Intersect(IntersectCmd),
    /// Compact surfaces built from toric pieces.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Cosheaf (p,q)-homology of a cell complex.
    #[command(subcommand)]
    Homology(HomologyCmd),
}

#[derive(Args)]
struct MatroidArg {
    #[arg(long, value_name = "PATH")]
    matroid: PathBuf,
}

#[derive(Args)]
struct ExprArg {
    #[arg(long, value_name = "PATH")]
    expr: PathBuf,
}

#[derive(Args)]
struct ComplexArg {
    #[arg(long, value_name = "PATH")]
    complex: PathBuf,
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Points, characteristic polynomial and c2 multiplicity.
    Info(MatroidArg),
    /// Counts of simple rank-3 matroids on 3 to 7 elements.
    Library,
}

#[derive(Subcommand)]
enum FanCmd {
    /// Bergman fan of a matroid in the standard basis.
    Build(MatroidArg),
    /// Recover the matroid from rays and cones.
    Reconstruct {
        #[arg(long, value_name = "PATH")]
        fan: PathBuf,
    },
}

#[derive(Subcommand)]
enum CycleCmd {
    /// Degree of a cycle with respect to the standard basis.
    Degree {
        #[arg(long, value_name = "PATH")]
        cycle: PathBuf,
        #[arg(long, value_name = "PATH")]
        matroid: PathBuf,
    },
    /// Canonical cycle of the fan plane.
    Canonical(MatroidArg),
}

#[derive(Subcommand)]
enum IntersectCmd {
    /// Vertex and corner contributions of two cycles.
    Bezout {
        /// Two cycle files.
        #[arg(long, value_name = "PATH", num_args = 1, required = true)]
        cycle: Vec<PathBuf>,
        #[arg(long, value_name = "PATH")]
        matroid: PathBuf,
    },
    /// K² and c₂ of the fan plane, each by two formulas.
    Invariants(MatroidArg),
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Invariants and boundary-curve ledger.
    Eval(ExprArg),
    /// 12χ = K² + c₂.
    Noether(ExprArg),
    /// Adjunction for every boundary curve.
    Adjunction(ExprArg),
    /// (K² - 2c₂)/3, the signature predicted by additivity.
    Signature(ExprArg),
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// All groups H_{p,q}.
    Diamond(ComplexArg),
    /// One group H_{p,q}.
    Group {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        #[arg(short, long)]
        p: usize,
        #[arg(short, long)]
        q: usize,
    },
    /// Gram matrix and signature of the (1,1) pairing on named cycles.
    Pairing {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        #[arg(long, value_name = "PATH")]
        cycle: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let color = cli.out.is_none() && std::env::var("TROPSURF_COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal();
    let style = commands::Style { color };
    let result = match cli.verb {
        Verb::Matroid(MatroidCmd::Info(a)) => commands::matroid_info(&a.matroid),
        Verb::Matroid(MatroidCmd::Library) => commands::matroid_library(),
        Verb::Fan(FanCmd::Build(a)) => commands::fan_build(&a.matroid),
        Verb::Fan(FanCmd::Reconstruct { fan }) => commands::fan_reconstruct(&fan),
        Verb::Cycle(CycleCmd::Degree { cycle, matroid }) => commands::cycle_degree(&cycle, &matroid),
        Verb::Cycle(CycleCmd::Canonical(a)) => commands::cycle_canonical(&a.matroid),
        Verb::Intersect(IntersectCmd::Bezout { cycle, matroid }) => commands::intersect_bezout(&cycle, &matroid),
        Verb::Intersect(IntersectCmd::Invariants(a)) => commands::intersect_invariants(&a.matroid, &style),
        Verb::Surface(SurfaceCmd::Eval(a)) => commands::surface_eval(&a.expr),
        Verb::Surface(SurfaceCmd::Noether(a)) => commands::surface_noether(&a.expr, &style),
        Verb::Surface(SurfaceCmd::Adjunction(a)) => commands::surface_adjunction(&a.expr, &style),
        Verb::Surface(SurfaceCmd::Signature(a)) => commands::surface_signature(&a.expr),
        Verb::Homology(HomologyCmd::Diamond(a)) => commands::homology_diamond(&a.complex),
        Verb::Homology(HomologyCmd::Group { complex, p, q }) => commands::homology_group(&complex, p, q),
        Verb::Homology(HomologyCmd::Pairing { complex, cycle }) => commands::homology_pairing(&complex, &cycle),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    let mut text = if cli.json { serde_json::to_string_pretty(&report.json).expect("report serializes") } else { report.text };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
