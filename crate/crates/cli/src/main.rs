//! `cupres`: JSON front end for the group-cohomology and Brauer-class
//! engines.
//!
//! Exit status is 0 on success, 1 when the engine rejects the input
//! (the error is printed as `{"error": ...}`), and 2 for usage errors and
//! malformed JSON.

mod group_cmd;
mod input;
mod q_cmd;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use cupres_core::{Place, SearchBounds};
use serde_json::{json, Value};

use input::{int_arg, load_group, usage, GroupSource, Usage};

#[derive(Parser)]
#[command(name = "cupres", version, about = "Massey products, cup-product restriction and Brauer classes over Q")]
struct Cli {
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Finite groups with trivial F_p coefficients.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Quaternion symbols and 2-torsion Brauer classes over Q.
    #[command(subcommand)]
    Q(QCmd),
}

#[derive(Args)]
struct GroupArgs {
    /// Builtin group: cyclic:n, elab:p:k, dihedral:n, quaternion8,
    /// unipotent:n:p, unipotent-bar:n:p.
    #[arg(long, group = "source")]
    group: Option<String>,
    /// Group as inline JSON (see docs/FORMATS.md).
    #[arg(long, group = "source")]
    group_json: Option<String>,
    /// Group as a JSON file.
    #[arg(long, group = "source")]
    group_file: Option<PathBuf>,
    /// Coefficient prime.
    #[arg(long, default_value_t = 2)]
    p: u32,
}

impl GroupArgs {
    fn source(&self) -> Result<GroupSource<'_>> {
        match (&self.group, &self.group_json, &self.group_file) {
            (Some(n), _, _) => Ok(GroupSource::Name(n)),
            (_, Some(j), _) => Ok(GroupSource::Json(j)),
            (_, _, Some(f)) => Ok(GroupSource::File(f)),
            _ => Err(usage("one of --group, --group-json or --group-file is required")),
        }
    }
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Dimensions of H^1 and H^2, an H^1 basis and its cup products.
    Cohomology(GroupArgs),
    /// The triple Massey product of three H^1 classes.
    Massey {
        #[command(flatten)]
        g: GroupArgs,
        /// Three H^1 coordinate vectors, e.g. '[[1,0],[0,1],[1,0]]'.
        #[arg(long)]
        triple: String,
    },
    /// Checks that every defined triple Massey product contains zero.
    ScanVanishing {
        #[command(flatten)]
        g: GroupArgs,
        /// Include the verdict for every triple.
        #[arg(long)]
        all: bool,
    },
    /// Cup-product restriction property for a list of characters.
    CupRes {
        #[command(flatten)]
        g: GroupArgs,
        /// H^1 coordinate vectors of the characters.
        #[arg(long)]
        chars: String,
    },
    /// A homomorphism into unipotent matrices with the given superdiagonal.
    UHom {
        #[command(flatten)]
        g: GroupArgs,
        /// H^1 coordinate vectors of the superdiagonal characters.
        #[arg(long)]
        chars: String,
        /// Target the quotient by the corner entry.
        #[arg(long)]
        bar: bool,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// Largest auxiliary prime tried when realizing a class as a cup product.
    #[arg(long, env = "CUPRES_AUX_PRIME_BOUND", default_value_t = SearchBounds::default().aux_prime_bound)]
    aux_prime_bound: u64,
    /// Trial-division bound for factoring symbol entries.
    #[arg(long, env = "CUPRES_FACTOR_BOUND", default_value_t = SearchBounds::default().factor_bound)]
    factor_bound: u64,
}

impl BoundArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds { aux_prime_bound: self.aux_prime_bound, factor_bound: self.factor_bound, ..SearchBounds::default() }
    }
}

#[derive(Subcommand)]
enum QCmd {
    /// Hilbert symbol (a, b)_v.
    Hilbert {
        #[arg(long, value_parser = int_arg, allow_hyphen_values = true)]
        a: i128,
        #[arg(long, value_parser = int_arg, allow_hyphen_values = true)]
        b: i128,
        /// A prime, or `inf` for the real place.
        #[arg(long)]
        place: Place,
    },
    /// Local invariants of a sum of quaternion symbols.
    Invariants {
        /// JSON list of pairs, e.g. '[[2,3],[-1,-1]]'.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Whether the class splits over Q(sqrt a_1, ..., sqrt a_r).
    Split {
        #[arg(long)]
        class: String,
        /// JSON list of integers.
        #[arg(long)]
        a: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Writes a split class as a sum of symbols (a_i, x_i).
    Decompose {
        #[arg(long)]
        class: String,
        #[arg(long)]
        a: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Rechecks a decomposition certificate.
    Verify {
        /// Certificate JSON.
        #[arg(long, group = "input")]
        cert: Option<String>,
        /// Certificate file, or `-` for stdin.
        #[arg(long, group = "input")]
        file: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

fn run_group(cmd: &GroupCmd) -> Result<Value> {
    let load = |g: &GroupArgs| -> Result<_> { Ok((load_group(g.source()?)?, g.p)) };
    match cmd {
        GroupCmd::Cohomology(g) => {
            let (grp, p) = load(g)?;
            group_cmd::cohomology(&grp, p)
        }
        GroupCmd::Massey { g, triple } => {
            let (grp, p) = load(g)?;
            group_cmd::massey(&grp, p, triple)
        }
        GroupCmd::ScanVanishing { g, all } => {
            let (grp, p) = load(g)?;
            group_cmd::scan(&grp, p, *all)
        }
        GroupCmd::CupRes { g, chars } => {
            let (grp, p) = load(g)?;
            group_cmd::cup_res(&grp, p, chars)
        }
        GroupCmd::UHom { g, chars, bar } => {
            let (grp, p) = load(g)?;
            group_cmd::u_hom(&grp, p, chars, *bar)
        }
    }
}

fn run_q(cmd: &QCmd) -> Result<Value> {
    match cmd {
        QCmd::Hilbert { a, b, place } => q_cmd::hilbert(*a, *b, *place),
        QCmd::Invariants { class, bounds } => q_cmd::invariants(class, &bounds.bounds()),
        QCmd::Split { class, a, bounds } => q_cmd::split(class, a, &bounds.bounds()),
        QCmd::Decompose { class, a, bounds } => q_cmd::decompose_cmd(class, a, &bounds.bounds()),
        QCmd::Verify { cert, file, bounds } => q_cmd::verify(cert.as_deref(), file.as_deref(), &bounds.bounds()),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    let mut text = if cli.pretty { serde_json::to_string_pretty(value)? } else { serde_json::to_string(value)? };
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("cupres: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Top::Group(cmd) => run_group(cmd),
        Top::Q(cmd) => run_q(cmd),
    };
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(e) => {
            let code = if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 };
            (json!({ "error": format!("{e:#}") }), code)
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("cupres: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
