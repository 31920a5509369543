use clap::{Parser, Subcommand, ValueEnum};
use eigencone::driver::{
    self, ChainOptions, DisksOptions, DominateOptions, LocalizeCmdMode, LocalizeOptions,
    RunOutput, EXIT_INPUT,
};
use eigencone::exact::{parse_decimal, QIv, QRect, Rat};
use eigencone::mfile::{load_matrix_file, MatrixInput};
use num_traits::Signed;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit codes: 0 = certified positive, 1 = certified negative,
/// 2 = input or usage error, 3 = undecided.
#[derive(Parser)]
#[command(
    name = "eigencone",
    version,
    about = "Certified eigenvalue enclosures via Gerschgorin disks and cone domination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Include wall-clock timing in the report (off by default so repeated
    /// runs stay byte-identical).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classical, scaled, or block Gerschgorin disks with counting groups.
    Disks {
        file: PathBuf,
        /// Block sizes, comma separated; must sum to the dimension.
        #[arg(long, value_delimiter = ',', value_name = "K1,K2,...")]
        partition: Option<Vec<usize>>,
        /// Positive diagonal scaling, one entry per row (exact: "3", "1/2", "0.25").
        #[arg(long, value_delimiter = ',', value_name = "X1,X2,...")]
        scale: Option<Vec<String>>,
        /// Write an SVG figure here.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Decide whether the matrix dominates the cone pair at a split.
    Dominate {
        file: PathBuf,
        /// Split index; defaults to the file's split_k.
        #[arg(long)]
        k: Option<usize>,
        /// Cone scale, e.g. "3/2" or "0.6"; defaults to the file's default_r, then 1.
        #[arg(long)]
        r: Option<String>,
        /// Compute exact rates by linear programming (point matrices only).
        #[arg(long)]
        exact: bool,
    },
    /// Certified annulus splitting the spectrum, plus an eigenvector cone.
    Localize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Single)]
        mode: ModeArg,
        /// Split index for block mode; defaults to the file's split_k.
        #[arg(long)]
        k: Option<usize>,
        /// Shift for block mode: "re" or "re,im", exact scalars.
        #[arg(long)]
        shift: Option<String>,
        /// Tighten the enclosure over all workable cone scales.
        #[arg(long = "optimize-r")]
        optimize_r: bool,
        /// Write an SVG figure here.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Localize the spectrum of a product of factors without forming it.
    Chain {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Shared split index; defaults to the first file's split_k.
        #[arg(long)]
        k: Option<usize>,
        /// Shared cone scale; defaults to the first file's default_r, then 1.
        #[arg(long)]
        r: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Single,
    Block,
    Gersch,
}

fn parse_rat(s: &str, what: &str) -> Result<Rat, String> {
    parse_decimal(s).map_err(|e| format!("{what}: {e}"))
}

fn parse_positive_rat(s: &str, what: &str) -> Result<Rat, String> {
    let q = parse_rat(s, what)?;
    if q.is_positive() {
        Ok(q)
    } else {
        Err(format!("{what} must be positive, got {s}"))
    }
}

fn parse_shift(s: &str) -> Result<QRect, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(QRect::point_real(parse_rat(re, "shift")?)),
        [re, im] => Ok(QRect::new(
            QIv::point(parse_rat(re, "shift (real part)")?),
            QIv::point(parse_rat(im, "shift (imaginary part)")?),
        )),
        _ => Err("shift must be \"re\" or \"re,im\"".into()),
    }
}

fn load(path: &Path) -> Result<MatrixInput, u8> {
    load_matrix_file(path).map_err(|e| {
        eprintln!("eigencone: {e}");
        EXIT_INPUT
    })
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("eigencone: {msg}");
    EXIT_INPUT
}

fn emit(out: &RunOutput, json_path: Option<&Path>, svg_path: Option<&Path>) -> u8 {
    if let (Some(path), Some(svg)) = (svg_path, &out.svg) {
        if let Err(e) = std::fs::write(path, svg) {
            eprintln!("eigencone: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    match json_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.json) {
                eprintln!("eigencone: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{}", out.json),
    }
    out.exit_code
}

fn run(cli: Cli) -> u8 {
    let json_path = cli.json.clone();
    let timing = cli.timing;
    match cli.command {
        Command::Disks { file, partition, scale, svg } => {
            let input = match load(&file) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let scale = match scale {
                Some(xs) => {
                    let mut parsed = Vec::with_capacity(xs.len());
                    for x in &xs {
                        match parse_positive_rat(x, "scale entry") {
                            Ok(q) => parsed.push(q),
                            Err(e) => return usage_error(&e),
                        }
                    }
                    Some(parsed)
                }
                None => None,
            };
            let out = driver::run_disks(
                &input,
                &DisksOptions { partition, scale, svg: svg.is_some(), timing },
            );
            emit(&out, json_path.as_deref(), svg.as_deref())
        }
        Command::Dominate { file, k, r, exact } => {
            let input = match load(&file) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let r = match r.as_deref().map(|s| parse_positive_rat(s, "r")).transpose() {
                Ok(r) => r,
                Err(e) => return usage_error(&e),
            };
            let out = driver::run_dominate(&input, &DominateOptions { k, r, exact, timing });
            emit(&out, json_path.as_deref(), None)
        }
        Command::Localize { file, mode, k, shift, optimize_r, svg } => {
            let input = match load(&file) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let shift = match shift.as_deref().map(parse_shift).transpose() {
                Ok(s) => s,
                Err(e) => return usage_error(&e),
            };
            let mode = match mode {
                ModeArg::Single => LocalizeCmdMode::Single,
                ModeArg::Block => LocalizeCmdMode::Block,
                ModeArg::Gersch => LocalizeCmdMode::Gersch,
            };
            let out = driver::run_localize(
                &input,
                &LocalizeOptions { mode, k, shift, optimize_r, svg: svg.is_some(), timing },
            );
            emit(&out, json_path.as_deref(), svg.as_deref())
        }
        Command::Chain { files, k, r } => {
            let mut inputs = Vec::with_capacity(files.len());
            for f in &files {
                match load(f) {
                    Ok(i) => inputs.push(i),
                    Err(code) => return code,
                }
            }
            let r = match r.as_deref().map(|s| parse_positive_rat(s, "r")).transpose() {
                Ok(r) => r,
                Err(e) => return usage_error(&e),
            };
            let out = driver::run_chain(&inputs, &ChainOptions { k, r, timing });
            emit(&out, json_path.as_deref(), None)
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
