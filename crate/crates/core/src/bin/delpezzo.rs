use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use delpezzo::enumerate;
use delpezzo::export::{self, Format};
use delpezzo::fixture::Fixture;
use delpezzo::gosset::GossetPolytope;
use delpezzo::verify::{self, Depth};
use delpezzo::weyl::{self, RootBasis};
use delpezzo::{DivisorClass, Surface};

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Divisor classes on del Pezzo surfaces and the faces of the Gosset polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the size of a class set or face layer.
    Count {
        #[arg(long = "r")]
        r: i64,
        /// lines | roots | rulings | exceptional-systems | a-divisors:A | simplexes:K | crosspolytopes
        set: String,
    },
    /// Run the verification suite; exit 0 if every check passes, 1 otherwise.
    Verify {
        /// A rank 3..8, or `all`.
        #[arg(long = "r", required_unless_present = "all")]
        r: Option<String>,
        #[arg(long, conflicts_with = "r")]
        all: bool,
        #[arg(long, conflicts_with = "fast")]
        deep: bool,
        #[arg(long)]
        fast: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Expected-value table to check against instead of the built-in one.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Write the face lattice of (r-4)_21.
    Export {
        #[arg(long = "r")]
        r: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Print the orbit of a class under the simple-root (or given) reflections.
    Orbit {
        #[arg(long = "r")]
        r: i64,
        /// Comma-separated coordinates d0,c1,…,cr.
        #[arg(allow_hyphen_values = true)]
        class: String,
        /// Reflection generators; defaults to the simple roots.
        #[arg(long = "gen", allow_hyphen_values = true)]
        generators: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn surface(r: i64) -> Result<Surface, ExitCode> {
    Surface::new(r).map_err(usage)
}

fn parse_class(s: &Surface, literal: &str) -> Result<DivisorClass, ExitCode> {
    let d = DivisorClass::parse(literal).map_err(usage)?;
    if d.rank() != s.rank() {
        return Err(usage(format!(
            "{literal:?} has rank {}, expected {}",
            d.rank(),
            s.rank()
        )));
    }
    Ok(d)
}

fn count(r: i64, set: &str) -> Result<u64, ExitCode> {
    let s = surface(r)?;
    let (name, arg) = match set.split_once(':') {
        Some((n, a)) => (
            n,
            Some(
                a.parse::<i64>()
                    .map_err(|_| usage(format!("bad argument in {set:?}")))?,
            ),
        ),
        None => (set, None),
    };
    let n = match (name, arg) {
        ("lines", None) => enumerate::lines(&s).len() as u64,
        ("roots", None) => enumerate::roots(&s).len() as u64,
        ("rulings", None) => enumerate::rulings(&s).len() as u64,
        ("exceptional-systems", None) => enumerate::exceptional_systems(&s).len() as u64,
        ("a-divisors", Some(a)) => enumerate::a_divisors(&s, a).map_err(usage)?.len() as u64,
        ("simplexes", Some(k)) => {
            let k = usize::try_from(k).map_err(|_| usage("negative simplex dimension"))?;
            GossetPolytope::build(&s)
                .count_simplexes(k)
                .map_err(usage)?
        }
        ("crosspolytopes", None) => GossetPolytope::build(&s).crosspolytopes().len() as u64,
        _ => return Err(usage(format!("unknown set {set:?}"))),
    };
    Ok(n)
}

fn parse_ranks(r: Option<&str>, all: bool) -> Result<Vec<u8>, ExitCode> {
    match (r, all) {
        (_, true) | (Some("all"), _) => Ok((3..=8).collect()),
        (Some(r), false) => {
            let r: i64 = r
                .parse()
                .map_err(|_| usage(format!("--r expects 3..8 or all, got {r:?}")))?;
            Ok(vec![surface(r)?.rank()])
        }
        (None, false) => Err(usage("--r or --all is required")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Count { r, set } => {
            println!("{}", count(r, &set)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            r,
            all,
            deep,
            fast: _,
            format,
            expected,
        } => {
            let ranks = parse_ranks(r.as_deref(), all)?;
            let depth = if deep { Depth::Deep } else { Depth::Fast };
            let fixture = match expected {
                Some(path) => Fixture::load(&path).map_err(usage)?,
                None => Fixture::builtin().clone(),
            };
            let report = verify::verify(&ranks, depth, &fixture);
            match format {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => println!("{}", report.to_json()),
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Export { r, out, format } => {
            let p = GossetPolytope::build(&surface(r)?);
            let file = File::create(&out).map_err(|e| {
                eprintln!("error: {}: {e}", out.display());
                ExitCode::FAILURE
            })?;
            export::write(&p, format, file).map_err(|e| {
                eprintln!("error: {}: {e}", out.display());
                ExitCode::FAILURE
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit {
            r,
            class,
            generators,
        } => {
            let s = surface(r)?;
            let seed = parse_class(&s, &class)?;
            let gens = if generators.is_empty() {
                RootBasis::new(&s).roots().to_vec()
            } else {
                generators
                    .iter()
                    .map(|g| parse_class(&s, g))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let orbit = weyl::orbit(&s, &seed, &gens).map_err(usage)?;
            let mut out = io::BufWriter::new(io::stdout().lock());
            let _ = writeln!(out, "{}", orbit.len());
            for d in orbit.iter() {
                let _ = writeln!(out, "{d}");
            }
            let _ = out.flush();
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
