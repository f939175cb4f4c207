//! `cubeknot` command-line tool.
//!
//! Exit status: 0 on success, 1 on a domain error (invalid knot, move that
//! does not apply, search that finds nothing), 2 on a usage error. Error
//! lines on stderr start with `error:`.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubeknot::catalog;
use cubeknot::diagram::{build_diagram_with, export_plot, format_gauss, format_pd, gauss_code, pd_code, writhe};
use cubeknot::invariants::{colorings, determinant, jones_from_pd, InvariantError, DEFAULT_CROSSING_CAP};
use cubeknot::lattice::{parse_knot, CubicKnot, KnotFormat};
use cubeknot::moves::{apply_m1, apply_m2, enumerate_m2, MoveCertificate, MoveM2};
use cubeknot::search::{check_certificate, find_certificate_with, SearchBudget, SearchOutcome};
use cubeknot::Execution;

/// Plot export precision override (significant digits).
const PRECISION_ENV: &str = "CUBEKNOT_PLOT_DIGITS";
const DEFAULT_PLOT_DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "cubeknot", version, about = "Cubic lattice knots: moves, diagrams, invariants, certificates")]
struct Cli {
    /// Worker threads for data-parallel steps; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a knot file.
    Validate { file: String },
    /// Rewrite a knot in the other text format.
    Convert {
        #[arg(long, value_enum)]
        to: Format,
        file: String,
    },
    /// List or apply M2 moves.
    #[command(subcommand)]
    Move(MoveCmd),
    /// Apply M1 with factor m.
    Subdivide {
        #[arg(short, long)]
        m: u32,
        file: String,
    },
    /// Export the projected diagram as plot records.
    Project { file: String },
    /// Print the Gauss or PD code.
    Diagram {
        #[arg(long, value_enum, default_value = "gauss")]
        format: DiagramFormat,
        file: String,
    },
    /// Compute an invariant.
    Invariant {
        #[arg(long, value_enum)]
        which: Which,
        /// Modulus for `colorP`.
        #[arg(long)]
        p: Option<u64>,
        /// Crossing cap for `jones`.
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
        file: String,
    },
    /// Search for a move certificate between two knots.
    Equiv {
        file1: String,
        file2: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay a certificate and check that it ends at the second knot.
    Verify {
        file1: String,
        cert: String,
        file2: String,
        /// Require matching orientation too.
        #[arg(long)]
        oriented: bool,
    },
    /// List the built-in knots or print one.
    Catalog {
        name: Option<String>,
        #[arg(long, value_enum, default_value = "vertices")]
        to: Format,
    },
}

#[derive(Subcommand)]
enum MoveCmd {
    /// Every applicable M2 move, one per line.
    List { file: String },
    /// Apply one move, e.g. `1to3 0 Z+`, `3to1 4`, `swap 2`.
    Apply {
        file: String,
        #[arg(num_args = 1.., required = true, allow_hyphen_values = true)]
        spec: Vec<String>,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = cubeknot::search::DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Word-length ceiling.
    #[arg(long)]
    max_length: Option<usize>,
    /// Extent ceiling as `X,Y,Z`.
    #[arg(long = "box", value_parser = parse_box)]
    bounding_box: Option<[i64; 3]>,
    /// Subdivision factors to try on the first knot, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    m1: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Vertices,
    Word,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Gauss,
    Pd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Writhe,
    #[value(name = "color3")]
    Color3,
    #[value(name = "colorP")]
    ColorP,
    Det,
    Jones,
}

fn parse_box(s: &str) -> Result<[i64; 3], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad extent `{t}`")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, z] if x >= 0 && y >= 0 && z >= 0 => Ok([x, y, z]),
        _ => Err("expected three non-negative extents X,Y,Z".into()),
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    res.map_err(|e| Failure::Domain(format!("{path}: {e}")))
}

fn load(path: &str) -> Result<(CubicKnot, KnotFormat), Failure> {
    let text = read_input(path)?;
    parse_knot(&text).map_err(|e| Failure::Domain(format!("{path}: {e}")))
}

fn render(k: &CubicKnot, f: KnotFormat) -> String {
    match f {
        KnotFormat::Vertices => k.to_vertex_text(),
        KnotFormat::Word => k.to_word_text(),
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn run(cli: Cli, exec: Execution) -> Outcome {
    match cli.cmd {
        Cmd::Validate { file } => {
            let (k, _) = load(&file)?;
            Ok(format!("ok {} edges\n", k.len()))
        }
        Cmd::Convert { to, file } => {
            let (k, _) = load(&file)?;
            Ok(render(&k, to.into()))
        }
        Cmd::Move(MoveCmd::List { file }) => {
            let (k, _) = load(&file)?;
            Ok(enumerate_m2(&k).iter().map(|m| format!("{m}\n")).collect())
        }
        Cmd::Move(MoveCmd::Apply { file, spec }) => {
            let (k, f) = load(&file)?;
            let mv: MoveM2 = spec.join(" ").parse().map_err(Failure::Usage)?;
            let out = apply_m2(&k, mv).map_err(domain)?;
            Ok(render(&out, f))
        }
        Cmd::Subdivide { m, file } => {
            let (k, f) = load(&file)?;
            if m < 2 {
                return Err(Failure::Usage(format!("subdivision factor must be at least 2, got {m}")));
            }
            Ok(render(&apply_m1(&k, m).map_err(domain)?, f))
        }
        Cmd::Project { file } => {
            let (k, _) = load(&file)?;
            let digits = match std::env::var(PRECISION_ENV) {
                Ok(v) => v
                    .parse::<usize>()
                    .ok()
                    .filter(|&d| (1..=40).contains(&d))
                    .ok_or_else(|| Failure::Usage(format!("{PRECISION_ENV} must be 1..=40, got `{v}`")))?,
                Err(_) => DEFAULT_PLOT_DIGITS,
            };
            let d = build_diagram_with(&k, exec).map_err(domain)?;
            Ok(export_plot(&d, digits))
        }
        Cmd::Diagram { format, file } => {
            let (k, _) = load(&file)?;
            let d = build_diagram_with(&k, exec).map_err(domain)?;
            Ok(match format {
                DiagramFormat::Gauss => format_gauss(&gauss_code(&d)) + "\n",
                DiagramFormat::Pd => format_pd(&pd_code(&d)),
            })
        }
        Cmd::Invariant { which, p, cap, file } => {
            let (k, _) = load(&file)?;
            let d = build_diagram_with(&k, exec).map_err(domain)?;
            let coloring = |p: u64| -> Outcome {
                match colorings(&d, p) {
                    Ok(c) => Ok(format!("{}\n", c.count)),
                    Err(e @ InvariantError::NotOddPrime(_)) => Err(Failure::Usage(e.to_string())),
                    Err(e) => Err(domain(e)),
                }
            };
            match which {
                Which::Writhe => Ok(format!("{}\n", writhe(&d))),
                Which::Color3 => coloring(3),
                Which::ColorP => coloring(p.ok_or_else(|| Failure::Usage("colorP needs --p".into()))?),
                Which::Det => Ok(format!("{}\n", determinant(&d))),
                Which::Jones => {
                    let j = jones_from_pd(&pd_code(&d), writhe(&d), cap, exec).map_err(domain)?;
                    Ok(format!("{j}\n"))
                }
            }
        }
        Cmd::Equiv { file1, file2, budget } => {
            let (k1, _) = load(&file1)?;
            let (k2, _) = load(&file2)?;
            let b = SearchBudget {
                max_states: budget.max_states,
                max_length: budget.max_length,
                bounding_box: budget.bounding_box,
                m1_factors: budget.m1,
            };
            match find_certificate_with(&k1, &k2, &b, exec).map_err(|e| Failure::Usage(e.to_string()))? {
                SearchOutcome::Found { certificate, .. } => Ok(certificate.to_text()),
                SearchOutcome::NotFound { reason, stats } => Err(Failure::Domain(format!(
                    "no certificate within budget ({reason:?}; {stats}); this does not show the knots differ"
                ))),
            }
        }
        Cmd::Verify { file1, cert, file2, oriented } => {
            let (k1, _) = load(&file1)?;
            let (k2, _) = load(&file2)?;
            let text = read_input(&cert)?;
            let c = MoveCertificate::parse(&text).map_err(|e| Failure::Domain(format!("{cert}: {e}")))?;
            check_certificate(&k1, &c, &k2, oriented).map_err(domain)?;
            Ok(format!("ok {} steps\n", c.len()))
        }
        Cmd::Catalog { name: None, .. } => Ok(catalog::catalog()
            .iter()
            .map(|e| format!("{}\t{}\t{}\n", e.name, e.knot.len(), e.provenance))
            .collect()),
        Cmd::Catalog { name: Some(n), to } => {
            let e = catalog::lookup(&n).ok_or_else(|| Failure::Usage(format!("unknown catalog entry `{n}`")))?;
            Ok(render(&e.knot, to.into()))
        }
    }
}

impl From<Format> for KnotFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Vertices => KnotFormat::Vertices,
            Format::Word => KnotFormat::Word,
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Result<Execution, Failure> {
    match threads {
        None => Ok(Execution::default()),
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Execution::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Execution::Sequential),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.threads).and_then(|exec| run(cli, exec));
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
