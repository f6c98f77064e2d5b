use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use antiflex::cli::document::{parse_document, render_document, render_value, Document};
use antiflex::cli::search::{default_grid, Predicate, SearchSpec};
use antiflex::cli::{execute, Command, EXIT_INPUT};
use antiflex::cohomology::DEFAULT_MAX_DEGREE;
use antiflex::deformation::DEFAULT_STRUCTURE_POWER_CAP;
use antiflex::exactla::{parse_rational, Rational};
use antiflex::Error;

#[derive(Parser)]
#[command(name = "antiflex", version, about = "Exact checks on anti-flexible algebras and their operators")]
struct Cli {
    /// Emit a single JSON object instead of a text table.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Top,
}

#[derive(Args, Clone)]
struct Input {
    #[arg(long)]
    fixture: PathBuf,
}

#[derive(Subcommand)]
enum Top {
    /// Identity checks on the document's objects.
    Check {
        #[command(subcommand)]
        what: CheckKind,
    },
    /// Maurer-Cartan checks: the structure itself, or an operator with --op.
    McCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: Option<String>,
    },
    /// Dimensions of the cochain complex of a Rota-Baxter operator.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Infinitesimal deformations of an algebra with a bimodule.
    Deform {
        #[command(subcommand)]
        what: DeformKind,
    },
    /// Brackets in the graded Lie algebra of cochains.
    Glie {
        #[command(subcommand)]
        what: GlieKind,
    },
    /// Exhaustive bounded enumeration.
    Search {
        #[command(subcommand)]
        what: SearchKind,
    },
    /// Print the canonical rendering of a document.
    Render {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    Algebra {
        #[command(flatten)]
        input: Input,
    },
    Bimodule {
        #[command(flatten)]
        input: Input,
    },
    Rb {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: String,
    },
    Nijenhuis {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: String,
    },
    /// --ops N,S
    NijStructure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ops: String,
        #[arg(long, default_value_t = DEFAULT_STRUCTURE_POWER_CAP)]
        power_cap: usize,
    },
    /// --ops T,N,S
    On {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ops: String,
    },
    /// --ops T,T',PHI,PSI with T' on the target section.
    Morphism {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ops: String,
    },
}

#[derive(Subcommand)]
enum DeformKind {
    /// The trivial deformation of a Nijenhuis structure, --ops N,S.
    Generate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ops: String,
    },
    /// Validate the document's deformation section.
    Verify {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum GlieKind {
    /// The derived bracket of two operators, --ops P,Q.
    Bracket {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ops: String,
    },
}

#[derive(Args)]
struct Grid {
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Conjunction such as "anti-flexible AND NOT associative".
    #[arg(long)]
    predicate: String,
    #[arg(long, default_value_t = 20)]
    limit: usize,
}

#[derive(Subcommand)]
enum SearchKind {
    Algebras {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        grid: Grid,
    },
    Operators {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        grid: Grid,
    },
}

fn split_ops<const K: usize>(ops: &str) -> Result<[String; K], Error> {
    let parts: Vec<String> = ops.split(',').map(|s| s.trim().to_string()).collect();
    parts
        .try_into()
        .map_err(|_| Error::Usage(format!("--ops expects {K} comma-separated names")))
}

fn parse_grid(coeffs: &Option<String>) -> Result<Vec<Rational>, Error> {
    match coeffs {
        None => Ok(default_grid()),
        Some(text) => text
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| Error::Usage(e.to_string())))
            .collect(),
    }
}

fn load(input: &Input) -> Result<Document, Error> {
    let path = input.fixture.display().to_string();
    let text = std::fs::read_to_string(&input.fixture).map_err(|e| Error::Parse {
        path,
        message: e.to_string(),
    })?;
    parse_document(&text)
}

/// Translates arguments into a command and the document it reads.
fn resolve(top: Top) -> Result<(Command, Option<Document>), Error> {
    let with = |input: &Input, c: Command| Ok((c, Some(load(input)?)));
    match top {
        Top::Check { what } => match what {
            CheckKind::Algebra { input } => with(&input, Command::CheckAlgebra),
            CheckKind::Bimodule { input } => with(&input, Command::CheckBimodule),
            CheckKind::Rb { input, op } => with(&input, Command::CheckRb { op }),
            CheckKind::Nijenhuis { input, op } => with(&input, Command::CheckNijenhuis { op }),
            CheckKind::NijStructure {
                input,
                ops,
                power_cap,
            } => {
                let [n, s] = split_ops(&ops)?;
                with(&input, Command::CheckNijStructure { n, s, power_cap })
            }
            CheckKind::On { input, ops } => {
                let [t, n, s] = split_ops(&ops)?;
                with(&input, Command::CheckOn { t, n, s })
            }
            CheckKind::Morphism { input, ops } => {
                let [t, t2, phi, psi] = split_ops(&ops)?;
                with(&input, Command::CheckMorphism { t, t2, phi, psi })
            }
        },
        Top::McCheck { input, op } => with(&input, Command::McCheck { op }),
        Top::Cohomology {
            input,
            op,
            max_degree,
        } => with(&input, Command::Cohomology { op, max_degree }),
        Top::Deform { what } => match what {
            DeformKind::Generate { input, ops } => {
                let [n, s] = split_ops(&ops)?;
                with(&input, Command::DeformGenerate { n, s })
            }
            DeformKind::Verify { input } => with(&input, Command::DeformVerify),
        },
        Top::Glie {
            what: GlieKind::Bracket { input, ops },
        } => {
            let [p, q] = split_ops(&ops)?;
            with(&input, Command::GlieBracket { p, q })
        }
        Top::Search { what } => match what {
            SearchKind::Algebras { dim, grid } => Ok((
                Command::SearchAlgebras(SearchSpec {
                    dim,
                    grid: parse_grid(&grid.coeffs)?,
                    predicate: grid.predicate.parse::<Predicate>()?,
                    limit: grid.limit,
                }),
                None,
            )),
            SearchKind::Operators { input, grid } => with(
                &input,
                Command::SearchOperators {
                    grid: parse_grid(&grid.coeffs)?,
                    predicate: grid.predicate.parse::<Predicate>()?,
                    limit: grid.limit,
                },
            ),
        },
        Top::Render { .. } => unreachable!("handled in main"),
    }
}

fn input_error(json: bool, e: &Error) -> ExitCode {
    if json {
        print!("{}", render_value(&json!({ "error": e.to_string() })));
    }
    eprintln!("antiflex: {e}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Top::Render { input } = &cli.command {
        return match load(input) {
            Ok(doc) => {
                print!("{}", render_document(&doc));
                ExitCode::SUCCESS
            }
            Err(e) => input_error(cli.json, &e),
        };
    }
    let start = Instant::now();
    let (command, doc) = match resolve(cli.command) {
        Ok(x) => x,
        Err(e) => return input_error(cli.json, &e),
    };
    let mut progress = |seen: u128, total: u128| {
        if total > 1 << 20 {
            eprintln!("searched {seen}/{total}");
        }
    };
    let mut report = match execute(&command, doc.as_ref(), &mut progress) {
        Ok(r) => r,
        Err(e) => return input_error(cli.json, &e),
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    if cli.json {
        print!("{}", render_value(&report.to_json()));
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
