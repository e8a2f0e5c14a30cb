use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use tjkss::invariant::warnings;
use tjkss::moves::random_walk_trace;
use tjkss::{
    double_cover, jkss, parse_diagram, random_diagram, selftest, twisted_jkss, DiagramError,
    InvariantError, InvariantValue, TwistedDiagram,
};

/// JKSS invariants of virtual and twisted link diagrams.
#[derive(Parser)]
#[command(name = "tjkss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant of each diagram file, one line per file, in order.
    Compute {
        /// Diagram files; `-` reads standard input.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        form: Form,
        /// Compute the virtual invariant instead; the diagram must have no
        /// odd bar counts.
        #[arg(long = "virtual")]
        virtual_: bool,
    },
    /// Write the double covering diagram.
    Cover {
        file: PathBuf,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare twisted invariants up to a power of x.
    Compare { first: PathBuf, second: PathBuf },
    /// Print a seeded random diagram.
    Random {
        #[arg(long, default_value_t = 4)]
        crossings: usize,
        #[arg(long, default_value_t = 0)]
        bars: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply seeded random moves and print the result.
    Walk {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List the applied moves on standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Run the randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct Form {
    /// Print the determinant exactly as computed.
    #[arg(long)]
    raw: bool,
    /// Print the representative with least x-exponent 0 (default).
    #[arg(long)]
    canonical: bool,
}

enum Failure {
    Usage(String),
    Semantic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Semantic(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Semantic(m) => m,
        }
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("<stdin>: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn diagram_failure(path: &Path, e: DiagramError) -> Failure {
    let msg = format!("{}: {e}", path.display());
    match e {
        DiagramError::Syntax { .. } => Failure::Usage(msg),
        _ => Failure::Semantic(msg),
    }
}

fn load(path: &Path) -> Result<TwistedDiagram, Failure> {
    let d = parse_diagram(&read_source(path)?).map_err(|e| diagram_failure(path, e))?;
    for w in warnings(&d) {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(d)
}

fn invariant(path: &Path, virtual_: bool) -> Result<InvariantValue, Failure> {
    let d = load(path)?;
    let value = if virtual_ { jkss(&d) } else { twisted_jkss(&d) };
    value.map_err(|e: InvariantError| Failure::Semantic(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute {
            files,
            form,
            virtual_,
        } => {
            let stdin_uses = files.iter().filter(|f| f.as_os_str() == "-").count();
            if stdin_uses > 1 {
                return Err(Failure::Usage("`-` may be given at most once".into()));
            }
            let results: Vec<Result<InvariantValue, Failure>> =
                files.par_iter().map(|f| invariant(f, virtual_)).collect();
            let mut text = String::new();
            let mut first_error = None;
            for r in results {
                match r {
                    Ok(v) => {
                        let p = if form.raw { &v.raw } else { &v.canonical };
                        text.push_str(&format!("{p}\n"));
                    }
                    Err(e) => {
                        eprintln!("error: {}", e.message());
                        first_error.get_or_insert(e);
                    }
                }
            }
            emit(&text)?;
            // already reported above
            match first_error {
                Some(Failure::Usage(_)) => Err(Failure::Usage(String::new())),
                Some(Failure::Semantic(_)) => Err(Failure::Semantic(String::new())),
                None => Ok(()),
            }
        }
        Command::Cover { file, output } => {
            let d = load(&file)?;
            let cover = double_cover(&d).map_err(|e| diagram_failure(&file, e))?;
            match output {
                Some(path) => fs::write(&path, cover.to_string())
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
                None => emit(&cover.to_string()),
            }
        }
        Command::Compare { first, second } => {
            let a = invariant(&first, false)?;
            let b = invariant(&second, false)?;
            emit(if a.equivalent(&b) {
                "EQUAL_UP_TO_X_POWER\n"
            } else {
                "DISTINCT\n"
            })
        }
        Command::Random {
            crossings,
            bars,
            seed,
        } => emit(&random_diagram(crossings, bars, seed).to_string()),
        Command::Walk {
            file,
            steps,
            seed,
            trace,
        } => {
            let d = load(&file)?;
            let walk =
                random_walk_trace(&d, steps, seed).map_err(|e| Failure::Semantic(e.to_string()))?;
            if trace {
                for (site, _) in &walk {
                    eprintln!("{site}");
                }
            }
            let last = walk.last().map_or(&d, |(_, d)| d);
            emit(&last.to_string())
        }
        Command::Selftest { seed, count } => {
            let report = selftest::run(seed, count);
            emit(&report.to_string())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Semantic("property violations found".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message().is_empty() {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
