use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use plcw::algebra::{boundary_multiset, format_homology, homology, OrientedCell};
use plcw::constructions::{cone, join, product, standard};
use plcw::io::{
    face_poset_dot, parse_complex, parse_script, print_complex, print_script, print_shorthand,
};
use plcw::moves::{apply_script, search_equivalence, triangulate};
use plcw::{are_isomorphic, validate, Complex};

#[derive(Parser)]
#[command(
    name = "plcw",
    version,
    about = "Build, check and transform PLCW complexes"
)]
struct Cli {
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant of a complex.
    Validate { file: PathBuf },
    /// f-vector, Euler characteristic, homology and top-cell boundaries.
    Info { file: PathBuf },
    /// Apply a move script.
    Apply {
        file: PathBuf,
        script: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a script takes FILE to a complex isomorphic to EXPECTED.
    Verify {
        file: PathBuf,
        script: PathBuf,
        expected: PathBuf,
    },
    /// Triangulate by two passes of radial subdivision.
    Triangulate {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The product of two complexes.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The join of two complexes.
    Join {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The cone over a complex.
    Cone {
        a: PathBuf,
        /// Label of the apex.
        #[arg(long)]
        apex: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a script of elementary subdivisions and erasures from A to B.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_moves: usize,
    },
    /// Print a complex from the built-in library.
    Standard {
        name: String,
        /// Dimension or number of sides, where the complex needs one.
        param: Option<usize>,
        /// Use the polygon shorthand where possible.
        #[arg(long)]
        shorthand: bool,
    },
    /// The face poset in Graphviz DOT.
    ExportPoset { file: PathBuf },
}

/// A failure and the exit code it maps to.
enum Fail {
    /// Validation or verification failed.
    Check(String),
    /// Bad usage, unreadable or unparsable input.
    Usage(String),
}

type Outcome = Result<(), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

/// Reads and validates a complex.
fn load(path: &Path) -> Result<Complex, Fail> {
    let k =
        parse_complex(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    let report = validate(&k);
    if let Some(first) = report.issues.first() {
        return Err(Fail::Check(format!(
            "{}: invalid complex: {first}",
            path.display()
        )));
    }
    Ok(k)
}

fn emit(k: &Complex, output: Option<&Path>) -> Outcome {
    let text = print_complex(k);
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let log = |msg: &str| {
        if cli.verbose {
            eprintln!("{msg}");
        }
    };
    match &cli.command {
        Command::Validate { file } => {
            let k = parse_complex(&read(file)?)
                .map_err(|e| Fail::Usage(format!("{}: {e}", file.display())))?;
            let report = validate(&k);
            if report.is_valid() {
                println!("valid");
                if !report.exact {
                    println!(
                        "note: boundary models of dimension {} checked partially",
                        report.max_model_dim
                    );
                }
                Ok(())
            } else {
                for i in &report.issues {
                    eprintln!("{i}");
                }
                Err(Fail::Check(format!("{} issue(s)", report.issues.len())))
            }
        }
        Command::Info { file } => {
            let k = load(file)?;
            println!("f = {}", k.f_vector());
            println!("chi = {}", k.euler_characteristic());
            println!("H = {}", format_homology(&homology(&k)));
            if let Ok(top) = usize::try_from(k.dimension()) {
                for c in k.cells_of_dim(top).filter(|_| top > 0) {
                    let b = boundary_multiset(&k, OrientedCell::positive(c))
                        .expect("positive dimension");
                    println!("d{} = {}", k.name(c), b.display(&k));
                }
            }
            Ok(())
        }
        Command::Apply {
            file,
            script,
            output,
        } => {
            let k = load(file)?;
            let s = parse_script(&read(script)?, &k)
                .map_err(|e| Fail::Usage(format!("{}: {e}", script.display())))?;
            let (end, _) = apply_script(&k, &s).map_err(|e| Fail::Check(e.to_string()))?;
            log(&format!("applied {} move(s)", s.len()));
            emit(&end, output.as_deref())
        }
        Command::Verify {
            file,
            script,
            expected,
        } => {
            let k = load(file)?;
            let want = load(expected)?;
            let s = parse_script(&read(script)?, &k)
                .map_err(|e| Fail::Check(format!("{}: {e}", script.display())))?;
            let (end, _) = apply_script(&k, &s).map_err(|e| Fail::Check(e.to_string()))?;
            if are_isomorphic(&end, &want).is_some() {
                println!(
                    "ok: {} move(s), result isomorphic to {}",
                    s.len(),
                    expected.display()
                );
                Ok(())
            } else {
                Err(Fail::Check(format!(
                    "result f = {} is not isomorphic to {} (f = {})",
                    end.f_vector(),
                    expected.display(),
                    want.f_vector()
                )))
            }
        }
        Command::Triangulate { file, output } => {
            let k = load(file)?;
            let (t, trace) = triangulate(&k).map_err(|e| Fail::Check(e.to_string()))?;
            log(&format!("{} radial subdivision(s)", trace.len()));
            emit(&t, output.as_deref())
        }
        Command::Product { a, b, output } => {
            emit(&product(&load(a)?, &load(b)?), output.as_deref())
        }
        Command::Join { a, b, output } => emit(&join(&load(a)?, &load(b)?), output.as_deref()),
        Command::Cone { a, apex, output } => {
            emit(&cone(&load(a)?, apex.as_deref()), output.as_deref())
        }
        Command::Equiv { a, b, max_moves } => {
            let (ka, kb) = (load(a)?, load(b)?);
            match search_equivalence(&ka, &kb, *max_moves) {
                Some(s) => {
                    log(&format!("found {} move(s)", s.len()));
                    print!("{}", print_script(&ka, &s).expect("found scripts replay"));
                    Ok(())
                }
                None => Err(Fail::Check(format!("no script within {max_moves} move(s)"))),
            }
        }
        Command::Standard {
            name,
            param,
            shorthand,
        } => {
            let k = standard(name, *param).map_err(|e| Fail::Usage(e.to_string()))?;
            let text = if *shorthand {
                print_shorthand(&k).map_err(|e| Fail::Usage(format!("{name}: {e}")))?
            } else {
                print_complex(&k)
            };
            print!("{text}");
            Ok(())
        }
        Command::ExportPoset { file } => {
            print!("{}", face_poset_dot(&load(file)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
