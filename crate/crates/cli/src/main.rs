use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fspecial::Limits;
use fspecial_cli::{exit_code, parse_problem, parse_ring, run_command, Command, ProblemFile};

#[derive(Parser)]
#[command(
    name = "fspecial",
    version,
    about = "Frobenius-special primes over F_p"
)]
struct Cli {
    /// Problem file with a ring declaration and named objects.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Ring declaration, e.g. "p=2 vars=x,y order=grevlex"; overrides the file.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Print branch decisions as lines starting with `#`.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, env = "FSPECIAL_MAX_GB")]
    max_gb: Option<usize>,
    /// Cap on star-closure, stable-kernel and worklist iterations.
    #[arg(long, global = true, env = "FSPECIAL_MAX_ITER")]
    max_iter: Option<usize>,
    #[arg(long, global = true, env = "FSPECIAL_THREADS")]
    threads: Option<usize>,
    /// Also write the result in problem-file syntax.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of an ideal or of a matrix's column span.
    Gb {
        #[arg(long = "I")]
        ideal: Option<String>,
    },
    /// Minimal primes of an ideal.
    Minprimes {
        #[arg(long = "I")]
        ideal: Option<String>,
    },
    /// I_e of an ideal or submodule.
    Ie {
        #[arg(long = "K")]
        module: Option<String>,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Star-closure of V under U.
    Star {
        #[arg(long = "V")]
        module: Option<String>,
        #[arg(long = "U")]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Stable kernel of U.
    Stablek {
        #[arg(long = "U")]
        matrix: Option<String>,
    },
    /// (I^[p^e] : I).
    Fedder {
        #[arg(long = "I")]
        ideal: Option<String>,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Compatible primes of u not containing I_e(uR).
    Ks {
        #[arg(long)]
        u: Option<String>,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Work away from the zero set of this element.
        #[arg(long)]
        localize: Option<String>,
    },
    /// U-special primes with nonzero stable kernel modulo P.
    Kz {
        #[arg(long = "U")]
        matrix: Option<String>,
    },
    /// Primes of positive corank for root data (A, U).
    Corank {
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long = "U")]
        matrix: Option<String>,
    },
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Gb { ideal } => Command::Gb { ideal },
            Cmd::Minprimes { ideal } => Command::MinPrimes { ideal },
            Cmd::Ie { module, e } => Command::Ie { module, e },
            Cmd::Star { module, matrix, e } => Command::Star { module, matrix, e },
            Cmd::Stablek { matrix } => Command::StableK { matrix },
            Cmd::Fedder { ideal, e } => Command::Fedder { ideal, e },
            Cmd::Ks { u, e, localize } => Command::Ks { u, e, localize },
            Cmd::Kz { matrix } => Command::Kz { matrix },
            Cmd::Corank { a, matrix } => Command::Corank { a, matrix },
        }
    }
}

fn load(cli: &Cli) -> fspecial::Result<ProblemFile> {
    let mut pf = match &cli.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                fspecial::Error::Precondition(format!("cannot read {}: {e}", path.display()))
            })?;
            Some(parse_problem(&text)?)
        }
        None => None,
    };
    if let Some(r) = &cli.ring {
        let ring = parse_ring(r, 1)?;
        pf = Some(match pf {
            Some(old) if *old.ring == *ring => old,
            Some(_) => {
                return Err(fspecial::Error::Precondition(
                    "--ring disagrees with the problem file".into(),
                ))
            }
            None => ProblemFile::empty(ring),
        });
    }
    pf.ok_or_else(|| fspecial::Error::Precondition("no ring: pass --file or --ring".into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let pf = match load(&cli) {
        Ok(pf) => pf,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let mut limits = Limits::default();
    if let Some(g) = cli.max_gb {
        limits.max_gb = g;
    }
    if let Some(n) = cli.max_iter {
        limits.star_cap = n;
        limits.kernel_cap = n;
        limits.max_expansions = n;
    }
    let out = run_command(&pf, &cli.cmd.into(), limits, cli.trace);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    if out.code == 0 {
        if let Some(path) = &cli.out {
            if let Err(e) = std::fs::write(path, &out.record) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::from(out.code as u8)
}
