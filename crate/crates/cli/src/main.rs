use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopfcx_cli::{list_instances, run_audit, run_verify, ConventionSpec, Manifest, Outcome, EXIT_MANIFEST};

#[derive(Parser)]
#[command(
    name = "hopfcx",
    version,
    about = "Verify complex structures on induced Hopf bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full check suite on one instance.
    Verify(RunArgs),
    /// Enumerate the sign-convention lattice of a bundle instance.
    Audit(RunArgs),
    /// Print the instance catalog.
    ListInstances,
}

#[derive(Args)]
struct RunArgs {
    /// JSON manifest; command-line flags override its fields.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Convention lattice index (0 is the default convention).
    #[arg(long)]
    convention: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Tangent pairs per sample point.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn manifest(&self) -> Result<Manifest, String> {
        let mut m = match (&self.manifest, &self.instance) {
            (Some(path), _) => Manifest::load(path).map_err(|e| e.to_string())?,
            (None, Some(name)) => Manifest::new(name),
            (None, None) => return Err("either --manifest or --instance is required".into()),
        };
        if let Some(name) = &self.instance {
            m.instance = name.clone();
        }
        if self.n.is_some() {
            m.n = self.n;
        }
        if let Some(c) = self.convention {
            m.convention = ConventionSpec::Index(c);
        }
        m.samples = self.samples.unwrap_or(m.samples);
        m.pairs = self.pairs.unwrap_or(m.pairs);
        m.seed = self.seed.unwrap_or(m.seed);
        m.tol = self.tol.unwrap_or(m.tol);
        m.workers = self.workers.unwrap_or(m.workers);
        Ok(m)
    }
}

fn finish(outcome: Outcome, to_stdout: bool) -> ExitCode {
    if to_stdout {
        if let Some(doc) = &outcome.document {
            print!("{doc}");
        }
    }
    eprint!("{}", outcome.summary);
    if !outcome.summary.ends_with('\n') {
        eprintln!();
    }
    ExitCode::from(outcome.code as u8)
}

fn run(args: RunArgs, audit: bool) -> ExitCode {
    let m = match args.manifest() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_MANIFEST as u8);
        }
    };
    let out = args.out.as_deref();
    let outcome = if audit { run_audit(&m, out) } else { run_verify(&m, out) };
    finish(outcome, out.is_none())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::ListInstances => {
            print!("{}", list_instances());
            ExitCode::SUCCESS
        }
        Command::Verify(args) => run(args, false),
        Command::Audit(args) => run(args, true),
    }
}
