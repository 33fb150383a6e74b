use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rbfam_cli::{execute, Command, Format, RunOptions};

/// Exact checks and cohomology for Rota-Baxter family algebras.
///
/// Exit status: 0 all checks pass, 1 a check fails, 2 input error,
/// 3 size guard exceeded.
#[derive(Parser)]
#[command(name = "rbfam", version)]
struct Args {
    command: Command,

    /// JSON manifest; `-` reads standard input.
    manifest: PathBuf,

    /// Top cohomology degree [default: 3].
    #[arg(long, value_name = "N")]
    max_degree: Option<usize>,

    /// Highest arity checked in homotopy identities [default: the arity
    /// carried by the structure, else 3].
    #[arg(long, value_name = "K")]
    max_arity: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Lift the default size guards and coordinate cap.
    #[arg(long)]
    cap_override: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.manifest.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.manifest)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.manifest.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        max_degree: args.max_degree,
        max_arity: args.max_arity,
        format: args.format,
        cap_override: args.cap_override,
    };
    let (out, code) = execute(args.command, &text, &opts);
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
