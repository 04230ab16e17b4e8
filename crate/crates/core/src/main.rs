use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lindiff::cli::{exit_code, run, Command, Flags, Format, RankingChoice};

/// Exact linear differential algebra: characteristic sets, dimension
/// polynomials and tangent spaces of differential varieties.
#[derive(Parser)]
#[command(name = "lindiff", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Problem file, or `-` for standard input.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the ranking kind of the file.
    #[arg(long, value_enum)]
    ranking: Option<RankingChoice>,
    /// Also print a basis of M_k for this k.
    #[arg(long = "order-bound", value_name = "K")]
    order_bound: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("lindiff: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let flags = Flags {
        format: args.format,
        ranking: args.ranking,
        order_bound: args.order_bound,
    };
    match run(args.command, &text, &flags) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lindiff: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
