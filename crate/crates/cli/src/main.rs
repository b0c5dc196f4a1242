use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dhom_cli::{run, Command, Format, Options};

/// Computations for d-homological pairs given by bound quiver algebras.
#[derive(Parser)]
#[command(name = "dhom", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Spec file, built-in fixture name, or nakayama-N-L-D.
    spec: String,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Also list the zero subcategory.
    #[arg(long)]
    include_zero: bool,
    #[arg(long, env = "DHOM_DIM_CAP", default_value_t = dhom_core::modcat::DEFAULT_DIM_CAP)]
    dim_cap: usize,
    /// Maximal number of terms in the derived search.
    #[arg(long)]
    window: Option<usize>,
    /// Name map overriding the one next to the spec.
    #[arg(long)]
    names: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { include_zero: cli.include_zero, dim_cap: cli.dim_cap, window: cli.window, names: cli.names };
    match run(cli.command, &cli.spec, &opts) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
