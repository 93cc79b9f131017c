use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dgres::{parse_window, run, Command, Options};
use dgres_core::{DegreeWindow, Field};

#[derive(Parser)]
#[command(name = "dgres", version, about = "Exact computations with finite-dimensional DG algebras")]
struct Cli {
    command: Command,
    /// Presentation files; later files may refer to sections of earlier ones.
    files: Vec<PathBuf>,
    /// Degree window, e.g. -6:4.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<DegreeWindow>,
    #[arg(long)]
    max_degree: Option<i32>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Q or Fp:<p>; overrides the field declared in the files.
    #[arg(long, value_parser = |s: &str| s.parse::<Field>().map_err(|e| e.to_string()))]
    field: Option<Field>,
    /// Require every product, differential, action and image to be written out.
    #[arg(long)]
    strict: bool,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Vec::new();
    for f in &cli.files {
        match std::fs::read_to_string(f) {
            Ok(text) => inputs.push((f.display().to_string(), text)),
            Err(e) => {
                eprintln!("error: {}: {e}", f.display());
                return ExitCode::from(2);
            }
        }
    }
    if inputs.is_empty() && cli.command != Command::Zigzag {
        eprintln!("error: {} needs at least one input file", cli.command.name());
        return ExitCode::from(2);
    }
    let opts = Options {
        window: cli.window,
        max_degree: cli.max_degree,
        max_n: cli.max_n,
        field: cli.field,
        strict: cli.strict,
    };
    let report = match run(cli.command, &inputs, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = if cli.json { report.json() } else { report.human() };
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
