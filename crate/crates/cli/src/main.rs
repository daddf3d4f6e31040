use std::fs;
use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dslice_cli::{
    batch, expect_montesinos, expect_pretzel, expect_seifert, lattice_search_matrix,
    lattice_search_space, montesinos, parse_link_data, parse_matrix, partitions, pretzel,
    render_human, sfs, CliError, CliResult,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "dslice",
    version,
    about = "Seifert space embeddings and double-slice verdicts"
)]
struct Cli {
    /// Render results as indented text instead of JSON
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and embedding verdict of S2(e; p1/q1, ...)
    Sfs { expr: String },
    /// Components, branched cover and slice verdicts of M(e; ...) or P(...)
    Montesinos { expr: String },
    /// Classify a two-component pretzel link P(a, b, c, d)
    Pretzel { expr: String },
    /// Factorizations A^T A = Q of a paired space's plumbing, or of a matrix
    /// given as {"n", "entries"} JSON (inline or a file path)
    LatticeSearch {
        input: String,
        /// number of rows of A for matrix input (default n)
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Quasi-orientations passing the partition filter, from
    /// {"n", "lk", "slice"} JSON (inline or a file path)
    Partitions { input: String },
    /// One result per line of a JSONL file ("-" reads standard input)
    Batch { file: String },
}

fn inline_or_file(input: &str) -> Result<String, CliError> {
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))
}

fn read_lines(file: &str) -> Result<Vec<String>, CliError> {
    let io_err = |e: io::Error| CliError::Input(format!("{file}: {e}"));
    let lines: Vec<String> = if file == "-" {
        io::stdin()
            .lock()
            .lines()
            .collect::<Result<_, _>>()
            .map_err(io_err)?
    } else {
        fs::read_to_string(file)
            .map_err(io_err)?
            .lines()
            .map(str::to_string)
            .collect()
    };
    Ok(lines.into_iter().filter(|l| !l.trim().is_empty()).collect())
}

fn run(command: &Command) -> Result<Vec<Value>, CliError> {
    let one = |r: CliResult| r.map(|v| vec![v]);
    match command {
        Command::Sfs { expr } => Ok(vec![sfs(&expect_seifert(expr)?)]),
        Command::Montesinos { expr } => one(montesinos(&expect_montesinos(expr)?)),
        Command::Pretzel { expr } => one(pretzel(&expect_pretzel(expr)?)),
        Command::LatticeSearch { input, rows } => {
            if input.trim_start().starts_with("S2") || input.trim_start().starts_with("S²") {
                one(lattice_search_space(&expect_seifert(input)?))
            } else {
                one(lattice_search_matrix(
                    &parse_matrix(&inline_or_file(input)?)?,
                    *rows,
                ))
            }
        }
        Command::Partitions { input } => {
            one(partitions(&parse_link_data(&inline_or_file(input)?)?))
        }
        Command::Batch { file } => Ok(batch(&read_lines(file)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = json!({"error": {"kind": "usage", "message": e.to_string().trim()}});
            eprintln!("{msg}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.command) {
        Ok(values) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for v in values {
                let text = if cli.human {
                    render_human(&v).trim_end().to_string()
                } else {
                    v.to_string()
                };
                let _ = writeln!(out, "{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
