use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod example;

use commands::Report;

#[derive(Parser)]
#[command(name = "udmg", version, about = "Universally decodable matrices of genus g")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel enumerations; UDMG_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the UDMG property of a matrix-set file.
    Verify {
        matrixset: PathBuf,
        /// Genus to verify at; defaults to the file's "g".
        #[arg(long)]
        genus: Option<usize>,
        /// Also report the least genus at which the set verifies.
        #[arg(long)]
        min_genus: bool,
    },
    /// Build a Goppa UDMG from a construction file.
    Construct {
        constructionfile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quotient by the sub-UDMG of the given lengths.
    Quotient {
        matrixset: PathBuf,
        /// Comma-separated truncation lengths N'_1,...,N'_L.
        #[arg(long, value_name = "N1,...,NL")]
        truncate: String,
        /// Write the quotient as a matrix-set file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The first-column linear code.
    Code {
        matrixset: PathBuf,
        /// Compute the minimum distance by exhaustive scan.
        #[arg(long)]
        min_distance: bool,
    },
    /// Upper bounds on the number of matrices.
    #[allow(non_snake_case)]
    Bounds {
        #[arg(long = "K")]
        K: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: usize,
        #[arg(long, value_name = "N1,...,NL")]
        lengths: Option<String>,
        #[arg(long, value_name = "n,k,s")]
        nks: Option<String>,
    },
    /// Gapped-PAM code scheme of a square UDMG.
    Modulate {
        matrixset: PathBuf,
        /// Exact average SNR and its sandwich bounds.
        #[arg(long)]
        snr: bool,
        /// Product-distance audit over all message pairs.
        #[arg(long)]
        audit: bool,
        /// Complexified scheme on W x W.
        #[arg(long)]
        complexify: bool,
    },
    /// Gap check, SNR sandwich and product-distance audit for a scheme.
    Audit { matrixset: PathBuf },
    /// Regenerate the genus-1 F_5 fixtures and check them end to end.
    ExamplePaper {
        /// Directory to write the fixture files into.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, String> {
    match std::env::var("UDMG_THREADS") {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| format!("UDMG_THREADS: expected a positive integer, got {v:?}"))
        }
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    match cli.command {
        Command::Verify { matrixset, genus, min_genus } => commands::verify(&matrixset, genus, min_genus),
        Command::Construct { constructionfile, output } => commands::construct(&constructionfile, &output),
        Command::Quotient { matrixset, truncate, output } => {
            commands::quotient(&matrixset, &truncate, output.as_deref())
        }
        Command::Code { matrixset, min_distance } => commands::code(&matrixset, min_distance),
        Command::Bounds { K, q, g, lengths, nks } => commands::bounds(K, q, g, lengths.as_deref(), nks.as_deref()),
        Command::Modulate { matrixset, snr, audit, complexify } => {
            commands::modulate(&matrixset, snr, audit, complexify)
        }
        Command::Audit { matrixset } => commands::audit(&matrixset),
        Command::ExamplePaper { out_dir } => example::run(out_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = threads.filter(|&n| n > 0) {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports are plain JSON"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
