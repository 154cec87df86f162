use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkage_core::{Budget, Field};
use linkage_lab::{parse_session, render_text, run_session, Options};

#[derive(Parser)]
#[command(name = "linkage-lab", version, about = "Verify linkage, reduction and multiplicity statements")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args, Clone)]
struct Flags {
    /// Largest reduction number searched.
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    /// Largest power used for Hilbert-Samuel functions.
    #[arg(long, default_value_t = linkage_core::invariants::DEFAULT_S_MAX)]
    smax: usize,
    /// Truncation depth of the canonical-module colon (default g + 2).
    #[arg(long)]
    jdepth: Option<usize>,
    /// Number of canonical components compared (default g + 2).
    #[arg(long)]
    kmax: Option<usize>,
    /// Coefficient field for every ring: QQ or FF(p).
    #[arg(long)]
    field: Option<Field>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one session script.
    Run {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print nothing but errors.
        #[arg(long, short)]
        quiet: bool,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run every `.lnk` script in a directory.
    CheckAll {
        dir: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
}

fn options(flags: &Flags) -> Options {
    Options {
        budget: Budget {
            n_max: flags.nmax,
            s_max: flags.smax,
            j_depth: flags.jdepth,
            k_max: flags.kmax,
        },
        field: flags.field,
    }
}

fn run_file(path: &Path, opts: &Options) -> (i32, Option<serde_json::Value>) {
    let src = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return (2, None);
        }
    };
    let session = match parse_session(&src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            return (2, None);
        }
    };
    let outcome = run_session(&session, opts);
    (outcome.exit_code, Some(outcome.report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Cmd::Run {
            file,
            json,
            quiet,
            flags,
        } => {
            let (code, report) = run_file(&file, &options(&flags));
            if let Some(report) = report {
                if !quiet {
                    print!("{}", render_text(&report));
                }
                if let Some(out) = json {
                    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
                    if let Err(e) = fs::write(&out, text) {
                        eprintln!("{}: {e}", out.display());
                        return ExitCode::from(2);
                    }
                }
            }
            code
        }
        Cmd::CheckAll { dir, flags } => {
            let opts = options(&flags);
            let mut files: Vec<PathBuf> = match fs::read_dir(&dir) {
                Ok(rd) => rd
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "lnk"))
                    .collect(),
                Err(e) => {
                    eprintln!("{}: {e}", dir.display());
                    return ExitCode::from(2);
                }
            };
            files.sort();
            let mut worst = 0;
            for f in &files {
                let (code, _) = run_file(f, &opts);
                println!("{code}  {}", f.display());
                worst = worst.max(code);
            }
            println!("{} scripts, exit code {worst}", files.len());
            worst
        }
    };
    ExitCode::from(code as u8)
}
