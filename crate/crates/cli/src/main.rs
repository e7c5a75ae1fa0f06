use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use weightforge::perm::GroupFile;
use weightforge::{Error, Limits};
use weightforge_cli::atlas::Atlas;
use weightforge_cli::job::{AutSource, Check, GroupSource, JobSpec};
use weightforge_cli::{exit_code, EXIT_INPUT, EXIT_OK, EXIT_REFUTED};

/// Radical subgroups, weights, blocks and Galois/automorphism actions of
/// finite permutation groups.
#[derive(Parser, Debug)]
#[command(name = "weightforge", version)]
struct Args {
    /// Group file (JSON with generators as image lists or cycle strings).
    #[arg(long, conflicts_with = "atlas", required_unless_present_any = ["atlas", "list_atlas"])]
    group: Option<PathBuf>,
    /// Name of a bundled atlas group.
    #[arg(long)]
    atlas: Option<String>,
    /// Characteristic p; needed by every check except `table`
    #[arg(long)]
    prime: Option<u64>,
    /// Repeatable; dependencies are added automatically.
    #[arg(long = "check", value_enum)]
    checks: Vec<Check>,
    /// Exponent t of the Galois generator sigma_p^t.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    galois: i64,
    /// Automorphism file, or `atlas` for the atlas entry's automorphisms.
    #[arg(long = "aut")]
    auts: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Character table file to use instead of the atlas fixture.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Write the character table used by the run to this file.
    #[arg(long)]
    emit_table: Option<PathBuf>,
    /// Largest group order handled (default 10000000)
    #[arg(long)]
    max_order: Option<u64>,
    /// Largest class count for in-process character tables (default 40)
    #[arg(long)]
    max_classes: Option<usize>,
    /// Worker threads for weight enumeration
    #[arg(long)]
    threads: Option<usize>,
    /// List the atlas entries, validating each group.
    #[arg(long)]
    list_atlas: bool,
}

fn list_atlas() -> Result<(), Error> {
    let atlas = Atlas::from_env()?;
    for e in atlas.entries() {
        let g = GroupFile::parse(&atlas.read(&e.group)?)?.build()?;
        if let Some(o) = e.order {
            if o != g.order() {
                return Err(Error::Validation {
                    relation: "group order".into(),
                    detail: format!("{}: generators give {}, expected {o}", e.name, g.order()),
                });
            }
        }
        let mut extras = Vec::new();
        if e.table.is_some() {
            extras.push("table");
        }
        if e.automorphisms.is_some() {
            extras.push("automorphisms");
        }
        println!("{}\tdegree {}\torder {}\t{}", e.name, g.degree(), g.order(), extras.join(","));
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_atlas {
        return match list_atlas() {
            Ok(()) => ExitCode::from(EXIT_OK as u8),
            Err(e) => {
                eprintln!("weightforge: {e}");
                ExitCode::from(exit_code(&e) as u8)
            }
        };
    }
    let source = match (args.group, args.atlas) {
        (Some(path), None) => GroupSource::File(path),
        (None, Some(name)) => GroupSource::Atlas(name),
        _ => {
            eprintln!("weightforge: give exactly one of --group and --atlas");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let defaults = Limits::default();
    let mut job = JobSpec::new(source, args.prime, args.checks);
    job.galois_t = args.galois;
    job.automorphisms = args.auts.iter().map(|s| AutSource::parse(s)).collect();
    job.table_file = args.table;
    job.emit_table = args.emit_table;
    job.limits = Limits {
        max_order: args.max_order.unwrap_or(defaults.max_order),
        max_classes: args.max_classes.unwrap_or(defaults.max_classes),
        threads: args.threads.unwrap_or(defaults.threads),
        ..defaults
    };
    let report = match weightforge_cli::run::run(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("weightforge: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("weightforge: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
            for (k, v) in &report.verdicts {
                eprintln!("{k}: {v}");
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(if report.is_refuted() { EXIT_REFUTED } else { EXIT_OK } as u8)
}
