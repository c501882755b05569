//! Command line front end: counting, enumeration, transfer maps between
//! the object families, verification suites, series printing, and DOT
//! rendering. Everything is deterministic; sizes are guarded by caps that
//! default to the verified ranges and can be raised with --max.

use clap::{Parser, Subcommand};
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use tamari_maps::cli::{cmd_count, cmd_map, family_members};
use tamari_maps::dot;
use tamari_maps::error::{domain_err, parse_err};
use tamari_maps::series::{b_series, f_series, solve_rg};
use tamari_maps::verify::run_suite;
use tamari_maps::{Error, Result};

#[derive(Parser)]
#[command(name = "tamari-maps", version)]
#[command(about = "Exact counting, bijections, and verification for Tamari intervals, \
quadrangulations, and their relatives")]
struct Cli {
    /// Size cap override for enumerative families and verification suites.
    #[arg(long, global = true)]
    max: Option<usize>,

    /// Object output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "dot"])]
    format: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the exact size of a family.
    ///
    /// Families: G R S I Q Sep B W mobiles ternary formulaN formulaNij formulaM.
    Count { family: String, params: Vec<String> },
    /// List every member of a family, blank-line separated.
    Enumerate { family: String, params: Vec<String> },
    /// Apply a transfer map to the object read from FILE (or stdin).
    ///
    /// Maps: phi phiprime phiprime_inv chi chi_inv xi xi_inv sigma sigma_inv
    /// iota iota_inv lambda lambdatilde tau_triple tau_tandem tau_sepdec
    /// bb mobile ternary ternary_inv.
    Map {
        bijection: String,
        input: Option<PathBuf>,
    },
    /// Run a verification suite and print its report.
    ///
    /// Suites: theorem1 theorem2 corollary1 proposition1 lemmas kmsw-link
    /// counts series.
    Verify { suite: String, max: Option<usize> },
    /// Print a power series (R, G, F, or B) truncated at a total degree.
    Series { name: String, degree: Option<usize> },
    /// Emit DOT for the object read from FILE (or stdin); the type is sniffed.
    Render { input: Option<PathBuf> },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Count { family, params } => {
            println!("{}", cmd_count(family, params, cli.max)?);
        }
        Cmd::Enumerate { family, params } => {
            let blocks = family_members(family, params, cli.max)?;
            print_blocks(&blocks, &cli.format)?;
        }
        Cmd::Map { bijection, input } => {
            let text = read_input(input)?;
            let out = cmd_map(bijection, &text)?;
            print_blocks(std::slice::from_ref(&out), &cli.format)?;
        }
        Cmd::Verify { suite, max } => {
            let report = run_suite(suite, max.or(cli.max))?;
            println!("{report}");
            if !report.pass {
                return Err(Error::Verification(format!("suite {suite} failed")));
            }
        }
        Cmd::Series { name, degree } => {
            let d = degree.or(cli.max).unwrap_or(6) as u32;
            let s = match name.as_str() {
                "R" => solve_rg(d)?.0,
                "G" => solve_rg(d)?.1,
                "F" => f_series(d)?,
                "B" => b_series(d)?,
                other => return Err(parse_err(format!("unknown series {other:?}"))),
            };
            print!("{s}");
        }
        Cmd::Render { input } => {
            let text = read_input(input)?;
            print!("{}", dot::render_auto(&text)?);
        }
    }
    Ok(())
}

fn read_input(input: &Option<PathBuf>) -> Result<String> {
    match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| parse_err(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| parse_err(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn print_blocks(blocks: &[String], format: &str) -> Result<()> {
    let mut first = true;
    for b in blocks {
        if !first {
            println!();
        }
        first = false;
        match format {
            "dot" => {
                let dot = dot::render_auto(b)
                    .map_err(|_| domain_err("object has no dot rendering".to_string()))?;
                print!("{dot}");
            }
            _ => print!("{b}"),
        }
    }
    Ok(())
}
