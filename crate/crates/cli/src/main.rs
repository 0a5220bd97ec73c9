//! `greenring`: command-line access to the Green ring and growth computations.

mod commands;
mod output;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use greenring::jordan::DEFAULT_CAP;

use commands::{AsymArgs, GreenCmd, GroupCmd, KpCmd, LieCmd, VerlindeCmd};
use output::{emit, Format};

const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "greenring", version, about = "Green rings, fusion rings and tensor-power growth")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest `a*b` the Jordan-form oracle will attempt.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap_oracle: u64,
    /// Seed for the randomized self-test samples.
    #[arg(long, global = true, default_value_t = 20240607)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The Verlinde category `Ver_p`.
    #[command(subcommand)]
    Verlinde(VerlindeCmd),
    /// The ring `K_p` and its maps.
    #[command(subcommand)]
    Kp(KpCmd),
    /// Cyclic p-groups `Z/p^n`.
    #[command(subcommand)]
    Green(GreenCmd),
    /// Tensor powers of reductive-group representations.
    Asym(AsymArgs),
    /// Finite groups in characteristic zero.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Tables for simple Lie algebras in characteristic p.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Runs the built-in fixture suite.
    Selftest,
}

/// The oracle cap, lowered so dense scratch space fits in `GREENRING_CAP_MB`.
fn oracle_cap(flag: u64) -> u64 {
    match std::env::var("GREENRING_CAP_MB").ok().and_then(|s| s.trim().parse::<f64>().ok()) {
        Some(mb) if mb > 0.0 => flag.min((mb * 1_048_576.0 / 8.0).sqrt() as u64),
        _ => flag,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let cap = oracle_cap(cli.cap_oracle);
    if let Cmd::Selftest = cli.cmd {
        return selftest::run(cli.seed, cap, cli.format);
    }
    let rec = match cli.cmd {
        Cmd::Verlinde(c) => commands::verlinde(c),
        Cmd::Kp(c) => commands::kp(c),
        Cmd::Green(c) => commands::green(c, cap),
        Cmd::Asym(a) => commands::asym(a),
        Cmd::Group(c) => commands::group(c),
        Cmd::Lie(c) => commands::lie_cmd(c),
        Cmd::Selftest => unreachable!(),
    };
    match rec {
        Ok(rec) => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            if emit(&rec, cli.format, &mut out).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
