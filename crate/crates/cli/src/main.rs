use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use glcomm_cli::runner::{
    run_verification, RunConfig, TheoremKind, DEFAULT_ENUM_CAP, DEFAULT_MEMBER_CAP,
    DEFAULT_SAMPLES,
};

/// Exact verification of commutator formulas in general linear groups
/// over small finite rings.
///
/// Exit codes: 0 all verified, 1 mathematical mismatch (an
/// implementation bug: the checked statements are theorems), 2 a case
/// exceeded the configured caps ("not verified at this scale"),
/// 3 parse or configuration error.
#[derive(Parser, Debug)]
#[command(name = "verify", version, about)]
struct Args {
    #[arg(
        long,
        help = "Ring spec, e.g. \"Z/8\", \"Z/2[x]/(x^3)\", \"UT2(Z/2)\", \"Z/2 x Z/4\""
    )]
    ring: Option<String>,

    /// Comma-separated ideal specs, e.g. "(2),(2)"
    #[arg(long)]
    ideals: Option<String>,

    /// Matrix dimension (3 or 4)
    #[arg(long, default_value_t = 3)]
    n: usize,

    /// Theorem selector: standard | generalized | triple | multiple |
    /// arrangements | lemmas
    #[arg(long)]
    theorem: Option<String>,

    #[arg(
        long,
        help = "Bracket tree in nested-list notation, e.g. \"[[0,1],2]\" (arrangements only; default: all trees)"
    )]
    tree: Option<String>,

    /// Slot kinds, e.g. "E,GL,GL" (arrangements only; default: every
    /// single-E placement plus all-E)
    #[arg(long)]
    slots: Option<String>,

    /// Cap on materialized subgroup size
    #[arg(long = "cap-members", default_value_t = DEFAULT_MEMBER_CAP)]
    cap_members: usize,

    /// Seed for the sampled lemma checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,

    /// Run the built-in quick profile (rings of order <= 8)
    #[arg(long)]
    quick: bool,

    /// Run the quick profile plus the Z/16 triple-formula case
    #[arg(long)]
    flagship: bool,

    /// Include real elapsed-millisecond timings in the JSON report
    /// (off by default so reports are byte-identical across runs)
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let theorem = match args.theorem.as_deref().map(TheoremKind::parse).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    if !(3..=4).contains(&args.n) {
        eprintln!("error: --n must be 3 or 4");
        return ExitCode::from(3);
    }
    let config = RunConfig {
        ring: args.ring,
        ideals: args.ideals,
        n: args.n,
        theorem,
        tree: args.tree,
        slots: args.slots,
        member_cap: args.cap_members,
        enum_cap: DEFAULT_ENUM_CAP,
        seed: args.seed,
        samples: DEFAULT_SAMPLES,
        quick: args.quick,
        flagship: args.flagship,
        timings: args.timings,
        json_path: args.json,
        ring_cap: glcomm_core::ring::DEFAULT_RING_CAP,
    };
    match run_verification(&config) {
        Ok(report) => {
            println!("{}", report.summary());
            let code = report.exit_code();
            if code != 0 {
                eprintln!("exit code {code}");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
