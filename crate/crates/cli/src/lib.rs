//! Command-line front end: spec parsing, run configuration, the lemma
//! suite, and JSON report emission.

pub mod parse;
pub mod report;
pub mod runner;

pub use parse::{parse_ideal_list, parse_ideal_spec, parse_ring_spec, ParseError};
pub use report::{LemmaCheck, ReportConfig, Totals, VerifyReport};
pub use runner::{run_verification, RunConfig, RunError, TheoremKind};
