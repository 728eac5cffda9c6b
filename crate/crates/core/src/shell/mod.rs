//! Text input, JSON reports and the command line driver.

mod cli;
mod parse;
mod report;
mod suite;

pub use parse::{
    infer_field, parse_curve, parse_element, parse_form, parse_matrix, parse_point, parse_points, CurveSpec,
    FieldDecl,
};
pub use report::*;
pub use suite::{paper_suite, run_check, SuiteRow, SuiteStatus, SUITE_SIZE};
pub use cli::{run, run_parsed, Cli, Command, Outcome};
