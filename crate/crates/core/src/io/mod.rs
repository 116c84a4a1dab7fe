//! Text format, Graphviz export, JSON reports and the command line.

pub mod cli;
pub mod dot;
mod format;
pub mod report;

pub use cli::{run_cli, CliOutput};
pub use dot::{km_dot, net_dot, observer_dot, reachability_dot};
pub use format::{parse_lpn, render_gadget, render_lpn, NetDocument, ParseError, ParseErrorKind, Span};
pub use report::{Step, VerdictReport, WitnessReport, REPORT_SCHEMA};
