//! The batch surface: one expression grammar, session config, and the
//! command runner behind the `malcev` binary.

pub mod config;
pub mod eval;
pub mod parse;
pub mod run;

pub use config::{ConfigError, SessionConfig};
pub use eval::{algebra_from_str, eval_algebra, eval_series, series_from_str};
pub use parse::{parse, parse_word, Expr, Symbol};
pub use run::{run, Cli, Command, CyclicAction, Format, Outcome, SCHEMA};
