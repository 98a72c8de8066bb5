//! Front end for `argact-core`: the `.ad` language, assumption tokens,
//! reports, the bundled corpus and the commands behind the `argact` binary.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod random;
pub mod report;
pub mod syntax;

pub use argact_core as core;
pub use error::{Error, ParseError, Result};
pub use syntax::{parse_assumption, parse_domain, parse_formula, parse_literals, render_domain, render_formula};
