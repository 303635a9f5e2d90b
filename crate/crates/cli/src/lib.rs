//! Text format, verification runner and reports for spectra of Bishop
//! spaces.

pub mod model;
pub mod report;
pub mod runner;
pub mod syntax;

pub use model::{resolve, Model};
pub use report::{Record, Report, Status};
pub use runner::{run, RunConfig, RunError};
pub use syntax::{parse, Document, ParseError};
