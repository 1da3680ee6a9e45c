//! Library side of the `coxnorm` binary: example registry, run pipeline and
//! report types.

pub mod examples;
pub mod report;
pub mod run;

pub use report::Report;
pub use run::{exit_code, run, Command, GroupSpec, RunConfig};
