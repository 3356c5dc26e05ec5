//! Scenario language, fixtures and the verification suite for the Tango
//! bundle computations.

pub mod claims;
pub mod context;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod jobs;
pub mod report;
pub mod suite;

pub use error::{CliError, Result};
pub use fixtures::Fixtures;
pub use report::Report;
pub use suite::{run_verification_suite, SuiteOptions, Verdict};
