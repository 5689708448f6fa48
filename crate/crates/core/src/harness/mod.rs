//! Seeded property campaigns binding each integrality statement to an
//! executable suite, with machine-readable reports.

mod config;
mod sample;
mod suites;

pub use config::{CaseCounts, CosetSpec, SuiteConfig};
pub use sample::{random_element, random_root, random_sample, shrink, Sample};
pub use suites::{run_suite, run_suites, CaseReport, SuiteReport, SuiteSummary, SUITES};
