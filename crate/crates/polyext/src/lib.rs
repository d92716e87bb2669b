//! Reports, presentation files and the acceptance suite on top of
//! `polyext-core`.

pub mod format;
pub mod report;
pub mod suite;

pub use format::{parse_presentation, render_presentation, FormatError};
pub use report::{export_presentation, run_job, Job, JobError, JobLimits, Level, Report, Which};
pub use suite::{Criterion, Suite};
