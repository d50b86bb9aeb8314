//! Job parsing, report schemas, and suite enumerations for the batch front
//! end. The binary (`yoneda`) and the verification suites share this
//! library.

pub mod jobs;
pub mod reports;
pub mod suites;
