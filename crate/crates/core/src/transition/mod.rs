//! Invariant tables, consistency findings and simplicity verdicts for
//! geometric transitions `T(Y, Ȳ, Ỹ)`.
//!
//! A [`TransitionRecord`] stores the smoothing fingerprint, the singular and
//! resolution data and, optionally, a splitting-family witness.
//! [`compute_table`] derives the fingerprints of `Y` and `Ȳ`,
//! [`consistency_check`] lists tensions in the data and
//! [`decide_simplicity`] applies the rule cascade.

pub(crate) mod fingerprint;
mod record;
mod simplicity;
mod splitting;
mod table;

pub use fingerprint::Fingerprint;
pub use record::{ResolutionDatum, SingularDatum, TransitionRecord, Tree, TypeTag, Witness, WitnessStatus};
pub use simplicity::{decide_simplicity, dim_image_lambda, dim_image_lambda_report, Rule, Verdict};
pub use splitting::{verify_splitting_family, SplittingFamily, SplittingReport};
pub use table::{
    compute_table, consistency_check, derive_pair, fingerprint_findings, Finding, Role, Severity, TableRow,
    TransitionTable,
};
