//! Exact oracle, approximation and partial ratios, path certificates and
//! per-element price audits.

pub mod audit;
pub mod certificate;
pub mod exact;
pub mod known;
pub mod ratio;

pub use audit::{price_audit, AuditStep, PriceAuditReport, PriceAuditRow};
pub use certificate::{
    certificate_from_cover_run, check_path_certificate, CertificateReport, Condition, PathCertificate,
    PathStep, Violation,
};
pub use exact::{exact_solve, exact_solve_with_limit, DEFAULT_ORACLE_LIMIT};
pub use known::KnownOptimum;
pub use ratio::{
    approximation_ratio, conditional_partial_ratio, feasible_ratio, make_linear_reference, partial_ratio,
    prefix_reference, PartialReference,
};
