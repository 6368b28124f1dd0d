//! Exact invariants and positive-factorization certificates for
//! pseudoperiodic mapping classes of compact surfaces with boundary.
//!
//! The input is the numerical Nielsen–Thurston data of a class ([`NtClass`]):
//! fractional Dehn twist coefficients at the boundary and screw numbers of the
//! curve orbits. From it the crate computes essential parts, decides whether
//! one of two sufficient conditions for a positive Dehn twist factorization
//! applies, and describes the certified region of boundary corrections.
//! All arithmetic is exact.

pub mod diagnostic;
pub mod factorization;
pub mod invariants;
pub mod io;
pub mod nt;
pub mod oracle;
pub mod poset;
pub mod rational;
pub mod report;
mod serde_util;

pub use diagnostic::Diagnostic;
pub use factorization::{
    classify, correcting_exponent_bound, criterion, criterion_k, l_multitwist, l_multitwist_power,
    realizability_warnings, ClassificationReport, Correction, CriterionResult, FactorizationError, LValue, Route,
    Witness,
};
pub use invariants::{
    essential_conditions_hold, essential_part, is_essential, is_fully_right_veering, verify_essential_uniqueness,
    EssentialResult,
};
pub use io::{parse, parse_report, serialize, serialize_report, Document, NamedClass, ParseError, ParseErrorKind, Payload};
pub use nt::{
    compose_twists, int_variant, period_data, CoreError, CurveOrbit, NtClass, OrbitKind, PeriodData, Surface,
    TwistMove, TwistTarget,
};
pub use oracle::{differential_check_formula, orbit_model_screw, OrbitModel, OracleError};
pub use poset::{contains, enumerate_box, essential_inclusion_check, known_region, InclusionCheck, PosetError, PosetRegion};
pub use rational::{Rational, RationalError};
pub use report::{render_text, EntryOutcome, Output, Report, ReportEntry};
