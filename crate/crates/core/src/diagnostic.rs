//! Machine-readable reasons attached to classification outcomes.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Why a route does not apply, or what blocks it.
///
/// Boundary components are named `B1 … Br`, orbits by their ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Diagnostic {
    /// The boundary multitwist tables do not cover genus zero.
    GenusZero,
    /// The surface has no boundary component.
    NoBoundary,
    /// Genus one with nine or more boundary components has no criterion cost.
    GenusOneBoundaryTooLarge { boundary: u32 },
    NonPositiveFr {
        boundary: String,
        value: Rational,
    },
    NonPositiveScrew {
        orbit: String,
        value: Rational,
    },
    /// A non-positive screw number sits on a separating orbit; it cannot be
    /// traded for boundary multitwists.
    SeparatingNonPositiveScrew {
        orbit: String,
        value: Rational,
    },
    /// The criterion inequality `k·Σd_j < min fr` fails.
    InequalityFails {
        k: u32,
        #[serde(with = "crate::serde_util::int")]
        correction_sum: BigInt,
        #[serde(with = "crate::serde_util::int")]
        total: BigInt,
        min_fr: Rational,
    },
    /// The corrected class of a witness is not fully right-veering.
    WitnessNotFullyRightVeering,
    /// In genus zero every invariant orbit is a single curve.
    OrbitTooLongForGenusZero { orbit: String, length: u32 },
    /// In genus zero every essential curve separates.
    NonSeparatingInGenusZero { orbit: String },
}

pub(crate) fn boundary_label(index: usize) -> String {
    format!("B{}", index + 1)
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::GenusZero => f.write_str("genus zero is not covered by the boundary multitwist tables"),
            Diagnostic::NoBoundary => f.write_str("the surface has no boundary"),
            Diagnostic::GenusOneBoundaryTooLarge { boundary } => {
                write!(f, "genus 1 with r = {boundary} >= 9 boundary components is outside the criterion")
            }
            Diagnostic::NonPositiveFr { boundary, value } => write!(f, "fr at {boundary} is {value} <= 0"),
            Diagnostic::NonPositiveScrew { orbit, value } => write!(f, "screw number of orbit {orbit} is {value} <= 0"),
            Diagnostic::SeparatingNonPositiveScrew { orbit, value } => {
                write!(f, "orbit {orbit} is separating with screw number {value} <= 0")
            }
            Diagnostic::InequalityFails { k, correction_sum, total, min_fr } => {
                write!(f, "k·Σd = {k}·{correction_sum} = {total} is not < min fr = {min_fr}")
            }
            Diagnostic::WitnessNotFullyRightVeering => f.write_str("corrected class is not fully right-veering"),
            Diagnostic::OrbitTooLongForGenusZero { orbit, length } => {
                write!(f, "orbit {orbit} has {length} curves; in genus 0 orbits consist of one curve")
            }
            Diagnostic::NonSeparatingInGenusZero { orbit } => {
                write!(f, "orbit {orbit} is marked non-separating; in genus 0 every curve separates")
            }
        }
    }
}
