//! Machine-readable results of the command-line operations.
//!
//! A [`Report`] carries one entry per input class. The structured form is
//! written with [`serialize_report`](crate::io::serialize_report) and read
//! back with [`parse_report`](crate::io::parse_report); [`render_text`]
//! gives the human-readable form.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagnostic::Diagnostic;
use crate::factorization::{ClassificationReport, CriterionResult, LValue};
use crate::io::FORMAT_VERSION;
use crate::nt::{NtClass, Surface};
use crate::poset::{InclusionCheck, Point, PosetRegion};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(command: impl Into<String>, entries: Vec<ReportEntry>) -> Self {
        Report { version: FORMAT_VERSION.to_string(), command: command.into(), entries }
    }

    pub fn has_errors(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.outcome, EntryOutcome::Error { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub outcome: EntryOutcome,
}

impl ReportEntry {
    pub fn ok(name: Option<String>, output: Output) -> Self {
        ReportEntry { name, outcome: EntryOutcome::Ok { result: output } }
    }

    pub fn error(name: Option<String>, message: impl Into<String>) -> Self {
        ReportEntry { name, outcome: EntryOutcome::Error { message: message.into() } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EntryOutcome {
    Ok { result: Output },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSummary {
    pub id: String,
    #[serde(with = "crate::serde_util::int")]
    pub alpha: BigInt,
    pub beta: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryResult {
    #[serde(with = "crate::serde_util::int_vec")]
    pub point: Point,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxResult {
    #[serde(with = "crate::serde_util::int_vec")]
    pub lo: Point,
    #[serde(with = "crate::serde_util::int_vec")]
    pub hi: Point,
    #[serde(with = "crate::serde_util::int_vec_vec")]
    pub members: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Output {
    Validation {
        surface: Surface,
        orbit_count: usize,
        warnings: Vec<Diagnostic>,
    },
    Invariants {
        #[serde(with = "crate::serde_util::int")]
        n: BigInt,
        #[serde(with = "crate::serde_util::int_vec")]
        k_boundary: Vec<BigInt>,
        #[serde(with = "crate::serde_util::int_vec")]
        k_orbit: Vec<BigInt>,
        orbits: Vec<OrbitSummary>,
        essential: bool,
        fully_right_veering: bool,
    },
    Essential {
        #[serde(with = "crate::serde_util::int_vec")]
        boundary_exponents: Vec<BigInt>,
        #[serde(with = "crate::serde_util::int_vec")]
        orbit_exponents: Vec<BigInt>,
        essential: NtClass,
        unique_in_window: bool,
        window: u32,
    },
    Classification {
        report: ClassificationReport,
    },
    Criterion {
        result: CriterionResult,
    },
    Composed {
        class: NtClass,
    },
    Poset {
        known_region: PosetRegion,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        query: Option<QueryResult>,
        #[serde(default, skip_serializing_if = "Option::is_none", rename = "box")]
        box_result: Option<BoxResult>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inclusion: Option<InclusionCheck>,
    },
    Ltable {
        genus: u32,
        boundary: u32,
        #[serde(default, with = "crate::serde_util::opt_int", skip_serializing_if = "Option::is_none")]
        power: Option<BigInt>,
        value: LValue,
    },
    CorrectingBound {
        #[serde(with = "crate::serde_util::opt_int")]
        bound: Option<BigInt>,
    },
    OracleScrew {
        screw: Rational,
        #[serde(with = "crate::serde_util::int")]
        beta: BigInt,
    },
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn class_line(c: &NtClass) -> String {
    let orbits: Vec<String> = c.orbits().iter().map(|o| format!("{}={}", o.id, o.screw)).collect();
    format!("{} fr=({}) sc=({})", c.surface(), join(c.fr()), orbits.join(", "))
}

fn render_output(out: &Output, buf: &mut String) {
    match out {
        Output::Validation { surface, orbit_count, warnings } => {
            let _ = writeln!(buf, "valid: {surface}, {orbit_count} orbit(s)");
            for w in warnings {
                let _ = writeln!(buf, "warning: {w}");
            }
        }
        Output::Invariants { n, k_boundary, k_orbit, orbits, essential, fully_right_veering } => {
            let _ = writeln!(buf, "n = {n}");
            let _ = writeln!(buf, "k (boundary) = ({})", join(k_boundary));
            let _ = writeln!(buf, "k (orbits) = ({})", join(k_orbit));
            for o in orbits {
                let _ = writeln!(buf, "orbit {}: alpha = {}, beta = {}", o.id, o.alpha, o.beta);
            }
            let _ = writeln!(buf, "essential: {essential}");
            let _ = writeln!(buf, "fully right-veering: {fully_right_veering}");
        }
        Output::Essential { boundary_exponents, orbit_exponents, essential, unique_in_window, window } => {
            let _ = writeln!(buf, "boundary exponents: ({})", join(boundary_exponents));
            let _ = writeln!(buf, "orbit exponents: ({})", join(orbit_exponents));
            let _ = writeln!(buf, "essential part: {}", class_line(essential));
            let _ = writeln!(buf, "unique within window {window}: {unique_in_window}");
        }
        Output::Classification { report } => {
            let _ = writeln!(buf, "{report}");
            match report {
                ClassificationReport::PositivelyFactorizable(crate::factorization::Route::Criterion(w)) => {
                    let _ = writeln!(buf, "witness: k = {}, corrected {}", w.k, class_line(&w.corrected));
                }
                ClassificationReport::Unknown(reasons) => {
                    for r in reasons {
                        let _ = writeln!(buf, "reason: {r}");
                    }
                }
                _ => {}
            }
        }
        Output::Criterion { result } => match result {
            CriterionResult::Sufficient(w) => {
                let _ = writeln!(buf, "Sufficient (k = {}, multitwist power {})", w.k, w.total_multitwist_power);
                for c in &w.corrections {
                    let _ = writeln!(buf, "correction: orbit {} by {}", c.orbit, c.d);
                }
                let _ = writeln!(buf, "corrected: {}", class_line(&w.corrected));
            }
            CriterionResult::Inconclusive(reasons) => {
                let _ = writeln!(buf, "Inconclusive");
                for r in reasons {
                    let _ = writeln!(buf, "reason: {r}");
                }
            }
            CriterionResult::NotApplicable(reason) => {
                let _ = writeln!(buf, "NotApplicable: {reason}");
            }
        },
        Output::Composed { class } => {
            let _ = writeln!(buf, "{}", class_line(class));
        }
        Output::Poset { known_region, query, box_result, inclusion } => {
            let gens: Vec<String> = known_region.generators().iter().map(|g| format!("({})", join(g))).collect();
            if gens.is_empty() {
                let _ = writeln!(buf, "known region: empty");
            } else {
                let _ = writeln!(buf, "known region generators: {}", gens.join(" "));
            }
            if let Some(q) = query {
                let _ = writeln!(buf, "({}) in known region: {}", join(&q.point), q.member);
            }
            if let Some(b) = box_result {
                let _ = writeln!(
                    buf,
                    "box ({})..({}): {} certified point(s)",
                    join(&b.lo),
                    join(&b.hi),
                    b.members.len()
                );
            }
            match inclusion {
                Some(InclusionCheck::Holds) => {
                    let _ = writeln!(buf, "essential inclusion: holds");
                }
                Some(InclusionCheck::Violated { generator }) => {
                    let _ = writeln!(buf, "essential inclusion: violated at ({})", join(generator));
                }
                Some(InclusionCheck::Skipped { reason }) => {
                    let _ = writeln!(buf, "essential inclusion: skipped ({reason})");
                }
                None => {}
            }
        }
        Output::Ltable { value, .. } => {
            let _ = writeln!(buf, "{value}");
        }
        Output::CorrectingBound { bound } => match bound {
            Some(b) => {
                let _ = writeln!(buf, "correcting exponent bound: {b}");
            }
            None => {
                let _ = writeln!(buf, "correcting exponent bound: none");
            }
        },
        Output::OracleScrew { screw, beta } => {
            let _ = writeln!(buf, "screw = {screw}, beta = {beta}");
        }
    }
}

/// Human-readable rendering. Batch entries are headed by their names.
pub fn render_text(report: &Report) -> String {
    let mut buf = String::new();
    for entry in &report.entries {
        if let Some(name) = &entry.name {
            let _ = writeln!(buf, "[{name}]");
        }
        match &entry.outcome {
            EntryOutcome::Ok { result } => render_output(result, &mut buf),
            EntryOutcome::Error { message } => {
                let _ = writeln!(buf, "error: {message}");
            }
        }
    }
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_report, serialize_report};

    #[test]
    fn ltable_renders_exact() {
        let r = Report::new(
            "ltable",
            vec![ReportEntry::ok(
                None,
                Output::Ltable { genus: 1, boundary: 5, power: Some(BigInt::from(3)), value: LValue::Exact { value: BigInt::from(36) } },
            )],
        );
        assert_eq!(render_text(&r), "Exact 36\n");
        let text = serialize_report(&r);
        assert_eq!(parse_report(text.as_bytes()).unwrap(), r);
    }

    #[test]
    fn error_entries_round_trip() {
        let r = Report::new(
            "classify",
            vec![
                ReportEntry::error(Some("a".into()), "boom"),
                ReportEntry::ok(Some("b".into()), Output::CorrectingBound { bound: None }),
            ],
        );
        assert!(r.has_errors());
        let text = serialize_report(&r);
        assert_eq!(parse_report(text.as_bytes()).unwrap(), r);
        assert_eq!(render_text(&r), "[a]\nerror: boom\n[b]\ncorrecting exponent bound: none\n");
    }
}
