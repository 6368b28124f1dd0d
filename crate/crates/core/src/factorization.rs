//! Positive factorization certificates.
//!
//! Two routes are implemented. The main route: a fully right-veering
//! pseudoperiodic class (all fr and all screw numbers strictly positive, on a
//! surface with boundary) admits a positive factorization. The criterion
//! route: when the only obstructions are non-positive screw numbers on
//! non-separating orbits, each unit of twist needed to make such a screw
//! number positive can be paid for with `k` boundary multitwists, where `k`
//! comes from the known lengths of positive factorizations of powers of the
//! boundary multitwist. If the fr budget covers the total cost strictly, the
//! corrected class is fully right-veering and the original class factorizes.
//!
//! Neither route decides membership when it fails; [`ClassificationReport::Unknown`]
//! is an honest "not certified".

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostic::{boundary_label, Diagnostic};
use crate::invariants::is_fully_right_veering;
use crate::nt::{compose_twists, int_variant, NtClass, Surface, TwistMove};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("genus zero is not covered by the boundary multitwist tables")]
    GenusZeroUnsupported,
    #[error("the surface needs at least one boundary component")]
    NoBoundary,
    #[error("multitwist power must be positive")]
    NonPositivePower,
    #[error("L(B^{k}) is not tabulated for genus {genus} with {boundary} boundary components")]
    TableUndefined { genus: u32, boundary: u32, k: BigInt },
}

/// Supremum of the number of non-separating twists in positive
/// factorizations of a power of the boundary multitwist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LValue {
    PlusInfinity,
    MinusInfinity,
    Finite,
    Exact {
        #[serde(with = "crate::serde_util::int")]
        value: BigInt,
    },
}

impl fmt::Display for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LValue::PlusInfinity => f.write_str("PlusInfinity"),
            LValue::MinusInfinity => f.write_str("MinusInfinity"),
            LValue::Finite => f.write_str("Finite"),
            LValue::Exact { value } => write!(f, "Exact {value}"),
        }
    }
}

fn check_table_domain(genus: u32, boundary: u32) -> Result<(), FactorizationError> {
    if genus == 0 {
        return Err(FactorizationError::GenusZeroUnsupported);
    }
    if boundary == 0 {
        return Err(FactorizationError::NoBoundary);
    }
    Ok(())
}

/// `L(𝓑)` for the boundary multitwist of `Σ_{g,r}`.
pub fn l_multitwist(genus: u32, boundary: u32) -> Result<LValue, FactorizationError> {
    check_table_domain(genus, boundary)?;
    let (g, r) = (i64::from(genus), i64::from(boundary));
    Ok(if (g == 1 && r > 9) || (g >= 2 && r > 4 * g + 4) {
        LValue::PlusInfinity
    } else if r <= 2 * g - 4 {
        LValue::MinusInfinity
    } else {
        LValue::Finite
    })
}

/// `L(𝓑^k)`. Only the two tabulated branches are defined:
/// `12k` for `g = 1, r <= 9` and `+∞` for `g >= 2, k >= 2`.
pub fn l_multitwist_power(genus: u32, boundary: u32, k: &BigInt) -> Result<LValue, FactorizationError> {
    check_table_domain(genus, boundary)?;
    if *k <= BigInt::zero() {
        return Err(FactorizationError::NonPositivePower);
    }
    if genus == 1 && boundary <= 9 {
        Ok(LValue::Exact { value: k * 12 })
    } else if genus >= 2 && *k >= BigInt::from(2) {
        Ok(LValue::PlusInfinity)
    } else {
        Err(FactorizationError::TableUndefined { genus, boundary, k: k.clone() })
    }
}

/// Number of boundary multitwists that pay for one left-handed twist about a
/// non-separating curve. `Err` carries the reason the criterion does not
/// apply; it is an answer, not a failure.
pub fn criterion_k(surface: Surface) -> Result<u32, Diagnostic> {
    let (g, r) = (i64::from(surface.genus), i64::from(surface.boundary));
    if g == 0 {
        return Err(Diagnostic::GenusZero);
    }
    if r == 0 {
        return Err(Diagnostic::NoBoundary);
    }
    if g == 1 {
        return if r < 9 { Ok(1) } else { Err(Diagnostic::GenusOneBoundaryTooLarge { boundary: surface.boundary }) };
    }
    Ok(if r <= 2 * g - 4 { 1 } else { 2 })
}

/// One orbit corrected by `d` right-handed twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Correction {
    pub orbit: String,
    #[serde(with = "crate::serde_util::int")]
    pub d: BigInt,
}

/// The explicit corrected class `𝓑^{-kΣd} ∏ t_{γ_j}^{d_j} φ` of the criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub k: u32,
    pub corrections: Vec<Correction>,
    #[serde(with = "crate::serde_util::int")]
    pub total_multitwist_power: BigInt,
    pub corrected: NtClass,
}

impl Witness {
    /// The moves that take the original class to `corrected`.
    pub fn moves(&self, boundary: usize) -> Vec<TwistMove> {
        self.corrections
            .iter()
            .map(|c| TwistMove::orbit(c.orbit.clone(), c.d.clone()))
            .chain((0..boundary).map(|i| TwistMove::boundary(i, -&self.total_multitwist_power)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum CriterionResult {
    Sufficient(Witness),
    Inconclusive(Vec<Diagnostic>),
    NotApplicable(Diagnostic),
}

impl CriterionResult {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CriterionResult::Sufficient(w) => Some(w),
            _ => None,
        }
    }
}

/// Hypotheses of the criterion other than the inequality: returns `k` and
/// the `(orbit index, d_j)` pairs for every orbit with `sc_j <= 0`.
fn criterion_setup(phi: &NtClass) -> Result<(u32, Vec<(usize, BigInt)>), Diagnostic> {
    let k = criterion_k(phi.surface())?;
    if let Some((i, x)) = phi.fr().iter().enumerate().find(|(_, x)| !x.is_positive()) {
        return Err(Diagnostic::NonPositiveFr { boundary: boundary_label(i), value: x.clone() });
    }
    let mut corrections = Vec::new();
    for (j, orbit) in phi.orbits().iter().enumerate() {
        if orbit.screw.is_positive() {
            continue;
        }
        if orbit.separating {
            return Err(Diagnostic::SeparatingNonPositiveScrew { orbit: orbit.id.clone(), value: orbit.screw.clone() });
        }
        let d = -int_variant(&(&orbit.screw / &orbit.beta())) + 1;
        corrections.push((j, d));
    }
    Ok((k, corrections))
}

/// The sufficiency criterion, with the witness construction.
///
/// Orbits with screw number exactly zero are corrected too (with `d = 1`),
/// and the inequality is strict: at equality the corrected class would have
/// a vanishing fr and fail to be fully right-veering.
pub fn criterion(phi: &NtClass) -> CriterionResult {
    let (k, raw) = match criterion_setup(phi) {
        Ok(setup) => setup,
        Err(reason) => return CriterionResult::NotApplicable(reason),
    };
    let correction_sum: BigInt = raw.iter().map(|(_, d)| d).sum();
    let total = &correction_sum * k;
    let min_fr = phi.min_fr().expect("criterion_k requires a boundary").clone();
    if Rational::from_integer(total.clone()) >= min_fr {
        return CriterionResult::Inconclusive(vec![Diagnostic::InequalityFails { k, correction_sum, total, min_fr }]);
    }
    let corrections: Vec<Correction> = raw
        .into_iter()
        .map(|(j, d)| Correction { orbit: phi.orbits()[j].id.clone(), d })
        .collect();
    let mut witness = Witness { k, corrections, total_multitwist_power: total, corrected: phi.clone() };
    witness.corrected = compose_twists(phi, &witness.moves(phi.fr().len())).expect("targets come from phi");
    if !is_fully_right_veering(&witness.corrected) {
        return CriterionResult::Inconclusive(vec![Diagnostic::WitnessNotFullyRightVeering]);
    }
    CriterionResult::Sufficient(witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", content = "witness", rename_all = "kebab-case")]
pub enum Route {
    MainTheorem,
    Criterion(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum ClassificationReport {
    PositivelyFactorizable(Route),
    Unknown(Vec<Diagnostic>),
}

impl ClassificationReport {
    pub fn is_positively_factorizable(&self) -> bool {
        matches!(self, ClassificationReport::PositivelyFactorizable(_))
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationReport::PositivelyFactorizable(Route::MainTheorem) => {
                f.write_str("PositivelyFactorizable via MainTheorem")
            }
            ClassificationReport::PositivelyFactorizable(Route::Criterion(_)) => {
                f.write_str("PositivelyFactorizable via Criterion")
            }
            ClassificationReport::Unknown(_) => f.write_str("Unknown"),
        }
    }
}

/// Strict-positivity violations, in boundary then orbit order.
fn positivity_violations(phi: &NtClass) -> Vec<Diagnostic> {
    let fr = phi
        .fr()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_positive())
        .map(|(i, x)| Diagnostic::NonPositiveFr { boundary: boundary_label(i), value: x.clone() });
    let sc = phi
        .orbits()
        .iter()
        .filter(|o| !o.screw.is_positive())
        .map(|o| Diagnostic::NonPositiveScrew { orbit: o.id.clone(), value: o.screw.clone() });
    fr.chain(sc).collect()
}

fn main_theorem_applies(phi: &NtClass) -> bool {
    phi.surface().boundary > 0 && is_fully_right_veering(phi)
}

pub fn classify(phi: &NtClass) -> ClassificationReport {
    if main_theorem_applies(phi) {
        return ClassificationReport::PositivelyFactorizable(Route::MainTheorem);
    }
    let mut diagnostics = positivity_violations(phi);
    if phi.surface().boundary == 0 {
        diagnostics.insert(0, Diagnostic::NoBoundary);
    }
    match criterion(phi) {
        CriterionResult::Sufficient(w) => return ClassificationReport::PositivelyFactorizable(Route::Criterion(w)),
        CriterionResult::Inconclusive(reasons) => diagnostics.extend(reasons),
        CriterionResult::NotApplicable(reason) => {
            if !diagnostics.contains(&reason) {
                diagnostics.push(reason);
            }
        }
    }
    ClassificationReport::Unknown(diagnostics)
}

/// Least `N >= 0` such that shifting every fr by `N` makes [`classify`]
/// succeed, or `None` when neither route can ever apply.
///
/// This bounds the correcting exponent `N_φ` from above.
pub fn correcting_exponent_bound(phi: &NtClass) -> Option<BigInt> {
    let min_fr = phi.min_fr()?;
    let clamp = |n: BigInt| if n < BigInt::zero() { BigInt::zero() } else { n };

    let main = phi
        .orbits()
        .iter()
        .all(|o| o.screw.is_positive())
        .then(|| clamp((-min_fr).next_integer_above()));

    // Shifting fr keeps orbit data, so the criterion's k and d_j are fixed;
    // only the fr-positivity hypothesis moves, and it is implied by the
    // inequality since k·Σd_j >= 0.
    let crit = shift_invariant_criterion_total(phi)
        .map(|total| clamp((&Rational::from_integer(total) - min_fr).next_integer_above()));

    match (main, crit) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// `k·Σd_j` when the fr-independent hypotheses of the criterion hold.
pub(crate) fn shift_invariant_criterion_total(phi: &NtClass) -> Option<BigInt> {
    let k = criterion_k(phi.surface()).ok()?;
    let mut sum = BigInt::zero();
    for orbit in phi.orbits() {
        if orbit.screw.is_positive() {
            continue;
        }
        if orbit.separating {
            return None;
        }
        sum += -int_variant(&(&orbit.screw / &orbit.beta())) + 1;
    }
    Some(sum * k)
}

/// Warnings for data that no pseudoperiodic class can have. Only the
/// genus-zero constraints are checked: orbits there are single separating
/// curves.
pub fn realizability_warnings(phi: &NtClass) -> Vec<Diagnostic> {
    if phi.surface().genus != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for orbit in phi.orbits() {
        if orbit.length > 1 {
            out.push(Diagnostic::OrbitTooLongForGenusZero { orbit: orbit.id.clone(), length: orbit.length });
        }
        if !orbit.separating {
            out.push(Diagnostic::NonSeparatingInGenusZero { orbit: orbit.id.clone() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nt::{CurveOrbit, OrbitKind};

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn class(g: u32, fr: Vec<Rational>, orbits: Vec<CurveOrbit>) -> NtClass {
        NtClass::new(Surface::new(g, fr.len() as u32), fr, orbits).unwrap()
    }

    fn nonsep(screw: Rational) -> CurveOrbit {
        CurveOrbit::new("O1", 1, OrbitKind::Regular, false, screw)
    }

    #[test]
    fn l_table_examples() {
        assert_eq!(l_multitwist(1, 10), Ok(LValue::PlusInfinity));
        assert_eq!(l_multitwist(3, 2), Ok(LValue::MinusInfinity));
        assert_eq!(l_multitwist(2, 3), Ok(LValue::Finite));
        assert_eq!(l_multitwist(1, 9), Ok(LValue::Finite));
        assert_eq!(l_multitwist(2, 13), Ok(LValue::PlusInfinity));
        assert_eq!(l_multitwist(2, 12), Ok(LValue::Finite));
        assert_eq!(l_multitwist(0, 3), Err(FactorizationError::GenusZeroUnsupported));
    }

    #[test]
    fn l_power_examples() {
        assert_eq!(l_multitwist_power(1, 9, &BigInt::from(2)), Ok(LValue::Exact { value: BigInt::from(24) }));
        assert_eq!(l_multitwist_power(2, 1, &BigInt::from(2)), Ok(LValue::PlusInfinity));
        assert!(matches!(
            l_multitwist_power(2, 1, &BigInt::from(1)),
            Err(FactorizationError::TableUndefined { .. })
        ));
        assert!(matches!(
            l_multitwist_power(1, 10, &BigInt::from(1)),
            Err(FactorizationError::TableUndefined { .. })
        ));
        assert_eq!(l_multitwist_power(0, 1, &BigInt::from(2)), Err(FactorizationError::GenusZeroUnsupported));
        assert_eq!(l_multitwist_power(1, 1, &BigInt::from(0)), Err(FactorizationError::NonPositivePower));
    }

    #[test]
    fn criterion_k_examples() {
        assert_eq!(criterion_k(Surface::new(2, 1)), Ok(2));
        assert_eq!(criterion_k(Surface::new(1, 3)), Ok(1));
        assert_eq!(criterion_k(Surface::new(1, 9)), Err(Diagnostic::GenusOneBoundaryTooLarge { boundary: 9 }));
        assert_eq!(criterion_k(Surface::new(4, 4)), Ok(1));
        assert_eq!(criterion_k(Surface::new(4, 5)), Ok(2));
        assert_eq!(criterion_k(Surface::new(0, 5)), Err(Diagnostic::GenusZero));
    }

    #[test]
    fn criterion_sufficient_with_correction() {
        let phi = class(2, vec![q(5, 1)], vec![nonsep(q(-1, 2))]);
        let w = criterion(&phi).witness().cloned().expect("sufficient");
        assert_eq!(w.k, 2);
        assert_eq!(w.corrections, vec![Correction { orbit: "O1".into(), d: BigInt::from(1) }]);
        assert_eq!(w.total_multitwist_power, BigInt::from(2));
        assert_eq!(w.corrected.fr(), &[q(3, 1)]);
        assert_eq!(w.corrected.orbits()[0].screw, q(1, 2));
    }

    #[test]
    fn criterion_sufficient_without_correction() {
        let phi = class(2, vec![q(5, 1)], vec![nonsep(q(1, 2))]);
        let w = criterion(&phi).witness().cloned().expect("sufficient");
        assert!(w.corrections.is_empty());
        assert_eq!(w.corrected, phi);
    }

    #[test]
    fn criterion_inconclusive() {
        let phi = class(2, vec![q(1, 1)], vec![nonsep(q(-3, 2))]);
        assert_eq!(
            criterion(&phi),
            CriterionResult::Inconclusive(vec![Diagnostic::InequalityFails {
                k: 2,
                correction_sum: BigInt::from(2),
                total: BigInt::from(4),
                min_fr: q(1, 1),
            }])
        );
    }

    #[test]
    fn criterion_equality_is_not_enough() {
        // k·Σd = 2 = min fr: the corrected fr would be 0.
        let phi = class(2, vec![q(2, 1)], vec![nonsep(q(-1, 2))]);
        assert!(matches!(criterion(&phi), CriterionResult::Inconclusive(_)));
    }

    #[test]
    fn zero_screw_is_corrected() {
        let phi = class(2, vec![q(3, 1)], vec![nonsep(Rational::zero())]);
        let w = criterion(&phi).witness().cloned().expect("sufficient");
        assert_eq!(w.corrections[0].d, BigInt::from(1));
        assert_eq!(w.corrected.orbits()[0].screw, q(1, 1));
        assert_eq!(w.corrected.fr(), &[q(1, 1)]);
    }

    #[test]
    fn criterion_not_applicable_cases() {
        let sep = CurveOrbit::new("S", 1, OrbitKind::Regular, true, q(-1, 2));
        assert!(matches!(
            criterion(&class(2, vec![q(9, 1)], vec![sep])),
            CriterionResult::NotApplicable(Diagnostic::SeparatingNonPositiveScrew { .. })
        ));
        assert!(matches!(
            criterion(&class(2, vec![q(0, 1)], vec![])),
            CriterionResult::NotApplicable(Diagnostic::NonPositiveFr { .. })
        ));
        let fr = vec![q(5, 1); 9];
        assert!(matches!(
            criterion(&class(1, fr, vec![])),
            CriterionResult::NotApplicable(Diagnostic::GenusOneBoundaryTooLarge { boundary: 9 })
        ));
    }

    #[test]
    fn classify_examples() {
        let phi = class(2, vec![q(5, 3), q(1, 3)], vec![nonsep(q(1, 2))]);
        assert_eq!(classify(&phi), ClassificationReport::PositivelyFactorizable(Route::MainTheorem));
        assert_eq!(classify(&phi).to_string(), "PositivelyFactorizable via MainTheorem");

        let id = class(2, vec![Rational::zero()], vec![]);
        match classify(&id) {
            ClassificationReport::Unknown(d) => {
                assert_eq!(d[0], Diagnostic::NonPositiveFr { boundary: "B1".into(), value: Rational::zero() })
            }
            other => panic!("{other:?}"),
        }

        let phi = class(2, vec![q(5, 1)], vec![nonsep(q(-1, 2))]);
        assert!(matches!(classify(&phi), ClassificationReport::PositivelyFactorizable(Route::Criterion(_))));
    }

    #[test]
    fn classify_closed_surface_is_unknown() {
        let phi = NtClass::new(Surface::new(2, 0), vec![], vec![nonsep(q(1, 2))]).unwrap();
        assert_eq!(classify(&phi), ClassificationReport::Unknown(vec![Diagnostic::NoBoundary]));
        assert_eq!(correcting_exponent_bound(&phi), None);
    }

    #[test]
    fn correcting_bound_examples() {
        let phi = class(2, vec![q(-5, 3), q(1, 3)], vec![nonsep(q(1, 2))]);
        assert_eq!(correcting_exponent_bound(&phi), Some(BigInt::from(2)));
        let frv = class(2, vec![q(1, 3)], vec![nonsep(q(1, 2))]);
        assert_eq!(correcting_exponent_bound(&frv), Some(BigInt::from(0)));
        let phi = class(2, vec![q(1, 1)], vec![nonsep(q(-3, 2))]);
        assert_eq!(correcting_exponent_bound(&phi), Some(BigInt::from(4)));
    }

    #[test]
    fn correcting_bound_absent() {
        let sep = CurveOrbit::new("S", 1, OrbitKind::Regular, true, q(-1, 2));
        assert_eq!(correcting_exponent_bound(&class(2, vec![q(1, 1)], vec![sep])), None);
        let phi = class(1, vec![q(1, 1); 10], vec![nonsep(q(-1, 2))]);
        assert_eq!(correcting_exponent_bound(&phi), None);
    }

    #[test]
    fn genus_zero_realizability() {
        let o = CurveOrbit::new("O", 2, OrbitKind::Regular, false, q(1, 2));
        let phi = class(0, vec![q(1, 2); 3], vec![o]);
        assert_eq!(
            realizability_warnings(&phi),
            vec![
                Diagnostic::OrbitTooLongForGenusZero { orbit: "O".into(), length: 2 },
                Diagnostic::NonSeparatingInGenusZero { orbit: "O".into() },
            ]
        );
        assert!(realizability_warnings(&class(1, vec![q(1, 2)], vec![])).is_empty());
    }
}
