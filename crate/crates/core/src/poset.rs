//! The certified part of a correcting poset.
//!
//! The correcting poset `L_φ` collects the integer vectors `a` such that
//! shifting the fractional Dehn twist coefficients of `φ` by `a` (composing
//! with boundary twists `t_{B_i}^{a_i}`) yields a positively factorizable
//! class. Deciding full membership needs more than the invariant data, so
//! this module works with the *known region*: the points certified by one of
//! the two routes of [`classify`](crate::factorization::classify). The known
//! region is upward closed and is stored by its minimal generators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorization::{classify, shift_invariant_criterion_total};
use crate::invariants::essential_part;
use crate::nt::{compose_twists, NtClass, TwistMove};
use crate::rational::Rational;

/// Default cap on the number of points [`enumerate_box`] evaluates.
pub const DEFAULT_BOX_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("box lower corner exceeds upper corner in coordinate {0}")]
    EmptyBox(usize),
    #[error("box holds {volume} points, more than the cap of {cap}")]
    BoxTooLarge { volume: BigInt, cap: u64 },
}

pub type Point = Vec<BigInt>;

fn dominates(p: &[BigInt], g: &[BigInt]) -> bool {
    p.iter().zip(g).all(|(a, b)| a >= b)
}

/// An upward-closed subset of `Z^r` given by an antichain of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetRegion {
    pub dimension: usize,
    #[serde(with = "crate::serde_util::int_vec_vec")]
    generators: Vec<Point>,
}

impl PosetRegion {
    pub fn empty(dimension: usize) -> Self {
        PosetRegion { dimension, generators: Vec::new() }
    }

    /// Upward closure of `points`; dominated points are dropped so the
    /// generators form an antichain, kept in lexicographic order.
    pub fn from_points(dimension: usize, points: impl IntoIterator<Item = Point>) -> Result<Self, PosetError> {
        let mut candidates = BTreeSet::new();
        for p in points {
            if p.len() != dimension {
                return Err(PosetError::DimensionMismatch { expected: dimension, found: p.len() });
            }
            candidates.insert(p);
        }
        let generators = candidates
            .iter()
            .filter(|p| !candidates.iter().any(|g| g != *p && dominates(p, g)))
            .cloned()
            .collect();
        Ok(PosetRegion { dimension, generators })
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_antichain(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators.iter().enumerate().all(|(j, b)| i == j || !dominates(a, b)))
    }
}

/// Membership in the upward closure of the generators.
pub fn contains(region: &PosetRegion, point: &[BigInt]) -> Result<bool, PosetError> {
    if point.len() != region.dimension {
        return Err(PosetError::DimensionMismatch { expected: region.dimension, found: point.len() });
    }
    Ok(region.generators.iter().any(|g| dominates(point, g)))
}

/// Generators of the known region of `L_φ`.
///
/// The main route needs every screw number positive and `fr_i + a_i > 0`,
/// giving the point `a_i = ⌊-fr_i⌋ + 1`. The criterion route needs its
/// fr-independent hypotheses and `fr_i + a_i > k·Σd_j` for all `i`, giving
/// `a_i = ⌊k·Σd_j - fr_i⌋ + 1`.
pub fn known_region(phi: &NtClass) -> PosetRegion {
    let dimension = phi.fr().len();
    if dimension == 0 {
        return PosetRegion::empty(0);
    }
    let mut points = Vec::new();
    if phi.orbits().iter().all(|o| o.screw.is_positive()) {
        points.push(phi.fr().iter().map(|x| (-x).next_integer_above()).collect());
    }
    if let Some(total) = shift_invariant_criterion_total(phi) {
        let total = Rational::from_integer(total);
        points.push(phi.fr().iter().map(|x| (&total - x).next_integer_above()).collect());
    }
    PosetRegion::from_points(dimension, points).expect("points built with the region's dimension")
}

fn shifted(phi: &NtClass, a: &[BigInt]) -> NtClass {
    let moves: Vec<TwistMove> = a.iter().enumerate().map(|(i, x)| TwistMove::boundary(i, x.clone())).collect();
    compose_twists(phi, &moves).expect("one move per boundary component")
}

/// Result of comparing the known regions of `φ` and its essential part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InclusionCheck {
    /// Every generator of the essential part's region lies in `φ`'s region.
    Holds,
    /// A generator of the essential part's region outside `φ`'s region.
    Violated {
        #[serde(with = "crate::serde_util::int_vec")]
        generator: Point,
    },
    /// The inclusion is only expected when the essential part is obtained by
    /// non-positive boundary twists alone.
    Skipped { reason: String },
}

/// Checks `L_{φ̃} ⊂ L_φ` on the known regions, where `φ̃` is the essential
/// part.
///
/// The inclusion rests on `fr(φ̃) <= fr(φ)` and on `φ̃` and `φ` agreeing
/// away from the boundary, so it is checked only when every boundary
/// exponent is `<= 0` and every orbit exponent is zero; otherwise the check
/// is skipped.
pub fn essential_inclusion_check(phi: &NtClass) -> InclusionCheck {
    let ess = essential_part(phi);
    if let Some(i) = ess.boundary_exponents.iter().position(|n| n.is_positive()) {
        return InclusionCheck::Skipped {
            reason: format!("boundary exponent at B{} is positive, so fr grows", i + 1),
        };
    }
    if let Some(j) = ess.orbit_exponents.iter().position(|m| !m.is_zero()) {
        return InclusionCheck::Skipped {
            reason: format!("orbit {} is twisted, so the classes differ away from the boundary", phi.orbits()[j].id),
        };
    }
    let outer = known_region(phi);
    let inner = known_region(&ess.essential);
    match inner.generators().iter().find(|g| !contains(&outer, g).expect("same dimension")) {
        Some(g) => InclusionCheck::Violated { generator: g.clone() },
        None => InclusionCheck::Holds,
    }
}

/// Points of the box `[lo, hi]` certified by [`classify`], evaluated one by
/// one without consulting [`known_region`].
pub fn enumerate_box(phi: &NtClass, lo: &[BigInt], hi: &[BigInt], cap: u64) -> Result<BTreeSet<Point>, PosetError> {
    let dimension = phi.fr().len();
    for corner in [lo, hi] {
        if corner.len() != dimension {
            return Err(PosetError::DimensionMismatch { expected: dimension, found: corner.len() });
        }
    }
    let mut volume = BigInt::one();
    for (i, (l, h)) in lo.iter().zip(hi).enumerate() {
        if l > h {
            return Err(PosetError::EmptyBox(i));
        }
        volume *= h - l + 1;
    }
    if volume > BigInt::from(cap) {
        return Err(PosetError::BoxTooLarge { volume, cap });
    }
    let total = volume.to_u64().expect("bounded by cap");

    let mut out = BTreeSet::new();
    let mut point: Point = lo.to_vec();
    for _ in 0..total {
        if classify(&shifted(phi, &point)).is_positively_factorizable() {
            out.insert(point.clone());
        }
        // odometer step, last coordinate fastest
        for i in (0..dimension).rev() {
            if point[i] < hi[i] {
                point[i] += 1;
                break;
            }
            point[i] = lo[i].clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nt::{CurveOrbit, OrbitKind, Surface};

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn class(fr: Vec<Rational>, screw: Rational, separating: bool) -> NtClass {
        let o = CurveOrbit::new("O1", 1, OrbitKind::Regular, separating, screw);
        NtClass::new(Surface::new(2, fr.len() as u32), fr, vec![o]).unwrap()
    }

    fn box_members(region: &PosetRegion, lo: i64, hi: i64) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for x in lo..=hi {
            for y in lo..=hi {
                let p = pt(&[x, y]);
                if contains(region, &p).unwrap() {
                    out.insert(p);
                }
            }
        }
        out
    }

    #[test]
    fn known_region_main_route() {
        let phi = class(vec![q(5, 3), q(1, 3)], q(1, 2), false);
        let region = known_region(&phi);
        assert_eq!(region.generators(), &[pt(&[-1, 0])]);
    }

    #[test]
    fn known_region_criterion_route() {
        let phi = class(vec![q(5, 1), q(5, 1)], q(-1, 2), false);
        let region = known_region(&phi);
        assert_eq!(region.generators(), &[pt(&[-2, -2])]);
        assert!(contains(&region, &pt(&[0, 0])).unwrap());
        assert!(!contains(&region, &pt(&[-3, 0])).unwrap());
    }

    #[test]
    fn known_region_empty_when_no_route() {
        let phi = class(vec![q(5, 1), q(5, 1)], q(-1, 2), true);
        assert!(known_region(&phi).is_empty());
    }

    #[test]
    fn contains_examples() {
        let region = PosetRegion::from_points(2, vec![pt(&[-1, 0])]).unwrap();
        assert!(contains(&region, &pt(&[0, 0])).unwrap());
        assert!(!contains(&region, &pt(&[-1, -1])).unwrap());
        assert!(!contains(&PosetRegion::empty(2), &pt(&[7, 7])).unwrap());
        assert_eq!(
            contains(&region, &pt(&[0])),
            Err(PosetError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn from_points_keeps_antichain() {
        let region = PosetRegion::from_points(2, vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[-1, 2]), pt(&[0, 0])]).unwrap();
        assert_eq!(region.generators(), &[pt(&[-1, 2]), pt(&[0, 0])]);
        assert!(region.is_antichain());
    }

    #[test]
    fn inclusion_examples() {
        let phi = class(vec![q(5, 3), q(1, 3)], q(1, 2), false);
        assert_eq!(essential_inclusion_check(&phi), InclusionCheck::Holds);
        let ess = class(vec![q(2, 3), q(-1, 3)], q(1, 2), false);
        assert_eq!(essential_inclusion_check(&ess), InclusionCheck::Holds);
        let grows = class(vec![q(-3, 2)], q(1, 2), false);
        assert!(matches!(essential_inclusion_check(&grows), InclusionCheck::Skipped { .. }));
    }

    #[test]
    fn enumerate_box_matches_region() {
        let phi = class(vec![q(5, 1), q(5, 1)], q(-1, 2), false);
        let got = enumerate_box(&phi, &pt(&[-3, -3]), &pt(&[3, 3]), DEFAULT_BOX_CAP).unwrap();
        assert_eq!(got, box_members(&PosetRegion::from_points(2, vec![pt(&[-2, -2])]).unwrap(), -3, 3));

        let phi = class(vec![q(5, 3), q(1, 3)], q(1, 2), false);
        let got = enumerate_box(&phi, &pt(&[-2, -2]), &pt(&[2, 2]), DEFAULT_BOX_CAP).unwrap();
        assert_eq!(got, box_members(&PosetRegion::from_points(2, vec![pt(&[-1, 0])]).unwrap(), -2, 2));

        let none = class(vec![q(5, 1), q(5, 1)], q(-1, 2), true);
        assert!(enumerate_box(&none, &pt(&[-3, -3]), &pt(&[3, 3]), DEFAULT_BOX_CAP).unwrap().is_empty());
    }

    #[test]
    fn enumerate_box_errors() {
        let phi = class(vec![q(1, 1), q(1, 1)], q(1, 2), false);
        assert!(matches!(
            enumerate_box(&phi, &pt(&[0, 0]), &pt(&[2000, 2000]), DEFAULT_BOX_CAP),
            Err(PosetError::BoxTooLarge { .. })
        ));
        assert_eq!(enumerate_box(&phi, &pt(&[1, 0]), &pt(&[0, 0]), 10), Err(PosetError::EmptyBox(0)));
        assert!(matches!(
            enumerate_box(&phi, &pt(&[0]), &pt(&[0]), 10),
            Err(PosetError::DimensionMismatch { .. })
        ));
    }
}
