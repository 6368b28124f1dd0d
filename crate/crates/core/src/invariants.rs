//! Essential parts and the sign predicates on invariant data.

use num_bigint::BigInt;

use crate::nt::{compose_twists, int_variant, CurveOrbit, NtClass, OrbitKind, TwistMove};
use crate::rational::Rational;

/// Outcome of [`essential_part`]: the exponents of the correcting twists and
/// the resulting essential data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialResult {
    pub essential: NtClass,
    /// Exponent `n_i` of `t_{B_i}`, indexed like `fr`.
    pub boundary_exponents: Vec<BigInt>,
    /// Exponent `m_j` of the twist about a curve of orbit `j`, in orbit order.
    pub orbit_exponents: Vec<BigInt>,
}

impl EssentialResult {
    /// The twist moves that turn the original class into `essential`.
    pub fn moves(&self) -> Vec<TwistMove> {
        let boundary = self
            .boundary_exponents
            .iter()
            .enumerate()
            .map(|(i, n)| TwistMove::boundary(i, n.clone()));
        let orbits = self
            .essential
            .orbits()
            .iter()
            .zip(&self.orbit_exponents)
            .map(|(o, m)| TwistMove::orbit(o.id.clone(), m.clone()));
        boundary.chain(orbits).collect()
    }

    pub fn is_trivial(&self) -> bool {
        let zero = BigInt::from(0);
        self.boundary_exponents.iter().chain(&self.orbit_exponents).all(|e| *e == zero)
    }
}

fn screw_bound(kind: OrbitKind) -> Rational {
    Rational::from_integer(kind.beta())
}

/// `|fr_i| < 1` everywhere, `|sc| < 1` on regular orbits and `|sc| < 2` on
/// amphidrome ones.
pub fn is_essential(phi: &NtClass) -> bool {
    let one = Rational::from_integer(1);
    phi.fr().iter().all(|x| x.abs() < one)
        && phi.orbits().iter().all(|o| o.screw.abs() < screw_bound(o.kind))
}

/// All fractional Dehn twist coefficients and all screw numbers are
/// strictly positive.
pub fn is_fully_right_veering(phi: &NtClass) -> bool {
    phi.fr().iter().all(Rational::is_positive) && phi.orbits().iter().all(|o| o.screw.is_positive())
}

/// Computes the unique twist correction making `phi` essential while keeping
/// the sign of every non-zero invariant.
///
/// The exponents are `n_i = -int(fr_i)` and `m_j = -int(sc_j / β_j)`.
pub fn essential_part(phi: &NtClass) -> EssentialResult {
    let boundary_exponents: Vec<BigInt> = phi.fr().iter().map(|x| -int_variant(x)).collect();
    let orbit_exponents: Vec<BigInt> = phi
        .orbits()
        .iter()
        .map(|o| -int_variant(&(&o.screw / &o.beta())))
        .collect();
    let moves: Vec<TwistMove> = boundary_exponents
        .iter()
        .enumerate()
        .map(|(i, n)| TwistMove::boundary(i, n.clone()))
        .chain(phi.orbits().iter().zip(&orbit_exponents).map(|(o, m)| TwistMove::orbit(o.id.clone(), m.clone())))
        .collect();
    let essential = compose_twists(phi, &moves).expect("moves built from phi's own targets");
    EssentialResult { essential, boundary_exponents, orbit_exponents }
}

fn sign_kept(original: &Rational, corrected: &Rational) -> bool {
    corrected.is_zero() || corrected.signum() == original.signum()
}

fn boundary_ok(original: &Rational, corrected: &Rational) -> bool {
    corrected.abs() < Rational::from_integer(1) && sign_kept(original, corrected)
}

fn orbit_ok(original: &CurveOrbit, corrected: &CurveOrbit) -> bool {
    corrected.screw.abs() < screw_bound(corrected.kind) && sign_kept(&original.screw, &corrected.screw)
}

/// Checks the three defining conditions of an essential part of `original`
/// against `candidate`: essential, fr signs kept, screw signs kept.
///
/// `candidate` must have the same surface and orbit list as `original`.
pub fn essential_conditions_hold(original: &NtClass, candidate: &NtClass) -> bool {
    original.fr().len() == candidate.fr().len()
        && original.orbits().len() == candidate.orbits().len()
        && original.fr().iter().zip(candidate.fr()).all(|(a, b)| boundary_ok(a, b))
        && original.orbits().iter().zip(candidate.orbits()).all(|(a, b)| orbit_ok(a, b))
}

/// Brute-force uniqueness check for [`essential_part`].
///
/// Scans every exponent within `±window` of the closed-form one, applying
/// the move through [`compose_twists`] and testing the defining conditions.
/// Each move changes exactly one invariant and the conditions are a
/// conjunction over invariants, so the admissible exponent tuples form a
/// product of per-coordinate sets. The tuple is unique iff each coordinate
/// admits exactly one exponent, which is what is scanned here; this keeps
/// the cost linear in the number of invariants.
pub fn verify_essential_uniqueness(phi: &NtClass, window: u32) -> bool {
    let closed = essential_part(phi);
    let w = i64::from(window);

    let boundary_unique = closed.boundary_exponents.iter().enumerate().all(|(i, n)| {
        let admissible: Vec<BigInt> = (-w..=w)
            .map(|delta| n + delta)
            .filter(|cand| {
                let moved = compose_twists(phi, &[TwistMove::boundary(i, cand.clone())]).expect("valid index");
                boundary_ok(&phi.fr()[i], &moved.fr()[i])
            })
            .collect();
        admissible.len() == 1 && admissible[0] == *n
    });

    let orbit_unique = closed.orbit_exponents.iter().zip(phi.orbits()).enumerate().all(|(j, (m, orbit))| {
        let admissible: Vec<BigInt> = (-w..=w)
            .map(|delta| m + delta)
            .filter(|cand| {
                let moved = compose_twists(phi, &[TwistMove::orbit(orbit.id.clone(), cand.clone())]).expect("valid id");
                orbit_ok(orbit, &moved.orbits()[j])
            })
            .collect();
        admissible.len() == 1 && admissible[0] == *m
    });

    boundary_unique && orbit_unique
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nt::Surface;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn class(fr: Vec<Rational>, orbits: Vec<CurveOrbit>) -> NtClass {
        NtClass::new(Surface::new(2, fr.len() as u32), fr, orbits).unwrap()
    }

    fn regular(screw: Rational) -> CurveOrbit {
        CurveOrbit::new("O1", 1, OrbitKind::Regular, false, screw)
    }

    fn amphidrome(screw: Rational) -> CurveOrbit {
        CurveOrbit::new("A1", 1, OrbitKind::Amphidrome, false, screw)
    }

    #[test]
    fn is_essential_examples() {
        assert!(is_essential(&class(vec![q(2, 3)], vec![regular(q(-1, 2))])));
        assert!(is_essential(&class(vec![Rational::zero()], vec![])));
        assert!(!is_essential(&class(vec![q(1, 2)], vec![amphidrome(q(2, 1))])));
        assert!(is_essential(&class(vec![q(1, 2)], vec![amphidrome(q(-19, 10))])));
        assert!(!is_essential(&class(vec![q(1, 1)], vec![])));
    }

    #[test]
    fn essential_part_examples() {
        let r = essential_part(&class(vec![q(5, 3)], vec![]));
        assert_eq!(r.boundary_exponents, vec![BigInt::from(-1)]);
        assert_eq!(r.essential.fr(), &[q(2, 3)]);

        let r = essential_part(&class(vec![q(-5, 3)], vec![regular(q(-3, 4))]));
        assert_eq!(r.boundary_exponents, vec![BigInt::from(1)]);
        assert_eq!(r.orbit_exponents, vec![BigInt::from(0)]);
        assert_eq!(r.essential.fr(), &[q(-2, 3)]);
        assert_eq!(r.essential.orbits()[0].screw, q(-3, 4));

        let r = essential_part(&class(vec![q(1, 2)], vec![amphidrome(q(-7, 2))]));
        assert_eq!(r.orbit_exponents, vec![BigInt::from(1)]);
        let sc = &r.essential.orbits()[0].screw;
        assert_eq!(*sc, q(-3, 2));
        assert!(sc.abs() > q(1, 1) && sc.abs() < q(2, 1));
    }

    #[test]
    fn odd_integer_amphidrome_screw_misses_strict_lower_bound() {
        // int(-3) = -3 is odd, yet the corrected screw number is -1, not in (1, 2).
        let r = essential_part(&class(vec![], vec![amphidrome(q(-3, 1))]));
        assert_eq!(r.essential.orbits()[0].screw, q(-1, 1));
        assert!(is_essential(&r.essential));
    }

    #[test]
    fn moves_reproduce_essential() {
        let phi = class(vec![q(7, 2), q(-9, 4)], vec![regular(q(13, 5)), amphidrome(q(-11, 3))]);
        let r = essential_part(&phi);
        assert_eq!(compose_twists(&phi, &r.moves()).unwrap(), r.essential);
        assert!(essential_conditions_hold(&phi, &r.essential));
    }

    #[test]
    fn uniqueness_examples() {
        assert!(verify_essential_uniqueness(&class(vec![q(5, 3)], vec![]), 3));
        assert!(verify_essential_uniqueness(&class(vec![Rational::zero()], vec![]), 2));
        assert!(verify_essential_uniqueness(&class(vec![q(1, 2)], vec![amphidrome(q(-7, 2))]), 3));
    }

    #[test]
    fn fully_right_veering_examples() {
        assert!(is_fully_right_veering(&class(vec![q(5, 3), q(1, 3)], vec![regular(q(1, 2))])));
        assert!(!is_fully_right_veering(&class(vec![Rational::zero()], vec![])));
        assert!(!is_fully_right_veering(&class(vec![q(2, 1)], vec![regular(q(-1, 2))])));
    }

    #[test]
    fn idempotent_on_essential_input() {
        let phi = class(vec![q(-1, 2)], vec![regular(q(1, 3))]);
        assert!(essential_part(&phi).is_trivial());
    }
}
