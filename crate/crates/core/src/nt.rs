//! Invariant data of a pseudoperiodic mapping class.
//!
//! An [`NtClass`] records what the Nielsen–Thurston decomposition of a
//! pseudoperiodic class exposes numerically: the surface, the fractional
//! Dehn twist coefficient at each boundary component, and one screw number
//! per orbit of invariant curves. Distinct mapping classes can share the
//! same data. Everything downstream (essential parts, the factorization
//! criterion, correcting posets) reads only this data, so every conclusion
//! holds for all classes with the given invariants.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("fr has {found} entries but the surface has {expected} boundary components")]
    BoundaryCountMismatch { expected: usize, found: usize },
    #[error("duplicate orbit id {0:?}")]
    DuplicateOrbitId(String),
    #[error("orbit {0:?} has length 0; orbit lengths must be positive")]
    ZeroOrbitLength(String),
    #[error("orbit id must be non-empty")]
    EmptyOrbitId,
    #[error("invalid move: no such target {0}")]
    InvalidMove(TwistTarget),
}

/// The compact surface of genus `genus` with `boundary` boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Surface {
    pub genus: u32,
    pub boundary: u32,
}

impl Surface {
    pub fn new(genus: u32, boundary: u32) -> Self {
        Surface { genus, boundary }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    /// The first return map preserves the orientation of each curve.
    Regular,
    /// The first return map reverses the orientation of each curve.
    Amphidrome,
}

impl OrbitKind {
    /// Number of iterations after which every curve of an orbit of `length`
    /// curves returns to itself with its orientation preserved.
    pub fn alpha(self, length: u32) -> BigInt {
        match self {
            OrbitKind::Regular => BigInt::from(length),
            OrbitKind::Amphidrome => BigInt::from(length) * 2,
        }
    }

    /// Change of the screw number per Dehn twist about one curve of the orbit.
    pub fn beta(self) -> u8 {
        match self {
            OrbitKind::Regular => 1,
            OrbitKind::Amphidrome => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::Regular => "regular",
            OrbitKind::Amphidrome => "amphidrome",
        }
    }
}

/// One orbit `C_1, …, C_a` of curves of the invariant system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveOrbit {
    pub id: String,
    pub length: u32,
    pub kind: OrbitKind,
    pub separating: bool,
    pub screw: Rational,
}

impl CurveOrbit {
    pub fn new(
        id: impl Into<String>,
        length: u32,
        kind: OrbitKind,
        separating: bool,
        screw: Rational,
    ) -> Self {
        CurveOrbit { id: id.into(), length, kind, separating, screw }
    }

    pub fn alpha(&self) -> BigInt {
        self.kind.alpha(self.length)
    }

    pub fn beta(&self) -> Rational {
        Rational::from_integer(self.kind.beta())
    }
}

/// Numerical Nielsen–Thurston data of a pseudoperiodic mapping class.
///
/// Construct with [`NtClass::new`], which enforces that there is one
/// fractional Dehn twist coefficient per boundary component and that orbit
/// ids are distinct and lengths positive. Screw numbers equal to zero are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "crate::io::ClassWire")]
pub struct NtClass {
    surface: Surface,
    fr: Vec<Rational>,
    orbits: Vec<CurveOrbit>,
}

impl NtClass {
    pub fn new(surface: Surface, fr: Vec<Rational>, orbits: Vec<CurveOrbit>) -> Result<Self, CoreError> {
        if fr.len() != surface.boundary as usize {
            return Err(CoreError::BoundaryCountMismatch {
                expected: surface.boundary as usize,
                found: fr.len(),
            });
        }
        let mut seen = HashSet::new();
        for orbit in &orbits {
            if orbit.id.is_empty() {
                return Err(CoreError::EmptyOrbitId);
            }
            if orbit.length == 0 {
                return Err(CoreError::ZeroOrbitLength(orbit.id.clone()));
            }
            if !seen.insert(orbit.id.as_str()) {
                return Err(CoreError::DuplicateOrbitId(orbit.id.clone()));
            }
        }
        Ok(NtClass { surface, fr, orbits })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn fr(&self) -> &[Rational] {
        &self.fr
    }

    pub fn orbits(&self) -> &[CurveOrbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, id: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.id == id)
    }

    /// Smallest fractional Dehn twist coefficient, `None` without boundary.
    pub fn min_fr(&self) -> Option<&Rational> {
        self.fr.iter().min()
    }

    /// Re-checks the construction invariants; used after deserialisation.
    pub fn validate(&self) -> Result<(), CoreError> {
        NtClass::new(self.surface, self.fr.clone(), self.orbits.clone()).map(|_| ())
    }
}

/// What a twist is performed about.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistTarget {
    /// Boundary component by zero-based index (`B1` is index 0).
    Boundary(usize),
    /// A curve of the orbit with the given id.
    Orbit(String),
}

impl fmt::Display for TwistTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistTarget::Boundary(i) => write!(f, "B{}", i + 1),
            TwistTarget::Orbit(id) => write!(f, "O{id}"),
        }
    }
}

/// Composition with the `power`-th power of a right-handed Dehn twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistMove {
    pub target: TwistTarget,
    pub power: BigInt,
}

impl TwistMove {
    pub fn boundary(index: usize, power: impl Into<BigInt>) -> Self {
        TwistMove { target: TwistTarget::Boundary(index), power: power.into() }
    }

    pub fn orbit(id: impl Into<String>, power: impl Into<BigInt>) -> Self {
        TwistMove { target: TwistTarget::Orbit(id.into()), power: power.into() }
    }
}

/// Integer part rounding toward zero: `floor` for `x >= 0`, `ceil` below.
pub fn int_variant(x: &Rational) -> BigInt {
    x.trunc()
}

/// Applies twist moves to the invariant data.
///
/// A boundary twist `t_{B_i}^m` shifts `fr_i` by `m`; a twist `t_C^m` about a
/// curve of an orbit shifts that orbit's screw number by `β·m`. Moves commute,
/// so the order of `moves` is irrelevant. All targets are checked before any
/// update is applied.
pub fn compose_twists(phi: &NtClass, moves: &[TwistMove]) -> Result<NtClass, CoreError> {
    let mut out = phi.clone();
    let mut resolved = Vec::with_capacity(moves.len());
    for mv in moves {
        let slot = match &mv.target {
            TwistTarget::Boundary(i) if *i < out.fr.len() => Slot::Boundary(*i),
            TwistTarget::Orbit(id) => match out.orbit_index(id) {
                Some(j) => Slot::Orbit(j),
                None => return Err(CoreError::InvalidMove(mv.target.clone())),
            },
            TwistTarget::Boundary(_) => return Err(CoreError::InvalidMove(mv.target.clone())),
        };
        resolved.push((slot, Rational::from_integer(mv.power.clone())));
    }
    for (slot, power) in resolved {
        match slot {
            Slot::Boundary(i) => out.fr[i] = &out.fr[i] + &power,
            Slot::Orbit(j) => {
                let orbit = &mut out.orbits[j];
                orbit.screw = &orbit.screw + &(&orbit.beta() * &power);
            }
        }
    }
    Ok(out)
}

enum Slot {
    Boundary(usize),
    Orbit(usize),
}

/// The data `(n, k)` behind the rational invariants: `fr_i = k_i / n` and
/// `sc_j = k_j α_j / n` with `n` minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub n: BigInt,
    pub k_boundary: Vec<BigInt>,
    pub k_orbit: Vec<BigInt>,
}

pub fn period_data(phi: &NtClass) -> PeriodData {
    let per_orbit: Vec<Rational> = phi
        .orbits
        .iter()
        .map(|o| &o.screw / &Rational::from_integer(o.alpha()))
        .collect();
    let n = phi
        .fr
        .iter()
        .chain(per_orbit.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let n_rat = Rational::from_integer(n.clone());
    let scale = |x: &Rational| {
        let v = &n_rat * x;
        debug_assert!(v.is_integer());
        v.numer().clone()
    };
    PeriodData {
        k_boundary: phi.fr.iter().map(scale).collect(),
        k_orbit: per_orbit.iter().map(scale).collect(),
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn class(g: u32, fr: Vec<Rational>, orbits: Vec<CurveOrbit>) -> NtClass {
        NtClass::new(Surface::new(g, fr.len() as u32), fr, orbits).unwrap()
    }

    #[test]
    fn int_variant_examples() {
        assert_eq!(int_variant(&q(3, 2)), BigInt::from(1));
        assert_eq!(int_variant(&q(-3, 2)), BigInt::from(-1));
        assert_eq!(int_variant(&Rational::zero()), BigInt::from(0));
    }

    #[test]
    fn boundary_move_shifts_fr() {
        let phi = class(2, vec![q(5, 3)], vec![]);
        let out = compose_twists(&phi, &[TwistMove::boundary(0, -1)]).unwrap();
        assert_eq!(out.fr(), &[q(2, 3)]);
    }

    #[test]
    fn empty_move_list_is_identity() {
        let phi = class(
            2,
            vec![q(1, 2), q(-7, 3)],
            vec![CurveOrbit::new("O1", 2, OrbitKind::Regular, false, q(1, 5))],
        );
        assert_eq!(compose_twists(&phi, &[]).unwrap(), phi);
    }

    #[test]
    fn amphidrome_move_doubles() {
        let phi = class(
            1,
            vec![q(1, 2)],
            vec![CurveOrbit::new("A", 1, OrbitKind::Amphidrome, false, q(-7, 2))],
        );
        let out = compose_twists(&phi, &[TwistMove::orbit("A", 1)]).unwrap();
        assert_eq!(out.orbits()[0].screw, q(-3, 2));
    }

    #[test]
    fn unknown_targets_rejected() {
        let phi = class(1, vec![q(1, 2)], vec![]);
        let err = compose_twists(&phi, &[TwistMove::boundary(1, 1)]).unwrap_err();
        assert_eq!(err, CoreError::InvalidMove(TwistTarget::Boundary(1)));
        assert_eq!(err.to_string(), "invalid move: no such target B2");
        let err = compose_twists(&phi, &[TwistMove::orbit("X", 1)]).unwrap_err();
        assert!(err.to_string().contains("OX"));
    }

    #[test]
    fn construction_invariants() {
        let s = Surface::new(1, 2);
        assert_eq!(
            NtClass::new(s, vec![q(1, 2)], vec![]),
            Err(CoreError::BoundaryCountMismatch { expected: 2, found: 1 })
        );
        let o = CurveOrbit::new("O", 1, OrbitKind::Regular, false, q(1, 2));
        assert_eq!(
            NtClass::new(Surface::new(1, 0), vec![], vec![o.clone(), o.clone()]),
            Err(CoreError::DuplicateOrbitId("O".into()))
        );
        let zero = CurveOrbit { length: 0, ..o };
        assert_eq!(
            NtClass::new(Surface::new(1, 0), vec![], vec![zero]),
            Err(CoreError::ZeroOrbitLength("O".into()))
        );
    }

    #[test]
    fn period_data_examples() {
        let phi = class(
            2,
            vec![q(1, 2)],
            vec![CurveOrbit::new("O", 3, OrbitKind::Regular, false, q(3, 2))],
        );
        let pd = period_data(&phi);
        assert_eq!(pd.n, BigInt::from(2));
        assert_eq!(pd.k_boundary, vec![BigInt::from(1)]);
        assert_eq!(pd.k_orbit, vec![BigInt::from(1)]);

        let pd = period_data(&class(1, vec![Rational::zero()], vec![]));
        assert_eq!(pd.n, BigInt::from(1));
        assert_eq!(pd.k_boundary, vec![BigInt::from(0)]);

        let pd = period_data(&class(1, vec![q(2, 3), q(1, 2)], vec![]));
        assert_eq!(pd.n, BigInt::from(6));
        assert_eq!(pd.k_boundary, vec![BigInt::from(4), BigInt::from(3)]);
    }

    #[test]
    fn period_data_uses_alpha_for_amphidrome() {
        // sc = kα/n with α = 2·3 = 6: sc = 3/2 gives k/n = 1/4.
        let phi = class(
            2,
            vec![],
            vec![CurveOrbit::new("A", 3, OrbitKind::Amphidrome, false, q(3, 2))],
        );
        let pd = period_data(&phi);
        assert_eq!(pd.n, BigInt::from(4));
        assert_eq!(pd.k_orbit, vec![BigInt::from(1)]);
    }
}
