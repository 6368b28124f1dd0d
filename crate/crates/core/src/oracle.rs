//! A first-principles model of a curve orbit, used to cross-check the
//! closed-form twist formulas.
//!
//! Each curve `C_i` of an orbit gets an annular neighbourhood, lifted to the
//! strip `R × [0, 1]` with coordinates `(x, t)`: `x` runs along the curve (one
//! unit is one full turn) and `t` across it. The orbit map sends the annulus
//! of `C_i` to the annulus of `C_{σ(i)}` by an affine map
//!
//! * `(x, t) ↦ (x, t)` when the step preserves the curve's orientation,
//! * `(x, t) ↦ (-x, 1 - t)` when it reverses it (the sides swap, so the
//!   surface orientation is kept),
//!
//! followed by a fractional right-handed twist `(y, u) ↦ (y + τ_i u, u)` on
//! the target annulus. The screw number is read off the definition: find the
//! first return `F = φ^α` to `C_1` that preserves orientation, iterate it
//! until `F^m` is the identity on both boundary circles (so `φ^{αm}` is a
//! power `t^k` of the Dehn twist near `C_1`), and return `kα/n` with
//! `n = αm`. Nothing here uses the formula `sc = β·Στ_i` or the twist update
//! rule; agreement with them is what the tests establish.

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("orbit model must have at least one curve")]
    Empty,
    #[error("permutation, flips and twists have different lengths")]
    LengthMismatch,
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
}

/// An affine map `v ↦ M v + c` of the plane with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Affine {
    m: [[Rational; 2]; 2],
    c: [Rational; 2],
}

impl Affine {
    fn identity() -> Self {
        let (z, o) = (Rational::zero(), Rational::from_integer(1));
        Affine { m: [[o.clone(), z.clone()], [z.clone(), o]], c: [z.clone(), z] }
    }

    fn reverse() -> Self {
        let (z, o) = (Rational::zero(), Rational::from_integer(1));
        Affine { m: [[-&o, z.clone()], [z.clone(), -&o]], c: [z, o] }
    }

    fn twist(tau: &Rational) -> Self {
        let (z, o) = (Rational::zero(), Rational::from_integer(1));
        Affine { m: [[o.clone(), tau.clone()], [z.clone(), o]], c: [z.clone(), z] }
    }

    /// `self ∘ inner`
    fn after(&self, inner: &Affine) -> Affine {
        let a = &self.m;
        let b = &inner.m;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        let shift = |i: usize| &(&(&a[i][0] * &inner.c[0]) + &(&a[i][1] * &inner.c[1])) + &self.c[i];
        Affine { m: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]], c: [shift(0), shift(1)] }
    }

    fn preserves_curve_orientation(&self) -> bool {
        self.m[0][0].is_positive()
    }

    /// Displacement along the curve of the point `(0, t)`; for a map that
    /// preserves the curve orientation it does not depend on `x`.
    fn displacement_at(&self, t: &Rational) -> Rational {
        &(&self.m[0][1] * t) + &self.c[0]
    }
}

/// One orbit of `a` curves with the step data of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitModel {
    permutation: Vec<usize>,
    flips: Vec<bool>,
    twists: Vec<Rational>,
}

impl OrbitModel {
    /// `permutation[i]` is the index of the curve that `C_i` is sent to.
    /// It must be a single cycle through all indices.
    pub fn new(permutation: Vec<usize>, flips: Vec<bool>, twists: Vec<Rational>) -> Result<Self, OracleError> {
        let a = permutation.len();
        if a == 0 {
            return Err(OracleError::Empty);
        }
        if flips.len() != a || twists.len() != a {
            return Err(OracleError::LengthMismatch);
        }
        if let Some(&bad) = permutation.iter().find(|&&p| p >= a) {
            return Err(OracleError::MalformedPermutation(format!("image {bad} out of range 0..{a}")));
        }
        let mut seen = vec![false; a];
        let mut i = 0;
        for _ in 0..a {
            if seen[i] {
                return Err(OracleError::MalformedPermutation("not a single cycle".into()));
            }
            seen[i] = true;
            i = permutation[i];
        }
        if i != 0 || seen.iter().any(|s| !s) {
            return Err(OracleError::MalformedPermutation("not a single cycle".into()));
        }
        Ok(OrbitModel { permutation, flips, twists })
    }

    /// The standard cycle `C_i ↦ C_{i+1}`.
    pub fn cycle(flips: Vec<bool>, twists: Vec<Rational>) -> Result<Self, OracleError> {
        let a = flips.len();
        OrbitModel::new((0..a).map(|i| (i + 1) % a.max(1)).collect(), flips, twists)
    }

    pub fn size(&self) -> usize {
        self.permutation.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn twists(&self) -> &[Rational] {
        &self.twists
    }

    /// An odd number of orientation-reversing steps makes the orbit amphidrome.
    pub fn is_amphidrome(&self) -> bool {
        self.flips.iter().filter(|f| **f).count() % 2 == 1
    }

    pub fn beta(&self) -> i64 {
        if self.is_amphidrome() {
            2
        } else {
            1
        }
    }

    pub fn with_twist(&self, index: usize, tau: Rational) -> Self {
        let mut out = self.clone();
        out.twists[index] = tau;
        out
    }

    /// The same orbit with indices rotated so that old index `shift` becomes 0.
    pub fn relabeled(&self, shift: usize) -> Self {
        let a = self.size();
        let old = |i: usize| (i + shift) % a;
        let new = |j: usize| (j + a - shift % a) % a;
        OrbitModel {
            permutation: (0..a).map(|i| new(self.permutation[old(i)])).collect(),
            flips: (0..a).map(|i| self.flips[old(i)]).collect(),
            twists: (0..a).map(|i| self.twists[old(i)].clone()).collect(),
        }
    }

    fn step(&self, i: usize) -> Affine {
        let base = if self.flips[i] { Affine::reverse() } else { Affine::identity() };
        Affine::twist(&self.twists[i]).after(&base)
    }

    /// `φ^α` on the annulus of `C_start`, together with `α`.
    fn first_return(&self, start: usize) -> (usize, Affine) {
        let mut map = Affine::identity();
        let mut at = start;
        let mut steps = 0;
        loop {
            map = self.step(at).after(&map);
            at = self.permutation[at];
            steps += 1;
            if at == start && map.preserves_curve_orientation() {
                return (steps, map);
            }
        }
    }
}

/// Screw number of the orbit, measured at curve `start`.
pub fn orbit_model_screw_at(model: &OrbitModel, start: usize) -> Rational {
    let (alpha, first_return) = model.first_return(start);
    let zero = Rational::zero();
    let one = Rational::from_integer(1);
    let mut power = first_return.clone();
    let mut m: u64 = 1;
    // F^m fixes both boundary circles once its displacements there are integral.
    while !(power.displacement_at(&zero).is_integer() && power.displacement_at(&one).is_integer()) {
        power = first_return.after(&power);
        m += 1;
    }
    let k = &power.displacement_at(&one) - &power.displacement_at(&zero);
    let alpha = Rational::from_integer(alpha as u64);
    let n = &alpha * &Rational::from_integer(m);
    debug_assert!(k.is_integer());
    &(&k * &alpha) / &n
}

/// Screw number of the orbit at its first curve.
pub fn orbit_model_screw(model: &OrbitModel) -> Rational {
    orbit_model_screw_at(model, 0)
}

/// Whether changing the twist at the first curve by `m` changes the
/// simulated screw number by exactly `β·m`.
pub fn differential_check_formula(model: &OrbitModel, m: i64) -> bool {
    let tau = &model.twists()[0] + &Rational::from_integer(m);
    let moved = model.with_twist(0, tau);
    let diff = &orbit_model_screw(&moved) - &orbit_model_screw(model);
    diff == Rational::from_integer(BigInt::from(model.beta()) * m)
}
