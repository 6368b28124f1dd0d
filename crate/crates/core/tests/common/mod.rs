#![allow(dead_code)]

use dehnplus::{CurveOrbit, NtClass, OrbitKind, Rational, Surface};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 50`, `1 <= q <= 12`.
pub fn rational(rng: &mut impl Rng) -> Rational {
    Rational::frac(rng.gen_range(-50..=50), rng.gen_range(1..=12))
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    Rational::frac(rng.gen_range(1..=50), rng.gen_range(1..=12))
}

pub fn kind(rng: &mut impl Rng) -> OrbitKind {
    if rng.gen_bool(0.5) {
        OrbitKind::Regular
    } else {
        OrbitKind::Amphidrome
    }
}

pub fn orbit(rng: &mut impl Rng, j: usize, screw: Rational) -> CurveOrbit {
    CurveOrbit::new(format!("O{}", j + 1), rng.gen_range(1..=4), kind(rng), rng.gen_bool(0.3), screw)
}

/// Up to 6 boundary components and 6 orbits, genus 0 to 5.
pub fn class(rng: &mut impl Rng) -> NtClass {
    let genus = rng.gen_range(0..=5);
    let r = rng.gen_range(0..=6);
    let s = rng.gen_range(0..=6);
    let fr = (0..r).map(|_| rational(rng)).collect();
    let orbits = (0..s).map(|j| {
        let sc = rational(rng);
        orbit(rng, j, sc)
    }).collect();
    NtClass::new(Surface::new(genus, r), fr, orbits).unwrap()
}

pub fn class_with_boundary(rng: &mut impl Rng, r: u32) -> NtClass {
    let genus = rng.gen_range(1..=5);
    let s = rng.gen_range(0..=4);
    let fr = (0..r).map(|_| rational(rng)).collect();
    let orbits = (0..s).map(|j| {
        let sc = rational(rng);
        orbit(rng, j, sc)
    }).collect();
    NtClass::new(Surface::new(genus, r), fr, orbits).unwrap()
}

/// Inputs meeting every hypothesis of the criterion except the inequality:
/// genus >= 1 with a valid `k`, all fr positive, separating orbits positive.
pub fn criterion_applicable(rng: &mut impl Rng) -> NtClass {
    let genus = rng.gen_range(1..=5);
    let r = rng.gen_range(1..=6);
    let s = rng.gen_range(0..=6);
    let fr = (0..r).map(|_| positive_rational(rng)).collect();
    let orbits = (0..s)
        .map(|j| {
            let mut o = orbit(rng, j, Rational::zero());
            o.screw = if o.separating { positive_rational(rng) } else { rational(rng) };
            o
        })
        .collect();
    NtClass::new(Surface::new(genus, r), fr, orbits).unwrap()
}

pub fn big_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.05) {
        let digits: String = (0..rng.gen_range(20..40)).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect();
        let p: BigInt = format!("1{digits}").parse().unwrap();
        let p = if rng.gen_bool(0.5) { -p } else { p };
        Rational::new(p, BigInt::from(rng.gen_range(1..=97))).unwrap()
    } else {
        rational(rng)
    }
}

/// A random single-cycle permutation of `0..a`.
pub fn cycle_permutation(rng: &mut impl Rng, a: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..a).collect();
    order.shuffle(rng);
    let mut perm = vec![0; a];
    for i in 0..a {
        perm[order[i]] = order[(i + 1) % a];
    }
    perm
}
