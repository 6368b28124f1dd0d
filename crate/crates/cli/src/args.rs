//! Value parsers for command-line flags.

use dehnplus::{Rational, TwistMove};
use num_bigint::BigInt;

/// `B<i>:<m>` (1-based boundary index) or `O<id>:<m>`.
pub fn twist(s: &str) -> Result<TwistMove, String> {
    let (target, power) = s.rsplit_once(':').ok_or_else(|| format!("expected B<i>:<m> or O<id>:<m>, got {s:?}"))?;
    let power: BigInt = integer(power)?;
    if let Some(index) = target.strip_prefix('B') {
        let index: usize = index.parse().map_err(|_| format!("bad boundary index in {s:?}"))?;
        if index == 0 {
            return Err("boundary components are numbered from B1".into());
        }
        Ok(TwistMove::boundary(index - 1, power))
    } else if let Some(id) = target.strip_prefix('O') {
        if id.is_empty() {
            return Err(format!("missing orbit id in {s:?}"));
        }
        Ok(TwistMove::orbit(id, power))
    } else {
        Err(format!("twist target must start with B or O, got {target:?}"))
    }
}

pub fn integer(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer {s:?}"));
    }
    t.parse().map_err(|_| format!("invalid integer {s:?}"))
}

fn integers(s: &str) -> Result<Vec<BigInt>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(integer).collect()
}

/// A lattice point written as comma-separated integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointArg(pub Vec<BigInt>);

pub fn point(s: &str) -> Result<PointArg, String> {
    integers(s).map(PointArg)
}

/// `lo..hi`; each side is a comma list or a single integer applied to every
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

impl BoxSpec {
    pub fn corners(&self, dimension: usize) -> Result<(Vec<BigInt>, Vec<BigInt>), String> {
        let widen = |v: &[BigInt]| match v.len() {
            1 => Ok(vec![v[0].clone(); dimension]),
            n if n == dimension => Ok(v.to_vec()),
            n => Err(format!("box corner has {n} coordinates, expected 1 or {dimension}")),
        };
        Ok((widen(&self.lo)?, widen(&self.hi)?))
    }
}

pub fn box_spec(s: &str) -> Result<BoxSpec, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let (lo, hi) = (integers(lo)?, integers(hi)?);
    if lo.is_empty() || hi.is_empty() {
        return Err(format!("empty box corner in {s:?}"));
    }
    Ok(BoxSpec { lo, hi })
}

pub fn rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e| format!("{s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dehnplus::TwistTarget;

    #[test]
    fn twists() {
        assert_eq!(twist("B1:-1").unwrap(), TwistMove::boundary(0, -1));
        assert_eq!(twist("O7:3").unwrap(), TwistMove::orbit("7", 3));
        assert_eq!(twist("Oa:b:2").unwrap().target, TwistTarget::Orbit("a:b".into()));
        assert!(twist("B0:1").is_err());
        assert!(twist("X1:1").is_err());
        assert!(twist("B1").is_err());
        assert!(twist("B1:1.5").is_err());
    }

    #[test]
    fn boxes() {
        let b = box_spec("-5..5").unwrap();
        let (lo, hi) = b.corners(2).unwrap();
        assert_eq!(lo, vec![BigInt::from(-5); 2]);
        assert_eq!(hi, vec![BigInt::from(5); 2]);
        let b = box_spec("-1,0..2,3").unwrap();
        assert_eq!(b.corners(2).unwrap().1, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(b.corners(3).is_err());
        assert!(box_spec("1,2").is_err());
    }
}
