use num_integer::Integer;

use super::{CommRing, RingError};

/// `Z/n` with residues in `0..n`. `ZMod(1)` is the zero ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    n: u64,
}

impl ZMod {
    pub fn new(n: u64) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Malformed("modulus must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.n as i64) as u64
    }
}

impl CommRing for ZMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.n
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }

    fn owns(&self, a: &u64) -> bool {
        *a < self.n
    }

    fn inverse(&self, a: &u64) -> Option<u64> {
        if self.n == 1 {
            return Some(0);
        }
        let e = (*a as i128).extended_gcd(&(self.n as i128));
        (e.gcd == 1).then(|| e.x.rem_euclid(self.n as i128) as u64)
    }
}

/// The residue projection `Z/n → Z/m`, a ring map exactly when `m | n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZModProjection {
    pub source: ZMod,
    pub target: ZMod,
}

impl ZModProjection {
    pub fn new(source: ZMod, target: ZMod) -> Result<Self, RingError> {
        if !source.modulus().is_multiple_of(target.modulus()) {
            return Err(RingError::Malformed(format!(
                "{} does not divide {}",
                target.modulus(),
                source.modulus()
            )));
        }
        Ok(Self { source, target })
    }

    pub fn apply(&self, a: u64) -> u64 {
        a % self.target.modulus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{is_unit, ring_mul, UnitTest};

    #[test]
    fn product_mod_12() {
        let r = ZMod::new(12).unwrap();
        assert_eq!(ring_mul(&r, &5, &7).unwrap(), 11);
        assert_eq!(ring_mul(&r, &12, &1), Err(RingError::OwnerMismatch));
    }

    #[test]
    fn unit_examples() {
        let r = ZMod::new(12).unwrap();
        assert_eq!(is_unit(&r, &5).unwrap(), UnitTest::Unit { inverse: 5 });
        assert_eq!(is_unit(&r, &4).unwrap(), UnitTest::NonUnit { witness: Some(2) });
        assert_eq!(is_unit(&r, &9).unwrap(), UnitTest::NonUnit { witness: Some(3) });
    }

    #[test]
    fn zero_ring() {
        let r = ZMod::new(1).unwrap();
        assert!(r.is_zero_ring());
        assert!(is_unit(&r, &0).unwrap().is_unit());
        assert!(ZMod::new(0).is_err());
    }

    #[test]
    fn projection_requires_divisibility() {
        let p = ZModProjection::new(ZMod::new(12).unwrap(), ZMod::new(4).unwrap()).unwrap();
        assert_eq!(p.apply(7), 3);
        assert!(ZModProjection::new(ZMod::new(12).unwrap(), ZMod::new(5).unwrap()).is_err());
    }
}
