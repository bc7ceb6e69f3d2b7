use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{lee_weight, RingSpec};

/// A vector over Z/p^s with canonical residues in [0, m).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeeVector {
    entries: Vec<u64>,
    ring: RingSpec,
}

impl LeeVector {
    /// Canonicalizes every entry on construction.
    pub fn new(entries: Vec<u64>, ring: RingSpec) -> Self {
        let entries = entries.into_iter().map(|e| ring.reduce(e)).collect();
        LeeVector { entries, ring }
    }

    pub fn from_signed(entries: &[i64], ring: RingSpec) -> Self {
        LeeVector {
            entries: entries.iter().map(|&e| ring.canon(e)).collect(),
            ring,
        }
    }

    pub fn zero(len: usize, ring: RingSpec) -> Self {
        LeeVector {
            entries: vec![0; len],
            ring,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: u64) {
        self.entries[i] = self.ring.reduce(v);
    }

    pub fn lee_weight(&self) -> u64 {
        self.entries
            .iter()
            .map(|&e| lee_weight(e, &self.ring))
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &LeeVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.modulus(),
                other.ring.modulus(),
            ));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn add(&self, other: &LeeVector) -> Result<LeeVector> {
        self.check_compatible(other)?;
        Ok(LeeVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| self.ring.add(a, b))
                .collect(),
            ring: self.ring,
        })
    }

    pub fn sub(&self, other: &LeeVector) -> Result<LeeVector> {
        self.check_compatible(other)?;
        Ok(LeeVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| self.ring.sub(a, b))
                .collect(),
            ring: self.ring,
        })
    }

    pub fn neg(&self) -> LeeVector {
        LeeVector {
            entries: self.entries.iter().map(|&a| self.ring.neg(a)).collect(),
            ring: self.ring,
        }
    }

    pub fn lee_distance(&self, other: &LeeVector) -> Result<u64> {
        Ok(self.sub(other)?.lee_weight())
    }

    /// Projection onto the coordinates of `positions`, in order.
    pub fn project(&self, positions: &[usize]) -> LeeVector {
        LeeVector {
            entries: positions.iter().map(|&i| self.entries[i]).collect(),
            ring: self.ring,
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> LeeVector {
        LeeVector {
            entries: self.entries[range].to_vec(),
            ring: self.ring,
        }
    }

    pub fn concat(&self, other: &LeeVector) -> Result<LeeVector> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.modulus(),
                other.ring.modulus(),
            ));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(LeeVector {
            entries,
            ring: self.ring,
        })
    }
}

/// Lee distance between two vectors of equal length over the same ring.
pub fn lee_distance(x: &LeeVector, y: &LeeVector) -> Result<u64> {
    x.lee_distance(y)
}

impl fmt::Display for LeeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(m: u64) -> RingSpec {
        RingSpec::from_modulus(m).unwrap()
    }

    #[test]
    fn distance_examples() {
        let z5 = ring(5);
        let x = LeeVector::new(vec![0, 0], z5);
        assert_eq!(x.lee_distance(&x).unwrap(), 0);

        let x = LeeVector::new(vec![1, 2], z5);
        let y = LeeVector::new(vec![4, 2], z5);
        assert_eq!(x.lee_distance(&y).unwrap(), 2);

        let z7 = ring(7);
        let x = LeeVector::new(vec![3, 3, 3], z7);
        let y = LeeVector::zero(3, z7);
        assert_eq!(x.lee_distance(&y).unwrap(), 9);
    }

    #[test]
    fn mismatches_error() {
        let x = LeeVector::zero(2, ring(5));
        let y = LeeVector::zero(3, ring(5));
        assert!(matches!(
            x.lee_distance(&y),
            Err(Error::LengthMismatch(2, 3))
        ));
        let z = LeeVector::zero(2, ring(7));
        assert!(matches!(x.lee_distance(&z), Err(Error::RingMismatch(5, 7))));
    }

    #[test]
    fn canonicalization() {
        let v = LeeVector::new(vec![5, 6, 12], ring(5));
        assert_eq!(v.entries(), &[0, 1, 2]);
        let w = LeeVector::from_signed(&[-1, -7], ring(5));
        assert_eq!(w.entries(), &[4, 3]);
    }

    #[test]
    fn triangle_inequality_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in [4u64, 5, 8, 9] {
            let r = ring(m);
            for _ in 0..200 {
                let n = rng.gen_range(1..8);
                let v = |rng: &mut rand_chacha::ChaCha8Rng| {
                    LeeVector::new((0..n).map(|_| rng.gen_range(0..m)).collect(), r)
                };
                let (x, y, z) = (v(&mut rng), v(&mut rng), v(&mut rng));
                let dxz = x.lee_distance(&z).unwrap();
                let dxy = x.lee_distance(&y).unwrap();
                let dyz = y.lee_distance(&z).unwrap();
                assert!(dxz <= dxy + dyz);
            }
        }
    }
}
