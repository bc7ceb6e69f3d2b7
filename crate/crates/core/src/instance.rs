//! Syndrome decoding instances: planting, verification, serialization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{syndrome, RingMatrix};
use crate::ring::RingSpec;
use crate::sampling::sample_weight_w_rng;
use crate::systematic::{random_code_rng, systematic_form_rng, CodeType};
use crate::vector::LeeVector;

/// An SDP instance (H, s, t): find e with e H^T = s and wt_L(e) <= t
/// (the decoders target wt_L(e) = t exactly).
#[derive(Debug, Clone, PartialEq)]
pub struct SdpInstance {
    pub h: RingMatrix,
    pub syndrome: LeeVector,
    pub t: u64,
    pub ring: RingSpec,
    pub profile: Option<CodeType>,
}

impl SdpInstance {
    pub fn new(
        h: RingMatrix,
        s: LeeVector,
        t: u64,
        profile: Option<CodeType>,
    ) -> Result<Self> {
        let ring = *h.ring();
        if s.ring() != &ring {
            return Err(Error::RingMismatch(ring.modulus(), s.ring().modulus()));
        }
        if s.len() != h.rows() {
            return Err(Error::DimensionMismatch(format!(
                "syndrome length {} vs {} parity checks",
                s.len(),
                h.rows()
            )));
        }
        let max_t = h.cols() as u64 * ring.max_weight();
        if t > max_t {
            return Err(Error::WeightOutOfRange { w: t, max: max_t });
        }
        Ok(SdpInstance {
            h,
            syndrome: s,
            t,
            ring,
            profile,
        })
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Profile of the underlying code, discovering it once if not given.
    pub fn discovered_profile(&self, seed: u64) -> Result<CodeType> {
        if let Some(p) = &self.profile {
            return Ok(p.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(systematic_form_rng(&self.h, &mut rng)?.profile)
    }

    /// True iff e H^T = s and wt_L(e) <= t.
    pub fn verify_solution(&self, e: &LeeVector) -> Result<bool> {
        if e.len() != self.n() {
            return Err(Error::LengthMismatch(e.len(), self.n()));
        }
        Ok(e.lee_weight() <= self.t && syndrome(&self.h, e)? == self.syndrome)
    }

    /// True iff e H^T = s and wt_L(e) = t exactly.
    pub fn verify_solution_exact(&self, e: &LeeVector) -> Result<bool> {
        if e.len() != self.n() {
            return Err(Error::LengthMismatch(e.len(), self.n()));
        }
        Ok(e.lee_weight() == self.t && syndrome(&self.h, e)? == self.syndrome)
    }
}

/// A planted instance together with the error vector it was built from.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub instance: SdpInstance,
    pub e_planted: LeeVector,
}

/// Plants an instance: a random code of the requested profile, a uniform
/// error of Lee weight exactly t, and the induced syndrome.
pub fn plant(profile: &CodeType, t: u64, ring: &RingSpec, seed: u64) -> Result<PlantedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    plant_rng(profile, t, ring, &mut rng)
}

pub fn plant_rng(
    profile: &CodeType,
    t: u64,
    ring: &RingSpec,
    rng: &mut impl Rng,
) -> Result<PlantedInstance> {
    let n = profile.n;
    let h = random_code_rng(profile, ring, rng)?;
    let e = sample_weight_w_rng(n, t, ring, rng)?;
    let s = syndrome(&h, &e)?;
    let instance = SdpInstance::new(h, s, t, Some(profile.clone()))?;
    Ok(PlantedInstance {
        instance,
        e_planted: e,
    })
}

/// On-disk JSON schema for instances; residues are canonical.
#[derive(Serialize, Deserialize)]
struct InstanceFile {
    p: u64,
    s: u32,
    n: usize,
    t: u64,
    #[serde(rename = "H")]
    h: Vec<Vec<u64>>,
    syndrome: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_planted: Option<Vec<u64>>,
}

pub fn to_json(inst: &SdpInstance, e_planted: Option<&LeeVector>) -> String {
    let file = InstanceFile {
        p: inst.ring.p(),
        s: inst.ring.s(),
        n: inst.n(),
        t: inst.t,
        h: (0..inst.h.rows()).map(|r| inst.h.row(r).to_vec()).collect(),
        syndrome: inst.syndrome.entries().to_vec(),
        e_planted: e_planted.map(|e| e.entries().to_vec()),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization")
}

pub fn from_json(text: &str) -> Result<(SdpInstance, Option<LeeVector>)> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("instance parse error: {e}")))?;
    let ring = RingSpec::new(file.p, file.s)?;
    let h = RingMatrix::from_rows(file.h, ring)?;
    if h.cols() != file.n {
        return Err(Error::DimensionMismatch(format!(
            "H has {} columns, header says n = {}",
            h.cols(),
            file.n
        )));
    }
    let s = LeeVector::new(file.syndrome, ring);
    let inst = SdpInstance::new(h, s, file.t, None)?;
    let planted = file.e_planted.map(|e| LeeVector::new(e, ring));
    if let Some(e) = &planted {
        if e.len() != inst.n() {
            return Err(Error::LengthMismatch(e.len(), inst.n()));
        }
    }
    Ok((inst, planted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_plant_t_zero() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(10, 4, 3).unwrap();
        let p = plant(&profile, 0, &ring, 3).unwrap();
        assert!(p.e_planted.is_zero());
        assert!(p.instance.syndrome.is_zero());
        assert!(p.instance.verify_solution(&p.e_planted).unwrap());
    }

    #[test]
    fn plant_verify_round_trip() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(20, 5, 3).unwrap();
        for seed in 0..30 {
            let p = plant(&profile, 9, &ring, seed).unwrap();
            assert_eq!(p.e_planted.lee_weight(), 9);
            assert!(p.instance.verify_solution(&p.e_planted).unwrap());
            assert!(p.instance.verify_solution_exact(&p.e_planted).unwrap());
        }
    }

    #[test]
    fn equal_seeds_equal_instances() {
        let ring = RingSpec::new(5, 1).unwrap();
        let profile = CodeType::free(12, 4, 1).unwrap();
        let a = plant(&profile, 4, &ring, 77).unwrap();
        let b = plant(&profile, 4, &ring, 77).unwrap();
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.e_planted, b.e_planted);
    }

    #[test]
    fn zero_vector_fails_nonzero_syndrome() {
        let ring = RingSpec::new(5, 1).unwrap();
        let profile = CodeType::free(12, 4, 1).unwrap();
        let p = plant(&profile, 4, &ring, 5).unwrap();
        let zero = LeeVector::zero(12, ring);
        assert!(!p.instance.verify_solution(&zero).unwrap());
    }

    #[test]
    fn overweight_kernel_shift_fails() {
        // e_planted plus a codeword of positive weight exceeding the budget
        let ring = RingSpec::new(3, 2).unwrap();
        let profile = CodeType::free(10, 3, 2).unwrap();
        let p = plant(&profile, 3, &ring, 11).unwrap();
        // find a nonzero kernel element by brute force over small supports
        let h = &p.instance.h;
        let mut kernel = None;
        'outer: for a in 0..9u64 {
            for b in 0..9u64 {
                for c in 0..9u64 {
                    if a == 0 && b == 0 && c == 0 {
                        continue;
                    }
                    let mut v = LeeVector::zero(10, ring);
                    v.set(0, a);
                    v.set(1, b);
                    v.set(2, c);
                    // extend over two more digits to search a few more shapes
                    if syndrome(h, &v).unwrap().is_zero() {
                        kernel = Some(v);
                        break 'outer;
                    }
                }
            }
        }
        if let Some(cw) = kernel {
            let shifted = p.e_planted.add(&cw).unwrap();
            if shifted.lee_weight() > p.instance.t {
                assert!(!p.instance.verify_solution(&shifted).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip_bit_exact() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::new(8, vec![2, 2]).unwrap();
        let p = plant(&profile, 3, &ring, 9).unwrap();
        let text = to_json(&p.instance, Some(&p.e_planted));
        let (inst2, e2) = from_json(&text).unwrap();
        assert_eq!(inst2.h, p.instance.h);
        assert_eq!(inst2.syndrome, p.instance.syndrome);
        assert_eq!(inst2.t, p.instance.t);
        assert_eq!(e2.unwrap(), p.e_planted);
        let text2 = to_json(&inst2, None);
        let (inst3, none) = from_json(&text2).unwrap();
        assert_eq!(inst3.h, inst2.h);
        assert!(none.is_none());
    }
}
