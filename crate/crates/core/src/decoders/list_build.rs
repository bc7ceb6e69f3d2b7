//! Construction of the weighted candidate lists together with their partial
//! syndromes.
//!
//! Two interchangeable paths build the same list in the same order: the
//! plain one multiplies every sphere vector with the key matrices from
//! scratch, the intermediate-sums one extends partial products coordinate by
//! coordinate while walking the sphere, so the product of a weight-w vector
//! reuses the work done for its weight-(w-1) prefix.

use crate::matrix::RingMatrix;
use crate::ring::{lee_weight, RingSpec};
use crate::sampling::enumerate_sphere;

/// (fragment, key) pairs: fragment over `len` local coordinates of weight
/// exactly `w`; key = concatenation of fragment * K_i^T over the key
/// matrices, each taken modulo its own modulus.
pub struct KeyedList {
    pub fragments: Vec<Vec<u64>>,
    pub keys: Vec<Vec<u64>>,
}

/// A key component: the matrix columns corresponding to the fragment
/// coordinates, and the modulus the product lives in.
pub struct KeyPart<'a> {
    /// rows x len block; entry (r, c) multiplies fragment coordinate c.
    pub mat: &'a RingMatrix,
    /// Column offset of the fragment inside `mat`.
    pub col_offset: usize,
    pub modulus: u64,
}

pub fn build_keyed_list(
    len: usize,
    w: u64,
    ring: &RingSpec,
    parts: &[KeyPart<'_>],
    intermediate_sums: bool,
) -> KeyedList {
    if intermediate_sums {
        build_incremental(len, w, ring, parts)
    } else {
        build_plain(len, w, ring, parts)
    }
}

fn key_width(parts: &[KeyPart<'_>]) -> usize {
    parts.iter().map(|p| p.mat.rows()).sum()
}

fn build_plain(len: usize, w: u64, ring: &RingSpec, parts: &[KeyPart<'_>]) -> KeyedList {
    let fragments = enumerate_sphere(len, w, ring);
    let keys = fragments
        .iter()
        .map(|f| {
            let mut key = Vec::with_capacity(key_width(parts));
            for part in parts {
                for r in 0..part.mat.rows() {
                    let mut acc: u128 = 0;
                    for (c, &x) in f.iter().enumerate() {
                        acc += part.mat.get(r, part.col_offset + c) as u128 * x as u128;
                    }
                    key.push((acc % part.modulus as u128) as u64);
                }
            }
            key
        })
        .collect();
    KeyedList { fragments, keys }
}

fn build_incremental(len: usize, w: u64, ring: &RingSpec, parts: &[KeyPart<'_>]) -> KeyedList {
    let width = key_width(parts);
    let mut out = KeyedList {
        fragments: Vec::new(),
        keys: Vec::new(),
    };
    let mut frag = vec![0u64; len];
    let mut key = vec![0u64; width];
    descend(ring, parts, &mut frag, &mut key, 0, w, &mut out);
    out
}

fn descend(
    ring: &RingSpec,
    parts: &[KeyPart<'_>],
    frag: &mut Vec<u64>,
    key: &mut Vec<u64>,
    pos: usize,
    remaining: u64,
    out: &mut KeyedList,
) {
    let len = frag.len();
    if pos == len {
        if remaining == 0 {
            out.fragments.push(frag.clone());
            out.keys.push(key.clone());
        }
        return;
    }
    let slots_left = (len - pos) as u64;
    if remaining > slots_left * ring.max_weight() {
        return;
    }
    for x in 0..ring.modulus() {
        let wt = lee_weight(x, ring);
        if wt > remaining {
            continue;
        }
        frag[pos] = x;
        let saved = if x == 0 {
            None
        } else {
            let snapshot = key.clone();
            let mut off = 0;
            for part in parts {
                for r in 0..part.mat.rows() {
                    let contrib =
                        (part.mat.get(r, part.col_offset + pos) as u128 * x as u128
                            % part.modulus as u128) as u64;
                    key[off + r] = (key[off + r] + contrib) % part.modulus;
                }
                off += part.mat.rows();
            }
            Some(snapshot)
        };
        descend(ring, parts, frag, key, pos + 1, remaining - wt, out);
        if let Some(snapshot) = saved {
            *key = snapshot;
        }
    }
    frag[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn both_paths_agree() {
        let ring = RingSpec::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = RingMatrix::random(3, 6, ring, &mut rng);
        let c = RingMatrix::random(2, 6, ring, &mut rng);
        let parts = [
            KeyPart {
                mat: &a,
                col_offset: 1,
                modulus: 8,
            },
            KeyPart {
                mat: &c,
                col_offset: 1,
                modulus: 4,
            },
        ];
        for w in 0..=6 {
            let plain = build_keyed_list(4, w, &ring, &parts, false);
            let fast = build_keyed_list(4, w, &ring, &parts, true);
            assert_eq!(plain.fragments, fast.fragments);
            assert_eq!(plain.keys, fast.keys);
        }
    }
}
