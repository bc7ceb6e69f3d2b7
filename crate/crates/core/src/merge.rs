//! List-merge primitives shared by the birthday-style decoders: sorted key
//! lists, the concatenation merge, the representation merge, and the final
//! merge that extends a small-instance solution to the full one.

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::RingSpec;
use crate::vector::LeeVector;

/// Key of a list entry: the last `u` positions of a partial syndrome.
pub type MergeKey = Vec<u64>;

/// A list of error fragments sorted lexicographically by key; ties are broken
/// by the fragment bytes so merges are deterministic.
#[derive(Debug, Clone)]
pub struct MergeList {
    entries: Vec<(MergeKey, Vec<u64>)>,
}

impl MergeList {
    pub fn build(fragments: Vec<Vec<u64>>, mut key_of: impl FnMut(&[u64]) -> MergeKey) -> Self {
        let mut entries: Vec<(MergeKey, Vec<u64>)> = fragments
            .into_iter()
            .map(|f| (key_of(&f), f))
            .collect();
        entries.sort();
        MergeList { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(MergeKey, Vec<u64>)] {
        &self.entries
    }

    pub fn fragments(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.entries.iter().map(|(_, f)| f)
    }

    /// All fragments whose key equals `key`.
    pub fn matches(&self, key: &MergeKey) -> &[(MergeKey, Vec<u64>)] {
        let lo = self.entries.partition_point(|(k, _)| k < key);
        let hi = self.entries.partition_point(|(k, _)| k <= key);
        &self.entries[lo..hi]
    }

    pub fn is_sorted(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Last `u` positions of x * B^T.
fn partial_syndrome(b: &RingMatrix, x: &[u64], u: usize) -> MergeKey {
    let ring = b.ring();
    let rows = b.rows();
    debug_assert!(u <= rows);
    let mut key = Vec::with_capacity(u);
    for r in rows - u..rows {
        let row = b.row(r);
        let mut acc: u128 = 0;
        for (a, &xi) in row.iter().zip(x) {
            acc += *a as u128 * xi as u128;
        }
        key.push((acc % ring.modulus() as u128) as u64);
    }
    key
}

fn sub_key(ring: &RingSpec, target: &[u64], key: &MergeKey) -> MergeKey {
    target
        .iter()
        .zip(key)
        .map(|(&t, &k)| ring.sub(t, k))
        .collect()
}

/// Concatenation merge: pairs (e1, e2) from L1 x L2 with
/// B1 e1^T = s_target^T - B2 e2^T on the last `u` positions, emitted as the
/// concatenated fragments e1 || e2.
pub fn merge_concat(
    l1: &[Vec<u64>],
    l2: &[Vec<u64>],
    u: usize,
    b1: &RingMatrix,
    b2: &RingMatrix,
    s_target: &LeeVector,
) -> Result<Vec<Vec<u64>>> {
    check_merge_dims(b1, u, s_target)?;
    check_merge_dims(b2, u, s_target)?;
    let ring = b1.ring();
    let target_tail: Vec<u64> = s_target.entries()[s_target.len() - u..].to_vec();

    let sorted = MergeList::build(l1.to_vec(), |f| partial_syndrome(b1, f, u));
    let mut out = Vec::new();
    for e2 in l2 {
        let k2 = partial_syndrome(b2, e2, u);
        let want = sub_key(ring, &target_tail, &k2);
        for (_, e1) in sorted.matches(&want) {
            let mut joined = e1.clone();
            joined.extend_from_slice(e2);
            out.push(joined);
        }
    }
    Ok(out)
}

/// Representation merge: sums e1 + e2 over L1 x L2 that agree with the target
/// on the last `u` positions of their B-syndromes and have Lee weight exactly
/// `v_target`.
pub fn merge(
    l1: &[Vec<u64>],
    l2: &[Vec<u64>],
    u: usize,
    v_target: u64,
    b: &RingMatrix,
    s_target: &LeeVector,
) -> Result<Vec<Vec<u64>>> {
    check_merge_dims(b, u, s_target)?;
    let ring = *b.ring();
    let target_tail: Vec<u64> = s_target.entries()[s_target.len() - u..].to_vec();

    let sorted = MergeList::build(l1.to_vec(), |f| partial_syndrome(b, f, u));
    let mut out = Vec::new();
    for e2 in l2 {
        let k2 = partial_syndrome(b, e2, u);
        let want = sub_key(&ring, &target_tail, &k2);
        for (_, e1) in sorted.matches(&want) {
            let sum: Vec<u64> = e1.iter().zip(e2).map(|(&a, &b2)| ring.add(a, b2)).collect();
            let wt: u64 = sum.iter().map(|&x| crate::ring::lee_weight(x, &ring)).sum();
            if wt == v_target {
                out.push(sum);
            }
        }
    }
    Ok(out)
}

/// Final merge: the first pair whose sum has Lee weight `v_target`, matches
/// `s2` on the last `u` positions, and whose extension
/// s1 - (e1+e2) A^T has Lee weight exactly `w`. Returns (e1, e2, extension).
#[allow(clippy::too_many_arguments)]
pub fn last_merge(
    l1: &[Vec<u64>],
    l2: &[Vec<u64>],
    u: usize,
    v_target: u64,
    b: &RingMatrix,
    s2: &LeeVector,
    s1: &LeeVector,
    a: &RingMatrix,
    w: u64,
    early_abort: bool,
) -> Result<Option<(Vec<u64>, Vec<u64>, Vec<u64>)>> {
    check_merge_dims(b, u, s2)?;
    if a.rows() != s1.len() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows, s1 has length {}",
            a.rows(),
            s1.len()
        )));
    }
    let ring = *b.ring();
    let target_tail: Vec<u64> = s2.entries()[s2.len() - u..].to_vec();

    let sorted = MergeList::build(l1.to_vec(), |f| partial_syndrome(b, f, u));
    for e2 in l2 {
        let k2 = partial_syndrome(b, e2, u);
        let want = sub_key(&ring, &target_tail, &k2);
        for (_, e1) in sorted.matches(&want) {
            let sum: Vec<u64> = e1.iter().zip(e2).map(|(&x, &y)| ring.add(x, y)).collect();
            let wt: u64 = sum.iter().map(|&x| crate::ring::lee_weight(x, &ring)).sum();
            if wt != v_target {
                continue;
            }
            if let Some(ext) = extension_with_weight(a, s1, &sum, w, early_abort) {
                return Ok(Some((e1.clone(), e2.clone(), ext)));
            }
        }
    }
    Ok(None)
}

/// Computes s1 - x A^T and returns it iff its Lee weight is exactly `w`.
/// With `early_abort` the accumulation stops as soon as the running weight
/// exceeds the target.
pub(crate) fn extension_with_weight(
    a: &RingMatrix,
    s1: &LeeVector,
    x: &[u64],
    w: u64,
    early_abort: bool,
) -> Option<Vec<u64>> {
    let ring = a.ring();
    let m = ring.modulus();
    let rows = a.rows();
    let mut ext = Vec::with_capacity(rows);
    let mut wt = 0u64;
    for r in 0..rows {
        let row = a.row(r);
        let mut acc: u128 = 0;
        for (c, &xi) in x.iter().enumerate() {
            acc += row[c] as u128 * xi as u128;
        }
        let val = ring.sub(s1.get(r), (acc % m as u128) as u64);
        wt += crate::ring::lee_weight(val, ring);
        ext.push(val);
        if early_abort && wt > w {
            return None;
        }
    }
    (wt == w).then_some(ext)
}

fn check_merge_dims(b: &RingMatrix, u: usize, s_target: &LeeVector) -> Result<()> {
    if u > b.rows() {
        return Err(Error::InvalidParams(format!(
            "merge window u = {u} exceeds {} syndrome positions",
            b.rows()
        )));
    }
    if s_target.len() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "target length {} vs {} rows",
            s_target.len(),
            b.rows()
        )));
    }
    Ok(())
}
