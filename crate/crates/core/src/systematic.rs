//! Systematic form and partial Gaussian elimination for parity-check
//! matrices over Z/p^s.
//!
//! The systematic form groups pivots by p-adic valuation: valuation-0 pivots
//! make up the identity block on the last n-K columns, valuation-w pivots
//! (w >= 1) the graded blocks p^w * Id inside the information set. Columns
//! without a pivot form the free part of the information set.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::RingSpec;

/// Type profile (k_1, ..., k_s) of a ring linear code of length n:
/// cardinality (p^s)^{k_1} (p^{s-1})^{k_2} ... p^{k_s}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeType {
    pub n: usize,
    pub k_profile: Vec<usize>,
}

impl CodeType {
    pub fn new(n: usize, k_profile: Vec<usize>) -> Result<Self> {
        let k_sum: usize = k_profile.iter().sum();
        if k_profile.is_empty() {
            return Err(Error::InfeasibleProfile("empty profile".into()));
        }
        if k_sum > n {
            return Err(Error::InfeasibleProfile(format!(
                "K = {k_sum} exceeds length {n}"
            )));
        }
        Ok(CodeType { n, k_profile })
    }

    /// Free profile (k, 0, ..., 0) with s entries.
    pub fn free(n: usize, k: usize, s: u32) -> Result<Self> {
        let mut prof = vec![0; s as usize];
        prof[0] = k;
        CodeType::new(n, prof)
    }

    pub fn s(&self) -> u32 {
        self.k_profile.len() as u32
    }

    /// Information set size K = sum of the k_i.
    pub fn big_k(&self) -> usize {
        self.k_profile.iter().sum()
    }

    pub fn k1(&self) -> usize {
        self.k_profile[0]
    }

    /// Rational type exponent k = k_1 + sum_{i>=2} k_i (s-i+1)/s.
    pub fn k_f64(&self) -> f64 {
        let s = self.s() as f64;
        self.k_profile
            .iter()
            .enumerate()
            .map(|(idx, &ki)| {
                let i = idx as f64 + 1.0;
                if idx == 0 {
                    ki as f64
                } else {
                    ki as f64 * (s - i + 1.0) / s
                }
            })
            .sum()
    }
}

/// Result of the full systematic reduction: U * H * P = H_sys, with U
/// invertible and P the column permutation `perm` (position j of the
/// permuted matrix holds original column perm[j]).
#[derive(Debug, Clone)]
pub struct SystematicForm {
    pub u: RingMatrix,
    pub perm: Vec<usize>,
    pub h_sys: RingMatrix,
    pub profile: CodeType,
}

impl SystematicForm {
    /// Scatter an error vector in permuted coordinates back to the original
    /// coordinate order.
    pub fn unpermute(&self, permuted: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.perm.len()];
        for (j, &orig) in self.perm.iter().enumerate() {
            out[orig] = permuted[j];
        }
        out
    }
}

/// Brings H into the systematic form with a fresh random column order drawn
/// from `seed`. The discovered profile is reported, not assumed.
pub fn systematic_form(h: &RingMatrix, seed: u64) -> Result<SystematicForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    systematic_form_rng(h, &mut rng)
}

pub fn systematic_form_rng(h: &RingMatrix, rng: &mut impl Rng) -> Result<SystematicForm> {
    let mut col_order: Vec<usize> = (0..h.cols()).collect();
    col_order.shuffle(rng);
    systematic_form_ordered(h, &col_order)
}

/// Deterministic variant: columns are considered for pivoting in the order
/// given. Useful to steer the (already systematic) identity onto chosen
/// positions.
pub fn systematic_form_ordered(h: &RingMatrix, col_order: &[usize]) -> Result<SystematicForm> {
    let ring = *h.ring();
    let s = ring.s() as usize;
    let p = ring.p();
    let rows = h.rows();
    let n = h.cols();

    let mut w = h.clone();
    let mut u = RingMatrix::identity(rows, ring);
    // pivot bookkeeping: per column the (stage, row), per row the stage
    let mut col_pivot: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut row_stage: Vec<Option<usize>> = vec![None; rows];

    let mut p_pow = vec![1u64; s + 1];
    for i in 1..=s {
        p_pow[i] = p_pow[i - 1] * p;
    }

    for stage in 0..s {
        // entries can drop to this stage's valuation while clearing, so
        // rescan until a full pass finds nothing
        loop {
            let mut placed = false;
            for &c in col_order {
                if col_pivot[c].is_some() {
                    continue;
                }
                let pivot_row = (0..rows).find(|&r| {
                    row_stage[r].is_none() && ring.valuation(w.get(r, c)) as usize == stage
                });
                let Some(r) = pivot_row else { continue };
                let unit = w.get(r, c) / p_pow[stage];
                let inv = ring.inv(unit)?;
                w.row_scale(r, inv);
                u.row_scale(r, inv);
                for r2 in 0..rows {
                    if r2 == r || matches!(row_stage[r2], Some(st) if st < stage) {
                        continue;
                    }
                    let x = w.get(r2, c);
                    if x != 0 {
                        debug_assert_eq!(x % p_pow[stage], 0);
                        let factor = x / p_pow[stage];
                        w.row_sub_scaled(r2, r, factor);
                        u.row_sub_scaled(r2, r, factor);
                    }
                }
                col_pivot[c] = Some((stage, r));
                row_stage[r] = Some(stage);
                placed = true;
            }
            if !placed {
                break;
            }
        }
    }

    let pivot_count = row_stage.iter().filter(|st| st.is_some()).count();
    if pivot_count == 0 {
        return Err(Error::ZeroMatrix);
    }
    if pivot_count < rows {
        return Err(Error::RankDeficient(rows - pivot_count));
    }

    // column layout: free | stage s-1 | stage s-2 | ... | stage 1 | stage 0
    let free_cols: Vec<usize> = col_order
        .iter()
        .copied()
        .filter(|&c| col_pivot[c].is_none())
        .collect();
    let mut stage_cols: Vec<Vec<usize>> = vec![Vec::new(); s];
    for &c in col_order {
        if let Some((stage, _)) = col_pivot[c] {
            stage_cols[stage].push(c);
        }
    }

    let mut perm = Vec::with_capacity(n);
    perm.extend(&free_cols);
    for stage in (1..s).rev() {
        perm.extend(&stage_cols[stage]);
    }
    perm.extend(&stage_cols[0]);

    // row layout mirrors the column layout so pivots land on identities
    let mut row_order = Vec::with_capacity(rows);
    row_order.extend(stage_cols[0].iter().map(|&c| col_pivot[c].unwrap().1));
    for stage in 1..s {
        row_order.extend(stage_cols[stage].iter().map(|&c| col_pivot[c].unwrap().1));
    }

    let mut u_perm = RingMatrix::zero(rows, rows, ring);
    for (new_r, &old_r) in row_order.iter().enumerate() {
        for c in 0..rows {
            u_perm.set(new_r, c, u.get(old_r, c));
        }
    }
    let mut h_sys = RingMatrix::zero(rows, n, ring);
    for (new_r, &old_r) in row_order.iter().enumerate() {
        for (new_c, &old_c) in perm.iter().enumerate() {
            h_sys.set(new_r, new_c, w.get(old_r, old_c));
        }
    }

    let k1 = free_cols.len();
    let mut k_profile = vec![0usize; s];
    k_profile[0] = k1;
    for stage in 1..s {
        // valuation-w pivots belong to column group j = s - w + 1
        k_profile[s - stage] = stage_cols[stage].len();
    }
    let profile = CodeType::new(n, k_profile)?;

    Ok(SystematicForm {
        u: u_perm,
        perm,
        h_sys,
        profile,
    })
}

/// Result of partial Gaussian elimination with parameter ell:
/// U * H * P = [[A, Id_{n-K-ell}], [B, 0]].
#[derive(Debug, Clone)]
pub struct PartialGaussian {
    pub a: RingMatrix,
    pub b: RingMatrix,
    pub u: RingMatrix,
    pub perm: Vec<usize>,
    pub ell: usize,
}

impl PartialGaussian {
    pub fn unpermute(&self, permuted: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.perm.len()];
        for (j, &orig) in self.perm.iter().enumerate() {
            out[orig] = permuted[j];
        }
        out
    }
}

pub const PGE_RETRY_BUDGET: usize = 100;

/// Partial Gaussian elimination: reduces the last n-K-ell columns (under a
/// random permutation) to an identity using unit pivots only. Retries with
/// fresh permutations up to the budget.
pub fn partial_gaussian(h: &RingMatrix, ell: usize, seed: u64) -> Result<PartialGaussian> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    partial_gaussian_rng(h, ell, &mut rng)
}

pub fn partial_gaussian_rng(
    h: &RingMatrix,
    ell: usize,
    rng: &mut impl Rng,
) -> Result<PartialGaussian> {
    let n = h.cols();
    let unit_rank = unit_rank(h);
    let n_k = unit_rank; // n - K
    if ell > n_k {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} exceeds n - K = {n_k}"
        )));
    }
    let target = n_k - ell;
    for _ in 0..PGE_RETRY_BUDGET {
        let mut col_order: Vec<usize> = (0..n).collect();
        col_order.shuffle(rng);
        if let Some(res) = try_partial(h, target, ell, &col_order) {
            return Ok(res);
        }
    }
    Err(Error::ShapeUnreachable(PGE_RETRY_BUDGET))
}

fn try_partial(
    h: &RingMatrix,
    target: usize,
    ell: usize,
    col_order: &[usize],
) -> Option<PartialGaussian> {
    let ring = *h.ring();
    let rows = h.rows();
    let n = h.cols();
    let mut w = h.clone();
    let mut u = RingMatrix::identity(rows, ring);
    let mut pivot_cols: Vec<usize> = Vec::with_capacity(target);
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(target);
    let mut row_used = vec![false; rows];
    let mut col_used = vec![false; n];

    for &c in col_order {
        if pivot_cols.len() == target {
            break;
        }
        let pivot_row = (0..rows).find(|&r| !row_used[r] && ring.is_unit(w.get(r, c)));
        let Some(r) = pivot_row else { continue };
        let inv = ring.inv(w.get(r, c)).ok()?;
        w.row_scale(r, inv);
        u.row_scale(r, inv);
        for r2 in 0..rows {
            if r2 != r {
                let factor = w.get(r2, c);
                if factor != 0 {
                    w.row_sub_scaled(r2, r, factor);
                    u.row_sub_scaled(r2, r, factor);
                }
            }
        }
        row_used[r] = true;
        col_used[c] = true;
        pivot_cols.push(c);
        pivot_rows.push(r);
    }
    if pivot_cols.len() < target {
        return None;
    }

    let head_cols: Vec<usize> = col_order.iter().copied().filter(|&c| !col_used[c]).collect();
    let mut perm = head_cols.clone();
    perm.extend(&pivot_cols);

    let mut row_order = pivot_rows.clone();
    row_order.extend((0..rows).filter(|&r| !row_used[r]));

    let head = head_cols.len(); // K + ell
    let mut a = RingMatrix::zero(target, head, ring);
    let mut b = RingMatrix::zero(rows - target, head, ring);
    let mut u_out = RingMatrix::zero(rows, rows, ring);
    for (new_r, &old_r) in row_order.iter().enumerate() {
        for c in 0..rows {
            u_out.set(new_r, c, u.get(old_r, c));
        }
        for (new_c, &old_c) in head_cols.iter().enumerate() {
            let val = w.get(old_r, old_c);
            if new_r < target {
                a.set(new_r, new_c, val);
            } else {
                b.set(new_r - target, new_c, val);
            }
        }
    }
    // rows below the identity must vanish on the pivot columns
    debug_assert!(row_order[target..]
        .iter()
        .all(|&r| pivot_cols.iter().all(|&c| w.get(r, c) == 0)));
    let _ = head;

    Some(PartialGaussian {
        a,
        b,
        u: u_out,
        perm,
        ell,
    })
}

/// Rank of H over the residue field Z/p (number of unit pivots available).
pub fn unit_rank(h: &RingMatrix) -> usize {
    let ring = *h.ring();
    let p = ring.p();
    let rows = h.rows();
    let cols = h.cols();
    // reduce a copy mod p
    let mut w: Vec<Vec<u64>> = (0..rows)
        .map(|r| h.row(r).iter().map(|&x| x % p).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| w[r][c] % p != 0) else {
            continue;
        };
        w.swap(rank, r);
        let inv = mod_inv(w[rank][c], p);
        for x in w[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..rows {
            if r2 != rank && w[r2][c] != 0 {
                let f = w[r2][c];
                for cc in 0..cols {
                    let sub = f * w[rank][cc] % p;
                    w[r2][cc] = (w[r2][cc] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_inv(x: u64, p: u64) -> u64 {
    // p is prime
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Random parity-check matrix whose systematic form recovers the requested
/// profile: a random systematic matrix is scrambled by an invertible row
/// transform and a column permutation, then checked by round-trip.
pub fn random_code(profile: &CodeType, ring: &RingSpec, seed: u64) -> Result<RingMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_code_rng(profile, ring, &mut rng)
}

pub fn random_code_rng(
    profile: &CodeType,
    ring: &RingSpec,
    rng: &mut impl Rng,
) -> Result<RingMatrix> {
    let s = ring.s() as usize;
    if profile.s() as usize != s {
        return Err(Error::InfeasibleProfile(format!(
            "profile has {} parts, ring has s = {s}",
            profile.s()
        )));
    }
    let n = profile.n;
    let big_k = profile.big_k();
    let k1 = profile.k1();
    let rows = n - k1;
    if rows == 0 {
        return Err(Error::InfeasibleProfile(
            "profile leaves no parity checks".into(),
        ));
    }

    let _ = big_k;
    for _ in 0..PGE_RETRY_BUDGET {
        let h_sys = random_systematic(profile, ring, rng);
        let scrambled = scramble(&h_sys, ring, rng);
        if let Ok(sf) = systematic_form_rng(&scrambled, rng) {
            if sf.profile == *profile {
                return Ok(scrambled);
            }
        }
    }
    Err(Error::InfeasibleProfile(format!(
        "could not realize profile {:?} over Z/{}",
        profile.k_profile,
        ring.modulus()
    )))
}

fn random_systematic(profile: &CodeType, ring: &RingSpec, rng: &mut impl Rng) -> RingMatrix {
    let s = ring.s() as usize;
    let p = ring.p();
    let n = profile.n;
    let big_k = profile.big_k();
    let k1 = profile.k1();
    let rows = n - k1;
    let n_k = n - big_k;

    let mut p_pow = vec![1u64; s + 1];
    for i in 1..=s {
        p_pow[i] = p_pow[i - 1] * p;
    }
    // column group offsets: group j (1-based) has size k_j, then identity
    let mut col_off = vec![0usize; s + 2];
    for j in 1..=s {
        col_off[j] = col_off[j - 1] + profile.k_profile[j - 1];
    }
    col_off[s + 1] = col_off[s] + n_k;

    let mut h = RingMatrix::zero(rows, n, *ring);
    // block row 1: [A_{1,1} .. A_{1,s} | Id_{n-K}] over Z/p^s
    for r in 0..n_k {
        for c in 0..big_k {
            h.set(r, c, rng.gen_range(0..ring.modulus()));
        }
        h.set(r, big_k + r, 1);
    }
    // block row i (2..=s): p^{i-1} entries over Z/p^{s+1-i}, pivot group s-i+2
    let mut row = n_k;
    for i in 2..=s {
        let group = s - i + 2;
        let ki = profile.k_profile[group - 1];
        let lift = p_pow[i - 1];
        let residues = p_pow[s + 1 - i];
        for rr in 0..ki {
            for c in 0..col_off[group - 1] {
                h.set(row, c, lift * rng.gen_range(0..residues));
            }
            h.set(row, col_off[group - 1] + rr, lift);
            row += 1;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, s: u32) -> RingSpec {
        RingSpec::new(p, s).unwrap()
    }

    fn assert_systematic_shape(sf: &SystematicForm, ring: &RingSpec) {
        let s = ring.s() as usize;
        let p = ring.p();
        let n = sf.profile.n;
        let big_k = sf.profile.big_k();
        let rows = sf.h_sys.rows();
        let n_k = n - big_k;
        // identity block on the last n-K columns
        for r in 0..n_k {
            for c in 0..n_k {
                let expect = if r == c { 1 } else { 0 };
                assert_eq!(sf.h_sys.get(r, big_k + c), expect);
            }
        }
        // graded blocks: row block i has p^{i-1} * Id on its group and zeros
        // to the right of it
        let mut p_pow = vec![1u64; s + 1];
        for i in 1..=s {
            p_pow[i] = p_pow[i - 1] * p;
        }
        let mut col_off = vec![0usize; s + 1];
        for j in 1..=s {
            col_off[j] = col_off[j - 1] + sf.profile.k_profile[j - 1];
        }
        let mut row = n_k;
        for i in 2..=s {
            let group = s - i + 2;
            let ki = sf.profile.k_profile[group - 1];
            for rr in 0..ki {
                for c in 0..n {
                    let v = sf.h_sys.get(row, c);
                    assert_eq!(v % p_pow[i - 1], 0, "row {row} col {c} not divisible");
                    if c >= col_off[group] {
                        assert_eq!(v, 0, "row {row} col {c} right of pivot group");
                    }
                    if (col_off[group - 1]..col_off[group]).contains(&c) {
                        let expect = if c - col_off[group - 1] == rr {
                            p_pow[i - 1]
                        } else {
                            0
                        };
                        assert_eq!(v, expect);
                    }
                }
                row += 1;
            }
        }
        assert_eq!(row, rows);
    }

    fn assert_round_trip(h: &RingMatrix, sf: &SystematicForm) {
        // U * H * P == H_sys entrywise
        let uh = sf.u.mat_mul(h).unwrap();
        for r in 0..uh.rows() {
            for (j, &orig) in sf.perm.iter().enumerate() {
                assert_eq!(uh.get(r, orig), sf.h_sys.get(r, j));
            }
        }
    }

    #[test]
    fn field_case_is_standard_form() {
        let ring = ring(5, 1);
        let mut rng = rand::rngs::mock::StepRng::new(7, 11);
        let _ = &mut rng;
        let mut h = RingMatrix::zero(3, 7, ring);
        // (Id | A) known systematic matrix
        for r in 0..3 {
            h.set(r, 4 + r, 1);
            for c in 0..4 {
                h.set(r, c, (r as u64 * 3 + c as u64) % 5);
            }
        }
        let sf = systematic_form(&h, 1).unwrap();
        assert_eq!(sf.profile.k_profile, vec![4]);
        assert_systematic_shape(&sf, &ring);
        assert_round_trip(&h, &sf);
    }

    #[test]
    fn random_matrices_reduce_and_round_trip() {
        for (p, s, n, rows) in [(2u64, 3u32, 12usize, 6usize), (3, 2, 10, 5), (7, 2, 9, 4)] {
            let ring = ring(p, s);
            for seed in 0..20u64 {
                use rand::SeedableRng;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let h = RingMatrix::random(rows, n, ring, &mut rng);
                match systematic_form(&h, seed ^ 0xabcd) {
                    Ok(sf) => {
                        assert_systematic_shape(&sf, &ring);
                        assert_round_trip(&h, &sf);
                    }
                    Err(Error::RankDeficient(_)) | Err(Error::ZeroMatrix) => {}
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn p_scaled_row_forces_k2() {
        let ring = ring(3, 2);
        // one unit row and one row = 3 * (unit row)
        let h = RingMatrix::from_rows(
            vec![vec![1, 2, 4, 5, 7, 1], vec![3, 6, 3, 0, 6, 3]],
            ring,
        )
        .unwrap();
        let sf = systematic_form(&h, 5).unwrap();
        assert_eq!(sf.profile.k_profile[1], 1, "profile {:?}", sf.profile);
        assert_systematic_shape(&sf, &ring);
        assert_round_trip(&h, &sf);
    }

    #[test]
    fn zero_matrix_rejected() {
        let ring = ring(2, 2);
        let h = RingMatrix::zero(3, 5, ring);
        assert!(matches!(systematic_form(&h, 0), Err(Error::ZeroMatrix)));
    }

    #[test]
    fn partial_gaussian_block_shape() {
        let ring = ring(7, 2);
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let profile = CodeType::new(20, vec![6, 4]).unwrap();
        let h = random_code_rng(&profile, &ring, &mut rng).unwrap();
        for ell in [0usize, 2, 4, 10] {
            let pg = partial_gaussian(&h, ell, 77 + ell as u64).unwrap();
            let n = h.cols();
            let big_k = profile.big_k();
            let target = n - big_k - ell;
            assert_eq!(pg.a.rows(), target);
            assert_eq!(pg.a.cols(), big_k + ell);
            assert_eq!(pg.b.rows(), h.rows() - target);
            assert_eq!(pg.b.cols(), big_k + ell);
            // verify U * H * P == [[A, Id], [B, 0]]
            let uh = pg.u.mat_mul(&h).unwrap();
            for r in 0..uh.rows() {
                for (j, &orig) in pg.perm.iter().enumerate() {
                    let got = uh.get(r, orig);
                    let expect = if j < big_k + ell {
                        if r < target {
                            pg.a.get(r, j)
                        } else {
                            pg.b.get(r - target, j)
                        }
                    } else {
                        let idx = j - (big_k + ell);
                        if r < target && r == idx {
                            1
                        } else {
                            0
                        }
                    };
                    assert_eq!(got, expect, "row {r} col {j}");
                }
            }
        }
    }

    #[test]
    fn random_code_recovers_profile() {
        let ring = ring(3, 2);
        let profile = CodeType::new(16, vec![4, 4]).unwrap();
        let h = random_code(&profile, &ring, 9).unwrap();
        let sf = systematic_form(&h, 1234).unwrap();
        assert_eq!(sf.profile, profile);
    }

    #[test]
    fn code_type_k() {
        let ct = CodeType::new(100, vec![5, 30, 0]).unwrap();
        assert!((ct.k_f64() - 25.0).abs() < 1e-12);
        assert_eq!(ct.big_k(), 35);
    }
}

fn scramble(h: &RingMatrix, ring: &RingSpec, rng: &mut impl Rng) -> RingMatrix {
    let rows = h.rows();
    let n = h.cols();
    let mut out = h.clone();
    // random unit lower * upper triangular transforms plus a row shuffle
    for _ in 0..2 {
        for r in 0..rows {
            for r2 in 0..rows {
                if r != r2 && rng.gen_bool(0.5) {
                    let f = rng.gen_range(0..ring.modulus());
                    out.row_sub_scaled(r2, r, f);
                }
            }
        }
    }
    let mut row_order: Vec<usize> = (0..rows).collect();
    row_order.shuffle(rng);
    let mut shuffled = RingMatrix::zero(rows, n, *ring);
    for (new_r, &old_r) in row_order.iter().enumerate() {
        for c in 0..n {
            shuffled.set(new_r, c, out.get(old_r, c));
        }
    }
    let mut col_order: Vec<usize> = (0..n).collect();
    col_order.shuffle(rng);
    let mut permuted = RingMatrix::zero(rows, n, *ring);
    for (new_c, &old_c) in col_order.iter().enumerate() {
        for r in 0..rows {
            permuted.set(r, new_c, shuffled.get(r, old_c));
        }
    }
    permuted
}
