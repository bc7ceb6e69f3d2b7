//! Instance constructions behind the NP-completeness results: 3-dimensional
//! matching to additive-weight SDP, and to the given-weight codeword problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::RingSpec;
use crate::vector::LeeVector;
use crate::SdpInstance;

/// A 3DM instance: a symbol set T and a list of triples over T (as indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDMInstance {
    #[serde(rename = "T")]
    pub symbols: Vec<String>,
    #[serde(rename = "U")]
    pub triples: Vec<[usize; 3]>,
}

impl ThreeDMInstance {
    pub fn new(symbols: Vec<String>, triples: Vec<[usize; 3]>) -> Result<Self> {
        let t = symbols.len();
        for tri in &triples {
            if tri.iter().any(|&i| i >= t) {
                return Err(Error::InvalidParams(format!(
                    "triple {tri:?} references a symbol outside T (|T| = {t})"
                )));
            }
        }
        Ok(ThreeDMInstance { symbols, triples })
    }

    pub fn t(&self) -> usize {
        self.symbols.len()
    }

    pub fn u(&self) -> usize {
        self.triples.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("3dm serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: ThreeDMInstance = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParams(format!("3dm parse error: {e}")))?;
        ThreeDMInstance::new(inst.symbols, inst.triples)
    }
}

/// The indicator matrix H^T in R^{u x 3t}: row i has a 1 in block b at the
/// column of the symbol at coordinate b of triple i.
pub fn indicator_transpose(inst: &ThreeDMInstance, ring: &RingSpec) -> RingMatrix {
    let t = inst.t();
    let u = inst.u();
    let mut ht = RingMatrix::zero(u, 3 * t, *ring);
    for (i, tri) in inst.triples.iter().enumerate() {
        for (b, &sym) in tri.iter().enumerate() {
            ht.set(i, b * t + sym, 1);
        }
    }
    ht
}

/// AW-SDP instance from a 3DM instance: syndrome = all-ones of length 3t,
/// weight budget = t.
pub fn build_awsdp(inst: &ThreeDMInstance, ring: &RingSpec) -> Result<SdpInstance> {
    if inst.t() == 0 || inst.u() == 0 {
        return Err(Error::InvalidParams("3DM instance must be nonempty".into()));
    }
    let ht = indicator_transpose(inst, ring);
    let h = ht.transpose();
    let s = LeeVector::new(vec![1; 3 * inst.t()], *ring);
    SdpInstance::new(h, s, inst.t() as u64, None)
}

/// Given-weight-codeword instance from a 3DM instance: the transposed block
/// construction with the size-u identity repeated 3tM times and negated
/// identities down the diagonal, paired with the target weight
/// w = 3 t^2 M^2 + 4 t M.
pub fn build_gawcp(inst: &ThreeDMInstance, ring: &RingSpec) -> Result<(RingMatrix, u64)> {
    if inst.t() == 0 || inst.u() == 0 {
        return Err(Error::InvalidParams("3DM instance must be nonempty".into()));
    }
    let t = inst.t() as u64;
    let m_wt = ring.max_weight();
    let reps = (3 * t * m_wt) as usize;
    let tt = inst.t();
    let uu = inst.u();

    let rows = reps * uu + 3 * tt + uu; // rows of H^T
    let cols = reps * uu + 3 * tt; // columns of H^T
    let mut ht = RingMatrix::zero(rows, cols, *ring);

    // top block row: [ Hbar^T | Id_u | Id_u | ... | Id_u ]
    let hbar_t = indicator_transpose(inst, ring);
    for i in 0..uu {
        for j in 0..3 * tt {
            ht.set(i, j, hbar_t.get(i, j));
        }
        for rep in 0..reps {
            ht.set(i, 3 * tt + rep * uu + i, 1);
        }
    }
    let neg_one = ring.neg(1);
    // second block row: [-Id_{3t} | 0 ... ]
    for i in 0..3 * tt {
        ht.set(uu + i, i, neg_one);
    }
    // remaining block rows: [0 | .. | -Id_u | .. ]
    for rep in 0..reps {
        for i in 0..uu {
            ht.set(uu + 3 * tt + rep * uu + i, 3 * tt + rep * uu + i, neg_one);
        }
    }

    let w = 3 * t * t * m_wt * m_wt + 4 * t * m_wt;
    Ok((ht.transpose(), w))
}

/// Maps a verified AW-SDP solution back to the matching it encodes.
pub fn extract_matching(e: &LeeVector, inst: &ThreeDMInstance) -> Result<Vec<[usize; 3]>> {
    let t = inst.t();
    if e.len() != inst.u() {
        return Err(Error::LengthMismatch(e.len(), inst.u()));
    }
    let ring = e.ring();
    let ht = indicator_transpose(inst, ring);
    let s = ht.transpose().mul_vec_transpose(e)?;
    if e.lee_weight() != t as u64 || s.entries().iter().any(|&x| x != 1) {
        return Err(Error::NonSolution);
    }
    let picked: Vec<[usize; 3]> = e.support().iter().map(|&i| inst.triples[i]).collect();
    // disjointness in every coordinate follows from the syndrome being
    // all-ones, but it is cheap to double check
    for b in 0..3 {
        let mut seen = vec![false; t];
        for tri in &picked {
            if seen[tri[b]] {
                return Err(Error::NonSolution);
            }
            seen[tri[b]] = true;
        }
    }
    Ok(picked)
}

/// Exhaustive 3DM solver for tiny instances (t <= 8): depth-first search over
/// triples covering the first uncovered first-coordinate symbol.
pub fn brute_force_3dm(inst: &ThreeDMInstance) -> Result<Option<Vec<usize>>> {
    let t = inst.t();
    if t > 8 {
        return Err(Error::InvalidParams(format!(
            "brute force limited to t <= 8, got t = {t}"
        )));
    }
    let mut used = [vec![false; t], vec![false; t], vec![false; t]];
    let mut chosen = Vec::with_capacity(t);
    if dfs(inst, &mut used, &mut chosen, 0) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn dfs(
    inst: &ThreeDMInstance,
    used: &mut [Vec<bool>; 3],
    chosen: &mut Vec<usize>,
    depth: usize,
) -> bool {
    let t = inst.t();
    if depth == t {
        return true;
    }
    // smallest uncovered symbol in the first coordinate anchors the branch
    let anchor = (0..t).find(|&sym| !used[0][sym]).unwrap();
    for (i, tri) in inst.triples.iter().enumerate() {
        if tri[0] != anchor || (0..3).any(|b| used[b][tri[b]]) {
            continue;
        }
        for b in 0..3 {
            used[b][tri[b]] = true;
        }
        chosen.push(i);
        if dfs(inst, used, chosen, depth + 1) {
            return true;
        }
        chosen.pop();
        for b in 0..3 {
            used[b][tri[b]] = false;
        }
    }
    false
}

/// The worked toy instance: T = {A, B, C, D} and seven triples.
pub fn example_instance() -> ThreeDMInstance {
    let symbols = vec!["A", "B", "C", "D"]
        .into_iter()
        .map(String::from)
        .collect();
    // a1..a7 with indices A=0, B=1, C=2, D=3
    let triples = vec![
        [3, 0, 1],
        [2, 1, 0],
        [3, 0, 1],
        [1, 2, 3],
        [2, 3, 0],
        [0, 3, 0],
        [0, 1, 2],
    ];
    ThreeDMInstance::new(symbols, triples).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_indicator_matrix() {
        let inst = example_instance();
        let ring = RingSpec::new(5, 1).unwrap();
        let ht = indicator_transpose(&inst, &ring);
        let expect: [[u64; 12]; 7] = [
            [0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(ht.get(r, c), v, "row {r} col {c}");
            }
        }
    }

    #[test]
    fn example_matching_verifies() {
        let inst = example_instance();
        let ring = RingSpec::new(5, 1).unwrap();
        let sdp = build_awsdp(&inst, &ring).unwrap();
        // W = {a3, a4, a5, a7}
        let mut e = LeeVector::zero(7, ring);
        for i in [2, 3, 4, 6] {
            e.set(i, 1);
        }
        assert!(sdp.verify_solution(&e).unwrap());
        let matching = extract_matching(&e, &inst).unwrap();
        assert_eq!(matching.len(), 4);
        assert_eq!(
            matching,
            vec![[3, 0, 1], [1, 2, 3], [2, 3, 0], [0, 1, 2]]
        );
    }

    #[test]
    fn brute_force_finds_example_matching() {
        // triples a1 and a3 are identical, so two index sets encode the
        // same matching; check the triple set rather than the indices
        let inst = example_instance();
        let sol = brute_force_3dm(&inst).unwrap().unwrap();
        let mut picked: Vec<[usize; 3]> = sol.iter().map(|&i| inst.triples[i]).collect();
        picked.sort();
        let mut expect = vec![[3, 0, 1], [1, 2, 3], [2, 3, 0], [0, 1, 2]];
        expect.sort();
        assert_eq!(picked, expect);
    }

    #[test]
    fn trivial_instance_round_trip() {
        let inst = ThreeDMInstance::new(vec!["b".into()], vec![[0, 0, 0]]).unwrap();
        let ring = RingSpec::new(3, 1).unwrap();
        let sdp = build_awsdp(&inst, &ring).unwrap();
        assert_eq!(sdp.h.rows(), 3);
        assert_eq!(sdp.h.cols(), 1);
        let e = LeeVector::new(vec![1], ring);
        assert!(sdp.verify_solution(&e).unwrap());
        assert_eq!(extract_matching(&e, &inst).unwrap(), vec![[0, 0, 0]]);
        assert_eq!(brute_force_3dm(&inst).unwrap(), Some(vec![0]));
    }

    #[test]
    fn gawcp_dimensions_on_example() {
        let inst = example_instance();
        let ring = RingSpec::new(3, 1).unwrap(); // M = 1
        let (h, w) = build_gawcp(&inst, &ring).unwrap();
        // H^T is (3tMu + 3t + u) x (3tMu + 3t) = 103 x 96
        assert_eq!(h.cols(), 103);
        assert_eq!(h.rows(), 96);
        assert_eq!(w, 3 * 16 + 16); // 3 t^2 M^2 + 4 t M with t=4, M=1
    }

    #[test]
    fn gawcp_planted_codeword_weights() {
        // matching -> codeword c with wt(cbar) = tM, wt(cbar Hbar^T) = 3tM,
        // total weight w
        let inst = example_instance();
        for m in [3u64, 4, 5] {
            let ring = RingSpec::from_modulus(m).unwrap();
            let m_wt = ring.max_weight();
            let t = inst.t() as u64;
            let (h, w) = build_gawcp(&inst, &ring).unwrap();
            // cbar = x * indicator(W) with wt(x) = M
            let x = m_wt; // the residue of maximal Lee weight
            let mut cbar = vec![0u64; inst.u()];
            for i in [2usize, 3, 4, 6] {
                cbar[i] = x;
            }
            let hbar_t = indicator_transpose(&inst, &ring);
            let c0 = hbar_t
                .transpose()
                .mul_vec_transpose(&LeeVector::new(cbar.clone(), ring))
                .unwrap();
            assert_eq!(c0.lee_weight(), 3 * t * m_wt);
            // c = (cbar, c0, cbar, ..., cbar)
            let mut c = cbar.clone();
            c.extend(c0.entries());
            for _ in 0..(3 * t * m_wt) {
                c.extend(&cbar);
            }
            let cv = LeeVector::new(c, ring);
            assert_eq!(cv.lee_weight(), w);
            let synd = h.mul_vec_transpose(&cv).unwrap();
            assert!(synd.is_zero(), "m={m}");
        }
    }

    #[test]
    fn json_round_trip() {
        let inst = example_instance();
        let text = inst.to_json();
        let back = ThreeDMInstance::from_json(&text).unwrap();
        assert_eq!(inst, back);
    }
}
