//! Asymptotic complexity exponents e(R, q): each algorithm's printed
//! max-of-terms expression is minimized over its continuous free parameters
//! by a multi-start direct search within the printed constraint boxes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingSpec;

use super::gv::gv_delta;
use super::saddle::{ball_exponent, saddle_exponent, sphere_exponent, GeneratingPoly};

/// Asymptotic code regime: rate R, free-rank fraction lambda = R_1/R, the
/// induced information-set rate R_I (maximal k_2 convention), and the
/// relative GV half-distance weight T.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticRegime {
    pub ring: RingSpec,
    pub r: f64,
    pub lambda: f64,
    pub r1: f64,
    pub r_i: f64,
    pub t: f64,
}

impl AsymptoticRegime {
    /// Builds the regime at rate R for R_1 = lambda R, assuming a maximal
    /// k_2 (so R_I = min(1, lambda R + (1 - lambda) R s/(s-1))) and codes on
    /// the asymptotic GV bound decoded at half distance (T = delta M / 2).
    pub fn from_rate(ring: &RingSpec, r: f64, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParams(format!("rate {r} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParams(format!("lambda {lambda} outside [0, 1]")));
        }
        let s = ring.s() as f64;
        if ring.s() == 1 && lambda < 1.0 {
            return Err(Error::InvalidParams(
                "lambda < 1 needs a ring with s >= 2".into(),
            ));
        }
        let r1 = lambda * r;
        let r_i = if ring.s() == 1 {
            r
        } else {
            (lambda * r + (1.0 - lambda) * r * s / (s - 1.0)).min(1.0)
        };
        let delta = gv_delta(r, ring)?;
        let t = delta * ring.max_weight() as f64 / 2.0;
        Ok(AsymptoticRegime {
            ring: *ring,
            r,
            lambda,
            r1,
            r_i,
            t,
        })
    }

    /// Whether any information-set decoder can work at this regime at all:
    /// the residual weight must fit outside a full information set.
    pub fn is_achievable(&self) -> bool {
        let m_wt = self.ring.max_weight() as f64;
        self.r_i < 1.0 - 1e-9 && self.t <= m_wt * (1.0 - self.r_i) + 1e-12
    }

    /// S(R, V): exponent of F_L(Rn, Vn, q); +inf when infeasible.
    fn s(&self, r: f64, v: f64) -> f64 {
        if v <= 0.0 {
            return if v < -1e-12 { f64::INFINITY } else { 0.0 };
        }
        if r <= 0.0 {
            return f64::INFINITY;
        }
        let t_rel = v / r;
        if t_rel >= self.ring.max_weight() as f64 {
            return f64::INFINITY;
        }
        match sphere_exponent(t_rel, &self.ring) {
            Ok(sp) => r * sp.exponent,
            Err(_) => f64::INFINITY,
        }
    }

    /// L(R, V): exponent of V_L(Rn, Vn, q).
    fn l(&self, r: f64, v: f64) -> f64 {
        if v <= 0.0 {
            return if v < -1e-12 { f64::INFINITY } else { 0.0 };
        }
        if r <= 0.0 {
            return f64::INFINITY;
        }
        let t_rel = v / r;
        if t_rel >= self.ring.max_weight() as f64 {
            return f64::INFINITY;
        }
        match ball_exponent(t_rel, &self.ring) {
            Ok(e) => r * e,
            Err(_) => f64::INFINITY,
        }
    }

    /// Exponent of the representation-count lower bound at overlap E over
    /// relative length `len`: the bounded-parts enumerator with eta =
    /// floor(q/4).
    fn rep_u(&self, len: f64, e: f64) -> f64 {
        if e <= 0.0 {
            return 0.0;
        }
        if len <= 0.0 {
            return f64::INFINITY;
        }
        let eta = (self.ring.modulus() / 4) as usize;
        if eta == 0 {
            return f64::INFINITY;
        }
        let t_rel = e / len;
        if t_rel >= eta as f64 {
            return f64::INFINITY;
        }
        let poly = GeneratingPoly::bounded_parts(eta);
        match saddle_exponent(&poly, t_rel, self.ring.modulus() as f64) {
            Ok(sp) => len * sp.exponent,
            Err(_) => f64::INFINITY,
        }
    }
}

/// Algorithm selector for the asymptotic analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AsymptoticAlgorithm {
    TwoBlocks,
    SBlocks,
    Wagner { a: u32 },
    Representation { a: u32 },
    Bjmm,
}

impl AsymptoticAlgorithm {
    pub const ALL: [AsymptoticAlgorithm; 7] = [
        AsymptoticAlgorithm::TwoBlocks,
        AsymptoticAlgorithm::SBlocks,
        AsymptoticAlgorithm::Wagner { a: 1 },
        AsymptoticAlgorithm::Wagner { a: 2 },
        AsymptoticAlgorithm::Representation { a: 1 },
        AsymptoticAlgorithm::Representation { a: 2 },
        AsymptoticAlgorithm::Bjmm,
    ];

    pub fn label(&self) -> String {
        match self {
            AsymptoticAlgorithm::TwoBlocks => "two-blocks".into(),
            AsymptoticAlgorithm::SBlocks => "s-blocks".into(),
            AsymptoticAlgorithm::Wagner { a } => format!("wagner a={a}"),
            AsymptoticAlgorithm::Representation { a } => format!("rep a={a}"),
            AsymptoticAlgorithm::Bjmm => "bjmm".into(),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name.to_lowercase().as_str() {
            "two-blocks" | "2-blocks" => AsymptoticAlgorithm::TwoBlocks,
            "s-blocks" => AsymptoticAlgorithm::SBlocks,
            "wagner" | "wagner1" => AsymptoticAlgorithm::Wagner { a: 1 },
            "wagner2" => AsymptoticAlgorithm::Wagner { a: 2 },
            "rep" | "rep1" => AsymptoticAlgorithm::Representation { a: 1 },
            "rep2" => AsymptoticAlgorithm::Representation { a: 2 },
            "bjmm" => AsymptoticAlgorithm::Bjmm,
            _ => return Err(Error::InvalidParams(format!("unknown algorithm {name}"))),
        })
    }
}

/// Optimized exponent and the continuous parameters achieving it.
#[derive(Debug, Clone)]
pub struct ExponentReport {
    pub e: f64,
    pub params: Vec<(&'static str, f64)>,
}

/// Effort of the direct search.
#[derive(Debug, Clone, Copy)]
pub struct OptBudget {
    pub starts: usize,
    pub tol: f64,
}

impl Default for OptBudget {
    fn default() -> Self {
        OptBudget {
            starts: 20,
            tol: 1e-6,
        }
    }
}

struct Objective<'a> {
    regime: &'a AsymptoticRegime,
    alg: AsymptoticAlgorithm,
}

impl Objective<'_> {
    fn names(&self) -> Vec<&'static str> {
        match self.alg {
            AsymptoticAlgorithm::TwoBlocks => vec!["V", "L"],
            AsymptoticAlgorithm::SBlocks => vec!["V1", "V2"],
            AsymptoticAlgorithm::Wagner { a: 1 } => vec!["V", "L"],
            AsymptoticAlgorithm::Wagner { .. } => vec!["V", "L", "U"],
            AsymptoticAlgorithm::Representation { a: 1 } => vec!["V", "L", "E"],
            AsymptoticAlgorithm::Representation { .. } => vec!["V", "L", "E0", "E1"],
            AsymptoticAlgorithm::Bjmm => vec!["V", "L", "E0", "E1"],
        }
    }

    /// Box upper corners; lower corners are all 0.
    fn upper(&self) -> Vec<f64> {
        let rg = self.regime;
        let m_wt = rg.ring.max_weight() as f64;
        let l_max = 1.0 - rg.r_i;
        let e_max = m_wt * (rg.r_i + l_max);
        match self.alg {
            AsymptoticAlgorithm::TwoBlocks => {
                vec![(rg.t / 2.0).min(m_wt * rg.r_i / 2.0), l_max]
            }
            AsymptoticAlgorithm::SBlocks => {
                let r2 = (rg.r_i - rg.r1).max(0.0);
                vec![(m_wt * rg.r1).min(rg.t), (m_wt * r2).min(rg.t)]
            }
            AsymptoticAlgorithm::Wagner { a: 1 } => vec![rg.t, l_max],
            AsymptoticAlgorithm::Wagner { .. } => {
                vec![rg.t, l_max, rg.r_i + l_max - rg.r1]
            }
            AsymptoticAlgorithm::Representation { a: 1 } => vec![rg.t, l_max, e_max],
            AsymptoticAlgorithm::Representation { .. } | AsymptoticAlgorithm::Bjmm => {
                vec![rg.t, l_max, e_max, e_max]
            }
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let rg = self.regime;
        let m_wt = rg.ring.max_weight() as f64;
        let s_all = rg.s(1.0, rg.t);
        match self.alg {
            AsymptoticAlgorithm::TwoBlocks => {
                let (v, l) = (x[0], x[1]);
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t / 2.0 || outer_len < 0.0 || rg.t - 2.0 * v > m_wt * outer_len {
                    return f64::INFINITY;
                }
                let s_half = rg.s(rg.r_i / 2.0, v);
                let lists = rg.l(rg.r_i / 2.0, v);
                let outer = rg.s(outer_len, rg.t - 2.0 * v);
                if !s_half.is_finite() || !outer.is_finite() || !lists.is_finite() {
                    return f64::INFINITY;
                }
                let coll = 2.0 * s_half - l - rg.r_i + rg.r1;
                s_all - 2.0 * s_half - outer + s_half.max(lists).max(coll)
            }
            AsymptoticAlgorithm::SBlocks => {
                // second variant, s = 2 structure: blocks above 2 are empty
                // under the maximal-k_2 convention
                let s = rg.ring.s() as f64;
                let r2 = (rg.r_i - rg.r1).max(0.0);
                let (v1, v2) = (x[0], x[1]);
                if v1 > m_wt * rg.r1 + 1e-12 || v2 > m_wt * r2 + 1e-12 {
                    return f64::INFINITY;
                }
                let vsum = v1 + v2;
                if vsum > rg.t || rg.t - vsum > (1.0 - rg.r_i) * m_wt {
                    return f64::INFINITY;
                }
                let s2 = rg.s(r2, v2);
                let outer = rg.s(1.0 - rg.r_i, rg.t - vsum);
                if !s2.is_finite() || !outer.is_finite() {
                    return f64::INFINITY;
                }
                // partial sums over j: empty, then the single i = 2 term
                let iter_max = 0.0f64.max(s2 - r2 * (2.0 - 1.0) / s);
                s_all - s2 - outer + iter_max
            }
            AsymptoticAlgorithm::Wagner { a: 1 } => {
                let (v, l) = (x[0], x[1]);
                let half = (rg.r_i + l) / 2.0;
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t
                    || outer_len < 0.0
                    || v > m_wt * (rg.r_i + l)
                    || rg.t - v > m_wt * outer_len
                {
                    return f64::INFINITY;
                }
                let s_half = rg.s(half, v / 2.0);
                let outer = rg.s(outer_len, rg.t - v);
                if !s_half.is_finite() || !outer.is_finite() {
                    return f64::INFINITY;
                }
                let coll = 2.0 * s_half - (rg.r_i + l - rg.r1);
                s_all - outer - 2.0 * s_half + s_half.max(coll)
            }
            AsymptoticAlgorithm::Wagner { .. } => {
                let (v, l, u) = (x[0], x[1], x[2]);
                let quarter = (rg.r_i + l) / 4.0;
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t
                    || outer_len < 0.0
                    || v > m_wt * (rg.r_i + l)
                    || rg.t - v > m_wt * outer_len
                    || u > rg.r_i + l - rg.r1
                {
                    return f64::INFINITY;
                }
                let s_q = rg.s(quarter, v / 4.0);
                let outer = rg.s(outer_len, rg.t - v);
                if !s_q.is_finite() || !outer.is_finite() {
                    return f64::INFINITY;
                }
                let t1 = s_q;
                let t2 = 2.0 * s_q - u;
                let t3 = 4.0 * s_q - (rg.r_i + l - rg.r1) - u;
                s_all - outer - 4.0 * s_q + u + t1.max(t2).max(t3)
            }
            AsymptoticAlgorithm::Representation { a: 1 } => {
                let (v, l, e) = (x[0], x[1], x[2]);
                let len = rg.r_i + l;
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t
                    || outer_len < 0.0
                    || v > m_wt * len
                    || rg.t - v > m_wt * outer_len
                    || e > m_wt * len - v
                {
                    return f64::INFINITY;
                }
                let small = rg.s(len, v);
                let outer = rg.s(outer_len, rg.t - v);
                if !small.is_finite() || !outer.is_finite() {
                    return f64::INFINITY;
                }
                let base = s_all - small - outer;
                if v <= 0.0 {
                    return base;
                }
                let s_half = rg.s(len, v / 2.0 + e);
                if !s_half.is_finite() {
                    return f64::INFINITY;
                }
                base + s_half.max(2.0 * s_half - (len - rg.r1))
            }
            AsymptoticAlgorithm::Representation { .. } => {
                let (v, l, e0, e1) = (x[0], x[1], x[2], x[3]);
                let len = rg.r_i + l;
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t
                    || outer_len < 0.0
                    || v > m_wt * len
                    || rg.t - v > m_wt * outer_len
                    || e1 > m_wt * len - v
                    || e0 > m_wt * len - v / 2.0 - e1
                {
                    return f64::INFINITY;
                }
                let u = rg.rep_u(len, e0);
                if u > len - rg.r1 {
                    return f64::INFINITY;
                }
                let small = rg.s(len, v);
                let outer = rg.s(outer_len, rg.t - v);
                let s0 = rg.s(len, v / 4.0 + e0 + e1 / 2.0);
                let s1 = rg.s(len, v / 2.0 + e1);
                if ![small, outer, s0, s1, u].iter().all(|t| t.is_finite()) {
                    return f64::INFINITY;
                }
                let peak = s0
                    .max(s1 - u)
                    .max(2.0 * s0 - u)
                    .max(2.0 * s1 - (len - rg.r1) - 2.0 * u);
                s_all - small - outer + peak
            }
            AsymptoticAlgorithm::Bjmm => {
                let (v, l, e0, e1) = (x[0], x[1], x[2], x[3]);
                let len = rg.r_i + l;
                let outer_len = 1.0 - rg.r_i - l;
                if v > rg.t
                    || outer_len < 0.0
                    || v > m_wt * len
                    || rg.t - v > m_wt * outer_len
                    || e1 > m_wt * len - v
                    || e0 > m_wt * len - v / 2.0 - e1
                {
                    return f64::INFINITY;
                }
                let u0 = rg.rep_u(len, e0);
                let u1 = rg.rep_u(len, e1);
                if u0 > u1 || u1 > len - rg.r1 {
                    return f64::INFINITY;
                }
                let small = rg.s(len, v);
                let outer = rg.s(outer_len, rg.t - v);
                let s_base = rg.s(len / 2.0, v / 8.0 + e1 / 4.0 + e0 / 2.0);
                let s_mid = rg.s(len, v / 4.0 + e1 / 2.0 + e0);
                let s_top = rg.s(len, v / 2.0 + e1);
                if ![small, outer, s_base, s_mid, s_top, u0, u1]
                    .iter()
                    .all(|t| t.is_finite())
                {
                    return f64::INFINITY;
                }
                let peak = s_base
                    .max(s_mid - u0)
                    .max(2.0 * s_mid - u1 - u0)
                    .max(s_top - u1)
                    .max(2.0 * s_top - (len - rg.r1) - u1);
                s_all - small - outer + peak
            }
        }
    }
}

/// Minimizes the printed asymptotic expression over its free parameters.
pub fn exponent(
    alg: AsymptoticAlgorithm,
    regime: &AsymptoticRegime,
    budget: OptBudget,
) -> Result<ExponentReport> {
    if !regime.is_achievable() {
        return Err(Error::InvalidParams(format!(
            "rate {} with lambda {} is not achievable",
            regime.r, regime.lambda
        )));
    }
    let obj = Objective { regime, alg };
    let upper = obj.upper();
    let dims = upper.len();
    let f = |x: &[f64]| obj.eval(x);

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ee5_dec0);
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(budget.starts + 3);
    starts.push(vec![0.0; dims]);
    starts.push(upper.iter().map(|&u| u * 0.5).collect());
    starts.push(upper.iter().map(|&u| u * 0.05).collect());
    for _ in 0..budget.starts {
        starts.push(upper.iter().map(|&u| rng.gen::<f64>() * u).collect());
    }

    for start in starts {
        let (x, val) = nelder_mead(&f, &start, &upper, budget.tol);
        if !val.is_finite() {
            continue;
        }
        match &best {
            Some((b, _)) if *b <= val => {}
            _ => best = Some((val, x)),
        }
    }
    let (e, x) = best.ok_or_else(|| {
        Error::InvalidParams(format!(
            "no feasible parameters for {} at rate {}",
            alg.label(),
            regime.r
        ))
    })?;
    let params = obj.names().into_iter().zip(x).collect();
    Ok(ExponentReport { e, params })
}

/// Compact Nelder-Mead on a box [0, upper]; infeasible points carry +inf.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    upper: &[f64],
    tol: f64,
) -> (Vec<f64>, f64) {
    let dims = start.len();
    let clamp = |x: &mut Vec<f64>| {
        for (xi, &ui) in x.iter_mut().zip(upper) {
            *xi = xi.clamp(0.0, ui);
        }
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dims + 1);
    simplex.push(start.to_vec());
    for d in 0..dims {
        let mut v = start.to_vec();
        let step = (upper[d] * 0.1).max(1e-4);
        v[d] = if v[d] + step <= upper[d] {
            v[d] + step
        } else {
            (v[d] - step).max(0.0)
        };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    for _ in 0..600 * dims {
        // order the simplex
        let mut idx: Vec<usize> = (0..=dims).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let ordered: Vec<Vec<f64>> = idx.iter().map(|&i| simplex[i].clone()).collect();
        let ordered_vals: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
        simplex = ordered;
        values = ordered_vals;

        let spread = values[dims] - values[0];
        if spread.abs() < tol && values[0].is_finite() {
            break;
        }

        let centroid: Vec<f64> = (0..dims)
            .map(|d| simplex[..dims].iter().map(|x| x[d]).sum::<f64>() / dims as f64)
            .collect();
        let worst = simplex[dims].clone();
        let mut reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst)
            .map(|(&c, &w)| c + (c - w))
            .collect();
        clamp(&mut reflect);
        let fr = f(&reflect);

        if fr < values[0] {
            let mut expand: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(&c, &w)| c + 2.0 * (c - w))
                .collect();
            clamp(&mut expand);
            let fe = f(&expand);
            if fe < fr {
                simplex[dims] = expand;
                values[dims] = fe;
            } else {
                simplex[dims] = reflect;
                values[dims] = fr;
            }
        } else if fr < values[dims - 1] {
            simplex[dims] = reflect;
            values[dims] = fr;
        } else {
            let mut contract: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(&c, &w)| c + 0.5 * (w - c))
                .collect();
            clamp(&mut contract);
            let fc = f(&contract);
            if fc < values[dims] {
                simplex[dims] = contract;
                values[dims] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..=dims {
                    let best = simplex[0].clone();
                    for d in 0..dims {
                        simplex[i][d] = best[d] + 0.5 * (simplex[i][d] - best[d]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let mut best_i = 0;
    for i in 1..=dims {
        if values[i] < values[best_i] {
            best_i = i;
        }
    }
    (simplex[best_i].clone(), values[best_i])
}

/// Maximizes the optimized exponent over the achievable rates: coarse grid
/// followed by golden-section refinement around the peak.
pub fn worst_case_rate(
    alg: AsymptoticAlgorithm,
    ring: &RingSpec,
    lambda: f64,
    budget: OptBudget,
) -> Result<(f64, f64)> {
    let grid: Vec<f64> = (1..100).map(|i| i as f64 * 0.01).collect();
    let evals: Vec<(f64, f64)> = grid
        .par_iter()
        .filter_map(|&r| {
            let regime = AsymptoticRegime::from_rate(ring, r, lambda).ok()?;
            let rep = exponent(alg, &regime, budget).ok()?;
            Some((r, rep.e))
        })
        .collect();
    let &(mut best_r, mut best_e) = evals
        .iter()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .ok_or_else(|| Error::InvalidParams("no achievable rate".into()))?;

    // golden-section refinement on [best_r - 0.01, best_r + 0.01]
    let eval_rate = |r: f64| -> f64 {
        AsymptoticRegime::from_rate(ring, r, lambda)
            .ok()
            .and_then(|rg| exponent(alg, &rg, budget).ok())
            .map_or(f64::NEG_INFINITY, |rep| rep.e)
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = ((best_r - 0.01).max(0.001), (best_r + 0.01).min(0.999));
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = eval_rate(x1);
    let mut f2 = eval_rate(x2);
    for _ in 0..30 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval_rate(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval_rate(x1);
        }
    }
    for (r, e) in [(x1, f1), (x2, f2)] {
        if e > best_e {
            best_e = e;
            best_r = r;
        }
    }
    Ok((best_r, best_e))
}

/// Per-rate optimized exponents for plotting.
pub fn exponent_curve(
    alg: AsymptoticAlgorithm,
    ring: &RingSpec,
    lambda: f64,
    r_grid: &[f64],
    budget: OptBudget,
) -> Vec<(f64, Option<f64>)> {
    r_grid
        .par_iter()
        .map(|&r| {
            let e = AsymptoticRegime::from_rate(ring, r, lambda)
                .ok()
                .and_then(|rg| exponent(alg, &rg, budget).ok())
                .map(|rep| rep.e);
            (r, e)
        })
        .collect()
}
