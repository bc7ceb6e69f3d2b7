//! Bit-cost formulas of the five algorithms, evaluated exactly in the log2
//! domain from the integer sphere tables.

use std::sync::OnceLock;

use crate::decoders::{
    BjmmParams, DecoderParams, RepTechParams, SBlocksParams, TwoBlocksParams, WagnerParams,
};
use crate::error::{Error, Result};
use crate::ring::RingSpec;
use crate::systematic::CodeType;

use super::tables::{log2_factorial_log, log2_lookup_cost, log2_sum, SphereTable, NEG_INF};

/// Code parameters of a workfactor evaluation; owns the lazily built sphere
/// table for its length.
#[derive(Debug)]
pub struct CodeParams {
    pub ring: RingSpec,
    pub n: usize,
    pub t: u64,
    pub profile: CodeType,
    table: OnceLock<SphereTable>,
}

impl CodeParams {
    pub fn new(ring: RingSpec, n: usize, t: u64, profile: CodeType) -> Result<Self> {
        if profile.n != n {
            return Err(Error::DimensionMismatch(format!(
                "profile length {} vs n = {n}",
                profile.n
            )));
        }
        if profile.s() != ring.s() {
            return Err(Error::InfeasibleProfile(format!(
                "profile has {} parts, ring exponent is {}",
                profile.s(),
                ring.s()
            )));
        }
        Ok(CodeParams {
            ring,
            n,
            t,
            profile,
            table: OnceLock::new(),
        })
    }

    /// Table rows with k_1, k_2 and the remaining profile entries zero.
    pub fn two_level(ring: RingSpec, n: usize, t: u64, k1: usize, k2: usize) -> Result<Self> {
        let mut prof = vec![0usize; ring.s() as usize];
        prof[0] = k1;
        if ring.s() >= 2 {
            prof[1] = k2;
        } else if k2 > 0 {
            return Err(Error::InfeasibleProfile("k2 > 0 needs s >= 2".into()));
        }
        CodeParams::new(ring, n, t, CodeType::new(n, prof)?)
    }

    pub fn table(&self) -> &SphereTable {
        self.table.get_or_init(|| SphereTable::build(&self.ring, self.n))
    }

    pub fn big_k(&self) -> usize {
        self.profile.big_k()
    }

    pub fn k1(&self) -> usize {
        self.profile.k1()
    }

    fn add_mul(&self) -> f64 {
        (self.ring.add_cost() + self.ring.mul_cost()) as f64
    }

    fn gauss_log2(&self) -> f64 {
        let rows = (self.n - self.k1()) as f64;
        (rows * rows * (self.n as f64 + 1.0) * self.add_mul()).log2()
    }

    fn pge_log2(&self, ell: usize) -> f64 {
        let rows = (self.n - self.big_k() - ell) as f64;
        (rows * rows * (self.n as f64 + 1.0) * self.add_mul()).max(1.0).log2()
    }

    fn log_q(&self) -> f64 {
        (self.ring.modulus() as f64).log2()
    }
}

/// log2 workfactor with its iteration/iteration-cost split and the
/// parameters that achieve it.
#[derive(Debug, Clone)]
pub struct CostReport {
    pub log2_cost: f64,
    pub iterations_log2: f64,
    pub iteration_cost_log2: f64,
    pub params: DecoderParams,
}

fn log2_lin(x: f64) -> f64 {
    if x <= 0.0 {
        NEG_INF
    } else {
        x.log2()
    }
}

/// Success probability of a two-blocks iteration, log2 (clamped at 0).
pub fn two_blocks_success_log2(cp: &CodeParams, p: &TwoBlocksParams) -> f64 {
    let tab = cp.table();
    if p.v1 + p.v2 > cp.t {
        return NEG_INF;
    }
    let outer = cp.t - p.v1 - p.v2;
    let log = tab.log_f(p.m1, p.v1) + tab.log_f(p.m2, p.v2)
        + tab.log_f(cp.n - cp.big_k() - p.z, outer)
        - tab.log_f(cp.n, cp.t);
    log.min(0.0)
}

pub fn cost_two_blocks(cp: &CodeParams, p: &TwoBlocksParams) -> CostReport {
    let tab = cp.table();
    let big_k = cp.big_k();
    let k1 = cp.k1();
    let iters = -two_blocks_success_log2(cp, p);

    let outer = cp.t.saturating_sub(p.v1 + p.v2);
    let cu = cp.add_mul();
    let add = cp.ring.add_cost() as f64;
    let graded_cols = (big_k - k1 + p.z) as f64;

    let list_sizes = log2_sum(&[
        tab.log_f(p.m2, p.v2),
        tab.log_v(p.m1, p.v1),
        tab.log_v(p.m2, p.v2),
    ]);
    let list_term = log2_lin(add * graded_cols) + list_sizes;

    let collisions = tab.log_f(p.m1, p.v1) + tab.log_f(p.m2, p.v2)
        - (p.z + big_k - k1) as f64 * cp.log_q();
    let abort = ((outer as f64 + 1.0) / cp.ring.mu_f64())
        .min((cp.n - big_k - p.z) as f64);
    let inner = (p.v1 + p.v2).min(big_k as u64) as f64;
    let coll_term = collisions + log2_lin(abort * inner * cu);

    let iter_cost = log2_sum(&[cp.gauss_log2(), list_term, coll_term]);
    CostReport {
        log2_cost: iters + iter_cost,
        iterations_log2: iters,
        iteration_cost_log2: iter_cost,
        params: DecoderParams::TwoBlocks(*p),
    }
}

/// Per-composition inner cost C(v_1, ..., v_s), log2.
fn s_blocks_composition_log2(cp: &CodeParams, split: &[u64]) -> f64 {
    let tab = cp.table();
    let s = cp.ring.s() as usize;
    let profile = &cp.profile.k_profile;
    let mut terms = Vec::with_capacity(s);
    let mut carried = 0.0; // log2 of prod_{l=2}^{j-1} g(e_l)
    for j in 2..=s + 1 {
        let f_j = stage_cost(cp, j);
        if f_j > 0.0 {
            terms.push(f_j.log2() + carried);
        }
        if j <= s {
            let k_j = profile[j - 1];
            let g = tab.log_f(k_j, split[j - 1])
                - (k_j as f64) * (j as f64 - 1.0) * (cp.ring.p() as f64).log2();
            carried += g;
            if carried == NEG_INF {
                break;
            }
        }
    }
    tab.log_f(cp.k1(), split[0]) + log2_sum(&terms)
}

/// f(e_j): cost of deriving block j from the syndrome conditions.
fn stage_cost(cp: &CodeParams, j: usize) -> f64 {
    let s = cp.ring.s() as usize;
    let profile = &cp.profile.k_profile;
    let k_j = if j == s + 1 {
        cp.n - cp.big_k()
    } else {
        profile[j - 1]
    };
    let prefix: usize = profile[..j - 1].iter().sum();
    let bits = crate::ring::ceil_log2(cp.ring.p().pow((j - 1) as u32)) as f64;
    k_j as f64 * (bits + bits * bits) * prefix as f64
}

pub fn cost_s_blocks_variant(cp: &CodeParams, split: &[u64]) -> Result<CostReport> {
    let s = cp.ring.s() as usize;
    if split.len() != s {
        return Err(Error::InvalidParams(format!(
            "need {s} weights, got {}",
            split.len()
        )));
    }
    let v: u64 = split.iter().sum();
    if v > cp.t {
        return Err(Error::InvalidParams(format!("v = {v} exceeds t = {}", cp.t)));
    }
    let tab = cp.table();
    let mut prob = -tab.log_f(cp.n, cp.t);
    for (j, &vj) in split.iter().enumerate() {
        prob += tab.log_f(cp.profile.k_profile[j], vj);
    }
    prob += tab.log_f(cp.n - cp.big_k(), cp.t - v);
    let iters = (-prob.min(0.0)).max(0.0);
    let iter_cost = log2_sum(&[cp.gauss_log2(), s_blocks_composition_log2(cp, split)]);
    Ok(CostReport {
        log2_cost: iters + iter_cost,
        iterations_log2: iters,
        iteration_cost_log2: iter_cost,
        params: DecoderParams::SBlocks(SBlocksParams {
            v,
            fixed_split: Some(split.to_vec()),
        }),
    })
}

/// Precomputed per-stage convolution tables for the sum over all weak
/// compositions in the s-blocks cost: d[j][w] = log2 of
/// sum over (v_1..v_{j-1}) with sum w of F(k_1,v_1) prod g(e_l).
pub struct SBlocksSums {
    /// indexed by j = 2..=s+1 (offset by 2)
    d: Vec<Vec<f64>>,
    stage_log: Vec<f64>,
    wmax: usize,
}

impl SBlocksSums {
    pub fn build(cp: &CodeParams, wmax: u64) -> Self {
        let tab = cp.table();
        let s = cp.ring.s() as usize;
        let wmax = wmax as usize;
        let p1: Vec<f64> = (0..=wmax).map(|w| tab.log_f(cp.k1(), w as u64)).collect();
        let mut d = Vec::with_capacity(s);
        d.push(p1);
        for j in 2..=s {
            let k_j = cp.profile.k_profile[j - 1];
            let penalty = -(k_j as f64) * (j as f64 - 1.0) * (cp.ring.p() as f64).log2();
            let g: Vec<f64> = (0..=wmax)
                .map(|w| tab.log_f(k_j, w as u64) + penalty)
                .collect();
            let prev = d.last().unwrap();
            d.push(convolve_log(prev, &g));
        }
        let stage_log: Vec<f64> = (2..=s + 1).map(|j| log2_lin(stage_cost(cp, j))).collect();
        SBlocksSums {
            d,
            stage_log,
            wmax,
        }
    }

    /// log2 of sum over all weak compositions of v into s parts of
    /// C(v_1, ..., v_s).
    pub fn sum_c_log2(&self, cp: &CodeParams, v: u64) -> f64 {
        let s = cp.ring.s() as usize;
        let v = v as usize;
        debug_assert!(v <= self.wmax);
        let mut terms = Vec::with_capacity(s);
        for j in 2..=s + 1 {
            let f_log = self.stage_log[j - 2];
            if f_log == NEG_INF {
                continue;
            }
            let prefix = &self.d[j - 2];
            // tail: weak compositions of the residual weight into the
            // remaining s - j + 1 parts
            let inner: Vec<f64> = (0..=v)
                .map(|r| {
                    let tail = if j == s + 1 {
                        if r == 0 {
                            0.0
                        } else {
                            NEG_INF
                        }
                    } else {
                        log2_lin(binom_f64(r as u64 + (s - j) as u64, (s - j) as u64))
                    };
                    prefix[v - r] + tail
                })
                .collect();
            terms.push(f_log + log2_sum(&inner));
        }
        log2_sum(&terms)
    }
}

fn convolve_log(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n)
        .map(|w| {
            let terms: Vec<f64> = (0..=w).map(|i| a[i] + b[w - i]).collect();
            log2_sum(&terms)
        })
        .collect()
}

fn binom_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

pub fn cost_s_blocks(cp: &CodeParams, v: u64) -> Result<CostReport> {
    if v > cp.t {
        return Err(Error::InvalidParams(format!("v = {v} exceeds t = {}", cp.t)));
    }
    let sums = SBlocksSums::build(cp, v);
    Ok(cost_s_blocks_with(cp, v, &sums))
}

/// s-blocks cost reusing precomputed composition sums (for optimization).
pub fn cost_s_blocks_with(cp: &CodeParams, v: u64, sums: &SBlocksSums) -> CostReport {
    let tab = cp.table();
    let s = cp.ring.s() as usize;
    let n_log = tab.log_f(cp.n, cp.t) - tab.log_f(cp.big_k(), v)
        - tab.log_f(cp.n - cp.big_k(), cp.t - v);
    let n_log = n_log.max(0.0);
    let sum_c = sums.sum_c_log2(cp, v);
    // N * G + (N - 1 + 1/|W|) * sum_C
    let w_count = binom_f64(v + s as u64 - 1, s as u64 - 1);
    let multiplier = if n_log > 60.0 {
        n_log
    } else {
        log2_lin(n_log.exp2() - 1.0 + 1.0 / w_count)
    };
    let total = log2_sum(&[n_log + cp.gauss_log2(), multiplier + sum_c]);
    CostReport {
        log2_cost: total,
        iterations_log2: n_log,
        iteration_cost_log2: log2_sum(&[cp.gauss_log2(), sum_c]),
        params: DecoderParams::SBlocks(SBlocksParams {
            v,
            fixed_split: None,
        }),
    }
}

/// Success probability of a Wagner iteration including the merge-window
/// corrections, log2 (clamped at 0).
pub fn wagner_success_log2(cp: &CodeParams, p: &WagnerParams) -> f64 {
    let tab = cp.table();
    if p.v > cp.t {
        return NEG_INF;
    }
    let head = cp.big_k() + p.ell;
    let blocks = 1u64 << p.a;
    let l0 = tab.log_f(head / blocks as usize, p.v / blocks);
    let mut log = tab.log_f(cp.n - cp.big_k() - p.ell, cp.t - p.v)
        + blocks as f64 * l0
        - tab.log_f(cp.n, cp.t);
    for i in 1..p.a as usize {
        let exponent = (1u64 << (p.a as usize - i - 1)) as f64;
        let step = (p.u[i - 1] - if i >= 2 { p.u[i - 2] } else { 0 }) as f64;
        log -= exponent * step * cp.log_q();
    }
    log.min(0.0)
}

pub fn cost_wagner(cp: &CodeParams, p: &WagnerParams) -> Result<CostReport> {
    let a = p.a as usize;
    let head = cp.big_k() + p.ell;
    let b_rows = head - cp.k1();
    if p.u.len() != a || p.u.windows(2).any(|w| w[0] > w[1]) || p.u.last() != Some(&b_rows) {
        return Err(Error::InvalidParams(format!(
            "u must be {a} nondecreasing windows ending at {b_rows}"
        )));
    }
    if p.ell > cp.n - cp.big_k() {
        return Err(Error::InvalidParams("ell exceeds n - K".into()));
    }
    let tab = cp.table();
    let iters = -wagner_success_log2(cp, p);

    let blocks = 1u64 << p.a;
    let l0 = tab.log_f(head / blocks as usize, p.v / blocks);
    // L_i = L_0^{2^i} / q^{beta_i}, beta_i = u_i + sum_j 2^{i-j-1} u_j
    let l_log = |i: usize| -> f64 {
        if i == 0 {
            return l0;
        }
        let mut beta = p.u[i - 1] as f64;
        for j in 1..i {
            beta += (1u64 << (i - j - 1)) as f64 * p.u[j - 1] as f64;
        }
        (1u64 << i) as f64 * l0 - beta * cp.log_q()
    };

    let cu = cp.add_mul();
    let mut terms = vec![cp.pge_log2(p.ell)];
    for i in 1..=a {
        let li_prev = l_log(i - 1);
        let width = head as f64 / (1u64 << (a - i + 1)) as f64;
        let merge = log2_lin(2.0 * p.u[i - 1] as f64 * width * cu) + li_prev;
        let sort = log2_lookup_cost(li_prev);
        terms.push(((1u64 << (a - i)) as f64).log2() + log2_sum(&[merge, sort]));
    }
    let abort = ((cp.t - p.v + 1) as f64 / cp.ring.mu_f64())
        .min((cp.n - cp.big_k() - p.ell) as f64);
    let final_checks = l_log(a)
        + log2_lin(p.v.min(head as u64) as f64 * abort * cu);
    terms.push(final_checks);

    let iter_cost = log2_sum(&terms);
    Ok(CostReport {
        log2_cost: iters + iter_cost,
        iterations_log2: iters,
        iteration_cost_log2: iter_cost,
        params: DecoderParams::Wagner(p.clone()),
    })
}

pub fn cost_representation(cp: &CodeParams, p: &RepTechParams) -> Result<CostReport> {
    let a = p.a as usize;
    if a == 0 || p.eps.len() != a {
        return Err(Error::InvalidParams("need a >= 1 and a overlap weights".into()));
    }
    if p.ell > cp.n - cp.big_k() {
        return Err(Error::InvalidParams("ell exceeds n - K".into()));
    }
    let head = cp.big_k() + p.ell;
    let b_rows = head - cp.k1();
    let vs = crate::decoders::rep_weight_schedule(p.a, p.v, &p.eps)?;
    let max_wt = head as u64 * cp.ring.max_weight();
    for (i, &eps_i) in p.eps.iter().enumerate() {
        if vs[i + 1] + eps_i > max_wt {
            return Err(Error::InvalidParams(format!(
                "eps_{i} exceeds M(K + ell) - v_{}",
                i + 1
            )));
        }
    }
    let windows: Vec<usize> = match &p.u {
        Some(u) => u.clone(),
        None => {
            let mut w: Vec<usize> = (1..a)
                .map(|i| {
                    crate::counting::representation_u(p.eps[i - 1], head as u64, &cp.ring)
                        .min(b_rows)
                })
                .collect();
            w.push(b_rows);
            w
        }
    };
    if windows.len() != a || windows.windows(2).any(|w| w[0] > w[1]) || windows[a - 1] != b_rows
    {
        return Err(Error::InvalidParams(
            "merge windows must be nondecreasing and end at K + ell - k1".into(),
        ));
    }

    let tab = cp.table();
    let prob = tab.log_f(cp.n - cp.big_k() - p.ell, cp.t - p.v) + tab.log_f(head, p.v)
        - tab.log_f(cp.n, cp.t);
    // a level with no vectors of its weight can never carry a representation
    if prob == NEG_INF || vs.iter().any(|&v_i| tab.log_f(head, v_i) == NEG_INF) {
        return Ok(CostReport {
            log2_cost: f64::INFINITY,
            iterations_log2: f64::INFINITY,
            iteration_cost_log2: NEG_INF,
            params: DecoderParams::Representation(p.clone()),
        });
    }
    let iters = (-prob).max(0.0);
    let lq = cp.log_q();
    let l_log = |i: usize| -> f64 {
        let u_i = if i == 0 { 0 } else { windows[i - 1] };
        tab.log_f(head, vs[i]) - u_i as f64 * lq
    };

    let cu = cp.add_mul();
    let add = cp.ring.add_cost() as f64;
    let mut terms = vec![cp.pge_log2(p.ell)];
    for i in 1..a {
        let li_prev = l_log(i - 1);
        let merge = log2_lin(2.0 * windows[i - 1] as f64 * head as f64 * cu) + li_prev;
        let sort = log2_factorial_log(li_prev);
        let lookup = li_prev + li_prev.max(1.0).log2();
        let collide = 2.0 * li_prev - windows[i - 1] as f64 * lq + log2_lin(head as f64 * add);
        terms.push(
            (((1u64 << (a - i)) as f64).log2())
                + log2_sum(&[merge, sort, lookup, collide]),
        );
    }
    let last = l_log(a - 1);
    let abort = ((cp.t - p.v + 1) as f64 / cp.ring.mu_f64())
        .min((cp.n - cp.big_k() - p.ell) as f64);
    let merge = log2_lin(2.0 * b_rows as f64 * head as f64 * cu) + last;
    let sort = log2_factorial_log(last);
    let lookup = last + last.max(1.0).log2();
    let collide = 2.0 * last - b_rows as f64 * lq + log2_lin(head as f64 * abort * cu);
    terms.push(log2_sum(&[merge, sort, lookup, collide]));

    let iter_cost = log2_sum(&terms);
    Ok(CostReport {
        log2_cost: iters + iter_cost,
        iterations_log2: iters,
        iteration_cost_log2: iter_cost,
        params: DecoderParams::Representation(p.clone()),
    })
}

pub fn cost_bjmm(cp: &CodeParams, p: &BjmmParams) -> Result<CostReport> {
    if p.ell > cp.n - cp.big_k() {
        return Err(Error::InvalidParams("ell exceeds n - K".into()));
    }
    let head = cp.big_k() + p.ell;
    let b_rows = head - cp.k1();
    let v0 = p.v / 8 + p.eps1 / 4 + p.eps0 / 2;
    let v1 = p.v / 4 + p.eps1 / 2 + p.eps0;
    let v2 = p.v / 2 + p.eps1;
    let u0 = p
        .u0
        .unwrap_or_else(|| crate::counting::representation_u(p.eps0, head as u64, &cp.ring))
        .min(b_rows);
    let u1 = p
        .u1
        .unwrap_or_else(|| crate::counting::representation_u(p.eps1, head as u64, &cp.ring))
        .min(b_rows);
    if u0 > u1 {
        return Err(Error::InvalidParams(format!("need u0 <= u1, got {u0} > {u1}")));
    }

    let tab = cp.table();
    let lq = cp.log_q();
    let prob = tab.log_f(head, p.v) + tab.log_f(cp.n - cp.big_k() - p.ell, cp.t - p.v)
        - tab.log_f(cp.n, cp.t);

    let l0 = tab.log_f(head / 2, v0);
    let l1 = tab.log_f(head, v1) - u0 as f64 * lq;
    let l2 = tab.log_f(head, v2) - u1 as f64 * lq;
    if prob == NEG_INF || l0 == NEG_INF || l1 == NEG_INF || l2 == NEG_INF {
        return Ok(CostReport {
            log2_cost: f64::INFINITY,
            iterations_log2: f64::INFINITY,
            iteration_cost_log2: NEG_INF,
            params: DecoderParams::Bjmm(*p),
        });
    }
    let iters = (-prob).max(0.0);

    let cu = cp.add_mul();
    let add = cp.ring.add_cost() as f64;
    let abort = ((cp.t - p.v + 1) as f64 / cp.ring.mu_f64())
        .min((cp.n - cp.big_k() - p.ell) as f64);

    let base = l0 + 3.0; // 8 L_0
    let level1 = 2.0
        + log2_sum(&[
            log2_lin(2.0 * u0 as f64 * head as f64 / 2.0 * cu) + l0,
            log2_lookup_cost(l0),
        ]);
    let level2 = 1.0
        + log2_sum(&[
            log2_lin(2.0 * u1 as f64 * head as f64 * cu) + l1,
            log2_factorial_log(l1),
            l1 + l1.max(1.0).log2(),
            2.0 * l1 - u1 as f64 * lq + log2_lin(head as f64 * add),
        ]);
    let level3 = log2_sum(&[
        log2_lin(2.0 * b_rows as f64 * head as f64 * cu) + l2,
        log2_factorial_log(l2),
        l2 + l2.max(1.0).log2(),
        2.0 * l2 - b_rows as f64 * lq + log2_lin(head as f64 * abort * cu),
    ]);

    let iter_cost = log2_sum(&[cp.pge_log2(p.ell), base, level1, level2, level3]);
    Ok(CostReport {
        log2_cost: iters + iter_cost,
        iterations_log2: iters,
        iteration_cost_log2: iter_cost,
        params: DecoderParams::Bjmm(*p),
    })
}

/// Iteration budget from a predicted success probability: 50 / p, capped.
pub fn suggested_max_iters(success_log2: f64) -> u64 {
    if success_log2 == NEG_INF {
        return 1 << 24;
    }
    let iters = 50.0 * (-success_log2).exp2();
    iters.min((1u64 << 24) as f64).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp_small() -> CodeParams {
        let ring = RingSpec::new(2, 3).unwrap();
        CodeParams::two_level(ring, 30, 12, 8, 0).unwrap()
    }

    #[test]
    fn prange_collapse() {
        // v1 = v2 = 0, z = 0: iterations = F(n,t)/F(n-K,t), cost ~ Gaussian
        let cp = cp_small();
        let p = TwoBlocksParams {
            m1: 8,
            m2: 0,
            z: 0,
            v1: 0,
            v2: 0,
        };
        let report = cost_two_blocks(&cp, &p);
        let tab = cp.table();
        let expect_iters = tab.log_f(30, 12) - tab.log_f(22, 12);
        assert!((report.iterations_log2 - expect_iters).abs() < 1e-9);
        assert!((report.iteration_cost_log2 - cp.gauss_log2()).abs() < 0.05);
        assert!(
            (report.log2_cost - report.iterations_log2 - report.iteration_cost_log2).abs()
                < 1e-9
        );
    }

    #[test]
    fn certain_success_is_single_iteration() {
        // t = 0 gives probability 1 for the compatible split
        let ring = RingSpec::new(2, 3).unwrap();
        let cp = CodeParams::two_level(ring, 20, 0, 5, 0).unwrap();
        let p = TwoBlocksParams {
            m1: 3,
            m2: 2,
            z: 0,
            v1: 0,
            v2: 0,
        };
        let report = cost_two_blocks(&cp, &p);
        assert_eq!(report.iterations_log2, 0.0);
    }

    #[test]
    fn impossible_split_costs_infinity() {
        let cp = cp_small();
        let p = TwoBlocksParams {
            m1: 8,
            m2: 0,
            z: 0,
            v1: 0,
            v2: 5, // m2 = 0 cannot carry weight
        };
        let report = cost_two_blocks(&cp, &p);
        assert!(report.log2_cost.is_infinite());
    }

    #[test]
    fn s_blocks_variant_matches_direct_formula() {
        let ring = RingSpec::new(2, 2).unwrap();
        let cp = CodeParams::two_level(ring, 20, 8, 4, 4).unwrap();
        let report = cost_s_blocks_variant(&cp, &[2, 1]).unwrap();
        let tab = cp.table();
        let prob = tab.log_f(4, 2) + tab.log_f(4, 1) + tab.log_f(12, 5) - tab.log_f(20, 8);
        assert!((report.iterations_log2 + prob).abs() < 1e-9);
    }

    #[test]
    fn s_blocks_sum_matches_explicit_compositions() {
        let ring = RingSpec::new(2, 2).unwrap();
        let cp = CodeParams::two_level(ring, 20, 8, 4, 4).unwrap();
        let v = 4u64;
        let sums = SBlocksSums::build(&cp, v);
        let got = sums.sum_c_log2(&cp, v);
        // brute force over all weak compositions
        let comps = crate::decoders::weak_compositions(v, 2);
        let terms: Vec<f64> = comps
            .iter()
            .map(|split| s_blocks_composition_log2(&cp, split))
            .collect();
        let expect = log2_sum(&terms);
        assert!((got - expect).abs() < 1e-6, "{got} vs {expect}");
    }

    #[test]
    fn wagner_empty_probability_correction_at_one_level() {
        let cp = cp_small();
        let p = WagnerParams {
            a: 1,
            ell: 2,
            v: 4,
            u: vec![2],
        };
        let report = cost_wagner(&cp, &p).unwrap();
        let tab = cp.table();
        let expect = -(tab.log_f(20, 8) + 2.0 * tab.log_f(5, 2) - tab.log_f(30, 12)).min(0.0);
        assert!((report.iterations_log2 - expect).abs() < 1e-9);
    }

    #[test]
    fn bjmm_degenerate_list_sizes() {
        let ring = RingSpec::new(2, 3).unwrap();
        let cp = CodeParams::two_level(ring, 24, 8, 6, 0).unwrap();
        let p = BjmmParams {
            ell: 2,
            v: 8,
            eps0: 0,
            eps1: 0,
            u0: Some(0),
            u1: Some(0),
        };
        // with eps = 0, u = 0: L1 = F(K+l, v/4), L2 = F(K+l, v/2)
        let report = cost_bjmm(&cp, &p).unwrap();
        assert!(report.log2_cost.is_finite());
    }
}
