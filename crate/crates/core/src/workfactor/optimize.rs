//! Internal-parameter optimization: coarse-to-fine integer grid search over
//! the documented parameter ranges of each algorithm.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoders::{BjmmParams, RepTechParams, TwoBlocksParams, WagnerParams};
use crate::error::{Error, Result};

use super::cost::{
    cost_bjmm, cost_representation, cost_s_blocks_with, cost_s_blocks_variant, cost_two_blocks,
    cost_wagner, CodeParams, CostReport, SBlocksSums,
};

/// Which algorithm's cost to minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmId {
    TwoBlocks,
    SBlocks,
    SBlocksVariant,
    Wagner { a: u32 },
    Representation { a: u32 },
    Bjmm,
}

impl AlgorithmId {
    pub fn label(&self) -> String {
        match self {
            AlgorithmId::TwoBlocks => "2-blocks".into(),
            AlgorithmId::SBlocks => "s-blocks".into(),
            AlgorithmId::SBlocksVariant => "s-blocks variant".into(),
            AlgorithmId::Wagner { a } => format!("wagner a={a}"),
            AlgorithmId::Representation { a } => format!("rep a={a}"),
            AlgorithmId::Bjmm => "bjmm".into(),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        let lower = name.to_lowercase();
        Ok(match lower.as_str() {
            "two-blocks" | "2-blocks" | "two_blocks" => AlgorithmId::TwoBlocks,
            "s-blocks" | "s_blocks" => AlgorithmId::SBlocks,
            "s-blocks-variant" | "s_blocks_variant" => AlgorithmId::SBlocksVariant,
            "wagner" | "wagner1" | "wagner-a1" => AlgorithmId::Wagner { a: 1 },
            "wagner2" | "wagner-a2" => AlgorithmId::Wagner { a: 2 },
            "rep" | "rep1" | "rep-a1" | "representation" => AlgorithmId::Representation { a: 1 },
            "rep2" | "rep-a2" => AlgorithmId::Representation { a: 2 },
            "bjmm" => AlgorithmId::Bjmm,
            _ => return Err(Error::InvalidParams(format!("unknown algorithm {name}"))),
        })
    }
}

/// Search effort: lattice points per dimension in the coarse pass, and how
/// many best cells are refined.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub grid: usize,
    pub keep: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { grid: 16, keep: 5 }
    }
}

/// Minimizes the cost of `alg` over its documented integer parameter grid.
pub fn optimize(cp: &CodeParams, alg: AlgorithmId, budget: SearchBudget) -> Result<CostReport> {
    cp.table(); // build once before any parallel evaluation
    match alg {
        AlgorithmId::TwoBlocks => optimize_two_blocks(cp, budget),
        AlgorithmId::SBlocks => optimize_s_blocks(cp),
        AlgorithmId::SBlocksVariant => optimize_s_blocks_variant(cp, budget),
        AlgorithmId::Wagner { a } => optimize_wagner(cp, a, budget),
        AlgorithmId::Representation { a } => optimize_rep(cp, a, budget),
        AlgorithmId::Bjmm => optimize_bjmm(cp, budget),
    }
}

fn better(best: Option<CostReport>, candidate: CostReport) -> Option<CostReport> {
    match best {
        None => Some(candidate),
        Some(b) => {
            // deterministic tie-break on the parameter debug string
            let replace = candidate.log2_cost < b.log2_cost
                || (candidate.log2_cost == b.log2_cost
                    && format!("{:?}", candidate.params) < format!("{:?}", b.params));
            Some(if replace { candidate } else { b })
        }
    }
}

/// Multi-resolution lattice search over integer boxes: a coarse lattice is
/// scored, the best cells are re-searched at a quarter of the step until
/// every step reaches 1. `eval` returns the cost or +inf for infeasible
/// points.
fn lattice_search(
    ranges: &[(i64, i64)],
    budget: SearchBudget,
    eval: &(dyn Fn(&[i64]) -> f64 + Sync),
) -> Vec<Vec<i64>> {
    let dims = ranges.len();
    // per-dimension steps shrink by 4x per round
    let mut steps: Vec<i64> = ranges
        .iter()
        .map(|&(lo, hi)| (((hi - lo) as usize / budget.grid).max(1)) as i64)
        .collect();
    let mut boxes = vec![ranges.to_vec()];
    loop {
        let mut points: Vec<Vec<i64>> = Vec::new();
        for b in &boxes {
            let mut cur = vec![0i64; dims];
            enumerate_lattice(b, &steps, 0, &mut cur, &mut points);
        }
        points.sort();
        points.dedup();
        let mut scored: Vec<(f64, Vec<i64>)> = points
            .into_par_iter()
            .map(|pt| (eval(&pt), pt))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|(c, _)| c.is_finite())
            .collect();
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        scored.truncate(budget.keep);
        if steps.iter().all(|&s| s == 1) || scored.is_empty() {
            return scored.into_iter().map(|(_, p)| p).collect();
        }
        boxes = scored
            .iter()
            .map(|(_, pt)| {
                pt.iter()
                    .zip(ranges)
                    .zip(&steps)
                    .map(|((&x, &(lo, hi)), &st)| ((x - 2 * st).max(lo), (x + 2 * st).min(hi)))
                    .collect()
            })
            .collect();
        for st in steps.iter_mut() {
            *st = (*st / 4).max(1);
        }
    }
}

fn enumerate_lattice(
    ranges: &[(i64, i64)],
    steps: &[i64],
    dim: usize,
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if dim == ranges.len() {
        out.push(cur.clone());
        return;
    }
    let (lo, hi) = ranges[dim];
    let mut x = lo;
    loop {
        cur[dim] = x;
        enumerate_lattice(ranges, steps, dim + 1, cur, out);
        if x == hi {
            break;
        }
        x = (x + steps[dim]).min(hi);
    }
}

fn optimize_two_blocks(cp: &CodeParams, budget: SearchBudget) -> Result<CostReport> {
    let big_k = cp.big_k();
    let m1 = big_k.div_ceil(2);
    let m2 = big_k - m1;
    let m_wt = cp.ring.max_weight();
    let v1_max = (m_wt * m1 as u64).min(cp.t) as i64;
    let v2_max = (m_wt * m2 as u64).min(cp.t) as i64;
    let z_max = (cp.n - big_k) as i64;

    let eval = |pt: &[i64]| -> f64 {
        let (v1, v2, z) = (pt[0] as u64, pt[1] as u64, pt[2] as usize);
        if v1 + v2 > cp.t {
            return f64::INFINITY;
        }
        let p = TwoBlocksParams { m1, m2, z, v1, v2 };
        cost_two_blocks(cp, &p).log2_cost
    };
    let finalists = lattice_search(
        &[(0, v1_max), (0, v2_max), (0, z_max)],
        budget,
        &eval,
    );
    let mut best = None;
    for pt in finalists {
        let p = TwoBlocksParams {
            m1,
            m2,
            z: pt[2] as usize,
            v1: pt[0] as u64,
            v2: pt[1] as u64,
        };
        best = better(best, cost_two_blocks(cp, &p));
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible two-blocks parameters".into()))
}

fn optimize_s_blocks(cp: &CodeParams) -> Result<CostReport> {
    let v_max = cp.t.min(cp.ring.max_weight() * cp.big_k() as u64);
    let sums = SBlocksSums::build(cp, v_max);
    let reports: Vec<CostReport> = (0..=v_max)
        .into_par_iter()
        .map(|v| cost_s_blocks_with(cp, v, &sums))
        .collect();
    let mut best = None;
    for r in reports {
        if r.log2_cost.is_finite() {
            best = better(best, r);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible s-blocks weight".into()))
}

fn optimize_s_blocks_variant(cp: &CodeParams, budget: SearchBudget) -> Result<CostReport> {
    let s = cp.ring.s() as usize;
    let m_wt = cp.ring.max_weight();
    // only blocks with k_i > 0 can carry weight
    let active: Vec<usize> = (0..s).filter(|&i| cp.profile.k_profile[i] > 0).collect();
    let ranges: Vec<(i64, i64)> = active
        .iter()
        .map(|&i| {
            (
                0i64,
                (m_wt * cp.profile.k_profile[i] as u64).min(cp.t) as i64,
            )
        })
        .collect();
    let expand = |pt: &[i64]| -> Vec<u64> {
        let mut split = vec![0u64; s];
        for (slot, &i) in active.iter().enumerate() {
            split[i] = pt[slot] as u64;
        }
        split
    };
    let eval = |pt: &[i64]| -> f64 {
        let split = expand(pt);
        if split.iter().sum::<u64>() > cp.t {
            return f64::INFINITY;
        }
        match cost_s_blocks_variant(cp, &split) {
            Ok(r) => r.log2_cost,
            Err(_) => f64::INFINITY,
        }
    };
    let finalists = lattice_search(&ranges, budget, &eval);
    let mut best = None;
    for pt in finalists {
        if let Ok(r) = cost_s_blocks_variant(cp, &expand(&pt)) {
            best = better(best, r);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible split".into()))
}

fn wagner_params(cp: &CodeParams, a: u32, ell: usize, v: u64, u1: usize) -> WagnerParams {
    let b_rows = cp.big_k() + ell - cp.k1();
    let u = match a {
        1 => vec![b_rows],
        2 => vec![u1.min(b_rows), b_rows],
        _ => {
            let mut u: Vec<usize> = (1..a).map(|i| (u1 * i as usize).min(b_rows)).collect();
            u.push(b_rows);
            u
        }
    };
    WagnerParams { a, ell, v, u }
}

fn optimize_wagner(cp: &CodeParams, a: u32, budget: SearchBudget) -> Result<CostReport> {
    let ell_max = (cp.n - cp.big_k()) as i64;
    let v_cap = cp.t as i64;
    let u_cap = (cp.big_k() + cp.n - cp.big_k() - cp.k1()) as i64;
    let ranges: Vec<(i64, i64)> = if a == 1 {
        vec![(0, ell_max), (0, v_cap)]
    } else {
        vec![(0, ell_max), (0, v_cap), (0, u_cap)]
    };
    let eval = |pt: &[i64]| -> f64 {
        let (ell, v) = (pt[0] as usize, pt[1] as u64);
        let u1 = if a == 1 { 0 } else { pt[2] as usize };
        let head = cp.big_k() + ell;
        if v > cp.ring.max_weight() * head as u64 {
            return f64::INFINITY;
        }
        if a >= 2 && u1 > head - cp.k1() {
            return f64::INFINITY;
        }
        let p = wagner_params(cp, a, ell, v, u1);
        match cost_wagner(cp, &p) {
            Ok(r) => r.log2_cost,
            Err(_) => f64::INFINITY,
        }
    };
    let finalists = lattice_search(&ranges, budget, &eval);
    let mut best = None;
    for pt in finalists {
        let u1 = if a == 1 { 0 } else { pt[2] as usize };
        let p = wagner_params(cp, a, pt[0] as usize, pt[1] as u64, u1);
        if let Ok(r) = cost_wagner(cp, &p) {
            best = better(best, r);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible wagner parameters".into()))
}

fn optimize_rep(cp: &CodeParams, a: u32, budget: SearchBudget) -> Result<CostReport> {
    let ell_max = (cp.n - cp.big_k()) as i64;
    let half = 1i64 << a;
    let v_cap = cp.t as i64 / half;
    let eps_cap = (cp.ring.max_weight() as i64) * (cp.big_k() as i64 + ell_max);
    let mut ranges = vec![(0, ell_max), (0, v_cap)];
    for _ in 0..a {
        ranges.push((0, eps_cap));
    }
    let eval = |pt: &[i64]| -> f64 {
        let ell = pt[0] as usize;
        let v = (pt[1] as u64) << a;
        let eps: Vec<u64> = pt[2..].iter().map(|&x| x as u64).collect();
        let p = RepTechParams {
            a,
            ell,
            v,
            eps,
            u: None,
        };
        match cost_representation(cp, &p) {
            Ok(r) => r.log2_cost,
            Err(_) => f64::INFINITY,
        }
    };
    let finalists = lattice_search(&ranges, budget, &eval);
    let mut best = None;
    for pt in finalists {
        let p = RepTechParams {
            a,
            ell: pt[0] as usize,
            v: (pt[1] as u64) << a,
            eps: pt[2..].iter().map(|&x| x as u64).collect(),
            u: None,
        };
        if let Ok(r) = cost_representation(cp, &p) {
            best = better(best, r);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible representation parameters".into()))
}

fn optimize_bjmm(cp: &CodeParams, budget: SearchBudget) -> Result<CostReport> {
    let ell_max = (cp.n - cp.big_k()) as i64;
    let v_cap = cp.t as i64 / 8;
    let eps_cap = (cp.ring.max_weight() as i64) * (cp.big_k() as i64 + ell_max) / 4;
    let ranges = vec![(0, ell_max), (0, v_cap), (0, eps_cap), (0, eps_cap)];
    let eval = |pt: &[i64]| -> f64 {
        let p = BjmmParams {
            ell: pt[0] as usize,
            v: (pt[1] as u64) * 8,
            eps0: (pt[2] as u64) * 2,
            eps1: (pt[3] as u64) * 4,
            u0: None,
            u1: None,
        };
        match cost_bjmm(cp, &p) {
            Ok(r) => r.log2_cost,
            Err(_) => f64::INFINITY,
        }
    };
    let finalists = lattice_search(&ranges, budget, &eval);
    let mut best = None;
    for pt in finalists {
        let p = BjmmParams {
            ell: pt[0] as usize,
            v: (pt[1] as u64) * 8,
            eps0: (pt[2] as u64) * 2,
            eps1: (pt[3] as u64) * 4,
            u0: None,
            u1: None,
        };
        if let Ok(r) = cost_bjmm(cp, &p) {
            best = better(best, r);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible bjmm parameters".into()))
}
