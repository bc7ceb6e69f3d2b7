use lee_isd::counting::representation_u;
use lee_isd::ring::RingSpec;
use lee_isd::workfactor::tables::{log2_sum, SphereTable};
use lee_isd::workfactor::CodeParams;

#[derive(Clone, Copy)]
struct Variant {
    lemma_filter: bool, // base lists filtered on u0 = lemma(eps)
    coll_sub_u0: bool,  // collisions Lambda^2 / q^(ua - u0) instead of /q^ua
    prob_penalty: bool, // success probability loses q^-u0
}

fn rep_cost(cp: &CodeParams, ell: usize, v: u64, eps: u64, u0_tab: &[Vec<usize>], var: Variant) -> f64 {
    let ring = cp.ring;
    let tab: &SphereTable = cp.table();
    let (n, big_k, k1, t) = (cp.n, cp.big_k(), cp.k1(), cp.t);
    let head = big_k + ell;
    let b_rows = head - k1;
    let v0 = v / 2 + eps;
    if v0 > head as u64 * ring.max_weight() * 1 { return f64::INFINITY; }
    if eps > head as u64 * ring.max_weight() - v { return f64::INFINITY; }
    let cu = (ring.add_cost() + ring.mul_cost()) as f64;
    let lq = (ring.modulus() as f64).log2();
    let mu = ring.mu_f64();

    let u0 = if var.lemma_filter { u0_tab[head][eps as usize].min(b_rows) } else { 0 };
    let lam = tab.log_f(head, v0) - u0 as f64 * lq;
    let mut iters = (tab.log_f(n, t) - tab.log_f(n - big_k - ell, t - v) - tab.log_f(head, v)).max(0.0);
    if var.prob_penalty { iters += u0 as f64 * lq; }
    if !iters.is_finite() || lam == f64::NEG_INFINITY { return f64::INFINITY; }

    let pge = (((n - big_k - ell) as f64).powi(2) * 101.0 * cu).max(1.0).log2();
    let merge = lam + (2.0 * (b_rows as f64).max(1.0) * head as f64 * cu).log2();
    let sort = log2_sum(&[lam + (lam - 1.443).max(1.0).log2(), lam + lam.max(1.0).log2()]);
    let denom = if var.coll_sub_u0 { b_rows - u0.min(b_rows) } else { b_rows };
    let abort = ((t - v + 1) as f64 / mu).min((n - big_k - ell) as f64);
    let coll = 2.0 * lam - denom as f64 * lq + (head as f64 * abort * cu).log2();
    iters + log2_sum(&[pge, merge, sort, coll])
}

fn main() {
    let ring8 = RingSpec::new(2, 3).unwrap();
    let ring256 = RingSpec::new(2, 8).unwrap();
    let ring841 = RingSpec::new(29, 2).unwrap();
    let rows: Vec<(&RingSpec, u64, usize, usize, f64)> = vec![
        (&ring8, 41, 35, 5, 36.75), (&ring8, 41, 32, 10, 34.39), (&ring8, 41, 30, 15, 32.62),
        (&ring8, 41, 27, 20, 30.14), (&ring8, 41, 25, 25, 29.74),
        (&ring8, 20, 70, 10, 44.99), (&ring8, 20, 50, 50, 31.65),
        (&ring8, 7, 97, 30, 37.98), (&ring8, 7, 75, 75, 24.51),
        (&ring256, 593, 25, 10, 92.48), (&ring256, 145, 51, 40, 101.30), (&ring256, 31, 75, 75, 57.58),
        (&ring841, 44, 75, 75, 75.37), (&ring841, 1434, 25, 25, 125.28),
    ];
    // lemma u table per (head, eps)
    let mut tables = std::collections::HashMap::new();
    for ring in [&ring8, &ring256, &ring841] {
        let mut t = vec![vec![0usize; 65]; 101];
        for head in 1..=100usize {
            for eps in 0..=64u64 {
                t[head][eps as usize] = representation_u(eps, head as u64, ring);
            }
        }
        tables.insert(ring.modulus(), t);
    }
    for lemma_filter in [false, true] {
        for coll_sub_u0 in [false, true] {
            for prob_penalty in [false, true] {
                if !lemma_filter && (coll_sub_u0 || prob_penalty) { continue; }
                let var = Variant { lemma_filter, coll_sub_u0, prob_penalty };
                let mut diffs = Vec::new();
                for &(ring, t, big_k, k1, target) in &rows {
                    let cp = CodeParams::two_level(*ring, 100, t, k1, big_k - k1).unwrap();
                    let u0_tab = &tables[&ring.modulus()];
                    let mut best = f64::INFINITY;
                    for ell in 0..=(100 - big_k) {
                        for v2 in 0..=(t / 2).min(400) {
                            for eps in 0..=24u64 {
                                let c = rep_cost(&cp, ell, 2 * v2, eps, u0_tab, var);
                                if c < best { best = c; }
                            }
                        }
                    }
                    diffs.push(best - target);
                }
                let worst = diffs.iter().fold(0.0f64, |a, d| a.max(d.abs()));
                let d: Vec<String> = diffs.iter().map(|x| format!("{x:+.2}")).collect();
                println!("filter={} subU0={} probPen={}: worst={worst:.2} [{}]",
                    lemma_filter as u8, coll_sub_u0 as u8, prob_penalty as u8, d.join(","));
            }
        }
    }
}
