use lee_isd::ring::RingSpec;
use lee_isd::workfactor::{optimize, AlgorithmId, CodeParams, SearchBudget};
use std::time::Instant;

// (p, s, t, rows[(K, k1, [2blocks, sblocks, variant, wagner1, wagner2, rep1])])
type Section = (u64, u32, u64, Vec<(usize, usize, [f64; 6])>);

fn golden() -> Vec<Section> {
    vec![
        // R = 0.25
        (29, 2, 1434, vec![
            (45, 5, [156.30, 79.46, 74.07, 161.84, 167.58, 214.98]),
            (40, 10, [139.04, 103.22, 91.52, 143.56, 149.16, 190.57]),
            (35, 15, [124.06, 126.02, 109.36, 129.35, 135.98, 166.47]),
            (30, 20, [106.46, 142.97, 127.10, 110.68, 119.98, 142.37]),
            (25, 25, [123.95, 144.13, 144.13, 121.12, 123.76, 125.28]),
        ]),
        (2, 8, 593, vec![
            (27, 5, [79.22, 99.50, 99.60, 84.79, 89.89, 99.79]),
            (25, 10, [73.79, 98.17, 98.10, 72.28, 83.07, 92.48]),
            (26, 15, [75.12, 106.02, 105.83, 79.93, 86.50, 95.40]),
            (25, 20, [76.24, 107.39, 107.45, 79.51, 82.00, 90.89]),
            (25, 25, [96.02, 112.14, 112.14, 96.05, 98.82, 95.72]),
        ]),
        (2, 3, 41, vec![
            (35, 5, [32.75, 29.17, 29.93, 36.88, 39.08, 36.75]),
            (32, 10, [31.03, 33.13, 31.06, 34.42, 36.62, 34.39]),
            (30, 15, [29.93, 33.84, 32.56, 32.77, 35.65, 32.62]),
            (27, 20, [28.69, 33.27, 33.84, 30.72, 33.49, 30.14]),
            (25, 25, [31.91, 35.36, 35.36, 31.70, 34.08, 29.74]),
        ]),
        // R = 0.5
        (29, 2, 261, vec![
            (90, 10, [187.48, 85.83, 46.66, 194.63, 201.39, 261.71]),
            (80, 20, [166.14, 132.32, 73.42, 173.20, 177.38, 224.17]),
            (70, 30, [145.01, 164.23, 101.75, 151.97, 158.03, 190.69]),
            (60, 40, [123.96, 178.88, 131.40, 130.77, 134.51, 159.59]),
            (50, 50, [128.06, 161.93, 161.93, 128.29, 131.63, 139.10]),
        ]),
        (2, 8, 145, vec![
            (55, 10, [91.44, 98.23, 96.06, 98.66, 102.57, 111.67]),
            (54, 20, [89.53, 108.57, 102.93, 96.08, 100.13, 109.15]),
            (52, 30, [85.53, 115.28, 108.26, 92.33, 95.16, 104.36]),
            (51, 40, [83.24, 117.14, 115.32, 90.36, 94.28, 101.30]),
            (50, 50, [97.89, 122.29, 122.29, 100.83, 102.53, 103.33]),
        ]),
        (2, 3, 20, vec![
            (70, 10, [38.91, 37.82, 27.45, 45.13, 46.78, 44.99]),
            (65, 20, [35.97, 42.01, 28.74, 41.93, 42.97, 41.10]),
            (60, 30, [33.24, 40.52, 31.54, 38.44, 39.50, 37.59]),
            (55, 40, [30.69, 37.73, 34.82, 35.09, 36.42, 34.35]),
            (50, 50, [31.26, 38.06, 37.39, 32.98, 34.35, 31.65]),
        ]),
        // R = 0.75
        (29, 2, 44, vec![
            (100, 50, [90.57, 126.26, 172.65, 98.86, 101.49, 115.48]),
            (93, 57, [85.43, 131.61, 71.42, 94.53, 96.36, 104.44]),
            (87, 63, [78.79, 121.92, 79.44, 87.89, 90.00, 94.55]),
            (80, 70, [70.49, 104.37, 89.13, 79.89, 80.81, 83.21]),
            (75, 75, [71.11, 97.36, 97.36, 77.08, 79.44, 75.37]),
        ]),
        (2, 8, 31, vec![
            (84, 10, [63.17, 48.22, 37.23, 72.02, 73.06, 74.22]),
            (81, 30, [60.20, 74.65, 48.29, 68.80, 70.08, 70.23]),
            (78, 50, [56.83, 75.48, 60.59, 65.61, 66.78, 66.06]),
            (75, 70, [52.02, 72.72, 72.77, 60.77, 61.99, 60.43]),
            (75, 75, [56.54, 76.58, 76.58, 62.55, 64.19, 57.58]),
        ]),
        (2, 3, 7, vec![
            (97, 30, [30.78, 39.31, 24.95, 38.24, 41.04, 37.98]),
            (90, 45, [28.79, 36.75, 26.78, 34.91, 35.47, 33.24]),
            (84, 57, [26.79, 33.73, 28.25, 32.09, 32.75, 29.93]),
            (77, 70, [24.45, 31.28, 30.22, 28.39, 29.48, 26.27]),
            (75, 75, [24.70, 31.57, 31.57, 27.68, 28.69, 24.51]),
        ]),
    ]
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let only_section: Option<usize> = args.get(1).map(|s| s.parse().unwrap());
    let only_col: Option<usize> = args.get(2).map(|s| s.parse().unwrap());
    let algs = [
        AlgorithmId::TwoBlocks,
        AlgorithmId::SBlocks,
        AlgorithmId::SBlocksVariant,
        AlgorithmId::Wagner { a: 1 },
        AlgorithmId::Wagner { a: 2 },
        AlgorithmId::Representation { a: 1 },
    ];
    let mut worst: f64 = 0.0;
    for (sec, (p, s, t, rows)) in golden().into_iter().enumerate() {
        if let Some(o) = only_section {
            if o != sec {
                continue;
            }
        }
        let ring = RingSpec::new(p, s).unwrap();
        println!("=== q={p}^{s} t={t}");
        for (big_k, k1, cols) in rows {
            let k2 = big_k - k1;
            let cp = CodeParams::two_level(ring, 100, t, k1, k2).unwrap();
            print!("K={big_k:3} k1={k1:3}:");
            for (ci, alg) in algs.iter().enumerate() {
                if let Some(o) = only_col {
                    if o != ci {
                        continue;
                    }
                }
                let start = Instant::now();
                let got = optimize(&cp, *alg, SearchBudget::default())
                    .map(|r| r.log2_cost)
                    .unwrap_or(f64::NAN);
                let diff = got - cols[ci];
                if diff.abs() > worst {
                    worst = diff.abs();
                }
                print!("  {:>7.2}({:+.2},{}ms)", got, diff, start.elapsed().as_millis());
            }
            println!();
        }
    }
    println!("worst |diff| = {worst:.3}");
}
