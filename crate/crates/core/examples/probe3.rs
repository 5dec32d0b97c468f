//! Scratch: desk benchmark aggregates per seed.

use fairdream::audit::FeatureSpec;
use fairdream::benchmark::{run_benchmark, BenchmarkConfig, Method};
use fairdream::dataset::synth::generate;
use fairdream::learners::LearnerFamily;

fn main() {
    let seeds: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();
    let table = generate(48_842, 42).unwrap();
    for seed in seeds {
        let start = std::time::Instant::now();
        let config = BenchmarkConfig::desk(seed);
        let run = run_benchmark(
            &table,
            &LearnerFamily::ALL,
            &FeatureSpec::default_features(),
            &config,
        )
        .unwrap();
        let b = run.means.baseline.unwrap_or(f64::NAN);
        let f = run.means.fairdream.unwrap_or(f64::NAN);
        let g = run.means.gridsearch.unwrap_or(f64::NAN);
        let gs_table = &run.tables[1];
        let pairs = run.cells.len() / 3;
        let fd_tpr = gs_table.count(Method::Fairdream, "tpr").unwrap();
        let c9a = (b - f).abs() <= 0.03;
        let c9b = f - g >= 0.05;
        let c9c = (fd_tpr as usize) * 2 <= pairs;
        println!(
            "seed {seed}: pairs {pairs} skipped {} | base {b:.4} fd {f:.4} gs {g:.4} | d(b,f) {:+.4} d(f,g) {:+.4} | fd tpr pts {fd_tpr}/{pairs} | c9a {} c9b {} c9c {} | {:.0}s",
            run.skipped.len(),
            f - b,
            f - g,
            if c9a { "PASS" } else { "fail" },
            if c9b { "PASS" } else { "fail" },
            if c9c { "PASS" } else { "fail" },
            start.elapsed().as_secs_f64()
        );
        for cell in &run.cells {
            println!(
                "   {:?}/{}/{}: auc {:.4} opr_gap {:.3} tpr_gap {} cal_gap {}",
                cell.family,
                cell.feature,
                cell.method.as_str(),
                cell.overall_roc_auc,
                cell.gaps.opr,
                cell.gaps
                    .tpr
                    .map_or("-".into(), |v| format!("{v:.3}")),
                cell.gaps
                    .calibration
                    .map_or("-".into(), |v| format!("{v:.3}")),
            );
        }
    }
}
