//! Scratch: dump every sweep point's (target, λ, F, stat) per cell.

use fairdream::audit::FeatureSpec;
use fairdream::benchmark::BenchmarkConfig;
use fairdream::dataset::synth::generate;
use fairdream::dataset::{split, subsample};
use fairdream::gridsearch::run_gridsearch;
use fairdream::learners::LearnerFamily;
use fairdream::metrics::FairObjective;

fn main() {
    let seed: u64 = std::env::args().nth(1).unwrap().parse().unwrap();
    let table = generate(48_842, 42).unwrap();
    let config = BenchmarkConfig::desk(seed);
    let desk = subsample(&table, config.sample_rows, seed).unwrap();
    let (train, audit) = split(&desk, config.split_fraction, seed).unwrap();

    for family in LearnerFamily::ALL {
        for feature in FeatureSpec::default_features() {
            let learner = config.learner_for(family);
            let run = run_gridsearch(
                &train,
                &audit,
                &feature,
                FairObjective::DemographicParity,
                config.models_per_method,
                config.lambda_bound,
                config.eta,
                &learner,
            )
            .unwrap();
            println!("--- {:?} × {}", family, feature.name);
            for (i, p) in run.points.iter().enumerate() {
                let sel = if i == run.best {
                    " <== selected"
                } else {
                    ""
                };
                println!(
                    "  d={:<12} t={:+.2} F={:.4} stat={:.4} deg={}{}",
                    p.target_group, p.lambda, p.f_violation, p.stat_score, p.degenerate, sel
                );
            }
        }
    }
}
