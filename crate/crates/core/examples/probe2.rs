//! Scratch: criterion 7/8 shape — sex × random-forest, desk scale.

use fairdream::audit::FeatureSpec;
use fairdream::dataset::synth::generate;
use fairdream::dataset::{split, subsample};
use fairdream::fairdream::run_fairdream;
use fairdream::gridsearch::run_gridsearch;
use fairdream::learners::{classify, LearnerConfig, LearnerFamily, SampleWeights};
use fairdream::metrics::{
    best_f1_threshold, calibration_curve, calibration_gap_area, fairness_gaps,
    group_report_projected, roc_auc, FairObjective,
};
use fairdream::pipeline::FittedModel;

fn main() {
    let depth: usize = std::env::args().nth(1).map(|a| a.parse().unwrap()).unwrap_or(3);
    let ntrees: usize = std::env::args().nth(2).map(|a| a.parse().unwrap()).unwrap_or(100);
    for seed in [40u64, 41, 42, 43, 44, 45] {
        let full = generate(48_842, seed).unwrap();
        let desk = subsample(&full, 10_000, seed).unwrap();
        let (tr, au) = split(&desk, 0.3, seed).unwrap();
        let mut cfg = LearnerConfig::new(LearnerFamily::RandomForest);
        cfg.n_estimators = ntrees;
        cfg.max_depth = depth;
        cfg.seed = seed;

        let base = FittedModel::train(&tr, &cfg, &SampleWeights::uniform(tr.rows())).unwrap();
        let spec = FeatureSpec::named("sex");
        let part = spec.build(&tr).unwrap();
        let assign = part.project(&au).unwrap();
        let y = au.target();

        let bscores = base.scores(&au).unwrap();
        let bauc = roc_auc(y, &bscores).unwrap();
        let (bthr, _) = best_f1_threshold(y, &bscores).unwrap();
        let byhat = classify(&bscores, bthr);
        let brep = group_report_projected(y, &byhat, &part, &assign).unwrap();
        let bgap = fairness_gaps(&brep, FairObjective::DemographicParity)
            .unwrap()
            .dp_gap;

        // Per-group calibration curves -> inter-group area.
        let curves = |scores: &[f64]| -> f64 {
            let mut per_group = Vec::new();
            for g in 0..part.n_groups() {
                let (mut gy, mut gs) = (Vec::new(), Vec::new());
                for i in 0..y.len() {
                    if assign[i] == Some(g as u32) {
                        gy.push(y[i]);
                        gs.push(scores[i]);
                    }
                }
                per_group.push(calibration_curve(&gy, &gs, 10).unwrap());
            }
            let mut max_area: f64 = 0.0;
            for a in 0..per_group.len() {
                for b in a + 1..per_group.len() {
                    let area = calibration_gap_area(&per_group[a], &per_group[b]).unwrap();
                    max_area = max_area.max(area);
                }
            }
            max_area
        };
        let bcal = curves(&bscores);

        let fd = run_fairdream(
            &base,
            &tr,
            &au,
            &spec,
            FairObjective::DemographicParity,
            10,
            1.0 / 3.0,
            &cfg,
        )
        .unwrap();
        let fbest = fd.best_candidate();
        let fgap = fairness_gaps(&fbest.scores.report, FairObjective::DemographicParity)
            .unwrap()
            .dp_gap;
        let fscores = fd.best_fitted().scores(&au).unwrap();
        let fcal = curves(&fscores);

        let gs = run_gridsearch(
            &tr,
            &au,
            &spec,
            FairObjective::DemographicParity,
            10,
            2.0,
            0.05,
            &cfg,
        )
        .unwrap();
        let gbest = gs.best_point();

        let c7 = gbest.f_violation < fgap && gbest.stat_score <= bauc - 0.10;
        let c8 = fcal >= bcal;
        println!(
            "seed {seed}: bauc={bauc:.3} bgap={bgap:.3} | fd gap={fgap:.3} auc={:.3} | gs F={:.3} auc={:.3} lam={:+.2} sat={} | bcal={bcal:.4} fcal={fcal:.4} | c7={} c8={}",
            fbest.scores.stat_score,
            gbest.f_violation,
            gbest.stat_score,
            gbest.lambda,
            gbest.f_violation <= 0.05,
            if c7 { "PASS" } else { "FAIL" },
            if c8 { "PASS" } else { "FAIL" },
        );
    }
}
