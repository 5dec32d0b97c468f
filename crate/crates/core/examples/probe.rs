fn main() {
    use fairdream::audit::FeatureSpec;
    use fairdream::dataset::{split, subsample, synth::generate};
    use fairdream::fairdream::*;
    use fairdream::learners::{classify, LearnerConfig, LearnerFamily, SampleWeights};
    use fairdream::metrics::{best_f1_threshold, roc_auc, FairObjective};
    use fairdream::pipeline::FittedModel;

    for seed in [40u64, 41, 42, 43, 44, 45] {
        let t = generate(48_842, seed).unwrap();
        let sub = subsample(&t, 10_000, seed).unwrap();
        let (tr, au) = split(&sub, 0.3, seed).unwrap();
        let mut cfg = LearnerConfig::new(LearnerFamily::Gbdt);
        cfg.n_estimators = 200;
        cfg.seed = seed;
        let base = FittedModel::train(&tr, &cfg, &SampleWeights::uniform(tr.rows())).unwrap();
        let scores = base.scores(&au).unwrap();
        let (thr, _) = best_f1_threshold(au.target(), &scores).unwrap();
        let yhat = classify(&scores, thr);
        let spec = FeatureSpec::with_edges("age", vec![17.0, 29.0, 37.0, 91.0]);
        let part = spec.build(&au).unwrap();
        let opr = |g: usize| {
            let (mut p, mut n) = (0usize, 0usize);
            for (i, &a) in part.assignment.iter().enumerate() {
                if a as usize == g { n += 1; p += yhat[i] as usize; }
            }
            p as f64 / n as f64
        };
        let auc = roc_auc(au.target(), &scores).unwrap();
        let base_ratio = opr(1) / opr(0);
        let run = run_fairdream(&base, &tr, &au, &spec, FairObjective::DemographicParity, 10, 1.0/3.0, &cfg).unwrap();
        let gaps = |s: &ModelScores| {
            let g = &s.report.groups;
            let tpr = |i: usize| g[i].tpr.unwrap_or(f64::NAN);
            let fpr = |i: usize| g[i].fpr.unwrap_or(f64::NAN);
            ((tpr(1)-tpr(0)).abs(), (fpr(1)-fpr(0)).abs(), g[1].opr/g[0].opr)
        };
        let (btg, bfg, bratio) = gaps(&run.baseline);
        let best = &run.candidates[run.best];
        let (tg, fg, ratio) = gaps(&best.scores);
        let ok5 = base_ratio >= 3.0;
        let ok6 = tg <= 0.10 && fg <= 0.10
            && (run.baseline.stat_score - best.scores.stat_score) <= 0.03
            && ratio >= 2.0 && ratio < bratio;
        let eo_strict = tg < btg && fg < bfg;
        println!(
            "seed {seed}: auc={auc:.4} base_ratio={base_ratio:.2} | sel n={} tpr_gap={tg:.3} fpr_gap={fg:.3} ratio={ratio:.2} dAUC={:+.4} | c5={} c6={} eo_strict={}",
            best.schedule.n, best.scores.stat_score - run.baseline.stat_score,
            if ok5 {"PASS"} else {"FAIL"}, if ok6 {"PASS"} else {"FAIL"}, eo_strict
        );
    }
}
