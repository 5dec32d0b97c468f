// Scratch harness: print synthetic-census marginals for tuning.

use fairdream::dataset::synth::generate;

fn main() {
    let t = generate(48_842, 42).unwrap();
    let y = t.target();
    let n = t.rows();
    println!("overall positive rate: {:.4}", t.positive_rate());

    let ages = t.column("age").unwrap().numeric().unwrap();
    for (lo, hi) in [(17.0, 29.0), (29.0, 37.0), (37.0, 48.0), (48.0, 62.0), (62.0, 91.0)] {
        let mut pos = 0usize;
        let mut cnt = 0usize;
        for (i, &a) in ages.iter().enumerate() {
            if a >= lo && a < hi {
                cnt += 1;
                pos += y[i] as usize;
            }
        }
        println!(
            "age [{lo:>2},{hi:>2}): n={cnt:>6} share={:.3} rate={:.4}",
            cnt as f64 / n as f64,
            pos as f64 / cnt.max(1) as f64
        );
    }

    let sex = t.column("sex").unwrap();
    let mut pos = [0usize; 2];
    let mut cnt = [0usize; 2];
    for i in 0..n {
        let s = usize::from(sex.category_at(i) == Some("Female"));
        cnt[s] += 1;
        pos[s] += y[i] as usize;
    }
    println!(
        "male:   n={} rate={:.4}",
        cnt[0],
        pos[0] as f64 / cnt[0] as f64
    );
    println!(
        "female: n={} rate={:.4}",
        cnt[1],
        pos[1] as f64 / cnt[1] as f64
    );

    let mean_age = ages.iter().sum::<f64>() / n as f64;
    println!("mean age: {mean_age:.2}");
    let hours = t.column("hours_per_week").unwrap().numeric().unwrap();
    println!("mean hours: {:.2}", hours.iter().sum::<f64>() / n as f64);
    let gain = t.column("capital_gain").unwrap().numeric().unwrap();
    println!(
        "gain>0 share: {:.4}, gain>=5000 share: {:.4}",
        gain.iter().filter(|&&g| g > 0.0).count() as f64 / n as f64,
        gain.iter().filter(|&&g| g >= 5000.0).count() as f64 / n as f64
    );
    let married = t.column("marital_status").unwrap();
    let m_share = (0..n)
        .filter(|&i| married.category_at(i) == Some("Married-civ-spouse"))
        .count() as f64
        / n as f64;
    println!("married share: {m_share:.4}");
}
