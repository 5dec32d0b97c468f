//! L2-regularized logistic regression on weighted log-loss.
//!
//! The objective is normalized by the total sample weight,
//! `F(β) = Σ wᵢ·ℓᵢ / Σw + (l2/Σw)/2·‖β‖²` (intercept unpenalized), which
//! makes the optimum invariant to rescaling all weights together with the
//! penalty. Minimization is plain gradient descent with a spectral
//! (secant-based) step size and Armijo backtracking; training fails rather
//! than returning a model that never reached the gradient tolerance.

use serde::{Deserialize, Serialize};

use crate::dataset::EncodedMatrix;
use crate::error::{Error, Result};
use crate::learners::config::LearnerConfig;
use crate::learners::{sigmoid, softplus};

/// A fitted logistic model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    intercept: f64,
    coefficients: Vec<f64>,
    /// Solver iterations spent reaching the tolerance.
    n_iterations: usize,
    /// Gradient norm at the accepted solution.
    grad_norm: f64,
}

impl LogisticModel {
    pub fn n_features(&self) -> usize {
        self.coefficients.len()
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn n_iterations(&self) -> usize {
        self.n_iterations
    }

    pub fn predict_scores(&self, x: &EncodedMatrix) -> Result<Vec<f64>> {
        if x.n_cols() != self.coefficients.len() {
            return Err(Error::Shape(format!(
                "matrix has {} feature columns, model was trained on {}",
                x.n_cols(),
                self.coefficients.len()
            )));
        }
        let mut z = vec![self.intercept; x.n_rows()];
        for (j, &beta) in self.coefficients.iter().enumerate() {
            for (zi, &v) in z.iter_mut().zip(x.col(j)) {
                *zi += beta * v;
            }
        }
        Ok(z.into_iter().map(sigmoid).collect())
    }
}

pub(crate) fn train_logistic(
    x: &EncodedMatrix,
    w: &[f64],
    config: &LearnerConfig,
) -> Result<LogisticModel> {
    let problem = Problem {
        x,
        y: x.target(),
        w,
        sum_w: w.iter().sum(),
        l2: config.l2_penalty,
    };
    let d = x.n_cols();

    // theta[0] is the intercept, theta[1..] the feature coefficients.
    let mut theta = vec![0.0f64; d + 1];
    let z0 = problem.margins(&theta);
    let mut f_val = problem.objective(&theta, &z0);
    let mut grad = problem.gradient(&theta, &z0);
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None; // (step s, gradient change)
    let mut alpha = 1.0f64;

    for iter in 0..config.max_iterations {
        let grad_norm = norm(&grad);
        if grad_norm <= config.tolerance {
            return Ok(LogisticModel {
                intercept: theta[0],
                coefficients: theta[1..].to_vec(),
                n_iterations: iter,
                grad_norm,
            });
        }

        if let Some((s, dg)) = &prev {
            let s_dg: f64 = s.iter().zip(dg).map(|(a, b)| a * b).sum();
            if s_dg > 0.0 {
                let s_s: f64 = s.iter().map(|a| a * a).sum();
                alpha = (s_s / s_dg).clamp(1e-12, 1e12);
            } else {
                alpha = 1.0;
            }
        }

        // Armijo backtracking along the steepest-descent direction.
        let g_sq = grad_norm * grad_norm;
        let mut step = alpha;
        let (theta_new, z_new, f_new) = loop {
            let candidate: Vec<f64> = theta
                .iter()
                .zip(&grad)
                .map(|(&t, &g)| t - step * g)
                .collect();
            let z_cand = problem.margins(&candidate);
            let f_cand = problem.objective(&candidate, &z_cand);
            if f_cand <= f_val - 1e-4 * step * g_sq {
                break (candidate, z_cand, f_cand);
            }
            step *= 0.5;
            if step < 1e-20 {
                return Err(Error::Training(
                    "logistic line search stalled; objective no longer decreases".into(),
                ));
            }
        };

        let grad_new = problem.gradient(&theta_new, &z_new);
        let s: Vec<f64> = theta_new.iter().zip(&theta).map(|(a, b)| a - b).collect();
        let dg: Vec<f64> = grad_new.iter().zip(&grad).map(|(a, b)| a - b).collect();
        prev = Some((s, dg));
        theta = theta_new;
        f_val = f_new;
        grad = grad_new;
    }

    Err(Error::Training(format!(
        "logistic solver did not reach gradient norm {} within {} iterations (reached {:.3e})",
        config.tolerance,
        config.max_iterations,
        norm(&grad)
    )))
}

struct Problem<'a> {
    x: &'a EncodedMatrix,
    y: &'a [u8],
    w: &'a [f64],
    sum_w: f64,
    l2: f64,
}

impl Problem<'_> {
    /// Linear scores z = intercept + Xβ.
    fn margins(&self, theta: &[f64]) -> Vec<f64> {
        let mut z = vec![theta[0]; self.x.n_rows()];
        for j in 0..self.x.n_cols() {
            let beta = theta[j + 1];
            if beta == 0.0 {
                continue;
            }
            for (zi, &v) in z.iter_mut().zip(self.x.col(j)) {
                *zi += beta * v;
            }
        }
        z
    }

    fn objective(&self, theta: &[f64], z: &[f64]) -> f64 {
        let loss: f64 = z
            .iter()
            .zip(self.y)
            .zip(self.w)
            .map(|((&zi, &yi), &wi)| wi * (softplus(zi) - f64::from(yi) * zi))
            .sum();
        let penalty: f64 = theta[1..].iter().map(|b| b * b).sum::<f64>() / 2.0;
        loss / self.sum_w + self.l2 / self.sum_w * penalty
    }

    fn gradient(&self, theta: &[f64], z: &[f64]) -> Vec<f64> {
        let n = self.x.n_rows();
        let mut residual = Vec::with_capacity(n);
        for ((&zi, &yi), &wi) in z.iter().zip(self.y).zip(self.w) {
            residual.push(wi * (sigmoid(zi) - f64::from(yi)) / self.sum_w);
        }
        let mut grad = vec![0.0f64; theta.len()];
        grad[0] = residual.iter().sum();
        for j in 0..self.x.n_cols() {
            let dot: f64 = residual.iter().zip(self.x.col(j)).map(|(r, v)| r * v).sum();
            grad[j + 1] = dot + self.l2 / self.sum_w * theta[j + 1];
        }
        grad
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::config::LearnerFamily;
    use crate::metrics::roc_auc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn config(l2: f64, tolerance: f64) -> LearnerConfig {
        let mut c = LearnerConfig::new(LearnerFamily::Logistic);
        c.l2_penalty = l2;
        c.tolerance = tolerance;
        c
    }

    /// y ~ Bernoulli(sigmoid(intercept + β·x)) with standard-normal features.
    fn synthetic(n: usize, beta: &[f64], intercept: f64, seed: u64) -> EncodedMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let d = beta.len();
        let columns: Vec<Vec<f64>> = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| StandardNormal.sample(&mut rng))
                    .collect()
            })
            .collect();
        let y: Vec<u8> = (0..n)
            .map(|i| {
                let z: f64 = intercept
                    + beta
                        .iter()
                        .enumerate()
                        .map(|(j, b)| b * columns[j][i])
                        .sum::<f64>();
                u8::from(rng.random::<f64>() < sigmoid(z))
            })
            .collect();
        let names = (0..d).map(|j| format!("f{j}")).collect();
        EncodedMatrix::from_columns(names, columns, y).unwrap()
    }

    #[test]
    fn recovers_generating_coefficients() {
        let beta = [1.5, -2.0, 0.5];
        let x = synthetic(6000, &beta, -0.3, 31);
        let model = train_logistic(&x, &vec![1.0; 6000], &config(1e-6, 1e-8)).unwrap();
        for (est, true_b) in model.coefficients().iter().zip(&beta) {
            assert!(
                (est - true_b).abs() < 0.15,
                "coefficient {est} vs {true_b}"
            );
        }
        assert!((model.intercept() + 0.3).abs() < 0.15);
    }

    #[test]
    fn flipping_labels_reverses_the_ranking() {
        let x = synthetic(1500, &[1.0, -0.7], 0.2, 37);
        let test = synthetic(600, &[1.0, -0.7], 0.2, 38);
        let flipped_y: Vec<u8> = x.target().iter().map(|&y| 1 - y).collect();
        let x_flip = x.with_target(flipped_y).unwrap();

        let cfg = config(1.0, 1e-10);
        let w = vec![1.0; 1500];
        let m = train_logistic(&x, &w, &cfg).unwrap();
        let m_flip = train_logistic(&x_flip, &w, &cfg).unwrap();

        let auc = roc_auc(test.target(), &m.predict_scores(&test).unwrap()).unwrap();
        let auc_flip = roc_auc(test.target(), &m_flip.predict_scores(&test).unwrap()).unwrap();
        assert!(
            (auc + auc_flip - 1.0).abs() <= 1e-9,
            "{auc} + {auc_flip} != 1"
        );
    }

    #[test]
    fn integer_weights_match_duplicated_rows() {
        let x = synthetic(120, &[0.8, -1.1], 0.1, 41);
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let w: Vec<f64> = (0..120).map(|_| rng.random_range(1..=3) as f64).collect();

        let mut dup_cols: Vec<Vec<f64>> = vec![Vec::new(); 2];
        let mut dup_y = Vec::new();
        for i in 0..120 {
            for _ in 0..w[i] as usize {
                dup_cols[0].push(x.value(i, 0));
                dup_cols[1].push(x.value(i, 1));
                dup_y.push(x.target()[i]);
            }
        }
        let x_dup = EncodedMatrix::from_columns(
            vec!["f0".into(), "f1".into()],
            dup_cols,
            dup_y,
        )
        .unwrap();

        let cfg = config(0.5, 1e-11);
        let a = train_logistic(&x, &w, &cfg).unwrap();
        let b = train_logistic(&x_dup, &vec![1.0; x_dup.n_rows()], &cfg).unwrap();
        let sa = a.predict_scores(&x).unwrap();
        let sb = b.predict_scores(&x).unwrap();
        for (p, q) in sa.iter().zip(&sb) {
            assert!((p - q).abs() <= 1e-9, "{p} vs {q}");
        }
    }

    #[test]
    fn weight_scaling_with_matching_penalty_is_invariant() {
        let x = synthetic(400, &[0.6, 0.9], -0.2, 47);
        let mut rng = ChaCha12Rng::seed_from_u64(48);
        let w: Vec<f64> = (0..400).map(|_| 0.1 + rng.random::<f64>()).collect();

        let base = train_logistic(&x, &w, &config(1.0, 1e-9)).unwrap();
        let w4: Vec<f64> = w.iter().map(|v| v * 4.0).collect();
        let exact = train_logistic(&x, &w4, &config(4.0, 1e-9)).unwrap();
        assert_eq!(
            base.predict_scores(&x).unwrap(),
            exact.predict_scores(&x).unwrap()
        );

        let w3: Vec<f64> = w.iter().map(|v| v * 3.0).collect();
        let close = train_logistic(&x, &w3, &config(3.0, 1e-9)).unwrap();
        for (a, b) in base
            .predict_scores(&x)
            .unwrap()
            .iter()
            .zip(&close.predict_scores(&x).unwrap())
        {
            assert!((a - b).abs() <= 1e-6);
        }
    }

    #[test]
    fn uninformative_features_fall_back_to_the_weighted_base_rate() {
        let x = EncodedMatrix::from_columns(
            vec!["flat".into()],
            vec![vec![0.0; 3]],
            vec![0, 1, 1],
        )
        .unwrap();
        let w = [1.0, 1.0, 2.0];
        let model = train_logistic(&x, &w, &config(1.0, 1e-10)).unwrap();
        for s in model.predict_scores(&x).unwrap() {
            assert!((s - 0.75).abs() < 1e-6, "score {s}");
        }
    }

    #[test]
    fn refusing_to_stop_short_of_tolerance() {
        let x = synthetic(500, &[1.2, -0.4], 0.0, 53);
        let mut cfg = config(1.0, 1e-12);
        cfg.max_iterations = 2;
        let err = train_logistic(&x, &vec![1.0; 500], &cfg).unwrap_err();
        assert!(err.to_string().contains("did not reach"));
    }

    #[test]
    fn deterministic_coefficients() {
        let x = synthetic(300, &[0.5], 0.1, 59);
        let w = vec![1.0; 300];
        let a = train_logistic(&x, &w, &config(1.0, 1e-9)).unwrap();
        let b = train_logistic(&x, &w, &config(1.0, 1e-9)).unwrap();
        assert_eq!(a.coefficients(), b.coefficients());
        assert_eq!(a.intercept(), b.intercept());
    }
}
