//! Population statistics over random TPMs: mean integrated information
//! per node count with 95% confidence intervals, Welch's two-sample
//! t-test across node counts, and infeasibility accounting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{PhiError, Result};
use crate::net::{sample_tpm, SamplingMode};
use crate::system::phi_of_tpm_with_limit;

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance (denominator N - 1).
fn variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64
}

/// Symmetric 95% interval about the sample mean: normal critical value
/// 1.96 at N >= 100, Student-t critical value below that.
pub fn confidence_interval(values: &[f64]) -> Result<(f64, f64)> {
    let n = values.len();
    if n < 2 {
        return Err(PhiError::InsufficientData { need: 2, got: n });
    }
    let m = mean(values);
    let s = variance(values).sqrt();
    let crit = if n >= 100 {
        1.96
    } else {
        StudentsT::new(0.0, 1.0, (n - 1) as f64)
            .expect("valid dof")
            .inverse_cdf(0.975)
    };
    let half = crit * s / (n as f64).sqrt();
    Ok((m - half, m + half))
}

/// Aggregated evaluation of N random TPMs at one node count.
///
/// `phi_values` holds only feasible draws; the `*_with_zeros` variants
/// treat infeasible draws as contributing zero, since either aggregation
/// is defensible and downstream comparisons may want both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationStats {
    pub node_count: usize,
    pub sample_size: usize,
    pub phi_values: Vec<f64>,
    pub infeasible_count: usize,
    pub infeasible_rate: f64,
    pub mean: f64,
    pub ci95: (f64, f64),
    pub mean_with_zeros: f64,
    pub ci95_with_zeros: (f64, f64),
}

/// Draws N TPMs, evaluates each at its first feasible state, and
/// aggregates. Each draw uses its own counter-derived stream of the seed,
/// so the parallel evaluation is order-independent and reproducible.
pub fn sample_population(
    node_count: usize,
    sample_size: usize,
    mode: SamplingMode,
    seed: u64,
    max_nodes: usize,
) -> Result<PopulationStats> {
    if sample_size < 2 {
        return Err(PhiError::InsufficientData { need: 2, got: sample_size });
    }
    let outcomes: Result<Vec<Option<f64>>> = (0..sample_size)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let tpm = sample_tpm(node_count, mode, &mut rng);
            Ok(phi_of_tpm_with_limit(&tpm, max_nodes)?.map(|r| r.big_phi))
        })
        .collect();
    let outcomes = outcomes?;
    let phi_values: Vec<f64> = outcomes.iter().filter_map(|o| *o).collect();
    let infeasible_count = sample_size - phi_values.len();
    let with_zeros: Vec<f64> = outcomes.iter().map(|o| o.unwrap_or(0.0)).collect();
    let (m, ci) = if phi_values.len() >= 2 {
        (mean(&phi_values), confidence_interval(&phi_values)?)
    } else if phi_values.len() == 1 {
        (phi_values[0], (phi_values[0], phi_values[0]))
    } else {
        (0.0, (0.0, 0.0))
    };
    Ok(PopulationStats {
        node_count,
        sample_size,
        infeasible_count,
        infeasible_rate: infeasible_count as f64 / sample_size as f64,
        mean: m,
        ci95: ci,
        mean_with_zeros: mean(&with_zeros),
        ci95_with_zeros: confidence_interval(&with_zeros)?,
        phi_values,
    })
}

/// Welch's unequal-variance t statistic with Welch-Satterthwaite degrees
/// of freedom and a two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelchTest {
    pub t_statistic: f64,
    pub p_value: f64,
    pub dof: f64,
}

pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<WelchTest> {
    for group in [a, b] {
        if group.len() < 2 {
            return Err(PhiError::InsufficientData { need: 2, got: group.len() });
        }
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (variance(a) / na, variance(b) / nb);
    let se = (va + vb).sqrt();
    let diff = ma - mb;
    if se == 0.0 {
        // both groups constant: equal means are a perfect null fit,
        // unequal means are infinitely far from it
        return Ok(if diff == 0.0 {
            WelchTest { t_statistic: 0.0, p_value: 1.0, dof: na + nb - 2.0 }
        } else {
            WelchTest {
                t_statistic: diff.signum() * f64::INFINITY,
                p_value: 0.0,
                dof: na + nb - 2.0,
            }
        });
    }
    let t = diff / se;
    let dof = (va + vb).powi(2) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, dof).expect("valid dof");
    let p = (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0);
    Ok(WelchTest { t_statistic: t, p_value: p, dof })
}

/// Two populations plus the test between their feasible-phi samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test: WelchTest,
    pub group_a: PopulationStats,
    pub group_b: PopulationStats,
    /// Reject-the-null decisions at conventional alpha levels.
    pub reject_at_005: bool,
    pub reject_at_001: bool,
}

/// End-to-end inference run: two populations, one Welch test on their
/// feasible phi values.
pub fn run_inference_experiment(
    group_a: (usize, usize),
    group_b: (usize, usize),
    mode: SamplingMode,
    seed: u64,
    max_nodes: usize,
) -> Result<TestReport> {
    let a = sample_population(group_a.0, group_a.1, mode, seed, max_nodes)?;
    let b = sample_population(group_b.0, group_b.1, mode, seed.wrapping_add(1), max_nodes)?;
    let test = welch_t_test(&a.phi_values, &b.phi_values)?;
    Ok(TestReport {
        test,
        group_a: a,
        group_b: b,
        reject_at_005: test.p_value < 0.05,
        reject_at_001: test.p_value < 0.01,
    })
}
