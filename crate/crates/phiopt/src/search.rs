//! Search over TPM space: prior-guided random search with a multinomial
//! prior over node counts, plus uniform-random and grid baselines.
//!
//! All three methods spend an iteration per candidate TPM, feasible or
//! not, and log every evaluation. Randomized methods draw each
//! iteration's TPM from its own counter-derived stream of the master
//! seed, so batches can be evaluated in parallel without changing the
//! result.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{PhiError, Result};
use crate::net::{grid_tpm, sample_tpm, SamplingMode, SystemState, Tpm};
use crate::system::{phi_of_tpm_with_limit, DEFAULT_MAX_NODES};

/// Default exploration smoothing for the dimension prior.
pub const DEFAULT_KAPPA: f64 = 0.02;

/// Parameters shared by all search methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub d_min: usize,
    pub d_max: usize,
    /// Total evaluation budget T.
    pub total_iters: usize,
    /// Batch size between prior updates.
    pub batch_size: usize,
    /// Learning rate mu for the prior update.
    pub learning_rate: f64,
    /// Smoothing kappa: prior entries are clamped into [kappa, 1 - kappa].
    pub smoothing: f64,
    /// Initial probability over dimensions d_min..=d_max.
    pub initial_prior: Vec<f64>,
    pub seed: u64,
    pub mode: SamplingMode,
    /// Node-count guardrail for evaluation.
    pub max_nodes: usize,
}

impl SearchConfig {
    /// A ready-to-edit config with uniform prior over the dimension range.
    pub fn new(d_min: usize, d_max: usize, total_iters: usize) -> SearchConfig {
        let n = d_max.saturating_sub(d_min) + 1;
        SearchConfig {
            d_min,
            d_max,
            total_iters,
            batch_size: total_iters.max(1).min(5),
            learning_rate: 0.1,
            smoothing: DEFAULT_KAPPA,
            initial_prior: vec![1.0 / n as f64; n],
            seed: 0,
            mode: SamplingMode::Binary,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn dimension_count(&self) -> usize {
        self.d_max - self.d_min + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_min < 1 || self.d_min > self.d_max {
            return Err(PhiError::InvalidConfig(format!(
                "dimension range {}..{} is empty or zero-based",
                self.d_min, self.d_max
            )));
        }
        if self.d_max > self.max_nodes {
            return Err(PhiError::Budget { nodes: self.d_max, limit: self.max_nodes });
        }
        if self.total_iters == 0 {
            return Err(PhiError::InvalidConfig("total_iters must be positive".into()));
        }
        if self.batch_size == 0 || self.batch_size > self.total_iters {
            return Err(PhiError::InvalidConfig(format!(
                "batch_size {} must lie in 1..=total_iters ({})",
                self.batch_size, self.total_iters
            )));
        }
        if self.learning_rate < 0.0 {
            return Err(PhiError::InvalidConfig("learning_rate must be nonnegative".into()));
        }
        if !(0.0..0.5).contains(&self.smoothing) {
            return Err(PhiError::InvalidConfig("smoothing must lie in [0, 0.5)".into()));
        }
        DimensionPrior::validate(&self.initial_prior, self.dimension_count())?;
        Ok(())
    }
}

/// Probability vector over dimensions d_min..=d_max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionPrior {
    pub theta: Vec<f64>,
}

impl DimensionPrior {
    pub fn uniform(dimension_count: usize) -> DimensionPrior {
        DimensionPrior { theta: vec![1.0 / dimension_count as f64; dimension_count] }
    }

    fn validate(theta: &[f64], expected_len: usize) -> Result<()> {
        if theta.len() != expected_len {
            return Err(PhiError::InvalidConfig(format!(
                "prior has {} entries, expected {}",
                theta.len(),
                expected_len
            )));
        }
        if theta.iter().any(|&p| p < 0.0 || p.is_nan()) {
            return Err(PhiError::InvalidConfig("prior entries must be nonnegative".into()));
        }
        let total: f64 = theta.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(PhiError::InvalidConfig(format!("prior sums to {total}, expected 1")));
        }
        Ok(())
    }
}

/// One spent iteration: the sampled dimension and the outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub iteration: usize,
    pub dimension: usize,
    pub feasible: bool,
    pub phi: Option<f64>,
    /// Wall-clock seconds for the evaluation (informational only).
    pub elapsed: f64,
}

/// Outcome of a whole search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_phi: f64,
    pub best_tpm: Option<Tpm>,
    pub best_state: Option<SystemState>,
    pub trajectory: Vec<EvalRecord>,
    pub prior_history: Vec<DimensionPrior>,
}

impl SearchResult {
    /// Best phi seen up to and including each iteration (0 before the
    /// first feasible evaluation). Nondecreasing by construction.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = 0.0f64;
        self.trajectory
            .iter()
            .map(|rec| {
                if let Some(phi) = rec.phi {
                    best = best.max(phi);
                }
                best
            })
            .collect()
    }
}

/// Draws a dimension from d_min..=d_max with probabilities theta.
pub fn sample_dimension<R: Rng + ?Sized>(prior: &DimensionPrior, d_min: usize, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in prior.theta.iter().enumerate() {
        acc += p;
        if u < acc {
            return d_min + i;
        }
    }
    d_min + prior.theta.len() - 1
}

/// Per-dimension multiplicative likelihood factors for the prior update.
///
/// Dimensions sampled in the batch are ranked worst to best by their best
/// feasible phi (dimensions with no feasible draw rank below all that had
/// one) and assigned ranking scores r evenly spaced on [-1, 1]; a single
/// sampled dimension gets r = 1. The factor is 1 + 0.2 * mu * r, floored
/// at 0.01. Unsampled dimensions keep factor 1.
pub fn rank_likelihood(
    batch: &[EvalRecord],
    d_min: usize,
    d_max: usize,
    mu: f64,
) -> Vec<f64> {
    let n = d_max - d_min + 1;
    let mut best: Vec<Option<Option<f64>>> = vec![None; n]; // sampled? -> best feasible phi
    for rec in batch {
        let slot = &mut best[rec.dimension - d_min];
        let entry = slot.get_or_insert(None);
        if let Some(phi) = rec.phi {
            *entry = Some(entry.map_or(phi, |b: f64| b.max(phi)));
        }
    }
    // worst to best: infeasible-only first, then ascending best phi;
    // dimension index breaks exact ties deterministically
    let mut sampled: Vec<(usize, Option<f64>)> = best
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.map(|b| (i, b)))
        .collect();
    sampled.sort_by(|a, b| match (a.1, b.1) {
        (None, None) => a.0.cmp(&b.0),
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.partial_cmp(&y).unwrap().then(a.0.cmp(&b.0)),
    });
    let mut factors = vec![1.0; n];
    let m = sampled.len();
    for (rank, &(i, _)) in sampled.iter().enumerate() {
        let r = if m == 1 { 1.0 } else { -1.0 + 2.0 * rank as f64 / (m - 1) as f64 };
        factors[i] = (1.0 + 0.2 * mu * r).max(0.01);
    }
    factors
}

/// Reweights the prior by the batch's likelihood factors, renormalizes,
/// clamps every entry into [kappa, 1 - kappa], and renormalizes again.
pub fn update_prior(
    prior: &DimensionPrior,
    mu: f64,
    kappa: f64,
    batch: &[EvalRecord],
    d_min: usize,
    d_max: usize,
) -> DimensionPrior {
    let factors = rank_likelihood(batch, d_min, d_max, mu);
    let mut theta: Vec<f64> =
        prior.theta.iter().zip(&factors).map(|(&p, &f)| p * f).collect();
    let total: f64 = theta.iter().sum();
    for p in &mut theta {
        *p /= total;
    }
    // smoothing: clamp into [kappa, 1 - kappa] and renormalize, iterated
    // to a fixpoint because renormalizing can push clamped entries back
    // out of the band when three or more dimensions sit near a bound
    if theta.len() > 1 && kappa > 0.0 && theta.len() as f64 * kappa < 1.0 {
        for _ in 0..200 {
            for p in &mut theta {
                *p = p.clamp(kappa, 1.0 - kappa);
            }
            let total: f64 = theta.iter().sum();
            for p in &mut theta {
                *p /= total;
            }
            let in_band = theta
                .iter()
                .all(|&p| (kappa - 1e-15..=1.0 - kappa + 1e-15).contains(&p));
            if in_band {
                break;
            }
        }
    }
    DimensionPrior { theta }
}

/// Evaluates one candidate TPM and wraps the outcome in an EvalRecord.
fn evaluate(iteration: usize, tpm: Tpm, max_nodes: usize) -> Result<(EvalRecord, Option<(f64, Tpm, SystemState)>)> {
    let start = Instant::now();
    let outcome = phi_of_tpm_with_limit(&tpm, max_nodes)?;
    let elapsed = start.elapsed().as_secs_f64();
    let dimension = tpm.node_count();
    match outcome {
        Some(result) => Ok((
            EvalRecord {
                iteration,
                dimension,
                feasible: true,
                phi: Some(result.big_phi),
                elapsed,
            },
            Some((result.big_phi, tpm, result.state)),
        )),
        None => Ok((
            EvalRecord { iteration, dimension, feasible: false, phi: None, elapsed },
            None,
        )),
    }
}

/// The iteration's private random stream: stream 0 is reserved for the
/// sequential dimension draws, streams i+1 feed iteration i's TPM.
fn iteration_rng(seed: u64, iteration: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration as u64 + 1);
    rng
}

fn run_batched<F>(config: &SearchConfig, mut pick_dimension: F, track_prior: bool) -> Result<SearchResult>
where
    F: FnMut(&DimensionPrior, &mut ChaCha8Rng) -> usize,
{
    config.validate()?;
    let mut dim_rng = ChaCha8Rng::seed_from_u64(config.seed);
    dim_rng.set_stream(0);
    let mut prior = DimensionPrior { theta: config.initial_prior.clone() };
    let mut prior_history = if track_prior { vec![prior.clone()] } else { Vec::new() };

    let mut trajectory = Vec::with_capacity(config.total_iters);
    let mut best: Option<(f64, Tpm, SystemState)> = None;
    let mut iteration = 0usize;
    while iteration < config.total_iters {
        let batch_len = config.batch_size.min(config.total_iters - iteration);
        let mut candidates = Vec::with_capacity(batch_len);
        for k in 0..batch_len {
            let i = iteration + k;
            let dimension = pick_dimension(&prior, &mut dim_rng);
            let mut rng = iteration_rng(config.seed, i);
            candidates.push((i, sample_tpm(dimension, config.mode, &mut rng)));
        }
        let evaluated: Result<Vec<_>> = candidates
            .into_par_iter()
            .map(|(i, tpm)| evaluate(i, tpm, config.max_nodes))
            .collect();
        let batch_records: Vec<_> = evaluated?;
        for (record, found) in &batch_records {
            if let Some((phi, tpm, state)) = found {
                let improves = best.as_ref().is_none_or(|(b, _, _)| *phi > *b);
                if improves {
                    best = Some((*phi, tpm.clone(), state.clone()));
                }
            }
            trajectory.push(record.clone());
        }
        if track_prior {
            let batch: Vec<EvalRecord> =
                batch_records.iter().map(|(r, _)| r.clone()).collect();
            prior = update_prior(
                &prior,
                config.learning_rate,
                config.smoothing,
                &batch,
                config.d_min,
                config.d_max,
            );
            prior_history.push(prior.clone());
        }
        iteration += batch_len;
    }
    let (best_phi, best_tpm, best_state) = match best {
        Some((phi, tpm, state)) => (phi, Some(tpm), Some(state)),
        None => (0.0, None, None),
    };
    Ok(SearchResult { best_phi, best_tpm, best_state, trajectory, prior_history })
}

/// Prior-guided random search: dimensions drawn from an adaptive
/// multinomial prior that is reweighted after every batch.
pub fn prior_guided_search(config: &SearchConfig) -> Result<SearchResult> {
    run_batched(
        config,
        |prior, rng| sample_dimension(prior, config.d_min, rng),
        true,
    )
}

/// Baseline: dimension drawn uniformly from d_min..=d_max, no prior.
pub fn random_search(config: &SearchConfig) -> Result<SearchResult> {
    run_batched(
        config,
        |_, rng| rng.random_range(config.d_min..=config.d_max),
        false,
    )
}

/// Baseline: the evaluation budget is split evenly across dimensions and
/// each dimension's share walks evenly spaced points of its binary TPM
/// space. Fully deterministic.
pub fn grid_search(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let n = config.dimension_count();
    let base = config.total_iters / n;
    let extra = config.total_iters % n;
    let mut trajectory = Vec::with_capacity(config.total_iters);
    let mut best: Option<(f64, Tpm, SystemState)> = None;
    let mut candidates = Vec::with_capacity(config.total_iters);
    let mut iteration = 0usize;
    for (idx, d) in (config.d_min..=config.d_max).enumerate() {
        let share = base + usize::from(idx < extra);
        for k in 0..share {
            candidates.push((iteration, grid_tpm(d, k, share)));
            iteration += 1;
        }
    }
    let evaluated: Result<Vec<_>> = candidates
        .into_par_iter()
        .map(|(i, tpm)| evaluate(i, tpm, config.max_nodes))
        .collect();
    for (record, found) in evaluated? {
        if let Some((phi, tpm, state)) = found {
            let improves = best.as_ref().is_none_or(|(b, _, _)| phi > *b);
            if improves {
                best = Some((phi, tpm, state));
            }
        }
        trajectory.push(record);
    }
    let (best_phi, best_tpm, best_state) = match best {
        Some((phi, tpm, state)) => (phi, Some(tpm), Some(state)),
        None => (0.0, None, None),
    };
    Ok(SearchResult { best_phi, best_tpm, best_state, trajectory, prior_history: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn record(dimension: usize, phi: Option<f64>) -> EvalRecord {
        EvalRecord { iteration: 0, dimension, feasible: phi.is_some(), phi, elapsed: 0.0 }
    }

    fn deterministic_view(r: &SearchResult) -> (u64, Vec<(usize, usize, Option<u64>)>, Vec<Vec<u64>>) {
        (
            r.best_phi.to_bits(),
            r.trajectory
                .iter()
                .map(|e| (e.iteration, e.dimension, e.phi.map(f64::to_bits)))
                .collect(),
            r.prior_history
                .iter()
                .map(|p| p.theta.iter().map(|v| v.to_bits()).collect())
                .collect(),
        )
    }

    #[test]
    fn sample_dimension_degenerate_prior() {
        let prior = DimensionPrior { theta: vec![1.0] };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(sample_dimension(&prior, 3, &mut rng), 3);
        }
    }

    #[test]
    fn sample_dimension_frequencies_match_prior() {
        let prior = DimensionPrior { theta: vec![0.2, 0.8] };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 10_000;
        let hits = (0..n).filter(|_| sample_dimension(&prior, 3, &mut rng) == 4).count();
        assert!((hits as f64 / n as f64 - 0.8).abs() < 0.02);
    }

    #[test]
    fn sample_dimension_four_way_frequencies() {
        let prior = DimensionPrior { theta: vec![0.1, 0.1, 0.3, 0.5] };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 10_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            counts[sample_dimension(&prior, 2, &mut rng) - 2] += 1;
        }
        for (i, &expect) in [0.1, 0.1, 0.3, 0.5].iter().enumerate() {
            assert!((counts[i] as f64 / n as f64 - expect).abs() < 0.02, "dim {}", i + 2);
        }
    }

    #[test]
    fn rank_likelihood_single_dimension() {
        let batch = [record(3, Some(1.0)), record(3, Some(0.5))];
        let factors = rank_likelihood(&batch, 3, 4, 0.5);
        assert_abs_diff_eq!(factors[0], 1.0 + 0.2 * 0.5, epsilon = 1e-12);
        assert_eq!(factors[1], 1.0); // unsampled
    }

    #[test]
    fn rank_likelihood_two_dimensions_clear_winner() {
        let batch = [record(3, Some(0.2)), record(4, Some(2.0))];
        let factors = rank_likelihood(&batch, 3, 4, 1.0);
        assert_abs_diff_eq!(factors[0], 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(factors[1], 1.2, epsilon = 1e-12);
    }

    #[test]
    fn rank_likelihood_zero_mu_is_unit() {
        let batch = [record(3, Some(0.2)), record(4, None), record(5, Some(1.0))];
        assert_eq!(rank_likelihood(&batch, 3, 5, 0.0), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn rank_likelihood_infeasible_ranks_below_feasible() {
        let batch = [record(3, None), record(4, Some(0.0))];
        let factors = rank_likelihood(&batch, 3, 4, 1.0);
        assert!(factors[0] < factors[1]);
        assert_abs_diff_eq!(factors[0], 0.8, epsilon = 1e-12);
    }

    #[test]
    fn rank_likelihood_uses_best_of_batch() {
        // dim 3's best (1.5) beats dim 4's best (1.0) even though dim 3
        // also produced the single worst draw
        let batch = [record(3, Some(0.1)), record(3, Some(1.5)), record(4, Some(1.0))];
        let factors = rank_likelihood(&batch, 3, 4, 1.0);
        assert!(factors[0] > factors[1]);
    }

    #[test]
    fn rank_likelihood_floor() {
        let batch = [record(3, None), record(4, Some(1.0))];
        let factors = rank_likelihood(&batch, 3, 4, 100.0);
        assert_eq!(factors[0], 0.01);
    }

    #[test]
    fn update_prior_zero_mu_is_identity() {
        let prior = DimensionPrior { theta: vec![0.3, 0.7] };
        let batch = [record(3, Some(0.2)), record(4, Some(2.0))];
        let updated = update_prior(&prior, 0.0, 0.02, &batch, 3, 4);
        assert_eq!(updated.theta, prior.theta);
    }

    #[test]
    fn update_prior_direct_arithmetic() {
        // factors (1.2, 0.8) applied to (0.5, 0.5) normalize to (0.6, 0.4)
        let prior = DimensionPrior { theta: vec![0.5, 0.5] };
        let batch = [record(3, Some(0.1)), record(4, Some(2.0))];
        let updated = update_prior(&prior, 1.0, 0.0, &batch, 3, 4);
        assert_abs_diff_eq!(updated.theta[0], 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(updated.theta[1], 0.6, epsilon = 1e-12);
    }

    #[test]
    fn update_prior_stays_on_simplex_and_clamped() {
        let mut prior = DimensionPrior { theta: vec![0.5, 0.5] };
        let batch = [record(3, Some(0.1)), record(4, Some(2.0))];
        for _ in 0..200 {
            prior = update_prior(&prior, 5.0, 0.02, &batch, 3, 4);
            let total: f64 = prior.theta.iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            for &p in &prior.theta {
                assert!((0.02 - 1e-12..=0.98 + 1e-12).contains(&p), "entry {p}");
            }
        }
        assert!(prior.theta[1] > prior.theta[0]);
    }

    #[test]
    fn config_validation() {
        let mut c = SearchConfig::new(3, 4, 10);
        c.validate().unwrap();
        c.initial_prior = vec![0.5, 0.6];
        assert!(matches!(c.validate(), Err(PhiError::InvalidConfig(_))));
        let mut c = SearchConfig::new(3, 4, 10);
        c.batch_size = 11;
        assert!(matches!(c.validate(), Err(PhiError::InvalidConfig(_))));
        let c = SearchConfig::new(3, 7, 10);
        assert!(matches!(c.validate(), Err(PhiError::Budget { .. })));
    }

    #[test]
    fn minimal_budget_runs() {
        let mut c = SearchConfig::new(2, 2, 1);
        c.batch_size = 1;
        let r = prior_guided_search(&c).unwrap();
        assert_eq!(r.trajectory.len(), 1);
        if r.trajectory[0].feasible {
            assert_eq!(r.best_phi, r.trajectory[0].phi.unwrap());
        } else {
            assert_eq!(r.best_phi, 0.0);
        }
    }

    #[test]
    fn searches_are_seed_deterministic() {
        let mut c = SearchConfig::new(2, 3, 8);
        c.batch_size = 4;
        c.seed = 99;
        let a = prior_guided_search(&c).unwrap();
        let b = prior_guided_search(&c).unwrap();
        assert_eq!(deterministic_view(&a), deterministic_view(&b));
        let a = random_search(&c).unwrap();
        let b = random_search(&c).unwrap();
        assert_eq!(deterministic_view(&a), deterministic_view(&b));
    }

    #[test]
    fn grid_search_is_deterministic_and_covers_dimensions() {
        let c = SearchConfig::new(2, 3, 6);
        let a = grid_search(&c).unwrap();
        let b = grid_search(&c).unwrap();
        assert_eq!(deterministic_view(&a), deterministic_view(&b));
        let twos = a.trajectory.iter().filter(|e| e.dimension == 2).count();
        let threes = a.trajectory.iter().filter(|e| e.dimension == 3).count();
        assert_eq!((twos, threes), (3, 3));
    }

    #[test]
    fn grid_search_one_eval_per_dimension() {
        let c = SearchConfig::new(2, 3, 2);
        let r = grid_search(&c).unwrap();
        let dims: Vec<usize> = r.trajectory.iter().map(|e| e.dimension).collect();
        assert_eq!(dims, vec![2, 3]);
    }

    #[test]
    fn best_so_far_is_monotone() {
        let mut c = SearchConfig::new(2, 3, 12);
        c.batch_size = 4;
        c.seed = 7;
        for r in [prior_guided_search(&c).unwrap(), random_search(&c).unwrap()] {
            let curve = r.best_so_far();
            for w in curve.windows(2) {
                assert!(w[1] >= w[0]);
            }
            assert_eq!(*curve.last().unwrap(), r.best_phi);
        }
    }

    #[test]
    fn best_phi_matches_trajectory_maximum() {
        let mut c = SearchConfig::new(2, 3, 10);
        c.batch_size = 5;
        c.seed = 21;
        let r = prior_guided_search(&c).unwrap();
        let max = r
            .trajectory
            .iter()
            .filter_map(|e| e.phi)
            .fold(0.0f64, f64::max);
        assert_eq!(r.best_phi, max);
        for e in &r.trajectory {
            assert_eq!(e.feasible, e.phi.is_some());
            if let Some(phi) = e.phi {
                assert!(phi >= 0.0);
            }
        }
    }

    #[test]
    fn prior_history_length_matches_batches() {
        let mut c = SearchConfig::new(2, 3, 10);
        c.batch_size = 3; // batches of 3,3,3,1
        let r = prior_guided_search(&c).unwrap();
        assert_eq!(r.prior_history.len(), 5); // initial + 4 updates
    }

    #[test]
    fn mu_zero_prior_search_keeps_prior_fixed() {
        let mut c = SearchConfig::new(2, 3, 9);
        c.batch_size = 3;
        c.learning_rate = 0.0;
        c.initial_prior = vec![0.25, 0.75];
        let r = prior_guided_search(&c).unwrap();
        for p in &r.prior_history {
            assert_eq!(p.theta, vec![0.25, 0.75]);
        }
    }
}
