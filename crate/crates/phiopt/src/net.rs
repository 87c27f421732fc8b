//! Binary networks: transition probability matrices, derived connectivity,
//! state reachability, and TPM sampling/enumeration for the search methods.
//!
//! States are indexed little-endian: node 0 is the least significant bit of
//! the row index. The TPM is state-by-node: row `r`, column `j` holds the
//! probability that node `j` is ON at the next step given the system is in
//! the state with index `r` now.

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PhiError, Result};

/// Ordered vector of binary node values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemState(pub Vec<u8>);

impl SystemState {
    pub fn from_index(index: usize, node_count: usize) -> Self {
        SystemState((0..node_count).map(|k| ((index >> k) & 1) as u8).collect())
    }

    /// Little-endian row index of this state.
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| (b as usize) << k)
            .sum()
    }

    pub fn node_count(&self) -> usize {
        self.0.len()
    }
}

pub fn state_index(state: &SystemState) -> usize {
    state.index()
}

/// How random TPM entries are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SamplingMode {
    /// Each entry is a fair coin flip in {0, 1}.
    Binary,
    /// Each entry is uniform on [0, 1].
    Probabilistic,
}

/// State-by-node transition probability matrix: 2^D rows, D columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tpm {
    rows: Vec<Vec<f64>>,
    node_count: usize,
}

impl Tpm {
    /// Validates a raw matrix: 2^D x D shape for some D >= 1 and entries in [0, 1].
    pub fn validate(matrix: Vec<Vec<f64>>) -> Result<Tpm> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        if cols == 0 || rows != (1usize << cols) {
            return Err(PhiError::InvalidShape { rows, cols });
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(PhiError::InvalidShape { rows, cols: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) || v.is_nan() {
                    return Err(PhiError::OutOfRange { row: r, col: c, value: v });
                }
            }
        }
        Ok(Tpm { rows: matrix, node_count: cols })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// P(node `node` is ON next | current state has row index `row`).
    pub fn on_probability(&self, row: usize, node: usize) -> f64 {
        self.rows[row][node]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Applies a node relabeling: node i of the result behaves like node perm[i].
    pub fn permute(&self, perm: &[usize]) -> Tpm {
        let d = self.node_count;
        assert_eq!(perm.len(), d);
        let mut rows = vec![vec![0.0; d]; 1 << d];
        for (new_row, row) in rows.iter_mut().enumerate() {
            let mut old_row = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                if (new_row >> i) & 1 == 1 {
                    old_row |= 1 << p;
                }
            }
            for (i, cell) in row.iter_mut().enumerate() {
                *cell = self.rows[old_row][perm[i]];
            }
        }
        Tpm { rows, node_count: d }
    }
}

/// D x D binary adjacency: entry (i, j) = 1 iff node j's next state depends on node i.
pub type ConnectivityMatrix = Vec<Vec<u8>>;

/// Dependency scan: (i, j) = 1 iff two source states differing only at node i
/// give different probabilities in column j.
pub fn derive_cm(tpm: &Tpm) -> ConnectivityMatrix {
    let d = tpm.node_count();
    let mut cm = vec![vec![0u8; d]; d];
    for i in 0..d {
        for u in 0..tpm.row_count() {
            let v = u ^ (1 << i);
            if v < u {
                continue;
            }
            for j in 0..d {
                if tpm.on_probability(u, j) != tpm.on_probability(v, j) {
                    cm[i][j] = 1;
                }
            }
        }
    }
    cm
}

/// A TPM together with its derived connectivity matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    tpm: Tpm,
    cm: ConnectivityMatrix,
}

impl Network {
    pub fn new(tpm: Tpm) -> Network {
        let cm = derive_cm(&tpm);
        Network { tpm, cm }
    }

    pub fn tpm(&self) -> &Tpm {
        &self.tpm
    }

    pub fn cm(&self) -> &ConnectivityMatrix {
        &self.cm
    }

    pub fn node_count(&self) -> usize {
        self.tpm.node_count()
    }

    /// Probability of landing exactly in `state` from source row `from`.
    fn transition_probability(&self, from: usize, state_index: usize) -> f64 {
        let mut p = 1.0;
        for j in 0..self.node_count() {
            let on = self.tpm.on_probability(from, j);
            p *= if (state_index >> j) & 1 == 1 { on } else { 1.0 - on };
        }
        p
    }

    /// True iff some source state transitions into `state_index` with positive probability.
    pub fn state_reachable(&self, state_index: usize) -> bool {
        (0..self.tpm.row_count()).any(|u| self.transition_probability(u, state_index) > 0.0)
    }
}

/// Outcome of the exhaustive initial-state scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub first_feasible_state: Option<SystemState>,
    pub states_tried: usize,
}

/// All states with strictly positive unconstrained cause probability.
pub fn reachable_states(network: &Network) -> Vec<SystemState> {
    let d = network.node_count();
    (0..1usize << d)
        .filter(|&s| network.state_reachable(s))
        .map(|s| SystemState::from_index(s, d))
        .collect()
}

/// Scans states in ascending index order for the first one at which the
/// integrated-information computation is well defined.
pub fn first_feasible_state(network: &Network) -> FeasibilityReport {
    let d = network.node_count();
    for s in 0..1usize << d {
        if network.state_reachable(s) {
            return FeasibilityReport {
                feasible: true,
                first_feasible_state: Some(SystemState::from_index(s, d)),
                states_tried: s + 1,
            };
        }
    }
    FeasibilityReport {
        feasible: false,
        first_feasible_state: None,
        states_tried: 1 << d,
    }
}

/// Draws a TPM with every entry sampled independently.
pub fn sample_tpm<R: Rng + ?Sized>(node_count: usize, mode: SamplingMode, rng: &mut R) -> Tpm {
    assert!(node_count >= 1);
    let rows = (0..1usize << node_count)
        .map(|_| {
            (0..node_count)
                .map(|_| match mode {
                    SamplingMode::Binary => {
                        if rng.random::<bool>() {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    SamplingMode::Probabilistic => rng.random::<f64>(),
                })
                .collect()
        })
        .collect();
    Tpm { rows, node_count }
}

/// The k-th of T evenly spaced integers in [0, 2^(2^D * D)), unpacked
/// row-major into a binary matrix (bit 0 = row 0 / column 0).
pub fn grid_tpm(node_count: usize, position: usize, grid_size: usize) -> Tpm {
    assert!(node_count >= 1);
    assert!(position < grid_size);
    let nbits = (1usize << node_count) * node_count;
    let max = (BigUint::from(1u8) << nbits) - 1u8;
    let value = if grid_size == 1 {
        BigUint::from(0u8)
    } else {
        // round(position * max / (grid_size - 1))
        let num = BigUint::from(position) * &max * 2u8 + BigUint::from(grid_size - 1);
        num / (2 * (grid_size - 1))
    };
    let bytes = value.to_bytes_le();
    let bit = |b: usize| -> f64 {
        let byte = bytes.get(b / 8).copied().unwrap_or(0);
        ((byte >> (b % 8)) & 1) as f64
    };
    let rows = (0..1usize << node_count)
        .map(|r| (0..node_count).map(|c| bit(r * node_count + c)).collect())
        .collect();
    Tpm { rows, node_count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tpm(rows: Vec<Vec<f64>>) -> Tpm {
        Tpm::validate(rows).unwrap()
    }

    /// Each node copies the other: (a, b) -> (b, a).
    pub fn copy2() -> Tpm {
        tpm(vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ])
    }

    #[test]
    fn state_index_is_little_endian() {
        assert_eq!(SystemState(vec![0, 0, 0]).index(), 0);
        assert_eq!(SystemState(vec![1, 0, 0]).index(), 1);
        assert_eq!(SystemState(vec![0, 1, 1]).index(), 6);
    }

    #[test]
    fn state_index_roundtrip() {
        for idx in 0..32 {
            assert_eq!(SystemState::from_index(idx, 5).index(), idx);
        }
    }

    #[test]
    fn validate_accepts_well_formed() {
        let m = vec![vec![0.0, 1.0, 0.5]; 8];
        assert_eq!(Tpm::validate(m).unwrap().node_count(), 3);
    }

    #[test]
    fn validate_rejects_bad_shape() {
        let m = vec![vec![0.0, 1.0, 0.0]; 7];
        assert!(matches!(Tpm::validate(m), Err(PhiError::InvalidShape { .. })));
        assert!(matches!(Tpm::validate(vec![]), Err(PhiError::InvalidShape { .. })));
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let m = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.2],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        assert!(matches!(Tpm::validate(m), Err(PhiError::OutOfRange { .. })));
    }

    #[test]
    fn derive_cm_constant_tpm_is_zero() {
        let t = tpm(vec![vec![0.3, 0.7]; 4]);
        assert_eq!(derive_cm(&t), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn derive_cm_copy_network_is_offdiagonal() {
        assert_eq!(derive_cm(&copy2()), vec![vec![0, 1], vec![1, 0]]);
    }

    /// Exhaustive dependency scan over all state pairs, written directly
    /// from the definition.
    fn brute_force_cm(t: &Tpm) -> ConnectivityMatrix {
        let d = t.node_count();
        let mut cm = vec![vec![0u8; d]; d];
        for i in 0..d {
            for j in 0..d {
                for u in 0..t.row_count() {
                    for v in 0..t.row_count() {
                        if u ^ v == 1 << i && t.on_probability(u, j) != t.on_probability(v, j) {
                            cm[i][j] = 1;
                        }
                    }
                }
            }
        }
        cm
    }

    #[test]
    fn derive_cm_matches_brute_force_on_random_tpms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = sample_tpm(3, SamplingMode::Binary, &mut rng);
            assert_eq!(derive_cm(&t), brute_force_cm(&t));
        }
    }

    #[test]
    fn derive_cm_is_permutation_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let perm = [2usize, 0, 1];
        for _ in 0..20 {
            let t = sample_tpm(3, SamplingMode::Binary, &mut rng);
            let cm = derive_cm(&t);
            let cm_p = derive_cm(&t.permute(&perm));
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(cm_p[i][j], cm[perm[i]][perm[j]]);
                }
            }
        }
    }

    #[test]
    fn reachable_states_identity_tpm() {
        let ident = tpm(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ]);
        assert_eq!(reachable_states(&Network::new(ident)).len(), 4);
    }

    #[test]
    fn reachable_states_constant_tpm() {
        let net = Network::new(tpm(vec![vec![1.0, 1.0]; 4]));
        assert_eq!(reachable_states(&net), vec![SystemState(vec![1, 1])]);
    }

    #[test]
    fn reachable_states_match_row_image_on_deterministic_tpms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let t = sample_tpm(3, SamplingMode::Binary, &mut rng);
            let net = Network::new(t.clone());
            let mut image: Vec<usize> = (0..t.row_count())
                .map(|u| {
                    (0..3)
                        .map(|j| (t.on_probability(u, j) as usize) << j)
                        .sum()
                })
                .collect();
            image.sort_unstable();
            image.dedup();
            let got: Vec<usize> = reachable_states(&net).iter().map(|s| s.index()).collect();
            assert_eq!(got, image);
        }
    }

    #[test]
    fn first_feasible_state_examples() {
        let ident = tpm(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ]);
        let rep = first_feasible_state(&Network::new(ident));
        assert_eq!(rep.first_feasible_state, Some(SystemState(vec![0, 0])));
        assert_eq!(rep.states_tried, 1);

        let constant = Network::new(tpm(vec![vec![1.0, 1.0]; 4]));
        let rep = first_feasible_state(&constant);
        assert_eq!(rep.first_feasible_state, Some(SystemState(vec![1, 1])));
        assert_eq!(rep.states_tried, 4);
    }

    #[test]
    fn first_feasible_state_matches_per_state_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let net = Network::new(sample_tpm(3, SamplingMode::Binary, &mut rng));
            let rep = first_feasible_state(&net);
            let expect = (0..8).find(|&s| net.state_reachable(s));
            assert_eq!(rep.first_feasible_state.map(|s| s.index()), expect);
        }
    }

    #[test]
    fn sample_tpm_is_seed_deterministic() {
        let a = sample_tpm(2, SamplingMode::Binary, &mut ChaCha8Rng::seed_from_u64(42));
        let b = sample_tpm(2, SamplingMode::Binary, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn sample_tpm_entry_frequency_is_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut on = vec![0usize; 8 * 3];
        let n = 10_000;
        for _ in 0..n {
            let t = sample_tpm(3, SamplingMode::Binary, &mut rng);
            for r in 0..8 {
                for c in 0..3 {
                    if t.on_probability(r, c) == 1.0 {
                        on[r * 3 + c] += 1;
                    }
                }
            }
        }
        for &count in &on {
            let freq = count as f64 / n as f64;
            assert!((freq - 0.5).abs() < 0.02, "entry frequency {freq}");
        }
    }

    #[test]
    fn sample_tpm_single_node_covers_all_four_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut counts = [0usize; 4];
        let n = 10_000;
        for _ in 0..n {
            let t = sample_tpm(1, SamplingMode::Binary, &mut rng);
            let key = (t.on_probability(0, 0) as usize) | ((t.on_probability(1, 0) as usize) << 1);
            counts[key] += 1;
        }
        for &c in &counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.25).abs() < 0.02, "matrix frequency {freq}");
        }
    }

    #[test]
    fn grid_tpm_endpoints() {
        let zero = grid_tpm(2, 0, 10);
        assert!(zero.rows().iter().flatten().all(|&v| v == 0.0));
        let top = grid_tpm(2, 9, 10);
        assert!(top.rows().iter().flatten().all(|&v| v == 1.0));
    }

    #[test]
    fn grid_tpm_single_node_enumerates_linearly() {
        // D=1: 4 possible matrices = integers 0..3; T=4 hits each one.
        let expected = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
        for (k, &(a, b)) in expected.iter().enumerate() {
            let t = grid_tpm(1, k, 4);
            assert_eq!((t.on_probability(0, 0), t.on_probability(1, 0)), (a, b));
        }
    }
}
