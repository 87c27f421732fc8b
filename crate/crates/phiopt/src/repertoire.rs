//! Cause and effect repertoires: the probability distributions a mechanism
//! in a state induces over past or future purview states, under a uniform
//! perturbation prior on unconstrained inputs.

use serde::{Deserialize, Serialize};

use crate::error::{PhiError, Result};
use crate::net::{Network, SystemState};

/// Subset of node indices, encoded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn full(node_count: usize) -> NodeSet {
        NodeSet(((1u64 << node_count) - 1) as u32)
    }

    pub fn from_members(members: &[usize]) -> NodeSet {
        NodeSet(members.iter().fold(0, |acc, &m| acc | (1 << m)))
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, node: usize) -> bool {
        (self.0 >> node) & 1 == 1
    }

    pub fn is_subset_of(&self, other: NodeSet) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn union(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn difference(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn intersection(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    /// Member node indices in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// All subsets in ascending bitmask order (includes the empty set and self).
    pub fn subsets(&self) -> Vec<NodeSet> {
        let mask = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(NodeSet(s));
            if s == mask {
                break;
            }
            s = (s.wrapping_sub(mask)) & mask;
        }
        out
    }
}

/// Which temporal direction a repertoire points in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Cause,
    Effect,
}

/// A probability distribution over the states of a purview, indexed
/// little-endian over the purview members in ascending node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repertoire {
    pub purview: NodeSet,
    pub probabilities: Vec<f64>,
}

impl Repertoire {
    fn new(purview: NodeSet, probabilities: Vec<f64>) -> Repertoire {
        debug_assert_eq!(probabilities.len(), 1 << purview.len());
        Repertoire { purview, probabilities }
    }

    /// The trivial distribution over an empty purview.
    pub fn trivial() -> Repertoire {
        Repertoire { purview: NodeSet::EMPTY, probabilities: vec![1.0] }
    }

    pub fn uniform(purview: NodeSet) -> Repertoire {
        let n = 1usize << purview.len();
        Repertoire { purview, probabilities: vec![1.0 / n as f64; n] }
    }
}

/// Restricts a full-system state index to the given purview,
/// re-packed little-endian over the purview members.
fn project_state(full_index: usize, purview_members: &[usize]) -> usize {
    purview_members
        .iter()
        .enumerate()
        .map(|(t, &node)| ((full_index >> node) & 1) << t)
        .sum()
}

/// Distribution over past purview states constrained by the mechanism in its
/// current state. Bayesian inversion of each mechanism node's input function
/// under a uniform prior over past states, with per-node marginals onto the
/// purview multiplied and renormalized.
pub fn cause_repertoire(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
    purview: NodeSet,
) -> Result<Repertoire> {
    if purview.is_empty() {
        return Ok(Repertoire::trivial());
    }
    if mechanism.is_empty() {
        return Ok(Repertoire::uniform(purview));
    }
    let d = network.node_count();
    let pm = purview.members();
    let mut product = vec![1.0f64; 1 << pm.len()];
    for i in mechanism.members() {
        let on = state.0[i] == 1;
        let mut marginal = vec![0.0f64; 1 << pm.len()];
        for u in 0..1usize << d {
            let p_on = network.tpm().on_probability(u, i);
            let likelihood = if on { p_on } else { 1.0 - p_on };
            marginal[project_state(u, &pm)] += likelihood;
        }
        for (acc, m) in product.iter_mut().zip(&marginal) {
            *acc *= m;
        }
    }
    let total: f64 = product.iter().sum();
    if total == 0.0 {
        return Err(PhiError::UndefinedRepertoire);
    }
    for p in &mut product {
        *p /= total;
    }
    Ok(Repertoire::new(purview, product))
}

/// Distribution over future purview states with the mechanism clamped to its
/// current state and all other inputs perturbed uniformly. Factorizes over
/// purview nodes.
pub fn effect_repertoire(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
    purview: NodeSet,
) -> Repertoire {
    if purview.is_empty() {
        return Repertoire::trivial();
    }
    let d = network.node_count();
    let pm = purview.members();
    let mech_members = mechanism.members();
    // Average each purview column over source states consistent with the mechanism.
    let consistent: Vec<usize> = (0..1usize << d)
        .filter(|&u| {
            mech_members
                .iter()
                .all(|&i| ((u >> i) & 1) as u8 == state.0[i])
        })
        .collect();
    let mut probabilities = vec![1.0f64; 1 << pm.len()];
    for (t, &j) in pm.iter().enumerate() {
        let p_on: f64 = consistent
            .iter()
            .map(|&u| network.tpm().on_probability(u, j))
            .sum::<f64>()
            / consistent.len() as f64;
        for (z, p) in probabilities.iter_mut().enumerate() {
            *p *= if (z >> t) & 1 == 1 { p_on } else { 1.0 - p_on };
        }
    }
    Repertoire::new(purview, probabilities)
}

pub fn repertoire(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
    purview: NodeSet,
    direction: Direction,
) -> Result<Repertoire> {
    match direction {
        Direction::Cause => cause_repertoire(network, state, mechanism, purview),
        Direction::Effect => Ok(effect_repertoire(network, state, mechanism, purview)),
    }
}

/// The repertoire constrained by nothing (empty mechanism).
pub fn unconstrained_repertoire(
    network: &Network,
    state: &SystemState,
    purview: NodeSet,
    direction: Direction,
) -> Repertoire {
    match direction {
        Direction::Cause => Repertoire::uniform(purview),
        Direction::Effect => effect_repertoire(network, state, NodeSet::EMPTY, purview),
    }
}

/// Tensor-combines two repertoires over disjoint purviews onto their union.
pub fn combine(a: &Repertoire, b: &Repertoire) -> Repertoire {
    debug_assert!(a.purview.intersection(b.purview).is_empty());
    let target = a.purview.union(b.purview);
    let tm = target.members();
    let am = a.purview.members();
    let bm = b.purview.members();
    let mut probabilities = vec![0.0f64; 1 << tm.len()];
    for (z, p) in probabilities.iter_mut().enumerate() {
        // unpack z (little-endian over target) into each factor's own indexing
        let mut za = 0usize;
        let mut zb = 0usize;
        for (t, &node) in tm.iter().enumerate() {
            let bit = (z >> t) & 1;
            if let Some(pos) = am.iter().position(|&n| n == node) {
                za |= bit << pos;
            } else {
                let pos = bm.iter().position(|&n| n == node).unwrap();
                zb |= bit << pos;
            }
        }
        *p = a.probabilities[za] * b.probabilities[zb];
    }
    Repertoire::new(target, probabilities)
}

/// Expands a repertoire onto a larger purview by multiplying with the
/// matching unconstrained repertoire over the missing nodes.
pub fn expand_repertoire(
    rep: &Repertoire,
    target: NodeSet,
    network: &Network,
    state: &SystemState,
    direction: Direction,
) -> Repertoire {
    assert!(rep.purview.is_subset_of(target));
    let missing = target.difference(rep.purview);
    if missing.is_empty() {
        return rep.clone();
    }
    let free = unconstrained_repertoire(network, state, missing, direction);
    combine(rep, &free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{sample_tpm, SamplingMode, Tpm};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn copy2() -> Network {
        Network::new(
            Tpm::validate(vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn empty_mechanism_cause_is_uniform() {
        let net = copy2();
        let rep = cause_repertoire(
            &net,
            &SystemState(vec![1, 0]),
            NodeSet::EMPTY,
            NodeSet::from_members(&[0, 1]),
        )
        .unwrap();
        assert_eq!(rep.probabilities, vec![0.25; 4]);
    }

    #[test]
    fn copy_network_cause_is_point_mass() {
        // node 0 is ON now, and node 0 copies node 1, so node 1 was ON.
        let net = copy2();
        let rep = cause_repertoire(
            &net,
            &SystemState(vec![1, 0]),
            NodeSet::from_members(&[0]),
            NodeSet::from_members(&[1]),
        )
        .unwrap();
        assert_eq!(rep.probabilities, vec![0.0, 1.0]);
    }

    #[test]
    fn copy_network_effect_is_point_mass() {
        // node 1 is OFF now, and node 0 copies node 1, so node 0 will be OFF.
        let net = copy2();
        let rep = effect_repertoire(
            &net,
            &SystemState(vec![1, 0]),
            NodeSet::from_members(&[1]),
            NodeSet::from_members(&[0]),
        );
        assert_eq!(rep.probabilities, vec![1.0, 0.0]);
    }

    #[test]
    fn constant_column_effect_is_point_mass_on() {
        let net = Network::new(Tpm::validate(vec![vec![1.0, 0.5]; 4]).unwrap());
        let rep = effect_repertoire(
            &net,
            &SystemState(vec![0, 0]),
            NodeSet::EMPTY,
            NodeSet::from_members(&[0]),
        );
        assert_eq!(rep.probabilities, vec![0.0, 1.0]);
    }

    /// Direct joint-space inversion: enumerate all past states, weight by the
    /// product of per-mechanism-node likelihoods, marginalize, normalize.
    /// Valid as an oracle whenever the purview covers every node.
    fn brute_force_cause_full_purview(
        net: &Network,
        state: &SystemState,
        mechanism: NodeSet,
    ) -> Vec<f64> {
        let d = net.node_count();
        let mut joint = vec![1.0f64; 1 << d];
        for (u, j) in joint.iter_mut().enumerate() {
            for i in mechanism.members() {
                let p_on = net.tpm().on_probability(u, i);
                *j *= if state.0[i] == 1 { p_on } else { 1.0 - p_on };
            }
        }
        let total: f64 = joint.iter().sum();
        joint.iter().map(|v| v / total).collect()
    }

    #[test]
    fn cause_matches_joint_inversion_on_full_purview() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mechanism = NodeSet::from_members(&[0, 1]);
        let purview = NodeSet::full(3);
        let mut checked = 0;
        while checked < 20 {
            let net = Network::new(sample_tpm(3, SamplingMode::Binary, &mut rng));
            let report = crate::net::first_feasible_state(&net);
            let state = report.first_feasible_state.unwrap();
            let Ok(rep) = cause_repertoire(&net, &state, mechanism, purview) else {
                continue;
            };
            let expect = brute_force_cause_full_purview(&net, &state, mechanism);
            for (a, b) in rep.probabilities.iter().zip(&expect) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
            checked += 1;
        }
    }

    /// Exhaustive marginalization over perturbed non-mechanism inputs.
    fn brute_force_effect(
        net: &Network,
        state: &SystemState,
        mechanism: NodeSet,
        purview: NodeSet,
    ) -> Vec<f64> {
        let d = net.node_count();
        let pm = purview.members();
        let mut out = vec![0.0f64; 1 << pm.len()];
        let sources: Vec<usize> = (0..1usize << d)
            .filter(|&u| {
                mechanism
                    .members()
                    .iter()
                    .all(|&i| ((u >> i) & 1) as u8 == state.0[i])
            })
            .collect();
        for (z, o) in out.iter_mut().enumerate() {
            // factorized: each purview node's next state is independent
            let mut p = 1.0;
            for (t, &j) in pm.iter().enumerate() {
                let mean: f64 = sources
                    .iter()
                    .map(|&u| net.tpm().on_probability(u, j))
                    .sum::<f64>()
                    / sources.len() as f64;
                p *= if (z >> t) & 1 == 1 { mean } else { 1.0 - mean };
            }
            *o = p;
        }
        out
    }

    #[test]
    fn effect_matches_brute_force_marginalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let net = Network::new(sample_tpm(3, SamplingMode::Binary, &mut rng));
            let state = SystemState(vec![0, 1, 0]);
            let rep = effect_repertoire(
                &net,
                &state,
                NodeSet::from_members(&[2]),
                NodeSet::from_members(&[0, 1]),
            );
            let expect = brute_force_effect(
                &net,
                &state,
                NodeSet::from_members(&[2]),
                NodeSet::from_members(&[0, 1]),
            );
            for (a, b) in rep.probabilities.iter().zip(&expect) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn effect_factorizes_over_disjoint_purviews() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let net = Network::new(sample_tpm(3, SamplingMode::Probabilistic, &mut rng));
            let state = SystemState(vec![1, 1, 0]);
            let mech = NodeSet::from_members(&[1]);
            let a = effect_repertoire(&net, &state, mech, NodeSet::from_members(&[0]));
            let b = effect_repertoire(&net, &state, mech, NodeSet::from_members(&[2]));
            let joint = effect_repertoire(&net, &state, mech, NodeSet::from_members(&[0, 2]));
            let product = combine(&a, &b);
            for (x, y) in joint.probabilities.iter().zip(&product.probabilities) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn repertoires_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let net = Network::new(sample_tpm(3, SamplingMode::Probabilistic, &mut rng));
            let state = SystemState(vec![0, 0, 1]);
            for mech_mask in 0u32..8 {
                for purv_mask in 1u32..8 {
                    let mech = NodeSet(mech_mask);
                    let purv = NodeSet(purv_mask);
                    if let Ok(rep) = cause_repertoire(&net, &state, mech, purv) {
                        let sum: f64 = rep.probabilities.iter().sum();
                        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-9);
                        assert!(rep.probabilities.iter().all(|&p| p >= 0.0));
                    }
                    let rep = effect_repertoire(&net, &state, mech, purv);
                    let sum: f64 = rep.probabilities.iter().sum();
                    assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn undefined_cause_repertoire_is_an_error() {
        // Node 0 is never ON next step, so mechanism {0} in state ON has no past.
        let net = Network::new(Tpm::validate(vec![vec![0.0, 0.5]; 4]).unwrap());
        let r = cause_repertoire(
            &net,
            &SystemState(vec![1, 0]),
            NodeSet::from_members(&[0]),
            NodeSet::from_members(&[1]),
        );
        assert!(matches!(r, Err(PhiError::UndefinedRepertoire)));
    }

    #[test]
    fn expand_to_own_purview_is_identity() {
        let net = copy2();
        let state = SystemState(vec![1, 0]);
        let rep = cause_repertoire(&net, &state, NodeSet::from_members(&[0]), NodeSet::from_members(&[1]))
            .unwrap();
        let expanded = expand_repertoire(&rep, rep.purview, &net, &state, Direction::Cause);
        assert_eq!(expanded, rep);
    }

    #[test]
    fn expand_point_mass_with_uniform_factor() {
        let net = copy2();
        let state = SystemState(vec![1, 0]);
        // point mass ON over node 0, expanded to {0,1} in the cause direction
        let rep = Repertoire {
            purview: NodeSet::from_members(&[0]),
            probabilities: vec![0.0, 1.0],
        };
        let expanded =
            expand_repertoire(&rep, NodeSet::from_members(&[0, 1]), &net, &state, Direction::Cause);
        assert_eq!(expanded.probabilities, vec![0.0, 0.5, 0.0, 0.5]);
    }

    #[test]
    fn expand_matches_direct_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let net = Network::new(sample_tpm(3, SamplingMode::Binary, &mut rng));
            let state = crate::net::first_feasible_state(&net)
                .first_feasible_state
                .unwrap();
            let purv = NodeSet::from_members(&[1]);
            let target = NodeSet::from_members(&[0, 1, 2]);
            for direction in [Direction::Cause, Direction::Effect] {
                let Ok(rep) = repertoire(&net, &state, NodeSet::from_members(&[0]), purv, direction)
                else {
                    continue;
                };
                let expanded = expand_repertoire(&rep, target, &net, &state, direction);
                let free = unconstrained_repertoire(
                    &net,
                    &state,
                    target.difference(purv),
                    direction,
                );
                let direct = combine(&rep, &free);
                for (a, b) in expanded.probabilities.iter().zip(&direct.probabilities) {
                    assert_abs_diff_eq!(a, b, epsilon = 1e-12);
                }
            }
        }
    }
}
