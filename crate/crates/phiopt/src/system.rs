//! System-level analysis: constellations of concepts, unidirectional
//! system cuts, the constellation-level transport distance, and big Phi.

use serde::{Deserialize, Serialize};

use crate::emd::{emd_flat, transport};
use crate::error::{PhiError, Result};
use crate::mechanism::{build_concept, Concept, PHI_EPS};
use crate::net::{first_feasible_state, Network, SystemState, Tpm};
use crate::repertoire::{
    expand_repertoire, unconstrained_repertoire, Direction, NodeSet, Repertoire,
};

/// Default upper bound on node count for whole-system evaluation; beyond
/// this the computation is rejected with a budget error.
pub const DEFAULT_MAX_NODES: usize = 6;

/// The set of concepts a network specifies in a state, together with the
/// unconstrained repertoires over the full node set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constellation {
    pub concepts: Vec<Concept>,
    pub null_cause: Repertoire,
    pub null_effect: Repertoire,
}

impl Constellation {
    pub fn total_phi(&self) -> f64 {
        self.concepts.iter().map(|c| c.phi).sum()
    }

    fn node_count(&self) -> usize {
        self.null_cause.purview.len()
    }
}

/// A unidirectional cut: connections from `severed_from` into `severed_to`
/// are replaced by uniform noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemCut {
    pub severed_from: NodeSet,
    pub severed_to: NodeSet,
}

/// Full outcome of a big-Phi evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiResult {
    pub big_phi: f64,
    pub state: SystemState,
    pub mip_cut: Option<SystemCut>,
    pub constellation: Constellation,
    pub partitioned_constellation: Option<Constellation>,
}

/// Builds concepts for every nonempty mechanism and collects the
/// irreducible ones.
pub fn build_constellation(network: &Network, state: &SystemState) -> Result<Constellation> {
    let d = network.node_count();
    if state.node_count() != d {
        return Err(PhiError::StateMismatch { got: state.node_count(), expected: d });
    }
    let full = NodeSet::full(d);
    let mut concepts = Vec::new();
    for mask in 1..(1u32 << d) {
        if let Some(c) = build_concept(network, state, NodeSet(mask))? {
            concepts.push(c);
        }
    }
    Ok(Constellation {
        concepts,
        null_cause: unconstrained_repertoire(network, state, full, Direction::Cause),
        null_effect: unconstrained_repertoire(network, state, full, Direction::Effect),
    })
}

/// All ordered bipartitions of the node set: 2^D - 2 cuts in ascending
/// bitmask order of the severed-from side. Single-node systems have none.
pub fn enumerate_cuts(node_count: usize) -> Vec<SystemCut> {
    if node_count < 2 {
        return Vec::new();
    }
    let full = NodeSet::full(node_count);
    (1..(1u32 << node_count) - 1)
        .map(|mask| SystemCut {
            severed_from: NodeSet(mask),
            severed_to: full.difference(NodeSet(mask)),
        })
        .collect()
}

/// Applies a cut: every severed-to node's next-state probability is
/// averaged uniformly over the values of the severed-from nodes. The
/// connectivity matrix is re-derived.
pub fn apply_cut(network: &Network, cut: &SystemCut) -> Network {
    let d = network.node_count();
    let severed_from = cut.severed_from.members();
    let mut rows: Vec<Vec<f64>> = network.tpm().rows().to_vec();
    for j in cut.severed_to.members() {
        let mut column = vec![0.0f64; 1 << d];
        for (u, cell) in column.iter_mut().enumerate() {
            let mut acc = 0.0;
            for assignment in 0..1usize << severed_from.len() {
                let mut v = u;
                for (t, &node) in severed_from.iter().enumerate() {
                    if (assignment >> t) & 1 == 1 {
                        v |= 1 << node;
                    } else {
                        v &= !(1 << node);
                    }
                }
                acc += network.tpm().on_probability(v, j);
            }
            *cell = acc / (1 << severed_from.len()) as f64;
        }
        for (u, row) in rows.iter_mut().enumerate() {
            row[j] = column[u];
        }
    }
    Network::new(Tpm::validate(rows).expect("cut preserves shape and range"))
}

struct ExpandedConcept {
    phi: f64,
    cause: Vec<f64>,
    effect: Vec<f64>,
}

fn expand_constellation(
    constellation: &Constellation,
    network: &Network,
    state: &SystemState,
) -> Vec<ExpandedConcept> {
    let full = NodeSet::full(network.node_count());
    constellation
        .concepts
        .iter()
        .map(|c| ExpandedConcept {
            phi: c.phi,
            cause: expand_repertoire(&c.cause.repertoire, full, network, state, Direction::Cause)
                .probabilities,
            effect: expand_repertoire(&c.effect.repertoire, full, network, state, Direction::Effect)
                .probabilities,
        })
        .collect()
}

fn null_expanded(constellation: &Constellation) -> ExpandedConcept {
    ExpandedConcept {
        phi: 0.0,
        cause: constellation.null_cause.probabilities.clone(),
        effect: constellation.null_effect.probabilities.clone(),
    }
}

fn concept_ground_distance(a: &ExpandedConcept, b: &ExpandedConcept) -> f64 {
    emd_flat(&a.cause, &b.cause) + emd_flat(&a.effect, &b.effect)
}

/// Extended transport distance between two constellations over the same
/// node set. Concepts supply and demand mass equal to their small phi; a
/// null concept on each side absorbs the surplus. The ground distance
/// between concepts sums the cause- and effect-side EMDs of repertoires
/// expanded to the full node set.
pub fn constellation_distance_over(
    c1: &Constellation,
    net1: &Network,
    state1: &SystemState,
    c2: &Constellation,
    net2: &Network,
    state2: &SystemState,
) -> Result<f64> {
    if c1.node_count() != c2.node_count() {
        return Err(PhiError::NodeSetMismatch { a: c1.node_count(), b: c2.node_count() });
    }
    let supply_total = c1.total_phi();
    let demand_total = c2.total_phi();
    if supply_total == 0.0 && demand_total == 0.0 {
        return Ok(0.0);
    }
    let mut sources = expand_constellation(c1, net1, state1);
    let mut sinks = expand_constellation(c2, net2, state2);
    let mut supply: Vec<f64> = sources.iter().map(|c| c.phi).collect();
    let mut demand: Vec<f64> = sinks.iter().map(|c| c.phi).collect();
    sources.push(null_expanded(c1));
    sinks.push(null_expanded(c2));
    supply.push((demand_total - supply_total).max(0.0));
    demand.push((supply_total - demand_total).max(0.0));
    let cost: Vec<Vec<f64>> = sources
        .iter()
        .map(|a| sinks.iter().map(|b| concept_ground_distance(a, b)).collect())
        .collect();
    Ok(transport(&supply, &demand, &cost))
}

/// Convenience wrapper for two constellations of the same network/state.
pub fn constellation_distance(
    c1: &Constellation,
    c2: &Constellation,
    network: &Network,
    state: &SystemState,
) -> Result<f64> {
    constellation_distance_over(c1, network, state, c2, network, state)
}

/// Big Phi with a caller-chosen node guardrail.
pub fn big_phi_with_limit(
    network: &Network,
    state: &SystemState,
    max_nodes: usize,
) -> Result<PhiResult> {
    let d = network.node_count();
    if d > max_nodes {
        return Err(PhiError::Budget { nodes: d, limit: max_nodes });
    }
    if !network.state_reachable(state.index()) {
        return Err(PhiError::InfeasibleState);
    }
    let constellation = build_constellation(network, state)?;
    if d < 2 || constellation.concepts.is_empty() {
        return Ok(PhiResult {
            big_phi: 0.0,
            state: state.clone(),
            mip_cut: None,
            constellation,
            partitioned_constellation: None,
        });
    }
    let mut best: Option<(f64, SystemCut, Constellation)> = None;
    for cut in enumerate_cuts(d) {
        let cut_net = apply_cut(network, &cut);
        let cut_constellation = build_constellation(&cut_net, state)?;
        let dist = constellation_distance_over(
            &constellation,
            network,
            state,
            &cut_constellation,
            &cut_net,
            state,
        )?;
        let replace = match &best {
            None => true,
            Some((b, _, _)) => dist < b - 1e-12,
        };
        if replace {
            let zero = dist <= PHI_EPS;
            best = Some((if zero { 0.0 } else { dist }, cut, cut_constellation));
            if zero {
                break;
            }
        }
    }
    let (big_phi, cut, partitioned) = best.expect("at least one cut exists for D >= 2");
    Ok(PhiResult {
        big_phi,
        state: state.clone(),
        mip_cut: Some(cut),
        constellation,
        partitioned_constellation: Some(partitioned),
    })
}

/// Big Phi of a network in a state: the minimum over unidirectional cuts
/// of the constellation distance between the intact and cut structures.
pub fn big_phi(network: &Network, state: &SystemState) -> Result<PhiResult> {
    big_phi_with_limit(network, state, DEFAULT_MAX_NODES)
}

/// End-to-end evaluation used by the search methods: find the first
/// feasible state and evaluate big Phi there. `None` when no state is
/// feasible.
pub fn phi_of_tpm(tpm: &Tpm) -> Result<Option<PhiResult>> {
    phi_of_tpm_with_limit(tpm, DEFAULT_MAX_NODES)
}

pub fn phi_of_tpm_with_limit(tpm: &Tpm, max_nodes: usize) -> Result<Option<PhiResult>> {
    if tpm.node_count() > max_nodes {
        return Err(PhiError::Budget { nodes: tpm.node_count(), limit: max_nodes });
    }
    let network = Network::new(tpm.clone());
    let report = first_feasible_state(&network);
    let Some(state) = report.first_feasible_state else {
        return Ok(None);
    };
    big_phi_with_limit(&network, &state, max_nodes).map(Some)
}
