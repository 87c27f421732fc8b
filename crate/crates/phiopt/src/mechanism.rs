//! Mechanism-level analysis: minimum-information partitions over
//! mechanism/purview bipartitions, core causes and effects, and concepts.

use serde::{Deserialize, Serialize};

use crate::emd::emd;
use crate::error::{PhiError, Result};
use crate::net::{Network, SystemState};
use crate::repertoire::{combine, repertoire, Direction, NodeSet, Repertoire};

/// Small-phi values below this are treated as zero.
pub const PHI_EPS: f64 = 1e-10;

/// An ordered bipartition of a mechanism and purview into two cells.
/// Each part pairs a mechanism cell with the purview cell it constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MechanismPartition {
    pub part1: (NodeSet, NodeSet),
    pub part2: (NodeSet, NodeSet),
}

/// A maximally irreducible cause or effect for one mechanism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mice {
    pub direction: Direction,
    pub purview: NodeSet,
    pub repertoire: Repertoire,
    pub phi: f64,
    pub mip: Option<MechanismPartition>,
}

/// A mechanism together with its core cause and core effect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concept {
    pub mechanism: NodeSet,
    pub cause: Mice,
    pub effect: Mice,
    pub phi: f64,
}

/// All ordered bipartitions ((M1,P1),(M2,P2)) with M1 ⊎ M2 = mechanism and
/// P1 ⊎ P2 = purview, excluding the uncut identity and the wholly-empty
/// part pairing. Ascending-bitmask enumeration: M1-major, P1-minor.
pub fn enumerate_partitions(mechanism: NodeSet, purview: NodeSet) -> Vec<MechanismPartition> {
    let mut out = Vec::new();
    for m1 in mechanism.subsets() {
        for p1 in purview.subsets() {
            if m1 == mechanism && p1 == purview {
                continue; // nothing cut
            }
            if m1.is_empty() && p1.is_empty() {
                continue; // wholly-empty part
            }
            out.push(MechanismPartition {
                part1: (m1, p1),
                part2: (mechanism.difference(m1), purview.difference(p1)),
            });
        }
    }
    out
}

/// Product of the part-wise repertoires, recombined over the full purview.
pub fn partitioned_repertoire(
    network: &Network,
    state: &SystemState,
    partition: &MechanismPartition,
    direction: Direction,
) -> Result<Repertoire> {
    let (m1, p1) = partition.part1;
    let (m2, p2) = partition.part2;
    let r1 = repertoire(network, state, m1, p1, direction)?;
    let r2 = repertoire(network, state, m2, p2, direction)?;
    Ok(combine(&r1, &r2))
}

/// Minimum-information partition: the bipartition minimizing the EMD to the
/// unpartitioned repertoire, with ties broken by enumeration order.
/// Returns (partition, phi, unpartitioned repertoire).
pub fn find_mip(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
    purview: NodeSet,
    direction: Direction,
) -> Result<(MechanismPartition, f64, Repertoire)> {
    let full = repertoire(network, state, mechanism, purview, direction)?;
    let mut best: Option<(MechanismPartition, f64)> = None;
    for partition in enumerate_partitions(mechanism, purview) {
        let part_rep = partitioned_repertoire(network, state, &partition, direction)?;
        let d = emd(&full, &part_rep)?;
        match best {
            Some((_, b)) if d >= b - PHI_EPS => {}
            _ => best = Some((partition, d)),
        }
        if let Some((_, b)) = best {
            if b <= PHI_EPS {
                break; // fully reducible, nothing smaller exists
            }
        }
    }
    let (partition, mut phi) = best.ok_or(PhiError::UndefinedRepertoire)?;
    if phi <= PHI_EPS {
        phi = 0.0;
    }
    Ok((partition, phi, full))
}

/// Purview candidates: subsets of the nodes connected to the mechanism in
/// the relevant direction. Unconnected purview nodes provably contribute
/// unconstrained factors and cannot increase phi.
pub fn candidate_purviews(network: &Network, mechanism: NodeSet, direction: Direction) -> Vec<NodeSet> {
    let d = network.node_count();
    let cm = network.cm();
    let members = mechanism.members();
    let connected: Vec<usize> = (0..d)
        .filter(|&p| {
            members.iter().any(|&m| match direction {
                Direction::Cause => cm[p][m] == 1,
                Direction::Effect => cm[m][p] == 1,
            })
        })
        .collect();
    NodeSet::from_members(&connected)
        .subsets()
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect()
}

/// The purview maximizing small phi for this mechanism and direction.
/// Ties go to the larger purview, then to the first in ascending-bitmask
/// order. A mechanism with no candidate purviews gets phi = 0.
pub fn core_mice(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
    direction: Direction,
) -> Result<Mice> {
    let mut best: Option<(f64, NodeSet, MechanismPartition, Repertoire)> = None;
    for purview in candidate_purviews(network, mechanism, direction) {
        let (mip, phi, full) = find_mip(network, state, mechanism, purview, direction)?;
        let better = match &best {
            None => true,
            Some((b_phi, b_purv, _, _)) => {
                phi > b_phi + PHI_EPS
                    || ((phi - b_phi).abs() <= PHI_EPS && purview.len() > b_purv.len())
            }
        };
        if better {
            best = Some((phi, purview, mip, full));
        }
    }
    Ok(match best {
        Some((phi, purview, mip, rep)) => Mice {
            direction,
            purview,
            repertoire: rep,
            phi,
            mip: Some(mip),
        },
        None => Mice {
            direction,
            purview: NodeSet::EMPTY,
            repertoire: Repertoire::trivial(),
            phi: 0.0,
            mip: None,
        },
    })
}

/// Computes both core repertoires; the mechanism forms a concept iff both
/// are irreducible. An undefined cause repertoire yields no concept.
pub fn build_concept(
    network: &Network,
    state: &SystemState,
    mechanism: NodeSet,
) -> Result<Option<Concept>> {
    let cause = match core_mice(network, state, mechanism, Direction::Cause) {
        Ok(m) => m,
        Err(PhiError::UndefinedRepertoire) => return Ok(None),
        Err(e) => return Err(e),
    };
    let effect = core_mice(network, state, mechanism, Direction::Effect)?;
    let phi = cause.phi.min(effect.phi);
    if phi <= PHI_EPS {
        return Ok(None);
    }
    Ok(Some(Concept { mechanism, cause, effect, phi }))
}
