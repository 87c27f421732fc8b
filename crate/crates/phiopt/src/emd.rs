//! Exact Earth Mover's Distance via a minimum-cost-flow transportation
//! solve. The ground metric between purview states is the Hamming distance.

use crate::error::{PhiError, Result};
use crate::repertoire::Repertoire;

const MASS_EPS: f64 = 1e-15;

#[derive(Clone)]
struct Arc {
    to: usize,
    cap: f64,
    cost: f64,
    rev: usize,
}

struct FlowGraph {
    adj: Vec<Vec<Arc>>,
}

impl FlowGraph {
    fn new(nodes: usize) -> FlowGraph {
        FlowGraph { adj: vec![Vec::new(); nodes] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: f64, cost: f64) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc { to, cap, cost, rev: rev_from });
        self.adj[to].push(Arc { to: from, cap: 0.0, cost: -cost, rev: rev_to });
    }

    /// Successive shortest paths with Johnson potentials: Dijkstra runs on
    /// reduced costs, which are nonnegative up to rounding noise and are
    /// clamped at zero, so the search terminates regardless of
    /// floating-point error in the real-valued arc costs.
    fn min_cost_flow(&mut self, source: usize, sink: usize, mut amount: f64) -> f64 {
        let n = self.adj.len();
        let mut potential = vec![0.0f64; n];
        let mut total = 0.0;
        while amount > MASS_EPS {
            let mut dist = vec![f64::INFINITY; n];
            let mut prev: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
            let mut done = vec![false; n];
            dist[source] = 0.0;
            loop {
                let mut u = usize::MAX;
                let mut best = f64::INFINITY;
                for v in 0..n {
                    if !done[v] && dist[v] < best {
                        best = dist[v];
                        u = v;
                    }
                }
                if u == usize::MAX {
                    break;
                }
                done[u] = true;
                for (k, arc) in self.adj[u].iter().enumerate() {
                    if arc.cap > MASS_EPS && !done[arc.to] {
                        let reduced = (arc.cost + potential[u] - potential[arc.to]).max(0.0);
                        if dist[u] + reduced < dist[arc.to] {
                            dist[arc.to] = dist[u] + reduced;
                            prev[arc.to] = (u, k);
                        }
                    }
                }
            }
            if !dist[sink].is_finite() {
                break;
            }
            for v in 0..n {
                potential[v] += dist[v].min(dist[sink]);
            }
            // bottleneck along the path
            let mut push = amount;
            let mut v = sink;
            while v != source {
                let (u, k) = prev[v];
                push = push.min(self.adj[u][k].cap);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let (u, k) = prev[v];
                self.adj[u][k].cap -= push;
                let rev = self.adj[u][k].rev;
                let to = v;
                self.adj[to][rev].cap += push;
                total += push * self.adj[u][k].cost;
                v = u;
            }
            amount -= push;
        }
        total
    }
}

/// Exact minimum transport cost moving `supply` onto `demand` under the
/// given dense cost matrix. Both sides must carry equal total mass;
/// zero-mass cells participate with zero supply/demand.
pub fn transport(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let src: Vec<usize> = (0..supply.len()).filter(|&i| supply[i] > MASS_EPS).collect();
    let dst: Vec<usize> = (0..demand.len()).filter(|&j| demand[j] > MASS_EPS).collect();
    let n = src.len();
    let m = dst.len();
    if n == 0 || m == 0 {
        return 0.0;
    }
    let source = n + m;
    let sink = n + m + 1;
    let mut g = FlowGraph::new(n + m + 2);
    let mut push_total = 0.0;
    for (a, &i) in src.iter().enumerate() {
        g.add_arc(source, a, supply[i], 0.0);
        push_total += supply[i];
    }
    for (b, &j) in dst.iter().enumerate() {
        g.add_arc(n + b, sink, demand[j], 0.0);
    }
    for (a, &i) in src.iter().enumerate() {
        for (b, &j) in dst.iter().enumerate() {
            g.add_arc(a, n + b, f64::INFINITY, cost[i][j]);
        }
    }
    g.min_cost_flow(source, sink, push_total).max(0.0)
}

/// Hamming distance between two little-endian purview state indices.
pub fn hamming(a: usize, b: usize) -> u32 {
    (a ^ b).count_ones()
}

fn hamming_cost(size: usize) -> Vec<Vec<f64>> {
    (0..size)
        .map(|a| (0..size).map(|b| hamming(a, b) as f64).collect())
        .collect()
}

/// EMD between two distributions over the same purview, with the Hamming
/// distance between purview states as the ground metric.
pub fn emd(p: &Repertoire, q: &Repertoire) -> Result<f64> {
    if p.purview != q.purview {
        return Err(PhiError::PurviewMismatch);
    }
    Ok(emd_flat(&p.probabilities, &q.probabilities))
}

/// EMD over raw state distributions of equal power-of-two length.
pub fn emd_flat(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    if p.iter().zip(q).all(|(a, b)| (a - b).abs() < 1e-14) {
        return 0.0;
    }
    if p.len() == 2 {
        // single binary node: all surplus moves distance 1
        return (p[1] - q[1]).abs();
    }
    transport(p, q, &hamming_cost(p.len()))
}
