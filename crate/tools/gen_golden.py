#!/usr/bin/env python3
"""Golden-corpus generator.

Computes integrated information (big Phi) for a corpus of small binary
networks with an independent NumPy/SciPy implementation. All optimal
transport problems are solved with scipy's HiGHS linear-programming
backend. Results are frozen into JSON consumed by the Rust test suite.

Conventions (shared contract with the Rust implementation):
  - states are indexed little-endian (node 0 = least significant bit)
  - TPM is state-by-node: 2^D rows, D columns, row r col j = P(node j ON
    at t+1 | system state r at t)
  - cause repertoires: product of per-mechanism-node Bayesian inversions
    marginalized onto the purview, renormalized
  - mechanism partitions: ordered bipartitions ((M1,P1),(M2,P2)),
    excluding the identity and the wholly-empty part
  - MICE ties: larger purview wins, then first in ascending-bitmask order
  - system cuts: unidirectional, severed inputs averaged uniformly
  - constellation distance: exact transport over concepts weighted by
    small phi, with a null-concept sink/source absorbing surplus mass;
    ground distance = cause EMD + effect EMD of repertoires expanded to
    the full node set
"""

import itertools
import json
import sys
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

EPS = 1e-10


# ---------------------------------------------------------------------------
# EMD via linear programming (exact transportation problem)
# ---------------------------------------------------------------------------

def emd_lp(p, q, cost):
    """Exact minimum-cost transport from p to q under the given cost matrix."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    si = np.nonzero(p > 0)[0]
    dj = np.nonzero(q > 0)[0]
    n, m = len(si), len(dj)
    c = cost[np.ix_(si, dj)].ravel()
    a_eq = np.zeros((n + m, n * m))
    for i in range(n):
        a_eq[i, i * m:(i + 1) * m] = 1.0
    for j in range(m):
        a_eq[n + j, j::m] = 1.0
    b_eq = np.concatenate([p[si], q[dj]])
    res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert res.success, res.message
    return float(res.fun)


@lru_cache(maxsize=None)
def hamming_matrix(nbits):
    size = 1 << nbits
    m = np.zeros((size, size))
    for a in range(size):
        for b in range(size):
            m[a, b] = bin(a ^ b).count("1")
    return m


_emd_cache = {}


def emd_hamming(p, q, nbits):
    if np.allclose(p, q, atol=1e-14):
        return 0.0  # zero-diagonal ground metric
    key = (nbits, tuple(np.round(p, 12)), tuple(np.round(q, 12)))
    if key not in _emd_cache:
        _emd_cache[key] = emd_lp(p, q, hamming_matrix(nbits))
    return _emd_cache[key]


# ---------------------------------------------------------------------------
# Network model
# ---------------------------------------------------------------------------

def bits_of(index, n):
    return [(index >> k) & 1 for k in range(n)]


def submasks_ascending(mask):
    out = []
    for s in range(mask + 1):
        if (s & mask) == s:
            out.append(s)
    return out


class Network:
    def __init__(self, tpm):
        self.tpm = np.asarray(tpm, dtype=float)
        self.n = int(round(np.log2(self.tpm.shape[0])))
        assert self.tpm.shape == (1 << self.n, self.n)
        self.cm = self._derive_cm()

    def _derive_cm(self):
        n = self.n
        cm = np.zeros((n, n), dtype=int)
        for i in range(n):
            for u in range(1 << n):
                v = u ^ (1 << i)
                if u > v:
                    continue
                for j in range(n):
                    if self.tpm[u, j] != self.tpm[v, j]:
                        cm[i, j] = 1
        return cm

    def reachable(self, state_idx):
        z = bits_of(state_idx, self.n)
        for u in range(1 << self.n):
            prob = 1.0
            for j in range(self.n):
                pj = self.tpm[u, j]
                prob *= pj if z[j] else 1.0 - pj
            if prob > 0:
                return True
        return False

    def first_feasible_state(self):
        for s in range(1 << self.n):
            if self.reachable(s):
                return s
        return None


# ---------------------------------------------------------------------------
# Repertoires
# ---------------------------------------------------------------------------

def members(mask, n):
    return [i for i in range(n) if (mask >> i) & 1]


def marginalize(joint, full_members, keep_members):
    """Sum a distribution over states of full_members down to keep_members."""
    keep_pos = [full_members.index(m) for m in keep_members]
    out = np.zeros(1 << len(keep_members))
    for z in range(len(joint)):
        zk = 0
        for t, pos in enumerate(keep_pos):
            if (z >> pos) & 1:
                zk |= 1 << t
        out[zk] += joint[z]
    return out


def cause_repertoire(net, state_idx, mech, purview):
    n = net.n
    pm = members(purview, n)
    if purview == 0:
        return np.array([1.0])
    if mech == 0:
        return np.full(1 << len(pm), 1.0 / (1 << len(pm)))
    sbits = bits_of(state_idx, n)
    prod = np.ones(1 << len(pm))
    for i in members(mech, n):
        w = np.array([net.tpm[u, i] if sbits[i] else 1.0 - net.tpm[u, i]
                      for u in range(1 << n)])
        v = marginalize(w, list(range(n)), pm)
        prod *= v
    total = prod.sum()
    if total == 0.0:
        return None
    return prod / total


def effect_repertoire(net, state_idx, mech, purview):
    n = net.n
    pm = members(purview, n)
    if purview == 0:
        return np.array([1.0])
    sbits = bits_of(state_idx, n)
    mech_members = members(mech, n)
    consistent = [u for u in range(1 << n)
                  if all(((u >> i) & 1) == sbits[i] for i in mech_members)]
    rep = np.ones(1 << len(pm))
    for t, j in enumerate(pm):
        p_on = float(np.mean([net.tpm[u, j] for u in consistent]))
        for z in range(1 << len(pm)):
            rep[z] *= p_on if (z >> t) & 1 else 1.0 - p_on
    return rep


def repertoire(net, state_idx, mech, purview, direction):
    if direction == "cause":
        return cause_repertoire(net, state_idx, mech, purview)
    return effect_repertoire(net, state_idx, mech, purview)


def combine_parts(rep1, p1, rep2, p2, n):
    """Tensor-combine two cell repertoires onto the union purview."""
    purview = p1 | p2
    pm = members(purview, n)
    m1 = members(p1, n)
    m2 = members(p2, n)
    out = np.zeros(1 << len(pm))
    for z in range(1 << len(pm)):
        z1 = 0
        for t, node in enumerate(m1):
            if (z >> pm.index(node)) & 1:
                z1 |= 1 << t
        z2 = 0
        for t, node in enumerate(m2):
            if (z >> pm.index(node)) & 1:
                z2 |= 1 << t
        out[z] = rep1[z1] * rep2[z2]
    return out


# ---------------------------------------------------------------------------
# Mechanism analysis
# ---------------------------------------------------------------------------

def enumerate_partitions(mech, purview):
    parts = []
    for m1 in submasks_ascending(mech):
        for p1 in submasks_ascending(purview):
            if m1 == mech and p1 == purview:
                continue
            if m1 == 0 and p1 == 0:
                continue
            parts.append((m1, p1, mech & ~m1, purview & ~p1))
    return parts


def partitioned_repertoire(net, state_idx, part, direction):
    m1, p1, m2, p2 = part
    r1 = repertoire(net, state_idx, m1, p1, direction)
    r2 = repertoire(net, state_idx, m2, p2, direction)
    if r1 is None or r2 is None:
        return None
    return combine_parts(r1, p1, r2, p2, net.n)


def find_mip(net, state_idx, mech, purview, direction):
    full = repertoire(net, state_idx, mech, purview, direction)
    if full is None:
        return None
    nbits = bin(purview).count("1")
    best = None
    best_part = None
    for part in enumerate_partitions(mech, purview):
        pr = partitioned_repertoire(net, state_idx, part, direction)
        if pr is None:
            continue
        d = emd_hamming(full, pr, nbits)
        if best is None or d < best - EPS:
            best = d
            best_part = part
        if best <= EPS:
            best = 0.0
            break
    if best is None:
        return None
    return best, best_part, full


def candidate_purviews(net, mech, direction):
    n = net.n
    mm = members(mech, n)
    if direction == "cause":
        connected = [p for p in range(n) if any(net.cm[p, m] for m in mm)]
    else:
        connected = [p for p in range(n) if any(net.cm[m, p] for m in mm)]
    cmask = sum(1 << p for p in connected)
    return [p for p in submasks_ascending(cmask) if p != 0]


def core_mice(net, state_idx, mech, direction):
    best = None  # (phi, purview, repertoire)
    for purview in candidate_purviews(net, mech, direction):
        r = find_mip(net, state_idx, mech, purview, direction)
        if r is None:
            if direction == "cause":
                return None  # mechanism state impossible
            continue
        phi, _part, full = r
        if best is None or phi > best[0] + EPS or (
                abs(phi - best[0]) <= EPS
                and bin(purview).count("1") > bin(best[1]).count("1")):
            best = (phi, purview, full)
    if best is None:
        return (0.0, 0, np.array([1.0]))
    return best


def build_concept(net, state_idx, mech):
    cause = core_mice(net, state_idx, mech, "cause")
    if cause is None:
        return None
    effect = core_mice(net, state_idx, mech, "effect")
    phi = min(cause[0], effect[0])
    if phi <= EPS:
        return None
    return {"mechanism": mech, "phi": phi, "cause": cause, "effect": effect}


# ---------------------------------------------------------------------------
# System analysis
# ---------------------------------------------------------------------------

def expand(net, state_idx, rep, purview, direction):
    """Expand a purview repertoire to the full node set via unconstrained factors."""
    n = net.n
    rest = ((1 << n) - 1) & ~purview
    free = repertoire(net, state_idx, 0, rest, direction)
    return combine_parts(rep, purview, free, rest, n)


def build_constellation(net, state_idx):
    concepts = []
    for mech in range(1, 1 << net.n):
        c = build_concept(net, state_idx, mech)
        if c is not None:
            concepts.append(c)
    return concepts


def apply_cut(net, severed_from):
    n = net.n
    severed_to = ((1 << n) - 1) & ~severed_from
    sf = members(severed_from, n)
    new_tpm = net.tpm.copy()
    for j in members(severed_to, n):
        col = np.zeros(1 << n)
        for u in range(1 << n):
            acc = 0.0
            cnt = 0
            for assign in range(1 << len(sf)):
                v = u
                for t, node in enumerate(sf):
                    if (assign >> t) & 1:
                        v |= 1 << node
                    else:
                        v &= ~(1 << node)
                acc += net.tpm[v, j]
                cnt += 1
            col[u] = acc / cnt
        new_tpm[:, j] = col
    return Network(new_tpm)


def concept_ground_distance(net1, s1, c1, net2, s2, c2):
    n = net1.n
    ce1 = expand(net1, s1, c1["cause"][2], c1["cause"][1], "cause")
    ce2 = expand(net2, s2, c2["cause"][2], c2["cause"][1], "cause")
    ee1 = expand(net1, s1, c1["effect"][2], c1["effect"][1], "effect")
    ee2 = expand(net2, s2, c2["effect"][2], c2["effect"][1], "effect")
    return emd_hamming(ce1, ce2, n) + emd_hamming(ee1, ee2, n)


def null_concept(net, state_idx):
    full = (1 << net.n) - 1
    return {
        "mechanism": 0,
        "phi": 0.0,
        "cause": (0.0, full, cause_repertoire(net, state_idx, 0, full)),
        "effect": (0.0, full, effect_repertoire(net, state_idx, 0, full)),
    }


def constellation_distance(net1, s1, con1, net2, s2, con2):
    sup = [c["phi"] for c in con1]
    dem = [c["phi"] for c in con2]
    s_tot, t_tot = sum(sup), sum(dem)
    if s_tot == 0.0 and t_tot == 0.0:
        return 0.0
    sources = list(con1) + [null_concept(net1, s1)]
    sinks = list(con2) + [null_concept(net2, s2)]
    sup.append(max(0.0, t_tot - s_tot))
    dem.append(max(0.0, s_tot - t_tot))
    cost = np.zeros((len(sources), len(sinks)))
    for i, a in enumerate(sources):
        for j, b in enumerate(sinks):
            cost[i, j] = concept_ground_distance(net1, s1, a, net2, s2, b)
    return emd_lp(np.array(sup), np.array(dem), cost)


def big_phi(net, state_idx):
    if net.n == 1:
        return 0.0, None
    constellation = build_constellation(net, state_idx)
    if not constellation:
        return 0.0, None
    best = None
    best_cut = None
    for severed_from in range(1, (1 << net.n) - 1):
        cut_net = apply_cut(net, severed_from)
        cut_con = build_constellation(cut_net, state_idx)
        d = constellation_distance(net, state_idx, constellation,
                                   cut_net, state_idx, cut_con)
        if best is None or d < best - 1e-12:
            best = d
            best_cut = severed_from
        if best <= EPS:
            best = 0.0
            break
    return best, best_cut


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------

def evaluate(tpm):
    net = Network(tpm)
    state = net.first_feasible_state()
    entry = {
        "nodes": net.n,
        "tpm": [[float(x) for x in row] for row in net.tpm],
        "cm": net.cm.tolist(),
        "first_feasible_state": state,
    }
    if state is None:
        entry["big_phi"] = None
        return entry
    constellation = build_constellation(net, state)
    phi, cut = big_phi(net, state)
    entry["big_phi"] = phi
    entry["mip_cut_severed_from"] = cut
    entry["concepts"] = [
        {
            "mechanism": c["mechanism"],
            "phi": c["phi"],
            "cause_phi": c["cause"][0],
            "cause_purview": c["cause"][1],
            "effect_phi": c["effect"][0],
            "effect_purview": c["effect"][1],
        }
        for c in constellation
    ]
    return entry


def main():
    rng = np.random.default_rng(20260825)
    corpus = []

    # hand-picked networks
    copy2 = [[0, 0], [0, 1], [1, 0], [1, 1]]  # each node copies the other
    corpus.append(("copy2", copy2))
    const2 = [[1, 1]] * 4
    corpus.append(("const2", const2))
    # the classic 3-node example: A = OR(B,C), B = AND(A,C), C = XOR(A,B)
    majority3 = []
    for u in range(8):
        a, b, c = bits_of(u, 3)
        majority3.append([int(b or c), int(a and c), int(a != b)])
    corpus.append(("or_and_xor3", majority3))
    ident3 = [[float((u >> j) & 1) for j in range(3)] for u in range(8)]
    corpus.append(("identity3", ident3))

    for k in range(20):
        tpm = rng.integers(0, 2, size=(8, 3)).astype(float).tolist()
        corpus.append((f"rand3_{k:02d}", tpm))
    for k in range(10):
        tpm = rng.integers(0, 2, size=(16, 4)).astype(float).tolist()
        corpus.append((f"rand4_{k:02d}", tpm))

    out = []
    for name, tpm in corpus:
        entry = evaluate(tpm)
        entry["name"] = name
        out.append(entry)
        print(f"{name}: nodes={entry['nodes']} state={entry['first_feasible_state']} "
              f"big_phi={entry['big_phi']}", flush=True)

    path = sys.argv[1] if len(sys.argv) > 1 else "golden_corpus.json"
    with open(path, "w") as f:
        json.dump(out, f, indent=1)
    print(f"wrote {path} ({len(out)} networks)")


if __name__ == "__main__":
    main()
