#!/usr/bin/env python3
"""Golden pairs for the EMD solver: exact LP transportation values.

Emits 1000 random distribution pairs over 1..4 binary nodes together
with the optimal transport cost under the Hamming ground metric, solved
with scipy's HiGHS LP backend. Frozen into tests/golden/emd_pairs.json.
"""

import json
import sys

import numpy as np
from scipy.optimize import linprog


def hamming_matrix(nbits):
    n = 1 << nbits
    return np.array(
        [[bin(i ^ j).count("1") for j in range(n)] for i in range(n)], dtype=float
    )


def emd_lp(p, q, cost):
    n = len(p)
    # variables x[i, j] >= 0; minimize sum c_ij x_ij
    # subject to row sums = p_i and column sums = q_j
    a_eq = []
    b_eq = []
    for i in range(n):
        row = np.zeros(n * n)
        row[i * n : (i + 1) * n] = 1.0
        a_eq.append(row)
        b_eq.append(p[i])
    for j in range(n):
        col = np.zeros(n * n)
        col[j::n] = 1.0
        a_eq.append(col)
        b_eq.append(q[j])
    res = linprog(cost.ravel(), A_eq=np.array(a_eq), b_eq=np.array(b_eq),
                  bounds=(0, None), method="highs")
    assert res.status == 0, res.message
    return float(res.fun)


def random_distribution(rng, n):
    kind = rng.integers(0, 3)
    if kind == 0:
        w = rng.random(n)
    elif kind == 1:
        # sparse support
        w = rng.random(n) * (rng.random(n) < 0.4)
        if w.sum() == 0:
            w[rng.integers(0, n)] = 1.0
    else:
        # point mass
        w = np.zeros(n)
        w[rng.integers(0, n)] = 1.0
    return w / w.sum()


def main(out_path):
    rng = np.random.default_rng(20260825)
    pairs = []
    for k in range(1000):
        nbits = int(rng.integers(1, 5))
        n = 1 << nbits
        p = random_distribution(rng, n)
        q = random_distribution(rng, n)
        value = emd_lp(p, q, hamming_matrix(nbits))
        pairs.append({
            "nbits": nbits,
            "p": [round(float(v), 17) for v in p],
            "q": [round(float(v), 17) for v in q],
            "emd": value,
        })
    with open(out_path, "w") as fh:
        json.dump(pairs, fh)
    print(f"wrote {len(pairs)} pairs to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1])
