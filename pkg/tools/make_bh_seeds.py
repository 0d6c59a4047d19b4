#!/usr/bin/env python3
"""Generate the bundled Butson seed files.

bh6_3.json comes from exact backtracking over dephased balanced rows.
bh21_3.json is found by annealing a group-developed form over the
nonabelian order-21 group (Z_7 semidirect Z_3): H[i,j] = f(g_i g_j^-1)
with f a 21-trit map. The cyclic (circulant) form appears not to exist;
the anneal over the Frobenius group lands on an exact solution within
seconds. Both outputs are run through the exact Butson verifier before
they land on disk.

Usage: python3 tools/make_bh_seeds.py [--budget SECONDS] [--seed INT]
"""

import argparse
import itertools
import json
import os
import time

import numpy as np

from drcs_forge.hadamard import PhaseMatrix, verify_bh

SEED_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "drcs_forge", "data", "seeds")


def write_seed(name, exps, r):
    N = len(exps)
    B = PhaseMatrix(N, r, exps, {"builder": "seed-search", "name": name})
    if not verify_bh(B):
        raise SystemExit("refusing to write %s: verification failed" % name)
    path = os.path.join(SEED_DIR, name + ".json")
    obj = {"N": N, "r": r, "exps": [list(map(int, row)) for row in exps]}
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1)
        fh.write("\n")
    print("wrote %s (N=%d, r=%d)" % (path, N, r))


def search_bh6_3():
    """Dephased BH(6,3) by backtracking: rows start with 0, hold each
    residue exactly twice, and every pair differs residue-uniformly."""
    cands = [
        (0,) + c
        for c in itertools.product((0, 1, 2), repeat=5)
        if all(((0,) + c).count(v) == 2 for v in (0, 1, 2))
    ]

    def uniform(r1, r2):
        d = [(a - b) % 3 for a, b in zip(r1, r2)]
        return all(d.count(v) == 2 for v in (0, 1, 2))

    def extend(rows, start):
        if len(rows) == 6:
            return rows
        for i in range(start, len(cands)):
            c = cands[i]
            if all(uniform(c, r) for r in rows[1:]):
                res = extend(rows + [c], i + 1)
                if res:
                    return res
        return None

    rows = extend([(0,) * 6], 0)
    if rows is None:
        raise SystemExit("no dephased BH(6,3) found (should not happen)")
    return [list(r) for r in rows]


# the order-21 Frobenius group: (a1,b1)(a2,b2) = (a1 + 2^b1 a2, b1 + b2)
F21_ELS = [(a, b) for b in range(3) for a in range(7)]
F21_IDX = {g: i for i, g in enumerate(F21_ELS)}
_PW = (1, 2, 4)
_PW_INV = (1, 4, 2)


def _f21_mul(g, h):
    return ((g[0] + _PW[g[1]] * h[0]) % 7, (g[1] + h[1]) % 3)


def _f21_inv(g):
    return ((-_PW_INV[g[1]] * g[0]) % 7, (-g[1]) % 3)


def search_bh21_3(budget, rng):
    """Anneal f: F21 -> Z_3 so that all row-pair difference sums vanish.

    Energy is sum over g != 1 of |sum_h w^(f(gh) - f(h))|^2, computed
    from the Cayley index table in one vectorized gather; zero energy
    is the group-developed Butson condition.
    """
    n = 21
    cayley = np.zeros((n, n), dtype=np.int64)
    for i, g in enumerate(F21_ELS):
        for j, h in enumerate(F21_ELS):
            cayley[i, j] = F21_IDX[_f21_mul(g, h)]
    w = np.exp(2j * np.pi * np.arange(3) / 3)
    e_id = F21_IDX[(0, 0)]

    def energy(f):
        sums = w[(f[cayley] - f[None, :]) % 3].sum(axis=1)
        sums[e_id] = 0
        return float(np.sum(np.abs(sums) ** 2))

    deadline = time.monotonic() + budget
    while time.monotonic() < deadline:
        f = rng.integers(0, 3, size=n)
        f[e_id] = 0
        e = energy(f)
        temp = 60.0
        while temp > 1e-3:
            pos = int(rng.integers(1, n))
            old = f[pos]
            f[pos] = (old + int(rng.integers(1, 3))) % 3
            e2 = energy(f)
            if e2 <= e or rng.random() < np.exp((e - e2) / temp):
                e = e2
                if e < 1e-6:
                    exps = np.zeros((n, n), dtype=np.int64)
                    for i, g in enumerate(F21_ELS):
                        for j, h in enumerate(F21_ELS):
                            exps[i, j] = f[F21_IDX[_f21_mul(g, _f21_inv(h))]]
                    return exps
            else:
                f[pos] = old
            temp *= 0.999
    return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=float, default=120.0,
                    help="seconds to spend on the order-21 search")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    os.makedirs(SEED_DIR, exist_ok=True)
    write_seed("bh6_3", search_bh6_3(), 3)

    rng = np.random.default_rng(args.seed)
    exps = search_bh21_3(args.budget, rng)
    if exps is not None:
        write_seed("bh21_3", exps.tolist(), 3)
    else:
        print("no BH(21,3) found within budget; "
              "supply a seed file to enable the conditional checks")


if __name__ == "__main__":
    main()
