"""Exact aperiodic ambiguity-function evaluation on integer lattices.

Sequences are integer exponent arrays over the r-th roots of unity; the
Doppler root is always the L-th root for length-L sequences, so every
term of the ambiguity sum is a root of unity of order lcm(r, L). Values
are accumulated from a precomputed root table in double precision
(numpy's pairwise summation), which keeps results within a few ulp of
exact.

Grids cover the open zone (-Z_x, Z_x) x (-Z_y, Z_y) on its integer
lattice. Two evaluation paths exist: a literal per-cell sum and a
per-shift FFT over the lag-product sequence; they are cross-checked in
tests and by the CLI --paranoid mode.
"""

import concurrent.futures
import functools
import math
import os

import numpy as np

from .errors import LengthMismatchError, ParamsOutOfRangeError, ShapeMismatchError
from .drcs import Zone


@functools.lru_cache(maxsize=64)
def _roots(order):
    w = np.exp(2j * np.pi * np.arange(order) / order)
    w.setflags(write=False)
    return w


def _thread_count():
    raw = os.environ.get("DRCS_FORGE_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise ParamsOutOfRangeError("DRCS_FORGE_THREADS must be an integer, got %r" % raw)
    return max(1, k)


def af_pair(a, b, r, tau, nu):
    """Ambiguity value of two exponent sequences at integer (tau, nu).

    Zero for |tau| >= L; nu is taken mod L (the Doppler phase ring).
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatchError(
            "sequences differ in length: %s vs %s" % (a.shape, b.shape)
        )
    L = a.shape[0]
    if abs(tau) >= L:
        return 0j
    nu = int(nu) % L
    R = math.lcm(int(r), L)
    if tau >= 0:
        ai, bi = a[: L - tau], b[tau:]
        t = np.arange(0, L - tau, dtype=np.int64)
    else:
        ai, bi = a[-tau:], b[: L + tau]
        t = np.arange(-tau, L, dtype=np.int64)
    e = ((R // r) * (ai - bi) + (R // L) * nu * t) % R
    return complex(_roots(R)[e].sum())


def af_flock(C1, C2, tau, nu, r):
    """Flock-level ambiguity: the sum of the M per-sequence values.

    C1 and C2 are (M, L) exponent arrays sharing r.
    """
    C1 = np.asarray(C1, dtype=np.int64)
    C2 = np.asarray(C2, dtype=np.int64)
    if C1.shape != C2.shape or C1.ndim != 2:
        raise ShapeMismatchError("flocks differ in shape: %s vs %s" % (C1.shape, C2.shape))
    L = C1.shape[1]
    if abs(tau) >= L:
        return 0j
    nu = int(nu) % L
    R = math.lcm(int(r), L)
    if tau >= 0:
        ai, bi = C1[:, : L - tau], C2[:, tau:]
        t = np.arange(0, L - tau, dtype=np.int64)
    else:
        ai, bi = C1[:, -tau:], C2[:, : L + tau]
        t = np.arange(-tau, L, dtype=np.int64)
    e = ((R // r) * (ai - bi) + (R // L) * nu * t[None, :]) % R
    return complex(_roots(R)[e].sum())


class AfGrid:
    """Ambiguity values over the zone lattice, indexed by (tau, nu)."""

    def __init__(self, values, zone, L, kind="cross", pair=None):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (2 * zone.Z_x - 1, 2 * zone.Z_y - 1):
            raise ShapeMismatchError(
                "grid shape %s does not match zone %r" % (values.shape, zone)
            )
        self.values = values
        self.zone = zone
        self.L = int(L)
        self.kind = kind
        self.pair = tuple(pair) if pair is not None else None

    def value(self, tau, nu):
        return complex(self.values[tau + self.zone.Z_x - 1, nu + self.zone.Z_y - 1])

    def magnitude(self):
        return np.abs(self.values)


def _grid_naive(C1, C2, zone, r):
    values = np.zeros((2 * zone.Z_x - 1, 2 * zone.Z_y - 1), dtype=np.complex128)
    for tau in range(-zone.Z_x + 1, zone.Z_x):
        for nu in range(-zone.Z_y + 1, zone.Z_y):
            values[tau + zone.Z_x - 1, nu + zone.Z_y - 1] = af_flock(C1, C2, tau, nu, r)
    return values


def _grid_fft(C1, C2, zone, r):
    """Per fixed tau, the nu line is the length-L inverse DFT of the
    lag-product sequence g(t) = sum_m C1[m,t] * conj(C2[m,t+tau]),
    scaled by L; nu bins are sampled mod L."""
    M, L = C1.shape
    w = _roots(r)
    nus = np.arange(-zone.Z_y + 1, zone.Z_y) % L
    values = np.zeros((2 * zone.Z_x - 1, 2 * zone.Z_y - 1), dtype=np.complex128)

    def one_tau(tau):
        if abs(tau) >= L:
            return None
        g = np.zeros(L, dtype=np.complex128)
        if tau >= 0:
            diffs = (C1[:, : L - tau] - C2[:, tau:]) % r
            g[: L - tau] = w[diffs].sum(axis=0)
        else:
            diffs = (C1[:, -tau:] - C2[:, : L + tau]) % r
            g[-tau:] = w[diffs].sum(axis=0)
        return (L * np.fft.ifft(g))[nus]

    taus = list(range(-zone.Z_x + 1, zone.Z_x))
    workers = _thread_count()
    if workers == 1:
        rows = map(one_tau, taus)
        for tau, row in zip(taus, rows):
            if row is not None:
                values[tau + zone.Z_x - 1] = row
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            for tau, row in zip(taus, pool.map(one_tau, taus)):
                if row is not None:
                    values[tau + zone.Z_x - 1] = row
    return values


def af_grid(C1, C2, zone, r, method="naive", kind="cross", pair=None):
    """Evaluate the full lattice; method is "naive" or "fft"."""
    C1 = np.asarray(C1, dtype=np.int64)
    C2 = np.asarray(C2, dtype=np.int64)
    if C1.shape != C2.shape or C1.ndim != 2:
        raise ShapeMismatchError("flocks differ in shape: %s vs %s" % (C1.shape, C2.shape))
    if method == "naive":
        values = _grid_naive(C1, C2, zone, r)
    elif method == "fft":
        values = _grid_fft(C1, C2, zone, r)
    else:
        raise ParamsOutOfRangeError("method must be naive or fft, got %r" % method)
    return AfGrid(values, zone, C1.shape[1], kind=kind, pair=pair)


FFT_LENGTH_CUTOFF = 128


def _scan_grid(grid, skip_origin):
    """Max magnitude and its first witness in (tau, nu) lex order."""
    mags = grid.magnitude().copy()
    if skip_origin:
        mags[grid.zone.Z_x - 1, grid.zone.Z_y - 1] = -1.0
    best = float(mags.max())
    if best < 0:
        return None, None
    ti, ni = np.argwhere(mags == best)[0]
    return best, (int(ti) - grid.zone.Z_x + 1, int(ni) - grid.zone.Z_y + 1)


class ThetaReport:
    """Peak auto (origin excluded) and cross (origin included) magnitudes
    with stable argmax witnesses."""

    def __init__(self, theta_a, theta_c, witness_a, witness_c, zone, method):
        self.theta_a = theta_a
        self.theta_c = theta_c
        self.witness_a = witness_a
        self.witness_c = witness_c
        self.zone = zone
        self.method = method

    @property
    def theta_max(self):
        vals = [v for v in (self.theta_a, self.theta_c) if v is not None]
        return max(vals) if vals else None

    def to_json(self):
        return {
            "theta_a": self.theta_a,
            "theta_c": self.theta_c,
            "theta_max": self.theta_max,
            "witness_a": self.witness_a,
            "witness_c": self.witness_c,
            "zone": [self.zone.Z_x, self.zone.Z_y],
            "method": self.method,
        }


def theta_max(S, zone=None, method=None):
    """Exhaustive peak scan over all flocks, ordered pairs, and lattice
    points of the zone. Auto peaks exclude (0,0); cross peaks include
    every cell. Ties resolve to the lexicographically first (pair, tau,
    nu) so the witness is stable across runs and thread counts.
    """
    zone = zone if zone is not None else S.zone
    if method is None:
        method = "naive" if S.L <= FFT_LENGTH_CUTOFF else "fft"
    theta_a = theta_c = None
    witness_a = witness_c = None
    for k1 in range(S.K):
        g = af_grid(S.flock(k1), S.flock(k1), zone, S.r, method, "auto", (k1, k1))
        peak, cell = _scan_grid(g, skip_origin=True)
        if peak is not None and (theta_a is None or peak > theta_a):
            theta_a = peak
            witness_a = {"pair": [k1, k1], "tau": cell[0], "nu": cell[1], "abs": peak}
    for k1 in range(S.K):
        for k2 in range(S.K):
            if k1 == k2:
                continue
            g = af_grid(S.flock(k1), S.flock(k2), zone, S.r, method, "cross", (k1, k2))
            peak, cell = _scan_grid(g, skip_origin=False)
            if theta_c is None or peak > theta_c:
                theta_c = peak
                witness_c = {"pair": [k1, k2], "tau": cell[0], "nu": cell[1], "abs": peak}
    return ThetaReport(theta_a, theta_c, witness_a, witness_c, zone, method)


# --- grid exports ---

def write_cells_csv(grid, fh):
    """One line per lattice cell: tau, nu, re, im, abs."""
    fh.write("tau,nu,re,im,abs\n")
    for tau in range(-grid.zone.Z_x + 1, grid.zone.Z_x):
        for nu in range(-grid.zone.Z_y + 1, grid.zone.Z_y):
            v = grid.value(tau, nu)
            fh.write(
                "%d,%d,%.17g,%.17g,%.17g\n" % (tau, nu, v.real, v.imag, abs(v))
            )


def write_magnitude_csv(grid, fh):
    """Rectangular magnitude matrix; rows run nu from +max down to -max
    (plot orientation), columns run tau ascending."""
    mags = grid.magnitude()
    for ni in range(2 * grid.zone.Z_y - 2, -1, -1):
        fh.write(",".join("%.17g" % m for m in mags[:, ni]))
        fh.write("\n")


def write_pgm(grid, fh):
    """16-bit binary PGM heatmap, grid max scaled to 65535."""
    mags = grid.magnitude()
    top = float(mags.max())
    if top > 0:
        pix = np.round(mags / top * 65535).astype(">u2")
    else:
        pix = np.zeros(mags.shape, dtype=">u2")
    pix = pix.T[::-1]  # rows nu descending, cols tau ascending
    fh.write(b"P5\n%d %d\n65535\n" % (pix.shape[1], pix.shape[0]))
    fh.write(pix.tobytes())
