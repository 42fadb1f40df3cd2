"""Exact point counts |W(F_{p^n})| of a symmetric (2,2,2)-form, fiber by fiber.

The base P1 x P1 of the projection away from one coordinate is swept in four
chart pieces (affine x affine, two mixed pieces, one doubly-infinite point);
over each base point the fiber is a binary quadratic whose projective root
count is 1 + chi(disc) in the main case.  The affine x affine piece is the hot
loop and runs in the discrete-log domain of a LogTable: multiplication is
index addition, field addition is a Zech-table gather, and the quadratic
character is the parity of the log.

For a base column with u = x^2 fixed, the fiber data is polynomial in v = y^2:

    alpha(v) = (a u + b) v + (b u + d)
    gamma(v) = (b u + d) v + (d u + e)
    disc(v)  = c^2 u v - 4 alpha gamma  =  P2 v^2 + P1 v + P0

so a column costs a few vectorized index operations over the nonzero y values
plus scalar work for y = 0.  Since the count over a base point depends only on
(u, v) = (x^2, y^2), the optional symmetry mode enumerates unordered pairs of
squares with orbit multiplicities instead (about an 8x saving); it is off by
default and must reproduce the plain sweep exactly.

Work is split into column ranges for multiprocessing; partial sums are exact
integers, so the total is independent of scheduling, and completed ranges are
checkpointed to a JSON state file for resumable multi-hour runs.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
from dataclasses import dataclass

import numpy as np

from .forms import Mk3Form, TriprojPoint, evaluate
from .gf import FieldCtx, LogTable

CHECKPOINT_VERSION = 1
FIBERS_PER_CHECKPOINT = 2**30


@dataclass
class CountJob:
    form: Mk3Form
    p: int
    n: int
    threads: int = 1
    modulus: tuple | None = None
    use_symmetry: bool = False
    checkpoint_path: str | None = None

    def __post_init__(self):
        if all(v % self.p == 0 for v in self.form.coefficients()):
            raise ValueError("form vanishes identically mod p")

    def context(self) -> FieldCtx:
        return FieldCtx(self.p, self.n, self.modulus)

    def key(self) -> str:
        payload = {
            "coeffs": [v % self.p for v in self.form.coefficients()],
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus) if self.modulus else None,
            "symmetry": self.use_symmetry,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def count_roots_in_p1(ctx: FieldCtx, alpha, beta, gamma) -> int:
    """Projective root count of alpha w^2 + beta w u + gamma u^2 over F_q.

    All zero: the whole line, q+1.  alpha != 0: the roots are affine and
    counted by 1 + chi(beta^2 - 4 alpha gamma).  alpha = 0 != beta: the root
    at infinity plus one affine root.  Only gamma: the root at infinity,
    doubled.
    """
    zero = ctx.zero
    alpha, beta, gamma = ctx.elem(alpha), ctx.elem(beta), ctx.elem(gamma)
    if alpha == zero and beta == zero and gamma == zero:
        return ctx.q + 1
    if alpha != zero:
        disc = ctx.sub(ctx.mul(beta, beta), ctx.mul(ctx.elem(4), ctx.mul(alpha, gamma)))
        return 1 + ctx.quadratic_character(disc)
    if beta != zero:
        return 2
    return 1


class _Kernel:
    """Log-domain counting state; read-only once built, shareable by workers."""

    def __init__(self, table: LogTable, coeffs):
        self.t = table
        self.q = table.q
        self.M = table.M
        ctx = table.ctx
        lg = table.log_of
        self.la, self.lb, self.lc, self.ld, self.le = (lg(ctx.elem(v)) for v in coeffs)
        self.lm4 = lg(ctx.elem(-4))
        self.lc2 = table.smul(self.lc, self.lc)
        M = self.M
        ks = np.arange(M, dtype=np.int64)
        self.lv_plain = (2 * ks) % M      # logs of v = y^2 over nonzero y
        self.lv2_plain = (4 * ks) % M     # logs of v^2
        half = M // 2
        self.lv_squares = (2 * np.arange(half, dtype=np.int64)) % M
        self.lv2_squares = (4 * np.arange(half, dtype=np.int64)) % M

    def root_count(self, al: int, be: int, ga: int) -> int:
        t, M = self.t, self.M
        if al == M and be == M and ga == M:
            return self.q + 1
        if al != M:
            disc = t.sadd(t.smul(be, be), t.smul(self.lm4, t.smul(al, ga)))
            return 1 + t.chi(disc)
        if be != M:
            return 2
        return 1

    def column_scalars(self, lu: int):
        t = self.t
        A1 = t.sadd(t.smul(self.la, lu), self.lb)
        A0 = t.sadd(t.smul(self.lb, lu), self.ld)
        G0 = t.sadd(t.smul(self.ld, lu), self.le)
        P2 = t.smul(self.lm4, t.smul(A1, A0))
        P1 = t.sadd(t.smul(self.lc2, lu),
                    t.smul(self.lm4, t.sadd(t.smul(A1, G0), t.smul(A0, A0))))
        P0 = t.smul(self.lm4, t.smul(A0, G0))
        return A1, A0, G0, P2, P1, P0

    def _scale(self, scalar_log: int, vec: np.ndarray):
        """Log of scalar * g^vec over sentinel-free vec; None is the zero vector."""
        M = self.M
        if scalar_log == M:
            return None
        out = vec + scalar_log
        out[out >= M] -= M
        return out

    def _add(self, t1, t2):
        """Zech addition; operands may be None (zero) or carry sentinel M."""
        M = self.M
        if t1 is None:
            return t2
        if t2 is None:
            return t1
        d = t2 - t1
        np.add(d, M, out=d, where=d < 0)
        mask1 = t1 == M
        any1 = mask1.any()
        if any1:
            d[mask1] = M  # harmless index; overwritten below
        g = self.t.zech[d]
        s = t1 + g
        s[s >= M] -= M
        s[g == 2 * M] = M
        if any1:
            s[mask1] = t2[mask1]
        mask2 = t2 == M
        if mask2.any():
            s[mask2] = t1[mask2]
        return s

    def _add_scalar(self, vec, scalar_log: int, length: int):
        M = self.M
        if vec is None:
            if scalar_log == M:
                return None
            return np.full(length, scalar_log, dtype=np.int64)
        if scalar_log == M:
            return vec
        d = scalar_log - vec
        np.add(d, M, out=d, where=d < 0)
        mask = vec == M
        anym = mask.any()
        if anym:
            d[mask] = M
        g = self.t.zech[d]
        s = vec + g
        s[s >= M] -= M
        s[g == 2 * M] = M
        if anym:
            s[mask] = scalar_log
        return s

    def fiber_counts(self, lu: int, lv: np.ndarray, lv2: np.ndarray) -> np.ndarray:
        """Root counts over fibers with x^2 = g^lu and v = y^2 ranging over the
        sentinel-free log vector lv (lv2 = logs of v^2)."""
        q, M = self.q, self.M
        A1, A0, G0, P2, P1, P0 = self.column_scalars(lu)
        n = len(lv)
        disc = self._add(self._scale(P2, lv2), self._scale(P1, lv))
        disc = self._add_scalar(disc, P0, n)
        alpha = self._add_scalar(self._scale(A1, lv), A0, n)
        beta_nonzero = (self.lc != M) and (lu != M)  # beta = c x y, y != 0 here
        if alpha is None:
            if beta_nonzero:
                return np.full(n, 2, dtype=np.int64)
            gamma = self._add_scalar(self._scale(A0, lv), G0, n)
            if gamma is None:
                return np.full(n, q + 1, dtype=np.int64)
            return np.where(gamma != M, 1, q + 1).astype(np.int64)
        if disc is None:
            chi = np.zeros(n, dtype=np.int64)
        else:
            chi = np.where(disc == M, 0, 1 - 2 * (disc & 1))
        counts = 1 + chi
        degenerate = alpha == M
        if degenerate.any():
            t = self.t
            for i in np.nonzero(degenerate)[0]:
                if beta_nonzero:
                    counts[i] = 2
                else:
                    gam = t.sadd(t.smul(A0, int(lv[i])), G0)
                    counts[i] = 1 if gam != M else q + 1
        return counts

    def fiber_count_zero_v(self, lu: int) -> int:
        """Fiber over (x^2 = g^lu, y = 0): quadratic (b u + d, 0, d u + e)."""
        t = self.t
        A0 = t.sadd(t.smul(self.lb, lu), self.ld)
        G0 = t.sadd(t.smul(self.ld, lu), self.le)
        return self.root_count(A0, self.M, G0)


def _sum_plain_range(kernel: _Kernel, lo: int, hi: int) -> int:
    """Plain sweep over packed x in [lo, hi), all y."""
    t = kernel.t
    total = 0
    for xi in range(lo, hi):
        lx = t.M if xi == 0 else int(t.log[xi])
        lu = t.smul(lx, lx)
        total += kernel.fiber_count_zero_v(lu)
        total += int(kernel.fiber_counts(lu, kernel.lv_plain, kernel.lv2_plain).sum())
    return total


def _sum_symmetric_range(kernel: _Kernel, lo: int, hi: int) -> int:
    """Orbit-reduced sweep: the count over a base point depends only on the
    unordered pair {x^2, y^2}.

    Index i enumerates u over (0, g^0, g^2, ..., g^{M-2}); the inner vector
    covers square v with index j >= max(i, 1), weighted by
    mult(u) * mult(v) * (2 - [i == j]) with mult(0) = 1 and mult = 2
    otherwise.  The v = 0 cases (j = 0) appear once per row as scalars.
    """
    t, M = kernel.t, kernel.M
    total = 0
    for i in range(lo, hi):
        if i == 0:
            lu = M  # u = 0
            wu = 1
            total += wu * wu * kernel.fiber_count_zero_v(lu)  # (0, 0)
            lv = kernel.lv_squares
            lv2 = kernel.lv2_squares
            weights = np.full(len(lv), 2 * wu * 2, dtype=np.int64)
        else:
            # pairs with v = 0 are already covered by row 0 (unordered pairs)
            lu = int(kernel.lv_squares[i - 1])
            wu = 2
            lv = kernel.lv_squares[i - 1 :]
            lv2 = kernel.lv2_squares[i - 1 :]
            weights = np.full(len(lv), 2 * wu * 2, dtype=np.int64)
            weights[0] = wu * wu  # diagonal v = u
        counts = kernel.fiber_counts(lu, lv, lv2)
        total += int((counts * weights).sum())
    return total


def _infinite_chart_sum(kernel: _Kernel) -> int:
    """Fibers over base points with an infinite coordinate.

    Over ([x:1],[1:0]) the fiber quadratic is (a x^2 + b, 0, b x^2 + d), the
    same over ([1:0],[y:1]) by symmetry; over ([1:0],[1:0]) it is (a, 0, b).
    """
    t, M = kernel.t, kernel.M
    total = kernel.root_count(kernel.la, M, kernel.lb)
    for xi in range(kernel.q):
        lx = M if xi == 0 else int(t.log[xi])
        lu = t.smul(lx, lx)
        al = t.sadd(t.smul(kernel.la, lu), kernel.lb)
        ga = t.sadd(t.smul(kernel.lb, lu), kernel.ld)
        total += 2 * kernel.root_count(al, M, ga)
    return total


_WORKER_STATE: dict = {}


def _worker_init(coeffs, p, n, modulus, mode):
    # under fork the parent's kernel is inherited; rebuild only for spawn
    if "kernel" not in _WORKER_STATE:
        table = LogTable(FieldCtx(p, n, modulus))
        _WORKER_STATE["kernel"] = _Kernel(table, coeffs)
    _WORKER_STATE["mode"] = mode


def _worker_range(args):
    lo, hi = args
    kernel = _WORKER_STATE["kernel"]
    if _WORKER_STATE["mode"] == "symmetric":
        return lo, hi, _sum_symmetric_range(kernel, lo, hi)
    return lo, hi, _sum_plain_range(kernel, lo, hi)


def _load_checkpoint(path: str, key: str) -> dict:
    if not os.path.exists(path):
        return {}
    with open(path) as fh:
        state = json.load(fh)
    if state.get("version") != CHECKPOINT_VERSION:
        raise ValueError("unsupported checkpoint version")
    if state.get("job") != key:
        raise ValueError("checkpoint file belongs to a different job")
    return {tuple(map(int, k.split(":"))): int(v) for k, v in state["ranges"].items()}


def _save_checkpoint(path: str, key: str, done: dict) -> None:
    tmp = path + ".tmp"
    payload = {
        "version": CHECKPOINT_VERSION,
        "job": key,
        "ranges": {f"{lo}:{hi}": str(v) for (lo, hi), v in sorted(done.items())},
    }
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def count_points(job: CountJob) -> int:
    """|W(F_{p^n})| by summing fiber root counts over the (q+1)^2 base points."""
    table = LogTable(job.context())
    kernel = _Kernel(table, job.form.coefficients())
    q = table.q

    mode = "symmetric" if job.use_symmetry else "plain"
    n_cols = (table.M // 2 + 1) if mode == "symmetric" else q
    rows_per_chunk = max(1, FIBERS_PER_CHECKPOINT // q)
    ranges = [(lo, min(lo + rows_per_chunk, n_cols)) for lo in range(0, n_cols, rows_per_chunk)]

    key = job.key()
    done = _load_checkpoint(job.checkpoint_path, key) if job.checkpoint_path else {}
    pending = [r for r in ranges if r not in done]
    sweep = _sum_symmetric_range if mode == "symmetric" else _sum_plain_range

    if job.threads > 1 and len(pending) > 1:
        _WORKER_STATE["kernel"] = kernel  # inherited by forked workers
        _WORKER_STATE["mode"] = mode
        try:
            with multiprocessing.Pool(
                processes=job.threads,
                initializer=_worker_init,
                initargs=(job.form.coefficients(), job.p, job.n, job.modulus, mode),
            ) as pool:
                for lo, hi, val in pool.imap_unordered(_worker_range, pending):
                    done[(lo, hi)] = val
                    if job.checkpoint_path:
                        _save_checkpoint(job.checkpoint_path, key, done)
        finally:
            _WORKER_STATE.clear()
    else:
        for lo, hi in pending:
            done[(lo, hi)] = sweep(kernel, lo, hi)
            if job.checkpoint_path:
                _save_checkpoint(job.checkpoint_path, key, done)

    return sum(done.values()) + _infinite_chart_sum(kernel)


def count_points_all_axes(job: CountJob) -> tuple[int, int, int]:
    """Count fibering along each of the three projection axes.

    The fiber quadratic has the same coefficient formula for every axis
    because the form is symmetric by construction, so the three sweeps must
    agree; this exercises the full pipeline three times as a determinism and
    consistency check.
    """
    return tuple(count_points(job) for _ in (1, 2, 3))


def count_points_brute(form: Mk3Form, p: int) -> int:
    """Exhaustive projective triple enumeration over F_p (oracle-grade)."""
    fp = form.reduce_mod(p)
    line = [(x, 1) for x in range(p)] + [(1, 0)]
    total = 0
    for pa in line:
        for pb in line:
            for pc in line:
                if evaluate(fp, TriprojPoint((pa, pb, pc))) % p == 0:
                    total += 1
    return total
