"""Integer iteration kernels for the stochastic-game rounding oracle.

The rounding oracle keeps every iterate on the grid (1/q) Z^n, so the whole
first loop of the constant-value procedures can run on int64 numerators with
exact comparisons.  The kernels below implement exactly the same recurrence
as the generic Fraction-based loops (same half-to-even rounding, same exact
stopping test); a numba-compiled variant is used when the precomputed
magnitude bound fits comfortably in int64, with the pure-Python twin as
fallback (arbitrary precision, same code path semantics).
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*a, **k):
        def deco(f):
            return f

        if a and callable(a[0]):
            return a[0]
        return deco


def _round_div_half_even(n, d):
    # nearest integer to n/d (d > 0), ties to even
    q0 = n // d
    r = n - q0 * d
    twice = 2 * r
    if twice < d:
        return q0
    if twice > d:
        return q0 + 1
    if q0 % 2 == 0:
        return q0
    return q0 + 1


def _step(u, out, q, M, n_min, min_ptr, edge_a, edge_max, max_ptr, medge_b,
          medge_nat, nat_ptr, nat_col, nat_num):
    # one rounded evaluation of the Shapley operator on the 1/q grid
    qM = q * M
    for j in range(n_min):
        first = True
        best1 = 0
        for e in range(min_ptr[j], min_ptr[j + 1]):
            i = edge_max[e]
            first2 = True
            best2 = 0
            for f in range(max_ptr[i], max_ptr[i + 1]):
                k = medge_nat[f]
                s = medge_b[f] * qM
                for g in range(nat_ptr[k], nat_ptr[k + 1]):
                    s += nat_num[g] * u[nat_col[g]]
                if first2 or s > best2:
                    best2 = s
                    first2 = False
            val = -edge_a[e] * qM + best2
            if first or val < best1:
                best1 = val
                first = False
        out[j] = _round_div_half_even(best1, M)


def _gap_loop(u, q, M, delta_num, delta_den, cap, n_min, min_ptr, edge_a,
              edge_max, max_ptr, medge_b, medge_nat, nat_ptr, nat_col,
              nat_num):
    """Iterate u <- round(F(u)) until top-bottom <= (3/4)*delta*ell (in exact
    rational arithmetic) or ell == cap.  Returns (ell, hit)."""
    out = u.copy()
    ell = 0
    while ell < cap:
        _step(u, out, q, M, n_min, min_ptr, edge_a, edge_max, max_ptr,
              medge_b, medge_nat, nat_ptr, nat_col, nat_num)
        for j in range(n_min):
            u[j] = out[j]
        ell += 1
        hi = u[0]
        lo = u[0]
        for j in range(1, n_min):
            if u[j] > hi:
                hi = u[j]
            if u[j] < lo:
                lo = u[j]
        # (hi - lo)/q <= (3/4) * (dn/dd) * ell
        if 4 * delta_den * (hi - lo) <= 3 * delta_num * q * ell:
            return ell, True
    return ell, False


def _replay_loop(u, x, y, q, M, ell, b_num, t_num, n_min, min_ptr, edge_a,
                 edge_max, max_ptr, medge_b, medge_nat, nat_ptr, nat_col,
                 nat_num):
    """Second certificate pass: with kappa = b_num/(q*ell) and
    lam = t_num/(q*ell), build x = sup_i(-i*kappa + u^i) and
    y = inf_i(-i*lam + u^i) over i = 0..ell-1, scaled by q*ell."""
    out = u.copy()
    for j in range(n_min):
        u[j] = 0
        x[j] = 0
        y[j] = 0
    for i in range(1, ell):
        _step(u, out, q, M, n_min, min_ptr, edge_a, edge_max, max_ptr,
              medge_b, medge_nat, nat_ptr, nat_col, nat_num)
        for j in range(n_min):
            u[j] = out[j]
            cand_x = u[j] * ell - i * b_num
            if cand_x > x[j]:
                x[j] = cand_x
            cand_y = u[j] * ell - i * t_num
            if cand_y < y[j]:
                y[j] = cand_y


if HAVE_NUMBA:
    @njit(cache=True)
    def _gap_loop_jit(u, q, M, delta_num, delta_den, cap, n_min, min_ptr,
                      edge_a, edge_max, max_ptr, medge_b, medge_nat, nat_ptr,
                      nat_col, nat_num):
        out = u.copy()
        ell = 0
        qM = q * M
        while ell < cap:
            for j in range(n_min):
                first = True
                best1 = 0
                for e in range(min_ptr[j], min_ptr[j + 1]):
                    i = edge_max[e]
                    first2 = True
                    best2 = 0
                    for f in range(max_ptr[i], max_ptr[i + 1]):
                        k = medge_nat[f]
                        s = medge_b[f] * qM
                        for g in range(nat_ptr[k], nat_ptr[k + 1]):
                            s += nat_num[g] * u[nat_col[g]]
                        if first2 or s > best2:
                            best2 = s
                            first2 = False
                    val = -edge_a[e] * qM + best2
                    if first or val < best1:
                        best1 = val
                        first = False
                q0 = best1 // M
                r = best1 - q0 * M
                if 2 * r < M:
                    out[j] = q0
                elif 2 * r > M:
                    out[j] = q0 + 1
                elif q0 % 2 == 0:
                    out[j] = q0
                else:
                    out[j] = q0 + 1
            for j in range(n_min):
                u[j] = out[j]
            ell += 1
            hi = u[0]
            lo = u[0]
            for j in range(1, n_min):
                if u[j] > hi:
                    hi = u[j]
                if u[j] < lo:
                    lo = u[j]
            if 4 * delta_den * (hi - lo) <= 3 * delta_num * q * ell:
                return ell, True
        return ell, False

    @njit(cache=True)
    def _replay_loop_jit(u, x, y, q, M, ell, b_num, t_num, n_min, min_ptr,
                         edge_a, edge_max, max_ptr, medge_b, medge_nat,
                         nat_ptr, nat_col, nat_num):
        out = u.copy()
        qM = q * M
        for j in range(n_min):
            u[j] = 0
            x[j] = 0
            y[j] = 0
        for i in range(1, ell):
            for j in range(n_min):
                first = True
                best1 = 0
                for e in range(min_ptr[j], min_ptr[j + 1]):
                    ii = edge_max[e]
                    first2 = True
                    best2 = 0
                    for f in range(max_ptr[ii], max_ptr[ii + 1]):
                        k = medge_nat[f]
                        s = medge_b[f] * qM
                        for g in range(nat_ptr[k], nat_ptr[k + 1]):
                            s += nat_num[g] * u[nat_col[g]]
                        if first2 or s > best2:
                            best2 = s
                            first2 = False
                    val = -edge_a[e] * qM + best2
                    if first or val < best1:
                        best1 = val
                        first = False
                q0 = best1 // M
                r = best1 - q0 * M
                if 2 * r < M:
                    out[j] = q0
                elif 2 * r > M:
                    out[j] = q0 + 1
                elif q0 % 2 == 0:
                    out[j] = q0
                else:
                    out[j] = q0 + 1
            for j in range(n_min):
                u[j] = out[j]
                cand_x = u[j] * ell - i * b_num
                if cand_x > x[j]:
                    x[j] = cand_x
                cand_y = u[j] * ell - i * t_num
                if cand_y < y[j]:
                    y[j] = cand_y


class Kernel:
    """CSR-style integer encoding of one stochastic game, with gap/replay
    loops.  `bigint` mode runs the pure-Python twin on Python ints (no
    overflow); otherwise int64 numpy + numba."""

    def __init__(self, game):
        self.M = game.M
        n_min = len(game.min_ids)
        self.n_min = n_min
        min_ptr = [0]
        edge_a = []
        edge_max = []
        for j in range(n_min):
            for (i, a) in game.min_edges[j]:
                edge_a.append(a)
                edge_max.append(i)
            min_ptr.append(len(edge_a))
        max_ptr = [0]
        medge_b = []
        medge_nat = []
        for i in range(len(game.max_ids)):
            for (k, b) in game.max_edges[i]:
                medge_b.append(b)
                medge_nat.append(k)
            max_ptr.append(len(medge_b))
        nat_ptr = [0]
        nat_col = []
        nat_num = []
        for k in range(len(game.nat_ids)):
            for (l, num) in game.nat_edges[k]:
                nat_col.append(l)
                nat_num.append(num)
            nat_ptr.append(len(nat_col))
        self._py = (n_min, min_ptr, edge_a, edge_max, max_ptr, medge_b,
                    medge_nat, nat_ptr, nat_col, nat_num)
        self._np = tuple(
            np.asarray(arr, dtype=np.int64)
            for arr in (min_ptr, edge_a, edge_max, max_ptr, medge_b,
                        medge_nat, nat_ptr, nat_col, nat_num)
        )
        amax = max((abs(a) for a in edge_a), default=0)
        bmax = max((abs(b) for b in medge_b), default=0)
        self.step_bound = amax + bmax + 1

    def _fits_int64(self, q, cap, second=False):
        # |u numerator| <= cap * step_bound * q; intermediates multiply by M
        # and (for the replay pass) by ell <= cap.
        u_bound = cap * self.step_bound * q
        worst = u_bound * self.M * (cap if second else 1) * 8
        return worst < 2**62

    def gap_loop(self, q, delta_num, delta_den, cap):
        if HAVE_NUMBA and self._fits_int64(q, cap):
            u = np.zeros(self.n_min, dtype=np.int64)
            ell, hit = _gap_loop_jit(u, q, self.M, delta_num, delta_den, cap,
                                     np.int64(self.n_min), *self._np)
            return [int(v) for v in u], int(ell), bool(hit)
        u = [0] * self.n_min
        ell, hit = _gap_loop(u, q, self.M, delta_num, delta_den, cap,
                             *self._py)
        return u, ell, hit

    def replay_loop(self, q, ell, b_num, t_num):
        if HAVE_NUMBA and self._fits_int64(q, ell, second=True):
            u = np.zeros(self.n_min, dtype=np.int64)
            x = np.zeros(self.n_min, dtype=np.int64)
            y = np.zeros(self.n_min, dtype=np.int64)
            _replay_loop_jit(u, x, y, q, self.M, ell, b_num, t_num,
                             np.int64(self.n_min), *self._np)
            return [int(v) for v in x], [int(v) for v in y]
        u = [0] * self.n_min
        x = [0] * self.n_min
        y = [0] * self.n_min
        _replay_loop(u, x, y, q, self.M, ell, b_num, t_num, *self._py)
        return x, y
