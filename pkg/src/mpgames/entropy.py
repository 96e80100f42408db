"""Matrix-multiplicative games with three alternating roles.

A Despot state picks one of its Tribune successors (minimizing), a Tribune
picks one of its People successors (maximizing), and a People state spreads
into Despot states with integer multiplicities.  In the multiplicative
domain the one-step operator on positive vectors indexed by Despot states is

    T_d(x) = min_(d,t) max_(t,p) sum_(p,l) m_pl * x_l,

and the per-state value is the growth rate lim T^k(1)_d^(1/k), a Perron root
of an induced nonnegative matrix.  The solver works with the logarithmic
conjugate F = log o T o exp, which is order-preserving and additively
homogeneous, so all the generic value-iteration machinery applies; the final
certificates are re-issued in multiplicative form so they can be checked in
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

import mpmath

from .dominion import SepParams, top_class
from .graphs import tarjan_scc
from .iteration import (
    SUB,
    SUPER,
    Certificate,
    approximate_constant_mean_payoff,
)
from .linalg import integer_rank
from .numeric import NEG_INF, RationalInterval
from .oracle import ShapleyOracle, restrict
from .perron import perron_root


class GameFormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# game structure


@dataclass(frozen=True)
class EntropyGame:
    d_ids: tuple  # Despot state ids
    t_ids: tuple  # Tribune state ids
    p_ids: tuple  # People state ids
    d_edges: tuple  # per Despot: (tribune_idx, ...)
    t_edges: tuple  # per Tribune: (people_idx, ...)
    p_edges: tuple  # per People: ((despot_idx, multiplicity), ...)

    def validate(self):
        for name, ids, edges in (
            ("despot", self.d_ids, self.d_edges),
            ("tribune", self.t_ids, self.t_edges),
            ("people", self.p_ids, self.p_edges),
        ):
            if len(ids) != len(edges):
                raise GameFormatError(f"{name} adjacency length mismatch")
            for sid, out in zip(ids, edges):
                if not out:
                    raise GameFormatError(f"state {sid!r} has no outgoing edge")
        for sid, row in zip(self.p_ids, self.p_edges):
            for _, m in row:
                if not isinstance(m, int) or m < 1:
                    raise GameFormatError(
                        f"multiplicity at state {sid!r} must be a positive integer"
                    )
        return self

    def stats(self):
        w = max(m for row in self.p_edges for _, m in row)
        return EntropyStats(n=len(self.d_ids), W=w)


@dataclass(frozen=True)
class EntropyStats:
    n: int
    W: int


def make_entropy_game(d_ids, t_ids, p_ids, d_edges, t_edges, p_edges):
    game = EntropyGame(
        tuple(d_ids),
        tuple(t_ids),
        tuple(p_ids),
        tuple(tuple(sorted(row)) for row in d_edges),
        tuple(tuple(sorted(row)) for row in t_edges),
        tuple(tuple(sorted(row)) for row in p_edges),
    )
    return game.validate()


def value_bounds(game: EntropyGame) -> RationalInterval:
    """Every per-state value lies in [1, n*W]: each People row has at least
    one unit entry, and row sums are at most n*W."""
    stats = game.stats()
    return RationalInterval(Fraction(1), Fraction(stats.n * stats.W))


# ---------------------------------------------------------------------------
# exact multiplicative evaluation


def multiplicative_eval(game: EntropyGame, x):
    """One exact application of T to a vector of nonnegative rationals (or
    integers).  A zero entry plays the role of -inf in the log domain: People
    sums ignore nothing (zero terms contribute zero), Tribunes maximize,
    Despots minimize."""
    if len(x) != len(game.d_ids):
        raise ValueError("vector length does not match Despot state count")
    if any(v < 0 for v in x):
        raise ValueError("multiplicative evaluation requires nonnegative entries")
    pvals = [
        sum(m * x[l] for l, m in row) for row in game.p_edges
    ]
    tvals = [max(pvals[p] for p in row) for row in game.t_edges]
    return tuple(min(tvals[t] for t in row) for row in game.d_edges)


def recession_eval(game: EntropyGame, x):
    """Recession operator in the log domain: multiplicities collapse to their
    support, sums collapse to maxima, so F^hat_d = min_t max_p max_l x_l."""
    out = []
    for row in game.d_edges:
        best = None
        for t in row:
            inner = NEG_INF
            for p in game.t_edges[t]:
                for l, _ in game.p_edges[p]:
                    v = x[l]
                    if v is NEG_INF:
                        continue
                    if inner is NEG_INF or v > inner:
                        inner = v
            if best is None:
                best = inner
            elif inner is NEG_INF or (best is not NEG_INF and inner < best):
                best = inner
        out.append(best)
    return tuple(out)


# ---------------------------------------------------------------------------
# certified logarithmic arithmetic


_LN2_LO = Fraction(693147180, 10**9)  # rational lower bound of ln 2
_LN2_HI = Fraction(693147181, 10**9)  # rational upper bound of ln 2
_E_UPPER = Fraction(27182818285, 10**10)  # rational upper bound of e


def _is_pow2(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0


def log2_upper(x) -> Fraction:
    """Rational upper bound of log2(x) for a positive rational x; exact when
    x is a power of two."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 requires a positive argument")
    num, den = x.numerator, x.denominator
    if _is_pow2(num) and _is_pow2(den):
        return Fraction(num.bit_length() - den.bit_length())
    val = math.log2(num) - math.log2(den)
    return Fraction(ceil(val * 2**20) + 2, 2**20)


def log2_lower(x) -> Fraction:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 requires a positive argument")
    num, den = x.numerator, x.denominator
    if _is_pow2(num) and _is_pow2(den):
        return Fraction(num.bit_length() - den.bit_length())
    val = math.log2(num) - math.log2(den)
    return Fraction(math.floor(val * 2**20) - 2, 2**20)


def ln_upper(x) -> Fraction:
    """Rational upper bound of ln(x) for rational x >= 1."""
    l2 = log2_upper(x)
    if l2 < 0:
        raise ValueError("ln_upper expects x >= 1")
    return l2 * _LN2_HI


def ln_lower(x) -> Fraction:
    """Rational lower bound of ln(x) for rational x >= 1 (clamped at 0)."""
    l2 = log2_lower(x)
    if l2 <= 0:
        return Fraction(0)
    return l2 * _LN2_LO


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("non-finite value")
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _iv_to_fractions(x):
    """Rational (lo, hi) endpoints of an interval-arithmetic value."""
    a, b = x._mpi_
    return _mpf_tuple_to_fraction(a), _mpf_tuple_to_fraction(b)


def _fraction_to_iv(x: Fraction):
    return mpmath.iv.mpf(x.numerator) / mpmath.iv.mpf(x.denominator)


def exp_bounds(x, rel_bits: int = 80):
    """Rational (lower, upper) enclosure of e^x with relative width at most
    2^-rel_bits, via outward-rounded interval arithmetic."""
    x = Fraction(x)
    saved = mpmath.iv.prec
    try:
        for prec in (rel_bits + 40, 2 * rel_bits + 80, 4 * rel_bits + 200,
                     8 * rel_bits + 600):
            mpmath.iv.prec = prec
            e = mpmath.iv.exp(_fraction_to_iv(x))
            lo, hi = _iv_to_fractions(e)
            if lo > 0 and hi - lo <= lo * Fraction(1, 2**rel_bits):
                return lo, hi
    finally:
        mpmath.iv.prec = saved
    raise RuntimeError("interval exponential failed to converge")


def certified_log_sum_exp(terms, eps) -> Fraction:
    """A rational within eps of log(sum_i m_i * e^(x_i)) for integer weights
    m_i >= 1 and rational x_i.  Fast float64 path with a conservative static
    error envelope; outward-rounded interval arithmetic with doubling
    precision otherwise.  Deterministic for fixed (terms, eps)."""
    if not terms:
        raise ValueError("empty term list")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    xs = [Fraction(x) for _, x in terms]
    try:
        xf = [float(v) for v in xs]
        shift = max(xf)
        s = 0.0
        for (m, _), v in zip(terms, xf):
            s += m * math.exp(v - shift)
        res = shift + math.log(s)
        xmax_abs = max(abs(v) for v in xf)
        err = (
            Fraction(2.0 * xmax_abs + 2.0 + abs(res)) * Fraction(1, 2**48)
            + Fraction(len(terms) + 8, 2**48)
        )
        if err <= eps:
            return Fraction(res)
    except (OverflowError, ValueError):
        pass
    shift_fr = max(xs)
    saved = mpmath.iv.prec
    try:
        for prec in (80, 160, 320, 640, 1280, 2560):
            mpmath.iv.prec = prec
            s = mpmath.iv.mpf(0)
            for (m, _), v in zip(terms, xs):
                s += m * mpmath.iv.exp(_fraction_to_iv(v - shift_fr))
            r = mpmath.iv.log(s)
            r_lo, r_hi = _iv_to_fractions(r)
            lo = shift_fr + r_lo
            hi = shift_fr + r_hi
            if hi - lo <= eps:
                return (lo + hi) / 2
    finally:
        mpmath.iv.prec = saved
    raise RuntimeError("interval log-sum-exp failed to converge")


# ---------------------------------------------------------------------------
# the log-domain operator oracle


class LogDomainOracle(ShapleyOracle):
    """eps-accurate evaluation of F = log o T o exp.  The -inf support is
    structural and exact: a People score is -inf iff it has no finite
    successor, Tribune maxima skip -inf branches, Despot minima propagate
    them.  Finite People scores are certified log-sum-exp values; the min/max
    combination of dyadic rationals is exact, so the composite error stays
    within eps."""

    def __init__(self, game: EntropyGame):
        super().__init__(len(game.d_ids))
        self.game = game

    def _eval(self, x, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        g = self.game
        pscores = []
        for row in g.p_edges:
            terms = [(m, x[l]) for l, m in row if x[l] is not NEG_INF]
            pscores.append(
                certified_log_sum_exp(terms, eps) if terms else NEG_INF
            )
        tvals = []
        for row in g.t_edges:
            vals = [pscores[p] for p in row if pscores[p] is not NEG_INF]
            tvals.append(max(vals) if vals else NEG_INF)
        out = []
        for row in g.d_edges:
            branches = [tvals[t] for t in row]
            if any(b is NEG_INF for b in branches):
                out.append(NEG_INF)
            else:
                out.append(min(branches))
        return tuple(out)

    def restrict_native(self, subset):
        ind = induced_entropy_subgame(self.game, subset)
        if ind is None:
            return None
        return LogDomainOracle(ind.game)


def log_domain_oracle(game: EntropyGame) -> LogDomainOracle:
    return LogDomainOracle(game)


# ---------------------------------------------------------------------------
# dominions and restrictions


@dataclass(frozen=True)
class InducedEntropy:
    game: EntropyGame
    d_sel: tuple  # original Despot indices (sorted)
    t_sel: tuple  # original Tribune indices kept
    p_sel: tuple  # original People indices kept


def induced_entropy_subgame(game: EntropyGame, d_subset):
    """The subgame induced by a dominion D of Despot states: People keep
    their edges into D (surviving iff at least one remains), Tribunes keep
    their surviving People, and every Despot move must land on a surviving
    Tribune.  Returns None when the subset is not a dominion."""
    d_sel = sorted(set(d_subset))
    d_set = set(d_sel)
    v_p = {
        p
        for p in range(len(game.p_ids))
        if any(l in d_set for l, _ in game.p_edges[p])
    }
    v_t = {
        t
        for t in range(len(game.t_ids))
        if any(p in v_p for p in game.t_edges[t])
    }
    for d in d_sel:
        for t in game.d_edges[d]:
            if t not in v_t:
                return None
    t_sel = sorted({t for d in d_sel for t in game.d_edges[d]})
    p_sel = sorted({p for t in t_sel for p in game.t_edges[t] if p in v_p})
    d_index = {j: i for i, j in enumerate(d_sel)}
    t_index = {j: i for i, j in enumerate(t_sel)}
    p_index = {j: i for i, j in enumerate(p_sel)}
    sub = make_entropy_game(
        tuple(game.d_ids[j] for j in d_sel),
        tuple(game.t_ids[j] for j in t_sel),
        tuple(game.p_ids[j] for j in p_sel),
        tuple(tuple(t_index[t] for t in game.d_edges[j]) for j in d_sel),
        tuple(
            tuple(p_index[p] for p in game.t_edges[j] if p in p_index)
            for j in t_sel
        ),
        tuple(
            tuple((d_index[l], m) for l, m in game.p_edges[j] if l in d_set)
            for j in p_sel
        ),
    )
    return InducedEntropy(sub, tuple(d_sel), tuple(t_sel), tuple(p_sel))


def entropy_dominion_by_graph(game: EntropyGame, d_subset) -> bool:
    return induced_entropy_subgame(game, d_subset) is not None


def subgraph_on(game: EntropyGame, d_ids, t_ids, p_ids) -> EntropyGame:
    """The subgraph of `game` spanned by the given state ids (edges with both
    endpoints inside survive).  Raises GameFormatError when some kept state
    loses all its moves."""
    d_index = {s: j for j, s in enumerate(game.d_ids)}
    t_index = {s: j for j, s in enumerate(game.t_ids)}
    p_index = {s: j for j, s in enumerate(game.p_ids)}
    try:
        d_sel = [d_index[s] for s in d_ids]
        t_sel = [t_index[s] for s in t_ids]
        p_sel = [p_index[s] for s in p_ids]
    except KeyError as exc:
        raise GameFormatError(f"unknown state id {exc}") from exc
    d_new = {j: i for i, j in enumerate(d_sel)}
    t_new = {j: i for i, j in enumerate(t_sel)}
    p_new = {j: i for i, j in enumerate(p_sel)}
    return make_entropy_game(
        tuple(game.d_ids[j] for j in d_sel),
        tuple(game.t_ids[j] for j in t_sel),
        tuple(game.p_ids[j] for j in p_sel),
        tuple(
            tuple(t_new[t] for t in game.d_edges[j] if t in t_new)
            for j in d_sel
        ),
        tuple(
            tuple(p_new[p] for p in game.t_edges[j] if p in p_new)
            for j in t_sel
        ),
        tuple(
            tuple((d_new[l], m) for l, m in game.p_edges[j] if l in d_new)
            for j in p_sel
        ),
    )


# ---------------------------------------------------------------------------
# pair matrices and their growth rates


def pair_matrix(game: EntropyGame, sigma, tau):
    """Nonnegative matrix of the chain fixed by positional strategies: row k
    is the People row chosen at Despot k via sigma (Despot idx -> Tribune
    idx) and tau (Tribune idx -> People idx)."""
    n = len(game.d_ids)
    rows = []
    for k in range(n):
        p = tau[sigma[k]]
        row = [0] * n
        for l, m in game.p_edges[p]:
            row[l] = m
        rows.append(row)
    return rows


def matrix_values(matrix, tol):
    """Per-state growth rates of a nonnegative integer matrix, as rational
    brackets of width <= tol: the maximum Perron root over strongly connected
    components reachable from the state."""
    n = len(matrix)
    adj = [[j for j, v in enumerate(row) if v] for row in matrix]
    comps = [sorted(c) for c in tarjan_scc(adj)]
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    vals = []
    for ci, comp in enumerate(comps):
        cyclic = len(comp) > 1 or matrix[comp[0]][comp[0]] > 0
        if cyclic:
            sub = [[matrix[i][j] for j in comp] for i in comp]
            rho = perron_root(sub, tol)
            lo, hi = rho.lo, rho.hi
        else:
            lo = hi = Fraction(0)
        # components are listed successors-first, so reachable values are done
        for v in comp:
            for w in adj[v]:
                cw = comp_of[w]
                if cw != ci:
                    lo = max(lo, vals[cw].lo)
                    hi = max(hi, vals[cw].hi)
        vals.append(RationalInterval(lo, hi))
    return [vals[comp_of[i]] for i in range(n)]


def pair_values(game: EntropyGame, sigma, tau, tol):
    return matrix_values(pair_matrix(game, sigma, tau), tol)


def pair_values_by_ids(game: EntropyGame, sigma_ids, tau_ids, tol):
    """Pair values for id-based strategies (Despot id -> Tribune id,
    Tribune id -> People id); used to confirm stitched strategies."""
    t_index = {s: j for j, s in enumerate(game.t_ids)}
    p_index = {s: j for j, s in enumerate(game.p_ids)}
    sigma = [t_index[sigma_ids[s]] for s in game.d_ids]
    tau = [p_index[tau_ids[s]] for s in game.t_ids]
    return pair_values(game, sigma, tau, tol)


# ---------------------------------------------------------------------------
# separation profile


@dataclass(frozen=True)
class RankProfile:
    rank: int
    selections: int
    nu: Fraction  # multiplicative separation factor for distinct pair values
    nu_hat: Fraction  # log-domain separation denominator (n * W * nu)


def _nu_value(n: int, w: int, r: int) -> Fraction:
    nu = Fraction(2) ** r * Fraction(r + 1) ** (8 * r)
    expo = 2 * r * r - r - 1
    if expo > 0:
        nu = nu / Fraction(r) ** expo
    nu *= (Fraction(n) * _E_UPPER) ** (4 * r * r)
    nu *= max(Fraction(1), Fraction(w, 2)) ** (4 * r * r)
    return nu


def rank_profile(game: EntropyGame, budget: int = 10**6) -> RankProfile:
    """Maximal rank over the achievable pair matrices (full enumeration of
    the per-Despot People choices when it fits in the budget, the trivial
    bound n otherwise) and the derived separation factors."""
    stats = game.stats()
    n = stats.n
    choices = [
        sorted({p for t in game.d_edges[d] for p in game.t_edges[t]})
        for d in range(n)
    ]
    count = 1
    for c in choices:
        count *= len(c)
    if count > budget:
        r = n
    else:
        r = 1
        for sel in itertools.product(*choices):
            rows = []
            for p in sel:
                row = [0] * n
                for l, m in game.p_edges[p]:
                    row[l] = m
                rows.append(row)
            r = max(r, integer_rank(rows))
    nu = _nu_value(n, stats.W, r)
    return RankProfile(rank=r, selections=count, nu=nu, nu_hat=n * stats.W * nu)


def cw_norm_bound(n: int, w: int, delta) -> Fraction:
    """A priori seminorm bound for sub/super-eigenvectors at slack delta:
    1200 * (n^3 * log2(max(W, 2)) + n^2 * log2(1/delta))."""
    delta = Fraction(delta)
    return 1200 * (
        n**3 * log2_upper(Fraction(max(w, 2)))
        + n**2 * log2_upper(1 / delta)
    )


# ---------------------------------------------------------------------------
# brute force (bracketed, with on-demand refinement)


class _ValueRegistry:
    """Per-state growth-rate brackets for ambiguity matrices, deduplicated by
    matrix content and lazily refined (a tolerance never increases)."""

    def __init__(self):
        self._store = {}

    def add(self, matrix):
        key = tuple(tuple(row) for row in matrix)
        if key not in self._store:
            self._store[key] = [None, None]  # [tol, per-state intervals]
        return key

    def keys(self):
        return list(self._store)

    def values(self, key, tol):
        tol = Fraction(tol)
        ent = self._store[key]
        if ent[0] is None or ent[0] > tol:
            ent[1] = matrix_values([list(row) for row in key], tol)
            ent[0] = tol
        return ent[1]

    def compare(self, c1, c2, coarse, fine):
        """Order the algebraic values behind two (key, state) references:
        -1/0/1.  Overlapping brackets are refined to `fine` before being
        declared equal, which is decisive below the separation bound."""
        if c1 == c2:
            return 0
        for tol in (coarse, fine):
            a = self.values(c1[0], tol)[c1[1]]
            b = self.values(c2[0], tol)[c2[1]]
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
        return 0


@dataclass
class BruteEntropyResult:
    chi: tuple  # per Despot index, RationalInterval around the exact value
    candidates: tuple  # (matrix key, state) reference of each winning bracket
    registry: _ValueRegistry
    coarse_tol: Fraction
    fine_tol: Fraction
    pair_count: int

    def refine(self, state: int, tol) -> RationalInterval:
        key, st = self.candidates[state]
        return self.registry.values(key, tol)[st]


def brute_force_entropy_values(
    game: EntropyGame, budget: int = 10**6, profile: RankProfile | None = None
) -> BruteEntropyResult:
    """chi_d = min over Despot strategies of max over Tribune strategies of
    the pair growth rate, componentwise (positional uniformly optimal
    strategies exist).  Brackets start at width 2^-30 and are refined to
    1/(4*nu_hat) only when a comparison is ambiguous; equal-looking brackets
    at that width are genuinely equal by the separation bound."""
    if profile is None:
        profile = rank_profile(game, budget)
    coarse = Fraction(1, 2**30)
    fine = min(coarse, Fraction(1, 4) / profile.nu_hat)
    nd = len(game.d_ids)
    count = 1
    for row in game.d_edges:
        count *= len(row)
    for row in game.t_edges:
        count *= len(row)
    if count > budget:
        raise ValueError(f"strategy-pair count {count} exceeds budget {budget}")
    reg = _ValueRegistry()
    chi_cand = None
    for sigma in itertools.product(*game.d_edges):
        best = None
        for tau_sel in itertools.product(*game.t_edges):
            key = reg.add(pair_matrix(game, sigma, tau_sel))
            cands = [(key, d) for d in range(nd)]
            if best is None:
                best = cands
            else:
                best = [
                    b if reg.compare(b, c, coarse, fine) >= 0 else c
                    for b, c in zip(best, cands)
                ]
        if chi_cand is None:
            chi_cand = best
        else:
            chi_cand = [
                a if reg.compare(a, b, coarse, fine) <= 0 else b
                for a, b in zip(chi_cand, best)
            ]
    chi = tuple(reg.values(k, coarse)[s] for k, s in chi_cand)
    return BruteEntropyResult(
        chi=chi,
        candidates=tuple(chi_cand),
        registry=reg,
        coarse_tol=coarse,
        fine_tol=fine,
        pair_count=count,
    )


# ---------------------------------------------------------------------------
# certificates


def check_entropy_certificate(game: EntropyGame, cert: Certificate) -> bool:
    """Exact verification of lam * v <= T(v) (sub) or >= (super) for a
    multiplicative certificate with positive rational entries."""
    if not cert.multiplicative:
        raise ValueError("entropy certificates are multiplicative")
    if any(Fraction(v) <= 0 for v in cert.vec):
        return False
    y = multiplicative_eval(game, [Fraction(v) for v in cert.vec])
    if cert.direction == SUB:
        return all(cert.lam * v <= w for v, w in zip(cert.vec, y))
    return all(cert.lam * v >= w for v, w in zip(cert.vec, y))


# ---------------------------------------------------------------------------
# solver


@dataclass(frozen=True)
class BlockResult:
    d_ids: tuple  # Despots of this block (top class of the residual game)
    t_ids: tuple  # Tribunes assigned to the block
    p_ids: tuple  # People assigned to the block
    subgame: EntropyGame  # certificates verify against this restriction
    interval: RationalInterval  # multiplicative value bracket
    sub: Certificate
    sup: Certificate
    delta: Fraction
    R: Fraction
    iterations: int
    oracle_calls: int


@dataclass(frozen=True)
class EntropySolution:
    values: dict  # Despot id -> RationalInterval (multiplicative)
    sigma: dict  # Despot id -> Tribune id
    tau: dict  # Tribune id -> People id
    blocks: tuple


def _certified_separation(game, profile, brute) -> Fraction:
    """A certified log-domain separation parameter: half the smallest
    verified log-gap between distinct growth rates of irreducible principal
    submatrices of achievable pair matrices (these exhaust the upper/lower
    values of all dominion restrictions), floored at the a priori bound
    1/nu_hat and capped at 1/8."""
    reg = brute.registry
    full_keys = reg.keys()
    cands = set()
    for key in full_keys:
        nloc = len(key)
        for size in range(1, nloc + 1):
            for comb in itertools.combinations(range(nloc), size):
                sub = [[key[i][j] for j in comb] for i in comb]
                if not _irreducible(sub):
                    continue
                cands.add(reg.add(sub))
    cands = sorted(cands)
    coarse, fine = brute.coarse_tol, brute.fine_tol
    min_gap = None
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            c = reg.compare((cands[i], 0), (cands[j], 0), coarse, fine)
            if c == 0:
                continue
            lo_key, hi_key = (cands[i], cands[j]) if c < 0 else (cands[j], cands[i])
            small = reg.values(lo_key, coarse)[0]
            big = reg.values(hi_key, coarse)[0]
            if small.hi <= 0:
                continue
            ratio_lo = Fraction(big.lo, small.hi)
            if ratio_lo <= 1:
                continue
            g = ln_lower(ratio_lo)
            if g > 0 and (min_gap is None or g < min_gap):
                min_gap = g
    candidate = min_gap / 2 if min_gap is not None else Fraction(1, 8)
    return min(Fraction(1, 8), max(candidate, Fraction(1) / profile.nu_hat))


def _irreducible(matrix) -> bool:
    n = len(matrix)
    if n == 1:
        return matrix[0][0] > 0
    adj = [[j for j, v in enumerate(row) if v] for row in matrix]
    return len(tarjan_scc(adj)) == 1


def _certified_witness_bound(subgame, v_interval, delta, cap=30000):
    """Certified seminorm bound: run the damped iteration u <- T(u) + u on
    integer vectors from 1 and keep the first iterates satisfying the exact
    sub/super inequalities at levels just below/above the value bracket.  The
    minimum normalized ratio min_d T(u)_d/u_d is nondecreasing along the
    damped orbit, so the search is monotone."""
    w_v = delta / 64
    lam_lo = v_interval.lo - w_v
    lam_hi = v_interval.hi + w_v
    if lam_lo <= 0:
        raise RuntimeError("value bracket too coarse for witness extraction")
    m = len(subgame.d_ids)
    u = [1] * m
    found_sub = None
    found_sup = None
    for it in range(cap):
        tu = multiplicative_eval(subgame, u)
        if found_sub is None and all(
            tv >= lam_lo * uv for tv, uv in zip(tu, u)
        ):
            found_sub = list(u)
        if found_sup is None and all(
            tv <= lam_hi * uv for tv, uv in zip(tu, u)
        ):
            found_sup = list(u)
        if found_sub is not None and found_sup is not None:
            break
        u = [a + b for a, b in zip(tu, u)]
        if it % 32 == 31:
            g = 0
            for v in u:
                g = gcd(g, v)
            if g > 1:
                u = [v // g for v in u]
    if found_sub is None or found_sup is None:
        raise RuntimeError(
            "damped iteration found no eigenvector witnesses; falling back to "
            "the a priori seminorm bound would exceed the iteration budget"
        )
    bounds = []
    for vec in (found_sub, found_sup):
        ratio = Fraction(max(vec), min(vec))
        bounds.append(ln_upper(ratio))
    return max(max(bounds), delta)


def _score(game, p, x, eps):
    """Certified log-domain People score at vector x (indexed by Despot,
    NEG_INF off-support)."""
    terms = [(m, x[l]) for l, m in game.p_edges[p] if x[l] is not NEG_INF]
    if not terms:
        return NEG_INF
    return certified_log_sum_exp(terms, eps)


def _multiplicative_certificates(subgame, res, shrink_bits=(70, 40, 20)):
    """Convert the additive log-domain certificates of an ACMP result into
    exactly verified multiplicative ones.  The witness vectors are rational
    approximations of exp(x) with relative error 2^-80; the levels absorb
    that error and a safety factor, then the inequalities are re-checked in
    exact rational arithmetic."""
    w_vec = tuple(sum(exp_bounds(v, 80)) / 2 for v in res.sub.vec)
    z_vec = tuple(sum(exp_bounds(v, 80)) / 2 for v in res.sup.vec)
    lam_sub_base = exp_bounds(res.sub.lam, 80)[0]
    lam_sup_base = exp_bounds(res.sup.lam, 80)[1]
    sub_cert = sup_cert = None
    for bits in shrink_bits:
        lam = lam_sub_base * (1 - Fraction(1, 2**bits))
        cert = Certificate(lam, w_vec, SUB, multiplicative=True)
        if check_entropy_certificate(subgame, cert):
            sub_cert = cert
            break
    for bits in shrink_bits:
        lam = lam_sup_base * (1 + Fraction(1, 2**bits))
        cert = Certificate(lam, z_vec, SUPER, multiplicative=True)
        if check_entropy_certificate(subgame, cert):
            sup_cert = cert
            break
    if sub_cert is None or sup_cert is None:
        raise RuntimeError("multiplicative certificate conversion failed")
    return sub_cert, sup_cert


def _solve_block(game: EntropyGame, budget: int):
    profile = rank_profile(game, budget)
    brute = brute_force_entropy_values(game, budget, profile=profile)
    delta = _certified_separation(game, profile, brute)
    reg, cands = brute.registry, brute.candidates
    coarse, fine = brute.coarse_tol, brute.fine_tol
    nd = len(game.d_ids)
    best = 0
    for d in range(1, nd):
        if reg.compare(cands[d], cands[best], coarse, fine) > 0:
            best = d
    dmax = [
        d
        for d in range(nd)
        if reg.compare(cands[d], cands[best], coarse, fine) == 0
    ]
    ind = induced_entropy_subgame(game, dmax)
    if ind is None:
        raise RuntimeError("top class candidate is not a dominion")
    v_int = brute.refine(best, delta / 64)
    r_bound = _certified_witness_bound(ind.game, v_int, delta)
    params = SepParams(delta=delta, R=r_bound)
    if params.cap > 10**7:
        raise RuntimeError("certified iteration cap is out of reach")
    oracle = LogDomainOracle(game)
    dom, calls = top_class(oracle, params)
    if set(dom.states) != set(dmax):
        raise RuntimeError(
            "iterative top class disagrees with the enumerated one"
        )
    sub_oracle = restrict(oracle, sorted(dom.states))
    delta2 = delta / 2
    cap2 = 2 * SepParams(delta=delta2, R=r_bound).cap + 16
    res = approximate_constant_mean_payoff(sub_oracle, delta2, cap2)
    sub_cert, sup_cert = _multiplicative_certificates(ind.game, res)
    stats = game.stats()
    lo = max(sub_cert.lam, Fraction(1))
    hi = min(sup_cert.lam, Fraction(stats.n * stats.W))
    interval = RationalInterval(min(lo, hi), hi)

    # strategies: Tribune argmax at the sub witness, Despot argmin at the
    # super witness, certified scores at precision delta/16, ties to the
    # smallest index
    eps_s = delta / 16
    d_set = set(dmax)
    v_p = {
        p
        for p in range(len(game.p_ids))
        if any(l in d_set for l, _ in game.p_edges[p])
    }
    v_t = {
        t
        for t in range(len(game.t_ids))
        if any(p in v_p for p in game.t_edges[t])
    }
    local = {g: i for i, g in enumerate(sorted(dmax))}
    x_full = [NEG_INF] * nd
    y_full = [NEG_INF] * nd
    for g, i in local.items():
        x_full[g] = res.sub.vec[i]
        y_full[g] = res.sup.vec[i]
    tau = {}
    t_scores = {}
    for t in sorted(v_t):
        best_p = None
        best_v = None
        agg = NEG_INF
        for p in game.t_edges[t]:
            if p not in v_p:
                continue
            sx = _score(game, p, x_full, eps_s)
            if best_v is None or sx > best_v:
                best_v = sx
                best_p = p
            sy = _score(game, p, y_full, eps_s)
            if agg is NEG_INF or sy > agg:
                agg = sy
        tau[game.t_ids[t]] = game.p_ids[best_p]
        t_scores[t] = agg
    sigma = {}
    for d in sorted(dmax):
        best_t = None
        best_v = None
        for t in game.d_edges[d]:
            v = t_scores[t]
            if best_v is None or v < best_v:
                best_v = v
                best_t = t
        sigma[game.d_ids[d]] = game.t_ids[best_t]
    block = BlockResult(
        d_ids=tuple(game.d_ids[d] for d in sorted(dmax)),
        t_ids=tuple(game.t_ids[t] for t in sorted(v_t)),
        p_ids=tuple(game.p_ids[p] for p in sorted(v_p)),
        subgame=ind.game,
        interval=interval,
        sub=sub_cert,
        sup=sup_cert,
        delta=delta,
        R=r_bound,
        iterations=res.iterations,
        oracle_calls=calls + sub_oracle.calls,
    )
    return block, sigma, tau


def _remove_block(game: EntropyGame, block: BlockResult):
    """Residual game after peeling a block: drop its Despots, its Tribunes
    (every Tribune with a People successor feeding the block) and its People
    (every People with an edge into the block)."""
    d_keep = [s for s in game.d_ids if s not in set(block.d_ids)]
    t_keep = [s for s in game.t_ids if s not in set(block.t_ids)]
    p_keep = [s for s in game.p_ids if s not in set(block.p_ids)]
    if not d_keep:
        if t_keep or p_keep:
            raise RuntimeError(
                "decomposition left orphan Tribune/People states"
            )
        return None
    try:
        return subgraph_on(game, d_keep, t_keep, p_keep)
    except GameFormatError as exc:
        raise RuntimeError(f"residual game is malformed: {exc}") from exc


def solve_entropy_game(game: EntropyGame, budget: int = 10**6) -> EntropySolution:
    """Per-state value brackets, uniformly optimal positional strategies, and
    exactly verified multiplicative certificates, by peeling top classes:
    solve the top class of the current residual game as a constant-value
    block, remove it together with the Tribunes and People attached to it,
    and recurse."""
    game.validate()
    current = game
    blocks = []
    values = {}
    sigma = {}
    tau = {}
    for _ in range(len(game.d_ids) + 1):
        block, blk_sigma, blk_tau = _solve_block(current, budget)
        blocks.append(block)
        for did in block.d_ids:
            values[did] = block.interval
        sigma.update(blk_sigma)
        tau.update(blk_tau)
        current = _remove_block(current, block)
        if current is None:
            break
    else:
        raise RuntimeError("decomposition failed to terminate")
    if set(values) != set(game.d_ids):
        raise RuntimeError("decomposition did not cover every Despot state")
    return EntropySolution(
        values=values, sigma=sigma, tau=tau, blocks=tuple(blocks)
    )


# ---------------------------------------------------------------------------
# file format and random instances


def parse_entropy(obj) -> EntropyGame:
    if not isinstance(obj, dict) or obj.get("type") != "entropy":
        raise GameFormatError('expected an object with "type": "entropy"')
    try:
        d_ids = tuple(obj["d_states"])
        t_ids = tuple(obj["t_states"])
        p_ids = tuple(obj["p_states"])
        records = obj["edges"]
    except KeyError as exc:
        raise GameFormatError(f"missing key {exc}") from exc
    all_ids = list(d_ids) + list(t_ids) + list(p_ids)
    if len(set(all_ids)) != len(all_ids):
        raise GameFormatError("state identifiers must be unique across kinds")
    d_index = {s: j for j, s in enumerate(d_ids)}
    t_index = {s: j for j, s in enumerate(t_ids)}
    p_index = {s: j for j, s in enumerate(p_ids)}
    d_edges = [[] for _ in d_ids]
    t_edges = [[] for _ in t_ids]
    p_edges = [[] for _ in p_ids]
    seen = set()
    for rec in records:
        src, dst = rec.get("from"), rec.get("to")
        if (src, dst) in seen:
            raise GameFormatError(f"duplicate edge {src!r} -> {dst!r}")
        seen.add((src, dst))
        if src in d_index and dst in t_index:
            if "m" in rec:
                raise GameFormatError(
                    "multiplicities belong on People edges only"
                )
            d_edges[d_index[src]].append(t_index[dst])
        elif src in t_index and dst in p_index:
            if "m" in rec:
                raise GameFormatError(
                    "multiplicities belong on People edges only"
                )
            t_edges[t_index[src]].append(p_index[dst])
        elif src in p_index and dst in d_index:
            p_edges[p_index[src]].append((d_index[dst], int(rec.get("m", 1))))
        else:
            raise GameFormatError(f"edge record {rec!r} violates alternation")
    return make_entropy_game(d_ids, t_ids, p_ids, d_edges, t_edges, p_edges)


def entropy_to_json(game: EntropyGame) -> dict:
    edges = []
    for j, row in enumerate(game.d_edges):
        for t in row:
            edges.append({"from": game.d_ids[j], "to": game.t_ids[t]})
    for j, row in enumerate(game.t_edges):
        for p in row:
            edges.append({"from": game.t_ids[j], "to": game.p_ids[p]})
    for j, row in enumerate(game.p_edges):
        for l, m in row:
            edges.append({"from": game.p_ids[j], "to": game.d_ids[l], "m": m})
    return {
        "type": "entropy",
        "d_states": list(game.d_ids),
        "t_states": list(game.t_ids),
        "p_states": list(game.p_ids),
        "edges": edges,
    }


def load_entropy(path) -> EntropyGame:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_entropy(json.load(fh))


def random_entropy_game(
    rng: random.Random,
    max_d: int = 3,
    max_t: int = 3,
    max_p: int = 3,
    w_max: int = 3,
) -> EntropyGame:
    n_d = rng.randint(1, max_d)
    n_t = rng.randint(1, max_t)
    n_p = rng.randint(1, max_p)
    d_edges = [
        rng.sample(range(n_t), rng.randint(1, n_t)) for _ in range(n_d)
    ]
    t_edges = [
        rng.sample(range(n_p), rng.randint(1, n_p)) for _ in range(n_t)
    ]
    p_edges = []
    for _ in range(n_p):
        targets = rng.sample(range(n_d), rng.randint(1, n_d))
        p_edges.append([(l, rng.randint(1, w_max)) for l in targets])
    return make_entropy_game(
        tuple(f"d{j}" for j in range(n_d)),
        tuple(f"t{j}" for j in range(n_t)),
        tuple(f"p{j}" for j in range(n_p)),
        d_edges,
        t_edges,
        p_edges,
    )
