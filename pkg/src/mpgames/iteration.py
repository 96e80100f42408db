"""Generic value-iteration procedures: winner decision (exact and
finite-precision), constant-value approximation with certificates, and
certificate construction from normalized orbits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .numeric import (
    NEG_INF,
    RationalInterval,
    bottom,
    top,
    vec_add_scalar,
    vec_inf,
    vec_sup,
    zeros,
)

SUB = "sub"
SUPER = "super"

# store the orbit for the certificate pass when n*len fits, replay otherwise
ORBIT_MEMORY_BUDGET = 200_000


@dataclass(frozen=True)
class Certificate:
    """(lam, vec) witnessing a Collatz-Wielandt inequality.

    Additive form (default): sub means lam + vec <= F(vec) coordinatewise,
    super means lam + vec >= F(vec).  The entropy backend re-issues its
    certificates in multiplicative form (lam * vec <= T(vec)), flagged by
    `multiplicative`, so they stay machine-checkable in exact rationals."""

    lam: Fraction
    vec: tuple
    direction: str
    multiplicative: bool = False


@dataclass(frozen=True)
class WinnerVerdict:
    outcome: str  # "MinWinsAll" | "MaxWinsAll"
    iterations: int
    witness: tuple


@dataclass(frozen=True)
class Exhausted:
    iterations: int
    witness: tuple


@dataclass(frozen=True)
class ConstantValueResult:
    interval: RationalInterval
    sub: Certificate
    sup: Certificate
    iterations: int


class IterationCapExceeded(RuntimeError):
    pass


def value_iteration(oracle, max_iter: int):
    """Iterate u <- F(u) from 0 until top(u) <= 0 (Min wins everywhere) or
    bottom(u) >= 0 (Max wins everywhere).  Requires an exact oracle (eps=0
    evaluation).  Returns Exhausted (with the last iterate) past max_iter."""
    u = zeros(oracle.n)
    eps0 = Fraction(0)
    for it in range(1, max_iter + 1):
        u = oracle.eval(u, eps0)
        if top(u) <= 0:
            return WinnerVerdict("MinWinsAll", it, u)
        if bottom(u) >= 0:
            return WinnerVerdict("MaxWinsAll", it, u)
    return Exhausted(max_iter, u)


def fp_value_iteration(oracle, eps: Fraction, max_iter: int):
    """Finite-precision winner decision: stop when l*eps + top(u) <= 0 or
    -l*eps + bottom(u) >= 0.  Correct whenever the lower CW number exceeds
    2*eps or the upper one is below -2*eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    u = zeros(oracle.n)
    for it in range(1, max_iter + 1):
        u = oracle.eval(u, eps)
        if it * eps + top(u) <= 0:
            return WinnerVerdict("MinWinsAll", it, u)
        if -it * eps + bottom(u) >= 0:
            return WinnerVerdict("MaxWinsAll", it, u)
    return Exhausted(max_iter, u)


def build_certificates(orbit, lam_lo: Fraction, lam_hi: Fraction, eps: Fraction):
    """From orbit[i] = F~^i(0), i = 0..l-1, with bottom(F~^l(0)) >= lam_lo*l
    and top(F~^l(0)) <= lam_hi*l, build

        u_hat = sup_i (-i*lam_lo + orbit[i])   (sub witness)
        u_bar = inf_i (-i*lam_hi + orbit[i])   (super witness)

    and return the certificates (lam_lo - eps, u_hat, sub) and
    (lam_hi + eps, u_bar, super)."""
    if not orbit:
        raise ValueError("empty orbit")
    x = orbit[0]
    y = orbit[0]
    for i in range(1, len(orbit)):
        x = vec_sup(x, vec_add_scalar(-i * lam_lo, orbit[i]))
        y = vec_inf(y, vec_add_scalar(-i * lam_hi, orbit[i]))
    return (
        Certificate(lam_lo - eps, x, SUB),
        Certificate(lam_hi + eps, y, SUPER),
    )


def approximate_constant_mean_payoff(oracle, delta: Fraction, max_iter: int):
    """For an operator with state-independent mean payoff, return an interval
    of width <= delta containing it, with verifiable certificates.

    First loop: u <- eval(u, delta/8) until top(u) - bottom(u) <= (3/4)*delta*l.
    Then kappa = bottom(u)/l, lam = top(u)/l, and the second pass rebuilds the
    orbit to assemble the sub/super witness vectors."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    eps = delta / 8
    threshold = Fraction(3, 4) * delta

    fast = getattr(oracle, "gap_loop", None)
    if fast is not None:
        u, ell, hit = fast(eps, delta, max_iter)
        if not hit:
            raise IterationCapExceeded(f"no convergence within {max_iter} iterations")
    else:
        u = zeros(oracle.n)
        ell = 0
        while True:
            u = oracle.eval(u, eps)
            ell += 1
            if top(u) - bottom(u) <= threshold * ell:
                break
            if ell >= max_iter:
                raise IterationCapExceeded(
                    f"no convergence within {max_iter} iterations"
                )
    kappa = Fraction(bottom(u)) / ell
    lam = Fraction(top(u)) / ell

    fast2 = getattr(oracle, "replay_loop", None)
    if fast2 is not None:
        x, y = fast2(eps, ell, kappa, lam)
        sub = Certificate(kappa - eps, x, SUB)
        sup = Certificate(lam + eps, y, SUPER)
    else:
        sub, sup = _certificates_by_replay(oracle, eps, ell, kappa, lam)
    interval = RationalInterval(kappa - eps, lam + eps)
    return ConstantValueResult(interval, sub, sup, ell)


def _certificates_by_replay(oracle, eps, ell, kappa, lam):
    store = oracle.n * ell <= ORBIT_MEMORY_BUDGET
    if store:
        orbit = [zeros(oracle.n)]
        v = orbit[0]
        for _ in range(ell - 1):
            v = oracle.eval(v, eps)
            orbit.append(v)
        return build_certificates(orbit, kappa, lam, eps)
    # replay without storing
    v = zeros(oracle.n)
    x = v
    y = v
    for i in range(1, ell):
        v = oracle.eval(v, eps)
        x = vec_sup(x, vec_add_scalar(-i * kappa, v))
        y = vec_inf(y, vec_add_scalar(-i * lam, v))
    return (
        Certificate(kappa - eps, x, SUB),
        Certificate(lam + eps, y, SUPER),
    )
