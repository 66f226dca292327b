"""Levin and Weniger (S) sequence transformations.

Both arise from the model sequence s_n = s + omega_n z_n by annihilating the
correction term z_n with a weighted k-th forward difference:

    Levin:   z_n a truncated series in powers of 1/(beta+n),
             weights (beta+n+j)^(k-1) / (beta+n+k)^(k-1)
    Weniger: z_n a truncated factorial series in beta+n,
             weights (beta+n+j)_(k-1) / (beta+n+k)_(k-1)

The transforms are evaluated directly from the binomial sums at working
precision (no recursive scheme); each table cell (k, n) consumes
s_n..s_{n+k} and omega_n..omega_{n+k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

import mpmath
from mpmath import mp

from .errors import DomainError, EstimateError, InstabilityError
from .series import PrecisionContext, Real, to_mpf

__all__ = [
    "TransformInput",
    "levin",
    "weniger_s",
    "remainder_estimates",
    "transform_table",
]


@dataclass(frozen=True)
class TransformInput:
    """Partial sums, remainder estimates, and the shift parameter beta > 0."""

    s: tuple
    omega: tuple
    beta: Real = 1

    def __post_init__(self):
        if len(self.omega) < len(self.s):
            raise DomainError("need a remainder estimate for every partial sum")
        if float(self.beta) <= 0:
            raise DomainError(f"beta must be > 0, got {self.beta}")

    @classmethod
    def from_terms(
        cls, terms: Sequence, strategy: str = "first_neglected", beta: Real = 1
    ) -> "TransformInput":
        s = []
        acc = mp.mpf(0)
        for t in terms:
            acc = acc + to_mpf(t)
            s.append(acc)
        omega = remainder_estimates(terms, strategy, beta)
        n = min(len(s), len(omega))
        return cls(tuple(s[:n]), tuple(omega[:n]), beta)


def remainder_estimates(terms: Sequence, strategy: str, beta: Real = 1) -> tuple:
    """Build omega_n from the term sequence a_n.

    first_neglected: omega_n = a_{n+1} (natural for alternating series; the
    returned sequence is one shorter than the input).
    scaled_term:     omega_n = (beta+n) a_n.
    """
    ts = [to_mpf(t) for t in terms]
    if strategy == "first_neglected":
        out = ts[1:]
    elif strategy == "scaled_term":
        b = to_mpf(beta)
        out = [(b + n) * t for n, t in enumerate(ts)]
    else:
        raise DomainError(f"unknown remainder-estimate strategy {strategy!r}")
    if any(w == 0 for w in out):
        raise EstimateError("zero term produced a zero remainder estimate")
    return tuple(out)


def _weighted_ratio(
    inp: TransformInput,
    k: int,
    n: int,
    weight: Callable,
    prec: PrecisionContext,
) -> mpmath.mpf:
    if k < 0 or n < 0:
        raise DomainError(f"need k, n >= 0, got k={k}, n={n}")
    if n + k >= len(inp.s):
        raise DomainError(
            f"cell (k={k}, n={n}) needs {n + k + 1} entries, have {len(inp.s)}"
        )
    with prec.workdps(10):
        beta = to_mpf(inp.beta)
        num = mp.mpf(0)
        den = mp.mpf(0)
        scale = mp.mpf(0)
        for j in range(k + 1):
            w = (-1) ** j * comb(k, j) * weight(beta, n, j, k)
            omega = to_mpf(inp.omega[n + j])
            if omega == 0:
                raise EstimateError(f"omega[{n + j}] is zero")
            num += w * to_mpf(inp.s[n + j]) / omega
            den += w / omega
            scale = max(scale, abs(w / omega))
        if abs(den) < prec.tol(6) * scale:
            raise InstabilityError(
                f"denominator vanished at (k={k}, n={n}): |den|={abs(den)}"
            )
        return num / den


def levin(
    inp: TransformInput, k: int, n: int = 0, prec: PrecisionContext = PrecisionContext()
) -> mpmath.mpf:
    """Levin transformation L_k^(n); exact for power-type correction terms."""

    def weight(beta, n_, j, k_):
        if k_ <= 1:
            return mp.mpf(1)
        return ((beta + n_ + j) / (beta + n_ + k_)) ** (k_ - 1)

    return _weighted_ratio(inp, k, n, weight, prec)


def weniger_s(
    inp: TransformInput, k: int, n: int = 0, prec: PrecisionContext = PrecisionContext()
) -> mpmath.mpf:
    """Weniger S transformation S_k^(n); exact for factorial-type correction terms."""

    def weight(beta, n_, j, k_):
        if k_ <= 1:
            return mp.mpf(1)
        return mp.rf(beta + n_ + j, k_ - 1) / mp.rf(beta + n_ + k_, k_ - 1)

    return _weighted_ratio(inp, k, n, weight, prec)


_METHODS = {"levin": levin, "weniger": weniger_s}


def transform_table(
    inp: TransformInput,
    method: str,
    k_max: int,
    n: int = 0,
    prec: PrecisionContext = PrecisionContext(),
) -> dict:
    """Column of transform values {k: T_k^(n)} for k = 0..k_max."""
    if method not in _METHODS:
        raise DomainError(f"unknown method {method!r}; choose from {sorted(_METHODS)}")
    fn = _METHODS[method]
    return {k: fn(inp, k, n, prec) for k in range(k_max + 1)}
