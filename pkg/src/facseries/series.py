"""Core series representations and Pochhammer/beta-term arithmetic.

A factorial series is written here as

    Omega(z) = sum_n d_n / (z)_{n+1}

with unreduced coefficients d_n; the reduced coefficient a_n = d_n / n!
(the form ``sum_n a_n n!/(z)_{n+1}``) is derived on demand, never stored.
All coefficients are exact ``fractions.Fraction`` values; rounding happens
only inside the evaluation routines, which work at an explicitly passed
decimal precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Iterable, Union

import mpmath
from mpmath import mp

from .errors import DomainError, IntegrityError, PoleError

__all__ = [
    "Real",
    "PrecisionContext",
    "SeriesKind",
    "FormalSeries",
    "MomentSequence",
    "to_mpf",
    "pochhammer",
    "factorial_term",
    "forward_difference_term",
    "term_decay_estimate",
]

Real = Union[int, float, str, Fraction, mpmath.mpf]


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision for every approximate real computation."""

    digits: int = 64

    def __post_init__(self):
        if self.digits < 16:
            raise DomainError(f"precision must be >= 16 digits, got {self.digits}")

    def workdps(self, extra: int = 0):
        """Context manager setting mpmath's decimal precision (plus guard digits)."""
        return mp.workdps(self.digits + extra)

    def tol(self, offset: int) -> mpmath.mpf:
        """10^(offset - digits), the usual relative tolerance scale."""
        with self.workdps():
            return mp.mpf(10) ** (offset - self.digits)


def to_mpf(x: Real) -> mpmath.mpf:
    """Convert to mpf at the current mpmath precision (Fractions stay exact)."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


class SeriesKind(str, Enum):
    POWER = "power"            # sum_n g_n z^n
    INVERSE_POWER = "inverse_power"  # sum_n c_n / z^(n+1)
    FACTORIAL = "factorial"    # sum_n d_n / (z)_(n+1)


def _as_fractions(coeffs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coeffs)


@dataclass(frozen=True)
class FormalSeries:
    """Tagged list of exact series coefficients (index = term order)."""

    kind: SeriesKind
    coeffs: tuple[Fraction, ...]

    def __init__(self, kind: Union[SeriesKind, str], coeffs: Iterable):
        object.__setattr__(self, "kind", SeriesKind(kind))
        object.__setattr__(self, "coeffs", _as_fractions(coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def reduced_coeffs(self) -> tuple[Fraction, ...]:
        """a_n = d_n / n! for a factorial series."""
        if self.kind is not SeriesKind.FACTORIAL:
            raise DomainError("reduced coefficients only defined for factorial series")
        return tuple(d / factorial(n) for n, d in enumerate(self.coeffs))

    # --- JSON wire format: integers as decimal strings, exact over the wire ---

    def to_json_obj(self) -> dict:
        return {
            "schema": "facseries/1",
            "kind": self.kind.value,
            "coeffs": [
                {"num": str(c.numerator), "den": str(c.denominator)}
                for c in self.coeffs
            ],
        }

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_obj(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FormalSeries":
        try:
            kind = obj["kind"]
            coeffs = [Fraction(int(c["num"]), int(c["den"])) for c in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise IntegrityError(f"malformed series object: {exc}") from exc
        return cls(kind, coeffs)

    @classmethod
    def load(cls, path) -> "FormalSeries":
        with open(path) as fh:
            return cls.from_json_obj(json.load(fh))


@dataclass(frozen=True)
class MomentSequence:
    """Moments mu_0, mu_1, ... of a Stieltjes measure; all must be positive."""

    moments: tuple[Fraction, ...]

    def __init__(self, moments: Iterable):
        ms = _as_fractions(moments)
        if any(m <= 0 for m in ms):
            raise DomainError("Stieltjes moments must be positive and finite")
        object.__setattr__(self, "moments", ms)

    def __len__(self) -> int:
        return len(self.moments)

    def stieltjes_series(self) -> FormalSeries:
        """The (generally divergent) series sum_n (-1)^n mu_n / z^(n+1)."""
        return FormalSeries(
            SeriesKind.INVERSE_POWER,
            [(-1) ** n * m for n, m in enumerate(self.moments)],
        )


# --- Pochhammer / beta-term arithmetic ------------------------------------


def _check_pole(z, n: int, prec: PrecisionContext) -> None:
    """Raise if z is within 10^(4-P) of a pole of 1/(z)_{n+1}."""
    tol = prec.tol(4)
    for i in range(n + 1):
        if abs(z + i) < tol:
            raise PoleError(f"z={z} is within {tol} of the pole at {-i}")


def pochhammer(z: Real, n: int, prec: PrecisionContext = PrecisionContext()) -> mpmath.mpf:
    """Rising factorial (z)_n = z (z+1) ... (z+n-1); empty product is 1."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    with prec.workdps():
        zv = to_mpf(z)
        out = mp.mpf(1)
        for i in range(n):
            out *= zv + i
        return out


def factorial_term(
    z: Real, n: int, d_n: Real, prec: PrecisionContext = PrecisionContext()
) -> mpmath.mpf:
    """d_n / (z)_{n+1}, the n-th term of a factorial series at z."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    with prec.workdps():
        zv = to_mpf(z)
        _check_pole(zv, n, prec)
        return to_mpf(d_n) / pochhammer(zv, n + 1, prec)


def forward_difference_term(
    z: Real, n: int, k: int, prec: PrecisionContext = PrecisionContext()
) -> mpmath.mpf:
    """k-th forward difference (in z) of n!/(z)_{n+1}.

    Computed both by iterated first differences and by the closed form
    (-1)^k (n+k)!/(z)_{n+k+1}; the two routes must agree to 10^(4-P)
    relative, otherwise an IntegrityError is raised.
    """
    if n < 0 or k < 0:
        raise DomainError(f"need n, k >= 0, got n={n}, k={k}")
    with prec.workdps(10):
        zv = to_mpf(z)
        _check_pole(zv, n + k, prec)
        closed = (-1) ** k * factorial(n + k) / pochhammer(zv, n + k + 1, prec)
        # iterated differences of f(z) = n!/(z)_{n+1}
        vals = [factorial(n) / pochhammer(zv + j, n + 1, prec) for j in range(k + 1)]
        for _ in range(k):
            vals = [b - a for a, b in zip(vals, vals[1:])]
        iterated = vals[0]
        rel = abs(iterated - closed) / abs(closed) if closed != 0 else abs(iterated)
        if rel > prec.tol(4):
            raise IntegrityError(
                f"difference identity violated at z={z}, n={n}, k={k}: rel={rel}"
            )
        return closed


def term_decay_estimate(
    z: Real, n: int, prec: PrecisionContext = PrecisionContext()
) -> mpmath.mpf:
    """Predicted magnitude n^(-z) of n!/(z)_{n+1} for large n (diagnostics only)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    with prec.workdps():
        return mp.mpf(n) ** (-to_mpf(z))
