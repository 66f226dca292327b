"""Pade approximants with exact rational coefficients.

The [L/M] approximant to sum_k c_k z^k is num(z)/den(z) with deg num <= L,
deg den <= M, den(0) = 1, and num/den matching the input series through
order L+M.  The denominator solves the Toeplitz system

    sum_{j=0}^{M} b_j c_{L+i-j} = 0,   i = 1..M,   b_0 = 1,

by Gaussian elimination over Fractions, so the match-through-order property
is exact, not approximate.  Singular systems raise DegeneracyError carrying
the largest denominator degree that is solvable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mp

from .errors import DegeneracyError, DomainError, PoleError
from .series import PrecisionContext, Real, to_mpf

__all__ = ["PadeApprox", "pade_construct", "pade_eval"]


@dataclass(frozen=True)
class PadeApprox:
    """Rational function [L/M] as exact numerator/denominator coefficient vectors."""

    num: tuple[Fraction, ...]  # length L+1
    den: tuple[Fraction, ...]  # length M+1, den[0] == 1

    @property
    def L(self) -> int:
        return len(self.num) - 1

    @property
    def M(self) -> int:
        return len(self.den) - 1

    def taylor(self, order: int) -> tuple[Fraction, ...]:
        """Exact power-series coefficients of num/den through the given order."""
        out: list[Fraction] = []
        for k in range(order + 1):
            acc = self.num[k] if k <= self.L else Fraction(0)
            for j in range(1, min(k, self.M) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc)  # den[0] == 1
        return tuple(out)


def _solve_exact(a: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination with exact pivoting; None if singular."""
    m = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(a)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / pv
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][m] / aug[i][i] for i in range(m)]


def _try_denominator(c: Sequence[Fraction], L: int, M: int) -> list[Fraction] | None:
    def coeff(k: int) -> Fraction:
        return c[k] if 0 <= k < len(c) else Fraction(0)

    if M == 0:
        return [Fraction(1)]
    a = [[coeff(L + i - j) for j in range(1, M + 1)] for i in range(1, M + 1)]
    rhs = [-coeff(L + i) for i in range(1, M + 1)]
    sol = _solve_exact(a, rhs)
    if sol is None:
        return None
    return [Fraction(1)] + sol


def pade_construct(coeffs: Sequence, L: int, M: int) -> PadeApprox:
    """[L/M] approximant from at least L+M+1 leading series coefficients."""
    if L < 0 or M < 0:
        raise DomainError(f"need L, M >= 0, got L={L}, M={M}")
    c = [Fraction(v) for v in coeffs]
    if len(c) < L + M + 1:
        raise DomainError(f"[{L}/{M}] needs {L + M + 1} coefficients, have {len(c)}")
    den = _try_denominator(c, L, M)
    if den is None:
        largest = next(
            (mm for mm in range(M - 1, -1, -1) if _try_denominator(c, L, mm) is not None),
            0,
        )
        raise DegeneracyError(
            f"singular [{L}/{M}] system; largest solvable denominator degree is {largest}",
            largest_m=largest,
        )
    num = [
        sum((den[j] * c[k - j] for j in range(min(k, M) + 1)), Fraction(0))
        for k in range(L + 1)
    ]
    return PadeApprox(num=tuple(num), den=tuple(den))


def pade_eval(p: PadeApprox, z: Real, prec: PrecisionContext = PrecisionContext()) -> mpmath.mpf:
    """Horner evaluation of num(z)/den(z) at working precision."""
    with prec.workdps():
        zv = to_mpf(z)
        num = _horner(p.num, zv)
        den = _horner(p.den, zv)
        if abs(den) < prec.tol(4):
            raise PoleError(f"denominator {den} vanishes to working precision at z={z}")
        return num / den


def _horner(coeffs: Sequence[Fraction], z: mpmath.mpf) -> mpmath.mpf:
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * z + to_mpf(c)
    return acc
