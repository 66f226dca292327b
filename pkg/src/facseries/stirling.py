"""Exact Stirling numbers of the first and second kind.

Conventions (signed first kind):

    (z-n+1)_n = sum_k s1(n, k) z^k          rising factorial of z-n+1
    z^n       = sum_k s2(n, k) (z-k+1)_k

where ``(x)_m = x (x+1) ... (x+m-1)`` is the Pochhammer symbol.  Both
triangles are built by the standard recurrences

    s1(n+1, k) = s1(n, k-1) - n s1(n, k)
    s2(n+1, k) = s2(n, k-1) + k s2(n, k)

seeded with s1(0,0) = s2(0,0) = 1, and are mutually orthogonal:

    sum_{v=k}^{n} s1(n, v) s2(v, k) = delta_{nk}.

Tables grow lazily and are immutable once built, so a cache can be shared
freely between threads after construction.
"""

from __future__ import annotations

from .errors import DomainError

__all__ = [
    "StirlingCache",
    "stirling1",
    "stirling2",
    "orthogonality_defect",
    "pochhammer_coeffs",
]


class StirlingCache:
    """Triangular table of Stirling numbers of one kind.

    ``rows[n][k]`` holds the exact integer value for 0 <= k <= n.  Rows are
    appended on demand; existing rows are never mutated.
    """

    def __init__(self, kind: int):
        if kind not in (1, 2):
            raise DomainError(f"Stirling kind must be 1 or 2, got {kind}")
        self.kind = kind
        self._rows: list[list[int]] = [[1]]

    @property
    def n_max(self) -> int:
        return len(self._rows) - 1

    def _extend(self, n: int) -> None:
        while self.n_max < n:
            m = self.n_max
            prev = self._rows[m]
            row = [0] * (m + 2)
            for k in range(m + 2):
                acc = prev[k - 1] if 1 <= k <= m + 1 else 0
                if k <= m:
                    acc += (-m if self.kind == 1 else k) * prev[k]
                row[k] = acc
            self._rows.append(row)

    def row(self, n: int) -> list[int]:
        if n < 0:
            raise DomainError(f"row index must be >= 0, got {n}")
        self._extend(n)
        return list(self._rows[n])

    def value(self, n: int, k: int) -> int:
        if not 0 <= k <= n:
            raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
        self._extend(n)
        return self._rows[n][k]


_FIRST = StirlingCache(1)
_SECOND = StirlingCache(2)


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s1(n, k)."""
    return _FIRST.value(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind s2(n, k)."""
    return _SECOND.value(n, k)


def orthogonality_defect(n: int, k: int) -> int:
    """sum_{v=k}^{n} s1(n, v) s2(v, k) - delta_{nk}; zero for every valid (n, k)."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    total = sum(stirling1(n, v) * stirling2(v, k) for v in range(k, n + 1))
    return total - (1 if n == k else 0)


def pochhammer_coeffs(n: int) -> list[int]:
    """Coefficients of z^v in the rising factorial (z)_n, all nonnegative.

    Equal to (-1)^(n-v) s1(n, v), i.e. the unsigned first-kind triangle.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    row = _FIRST.row(n)
    return [(-1) ** (n - v) * row[v] for v in range(n + 1)]
