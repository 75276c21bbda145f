"""
Counting Tamari intervals three ways.

* ``dp_tables``: dynamic programming over focused derivations, where
  ``r[n][k]`` (resp. ``l[n][k]``) counts focused derivations with a goal of
  size ``n`` and an irreducible (resp. arbitrary) context of length ``k``.
* ``series_solve``: fixed-point iteration of the functional equations
  ``R = z R L + x`` and ``L = x (R(x) - R(1)) / (x - 1)`` on truncated
  bivariate series.
* ``tutte_formula``: the closed form ``2 (4n+1)! / ((n+1)! (3n+2)!)``.

All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class CountTable:
    """``r[n][k]`` and ``l[n][k]`` for ``0 <= n <= N``; rows have length ``n + 2`` (index 0 unused)."""

    r: tuple
    l: tuple

    @property
    def order(self) -> int:
        return len(self.r) - 1

    def intervals(self, n: int) -> int:
        return self.l[n][1]


def dp_tables(N: int) -> CountTable:
    if N < 0:
        raise ValueError("N must be non-negative")
    r: list[list[int]] = []
    l: list[list[int]] = []
    for n in range(N + 1):
        row = [0] * (n + 2)
        if n == 0:
            row[1] = 1  # atomic identity
        # R-foc: irreducible G |- A (size a) with D |- B (size b), a + b + 1 = n
        for a in range(n):
            ra, lb = r[a], l[n - 1 - a]
            for i in range(1, len(ra)):
                ri = ra[i]
                if ri:
                    for j in range(1, len(lb)):
                        row[i + j] += ri * lb[j]
        lrow = [0] * (n + 3)
        for k in range(n + 1, 0, -1):
            lrow[k] = lrow[k + 1] + row[k]
        r.append(row)
        l.append(lrow[: n + 2])
    return CountTable(tuple(map(tuple, r)), tuple(map(tuple, l)))


def intervals(n: int) -> int:
    """Number of intervals in the Tamari lattice of trees with ``n`` products."""
    return dp_tables(n).intervals(n)


def interval_counts(N: int) -> list:
    table = dp_tables(N)
    return [table.intervals(n) for n in range(N + 1)]


# ---------- truncated bivariate series ----------
#
# A series is a list of rows, row n holding the x-coefficients of z^n.


@dataclass(frozen=True)
class Series:
    rows: tuple

    def __getitem__(self, nk):
        n, k = nk
        row = self.rows[n]
        return row[k] if 0 <= k < len(row) else 0

    @property
    def order(self) -> int:
        return len(self.rows) - 1

    def at_one(self) -> list:
        """Coefficients of the univariate series ``S(z, 1)``."""
        return [sum(row) for row in self.rows]

    def x_coefficient(self, k: int) -> list:
        return [self[n, k] for n in range(len(self.rows))]


def _trim(row: list) -> list:
    while len(row) > 1 and row[-1] == 0:
        row.pop()
    return row


def _add(p: list, q: list) -> list:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def difference_quotient(p: list) -> list:
    """Coefficients of ``(p(x) - p(1)) / (x - 1)``: the k-th is the sum of ``p_j`` for ``j > k``."""
    out = [0] * max(len(p) - 1, 1)
    acc = 0
    for k in range(len(p) - 1, 0, -1):
        acc += p[k]
        out[k - 1] = acc
    return out


def _shift_x(p: list) -> list:
    return [0] + list(p)


def _mul_z(P: list, Q: list, N: int) -> list:
    """``z * P * Q`` truncated at z-degree ``N``."""
    out = [[0] for _ in range(N + 1)]
    for d in range(1, N + 1):
        acc: list[int] = [0]
        for a in range(d):
            p, q = P[a], Q[d - 1 - a]
            if not any(p) or not any(q):
                continue
            # object dtype keeps Python's exact integers
            prod = np.convolve(np.array(p, dtype=object), np.array(q, dtype=object))
            acc = _add(acc, [int(c) for c in prod])
        out[d] = _trim(acc)
    return out


def _L_from_R(R: list) -> list:
    return [_trim(_shift_x(difference_quotient(row))) for row in R]


def series_solve(N: int) -> tuple:
    """``(R, L)`` truncated at z-degree ``N`` by iterating from ``R = x``.

    Round ``t`` settles the z^(t+1) coefficients; coefficients of higher
    degree are not meaningful yet, so each round works at truncation order
    ``t + 1`` and checks that the lower degrees it recomputes did not move.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    R = [[0, 1]]
    for t in range(N):
        nxt = _mul_z(R + [[0]], _L_from_R(R + [[0]]), t + 1)
        nxt[0] = _add(nxt[0], [0, 1])
        nxt = [_trim(row) for row in nxt]
        if nxt[: t + 1] != R:
            raise ArithmeticError(f"series iteration did not stabilize below z^{t + 1}")
        R = nxt
    L = _L_from_R(R)
    return Series(tuple(map(tuple, R))), Series(tuple(map(tuple, L)))


def iterate_once(R: Series) -> Series:
    """One full round ``R -> z R L(R) + x`` at the same truncation order."""
    rows = [list(row) for row in R.rows]
    N = len(rows) - 1
    prod = _mul_z(rows, _L_from_R(rows), N)
    return Series(tuple(tuple(_trim(_add(prod[d], [0, 1] if d == 0 else [0]))) for d in range(N + 1)))


# ---------- closed form ----------


def tutte_formula(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    num = 2 * factorial(4 * n + 1)
    den = factorial(n + 1) * factorial(3 * n + 2)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


# ---------- functional equation for Phi = R - x ----------


@dataclass(frozen=True)
class Mismatch:
    n: int
    k: int
    lhs: int
    rhs: int

    def __str__(self):
        return f"z^{self.n} x^{self.k}: {self.lhs} != {self.rhs}"


def chapoton_check(N: int, R: Optional[Series] = None) -> Optional[Mismatch]:
    """Check ``Phi = x^2 z (1 + Phi/x)(1 + (Phi - Phi(1))/(x - 1))`` with ``Phi = R - x``.

    Compared coefficient-wise up to z-degree ``N``; returns the first
    mismatching coefficient, or None.
    """
    if R is None:
        R, _ = series_solve(N)
    phi_rows = [list(R.rows[n]) if n < len(R.rows) else [0] for n in range(N + 1)]
    if len(phi_rows[0]) > 1:
        phi_rows[0][1] -= 1
    # x^2 (1 + Phi/x) = x^2 + x Phi, which is a polynomial even if Phi has an x^0 term
    left = [_add([0, 0, 1] if n == 0 else [0], _shift_x(row)) for n, row in enumerate(phi_rows)]
    right = [_add([1] if n == 0 else [0], difference_quotient(row)) for n, row in enumerate(phi_rows)]
    rhs = _mul_z(left, right, N)
    for n in range(N + 1):
        a, b = phi_rows[n], rhs[n]
        for k in range(max(len(a), len(b))):
            ca = a[k] if k < len(a) else 0
            cb = b[k] if k < len(b) else 0
            if ca != cb:
                return Mismatch(n, k, ca, cb)
    return None
