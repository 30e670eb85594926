"""Smith normal form over Z and the invariant-factor solution count.

The reduction uses only elementary unimodular row/column operations on exact
integers; the pivot is always a minimal-absolute-value nonzero entry, ties
broken by position, so the run is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import UnsupportedShapeError
from .intarith import nary_lcm
from .report import CountReport
from .systems import CongruenceSystem

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SnfResult:
    """Diagonalization U A V = S with U, V unimodular.

    invariant_factors are the positive diagonal entries e_1 | e_2 | ... | e_r;
    rank is r.
    """

    invariant_factors: tuple[int, ...]
    rank: int
    transforms: tuple[Matrix, Matrix]

    def __post_init__(self) -> None:
        if any(e <= 0 for e in self.invariant_factors):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if self.rank != len(self.invariant_factors):
            raise ValueError("rank must equal the number of invariant factors")


def lift_to_common_modulus(
    system: CongruenceSystem,
) -> tuple[Matrix, tuple[int, ...], int]:
    """Scale row i by m/m_i so every congruence holds modulo m = lcm(moduli)."""
    m = nary_lcm(system.moduli)
    matrix = []
    rhs = []
    for row, b_i, m_i in zip(system.coefficients, system.rhs, system.moduli):
        scale = m // m_i
        matrix.append(tuple(a * scale for a in row))
        rhs.append(b_i * scale)
    return tuple(matrix), tuple(rhs), m


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form of an integer matrix, with its transforms."""
    k = len(matrix)
    n = len(matrix[0]) if k else 0
    if k == 0 or n == 0:
        raise ValueError("matrix must be nonempty")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix rows must have equal length")

    a = [list(map(int, row)) for row in matrix]
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(k, n)
    while t < limit:
        # Deterministic pivot: minimal |value| among nonzero entries, first by
        # position on ties.
        pivot = None
        best = None
        for i in range(t, k):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            moved = False
            for i in range(t + 1, k):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for i in range(t + 1, k):
                if a[i][t]:
                    swap_rows(t, i)
                    moved = True
                    break
            if moved:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    swap_cols(t, j)
                    moved = True
                    break
            if moved:
                continue
            # Pivot must divide everything that remains, so later factors
            # stay multiples of earlier ones.
            offender = None
            for i in range(t + 1, k):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1

    diag = [a[i][i] for i in range(limit)]
    factors = tuple(d for d in diag if d)
    return SnfResult(
        invariant_factors=factors,
        rank=len(factors),
        transforms=(tuple(map(tuple, u)), tuple(map(tuple, v))),
    )


def butson_stewart_count(system: CongruenceSystem) -> CountReport:
    """Invariant-factor count of solutions modulo m = lcm(moduli).

    Lift every row to the common modulus, diagonalize, and multiply the
    gcd(e_i, m); solvable iff each gcd divides the transformed rhs entry.
    Requires k <= n and a full-row-rank lifted matrix.
    """
    k, n = system.k, system.n
    if k > n:
        raise UnsupportedShapeError("more congruences than variables")
    matrix, rhs, m = lift_to_common_modulus(system)
    snf = smith_normal_form(matrix)
    if snf.rank < k:
        raise UnsupportedShapeError("lifted matrix is rank-deficient")
    u = snf.transforms[0]
    transformed = [sum(u_ij * b_j for u_ij, b_j in zip(row, rhs)) for row in u]
    factor_gcds = []
    solvable = True
    count = 1
    for e_i, c_i in zip(snf.invariant_factors, transformed):
        g = math.gcd(e_i, m)
        factor_gcds.append(g)
        if c_i % g:
            solvable = False
        count *= g
    count = count * m ** (n - k) if solvable else 0
    return CountReport(
        count=count,
        solvable=solvable,
        theorem="butson_stewart",
        details={
            "modulus": m,
            "invariant_factors": list(snf.invariant_factors),
            "transformed_rhs": [c % m for c in transformed],
            "factor_gcds": factor_gcds,
        },
    )
