"""Integer lattice computations and rational-span certificates.

A family of vectors over Q(theta) spans a lattice (discrete subgroup of
rank n) exactly when the Q-vector space generated by their power-basis
coefficient vectors has dimension n.  The certificate machinery flattens
vectors to rational coordinates, measures that rank, and on success
returns a Hermite-form lattice basis together with the integer
coordinates of every input vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import Field, Scalar

IntRow = list[int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[tuple[IntRow, ...], tuple[int, ...]]:
    """Row-style HNF of an integer matrix.

    Returns (nonzero rows, pivot columns).  Pivots are positive with
    strictly increasing columns; entries above each pivot are reduced
    into [0, pivot).
    """
    work = [list(map(int, r)) for r in rows]
    m = len(work)
    ncols = len(work[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, m):
            if work[i][c]:
                a, b = work[r][c], work[i][c]
                g, x, y = xgcd(a, b)
                # 2x2 unimodular transform: new rows (x*R + y*I, -b/g*R + a/g*I)
                rr = [x * p + y * q for p, q in zip(work[r], work[i])]
                ri = [(a // g) * q - (b // g) * p for p, q in zip(work[r], work[i])]
                work[r], work[i] = rr, ri
        if work[r][c] < 0:
            work[r] = [-e for e in work[r]]
        for k in range(r):
            q = work[k][c] // work[r][c]
            if q:
                work[k] = [p - q * t for p, t in zip(work[k], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def hnf_coordinates(hnf_rows: list[IntRow], pivots: list[int], target: Sequence[int]) -> list[int] | None:
    """Express an integer vector in the HNF row basis; None if outside."""
    rem = list(map(int, target))
    coords = []
    for row, c in zip(hnf_rows, pivots):
        q, check = divmod(rem[c], row[c])
        if check:
            return None
        coords.append(q)
        if q:
            rem = [p - q * t for p, t in zip(rem, row)]
    return coords if not any(rem) else None


def smith_invariant_factors(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    factors: list[int] = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        while True:
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [p - q * s for p, s in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot divides every remaining entry, or absorb one and retry
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                     if a[i][j] % a[t][t]),
                    None,
                )
                if bad is None:
                    break
                a[t] = [p + s for p, s in zip(a[t], a[bad[0]])]
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        factors.append(abs(a[t][t]))
        t += 1
    return tuple(factors)


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def quotient_order(coord_vectors: Sequence[Sequence[Fraction]], n: int) -> int:
    """Order of (Z^n + sum_i Z*c_i) / Z^n for rational vectors c_i.

    Writes every c_i over a common denominator D; the group is
    Lambda / D*Z^n with Lambda generated by D*Z^n and the numerators, so
    its order is D^n divided by the product of the Smith invariant
    factors of the stacked generator matrix.
    """
    denominators = [c.denominator for vec in coord_vectors for c in vec]
    d_common = math.lcm(*denominators) if denominators else 1
    if d_common == 1:
        return 1
    stack = [[d_common if i == j else 0 for j in range(n)] for i in range(n)]
    for vec in coord_vectors:
        stack.append([int(c * d_common) for c in vec])
    factors = smith_invariant_factors(stack)
    covolume = math.prod(factors)
    order, check = divmod(d_common ** n, covolume)
    if check:
        raise AssertionError("quotient order computation lost integrality")
    return order


# --------------------------------------------------------------------------
# Rational-span certificates for vectors over Q(theta)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanLattice:
    """The inputs generate a lattice: basis vectors and integer coordinates."""

    basis: tuple[tuple[Scalar, ...], ...]
    coords: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SpanIrrational:
    """Q-rank of the inputs exceeds the ambient dimension: no lattice."""

    rank: int
    independent: tuple[int, ...]


def flatten_vector(vec: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Power-basis coefficients of every coordinate, concatenated."""
    out: list[Fraction] = []
    for s in vec:
        out.extend(s.coeffs)
    return tuple(out)


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> tuple[int, tuple[int, ...]]:
    """Rank over Q with the indices of a greedy independent subset."""
    pivot_rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    independent: list[int] = []
    for idx, row in enumerate(rows):
        cur = list(row)
        for c, prow in pivot_rows:
            if cur[c]:
                factor = cur[c] / prow[c]
                cur = [a - factor * b for a, b in zip(cur, prow)]
        lead = next((j for j, v in enumerate(cur) if v), None)
        if lead is not None:
            pivot_rows.append((lead, cur))
            pivot_rows.sort(key=lambda t: t[0])
            independent.append(idx)
    return len(pivot_rows), tuple(independent)


def span_certificate(
    field: Field, vectors: Sequence[Sequence[Scalar]], ambient_dim: int
) -> SpanLattice | SpanIrrational:
    """Decide whether the vectors generate a lattice in R^ambient_dim.

    The callers guarantee the vectors span R^ambient_dim over the reals,
    which forces Q-rank >= ambient_dim; equality is exactly the lattice
    case, and the Hermite form of the denominator-cleared coefficient
    matrix then provides a basis whose Z-span contains every input.
    """
    flat = [flatten_vector(v) for v in vectors]
    rank, independent = rational_rank(flat)
    if rank != ambient_dim:
        return SpanIrrational(rank=rank, independent=tuple(independent))

    mult = math.lcm(*(c.denominator for row in flat for c in row))
    int_rows = [[int(c * mult) for c in row] for row in flat]
    hnf_rows, pivots = hermite_normal_form(int_rows)
    if len(hnf_rows) != ambient_dim:
        raise AssertionError("HNF rank disagrees with rational rank")

    g = field.degree
    basis = []
    for row in hnf_rows:
        entries = []
        for k in range(ambient_dim):
            coeffs = tuple(Fraction(c, mult) for c in row[k * g:(k + 1) * g])
            entries.append(Scalar(field, coeffs))
        basis.append(tuple(entries))

    coords = []
    for row in int_rows:
        c = hnf_coordinates(hnf_rows, pivots, row)
        if c is None:
            raise AssertionError("input vector fell outside its own HNF lattice")
        coords.append(tuple(c))
    return SpanLattice(basis=tuple(basis), coords=tuple(coords))
