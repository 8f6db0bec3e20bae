"""Exact linear algebra over the rationals, sized for desk-scale problems.

Everything here runs Gaussian elimination on lists of ``Fraction`` rows.
Dimensions stay in the single digits throughout the package, so no effort
is spent on pivoting strategies or sparsity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple[Fraction, ...]


def _to_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows) -> list[list[Fraction]]:
    """Reduced row echelon form; input is not modified."""
    m = _to_fractions(rows)
    if not m:
        return m
    ncols = len(m[0])
    piv = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(piv, len(m)) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[piv], m[pivot_row] = m[pivot_row], m[piv]
        inv = m[piv][col]
        m[piv] = [x / inv for x in m[piv]]
        for r in range(len(m)):
            if r != piv and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[piv])]
        piv += 1
        if piv == len(m):
            break
    return m


def rank(rows) -> int:
    m = row_echelon(rows)
    return sum(1 for row in m if any(x != 0 for x in row))


def nullspace(rows) -> list[Vector]:
    """Basis of the right kernel {x : A x = 0}."""
    m = _to_fractions(rows)
    if not m:
        return []
    ncols = len(m[0])
    red = row_echelon(m)
    pivots: dict[int, int] = {}
    for r, row in enumerate(red):
        for c, x in enumerate(row):
            if x != 0:
                pivots[c] = r
                break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, r in pivots.items():
            v[c] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs) -> Vector | None:
    """One exact solution of A x = b, or None if inconsistent.

    If the system is underdetermined the free variables are set to 0.
    """
    m = _to_fractions(rows)
    if not m:
        return None
    b = [Fraction(x) for x in rhs]
    ncols = len(m[0])
    aug = [row + [bv] for row, bv in zip(m, b)]
    red = row_echelon(aug)
    sol = [Fraction(0)] * ncols
    for row in red:
        lead = next((c for c, x in enumerate(row) if x != 0), None)
        if lead is None:
            continue
        if lead == ncols:
            return None
        sol[lead] = row[ncols]
        # Free columns stay 0, so subtract nothing further.
        for c in range(lead + 1, ncols):
            if row[c] != 0 and sol[c] != 0:
                sol[lead] -= row[c] * sol[c]
    # Solutions are filled bottom-up only when free vars are zero; verify.
    for row, bv in zip(m, b):
        if sum(a * x for a, x in zip(row, sol)) != bv:
            return None
    return tuple(sol)


def invert(rows) -> list[list[Fraction]] | None:
    """Inverse of a square matrix, or None if singular."""
    m = _to_fractions(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red = row_echelon(aug)
    for i in range(n):
        if red[i][i] != 1 or any(red[i][j] != 0 for j in range(n) if j != i):
            return None
    return [row[n:] for row in red]


def det(rows) -> Fraction:
    """Determinant by fraction-free-ish elimination (exact)."""
    m = _to_fractions(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    d = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        d *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return sign * d


def primitive_integer_vector(vec) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction.

    The sign is normalised so the first nonzero entry is positive.
    """
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        raise ValueError("zero vector has no primitive representative")
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)
