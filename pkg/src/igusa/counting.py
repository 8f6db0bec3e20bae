"""Exhaustive finite-field enumeration over F_p.

Torus point counts of face systems, Jacobian ranks, and certification of
the non-degeneracy and good-reduction hypotheses.  All counts are exact;
"p big enough" is the caller's responsibility -- a certificate is only
valid at the prime it was computed for.

The enumeration loops are pure over disjoint ranges of the point space,
so callers may partition them data-parallel; sums of counts do not depend
on the partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import fan as fan_mod
from .errors import DEFAULT_ENUM_BUDGET, BudgetExceededError
from .polycore import IntPolynomial, PolySystem, PrimeContext, face_function


@dataclass
class TorusCount:
    c_open: int    # z in (F_p^x)^n with f_{1,a} = ... = f_{l-1,a} = 0, f_{l,a} != 0
    c_closed: int  # additionally f_{l,a} = 0


@dataclass
class NondegWitness:
    direction: tuple[int, ...]
    point: tuple[int, ...]
    rank: int


@dataclass
class NondegCertificate:
    ok: bool
    scope: str  # "at_origin" or "global"
    p: int
    witness: NondegWitness | None = None
    directions_checked: int = 0


def _check_budget(points: int, budget: int, what: str):
    if points > budget:
        raise BudgetExceededError(what, points, budget)


def _torus_iter(p: int, n: int):
    return product(range(1, p), repeat=n)


def torus_count(sys: PolySystem, a, ctx: PrimeContext, budget: int = DEFAULT_ENUM_BUDGET) -> TorusCount:
    """Exact counts of the face system of direction a on the torus (F_p^x)^n.

    a = 0 means the full polynomials (used for the constant-chart term).
    """
    p = ctx.p
    _check_budget((p - 1) ** sys.n, budget, "torus enumeration")
    faces = [face_function(f, a) for f in sys.polys]
    c_open = 0
    c_closed = 0
    for z in _torus_iter(p, sys.n):
        if any(g.evaluate_mod(z, p) != 0 for g in faces[:-1]):
            continue
        if faces[-1].evaluate_mod(z, p) == 0:
            c_closed += 1
        else:
            c_open += 1
    return TorusCount(c_open, c_closed)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] % p != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], p - 2, p)
        m[row] = [(x * inv) % p for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def jacobian_rank(polys: list[IntPolynomial], z, ctx: PrimeContext) -> int:
    """Rank over F_p of the matrix of formal partials evaluated at z."""
    rows = []
    for f in polys:
        rows.append([f.partial(j).evaluate_mod(z, ctx.p) for j in range(f.n)])
    return _rank_mod_p(rows, ctx.p)


def _nondeg_directions(sys: PolySystem, at_origin: bool):
    """One integer representative per cone of the dual subdivision.

    Face systems are constant on each cone, so these finitely many
    directions cover every positive vector; a = 0 is appended in the global
    case (the paper's "including the origin").
    """
    subdivision = fan_mod.dual_subdivision(sys)
    reps = []
    for cone in subdivision.cones:
        rep = cone.interior_point()
        if at_origin and not all(x > 0 for x in rep):
            continue
        reps.append(rep)
    if not at_origin:
        reps.append((0,) * sys.n)
    return reps


def check_nondegenerate(
    sys: PolySystem,
    ctx: PrimeContext,
    at_origin: bool = False,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> NondegCertificate:
    """Certify strong non-degeneracy over F_p (globally or at the origin).

    For each representative direction, every common torus zero of all l
    face polynomials must have Jacobian rank min(l, n).  The first failure
    is returned as an independently checkable witness.
    """
    p = ctx.p
    scope = "at_origin" if at_origin else "global"
    target = min(sys.l, sys.n)
    _check_budget((p - 1) ** sys.n, budget, "non-degeneracy enumeration")
    directions = _nondeg_directions(sys, at_origin)
    for a in directions:
        faces = [face_function(f, a) for f in sys.polys]
        for z in _torus_iter(p, sys.n):
            if any(g.evaluate_mod(z, p) != 0 for g in faces):
                continue
            r = jacobian_rank(faces, z, ctx)
            if r != target:
                witness = NondegWitness(tuple(a), tuple(z), r)
                return NondegCertificate(False, scope, p, witness, len(directions))
    return NondegCertificate(True, scope, p, None, len(directions))


def verify_witness(sys: PolySystem, ctx: PrimeContext, witness: NondegWitness) -> bool:
    """Re-check a degeneracy witness by direct evaluation."""
    faces = [face_function(f, witness.direction) for f in sys.polys]
    if any(x % ctx.p == 0 for x in witness.point):
        return False
    if any(g.evaluate_mod(witness.point, ctx.p) != 0 for g in faces):
        return False
    return jacobian_rank(faces, witness.point, ctx) == witness.rank < min(sys.l, sys.n)


def check_good_reduction(sys: PolySystem, ctx: PrimeContext, budget: int = DEFAULT_ENUM_BUDGET) -> bool:
    """Does (f_1, ..., f_{l-1}) cut out a smooth variety over F_p?

    True iff the Jacobian of the first l-1 polynomials has rank l-1 at every
    solution in the full affine space F_p^n.
    """
    if sys.l < 2:
        raise ValueError("good reduction concerns the first l-1 polynomials; need l >= 2")
    p = ctx.p
    head = sys.polys[:-1]
    _check_budget(p**sys.n, budget, "good-reduction enumeration")
    for z in product(range(p), repeat=sys.n):
        if any(f.evaluate_mod(z, p) != 0 for f in head):
            continue
        if jacobian_rank(head, z, ctx) != sys.l - 1:
            return False
    return True
