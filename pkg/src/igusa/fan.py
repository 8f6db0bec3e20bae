"""Polyhedral subdivision of R_+^n subordinate to Gamma(f), and its
simplicial refinement.

The subdivision's relatively open cones are the equivalence classes of the
first-meet-locus relation, computed per polynomial (two weight vectors are
equivalent iff they pick the same face of every Gamma(f_j)).  Each class is
spanned by the facet normals of the system polyhedron whose facets contain
the class's face; classes are discovered by probing the sums of all subsets
of facet normals, which hits the relative interior of every class.

Triangulation never introduces new rays: each non-simplicial class is split
by pulling from its first generator, and the internal walls of the split
are kept as cones so the result is again a partition of R_+^n minus 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import linalg, newton
from .polycore import IntPolynomial, PolySystem

Ray = tuple[int, ...]


@dataclass(frozen=True)
class Cone:
    """Rational cone strictly spanned by primitive integer generators.

    The cone is the set of strictly positive combinations of the generators
    (its relative interior); ``closure`` adds the boundary.
    """

    generators: tuple[Ray, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a cone needs at least one generator")
        object.__setattr__(
            self, "generators", tuple(tuple(int(x) for x in g) for g in self.generators)
        )
        for g in self.generators:
            if all(x == 0 for x in g):
                raise ValueError("zero generator")
            if min(g) < 0:
                raise ValueError("generators must be nonnegative")
            div = 0
            for x in g:
                div = gcd(div, x)
            if div != 1:
                raise ValueError(f"generator {g} is not primitive")

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def dim(self) -> int:
        return linalg.rank([list(g) for g in self.generators])

    @property
    def simplicial(self) -> bool:
        return self.dim == len(self.generators)

    def sorted_key(self):
        return (len(self.generators), self.generators)

    def interior_point(self) -> Ray:
        return tuple(sum(g[j] for g in self.generators) for j in range(self.n))

    def contains_relint(self, point) -> bool:
        """Exact test: is the point in the relative interior of this cone?"""
        pt = [Fraction(x) for x in point]
        if self.simplicial:
            sol = _solve_in_span(self.generators, pt)
            return sol is not None and all(c > 0 for c in sol)
        if _solve_in_span(self.generators, pt) is None:
            return False
        for normal in _cone_facet_normals(self.generators):
            if sum(Fraction(u) * x for u, x in zip(normal, pt)) <= 0:
                return False
        return True


@dataclass
class Fan:
    """A set of pairwise disjoint relatively open cones covering R_+^n \\ {0}."""

    n: int
    cones: list[Cone]
    skeleton: list[Ray] = field(default_factory=list)

    def cones_of_dim(self, d: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == d]

    def locate(self, point) -> list[Cone]:
        return [c for c in self.cones if c.contains_relint(point)]


def _solve_in_span(gens, point) -> tuple[Fraction, ...] | None:
    """Coefficients of point in the generator span (columns), or None."""
    n = len(point)
    cols = [[Fraction(g[i]) for g in gens] for i in range(n)]
    return linalg.solve(cols, point)


def _cone_facet_normals(gens) -> list[tuple[Fraction, ...]]:
    """Facet normals of cone(gens), expressed inside span(gens).

    Each returned vector u satisfies <u, g> >= 0 for all generators, with
    equality on a spanning subset of rank dim-1.  Works in any dimension at
    the small scales used here.
    """
    d = linalg.rank([list(g) for g in gens])
    out = []
    seen = set()
    for subset in combinations(gens, d - 1):
        if linalg.rank([list(g) for g in subset]) != d - 1:
            continue
        # u orthogonal to the subset, inside span(gens):
        # write u = sum mu_k gens_k, require <u, s> = 0 for s in subset.
        rows = [[sum(s[i] * g[i] for i in range(len(s))) for g in gens] for s in subset]
        for mu in linalg.nullspace(rows):
            u = tuple(
                sum(Fraction(m) * g[i] for m, g in zip(mu, gens)) for i in range(len(gens[0]))
            )
            if all(x == 0 for x in u):
                continue
            sides = [sum(ux * gx for ux, gx in zip(u, g)) for g in gens]
            if all(s >= 0 for s in sides):
                pass
            elif all(s <= 0 for s in sides):
                u = tuple(-x for x in u)
                sides = [-s for s in sides]
            else:
                continue
            if sum(1 for s in sides if s == 0) == 0:
                continue
            zero_gens = [g for g, s in zip(gens, sides) if s == 0]
            if linalg.rank([list(g) for g in zero_gens]) != d - 1:
                continue
            key = linalg.primitive_integer_vector(u)
            if key not in seen:
                seen.add(key)
                out.append(u)
    return out


# ---------------------------------------------------------------------------
# Dual subdivision
# ---------------------------------------------------------------------------


def _signature(sys: PolySystem, a) -> tuple[frozenset, ...]:
    """Per-polynomial argmin sets of <a, .> over the supports."""
    sig = []
    for f in sys.polys:
        dots = {m: sum(x * y for x, y in zip(a, m)) for m in f.terms}
        d = min(dots.values())
        sig.append(frozenset(m for m, v in dots.items() if v == d))
    return tuple(sig)


def _sig_contains(inner, outer) -> bool:
    return all(i <= o for i, o in zip(inner, outer))


def _face_below(probe, ray, sig_probe, sig_ray) -> bool:
    """Does the facet normal to ``ray`` contain the face picked by ``probe``?

    Geometric containment of faces of the system polyhedron needs both the
    attaining support points to nest (per polynomial) and the unbounded
    directions to nest: the face of ``probe`` recedes along every axis where
    probe vanishes, so the facet can only contain it if ``ray`` vanishes
    there too.
    """
    if not _sig_contains(sig_probe, sig_ray):
        return False
    return all(r == 0 for p, r in zip(probe, ray) if p == 0)


def dual_subdivision(sys: PolySystem) -> Fan:
    """Equivalence classes of the joint first-meet-locus relation.

    The classes are the relatively open cones Delta_tau; each is spanned by
    the facet normals of the system polyhedron whose facet contains tau.
    """
    from .polycore import is_convenient

    for f in sys.polys:
        if f.is_zero():
            raise ValueError("zero polynomial in system")
    report = is_convenient(sys)
    if not report.convenient:
        warnings.warn(
            f"system is not convenient (missing pure powers: {report.missing}); "
            "the subdivision is built anyway but the zeta engine will refuse",
            stacklevel=2,
        )

    gamma_f = newton.system_polyhedron(sys)
    rays = sorted({f.normal for f in gamma_f.facets}, key=lambda r: (sum(r), r))
    ray_sigs = {r: _signature(sys, r) for r in rays}

    if len(rays) > 16:
        from .errors import BudgetExceededError

        raise BudgetExceededError("too many facet normals for class enumeration", 2 ** len(rays), 2**16)

    classes: dict[tuple[frozenset, ...], tuple[Ray, ...]] = {}
    for k in range(1, len(rays) + 1):
        for subset in combinations(rays, k):
            probe = tuple(sum(col) for col in zip(*subset))
            sig = _signature(sys, probe)
            key = (sig, tuple(x == 0 for x in probe))
            if key in classes:
                continue
            spanning = tuple(r for r in rays if _face_below(probe, r, sig, ray_sigs[r]))
            classes[key] = spanning

    cones = []
    seen = set()
    for (sig, zeros), spanning in classes.items():
        if not spanning:
            raise RuntimeError("class with no spanning facet normals; inconsistent fan")
        if spanning in seen:
            raise RuntimeError(f"two classes share the spanning set {spanning}; inconsistent fan")
        seen.add(spanning)
        cone = Cone(spanning)
        # The defining property of the class: its interior point realises sig.
        interior = cone.interior_point()
        if _signature(sys, interior) != sig or tuple(x == 0 for x in interior) != zeros:
            raise RuntimeError(f"signature mismatch for class spanned by {spanning}")
        cones.append(cone)
    cones.sort(key=Cone.sorted_key)
    return Fan(sys.n, cones, skeleton=list(rays))


# ---------------------------------------------------------------------------
# Triangulation
# ---------------------------------------------------------------------------


def triangulate(fan: Fan) -> Fan:
    """Refine every cone to simplicial ones without adding rays.

    Non-simplicial classes are pulling-triangulated from their first
    generator; the internal faces of the split (those whose relative
    interior lies inside the class) become cones of the refined fan, so the
    open-cone partition property is preserved.
    """
    out: list[Cone] = []
    for cone in fan.cones:
        if cone.simplicial:
            out.append(cone)
            continue
        pieces = _pulling_triangulation(list(cone.generators), cone.dim)
        emitted = set()
        for piece in pieces:
            emitted.add(tuple(piece))
        # Internal faces: proper faces of pieces interior to the class.
        for piece in pieces:
            for size in range(1, len(piece)):
                for sub in combinations(piece, size):
                    if sub in emitted:
                        continue
                    probe = tuple(sum(col) for col in zip(*sub))
                    if cone.contains_relint(probe):
                        emitted.add(sub)
        out.extend(Cone(gens) for gens in emitted)
    out.sort(key=Cone.sorted_key)
    return Fan(fan.n, out, skeleton=list(fan.skeleton))


def _pulling_triangulation(gens: list[Ray], dim: int) -> list[tuple[Ray, ...]]:
    """Split cone(gens) into simplicial cones spanned by subsets of gens.

    Pulls from the first generator: cone over the facets not containing it.
    Deterministic in the generator order.
    """
    if len(gens) == dim:
        return [tuple(sorted(gens))]
    apex = gens[0]
    pieces = []
    for normal in _cone_facet_normals(gens):
        side_apex = sum(u * x for u, x in zip(normal, apex))
        if side_apex == 0:
            continue
        wall = [g for g in gens if sum(u * x for u, x in zip(normal, g)) == 0]
        for sub in _pulling_triangulation(wall, dim - 1):
            piece = tuple(sorted(set(sub) | {apex}))
            pieces.append(piece)
    return sorted(set(pieces))


# ---------------------------------------------------------------------------
# Simplicial cone data
# ---------------------------------------------------------------------------


def barycenter(cone: Cone) -> Ray:
    """Entrywise sum of the generators (the paper's b(Delta))."""
    if not cone.simplicial:
        raise ValueError("barycenter is defined for simplicial cones")
    return cone.interior_point()


def _pp_group(cone: Cone) -> list[tuple[Fraction, ...]]:
    """Coefficient vectors mu in [0,1)^e with sum mu_i a_i integral.

    These form the finite group L/Z^e where L = {mu : A mu integral}; it is
    generated modulo 1 by the columns of the inverse of a full-rank square
    submatrix of the generator matrix, filtered for integrality of the full
    product.
    """
    gens = cone.generators
    e = len(gens)
    n = cone.n
    # Full-rank e x e row submatrix.
    rows_idx: list[int] = []
    for i in range(n):
        trial = rows_idx + [i]
        if linalg.rank([[gens[k][r] for k in range(e)] for r in trial]) == len(trial):
            rows_idx = trial
        if len(rows_idx) == e:
            break
    sub = [[Fraction(gens[k][r]) for k in range(e)] for r in rows_idx]
    inv = linalg.invert(sub)
    assert inv is not None
    generators_mod1 = [tuple(row[j] % 1 for row in inv) for j in range(e)]

    group = {(Fraction(0),) * e}
    frontier = list(group)
    while frontier:
        nxt = []
        for mu in frontier:
            for g in generators_mod1:
                cand = tuple((a + b) % 1 for a, b in zip(mu, g))
                if cand not in group:
                    group.add(cand)
                    nxt.append(cand)
        frontier = nxt

    out = []
    for mu in sorted(group):
        point = [sum(m * Fraction(g[i]) for m, g in zip(mu, gens)) for i in range(n)]
        if all(x.denominator == 1 for x in point):
            out.append(mu)
    return out


def parallelepiped_points(cone: Cone) -> list[Ray]:
    """Integer points of {sum mu_i a_i : 0 <= mu_i < 1}."""
    if not cone.simplicial:
        raise ValueError("parallelepiped points are defined for simplicial cones")
    pts = []
    for mu in _pp_group(cone):
        pts.append(
            tuple(
                int(sum(m * Fraction(g[i]) for m, g in zip(mu, cone.generators)))
                for i in range(cone.n)
            )
        )
    return sorted(pts)


def parallelepiped_points_with_coords(cone: Cone) -> list[tuple[Ray, tuple[Fraction, ...]]]:
    """Same, returning the coefficient vector mu of each point."""
    if not cone.simplicial:
        raise ValueError("parallelepiped points are defined for simplicial cones")
    out = []
    for mu in _pp_group(cone):
        h = tuple(
            int(sum(m * Fraction(g[i]) for m, g in zip(mu, cone.generators)))
            for i in range(cone.n)
        )
        out.append((h, mu))
    return sorted(out)


def is_simple(cone: Cone) -> bool:
    """Generators extend to a Z-basis, i.e. gcd of maximal minors is 1."""
    if not cone.simplicial:
        raise ValueError("simpleness is defined for simplicial cones")
    gens = cone.generators
    e = len(gens)
    g = 0
    for rows in combinations(range(cone.n), e):
        minor = linalg.det([[Fraction(gens[k][r]) for k in range(e)] for r in rows])
        g = gcd(g, abs(int(minor)))
    return g == 1
