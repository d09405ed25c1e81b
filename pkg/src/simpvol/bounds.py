"""Simplicial-volume bounds and combinatorial certificates for triangulations.

Formula bounds are exact ``Fraction`` values; hyperbolic ones are floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational

from . import hypervol
from .pseudomanifold import (
    Pseudomanifold,
    PseudomanifoldError,
    _face_classes,
    boundary,
    boundary_profile,
    dual_graph,
    handlebody_genus,
    require_valid,
)

Number = Fraction | float


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("expected an exact rational, got float")
    return Fraction(x)


@dataclass(frozen=True)
class BoundReport:
    value: Number
    kind: str  # "lower-bound" or "exact"
    source: str
    hypotheses: tuple[str, ...] = ()

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound value must be nonnegative")

    def as_dict(self) -> dict:
        return {
            "value": jsonable(self.value),
            "kind": self.kind,
            "source": self.source,
            "hypotheses": list(self.hypotheses),
        }


def jsonable(x):
    """Fractions become ints or ``"p/q"`` strings; everything else passes through."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _nonneg(bnorm) -> Fraction:
    b = _frac(bnorm)
    if b < 0:
        raise ValueError("boundary norm must be nonnegative")
    return b


def boundary_bound_generic(n: int, bnorm) -> BoundReport:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return BoundReport(_nonneg(bnorm) / (n + 1), "lower-bound", "generic")


def boundary_bound_improved(n: int, bnorm) -> BoundReport:
    if n < 2:
        raise ValueError("dimension must be >= 2")
    return BoundReport(_nonneg(bnorm) / (n - 1), "lower-bound", "improved")


def bound_3manifold(bnorm) -> BoundReport:
    return BoundReport(Fraction(3, 4) * _nonneg(bnorm), "lower-bound", "thm_a", ("dimension 3",))


def bound_aspherical(bnorm, dimension: int = 3) -> BoundReport:
    if dimension < 2:
        raise ValueError("dimension must be >= 2")
    hyp = ("aspherical", "boundary irreducible")
    if dimension == 3:
        return BoundReport(Fraction(5, 4) * _nonneg(bnorm), "lower-bound", "thm_c", hyp)
    return BoundReport(_nonneg(bnorm), "lower-bound", "aspherical", hyp)


def value_handlebody(g: int) -> BoundReport:
    if g < 0:
        raise ValueError("genus must be >= 0")
    return BoundReport(Fraction(max(0, 3 * (g - 1))), "exact", "handlebody")


def value_seifert_plus_handles(h: int) -> BoundReport:
    """Closed Seifert manifold with ``h`` one-handles attached; its boundary norm is ``4h``."""
    if h < 0:
        raise ValueError("number of handles must be >= 0")
    return BoundReport(Fraction(3 * h), "exact", "seifert_handles", ("Seifert",))


def value_product_surface(g: int) -> tuple[Fraction, int, Fraction | None]:
    """(simplicial volume, Delta-complexity, stable Delta-complexity) of ``S_g x [0, 1]``.

    The stable complexity is only known for ``g >= 2``; ``None`` for the torus.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    sigma = 10 * (g - 1) + 6
    if g == 1:
        return Fraction(0), sigma, None
    return Fraction(10 * (g - 1)), sigma, Fraction(10 * (g - 1))


# --------------------------------------------------------------------------
# nice and bad boundary edges


@dataclass(frozen=True)
class BoundaryEdge:
    """An edge of ``dP``, with the simplex faces of ``P`` meeting it."""

    index: int
    # (simplex, boundary face label, other face label) per adjacent boundary triangle
    sides: tuple[tuple[int, int, int], ...]
    p_class: int


def _boundary_edges(P: Pseudomanifold) -> list[BoundaryEdge]:
    n = P.dimension
    B = boundary(P)
    btab = _face_classes(B)
    bfaces = P.boundary_faces()
    ptab = _face_classes(P)
    out = []
    for e, members in enumerate(btab.classes[1]):
        sides = []
        for k, (a, b) in members:
            i, j = bfaces[k]
            rest = [u for u in range(n + 1) if u != j]
            edge = (rest[a], rest[b])
            other = next(u for u in rest if u not in edge)
            sides.append((i, j, other))
        i, j, _ = sides[0]
        _, pair = members[0]
        rest = [u for u in range(n + 1) if u != j]
        p_class = ptab.class_of[(i, tuple(sorted(rest[x] for x in pair)))]
        out.append(BoundaryEdge(e, tuple(sides), p_class))
    return out


def _omega0(P: Pseudomanifold) -> list[int]:
    return [i for i in range(P.simplices) if all(P.is_glued((i, j)) for j in range(P.dimension + 1))]


def _nice_classes(P: Pseudomanifold) -> set[int]:
    ptab = _face_classes(P)
    return {
        ptab.class_of[(i, S)] for i in _omega0(P) for S in combinations(range(P.dimension + 1), 2)
    }


def nice_bad_edges(P: Pseudomanifold) -> tuple[int, int]:
    """Count edges of ``dP`` lying (up to identification) on a simplex with no free face."""
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("nice/bad edges are defined for 3-dimensional input")
    edges = _boundary_edges(P)
    nice = _nice_classes(P)
    n_nice = sum(1 for e in edges if e.p_class in nice)
    return n_nice, len(edges) - n_nice


@dataclass(frozen=True)
class BadEdgeCheck:
    edge: int
    sides: tuple[tuple[int, int, int], ...]
    passed: bool


def check_bad_edge_lemma(P: Pseudomanifold) -> list[BadEdgeCheck]:
    """For each bad edge of ``dP``: is the other face of the simplex through it glued
    straight to the matching face on the far side?"""
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("bad-edge check is defined for 3-dimensional input")
    nice = _nice_classes(P)
    out = []
    for e in _boundary_edges(P):
        if e.p_class in nice:
            continue
        ok = True
        for i, j, other in e.sides:
            step = P.partner((i, other))
            if step is None:
                # the edge sits between two free faces of one simplex
                ok = False
                break
            (i2, _), m = step
            if P.is_glued((i2, m[j])):
                ok = False
                break
        out.append(BadEdgeCheck(e.index, e.sides, ok))
    return out


@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    profile: tuple[int, ...]
    witnesses: tuple[str, ...]


def _boundary_edge_counts(P: Pseudomanifold) -> list[int]:
    ptab = _face_classes(P)
    on_boundary = set()
    for i, j in P.boundary_faces():
        rest = [u for u in range(4) if u != j]
        for S in combinations(rest, 2):
            on_boundary.add(ptab.class_of[(i, S)])
    return [
        sum(1 for S in combinations(range(4), 2) if ptab.class_of[(i, S)] in on_boundary)
        for i in range(P.simplices)
    ]


def admissibility_check(P: Pseudomanifold) -> AdmissibilityReport:
    """At most one free face per simplex, at most three boundary edges per simplex,
    and at most two on simplices with no free face."""
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("admissibility is defined for 3-dimensional input")
    prof = boundary_profile(P)
    witnesses = []
    for i in range(2, 5):
        if prof[i]:
            witnesses.append(f"{prof[i]} simplices with {i} free faces")
    omega0 = set(_omega0(P))
    for i, c in enumerate(_boundary_edge_counts(P)):
        limit = 2 if i in omega0 else 3
        if c > limit:
            witnesses.append(f"simplex {i} has {c} boundary edges (limit {limit})")
    return AdmissibilityReport(not witnesses, prof.counts, tuple(witnesses))


# --------------------------------------------------------------------------
# counting certificate


@dataclass(frozen=True)
class Inequality:
    name: str
    lhs: Fraction
    rhs: Fraction
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs), "passed": self.passed}


def _geq(name, lhs, rhs) -> Inequality:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Inequality(name, lhs, rhs, lhs >= rhs)


@dataclass(frozen=True)
class CountingCertificate:
    profile: tuple[int, ...]
    e_nice: int
    e_bad: int
    boundary_triangles: int
    dual_euler: int
    handlebody_genus: int
    inequalities: tuple[Inequality, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(q.passed for q in self.inequalities)

    def as_dict(self) -> dict:
        return {
            "profile": list(self.profile),
            "e_nice": self.e_nice,
            "e_bad": self.e_bad,
            "boundary_triangles": self.boundary_triangles,
            "dual_euler": self.dual_euler,
            "handlebody_genus": self.handlebody_genus,
            "passed": self.passed,
            "inequalities": [q.as_dict() for q in self.inequalities],
        }


def counting_certificate(P: Pseudomanifold, d: int, bnorm, components: int) -> CountingCertificate:
    """Evaluate each counting inequality on ``P`` as a degree-``d`` cycle of a manifold
    with boundary norm ``bnorm`` and ``components`` boundary components."""
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("counting certificate needs 3-dimensional input")
    if d < 1:
        raise ValueError("degree must be >= 1")
    if components < 0:
        raise ValueError("components must be >= 0")
    b = _nonneg(bnorm)
    genus = handlebody_genus(P)  # raises when disconnected
    prof = boundary_profile(P)
    t0, t1, t2 = prof[0], prof[1], prof[2]
    e_nice, e_bad = nice_bad_edges(P)
    db = d * b
    ineqs = (
        _geq("t1 + 2 t2 >= d b", t1 + 2 * t2, db),
        _geq("4 g - 4 >= d b", 4 * genus - 4, db),
        _geq("4 t0 + 2 t1 >= d b", 4 * t0 + 2 * t1, db),
        _geq("4 (t0 + t1 + t2) >= 3 d b", 4 * (t0 + t1 + t2), 3 * db),
        _geq("2 E_nice >= 4 c + d b", 2 * e_nice, 4 * components + db),
        _geq("t0 >= E_nice / 2", t0, Fraction(e_nice, 2)),
    )
    return CountingCertificate(
        profile=prof.counts,
        e_nice=e_nice,
        e_bad=e_bad,
        boundary_triangles=prof.boundary_faces,
        dual_euler=dual_graph(P).euler,
        handlebody_genus=genus,
        inequalities=ineqs,
    )


# --------------------------------------------------------------------------
# descriptor-level bounds


@dataclass(frozen=True)
class ManifoldDescriptor:
    dimension: int
    boundary_norm: Rational | int
    aspherical: bool = False
    boundary_irreducible: bool = False
    hyperbolic_geodesic_boundary: bool = False
    vol: float | None = None
    boundary_vol: float | None = None

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.hyperbolic_geodesic_boundary and (self.vol is None or self.vol <= 0):
            raise ValueError("hyperbolic descriptor needs a positive volume")
        _nonneg(self.boundary_norm)


def applicable_bounds(m: ManifoldDescriptor) -> list[BoundReport]:
    n, b = m.dimension, m.boundary_norm
    out = [boundary_bound_generic(n, b), boundary_bound_improved(n, b)]
    if n == 3:
        out.append(bound_3manifold(b))
    if m.aspherical and m.boundary_irreducible:
        out.append(bound_aspherical(b, n))
    if m.hyperbolic_geodesic_boundary and n == 3:
        hyp = ("hyperbolic with geodesic boundary",)
        out.append(BoundReport(hypervol.jungreis_bound(m.vol), "lower-bound", "jungreis", hyp))
        out.append(BoundReport(hypervol.thm_f_bound(m.vol, float(b)), "lower-bound", "thm_f", hyp))
    return out


def best_lower_bound(m: ManifoldDescriptor) -> BoundReport:
    # ties go to the later, more specific bound
    best = None
    for r in applicable_bounds(m):
        if best is None or r.value >= best.value:
            best = r
    return best
