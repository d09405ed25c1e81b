"""Closed surfaces: classification of components, simplicial volume, Delta-complexity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pseudomanifold import (
    Pseudomanifold,
    PseudomanifoldError,
    connected_components,
    euler_characteristic,
    orientability,
    require_valid,
)


@dataclass(frozen=True)
class SurfaceComponent:
    euler: int
    orientable: bool
    triangles: int

    @property
    def genus(self) -> int:
        # nonorientable components report the number of crosscaps
        return (2 - self.euler) // 2 if self.orientable else 2 - self.euler


@dataclass(frozen=True)
class SurfaceSummary:
    components: tuple[SurfaceComponent, ...]

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)

    def as_dict(self) -> dict:
        return {
            "components": [
                {"euler": c.euler, "orientable": c.orientable, "genus": c.genus, "triangles": c.triangles}
                for c in self.components
            ]
        }


def analyze_surface(P: Pseudomanifold) -> SurfaceSummary:
    require_valid(P)
    if P.dimension != 2:
        raise PseudomanifoldError(f"expected a 2-dimensional pseudomanifold, got dimension {P.dimension}")
    if P.boundary_faces():
        raise PseudomanifoldError("surface has boundary edges")
    comps = []
    for C in connected_components(P):
        comps.append(SurfaceComponent(euler_characteristic(C), orientability(C).orientable, C.simplices))
    return SurfaceSummary(tuple(comps))


def surface_simplicial_volume(s: SurfaceSummary) -> Fraction:
    return sum((Fraction(max(0, -2 * c.euler)) for c in s.components), Fraction(0))


def surface_delta_complexity(genus: int, orientable: bool = True) -> int:
    """Fewest triangles in a loose triangulation of the closed orientable surface."""
    if not orientable:
        raise PseudomanifoldError("Delta-complexity is only tabulated for orientable surfaces")
    if genus < 0:
        raise PseudomanifoldError("genus must be >= 0")
    return 2 if genus == 0 else 4 * genus - 2
