"""Vertex links and the manifold test for 3-dimensional pseudomanifolds."""

from __future__ import annotations

from dataclasses import dataclass

from .pseudomanifold import (
    Gluing,
    Pseudomanifold,
    PseudomanifoldError,
    _face_classes,
    _component_labels,
    require_valid,
)


@dataclass(frozen=True)
class VertexLink:
    vertex: int  # index of the vertex class
    link: Pseudomanifold
    euler: int
    connected: bool
    on_boundary: bool

    @property
    def ok(self) -> bool:
        """Sphere for interior vertices, disk for boundary ones."""
        return self.connected and self.euler == (1 if self.on_boundary else 2)


def vertex_link(P: Pseudomanifold, corners: tuple) -> Pseudomanifold:
    """Link of one vertex class, given as its corners ``(simplex, (label,))``.

    Link simplex ``k`` is the corner ``corners[k]``; its local labels are the
    remaining labels of that simplex in increasing order.
    """
    n = P.dimension
    pos = {corner: k for k, corner in enumerate(corners)}
    gluings = set()
    for k, (i, (u,)) in enumerate(corners):
        labels = [w for w in range(n + 1) if w != u]
        for j in labels:
            step = P.partner((i, j))
            if step is None:
                continue
            (i2, j2), m = step
            u2 = m[u]
            labels2 = [w for w in range(n + 1) if w != u2]
            mu = tuple(labels2.index(m[w]) for w in labels)
            gluings.add(Gluing.between((k, labels.index(j)), (pos[(i2, (u2,))], labels2.index(j2)), mu))
    return Pseudomanifold(n - 1, len(corners), tuple(sorted(gluings)))


def vertex_links(P: Pseudomanifold) -> list[VertexLink]:
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("vertex links are implemented for dimension 3")
    table = _face_classes(P)
    out = []
    for c, corners in enumerate(table.classes[0]):
        link = vertex_link(P, corners)
        ltab = _face_classes(link)
        euler = sum((-1) ** d * f for d, f in enumerate(ltab.counts))
        comps = max(_component_labels(link), default=-1) + 1
        on_boundary = len(link.gluings) * 2 < link.simplices * 3
        out.append(VertexLink(c, link, euler, comps == 1, on_boundary))
    return out


def is_manifold(P: Pseudomanifold) -> bool:
    """All vertex links are spheres or disks and no edge is folded onto itself."""
    links = vertex_links(P)
    table = _face_classes(P)
    return all(l.ok for l in links) and not table.twisted[1]
