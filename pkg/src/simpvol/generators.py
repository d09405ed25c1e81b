"""Explicit pseudomanifolds: cones, handlebodies and ``S_g x [0, 1]``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .pseudomanifold import (
    Face,
    Gluing,
    Pseudomanifold,
    PseudomanifoldError,
    boundary,
    orientability,
    require_valid,
)


def cone(P: Pseudomanifold) -> Pseudomanifold:
    """Cone over a pseudomanifold; apex is label 0, base label ``k`` becomes ``k + 1``."""
    require_valid(P)
    gl = [
        Gluing((g.a[0], g.a[1] + 1), (g.b[0], g.b[1] + 1), (0,) + tuple(x + 1 for x in g.map))
        for g in P.gluings
    ]
    return Pseudomanifold(P.dimension + 1, P.simplices, tuple(gl))


def suspension(P: Pseudomanifold) -> Pseudomanifold:
    """Two cones over a closed ``P`` glued along their bases."""
    c = cone(P)
    k = P.simplices
    ident = tuple(range(P.dimension + 2))
    gl = list(c.gluings)
    gl += [Gluing((g.a[0] + k, g.a[1]), (g.b[0] + k, g.b[1]), g.map) for g in c.gluings]
    gl += [Gluing((i, 0), (i + k, 0), ident) for i in range(k)]
    return Pseudomanifold(P.dimension + 1, 2 * k, tuple(gl))


def cone_over_simplex_boundary(n: int) -> Pseudomanifold:
    """The ``n + 1`` simplices ``[b, e_0, .., ^e_i, .., e_n]`` filling an n-simplex."""
    if n < 2:
        raise PseudomanifoldError("cone over the boundary of a simplex needs n >= 2")
    return cone(boundary(Pseudomanifold(n, 1)))


# found by exhaustive search over one tetrahedron; see tests/test_generators.py
SOLID_TORUS_GLUING = Gluing((0, 0), (0, 1), (1, 2, 3, 0))


def solid_torus() -> Pseudomanifold:
    return Pseudomanifold(3, 1, (SOLID_TORUS_GLUING,))


# staircase prism over a triangle with vertices 0 < 1 < 2; points are (vertex, level)
PRISM = (
    ((0, 0), (1, 0), (2, 0), (2, 1)),
    ((0, 0), (1, 0), (1, 1), (2, 1)),
    ((0, 0), (0, 1), (1, 1), (2, 1)),
)


def add_one_handle(P: Pseudomanifold, face_a: Face, face_b: Face) -> Pseudomanifold:
    """Attach a 3-tetrahedron prism along two boundary faces.

    The prism's bottom triangle goes onto ``face_a`` in increasing label order;
    the map onto ``face_b`` is the first one (in lexicographic order) that keeps
    an orientable ``P`` orientable.
    """
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("handles are attached to 3-dimensional pseudomanifolds")
    face_a, face_b = tuple(face_a), tuple(face_b)
    for f in (face_a, face_b):
        if not (0 <= f[0] < P.simplices and 0 <= f[1] <= 3):
            raise PseudomanifoldError(f"face {f} out of range")
        if P.is_glued(f):
            raise PseudomanifoldError(f"face {f} is already glued")
    if face_a == face_b:
        raise PseudomanifoldError("handle ends must be distinct faces")

    k = P.simplices
    base = list(P.gluings)
    base.append(Gluing((k, 2), (k + 1, 2), (0, 1, 2, 3)))
    base.append(Gluing((k + 1, 1), (k + 2, 1), (0, 1, 2, 3)))
    ja, jb = face_a[1], face_b[1]
    rest_a = [v for v in range(4) if v != ja]
    # bottom of the prism is face 3 of tet k, labels 0, 1, 2
    bottom = Gluing.between((k, 3), face_a, tuple(rest_a) + (ja,))
    base.append(bottom)
    rest_b = [v for v in range(4) if v != jb]
    want_orientable = orientability(P).orientable
    candidate = None
    for order in permutations(rest_b):
        # top of the prism is face 0 of tet k + 2, labels 1, 2, 3
        top = Gluing.between((k + 2, 0), face_b, (jb,) + order)
        Q = Pseudomanifold(3, k + 3, tuple(base + [top]))
        if candidate is None:
            candidate = Q
        if not want_orientable or orientability(Q).orientable:
            return Q
    return candidate


def handlebody(g: int) -> Pseudomanifold:
    """``3g - 2`` tetrahedra: the solid torus plus ``g - 1`` handles."""
    if g < 1:
        raise PseudomanifoldError("handlebody genus must be >= 1")
    P = solid_torus()
    for _ in range(g - 1):
        faces = P.boundary_faces()
        P = add_one_handle(P, faces[0], faces[1])
    return P


# --------------------------------------------------------------------------
# the polygon model of S_g


@dataclass(frozen=True)
class PolygonScheme:
    """A decomposition of the ``4g``-gon ``x_1..x_2g x_1^-1..x_2g^-1`` into cells.

    Polygon corners are ``0..4g-1`` counterclockwise; side ``k`` runs from corner
    ``k`` to ``k + 1``.  ``segments`` maps each directed cell-boundary segment
    ``(p, q)`` to ``(edge id, end of p)`` on the quotient surface, and
    ``oriented`` tells whether the edge runs from ``p`` to ``q``.
    """

    genus: int
    quads: tuple[tuple[int, int, int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    side_pairs: tuple[tuple[int, int], ...]
    segments: dict[tuple[int, int], tuple[int, int]]
    oriented: dict[tuple[int, int], bool]

    @property
    def corners(self) -> int:
        return 4 * self.genus

    @property
    def edge_count(self) -> int:
        return len({e for e, _ in self.segments.values()})

    def cells(self) -> tuple[tuple[int, ...], ...]:
        return self.quads + self.triangles


def _fan(g: int, tri_at: tuple[int, int]) -> list[tuple[int, ...]]:
    cells = []
    a = 1
    for c in range(2 * g):
        width = 1 if c in tri_at else 2
        cells.append((0,) + tuple(range(a, a + width + 1)))
        a += width
    assert a == 4 * g - 1
    return cells


def _side_structure(g: int):
    """Edge ids and ends for the polygon sides; side k and 2g + k are identified."""
    N = 4 * g
    segs: dict[tuple[int, int], tuple[int, int]] = {}
    pairs = []
    for k in range(2 * g):
        # side k reads x_{k+1} from corner k to k+1; side 2g+k reads it backwards
        p, q = k, k + 1
        r, s = (2 * g + k + 1) % N, 2 * g + k
        segs[(p, q)] = (k, 0)
        segs[(q, p)] = (k, 1)
        segs[(r, s)] = (k, 0)
        segs[(s, r)] = (k, 1)
        pairs.append((k, 2 * g + k))
    return segs, tuple(pairs)


def _cell_segments(cell):
    return [(cell[t], cell[(t + 1) % len(cell)]) for t in range(len(cell))]


def _solve_orientations(cells, segs, n_edges):
    """Candidate edge orientation bits (True: edge runs end 0 -> end 1).

    Alternation around a quad fixes the parity of adjacent bits, so quads form
    an XOR system; the two triangles are then checked over the free choices of
    the few components they touch.
    """
    parent = list(range(n_edges))
    parity = [0] * n_edges

    def find(x):
        acc = 0
        path = []
        while parent[x] != x:
            path.append(x)
            acc ^= parity[x]
            x = parent[x]
        # compress; recompute each node's parity to the root
        for y in path:
            p_y = 0
            z = y
            while parent[z] != z:
                p_y ^= parity[z]
                z = parent[z]
            parity[y] = p_y
        for y in path:
            parent[y] = x
        return x, acc

    for cell in cells:
        if len(cell) != 4:
            continue
        sg = _cell_segments(cell)
        for t in range(4):
            # a segment is traversed forwards iff bit ^ end
            e1, o1 = segs[sg[t]]
            e2, o2 = segs[sg[(t + 1) % 4]]
            want = 1 ^ o1 ^ o2
            r1, p1 = find(e1)
            r2, p2 = find(e2)
            if r1 == r2:
                if p1 ^ p2 != want:
                    return
            else:
                parent[r1] = r2
                parity[r1] = p1 ^ p2 ^ want

    tri_edges = [segs[s][0] for c in cells if len(c) == 3 for s in _cell_segments(c)]
    free = sorted({find(e)[0] for e in tri_edges})
    for choice in range(1 << len(free)):
        root_bit = {r: (choice >> k) & 1 for k, r in enumerate(free)}
        bits = []
        for e in range(n_edges):
            r, p = find(e)
            bits.append(bool(root_bit.get(r, 0) ^ p))
        ok = True
        for cell in cells:
            if len(cell) == 3:
                f = [bits[segs[s][0]] == (segs[s][1] == 0) for s in _cell_segments(cell)]
                if f[0] == f[1] == f[2]:
                    ok = False
        if ok:
            yield bits



def _distinct_nice_edges(cells, segs, oriented) -> bool:
    """The middle prism simplex of each triangle meets the boundary in two edges;
    these must be four different surface edges for the nice-edge count to reach 4g."""
    seen = set()
    for cell in cells:
        if len(cell) != 3:
            continue
        lo, mid, hi = _triangle_order(cell, oriented)
        for seg, level in (((lo, mid), 0), ((mid, hi), 1)):
            key = (segs[seg][0], level)
            if key in seen:
                return False
            seen.add(key)
    return True


def polygon_scheme(g: int) -> PolygonScheme:
    """Fan decomposition of the ``4g``-gon into ``2g - 2`` quads and 2 triangles,
    with edge orientations alternating around every quad and acyclic on triangles."""
    if g < 1:
        raise PseudomanifoldError("genus must be >= 1")
    side_segs, pairs = _side_structure(g)
    for tri_at in combinations(range(2 * g), 2):
        cells = _fan(g, tri_at)
        segs = dict(side_segs)
        next_id = 2 * g
        for cell in cells[:-1]:
            p, q = cell[0], cell[-1]
            segs[(p, q)] = (next_id, 0)
            segs[(q, p)] = (next_id, 1)
            next_id += 1
        for bits in _solve_orientations(cells, segs, next_id):
            oriented = {seg: bits[e] == (end == 0) for seg, (e, end) in segs.items()}
            if not _distinct_nice_edges(cells, segs, oriented):
                continue
            quads = tuple(tuple(c) for c in cells if len(c) == 4)
            tris = tuple(tuple(c) for c in cells if len(c) == 3)
            return PolygonScheme(g, quads, tris, pairs, segs, oriented)
    raise PseudomanifoldError(f"no admissible polygon scheme found for genus {g}")


def check_polygon_scheme(s: PolygonScheme) -> list[str]:
    """Problems with ``s``; empty when every scheme invariant holds."""
    problems = []
    N = s.corners
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_edge: dict[int, dict[int, list[int]]] = {}
    for (p, q), (e, end) in s.segments.items():
        by_edge.setdefault(e, {0: [], 1: []})[end].append(p)
    for e, ends in by_edge.items():
        for corners in ends.values():
            for c in corners[1:]:
                parent[find(c)] = find(corners[0])
    V = len({find(c) for c in range(N)})
    if V != 1:
        problems.append(f"{V} vertex classes, expected 1")
    chi = V - s.edge_count + len(s.cells())
    if chi != 2 - 2 * s.genus:
        problems.append(f"euler characteristic {chi}, expected {2 - 2 * s.genus}")
    if len(s.quads) != 2 * s.genus - 2 or len(s.triangles) != 2:
        problems.append("wrong number of cells")
    for (p, q), (e, end) in s.segments.items():
        if s.oriented[(p, q)] == s.oriented[(q, p)]:
            problems.append(f"segment {(p, q)} oriented both ways")
    for e, ends in by_edge.items():
        tails = set()
        for (p, q), (e2, end) in s.segments.items():
            if e2 == e:
                tails.add(end if s.oriented[(p, q)] else 1 - end)
        if len(tails) != 1:
            problems.append(f"edge {e} oriented inconsistently across identified sides")
    for cell in s.quads:
        f = [s.oriented[seg] for seg in _cell_segments(cell)]
        if any(f[t] == f[(t + 1) % 4] for t in range(4)):
            problems.append(f"quad {cell} is not alternating")
    for cell in s.triangles:
        f = [s.oriented[seg] for seg in _cell_segments(cell)]
        if f[0] == f[1] == f[2]:
            problems.append(f"triangle {cell} is a directed cycle")
    return problems


def _triangle_order(cell, oriented) -> tuple[int, int, int]:
    for order in permutations(cell):
        lo, mid, hi = order
        if oriented[(lo, mid)] and oriented[(mid, hi)] and oriented[(lo, hi)]:
            return order
    raise PseudomanifoldError(f"triangle {cell} has cyclic orientation")


def _cube(cell, oriented):
    """Five tetrahedra of the cube over an alternating quad.

    With ``A, C`` the sources, the central simplex is ``(A,0) (C,0) (B,1) (D,1)``
    and the side diagonals run from ``(source, 0)`` to ``(sink, 1)``.
    """
    A, B, C, D = cell
    if not oriented[(A, B)]:
        A, B, C, D = B, C, D, A
    return [
        ((A, 0), (C, 0), (B, 1), (D, 1)),
        ((B, 0), (A, 0), (C, 0), (B, 1)),
        ((D, 0), (A, 0), (C, 0), (D, 1)),
        ((A, 1), (A, 0), (B, 1), (D, 1)),
        ((C, 1), (C, 0), (B, 1), (D, 1)),
    ]


def _prism(cell, oriented):
    order = _triangle_order(cell, oriented)
    return [tuple((order[v], t) for v, t in tet) for tet in PRISM]


def product_surface_interval(g: int) -> Pseudomanifold:
    """Triangulation of ``S_g x [0, 1]`` with ``10(g - 1) + 6`` tetrahedra."""
    if g < 1:
        raise PseudomanifoldError("genus must be >= 1")
    s = polygon_scheme(g)
    tets = []  # (cell index, points)
    for c, cell in enumerate(s.cells()):
        pieces = _cube(cell, s.oriented) if len(cell) == 4 else _prism(cell, s.oriented)
        tets.extend((c, pts, cell) for pts in pieces)

    def point_key(c, cell, corners, pt):
        p, t = pt
        if len(corners) == 2:
            q = next(x for x in corners if x != p)
            e, end = s.segments[(p, q)]
            return ("edge", e, end, t)
        return ("cell", c, p, t)

    slots: dict = {}
    for i, (c, pts, cell) in enumerate(tets):
        for j in range(4):
            face_pts = [pts[v] for v in range(4) if v != j]
            corners = {p for p, _ in face_pts}
            keys = {v: point_key(c, cell, corners, pts[v]) for v in range(4) if v != j}
            slots.setdefault(frozenset(keys.values()), []).append((i, j, keys))

    gluings = []
    for key, members in slots.items():
        if len(members) == 1:
            continue
        if len(members) != 2:
            raise PseudomanifoldError(f"face {set(key)} shared by {len(members)} simplices")
        (i, j, ka), (i2, j2, kb) = members
        back = {k: v for v, k in kb.items()}
        perm = [0] * 4
        perm[j] = j2
        for v, k in ka.items():
            perm[v] = back[k]
        gluings.append(Gluing.between((i, j), (i2, j2), perm))
    return Pseudomanifold(3, len(tets), tuple(gluings))
