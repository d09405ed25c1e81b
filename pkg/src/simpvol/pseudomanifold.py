"""Face-glued simplex complexes.

An ``n``-dimensional pseudomanifold is a finite list of standard n-simplices
(vertices labelled ``0..n``) together with pairings of their codimension-one
faces.  Face ``j`` of a simplex is the face opposite vertex ``j``.  A gluing
carries a permutation ``m`` of all ``n + 1`` labels with ``m[j] == j'``; the
vertex ``v`` of face ``(i, j)`` is identified with vertex ``m[v]`` of face
``(i', j')``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Face = tuple[int, int]
FaceName = tuple[int, tuple[int, ...]]


class PseudomanifoldError(ValueError):
    """Raised when an operation's structural precondition fails."""


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    return tuple(inv)


def perm_compose(first: Sequence[int], then: Sequence[int]) -> tuple[int, ...]:
    """The permutation ``k -> then[first[k]]``."""
    return tuple(then[v] for v in first)


def _is_perm(perm: Sequence[int], size: int) -> bool:
    return len(perm) == size and sorted(perm) == list(range(size))


@dataclass(frozen=True, order=True)
class Gluing:
    a: Face
    b: Face
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "map", tuple(self.map))

    @classmethod
    def between(cls, a: Face, b: Face, perm: Sequence[int]) -> "Gluing":
        """Build a gluing in canonical orientation (``a < b``)."""
        a, b, perm = tuple(a), tuple(b), tuple(perm)
        if a > b and _is_perm(perm, len(perm)):
            return cls(b, a, perm_inverse(perm))
        return cls(a, b, perm)

    def inverse(self) -> "Gluing":
        return Gluing(self.b, self.a, perm_inverse(self.map))

    @property
    def relative_sign(self) -> int:
        """Required ratio ``eps_b / eps_a`` for the gluing to reverse orientation.

        Face ``j`` with its vertices in increasing order carries the induced
        orientation ``eps * (-1)**j``; pushing that ordering through ``map`` and
        comparing with ``(-1)**j'`` leaves ``-sign(map)``.
        """
        return -perm_sign(self.map)

    def as_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "map": list(self.map)}


@dataclass(frozen=True)
class Pseudomanifold:
    dimension: int
    simplices: int
    gluings: tuple[Gluing, ...] = ()

    def __post_init__(self) -> None:
        gl = []
        for g in self.gluings:
            if not isinstance(g, Gluing):
                g = Gluing(g[0], g[1], g[2])
            gl.append(Gluing.between(g.a, g.b, g.map))
        try:
            gl.sort()
        except TypeError:
            pass
        object.__setattr__(self, "gluings", tuple(gl))

    @cached_property
    def _partners(self) -> dict[Face, tuple[Face, tuple[int, ...]]]:
        partners: dict[Face, tuple[Face, tuple[int, ...]]] = {}
        for g in self.gluings:
            partners.setdefault(g.a, (g.b, g.map))
            partners.setdefault(g.b, (g.a, perm_inverse(g.map)))
        return partners

    def partner(self, face: Face) -> tuple[Face, tuple[int, ...]] | None:
        """The face glued to ``face`` and the vertex map into it, if any."""
        return self._partners.get(tuple(face))

    def is_glued(self, face: Face) -> bool:
        return tuple(face) in self._partners

    def boundary_faces(self) -> list[Face]:
        """Unglued codimension-one faces, sorted; index ``k`` is simplex ``k`` of ``boundary(P)``."""
        return [
            (i, j)
            for i in range(self.simplices)
            for j in range(self.dimension + 1)
            if (i, j) not in self._partners
        ]

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "simplices": self.simplices,
            "gluings": [g.as_dict() for g in self.gluings],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def validate(P: Pseudomanifold) -> list[str]:
    """Structural diagnostics; an empty list means ``P`` is a valid pseudomanifold."""
    diags: list[str] = []
    n, k = P.dimension, P.simplices
    if not isinstance(n, int) or n < 1:
        diags.append(f"dimension {n!r} must be an integer >= 1")
        return diags
    if not isinstance(k, int) or k < 0:
        diags.append(f"simplex count {k!r} must be a nonnegative integer")
        return diags
    seen: dict[Face, int] = {}
    for idx, g in enumerate(P.gluings):
        ok = True
        for face in (g.a, g.b):
            if len(face) != 2:
                diags.append(f"gluing {idx}: face {face} is not a (simplex, face) pair")
                ok = False
                continue
            i, j = face
            if not (0 <= i < k):
                diags.append(f"gluing {idx}: simplex index {i} out of range [0, {k})")
                ok = False
            if not (0 <= j <= n):
                diags.append(f"gluing {idx}: face index {j} out of range [0, {n}]")
                ok = False
        if not _is_perm(g.map, n + 1):
            diags.append(f"gluing {idx}: map {list(g.map)} is not a permutation of 0..{n}")
            ok = False
        if ok and g.map[g.a[1]] != g.b[1]:
            diags.append(
                f"gluing {idx}: map sends vertex {g.a[1]} to {g.map[g.a[1]]}, expected {g.b[1]}"
            )
        if g.a == g.b:
            diags.append(f"gluing {idx}: face glued to itself {tuple(g.a)}")
        for face in {g.a, g.b}:
            if face in seen:
                diags.append(f"face ({face[0]},{face[1]}) in two pairs (gluings {seen[face]} and {idx})")
            else:
                seen[face] = idx
    return diags


def require_valid(P: Pseudomanifold) -> None:
    diags = validate(P)
    if diags:
        raise PseudomanifoldError("; ".join(diags))


# --------------------------------------------------------------------------
# face classes


class _PermUnionFind:
    """Union-find whose edges carry vertex correspondences between faces."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.label: dict = {}
        self.twisted: set = set()

    def add(self, x, size: int) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.label[x] = tuple(range(size))

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, composing labels from the top down
        for node in reversed(path):
            lab = self.label[node]
            parent = self.parent[node]
            if parent != root:
                lab = perm_compose(lab, self.label[parent])
            self.label[node] = lab
            self.parent[node] = root
        return root

    def union(self, x, y, sigma: tuple[int, ...]) -> None:
        rx, ry = self.find(x), self.find(y)
        lx, ly = self.label[x], self.label[y]
        via = perm_compose(sigma, ly)  # x -> y -> ry
        if rx == ry:
            if via != lx:
                self.twisted.add(rx)
            return
        # rx -> x -> ry
        self.parent[rx] = ry
        self.label[rx] = perm_compose(perm_inverse(lx), via)
        if rx in self.twisted:
            self.twisted.discard(rx)
            self.twisted.add(ry)


@dataclass(frozen=True)
class FaceClassTable:
    """Equivalence classes of faces of ``|P|``, per dimension.

    Faces are named ``(simplex, sorted vertex tuple)``.  Each class is a sorted
    tuple of its members; the first member is the representative.
    ``to_rep[face]`` maps positions in the face's sorted vertex tuple to
    positions in the representative's.  A class is *twisted* when some face is
    identified with itself by a nontrivial vertex permutation.
    """

    dimension: int
    classes: tuple[tuple[tuple[FaceName, ...], ...], ...]
    class_of: dict[FaceName, int] = field(repr=False)
    to_rep: dict[FaceName, tuple[int, ...]] = field(repr=False)
    twisted: tuple[frozenset[int], ...] = ()

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def orientation_sign(self, face: FaceName) -> int:
        return perm_sign(self.to_rep[face])


def face_classes(P: Pseudomanifold) -> FaceClassTable:
    require_valid(P)
    return _face_classes(P)


def _face_classes(P: Pseudomanifold) -> FaceClassTable:
    n = P.dimension
    labels = range(n + 1)
    uf = _PermUnionFind()
    for i in range(P.simplices):
        for d in range(n + 1):
            for S in combinations(labels, d + 1):
                uf.add((i, S), d + 1)
    for g in P.gluings:
        (i, j), (i2, _), m = g.a, g.b, g.map
        rest = [v for v in labels if v != j]
        for d in range(n):
            for S in combinations(rest, d + 1):
                image = [m[v] for v in S]
                T = tuple(sorted(image))
                sigma = tuple(T.index(w) for w in image)
                uf.union((i, S), (i2, T), sigma)

    members: dict = {}
    for face in uf.parent:
        members.setdefault(uf.find(face), []).append(face)
    per_dim: list[list[tuple[FaceName, ...]]] = [[] for _ in range(n + 1)]
    twisted_roots = {uf.find(r) for r in uf.twisted}
    root_of_class: list[list] = [[] for _ in range(n + 1)]
    for root, faces in members.items():
        faces.sort()
        d = len(faces[0][1]) - 1
        per_dim[d].append(tuple(faces))
        root_of_class[d].append(root)
    class_of: dict[FaceName, int] = {}
    to_rep: dict[FaceName, tuple[int, ...]] = {}
    twisted: list[frozenset[int]] = []
    classes = []
    for d in range(n + 1):
        order = sorted(range(len(per_dim[d])), key=lambda c: per_dim[d][c][0])
        tw = set()
        for new, old in enumerate(order):
            faces = per_dim[d][old]
            if root_of_class[d][old] in twisted_roots:
                tw.add(new)
            rep_inv = perm_inverse(uf.label[faces[0]])
            for face in faces:
                class_of[face] = new
                to_rep[face] = perm_compose(uf.label[face], rep_inv)
        classes.append(tuple(per_dim[d][old] for old in order))
        twisted.append(frozenset(tw))
    return FaceClassTable(n, tuple(classes), class_of, to_rep, tuple(twisted))


def euler_characteristic(P: Pseudomanifold) -> int:
    counts = face_classes(P).counts
    return sum((-1) ** d * f for d, f in enumerate(counts))


# --------------------------------------------------------------------------
# boundary


def boundary(P: Pseudomanifold) -> Pseudomanifold:
    """The pseudomanifold ``dP`` built from the unglued faces of ``P``.

    Boundary simplex ``k`` is ``P.boundary_faces()[k]``; its vertex ``p`` is the
    ``p``-th smallest label of that face.  Ridges are paired by walking around
    their class through glued simplices until the second boundary face turns up.
    """
    require_valid(P)
    n = P.dimension
    if n < 2:
        raise PseudomanifoldError("boundary needs dimension >= 2")
    bfaces = P.boundary_faces()
    index = {f: k for k, f in enumerate(bfaces)}
    limit = 2 * P.simplices * (n + 1) + 2
    gluings = set()
    for (i, j) in bfaces:
        for v in range(n + 1):
            if v == j:
                continue
            ridge = [u for u in range(n + 1) if u not in (j, v)]
            cur, came, leave = i, j, v
            walk = {u: u for u in ridge}
            for _ in range(limit):
                step = P.partner((cur, leave))
                if step is None:
                    break
                (cur, enter), m = step
                walk = {u: m[w] for u, w in walk.items()}
                came, leave = enter, m[came]
            else:
                raise PseudomanifoldError(
                    f"ridge {ridge} of boundary face {(i, j)} never reaches a second boundary face"
                )
            end = (cur, leave)
            if end == (i, j) and came == v:
                raise PseudomanifoldError(f"ridge {ridge} of boundary face {(i, j)} is paired with itself")
            src = [u for u in range(n + 1) if u != j]
            dst = [u for u in range(n + 1) if u != leave]
            full = dict(walk)
            full[v] = came
            mu = tuple(dst.index(full[u]) for u in src)
            gluings.add(Gluing.between((index[(i, j)], src.index(v)), (index[end], dst.index(came)), mu))
    return Pseudomanifold(n - 1, len(bfaces), tuple(sorted(gluings)))


# --------------------------------------------------------------------------
# orientability, components, dual graph


@dataclass(frozen=True)
class OrientationAssignment:
    """Signs making every gluing orientation-reversing, or a witness against them.

    ``witness`` lists gluing indices forming a closed walk in the dual graph
    along which the required sign flips multiply to ``-1``.
    """

    signs: tuple[int, ...] | None
    witness: tuple[int, ...] = ()

    @property
    def orientable(self) -> bool:
        return self.signs is not None


def _adjacency(P: Pseudomanifold) -> list[list[tuple[int, int, int]]]:
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(P.simplices)]
    for idx, g in enumerate(P.gluings):
        s = g.relative_sign
        adj[g.a[0]].append((g.b[0], s, idx))
        adj[g.b[0]].append((g.a[0], s, idx))
    return adj


def orientability(P: Pseudomanifold) -> OrientationAssignment:
    require_valid(P)
    adj = _adjacency(P)
    signs = [0] * P.simplices
    via: list[tuple[int, int] | None] = [None] * P.simplices  # (parent, gluing idx)
    for root in range(P.simplices):
        if signs[root]:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, s, idx in adj[u]:
                want = signs[u] * s
                if not signs[w]:
                    signs[w] = want
                    via[w] = (u, idx)
                    queue.append(w)
                elif signs[w] != want:
                    return OrientationAssignment(None, _odd_cycle(via, u, w, idx))
    return OrientationAssignment(tuple(signs))


def _odd_cycle(via, u: int, w: int, closing: int) -> tuple[int, ...]:
    def path(x):
        out = []
        while via[x] is not None:
            parent, idx = via[x]
            out.append(idx)
            x = parent
        return out

    pu, pw = path(u), path(w)
    while pu and pw and pu[-1] == pw[-1]:
        pu.pop()
        pw.pop()
    return tuple(pu + [closing] + pw[::-1])


def _component_labels(P: Pseudomanifold) -> list[int]:
    label = [-1] * P.simplices
    adj = _adjacency(P)
    count = 0
    for root in range(P.simplices):
        if label[root] >= 0:
            continue
        label[root] = count
        stack = [root]
        while stack:
            u = stack.pop()
            for w, _, _ in adj[u]:
                if label[w] < 0:
                    label[w] = count
                    stack.append(w)
        count += 1
    return label


def connected_components(P: Pseudomanifold) -> list[Pseudomanifold]:
    """Split by dual-graph connectivity, ordered by lowest original simplex index."""
    require_valid(P)
    label = _component_labels(P)
    ncomp = max(label, default=-1) + 1
    members: list[list[int]] = [[] for _ in range(ncomp)]
    for i, c in enumerate(label):
        members[c].append(i)
    local = {}
    for comp in members:
        for new, old in enumerate(comp):
            local[old] = new
    glued: list[list[Gluing]] = [[] for _ in range(ncomp)]
    for g in P.gluings:
        c = label[g.a[0]]
        glued[c].append(Gluing((local[g.a[0]], g.a[1]), (local[g.b[0]], g.b[1]), g.map))
    return [Pseudomanifold(P.dimension, len(members[c]), tuple(glued[c])) for c in range(ncomp)]


@dataclass(frozen=True)
class DualGraph:
    vertices: int
    edges: int
    components: int

    @property
    def euler(self) -> int:
        return self.vertices - self.edges


def dual_graph(P: Pseudomanifold) -> DualGraph:
    require_valid(P)
    label = _component_labels(P)
    return DualGraph(P.simplices, len(P.gluings), max(label, default=-1) + 1)


@dataclass(frozen=True)
class BoundaryProfile:
    """``counts[i]`` = number of simplices with exactly ``i`` unglued faces."""

    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if i < len(self.counts) else 0

    @property
    def boundary_faces(self) -> int:
        return sum(i * t for i, t in enumerate(self.counts))


def boundary_profile(P: Pseudomanifold) -> BoundaryProfile:
    require_valid(P)
    n = P.dimension
    counts = [0] * (n + 2)
    for i in range(P.simplices):
        free = sum(1 for j in range(n + 1) if not P.is_glued((i, j)))
        counts[free] += 1
    return BoundaryProfile(tuple(counts))


def handlebody_genus(P: Pseudomanifold) -> int:
    """Genus of ``|P|`` minus a neighbourhood of its edges and vertices: ``1 - chi(dual graph)``."""
    require_valid(P)
    if P.dimension != 3:
        raise PseudomanifoldError("handlebody genus is defined for 3-dimensional input")
    dg = dual_graph(P)
    if dg.components != 1:
        raise PseudomanifoldError(f"expected a connected pseudomanifold, got {dg.components} components")
    return 1 - dg.euler


def elide_pendant_simplex(P: Pseudomanifold, i: int) -> Pseudomanifold:
    """Drop simplex ``i``, which must have exactly one glued face."""
    require_valid(P)
    if not 0 <= i < P.simplices:
        raise PseudomanifoldError(f"simplex {i} out of range")
    glued = [j for j in range(P.dimension + 1) if P.is_glued((i, j))]
    if len(glued) != 1:
        raise PseudomanifoldError(f"simplex {i} has {len(glued)} glued faces, expected exactly 1")

    def shift(face: Face) -> Face:
        return (face[0] - (face[0] > i), face[1])

    kept = tuple(
        Gluing(shift(g.a), shift(g.b), g.map) for g in P.gluings if g.a[0] != i and g.b[0] != i
    )
    return Pseudomanifold(P.dimension, P.simplices - 1, kept)


def disjoint_union(parts: Iterable[Pseudomanifold]) -> Pseudomanifold:
    parts = list(parts)
    if not parts:
        raise PseudomanifoldError("disjoint union of nothing")
    n = parts[0].dimension
    offset = 0
    gl = []
    for p in parts:
        if p.dimension != n:
            raise PseudomanifoldError("dimensions differ")
        gl.extend(Gluing((g.a[0] + offset, g.a[1]), (g.b[0] + offset, g.b[1]), g.map) for g in p.gluings)
        offset += p.simplices
    return Pseudomanifold(n, offset, tuple(gl))


# --------------------------------------------------------------------------
# JSON


def from_dict(data: dict) -> Pseudomanifold:
    """Parse the triangulation format, rejecting anything ``validate`` objects to.

    Raw entries must already be in canonical order (``a < b``) and sorted.
    """
    try:
        n = data["dimension"]
        k = data["simplices"]
        raw = data["gluings"]
        entries = [(tuple(e["a"]), tuple(e["b"]), tuple(e["map"])) for e in raw]
    except (KeyError, TypeError) as exc:
        raise PseudomanifoldError(f"malformed triangulation: {exc!r}") from None
    if any(type(x) is not int for e in entries for part in e for x in part) or type(n) is not int or type(k) is not int:
        raise PseudomanifoldError("malformed triangulation: non-integer entries")
    diags = []
    for idx, (a, b, _) in enumerate(entries):
        if not a < b:
            diags.append(f"gluing {idx}: entries must satisfy a < b, got a={list(a)} b={list(b)}")
    if [e[:2] for e in entries] != sorted(e[:2] for e in entries):
        diags.append("gluings are not sorted")
    P = Pseudomanifold(n, k, tuple(Gluing(a, b, m) for a, b, m in entries))
    diags = validate(P) + diags
    if diags:
        raise PseudomanifoldError("; ".join(diags))
    return P


def from_json(text: str) -> Pseudomanifold:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PseudomanifoldError(f"invalid JSON: {exc}") from None
    return from_dict(data)
