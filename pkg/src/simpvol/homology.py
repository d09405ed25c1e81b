"""Integral homology of ``|P|`` via the face-class chain complex."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .pseudomanifold import FaceClassTable, Pseudomanifold, PseudomanifoldError, face_classes

Matrix = dict[tuple[int, int], int]


def invariant_factors(entries: Matrix) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a sparse integer matrix.

    ``entries`` maps ``(row, col)`` to a nonzero int.  Factors are positive and
    each divides the next.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    diag: list[int] = []
    # unit pivots first; they keep the matrix sparse and the entries small
    while True:
        pivot = None
        for r, row in rows.items():
            for c, v in row.items():
                if v in (1, -1):
                    pivot = (r, c, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c, v = pivot
        prow = rows.pop(r)
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            f = row2[c] * v  # v = +-1, so row2[c] / v == row2[c] * v
            for c2, v2 in prow.items():
                nv = row2.get(c2, 0) - f * v2
                if nv:
                    if c2 not in row2:
                        cols.setdefault(c2, set()).add(r2)
                    row2[c2] = nv
                else:
                    row2.pop(c2, None)
                    cols[c2].discard(r2)
            if not row2:
                del rows[r2]
        for c2 in prow:
            cols[c2].discard(r)
        del cols[c]
        diag.append(1)

    if rows:
        rlist = sorted(rows)
        clist = sorted({c for row in rows.values() for c in row})
        dense = [[rows[r].get(c, 0) for c in clist] for r in rlist]
        diag.extend(_dense_diagonal(dense))
    return _normalize(diag)


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(cand)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def _normalize(diag: list[int]) -> list[int]:
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def boundary_matrix(table: FaceClassTable, d: int) -> Matrix:
    """Matrix of the cellular boundary ``C_d -> C_{d-1}`` (rows: (d-1)-classes)."""
    out: Matrix = {}
    for c, members in enumerate(table.classes[d]):
        i, S = members[0]
        for k in range(len(S)):
            facet = (i, S[:k] + S[k + 1 :])
            row = table.class_of[facet]
            coeff = (-1) ** k * table.orientation_sign(facet)
            out[(row, c)] = out.get((row, c), 0) + coeff
    return {key: v for key, v in out.items() if v}


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(P: Pseudomanifold, d: int) -> HomologyGroup:
    table = face_classes(P)
    n = P.dimension
    if d < 0 or d > n:
        return HomologyGroup(0)
    for dim in (d, d + 1):
        if dim <= n and table.twisted[dim]:
            raise PseudomanifoldError(
                f"some {dim}-face is identified with itself by a nontrivial permutation; "
                "the realization is not a Delta-complex"
            )
    rank_d = len(invariant_factors(boundary_matrix(table, d))) if d >= 1 else 0
    upper = invariant_factors(boundary_matrix(table, d + 1)) if d < n else []
    betti = table.counts[d] - rank_d - len(upper)
    return HomologyGroup(betti, tuple(x for x in upper if x > 1))


def betti_numbers(P: Pseudomanifold) -> tuple[int, ...]:
    return tuple(homology(P, d).betti for d in range(P.dimension + 1))
