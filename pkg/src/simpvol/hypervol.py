"""Hyperbolic volumes: Lobachevsky function, ideal and truncated tetrahedra, volume bounds."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta

_SERIES_TERMS = 60


@lru_cache(maxsize=None)
def _series_coefficients() -> tuple[float, ...]:
    # zeta(2k) / (k (2k+1) pi^(2k))
    return tuple(
        float(zeta(2 * k)) / (k * (2 * k + 1) * math.pi ** (2 * k)) for k in range(1, _SERIES_TERMS + 1)
    )


def _lob_reduced(x: float) -> float:
    """L on ``[0, pi/2]``."""
    if x == 0.0:
        return 0.0
    s = 0.0
    x2 = x * x
    p = x * x2
    for c in _series_coefficients():
        term = c * p
        s += term
        if abs(term) < 1e-18:
            break
        p *= x2
    return x - x * math.log(2 * x) + s


def lobachevsky(theta: float) -> float:
    """``-int_0^theta log|2 sin u| du``; odd and pi-periodic."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    x = math.fmod(theta, math.pi)
    if x < 0:
        x += math.pi
    if x > math.pi / 2:
        return -_lob_reduced(math.pi - x)
    return _lob_reduced(x)


def catalan() -> float:
    """Catalan's constant from ``sum (-1)^k / (2k+1)^2``, accelerated.

    Uses the Cohen, Rodriguez Villegas and Zagier weights for alternating series.
    """
    n = 40
    d = (3 + math.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b, c, s = -1.0, -d, 0.0
    for k in range(n):
        c = b - c
        s += c / (2 * k + 1) ** 2
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    return s / d


@dataclass(frozen=True)
class HypConstants:
    G: float
    V3: float
    V2: float
    C_F: float


@lru_cache(maxsize=None)
def constants() -> HypConstants:
    G = catalan()
    v3 = 3 * lobachevsky(math.pi / 3)
    return HypConstants(G=G, V3=v3, V2=math.pi, C_F=(v3 - G) / (2 * (3 * v3 - 2 * G)))


def ideal_tetrahedron_volume(alpha: float, beta: float, gamma: float) -> float:
    if min(alpha, beta, gamma) <= 0:
        raise ValueError("dihedral angles must be positive")
    if abs(alpha + beta + gamma - math.pi) > 1e-9:
        raise ValueError(f"angles sum to {alpha + beta + gamma!r}, not pi")
    return lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma)


def _cross_ratio(z0, z1, z2, z3) -> complex:
    # (z3 - z0)(z1 - z2) / ((z3 - z2)(z1 - z0)), dropping factors containing infinity
    num = [(z3, z0), (z1, z2)]
    den = [(z3, z2), (z1, z0)]

    def prod(pairs):
        out = 1 + 0j
        for a, b in pairs:
            if a is None or b is None:
                continue
            out *= a - b
        return out

    return prod(num) / prod(den)


def ideal_volume_from_vertices(z0, z1, z2, z3) -> float:
    """Volume of the ideal tetrahedron with these vertices on the sphere at infinity.

    Points are complex numbers; ``None`` or ``math.inf`` stands for infinity.
    """
    pts = []
    for z in (z0, z1, z2, z3):
        if z is None or (isinstance(z, (int, float)) and math.isinf(z)):
            pts.append(None)
        else:
            pts.append(complex(z))
    if sum(p is None for p in pts) > 1:
        raise ValueError("coincident points at infinity")
    finite = [p for p in pts if p is not None]
    for a in range(len(finite)):
        for b in range(a + 1, len(finite)):
            if abs(finite[a] - finite[b]) < 1e-15:
                raise ValueError("coincident vertices")
    z = _cross_ratio(*pts)
    if abs(z.imag) < 1e-14:
        return 0.0
    angles = [cmath.phase(z), cmath.phase(1 / (1 - z)), cmath.phase(1 - 1 / z)]
    if z.imag < 0:
        angles = [-a for a in angles]
    return abs(sum(lobachevsky(a) for a in angles))


def _truncated_integrand(t):
    # arccosh(cos t / (2 cos t - 1)) written as log1p to stay accurate near t = 0
    c = np.cos(t)
    x = 2 * np.sin(t / 2) ** 2 / (2 * c - 1)
    x = np.maximum(x, 0.0)
    return np.log1p(x + np.sqrt(x * (x + 2)))


def _gauss_legendre(f, a: float, b: float, tol: float = 1e-12) -> float:
    order = 8
    prev = None
    while order <= 4096:
        nodes, weights = np.polynomial.legendre.leggauss(order)
        t = 0.5 * (b - a) * nodes + 0.5 * (b + a)
        est = 0.5 * (b - a) * float(np.dot(weights, f(t)))
        if prev is not None and abs(est - prev) < tol:
            return est
        prev = est
        order *= 2
    return prev


def regular_truncated_volume(g: int) -> float:
    """Volume of the regular truncated tetrahedron with dihedral angle ``pi / 3g``."""
    if int(g) != g or g < 2:
        raise ValueError("g must be an integer >= 2")
    integral = _gauss_legendre(_truncated_integrand, 0.0, math.pi / (3 * g))
    return 8 * lobachevsky(math.pi / 4) - 3 * integral


def jungreis_bound(vol: float) -> float:
    if vol <= 0:
        raise ValueError("volume must be positive")
    return vol / constants().V3


def thm_f_bound(vol: float, bnorm: float) -> float:
    """Lower bound from volume and boundary norm; falls back to ``vol / v3`` when that is larger."""
    if vol <= 0:
        raise ValueError("volume must be positive")
    k = constants()
    ratio = vol / k.V3
    if 1.75 * bnorm <= ratio:
        return ratio
    return ratio + k.C_F * (7 * bnorm - 4 * ratio)


def obtuse_volume_caps() -> tuple[float, float]:
    """(cap with two obtuse-free corners ``v3/2``, cap with one ``G``)."""
    k = constants()
    return k.V3 / 2, k.G


@dataclass(frozen=True)
class TableRow:
    g: int
    boundary_norm: int
    min_vol: float
    jungreis: float
    thm_c: int
    thm_f: float
    best: float
    best_source: str
    cmp1: bool
    cmp2: bool

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "boundary_norm": self.boundary_norm,
            "min_vol": self.min_vol,
            "jungreis": self.jungreis,
            "thm_c": self.thm_c,
            "thm_f": self.thm_f,
            "best": self.best,
            "best_source": self.best_source,
            "cmp1": self.cmp1,
            "cmp2": self.cmp2,
        }


def small_manifold_table(gmax: int) -> list[TableRow]:
    """Bounds for the smallest manifolds with a genus-g geodesic boundary, g = 2..gmax."""
    if gmax < 2:
        raise ValueError("gmax must be >= 2")
    k = constants()
    rows = []
    for g in range(2, gmax + 1):
        vg = regular_truncated_volume(g)
        vol = g * vg
        b = 4 * (g - 1)
        cands = {"jungreis": jungreis_bound(vol), "thm_c": 5 * (g - 1), "thm_f": thm_f_bound(vol, b)}
        src = max(cands, key=lambda s: (cands[s], s == "thm_f"))
        shrink = 1 - 1 / g
        rows.append(
            TableRow(
                g=g,
                boundary_norm=b,
                min_vol=vol,
                jungreis=cands["jungreis"],
                thm_c=cands["thm_c"],
                thm_f=cands["thm_f"],
                best=float(cands[src]),
                best_source=src,
                cmp1=shrink * (k.V3 + 4 * k.G) > vg,
                cmp2=7 * shrink * k.V3 > vg,
            )
        )
    return rows
