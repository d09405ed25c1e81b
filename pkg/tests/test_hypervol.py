import cmath
import math
import random

import pytest
from scipy.integrate import quad

from simpvol.hypervol import (
    catalan,
    constants,
    ideal_tetrahedron_volume,
    ideal_volume_from_vertices,
    jungreis_bound,
    lobachevsky,
    obtuse_volume_caps,
    regular_truncated_volume,
    small_manifold_table,
    thm_f_bound,
)

PI = math.pi


def lob_quadrature(theta):
    """-int_0^theta log(2 sin u) du for 0 < theta < pi, log singularities integrated exactly."""
    smooth, _ = quad(lambda u: math.log(2 * math.sin(u) / (u * (PI - u))), 0, theta, epsabs=1e-13, epsrel=1e-13, limit=200)
    at_zero = theta * math.log(theta) - theta
    at_pi = -(PI - theta) * math.log(PI - theta) + (PI - theta) + PI * math.log(PI) - PI
    return -(smooth + at_zero + at_pi)


def lob_fourier(theta, terms=20000):
    return 0.5 * sum(math.sin(2 * k * theta) / k**2 for k in range(1, terms + 1))


def test_lobachevsky_anchor_values():
    assert lobachevsky(0) == 0
    assert abs(lobachevsky(PI / 3) - 0.338314) < 1e-6
    assert abs(lobachevsky(PI / 4) - 0.457983) < 1e-6
    for x in (PI / 2, PI, 2 * PI, -PI):
        assert abs(lobachevsky(x)) < 1e-11


def test_lobachevsky_symmetries():
    rng = random.Random(1)
    for _ in range(200):
        t = rng.uniform(-10, 10)
        assert abs(lobachevsky(-t) + lobachevsky(t)) < 1e-11
        assert abs(lobachevsky(t + PI) - lobachevsky(t)) < 1e-11
        assert abs(lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + PI / 2)) < 1e-10


def test_lobachevsky_matches_quadrature():
    rng = random.Random(7)
    for _ in range(100):
        t = rng.uniform(1e-3, PI - 1e-3)
        assert abs(lobachevsky(t) - lob_quadrature(t)) < 1e-9


def test_lobachevsky_matches_fourier_series():
    for t in (0.1, 0.7, 1.3, 2.0, 2.9):
        assert abs(lobachevsky(t) - lob_fourier(t)) < 1e-4


def test_lobachevsky_rejects_nonfinite():
    with pytest.raises(ValueError):
        lobachevsky(math.inf)


def test_catalan():
    G = catalan()
    assert abs(G - 0.915965) < 1e-6
    assert abs(2 * lobachevsky(PI / 4) - G) < 1e-10
    assert 0.9 < G < constants().V3
    alt, _ = quad(lambda x: -math.log(x) / (1 + x * x), 0, 1, epsabs=1e-14)
    assert abs(G - alt) < 1e-12


def test_constants():
    k = constants()
    assert abs(k.V3 - 1.014942) < 1e-6
    assert k.V2 == PI
    assert 0.0407 < k.C_F < 0.0409


def test_ideal_tetrahedron_examples():
    assert abs(ideal_tetrahedron_volume(PI / 3, PI / 3, PI / 3) - 1.014942) < 1e-6
    assert abs(ideal_tetrahedron_volume(PI / 2, PI / 4, PI / 4) - 0.915965) < 1e-6
    eps = 1e-4
    assert ideal_tetrahedron_volume(PI - 2 * eps, eps, eps) < 0.01
    with pytest.raises(ValueError):
        ideal_tetrahedron_volume(1, 1, 1)
    with pytest.raises(ValueError):
        ideal_tetrahedron_volume(0, PI / 2, PI / 2)


def test_regular_ideal_tetrahedron_is_largest():
    rng = random.Random(3)
    v3 = constants().V3
    for _ in range(1000):
        a = rng.uniform(1e-6, PI)
        b = rng.uniform(1e-6, PI - a)
        c = PI - a - b
        if c <= 0:
            continue
        assert ideal_tetrahedron_volume(a, b, c) <= v3 + 1e-12


def test_volume_from_vertices():
    v = ideal_tetrahedron_volume(PI / 3, PI / 3, PI / 3)
    assert abs(ideal_volume_from_vertices(0, 1, None, cmath.exp(1j * PI / 3)) - v) < 1e-12
    assert abs(ideal_volume_from_vertices(0, 1, math.inf, 1j) - 0.915965) < 1e-6
    assert ideal_volume_from_vertices(0, 1, None, 0.5) == 0
    # orientation of the vertex list does not matter
    assert abs(ideal_volume_from_vertices(0, 1, None, -1j) - 0.915965) < 1e-6
    with pytest.raises(ValueError):
        ideal_volume_from_vertices(0, 0, None, 1j)
    with pytest.raises(ValueError):
        ideal_volume_from_vertices(0, None, None, 1j)


def test_volume_from_four_finite_vertices():
    # a Moebius image of the regular configuration keeps its volume
    def f(z):
        return 1 / (z - 2) if z is not None else 0

    v = ideal_volume_from_vertices(*(f(z) for z in (0, 1, None, cmath.exp(1j * PI / 3))))
    assert abs(v - constants().V3) < 1e-12


def test_truncated_volumes():
    assert abs(2 * regular_truncated_volume(2) - 6.452) < 1e-3
    assert abs(3 * regular_truncated_volume(3) - 10.429) < 1e-3
    assert abs(4 * regular_truncated_volume(4) - 14.238) < 1e-3
    with pytest.raises(ValueError):
        regular_truncated_volume(1)


def test_truncated_volume_against_adaptive_quadrature():
    for g in (2, 3, 7):
        integral, _ = quad(lambda t: math.acosh(math.cos(t) / (2 * math.cos(t) - 1)), 0, PI / (3 * g), epsabs=1e-14)
        expected = 8 * lobachevsky(PI / 4) - 3 * integral
        assert abs(regular_truncated_volume(g) - expected) < 1e-10


def test_truncated_volume_increasing_and_capped():
    cap = 4 * catalan()
    vals = [regular_truncated_volume(g) for g in range(2, 201)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(v < cap for v in vals)


def test_jungreis_and_thm_f():
    assert abs(jungreis_bound(constants().V3) - 1) < 1e-15
    assert abs(jungreis_bound(2 * regular_truncated_volume(2)) - 6.357) < 2e-3
    assert abs(jungreis_bound(3 * regular_truncated_volume(3)) - 10.274) < 2e-3
    f = thm_f_bound(2 * regular_truncated_volume(2), 4)
    assert abs(f - 6.461) < 2e-3
    assert abs(f / 4 - 1.615) < 1e-3
    assert abs(thm_f_bound(3 * regular_truncated_volume(3), 8) - 10.882) < 2e-3
    assert thm_f_bound(100, 4) == jungreis_bound(100)
    with pytest.raises(ValueError):
        jungreis_bound(0)
    with pytest.raises(ValueError):
        thm_f_bound(-1, 4)


def test_thm_f_never_below_jungreis():
    rng = random.Random(11)
    for _ in range(500):
        vol = rng.uniform(0.01, 100)
        b = rng.uniform(0, 60)
        f, j = thm_f_bound(vol, b), jungreis_bound(vol)
        assert f >= j
        if 1.75 * b <= j:
            assert f == j


def test_obtuse_caps():
    two, one = obtuse_volume_caps()
    assert abs(two - 0.507471) < 1e-6
    assert abs(one - 0.915965) < 1e-6
    assert one > two


def test_table_rows():
    rows = small_manifold_table(5)
    assert [r.g for r in rows] == [2, 3, 4, 5]
    r2, r3, r4, r5 = rows
    assert r2.boundary_norm == 4 and abs(r2.min_vol - 6.452) < 1e-3
    assert r2.best_source == "thm_f" and abs(r2.thm_f - 6.461) < 2e-3
    assert r4.thm_c == 15 and abs(r4.thm_f - 15.165) < 2e-3 and r4.best_source == "thm_f"
    assert r5.best_source == "thm_c" and r5.thm_c > r5.thm_f > r5.jungreis
    assert r5.cmp1 and r5.cmp2
    assert list(r2.as_dict()) == [
        "g", "boundary_norm", "min_vol", "jungreis", "thm_c", "thm_f", "best", "best_source", "cmp1", "cmp2",
    ]
    with pytest.raises(ValueError):
        small_manifold_table(1)
