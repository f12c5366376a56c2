"""
Test scenariji za Julijine skupove, Latèsova preslikavanja i dijagnostike
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest
from scipy.special import ellipj

from dynamics.errors import DegenerateInputError, DegenerateLatticeError
from dynamics.julia import (
    Disk,
    LatticeSpec,
    Viewport,
    escape_time_raster,
    exceptional_points,
    inverse_iteration,
    is_non_normal,
    lattes_cn,
    lattes_sn,
    lattes_weierstrass,
    marty_diagnostic,
    preimages,
    transitivity_probe,
    weierstrass_p,
)
from dynamics.maps import INFINITY, RationalMap, eval_map


SQUARE = RationalMap.polynomial([0, 0, 1])
CHEBYSHEV_2 = RationalMap.polynomial([-1, 0, 2])


def test_viewport_and_disk():
    """Mreža piksela i diskovi."""
    print("\n🧪 TEST 1: Prozor i disk")
    print("=" * 50)

    viewport = Viewport(0j, 2.0, 4, 2)
    grid = viewport.grid()
    assert grid.shape == (2, 4)
    assert grid[0, 0] == pytest.approx(-1.5 + 0.5j)
    assert grid[1, 3] == pytest.approx(1.5 - 0.5j)
    assert viewport.pixel_of(-1.5 + 0.5j) == (0, 0)
    assert viewport.pixel_of(5.0 + 0j) is None

    with pytest.raises(ValueError):
        Viewport(0j, 0.0, 4, 4)
    with pytest.raises(ValueError):
        Disk(0j, -1.0)

    disk = Disk(1 + 1j, 0.5)
    samples = disk.samples(10, 10)
    assert samples.shape == (100,)
    assert np.all(disk.contains(samples))

    print("  ✅ Red 0 je gornji red, centri piksela su tačni")


def test_escape_raster():
    """Raster bekstva za z^2: unutrašnjost jediničnog diska je ograničena."""
    print("\n🧪 TEST 2: Raster bekstva")
    print("=" * 50)

    viewport = Viewport(0j, 2.0, 64, 64)
    raster = escape_time_raster(SQUARE, viewport, max_iter=200)
    assert raster.shape == (64, 64)
    modulus = np.abs(viewport.grid())
    margin = viewport.pixel_size
    assert np.all(raster.cells[modulus < 1 - margin] == -1)
    assert np.all(raster.cells[modulus > 1 + margin] >= 0)

    again = escape_time_raster(SQUARE, viewport, max_iter=200)
    assert np.array_equal(raster.cells, again.cells)

    with pytest.raises(ValueError):
        escape_time_raster(RationalMap.from_coefficients([1], [0, 1]), viewport)

    print(f"  ✅ Ograničenih piksela: {raster.counts().get(-1, 0)}")


def test_inverse_iteration():
    """Oblak unazadnih orbita leži na Julijinom skupu."""
    print("\n🧪 TEST 3: Inverzna iteracija")
    print("=" * 50)

    for degree in (2, 3, 4):
        power = RationalMap.polynomial([0] * degree + [1])
        cloud = inverse_iteration(power, 1, 8)
        assert len(cloud) > 8
        assert max(abs(abs(p) - 1) for p in cloud.points) < 1e-8
        print(f"  ✅ z^{degree}: {len(cloud)} tačaka na jediničnom krugu")

    cloud = inverse_iteration(CHEBYSHEV_2, 1, 8)
    assert all(abs(p.imag) < 1e-9 and abs(p.real) <= 1 + 1e-9 for p in cloud.points)
    assert set(cloud.levels) == set(range(9))

    cubic = RationalMap.polynomial([0, 3, 0, -4])
    cloud = inverse_iteration(cubic, 0j, 6)
    assert all(abs(p.imag) < 1e-9 and abs(p.real) <= 1 + 1e-9 for p in cloud.points)

    # Isto seme daje isti oblak
    capped = inverse_iteration(SQUARE, 1, 10, cap=100, rng_seed=7)
    assert capped.points == inverse_iteration(SQUARE, 1, 10, cap=100, rng_seed=7).points
    assert max(len(capped.level(k)) for k in range(1, 11)) <= 10

    print("  ✅ 2z^2-1 i 3z-4z^3 ostaju na [-1, 1]")


def test_exceptional_points():
    """Izuzetne tačke i konačne unazadne orbite."""
    print("\n🧪 TEST 4: Izuzetne tačke")
    print("=" * 50)

    exceptional = exceptional_points(SQUARE)
    assert len(exceptional) == 2
    assert exceptional[0] == pytest.approx(0)
    assert exceptional[1] is INFINITY
    assert exceptional_points(RationalMap.polynomial([-1, 0, 1])) == [INFINITY]

    with pytest.raises(DegenerateInputError):
        inverse_iteration(SQUARE, 0j, 3)
    with pytest.raises(DegenerateInputError):
        inverse_iteration(SQUARE, INFINITY, 3)

    roots = preimages(SQUARE, 4)
    assert len(roots) == 2
    assert roots[0] == pytest.approx(-2)
    assert roots[1] == pytest.approx(2)

    print(f"  ✅ Izuzetne tačke z^2: {exceptional}")


def test_lattes_maps():
    """Latèsova preslikavanja i semikonjugacije."""
    print("\n🧪 TEST 5: Latèsova preslikavanja")
    print("=" * 50)

    with pytest.raises(DegenerateLatticeError):
        lattes_weierstrass(0, 0)
    with pytest.raises(DegenerateLatticeError):
        lattes_weierstrass(3, 1)

    lattice = LatticeSpec.lemniscatic(4.0)
    assert lattice.g2 == pytest.approx(4.0, abs=1e-8)
    assert abs(lattice.g3) < 1e-8

    R = lattes_weierstrass(lattice.g2, lattice.g3)
    assert R.degree == 4
    for u in (0.3 + 0.2j, 0.7 + 0.1j, 0.45 + 0.55j):
        doubled = weierstrass_p(lattice, 2 * u)
        image = eval_map(R, weierstrass_p(lattice, u))
        assert abs(doubled - image) / max(1.0, abs(doubled)) < 1e-4

    k = 0.5
    sn_map, cn_map = lattes_sn(k), lattes_cn(k)
    for u in (0.3, 0.7, 1.1):
        sn1, cn1, _, _ = ellipj(u, k * k)
        sn2, cn2, _, _ = ellipj(2 * u, k * k)
        assert eval_map(sn_map, sn1 ** 2).real == pytest.approx(sn2 ** 2, rel=1e-10, abs=1e-12)
        assert eval_map(cn_map, cn1).real == pytest.approx(cn2, rel=1e-10, abs=1e-12)

    with pytest.raises(DegenerateLatticeError):
        LatticeSpec(1.0, 2.0)

    print(f"  ✅ g2 = {lattice.g2.real:.10f}, P(2u) = R(P(u))")


def test_marty_and_transitivity():
    """Martijeva dijagnostika i tranzitivnost."""
    print("\n🧪 TEST 6: Normalnost i tranzitivnost")
    print("=" * 50)

    inside = marty_diagnostic(SQUARE, Disk(0j, 0.5), n_max=20)
    assert len(inside) == 20
    assert inside[-1] < 1e-6
    assert not is_non_normal(inside)

    lattes_maps = [lattes_weierstrass(4, 0), lattes_sn(0.5)]
    for R in lattes_maps:
        values = marty_diagnostic(R, Disk(0.3 + 0.2j, 0.05), n_max=25)
        assert np.max(values) > 1e3
        assert is_non_normal(values)

    hit = transitivity_probe(lattes_maps[0], Disk(0.3 + 0.2j, 0.05), Disk(-2 + 1j, 0.5), 20)
    assert hit is not None and 1 <= hit <= 20

    assert transitivity_probe(SQUARE, Disk(1, 0.05), Disk(np.exp(3j), 0.5), 20) is not None
    assert transitivity_probe(SQUARE, Disk(0j, 0.3), Disk(2, 0.1), 20) is None

    print(f"  ✅ Latès: prvi pogodak posle {hit} iteracija")


def test_transitivity_small_disks():
    """Mali diskovi: U preko J stiže u V, U u Fatuovom skupu ne stiže."""
    print("\n🧪 TEST 7: Tranzitivnost za male diskove")
    print("=" * 50)

    arc = Disk(np.exp(0.05j), 0.01)
    square_hit = transitivity_probe(SQUARE, arc, Disk(np.exp(3j), 0.1), 20)
    assert square_hit is not None and 1 <= square_hit <= 20

    lattes_hit = transitivity_probe(lattes_weierstrass(4, 0),
                                    Disk(0.3 + 0.2j, 0.1), Disk(-2 + 1j, 0.1), 20)
    assert lattes_hit is not None and 1 <= lattes_hit <= 20

    # U leži u bazenu nule, V van jediničnog diska
    assert transitivity_probe(SQUARE, Disk(0.3, 0.1), Disk(5, 0.1), 20) is None
    assert transitivity_probe(SQUARE, Disk(3, 0.1), Disk(0.5j, 0.1), 20) is None

    print(f"  ✅ z^2: {square_hit}, Latès: {lattes_hit}")


def run_all_tests():
    """Pokreće sve testove."""
    print("🚀 JULIA TEST SUITE")
    print("=" * 60)

    test_viewport_and_disk()
    test_escape_raster()
    test_inverse_iteration()
    test_exceptional_points()
    test_lattes_maps()
    test_marty_and_transitivity()
    test_transitivity_small_disks()

    print("\n✅ Svi testovi završeni!")


if __name__ == "__main__":
    run_all_tests()
