"""
Test scenariji za Koenigsovu linearizaciju, Abelovu jednačinu i iterativne korene
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from dynamics.errors import BranchError, InvalidExponentError, WrongFixedPointTypeError
from dynamics.linearize import (
    LaurentSeries,
    abel_solve,
    koenigs,
    koenigs_repelling,
    poly_iter_root,
    poly_iter_roots,
    schroeder_series,
)
from dynamics.maps import Polynomial, RationalMap


ATTRACTING = RationalMap.polynomial([0, 0.5, 1])
FLIPPED = RationalMap.polynomial([0, -0.5, 1])
REPELLING = RationalMap.polynomial([0, 2, 1])


def test_koenigs_chart():
    """B(f(z)) = lambda B(z), B(0) = 0, B'(0) = 1."""
    print("\n🧪 TEST 1: Koenigsova karta")
    print("=" * 50)

    chart = koenigs(ATTRACTING, 0j)
    assert chart.parameters["multiplier"] == pytest.approx(0.5)
    assert chart(0j) == 0
    assert chart(1e-6) / 1e-6 == pytest.approx(1.0, abs=1e-5)
    for z in (0.05, 0.1j, -0.08 + 0.03j):
        assert chart.residual(ATTRACTING, z) < 1e-10
    assert chart.max_residual(ATTRACTING, chart.sample_points(50)) < 1e-10

    series = schroeder_series(ATTRACTING, 0j)
    assert series.c[1] == pytest.approx(1)
    assert series.c[2] == pytest.approx(1 / (0.5 - 0.25))
    assert abs(series(0.05) - chart(0.05)) < 1e-10

    with pytest.raises(WrongFixedPointTypeError):
        koenigs(RationalMap.polynomial([0, 0, 1]), 0j)
    with pytest.raises(WrongFixedPointTypeError):
        koenigs(REPELLING, 0j)

    print(f"  ✅ B(0.05) = {chart(0.05):.12f}")


def test_repelling_linearization():
    """Linearizacija odbijajuće tačke preko inverzne grane."""
    print("\n🧪 TEST 2: Odbijajuća fiksna tačka")
    print("=" * 50)

    chart = koenigs_repelling(REPELLING, 0j)
    assert chart.parameters["branch"] == "inverse"
    for z in (0.01, 0.02j):
        assert chart.residual(REPELLING, z) < 1e-9
    assert chart(1e-7) / 1e-7 == pytest.approx(1.0, abs=1e-5)

    with pytest.raises(WrongFixedPointTypeError):
        koenigs_repelling(ATTRACTING, 0j)

    print("  ✅ B(f(z)) = 2 B(z)")


def test_abel_equation():
    """psi(f(z)) - psi(z) = F(z) za celobrojne, razlomljene i konstantne članove."""
    print("\n🧪 TEST 3: Abelova jednačina")
    print("=" * 50)

    cases = {
        "F(z) = z": LaurentSeries(center=0j, m=1, coefficients={1: 1.0}),
        "F(z) = 2": LaurentSeries(center=0j, m=1, coefficients={0: 2.0}),
        "F(z) = z^(1/2)": LaurentSeries(center=0j, m=1, coefficients={2: 1.0}),
        "F(z) = 3 + z^2": LaurentSeries(center=0j, m=2, coefficients={0: 3.0, 1: 1.0}),
    }
    for name, F in cases.items():
        solution = abel_solve(ATTRACTING, 0j, F)
        for z in (0.05, 0.02):
            assert solution.residual(z) < 1e-8, f"{name} u {z}"
        assert solution.telescoping_error(0.05, 4) < 1e-8
        print(f"  ✅ {name}")

    # lambda = -1/2 okreće b oko nule, pa nastavak logaritma prelazi rez
    constant = LaurentSeries(center=0j, m=1, coefficients={0: 1.0})
    with pytest.raises(BranchError):
        abel_solve(FLIPPED, 0j, constant).residual(0.05j)

    with pytest.raises(ValueError):
        LaurentSeries(center=0j, m=1, coefficients={1: 1.0}, inner_radius=2.0, outer_radius=1.0)


def test_iterative_roots():
    """g∘g = F za polinome."""
    print("\n🧪 TEST 4: Iterativni koreni polinoma")
    print("=" * 50)

    F = Polynomial([2, 0, 2, 0, 1])  # (z^2 + 1)^2 + 1
    roots = poly_iter_roots(F, 2)
    assert len(roots) == 1
    assert roots[0].allclose(Polynomial([1, 0, 1]))
    assert poly_iter_root(F, 2).allclose(Polynomial([1, 0, 1]))

    # Treći iterat od z^2 - 1 ima koren stepena 2
    g = Polynomial([-1, 0, 1])
    third = g.compose(g.compose(g))
    assert poly_iter_root(third, 2).allclose(g)

    assert poly_iter_root(F, 4).allclose(F)
    # z^4 + z nema kvadratni iterativni koren
    assert poly_iter_root(Polynomial([0, 1, 0, 0, 1]), 2) is None
    assert poly_iter_root(Polynomial([1, 0, 0, 0, 1]), 2) is None

    with pytest.raises(InvalidExponentError):
        poly_iter_roots(F, 3)
    with pytest.raises(InvalidExponentError):
        poly_iter_roots(F, 1)

    print(f"  ✅ Koren od z^4+2z^2+2: {roots[0]}")


def run_all_tests():
    """Pokreće sve testove."""
    print("🚀 LINEARIZATION TEST SUITE")
    print("=" * 60)

    test_koenigs_chart()
    test_repelling_linearization()
    test_abel_equation()
    test_iterative_roots()

    print("\n✅ Svi testovi završeni!")


if __name__ == "__main__":
    run_all_tests()
