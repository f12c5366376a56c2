"""
Test scenariji za fiksne tačke, cikluse i granicu 2d-2
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import cmath
import logging
import math
from fractions import Fraction

import pytest

from dynamics.errors import CycleResidualError, DegreeTooLargeError
from dynamics.fixedpoints import (
    MultiplierKind,
    classify,
    fixed_points,
    holomorphic_index,
    multiplier,
    nonrepelling_count,
    periodic_cycles,
    poly_roots,
)
from dynamics.julia import lattes_weierstrass
from dynamics.maps import INFINITY, Polynomial, RationalMap, sort_key
from utils.config import Config


BASILICA = RationalMap.polynomial([-1, 0, 1])


def test_poly_roots():
    """Koreni polinoma i višestrukost."""
    print("\n🧪 TEST 1: Koreni polinoma")
    print("=" * 50)

    roots = sorted(poly_roots(Polynomial.from_roots([1, -2, 3j])), key=sort_key)
    assert roots[0] == pytest.approx(-2)
    assert roots[1] == pytest.approx(3j)
    assert roots[2] == pytest.approx(1)

    # Visok stepen: z^20 - 1
    unity = poly_roots(Polynomial([-1] + [0] * 19 + [1]))
    assert len(unity) == 20
    assert max(abs(abs(r) - 1) for r in unity) < 1e-10

    print("  ✅ Koreni nađeni Aberthovom metodom")


def test_multiplier_classes():
    """Klasifikacija multiplikatora."""
    print("\n🧪 TEST 2: Klase multiplikatora")
    print("=" * 50)

    assert classify(0).kind == MultiplierKind.SUPERATTRACTING
    assert classify(0.5j).kind == MultiplierKind.ATTRACTING
    assert classify(2).kind == MultiplierKind.REPELLING

    parabolic = classify(1)
    assert parabolic.kind == MultiplierKind.RATIONALLY_NEUTRAL
    assert parabolic.parabolic
    assert parabolic.label() == "rationally-neutral (parabolic)"

    half_turn = classify(-1)
    assert half_turn.kind == MultiplierKind.RATIONALLY_NEUTRAL
    assert not half_turn.parabolic
    assert half_turn.rotation == Fraction(1, 2)

    golden = classify(cmath.exp(2j * math.pi * (math.sqrt(5) - 1) / 2))
    assert golden.kind == MultiplierKind.IRRATIONALLY_NEUTRAL

    print("  ✅ λ=1 parabolično, λ=-1 rotacija 1/2")


def test_fixed_points_and_index():
    """Fiksne tačke z^2 - 1 i holomorfni indeksi."""
    print("\n🧪 TEST 3: Fiksne tačke i indeksi")
    print("=" * 50)

    points = sorted(fixed_points(BASILICA), key=sort_key)
    golden = (1 + math.sqrt(5)) / 2
    assert len(points) == 3
    assert points[0] == pytest.approx(1 - golden)
    assert points[1] == pytest.approx(golden)
    assert points[2] is INFINITY

    assert multiplier(BASILICA, [points[1]]) == pytest.approx(2 * golden)
    assert multiplier(BASILICA, [INFINITY]) == pytest.approx(0)

    index_sum = sum(holomorphic_index(BASILICA, p) for p in points)
    assert index_sum == pytest.approx(1.0, abs=1e-9)

    # z + z^2 ima parabolično 0: indeks nije definisan
    assert holomorphic_index(RationalMap.polynomial([0, 1, 1]), 0j) is None

    with pytest.raises(CycleResidualError):
        multiplier(BASILICA, [0.5])

    print(f"  ✅ Suma indeksa = {index_sum:.12f}")


def test_periodic_cycles():
    """Ciklus {-1, 0} preslikavanja z^2 - 1."""
    print("\n🧪 TEST 4: Periodični ciklusi")
    print("=" * 50)

    cycles = periodic_cycles(BASILICA, 2)
    period_one = [c for c in cycles if c.exact_period == 1]
    period_two = [c for c in cycles if c.exact_period == 2]
    assert len(period_one) == 3
    assert len(period_two) == 1

    cycle = period_two[0]
    assert cycle.points[0] == pytest.approx(-1, abs=1e-9)
    assert cycle.points[1] == pytest.approx(0, abs=1e-9)
    assert abs(cycle.multiplier) < 1e-9
    assert cycle.classification.kind == MultiplierKind.SUPERATTRACTING

    # Sortirano po periodu
    assert [c.exact_period for c in cycles] == sorted(c.exact_period for c in cycles)

    with pytest.raises(ValueError):
        periodic_cycles(BASILICA, 7)
    with Config.overridden(MAX_CYCLE_DEGREE=8):
        with pytest.raises(DegreeTooLargeError):
            periodic_cycles(BASILICA, 4)

    print(f"  ✅ Ciklus perioda 2: {cycle.points}")


def test_nonrepelling_bound():
    """Granica broja ne-odbijajućih ciklusa."""
    print("\n🧪 TEST 5: Granica 2d-2")
    print("=" * 50)

    check = nonrepelling_count(BASILICA, 2)
    assert check.bound == 2
    assert check.count == 2
    assert check.within_bound

    # z^2 - 1/2: privlačna fiksna tačka i ∞
    attracting = nonrepelling_count(RationalMap.polynomial([-0.5, 0, 1]), 1)
    assert attracting.count == 2
    assert attracting.within_bound

    lattes = nonrepelling_count(lattes_weierstrass(4, 0), 2)
    assert lattes.bound == 6
    assert lattes.count == 0
    assert all(c.is_repelling for c in lattes.cycles)

    print(f"  ✅ z^2-1: {check.count} ≤ {check.bound}, Latès: {lattes.count}")


def test_nonrepelling_period_three():
    """z^2 i z^2 + 1/4 do perioda 3."""
    print("\n🧪 TEST 6: Ne-odbijajući ciklusi do perioda 3")
    print("=" * 50)

    square = nonrepelling_count(RationalMap.polynomial([0, 0, 1]), 3)
    assert (square.count, square.bound) == (2, 2)
    assert square.max_period == 3
    kept = [c for c in square.cycles if not c.is_repelling]
    assert len(kept) == 2
    assert any(c.points[0] is INFINITY for c in kept)
    assert any(c.points[0] is not INFINITY and abs(c.points[0]) < 1e-9 for c in kept)
    assert all(c.classification.kind == MultiplierKind.SUPERATTRACTING for c in kept)
    # Ciklusi perioda 2 i 3 leže na jediničnoj kružnici
    for cycle in square.cycles:
        if cycle.exact_period > 1:
            assert len(cycle.points) == cycle.exact_period
            assert all(abs(abs(p) - 1) < 1e-9 for p in cycle.points)
            assert abs(cycle.multiplier) == pytest.approx(2 ** cycle.exact_period)

    cauliflower = nonrepelling_count(RationalMap.polynomial([0.25, 0, 1]), 3)
    assert (cauliflower.count, cauliflower.bound) == (2, 2)
    assert cauliflower.within_bound
    half = [c for c in cauliflower.cycles
            if c.exact_period == 1 and c.points[0] is not INFINITY]
    assert len(half) == 1
    assert half[0].points[0] == pytest.approx(0.5, abs=1e-6)
    assert half[0].multiplier == pytest.approx(1, abs=1e-6)
    assert not half[0].is_repelling

    print(f"  ✅ z^2: {square.count} ≤ {square.bound}, z^2+1/4: λ(1/2) ≈ 1")


def test_lattes_period_three(caplog):
    """Latèsovo preslikavanje: svi ciklusi odbijajući, |λ| = 2^n."""
    print("\n🧪 TEST 7: Latès do perioda 3")
    print("=" * 50)

    with caplog.at_level(logging.DEBUG, logger="dynamics.fixedpoints"):
        check = nonrepelling_count(lattes_weierstrass(4, 0), 3)

    assert check.count == 0
    assert check.bound == 6
    assert {c.exact_period for c in check.cycles} == {1, 2, 3}
    for cycle in check.cycles:
        if INFINITY in cycle.points:
            # ∞ odgovara tački rešetke gde ℘ ima dvostruki pol: R(z) ~ z/4
            assert cycle.exact_period == 1
            assert abs(cycle.multiplier) == pytest.approx(4)
        else:
            assert abs(cycle.multiplier) == pytest.approx(2 ** cycle.exact_period, rel=1e-6)

    # Odbačeni kandidati se beleže samo na debug nivou
    assert not [r for r in caplog.records if r.levelno >= logging.WARNING]

    print(f"  ✅ {len(check.cycles)} ciklusa, nijedan ne-odbijajući")


def run_all_tests():
    """Pokreće sve testove."""
    print("🚀 FIXED POINTS TEST SUITE")
    print("=" * 60)

    test_poly_roots()
    test_multiplier_classes()
    test_fixed_points_and_index()
    test_periodic_cycles()
    test_nonrepelling_bound()
    test_nonrepelling_period_three()
    # test_lattes_period_three traži pytest fixture caplog

    print("\n✅ Svi testovi završeni!")


if __name__ == "__main__":
    run_all_tests()
