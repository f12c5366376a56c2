"""
Fiksne tačke i periodični ciklusi
Nalaženje korena, nabrajanje ciklusa, klasifikacija multiplikatora i provera granice 2d-2
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from dynamics.errors import CycleResidualError, DegreeTooLargeError, RootFindingError
from dynamics.maps import (
    INFINITY,
    Polynomial,
    RationalMap,
    SpherePoint,
    as_sphere_point,
    chordal_distance,
    eval_map,
    iterate_symbolic,
    rational_approximation,
    sort_key,
)
from utils.config import Config


logger = logging.getLogger(__name__)

SUPERATTRACTING_TOL = 1e-12
RESIDUAL_TOL = 1e-8
_BLOCK = 512


def _relative_residuals(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|p(z)| / sum |a_k||z|^k, za |z| > 1 preko obrnutog polinoma."""
    rev = monic[::-1]
    big = np.abs(z) > 1.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = np.where(big, 1.0 / np.where(big, z, 1.0), 0.0)
        num = np.where(big, npoly.polyval(w, rev), npoly.polyval(np.where(big, 0.0, z), monic))
        den = np.where(big, npoly.polyval(np.abs(w), np.abs(rev)),
                       npoly.polyval(np.where(big, 0.0, np.abs(z)), np.abs(monic)))
        return np.abs(num) / np.maximum(den, 1e-300)


def _newton_ratios(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z)/p'(z) bez prekoračenja za velike |z|."""
    m = len(monic) - 1
    rev = monic[::-1]
    big = np.abs(z) > 1.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        small_z = np.where(big, 0.0, z)
        inner = npoly.polyval(small_z, monic) / npoly.polyval(small_z, npoly.polyder(monic))
        w = np.where(big, 1.0 / np.where(big, z, 1.0), 0.0)
        r = npoly.polyval(w, rev)
        outer = z * r / (m * r - w * npoly.polyval(w, npoly.polyder(rev)))
        return np.where(big, outer, inner)


def _repulsion(z: np.ndarray) -> np.ndarray:
    """sum_{j != k} 1/(z_k - z_j), u blokovima."""
    m = len(z)
    result = np.empty(m, dtype=np.complex128)
    for start in range(0, m, _BLOCK):
        block = z[start:start + _BLOCK, None] - z[None, :]
        rows = np.arange(block.shape[0])
        block[rows, start + rows] = np.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            result[start:start + _BLOCK] = np.sum(1.0 / block, axis=1)
    return result


def _aberth(monic: np.ndarray, max_iter: int, tol: float) -> np.ndarray:
    m = len(monic) - 1
    rng = np.random.default_rng(0x5EED)
    radius = abs(monic[0]) ** (1.0 / m)
    angles = 2 * np.pi * np.arange(m) / m + 0.4 + 0.1 * rng.random(m)
    z = radius * (1.0 + 0.05 * rng.random(m)) * np.exp(1j * angles)

    for iteration in range(max_iter):
        ratio = _newton_ratios(monic, z)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            step = ratio / (1.0 - ratio * _repulsion(z))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(np.abs(z), 1e-300)):
            break
        if iteration >= 5 and np.all(_relative_residuals(monic, z) <= 1e-3 * tol):
            break
    logger.debug("Aberth: stepen %d, %d iteracija", m, iteration + 1)

    # Završno glačanje Njutnovim korakom
    for _ in range(2):
        ratio = _newton_ratios(monic, z)
        candidate = z - np.where(np.isfinite(ratio), ratio, 0.0)
        better = _relative_residuals(monic, candidate) < _relative_residuals(monic, z)
        z = np.where(better, candidate, z)
    return z


def poly_roots(p: Polynomial, max_iter: int = 500, tol: Optional[float] = None) -> np.ndarray:
    """
    Svi koreni polinoma sa višestrukošću (Aberthova simultana iteracija).

    Args:
        p: Polinom stepena >= 1
        max_iter: Maksimalan broj iteracija
        tol: Dozvoljen relativni rezidual |p(r)| / sum |c_k||r|^k

    Returns:
        Niz korena sortiran leksikografski po (re, im)
    """
    tol = Config.ROOT_TOL if tol is None else tol
    if p.degree < 1:
        raise ValueError("poly_roots zahteva polinom stepena bar 1")

    coeffs = p.coeffs
    at_origin = int(np.argmax(coeffs != 0))
    monic = coeffs[at_origin:] / coeffs[-1]
    m = len(monic) - 1

    if m == 0:
        found = np.zeros(0, dtype=np.complex128)
    elif m == 1:
        found = np.array([-monic[0]], dtype=np.complex128)
    else:
        found = _aberth(monic, max_iter, tol)
        residuals = _relative_residuals(monic, found)
        if not np.all(residuals <= tol):
            raise RootFindingError(
                f"Koreni stepena {m} nisu konvergirali (max rezidual {np.max(residuals):.3e})",
                residuals=residuals.tolist())

    roots = np.concatenate([np.zeros(at_origin, dtype=np.complex128), found])
    return np.sort(roots)


def cluster_roots(roots: Sequence[SpherePoint],
                  tol: Optional[float] = None) -> List[Tuple[SpherePoint, int]]:
    """
    Skuplja bliske korene u centroid sa višestrukošću.

    Args:
        roots: Koreni (mogu sadržati INFINITY)
        tol: Granica rastojanja |a - b| <= tol * max(1, |a|)

    Returns:
        Lista (centroid, višestrukost), sortirana leksikografski
    """
    tol = Config.CLUSTER_TOL if tol is None else tol
    clusters: List[List[SpherePoint]] = []
    for root in sorted((as_sphere_point(r) for r in roots), key=sort_key):
        for cluster in clusters:
            if any(_near(root, member, tol) for member in cluster):
                cluster.append(root)
                break
        else:
            clusters.append([root])

    result = []
    for cluster in clusters:
        if cluster[0] is INFINITY:
            result.append((INFINITY, len(cluster)))
        else:
            result.append((complex(np.mean(cluster)), len(cluster)))
    return sorted(result, key=lambda item: sort_key(item[0]))


def _near(a: SpherePoint, b: SpherePoint, tol: float) -> bool:
    if a is INFINITY or b is INFINITY:
        return a is b
    return abs(a - b) <= tol * max(1.0, abs(a))


class MultiplierKind(str, Enum):
    """Tipovi multiplikatora periodične tačke."""
    SUPERATTRACTING = "superattracting"
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    RATIONALLY_NEUTRAL = "rationally-neutral"
    IRRATIONALLY_NEUTRAL = "irrationally-neutral"


@dataclass(frozen=True)
class MultiplierClass:
    """Klasa multiplikatora; parabolic je True samo za lambda = 1."""
    kind: MultiplierKind
    parabolic: bool = False
    rotation: Optional[Fraction] = None

    @property
    def is_repelling(self) -> bool:
        return self.kind == MultiplierKind.REPELLING

    def label(self) -> str:
        if self.parabolic:
            return f"{self.kind.value} (parabolic)"
        return self.kind.value


def classify(lam: complex) -> MultiplierClass:
    """
    Klasifikuje multiplikator.

    Args:
        lam: Multiplikator lambda

    Returns:
        MultiplierClass; ||lambda| - 1| < NEUTRAL_TOL se tretira kao neutralno,
        a koren jedinice se prepoznaje verižnim razlomkom arg(lambda)/2pi
    """
    lam = complex(lam)
    modulus = abs(lam)
    if modulus <= SUPERATTRACTING_TOL:
        return MultiplierClass(MultiplierKind.SUPERATTRACTING)
    if abs(modulus - 1.0) < Config.NEUTRAL_TOL:
        turn = (cmath.phase(lam) / (2 * math.pi)) % 1.0
        rotation = rational_approximation(turn)
        if rotation is None:
            return MultiplierClass(MultiplierKind.IRRATIONALLY_NEUTRAL)
        if rotation.denominator == 1:
            return MultiplierClass(MultiplierKind.RATIONALLY_NEUTRAL, True, Fraction(0))
        return MultiplierClass(MultiplierKind.RATIONALLY_NEUTRAL, False, rotation)
    if modulus < 1.0:
        return MultiplierClass(MultiplierKind.ATTRACTING)
    return MultiplierClass(MultiplierKind.REPELLING)


@dataclass(frozen=True)
class Cycle:
    """Periodični ciklus sa tačnim periodom, multiplikatorom i klasom."""
    points: Tuple[SpherePoint, ...]
    exact_period: int
    multiplier: complex
    classification: MultiplierClass

    @property
    def is_repelling(self) -> bool:
        return self.classification.is_repelling


def fixed_points(f: RationalMap) -> List[SpherePoint]:
    """
    Fiksne tačke: koreni P(z) - zQ(z) i ∞ kada konjugat fiksira 0.

    Args:
        f: Preslikavanje stepena d >= 1

    Returns:
        Tačke sa višestrukošću (generički d+1), sortirane
    """
    g = f.numerator - Polynomial([0, 1]) * f.denominator
    g = g.trimmed()
    points: List[SpherePoint] = []
    if g.degree >= 1:
        for centroid, count in cluster_roots(poly_roots(g)):
            points.extend([centroid] * count)
    if eval_map(f.conjugate_at_infinity(), 0j) == 0:
        points.append(INFINITY)
    return points


def _local_derivative(f: RationalMap, a: SpherePoint) -> complex:
    """Izvod f u tački a u standardnoj karti (1/z samo u beskonačnosti)."""
    image = eval_map(f, a)
    if a is INFINITY:
        chart = f.conjugate_at_infinity() if image is INFINITY else f.source_chart_at_infinity()
        a, image_in_chart = 0j, eval_map(chart, 0j)
        f = chart
        if image_in_chart is INFINITY:
            raise CycleResidualError("Karta u beskonačnosti ima pol u 0", float("inf"))
    elif image is INFINITY:
        # 1/f = Q/P, izvod -W/P^2
        p = f.numerator(a)
        return -f.wronskian()(a) / (p * p)
    q = f.denominator(a)
    return f.wronskian()(a) / (q * q)


def cycle_residual(f: RationalMap, points: Sequence[SpherePoint]) -> float:
    """Najveće hordalno odstupanje f(points[k]) od points[k+1]."""
    m = len(points)
    return max(chordal_distance(eval_map(f, points[k]), points[(k + 1) % m]) for k in range(m))


def multiplier(f: RationalMap, cycle: Union[Cycle, Sequence[SpherePoint]]) -> complex:
    """
    Multiplikator ciklusa kao proizvod lokalnih izvoda (lančano pravilo).

    Args:
        f: Preslikavanje
        cycle: Cycle ili niz tačaka ciklusa

    Returns:
        lambda; u beskonačnosti se koristi izvod od 1/f(1/z) u 0
    """
    points = cycle.points if isinstance(cycle, Cycle) else [as_sphere_point(p) for p in cycle]
    residual = cycle_residual(f, points)
    if residual > RESIDUAL_TOL:
        raise CycleResidualError(f"Rezidual ciklusa {residual:.3e} je prevelik", residual)
    product = 1 + 0j
    for point in points:
        product *= _local_derivative(f, point)
    return product


def holomorphic_index(f: RationalMap, point: SpherePoint) -> Optional[complex]:
    """Indeks fiksne tačke 1/(1 - lambda); None za parabolične tačke."""
    lam = multiplier(f, [point])
    if abs(1 - lam) <= Config.NEUTRAL_TOL:
        return None
    return 1.0 / (1.0 - lam)


def _polish_periodic(f: RationalMap, z: complex, period: int,
                     W: Polynomial, steps: int = 4) -> complex:
    """Njutnovi koraci na f_n(z) - z računati tačku po tačku."""
    best, best_residual = z, _periodic_residual(f, z, period)
    for _ in range(steps):
        value, deriv = best, 1 + 0j
        for _ in range(period):
            q = f.denominator(value)
            if q == 0:
                return best
            deriv *= W(value) / (q * q)
            value = f.numerator(value) / q
        slope = deriv - 1
        if not (cmath.isfinite(value) and cmath.isfinite(slope)) or abs(slope) < 1e-6:
            break
        candidate = best - (value - best) / slope
        residual = _periodic_residual(f, candidate, period)
        if residual >= best_residual:
            break
        best, best_residual = candidate, residual
    return best


def _periodic_residual(f: RationalMap, z: SpherePoint, period: int) -> float:
    value = z
    for _ in range(period):
        value = eval_map(f, value)
    return chordal_distance(value, z)


def _periodic_candidates(f: RationalMap, k: int) -> List[SpherePoint]:
    fk = iterate_symbolic(f, k, max_degree=Config.MAX_CYCLE_DEGREE)
    g = (fk.numerator - Polynomial([0, 1]) * fk.denominator).trimmed()
    W = f.wronskian()
    points: List[SpherePoint] = []
    if g.degree >= 1:
        points.extend(_polish_periodic(f, complex(r), k, W) for r in poly_roots(g))
    if eval_map(fk.conjugate_at_infinity(), 0j) == 0:
        points.append(INFINITY)
    return [centroid for centroid, _ in cluster_roots(points)]


def periodic_cycles(f: RationalMap, n: int) -> List[Cycle]:
    """
    Svi ciklusi perioda k <= n sa multiplikatorima i klasama.

    Args:
        f: Preslikavanje stepena d >= 2
        n: Najveći period (1 <= n <= 6, d^n <= MAX_CYCLE_DEGREE)

    Returns:
        Ciklusi sortirani po periodu pa po prvoj tački
    """
    d = f.degree
    if d < 2:
        raise ValueError("Ciklusi se nabrajaju za stepen d >= 2")
    if not 1 <= n <= 6:
        raise ValueError("Period mora biti između 1 i 6")
    if d ** n > Config.MAX_CYCLE_DEGREE:
        raise DegreeTooLargeError(
            f"d^n = {d ** n} prelazi granicu {Config.MAX_CYCLE_DEGREE}",
            d ** n, Config.MAX_CYCLE_DEGREE)

    by_period: Dict[int, List[SpherePoint]] = {}
    cycles: List[Cycle] = []
    for k in range(1, n + 1):
        candidates = _periodic_candidates(f, k)
        lower = [p for j, pts in by_period.items() if k % j == 0 for p in pts]
        exact = [p for p in candidates
                 if all(chordal_distance(p, q) >= Config.CYCLE_TOL for q in lower)]
        by_period[k] = candidates
        cycles.extend(_group_into_cycles(f, exact, k))
    return cycles


def _group_into_cycles(f: RationalMap, points: List[SpherePoint], k: int) -> List[Cycle]:
    remaining = sorted(points, key=sort_key)
    cycles = []
    while remaining:
        start = remaining.pop(0)
        orbit = [start]
        current = start
        for _ in range(k - 1):
            current = eval_map(f, current)
            match = next((q for q in remaining
                          if chordal_distance(q, current) < Config.CYCLE_TOL), None)
            if match is not None:
                remaining.remove(match)
                current = match
            orbit.append(current)
        try:
            lam = multiplier(f, orbit)
        except CycleResidualError as exc:
            logger.debug("Odbačen ciklus perioda %d kod %s: %s", k, start, exc)
            continue
        cycles.append(Cycle(points=tuple(orbit), exact_period=k,
                            multiplier=lam, classification=classify(lam)))
    return cycles


@dataclass(frozen=True)
class BoundCheck:
    """Broj ne-odbijajućih ciklusa naspram granice 2d-2."""
    count: int
    bound: int
    within_bound: bool
    max_period: int
    cycles: Tuple[Cycle, ...] = field(default=())


def nonrepelling_count(f: RationalMap, max_period: Optional[int] = None) -> BoundCheck:
    """
    Broji cikluse do perioda max_period koji nisu odbijajući.

    Provera je delimična: periodi veći od max_period se ne ispituju.
    """
    max_period = Config.MAX_PERIOD if max_period is None else max_period
    cycles = periodic_cycles(f, max_period)
    count = sum(1 for c in cycles if not c.is_repelling)
    bound = 2 * f.degree - 2
    return BoundCheck(count=count, bound=bound, within_bound=count <= bound,
                      max_period=max_period, cycles=tuple(cycles))


if __name__ == "__main__":
    f = RationalMap.polynomial([-1, 0, 1])
    for cycle in periodic_cycles(f, 2):
        print(f"📊 period {cycle.exact_period}: {cycle.points} λ={cycle.multiplier:.4g} "
              f"{cycle.classification.label()}")
    check = nonrepelling_count(f, 2)
    print(f"✅ {check.count} ≤ {check.bound}" if check.within_bound else "❌ granica prekršena")
