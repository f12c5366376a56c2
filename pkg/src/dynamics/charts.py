"""
Lokalne koordinate i konjugujuće karte
Zajednička osnova za Böttcherove, Koenigsove i psi0 karte
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Tuple, Union

import numpy as np

from dynamics.errors import OutsideValidityError
from dynamics.maps import (
    INFINITY,
    Polynomial,
    RationalMap,
    SpherePoint,
    as_sphere_point,
    eval_map,
)
from dynamics.series import PowerSeries


MapLike = Union[RationalMap, Polynomial]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class ChartMethod(str, Enum):
    """Metod kojim je karta konstruisana."""
    RITT = "ritt"
    MILNOR = "milnor"
    SERIES = "series"
    ORIGINAL = "original-1904"
    KOENIGS = "koenigs"
    PSI0 = "psi0"


def as_rational_map(f: MapLike) -> RationalMap:
    """Lokalni red (Polynomial) ili RationalMap -> RationalMap."""
    if isinstance(f, Polynomial):
        return RationalMap.polynomial(f)
    return f


@dataclass(frozen=True)
class LocalMap:
    """Preslikavanje u lokalnoj koordinati w (w = z - x, ili w = 1/z u beskonačnosti) sa phi(0) = 0."""
    original: RationalMap
    center: SpherePoint
    phi: RationalMap

    @classmethod
    def at(cls, f: MapLike, center: SpherePoint, tol: float = 1e-9) -> "LocalMap":
        """
        Prebacuje f u lokalnu koordinatu oko fiksne tačke.

        Args:
            f: Preslikavanje ili lokalni red
            center: Fiksna tačka (konačna ili INFINITY)
            tol: Tolerancija za proveru da je tačka fiksna

        Returns:
            LocalMap sa phi(0) = 0
        """
        f = as_rational_map(f)
        center = as_sphere_point(center)
        if center is INFINITY:
            phi = f.conjugate_at_infinity()
            if eval_map(phi, 0j) != 0:
                raise ValueError("∞ nije fiksna tačka preslikavanja")
            return cls(original=f, center=center, phi=phi)

        shift = Polynomial([center, 1])
        Q = f.denominator.compose(shift)
        P = f.numerator.compose(shift) - Q * center
        if Q.coefficient(0) == 0 or abs(P.coefficient(0)) > tol * max(1.0, abs(center)) * abs(Q.coefficient(0)):
            raise ValueError(f"{center} nije fiksna tačka preslikavanja")
        coeffs = P.coeffs.copy()
        coeffs[0] = 0
        return cls(original=f, center=center, phi=RationalMap(Polynomial(coeffs), Q))

    def to_local(self, z: SpherePoint) -> complex:
        z = as_sphere_point(z)
        if self.center is INFINITY:
            return 0j if z is INFINITY else 1.0 / z
        if z is INFINITY:
            raise OutsideValidityError("∞ je van lokalne karte", z, 0.0)
        return z - self.center

    def __call__(self, w: complex) -> SpherePoint:
        return eval_map(self.phi, w)

    def series(self, order: int) -> PowerSeries:
        """Tejlorov red phi u 0."""
        return (PowerSeries(self.phi.numerator.coeffs, order)
                / PowerSeries(self.phi.denominator.coeffs, order))

    @property
    def multiplier(self) -> complex:
        return complex(self.phi.derivative_at(0j))


def contraction_radius(step: Callable[[np.ndarray], np.ndarray],
                       bound: Callable[[np.ndarray, np.ndarray], np.ndarray],
                       r_max: float,
                       samples: int = 64,
                       steps: int = 30,
                       iterations: int = 40) -> float:
    """
    Najveći r za koji orbite uzoraka sa |w| = r ostaju u oblasti kontrakcije.

    Args:
        step: Vektorizovano lokalno preslikavanje
        bound: Uslov kontrakcije bound(w, step(w)) po elementima
        r_max: Gornja granica pretrage
        samples: Broj tačaka na krugu
        steps: Dužina praćenja orbite
        iterations: Broj koraka bisekcije

    Returns:
        Poluprečnik nađen bisekcijom
    """
    angles = 2 * np.pi * (np.arange(samples) + 0.5) / samples

    def holds(r: float) -> bool:
        w = r * np.exp(1j * angles)
        for _ in range(steps):
            nxt = step(w)
            if not np.all(np.isfinite(nxt)):
                return False
            if not np.all(bound(w, nxt)) or np.any(np.abs(nxt) > r):
                return False
            w = nxt
        return True

    if holds(r_max):
        return r_max
    lo, hi = 0.0, r_max
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class CoordinateChart:
    """Konjugujuća karta: centar, lokalni stepen, poluprečnik važenja i evaluator."""
    center: SpherePoint
    local_degree: int
    validity_radius: float
    method: ChartMethod
    evaluator: Callable[[SpherePoint], SpherePoint]
    normal_form: Callable[[complex], complex]
    parameters: Dict[str, Any] = field(default_factory=dict)
    coefficients: Tuple[complex, ...] = ()

    def __call__(self, z: SpherePoint) -> SpherePoint:
        return self.evaluator(z)

    def local_distance(self, z: SpherePoint) -> float:
        z = as_sphere_point(z)
        if self.center is INFINITY:
            return 0.0 if z is INFINITY else 1.0 / abs(z) if z != 0 else math.inf
        return math.inf if z is INFINITY else abs(z - self.center)

    def contains(self, z: SpherePoint) -> bool:
        return self.local_distance(z) <= self.validity_radius

    def sample_points(self, count: int = 100, fraction: float = 0.9) -> List[SpherePoint]:
        """Deterministički uzorci u disku važenja (Fermatova spirala)."""
        points = []
        for k in range(count):
            radius = fraction * self.validity_radius * math.sqrt((k + 0.5) / count)
            w = radius * cmath.exp(1j * GOLDEN_ANGLE * k)
            if self.center is INFINITY:
                points.append(1.0 / w)
            else:
                points.append(self.center + w)
        return points

    def residual(self, f: RationalMap, z: SpherePoint) -> float:
        """Relativni rezidual funkcionalne jednačine |F(f(z)) - N(F(z))|."""
        value = self(z)
        image = self(eval_map(f, z))
        if value is INFINITY or image is INFINITY:
            return 0.0 if value is INFINITY and image is INFINITY else math.inf
        expected = self.normal_form(value)
        return abs(image - expected) / max(abs(expected), 1e-300)

    def max_residual(self, f: RationalMap, points: List[SpherePoint]) -> float:
        return max(self.residual(f, z) for z in points)

    def describe(self) -> Dict[str, Any]:
        """Metapodaci karte za izveštaj."""
        return {
            "method": self.method.value,
            "center": self.center,
            "local_degree": self.local_degree,
            "validity_radius": self.validity_radius,
            "parameters": dict(self.parameters),
            "coefficients": list(self.coefficients),
        }
