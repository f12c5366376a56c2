"""
Linearizacija u privlačnoj fiksnoj tački
Koenigsova karta, Abelova jednačina psi(f(z)) - psi(z) = F(z) i iterativni koreni polinoma
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from dynamics.charts import (
    ChartMethod,
    CoordinateChart,
    LocalMap,
    MapLike,
    as_rational_map,
    contraction_radius,
)
from dynamics.errors import (
    BranchError,
    InvalidExponentError,
    OutsideValidityError,
    ResonanceError,
    WrongFixedPointTypeError,
)
from dynamics.maps import INFINITY, Polynomial, RationalMap, SpherePoint, eval_map
from dynamics.series import PowerSeries
from utils.config import Config


logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-12
RESONANCE_TOL = 1e-10
ITER_ROOT_TOL = 1e-8


def _linear_form(lam: complex):
    return lambda value: lam * value


def _koenigs_radius(local: LocalMap, lam: complex, step) -> float:
    rho = (1.0 + min(abs(lam), 1.0 / abs(lam))) / 2.0
    bound = lambda w, nxt: np.abs(nxt) <= rho * np.abs(w)
    return contraction_radius(step, bound, 1.0)


def _local_inverse(phi: RationalMap, lam: complex, w, steps: int = 60):
    """Lokalna grana phi^{-1} kroz 0, Njutnom od w/lambda (radi i nad nizovima)."""
    P, Q, W = phi.numerator, phi.denominator, phi.wronskian()
    v = np.asarray(w, dtype=np.complex128) / lam
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(steps):
            q = Q(v)
            step = (P(v) / q - w) * (q * q) / W(v)
            v = v - step
            if np.all(np.abs(step) <= 1e-16 * np.maximum(np.abs(v), 1e-300)):
                break
    return v


def koenigs(f: MapLike, x: SpherePoint, n_max: Optional[int] = None) -> CoordinateChart:
    """
    Koenigsova karta B(z) = lim (f_n(z) - x) / lambda^n.

    Args:
        f: Preslikavanje ili lokalni red
        x: Privlačna fiksna tačka, 0 < |lambda| < 1
        n_max: Najveći broj iteracija

    Returns:
        CoordinateChart metoda koenigs sa B(x) = 0, B'(x) = 1 i B∘f = lambda B
    """
    n_max = Config.MAX_ITER if n_max is None else n_max
    local = LocalMap.at(as_rational_map(f), x)
    lam = local.multiplier
    if not 0 < abs(lam) < 1:
        raise WrongFixedPointTypeError(
            f"Koenigsova karta zahteva 0 < |lambda| < 1, dobijeno {lam:.6g}", lam)
    radius = _koenigs_radius(local, lam, local.phi.evaluate)

    def evaluate(z: SpherePoint) -> complex:
        w = local.to_local(z)
        value, current, scale = w, w, 1 + 0j
        if w == 0:
            return 0j
        for _ in range(n_max):
            current = local(current)
            scale *= lam
            if current is INFINITY:
                raise OutsideValidityError("Orbita je otišla u pol", z, radius)
            scaled = current / scale
            if abs(scaled - value) <= CONVERGENCE_TOL * abs(scaled):
                return scaled
            value = scaled
        raise OutsideValidityError(f"Koenigsova iteracija nije konvergirala za {n_max} koraka",
                                   z, radius)

    return CoordinateChart(
        center=local.center, local_degree=1, validity_radius=radius,
        method=ChartMethod.KOENIGS, evaluator=evaluate, normal_form=_linear_form(lam),
        parameters={"n_max": n_max, "multiplier": lam},
    )


def koenigs_repelling(f: MapLike, x: SpherePoint, n_max: Optional[int] = None) -> CoordinateChart:
    """
    Linearizacija odbijajuće tačke preko Koenigsove karte lokalne inverzne grane.

    B(z) = lim lambda^n g_n(z) za g = f^{-1} kroz x, pa važi B∘f = lambda B.
    """
    n_max = Config.MAX_ITER if n_max is None else n_max
    local = LocalMap.at(as_rational_map(f), x)
    lam = local.multiplier
    if not abs(lam) > 1:
        raise WrongFixedPointTypeError(f"Tačka nije odbijajuća (lambda = {lam:.6g})", lam)
    inverse = lambda w: _local_inverse(local.phi, lam, w)
    radius = _koenigs_radius(local, lam, inverse)

    def evaluate(z: SpherePoint) -> complex:
        w = local.to_local(z)
        value, current, scale = w, w, 1 + 0j
        if w == 0:
            return 0j
        for _ in range(n_max):
            current = complex(inverse(current))
            scale *= lam
            if not cmath.isfinite(current):
                raise OutsideValidityError("Inverzna grana nije definisana", z, radius)
            scaled = current * scale
            if abs(scaled - value) <= CONVERGENCE_TOL * abs(scaled):
                return scaled
            value = scaled
        raise OutsideValidityError(f"Inverzna iteracija nije konvergirala za {n_max} koraka",
                                   z, radius)

    return CoordinateChart(
        center=local.center, local_degree=1, validity_radius=radius,
        method=ChartMethod.KOENIGS, evaluator=evaluate, normal_form=_linear_form(lam),
        parameters={"n_max": n_max, "multiplier": lam, "branch": "inverse"},
    )


def schroeder_series(f: MapLike, x: SpherePoint, n_terms: Optional[int] = None) -> PowerSeries:
    """
    Koeficijenti Koenigsove karte B(w) = w + b_2 w^2 + ...

    b_n (lambda - lambda^n) = [w^n] sum_{k<n} b_k phi(w)^k.
    """
    n_terms = Config.REVERSION_TERMS if n_terms is None else n_terms
    local = LocalMap.at(as_rational_map(f), x)
    phi = local.series(n_terms)
    lam = complex(phi.c[1])
    b = np.zeros(n_terms + 1, dtype=np.complex128)
    b[1] = 1.0
    powers = [None, phi]
    for n in range(2, n_terms + 1):
        powers.append(powers[-1] * phi)
        total = sum(b[k] * powers[k].c[n] for k in range(1, n))
        b[n] = total / (lam - lam ** n)
    return PowerSeries(b, n_terms)


@dataclass(frozen=True)
class LaurentSeries:
    """
    Red u razlomljenim stepenima A_0 + sum A_{+n} w^{m/n} + A_{-n} w^{-m/n}.

    coefficients preslikava označeni indeks n u koeficijent; w je lokalna
    koordinata oko centra, a red važi u prstenu inner_radius < |w| < outer_radius.
    """
    center: SpherePoint
    m: int
    coefficients: Dict[int, complex]
    inner_radius: float = 0.0
    outer_radius: float = math.inf

    def __post_init__(self):
        if not 0 <= self.inner_radius < self.outer_radius:
            raise ValueError("Prsten mora zadovoljiti 0 <= r < R")
        if self.m < 1:
            raise ValueError("m mora biti pozitivan")
        if not all(cmath.isfinite(complex(c)) for c in self.coefficients.values()):
            raise ValueError("Koeficijenti reda moraju biti konačni")

    def exponent(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(0)
        return Fraction(self.m, n) if n > 0 else -Fraction(self.m, -n)

    def terms(self) -> Dict[Fraction, complex]:
        grouped: Dict[Fraction, complex] = defaultdict(complex)
        for n, c in self.coefficients.items():
            grouped[self.exponent(n)] += complex(c)
        return dict(grouped)

    def local(self, z: SpherePoint) -> complex:
        if self.center is INFINITY:
            return 1.0 / z
        return z - self.center

    def __call__(self, z: SpherePoint) -> complex:
        w = self.local(z)
        log_w = cmath.log(w)
        return sum(c * cmath.exp(float(e) * log_w) if e != 0 else c
                   for e, c in self.terms().items())


@dataclass
class AbelSolution:
    """
    psi_0 kao funkcija Koenigsove koordinate b = B(z).

    psi_0 = B_0 Log b / Log lambda + sum_{s != 0} B_s b^s / (lambda^s - 1).
    """
    chart: CoordinateChart
    multiplier: complex
    source: LaurentSeries
    map: RationalMap
    coefficients: Dict[Fraction, complex] = field(default_factory=dict)

    @property
    def log_multiplier(self) -> complex:
        return cmath.log(self.multiplier)

    def _denominator(self, s: Fraction) -> complex:
        value = cmath.exp(float(s) * self.log_multiplier) - 1.0
        if abs(value) < RESONANCE_TOL:
            raise ResonanceError(f"Rezonantan imenilac za eksponent {s}", s, value)
        return value

    def in_koenigs(self, b: complex) -> complex:
        if b == 0:
            raise BranchError("psi_0 nije definisano u centru", self.chart.center)
        log_b = cmath.log(b)
        total = 0j
        for s, coefficient in self.coefficients.items():
            if s == 0:
                total += coefficient * log_b / self.log_multiplier
            else:
                total += coefficient * cmath.exp(float(s) * log_b) / self._denominator(s)
        return total

    def __call__(self, z: SpherePoint) -> complex:
        return self.in_koenigs(self.chart(z))

    def _needs_branch(self) -> bool:
        return any(s.denominator != 1 or s == 0 for s in self.coefficients)

    def residual(self, z: SpherePoint) -> float:
        """|psi_0(f(z)) - psi_0(z) - F(z)|, sa proverom da nastavak ne prelazi granu."""
        b = self.chart(z)
        image = eval_map(self.map, z)
        b_image = self.chart(image)
        if self._needs_branch():
            jump = cmath.log(b_image) - cmath.log(b) - self.log_multiplier
            if abs(jump) > 1e-6:
                raise BranchError("Nastavak psi_0 prelazi rez logaritma", z)
        return abs(self.in_koenigs(b_image) - self.in_koenigs(b) - self.source(z))

    def telescoping_error(self, z: SpherePoint, n: int) -> float:
        """|psi_0(f_n(z)) - psi_0(z) - sum_{k<n} F(f_k(z))|."""
        total, current = 0j, z
        for _ in range(n):
            total += self.source(current)
            current = eval_map(self.map, current)
        return abs(self(current) - self(z) - total)


def abel_solve(f: MapLike, x: SpherePoint, F: LaurentSeries,
               n_terms: Optional[int] = None) -> AbelSolution:
    """
    Rešava psi(f(z)) - psi(z) = F(z) razvojem F po stepenima Koenigsove koordinate.

    Args:
        f: Preslikavanje sa privlačnom fiksnom tačkom x
        x: Fiksna tačka, 0 < |lambda| < 1
        F: Red u razlomljenim stepenima oko x
        n_terms: Broj članova reverzije

    Returns:
        AbelSolution sa koeficijentima B_s po eksponentima s
    """
    n_terms = Config.REVERSION_TERMS if n_terms is None else n_terms
    f = as_rational_map(f)
    chart = koenigs(f, x)
    lam = chart.parameters["multiplier"]

    inverse = schroeder_series(f, x, n_terms).reversion()
    ratio = PowerSeries(inverse.c[1:], n_terms - 1)

    coefficients: Dict[Fraction, complex] = defaultdict(complex)
    for e, a in F.terms().items():
        if e == 0:
            coefficients[Fraction(0)] += a
            continue
        expansion = ratio.power(float(e))
        for j, c in enumerate(expansion.c):
            coefficients[e + j] += a * complex(c)

    solution = AbelSolution(chart=chart, multiplier=lam, source=F, map=f,
                            coefficients=dict(coefficients))
    for s in solution.coefficients:
        if s != 0:
            solution._denominator(s)
    logger.debug("Abelova jednačina: %d eksponenata", len(solution.coefficients))
    return solution


def _iteration_count(n: int, p: int) -> Optional[int]:
    k, power = 0, 1
    while power < n:
        power *= p
        k += 1
    return k if power == n and k >= 1 else None


def _iterate_poly(g: Polynomial, k: int) -> Polynomial:
    result = g
    for _ in range(k - 1):
        result = g.compose(result)
    return result


def poly_iter_roots(F: Polynomial, p: int) -> List[Polynomial]:
    """
    Svi polinomi g stepena p sa g∘...∘g (k puta) = F, p^k = deg F.

    Vodeći koeficijent rešava a^((p^k-1)/(p-1)) = vodeći(F); za svaki izbor
    grane ostali koeficijenti se rešavaju trougaono od najvišeg stepena naniže.

    Returns:
        Lista korena poređana po argumentu vodećeg koeficijenta
    """
    if p < 2:
        raise InvalidExponentError("p mora biti bar 2", F.degree, p)
    n = F.degree
    k = _iteration_count(n, p)
    if k is None:
        raise InvalidExponentError(f"{p} nije celobrojni koren stepena {n}", n, p)

    exponent = (p ** k - 1) // (p - 1)
    lead = F.leading
    tol = ITER_ROOT_TOL * max(1.0, F.scale)
    roots = []
    for t in range(exponent):
        angle = (cmath.phase(lead) + 2 * math.pi * t) / exponent
        a = abs(lead) ** (1.0 / exponent) * cmath.exp(1j * angle)
        coeffs = np.zeros(p + 1, dtype=np.complex128)
        coeffs[p] = a
        for i in range(1, p + 1):
            coeffs[p - i] = 0
            base = _iterate_poly(Polynomial(coeffs), k).coefficient(n - i)
            coeffs[p - i] = 1
            slope = _iterate_poly(Polynomial(coeffs), k).coefficient(n - i) - base
            coeffs[p - i] = (F.coefficient(n - i) - base) / slope if slope != 0 else 0
        g = Polynomial(coeffs)
        if _iterate_poly(g, k).allclose(F, tol):
            roots.append((angle % (2 * math.pi), g))
        else:
            logger.debug("Grana %d vodećeg koeficijenta nije konzistentna", t)
    return [g for _, g in sorted(roots, key=lambda item: item[0])]


def poly_iter_root(F: Polynomial, p: int) -> Optional[Polynomial]:
    """Prvi iterativni koren stepena p ili None."""
    roots = poly_iter_roots(F, p)
    return roots[0] if roots else None


if __name__ == "__main__":
    f = RationalMap.polynomial([0, 0.5, 1])
    chart = koenigs(f, 0j)
    print(f"📊 B(0.05) = {chart(0.05)}, rezidual {chart.residual(f, 0.05):.2e}")
    print("📊 Koren iteracije z^4+2z^2+2:", poly_iter_root(Polynomial([2, 0, 2, 0, 1]), 2))
