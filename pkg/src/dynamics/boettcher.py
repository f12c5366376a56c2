"""
Böttcherova koordinata u superprivlačnoj fiksnoj tački
Četiri konstrukcije karte (ritt, milnor, series, original-1904) i potencijal brzine bekstva
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

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
    DegenerateInputError,
    LogBranchError,
    OutsideValidityError,
    WrongFixedPointTypeError,
)
from dynamics.maps import (
    INFINITY,
    Polynomial,
    RationalMap,
    SpherePoint,
    as_sphere_point,
    default_escape_radius,
    eval_map,
)
from dynamics.series import PowerSeries
from utils.config import Config


logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-12
AMBIGUITY_TOL = 1e-13
MIN_SERIES_RADIUS = 1e-6
ESCAPE_HORIZON = 1e12
TAIL_THRESHOLD = 1e-30


@dataclass(frozen=True)
class Superattracting:
    """Lokalni oblik phi(w) = a_m w^m + ... i normalizovan oblik psi(u) = alpha phi(u/alpha)."""
    local: LocalMap
    degree: int
    leading: complex
    alpha: complex
    normalized: RationalMap

    @property
    def center(self) -> SpherePoint:
        return self.local.center

    def validity_radius(self) -> float:
        """Najveći r (u w) sa |phi(w)| <= 2|a_m||w|^m duž orbita sa |w| = r."""
        m, a = self.degree, abs(self.leading)
        r_max = (1.0 / (2.0 * a)) ** (1.0 / (m - 1)) * (1.0 - 1e-9)
        bound = lambda w, nxt: np.abs(nxt) <= 2.0 * a * np.abs(w) ** m * (1.0 + 1e-12)
        return contraction_radius(self.local.phi.evaluate, bound, r_max)


def superattracting(f: MapLike, x: SpherePoint) -> Superattracting:
    """
    Prebacuje f u lokalnu koordinatu oko x i normalizuje vodeći koeficijent.

    Args:
        f: Preslikavanje ili lokalni red
        x: Superprivlačna fiksna tačka

    Returns:
        Superattracting sa alpha^(m-1) = a_m (glavna grana)
    """
    f = as_rational_map(f)
    local = LocalMap.at(f, x)
    series = local.series(f.degree + 2)
    m = series.valuation()
    if m < 2:
        raise WrongFixedPointTypeError(
            f"Tačka {x} nije superprivlačna (multiplikator {local.multiplier:.6g})",
            local.multiplier)
    leading = complex(series.c[m])
    alpha = cmath.exp(cmath.log(leading) / (m - 1))

    P, Q = local.phi.numerator, local.phi.denominator
    p_scale = alpha ** (1.0 - np.arange(P.degree + 1))
    q_scale = alpha ** (-1.0 * np.arange(Q.degree + 1))
    normalized = RationalMap(Polynomial(P.coeffs * p_scale), Polynomial(Q.coeffs * q_scale))
    logger.debug("Superprivlačna tačka %s: m=%d, a_m=%s", x, m, leading)
    return Superattracting(local=local, degree=m, leading=leading, alpha=alpha,
                           normalized=normalized)


def _nearest_root(value: complex, power: int, reference: complex) -> complex:
    """power-ti koren od value najbliži referentnoj vrednosti."""
    if value == 0:
        return 0j
    modulus = math.exp(math.log(abs(value)) / power)
    target = cmath.phase(reference)
    delta = math.remainder(cmath.phase(value) - power * target, 2 * math.pi)
    if abs(abs(delta) - math.pi) < AMBIGUITY_TOL:
        raise DegenerateInputError(
            f"Dva korena reda {power} su podjednako blizu vrednosti {reference}")
    return modulus * cmath.exp(1j * (target + delta / power))


def _root_limit(step: RationalMap, start: complex, seed: complex, m: int,
                n_max: int, escape: float, tail: complex = 1.0) -> complex:
    """
    lim step_p(start)^(1/m^p) uz pravilo najbližeg korena.

    Kada |step_p(start)| padne ispod TAIL_THRESHOLD ostatak orbite je monom
    tail^(m-1) z^m, pa je granica koren od tail · step_p(start).
    """
    if start == 0:
        return 0j
    value = seed
    current = start
    power = 1
    for _ in range(n_max):
        if abs(current) < TAIL_THRESHOLD:
            return _nearest_root(tail * current, power, value)
        current = eval_map(step, current)
        power *= m
        if current is INFINITY or abs(current) > escape:
            raise OutsideValidityError(
                "Orbita je napustila disk superprivlačnog basena", start, escape)
        if current == 0:
            return 0j
        new = _nearest_root(current, power, value)
        if abs(new - value) <= CONVERGENCE_TOL * abs(new):
            return new
        value = new
    raise OutsideValidityError(f"Nema konvergencije posle {n_max} koraka", start, escape)


def _chart_from_local(setup: Superattracting,
                      local_value: Callable[[complex], complex]) -> Callable[[SpherePoint], SpherePoint]:
    """Evaluator karte u originalnoj koordinati; u ∞ vraća 1/vrednost."""
    def evaluate(z: SpherePoint) -> SpherePoint:
        w = setup.local.to_local(z)
        value = local_value(w)
        if setup.center is INFINITY:
            return INFINITY if value == 0 else 1.0 / value
        return value
    return evaluate


def _power_form(m: int) -> Callable[[complex], complex]:
    return lambda value: value ** m


def boettcher_ritt(f: MapLike, x: SpherePoint, n_max: Optional[int] = None) -> CoordinateChart:
    """
    Böttcherova karta kao lim (f_p(z))^(1/m^p) za normalizovano preslikavanje.

    Args:
        f: Preslikavanje ili lokalni red
        x: Superprivlačna fiksna tačka lokalnog stepena m >= 2
        n_max: Najveći broj iteracija

    Returns:
        CoordinateChart metoda ritt; F(z) = F~(alpha w), F~ tangentna identitetu
    """
    n_max = Config.MAX_ITER if n_max is None else n_max
    setup = superattracting(f, x)
    m, alpha, psi = setup.degree, setup.alpha, setup.normalized
    radius = setup.validity_radius()
    escape = max(1.0, abs(alpha) * radius)

    def local_value(w: complex) -> complex:
        u = alpha * w
        return _root_limit(psi, u, u, m, n_max, escape)

    return CoordinateChart(
        center=setup.center, local_degree=m, validity_radius=radius,
        method=ChartMethod.RITT, evaluator=_chart_from_local(setup, local_value),
        normal_form=_power_form(m),
        parameters={"n_max": n_max, "alpha": alpha, "leading": setup.leading},
    )


def boettcher_original(f: MapLike, x: SpherePoint, n_max: Optional[int] = None) -> CoordinateChart:
    """
    Böttcherov algoritam bez normalizacije: N(z) = lim (z_n - x)^(1/m^n).

    Prvi koren se bira uz prefaktor (f^(m)(x)/m!)^(1/(m-1)) na glavnoj grani,
    pa važi N(f(z)) = N(z)^m i N(z) = alpha (z - x) + ...
    """
    n_max = Config.MAX_ITER if n_max is None else n_max
    setup = superattracting(f, x)
    m, alpha = setup.degree, setup.alpha
    radius = setup.validity_radius()
    escape = max(1.0 / abs(alpha), radius)

    def local_value(w: complex) -> complex:
        return _root_limit(setup.local.phi, w, alpha * w, m, n_max, escape, tail=alpha)

    return CoordinateChart(
        center=setup.center, local_degree=m, validity_radius=radius,
        method=ChartMethod.ORIGINAL, evaluator=_chart_from_local(setup, local_value),
        normal_form=_power_form(m),
        parameters={"n_max": n_max, "prefactor": alpha},
    )


def milnor_lift(reversed_poly: Polynomial, m: int,
                n_max: Optional[int] = None) -> Callable[[complex], complex]:
    """
    Logaritamska karta Phi(Z) = lim Z_k / m^k za moničan polinom.

    Z_{k+1} = m Z_k + Log q(e^{-Z_k}), gde je q(t) = t^m f(1/t), pa je grana
    izabrana tako da |Z_{k+1} - m Z_k| <= pi.
    """
    n_max = Config.MAX_ITER if n_max is None else n_max

    def lift(Z: complex) -> complex:
        total, current, scale = complex(Z), complex(Z), 1.0
        for _ in range(n_max):
            t = cmath.exp(-current)
            if t == 0:
                break
            correction = cmath.log(reversed_poly(t))
            scale /= m
            term = correction * scale
            total += term
            if abs(term) <= 1e-17 * max(1.0, abs(total)):
                break
            current = m * current + correction
        return total

    return lift


def _half_plane_threshold(reversed_poly: Polynomial, samples: int = 256,
                          iterations: int = 50) -> float:
    """Najmanje sigma sa |Log q(e^{-Z})| < 1 na pravoj Re Z = sigma."""
    angles = 2 * np.pi * np.arange(samples) / samples

    def holds(s: float) -> bool:
        values = reversed_poly(s * np.exp(-1j * angles))
        return bool(np.all(values != 0) and np.all(np.abs(np.log(values)) < 1.0))

    if holds(1.0):
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    if lo == 0:
        raise DegenerateInputError("Poluravan logaritamske karte nije pronađena")
    return -math.log(lo)


def boettcher_milnor(f: MapLike, n_max: Optional[int] = None) -> CoordinateChart:
    """
    Böttcherova karta polinoma u ∞ preko logaritamskog podizanja.

    Args:
        f: Polinomijalno preslikavanje stepena m >= 2
        n_max: Najveći broj članova sume

    Returns:
        CoordinateChart metoda milnor sa phi(z) = exp(Phi(Log(beta z)))
    """
    f = as_rational_map(f)
    if not f.is_polynomial or f.degree < 2:
        raise ValueError("Milnorova konstrukcija zahteva polinom stepena bar 2")
    n_max = Config.MAX_ITER if n_max is None else n_max
    m = f.degree

    setup = superattracting(f, INFINITY)
    beta = 1.0 / setup.alpha
    # Moničan konjugat f~(u) = beta f(u / beta)
    P = f.numerator * (1.0 / f.denominator.leading)
    monic = Polynomial(P.coeffs * beta ** (1 - np.arange(m + 1)))
    reversed_poly = monic.reversed(m)
    sigma = _half_plane_threshold(reversed_poly)
    if reversed_poly.degree > 0:
        sigma += 1.0
    lift = milnor_lift(reversed_poly, m, n_max)
    radius = abs(beta) * math.exp(-sigma)

    def evaluate(z: SpherePoint) -> SpherePoint:
        z = as_sphere_point(z)
        if z is INFINITY:
            return INFINITY
        if z == 0:
            raise OutsideValidityError("0 je van logaritamske karte", z, radius)
        Z = cmath.log(beta * z)
        if Z.real < sigma:
            raise OutsideValidityError(
                f"Re Log(beta z) = {Z.real:.4g} je ispod praga {sigma:.4g}", z, radius)
        return cmath.exp(lift(Z))

    return CoordinateChart(
        center=INFINITY, local_degree=m, validity_radius=radius,
        method=ChartMethod.MILNOR, evaluator=evaluate, normal_form=_power_form(m),
        parameters={"n_max": n_max, "sigma": sigma, "beta": beta},
    )


def _log_branch_radius(setup: Superattracting) -> float:
    """Najbliža nula ili pol od phi(w)/w^m u lokalnoj koordinati."""
    from dynamics.fixedpoints import poly_roots

    reduced = Polynomial(setup.local.phi.numerator.coeffs[setup.degree:])
    candidates = [p.trimmed() for p in (reduced, setup.local.phi.denominator)]
    nearest = math.inf
    for p in candidates:
        if p.degree >= 1:
            nearest = min(nearest, float(np.min(np.abs(poly_roots(p)))))
    return nearest


def boettcher_series(f: MapLike, x: SpherePoint = 0j,
                     n_terms: Optional[int] = None) -> CoordinateChart:
    """
    Böttcherova karta kao stepeni red F~(u) = u exp(G(u)).

    G rešava G = (h + G∘psi)/m sa h = log(psi(u)/u^m); suma se dobija
    iteracijom do stabilizacije koeficijenata.

    Args:
        f: Preslikavanje ili lokalni red
        x: Superprivlačna fiksna tačka
        n_terms: Broj članova reda

    Returns:
        CoordinateChart metoda series; coefficients su koeficijenti u w = z - x
    """
    n_terms = Config.SERIES_TERMS if n_terms is None else n_terms
    setup = superattracting(f, x)
    m, alpha = setup.degree, setup.alpha

    raw = setup.local.series(n_terms + m).c
    psi_coeffs = raw * alpha ** (1.0 - np.arange(n_terms + m + 1))
    h = PowerSeries(psi_coeffs[m:], n_terms).log()
    psi = PowerSeries(psi_coeffs[:n_terms + 1], n_terms)

    G = PowerSeries.constant(0.0, n_terms)
    for iteration in range(100):
        updated = (h + G.compose(psi)) / m
        change = float(np.max(np.abs(updated.c - G.c)))
        G = updated
        if change <= 1e-16 * max(1.0, float(np.max(np.abs(G.c)))):
            break
    logger.debug("Böttcherov red: %d iteracija rezolvente", iteration + 1)

    exp_G = G.exp()
    normalized = PowerSeries(np.concatenate([[0], exp_G.c[:n_terms]]), n_terms)
    coefficients = normalized.c * alpha ** np.arange(n_terms + 1)

    radius = min(setup.validity_radius(), 0.5 * normalized.radius_estimate() / abs(alpha))
    branch = _log_branch_radius(setup)
    while radius >= branch:
        radius *= 0.5
        logger.warning("Smanjujem radni disk reda na %.3g (nula od f/z^m u %.3g)", radius, branch)
        if radius < MIN_SERIES_RADIUS:
            raise LogBranchError("Radni disk reda je manji od 1e-6", radius)

    def local_value(w: complex) -> complex:
        if abs(w) > radius:
            raise OutsideValidityError("Tačka je van radnog diska reda", w, radius)
        return complex(normalized(alpha * w))

    return CoordinateChart(
        center=setup.center, local_degree=m, validity_radius=radius,
        method=ChartMethod.SERIES, evaluator=_chart_from_local(setup, local_value),
        normal_form=_power_form(m),
        parameters={"n_terms": n_terms, "alpha": alpha},
        coefficients=tuple(complex(c) for c in coefficients),
    )


def escape_rate(f: MapLike, z: SpherePoint, n_max: Optional[int] = None) -> float:
    """
    Potencijal lim log+|f_n(z)| / m^n polinoma.

    Args:
        f: Polinomijalno preslikavanje stepena m >= 2
        z: Tačka
        n_max: Horizont za ograničene orbite

    Returns:
        0 ako orbita ne pobegne iz R za n_max koraka; inače ubrzana procena
        (log|z_n| + log|c|/(m-1)) / m^n sa vodećim koeficijentom c
    """
    f = as_rational_map(f)
    if not f.is_polynomial or f.degree < 2:
        raise ValueError("Potencijal bekstva je definisan za polinome stepena bar 2")
    n_max = Config.MAX_ITER if n_max is None else n_max
    z = as_sphere_point(z)
    if z is INFINITY:
        return math.inf

    m = f.degree
    lead = abs(f.numerator.leading / f.denominator.leading)
    radius = default_escape_radius(f)
    scale = 1.0
    for step in range(n_max + 64):
        if abs(z) > ESCAPE_HORIZON:
            break
        if abs(z) <= radius and step >= n_max:
            return 0.0
        image = eval_map(f, z)
        if image is INFINITY:
            break
        z = image
        scale /= m
    if abs(z) <= radius:
        return 0.0
    return (math.log(abs(z)) + math.log(lead) / (m - 1)) * scale


if __name__ == "__main__":
    f = RationalMap.polynomial([-2, 0, 1])
    chart = boettcher_ritt(f, INFINITY)
    print(f"📊 Ritt F(3) = {chart(3)}  (tačno {(3 + math.sqrt(5)) / 2})")
    print(f"📊 Milnor phi(5) = {boettcher_milnor(f)(5)}")
    print(f"📊 G(3) = {escape_rate(f, 3):.12f}")
