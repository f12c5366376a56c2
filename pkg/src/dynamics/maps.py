"""
Racionalna preslikavanja na Rimanovoj sferi
Polinomi, racionalne funkcije, iteracija, Mebijusove transformacije i kanonski oblik kvadratnog preslikavanja
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from dynamics.errors import (
    DegreeTooLargeError,
    MalformedMapError,
    NotQuadraticError,
)
from utils.config import Config


logger = logging.getLogger(__name__)


class _PointAtInfinity:
    """Tačka u beskonačnosti na Rimanovoj sferi (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "∞"

    def __reduce__(self):
        return (_PointAtInfinity, ())


INFINITY = _PointAtInfinity()

SpherePoint = Union[complex, _PointAtInfinity]


def is_infinity(z: SpherePoint) -> bool:
    """Da li je tačka beskonačnost (ili ne-konačan kompleksan broj)."""
    if z is INFINITY:
        return True
    return not cmath.isfinite(complex(z))


def as_sphere_point(z: Union[SpherePoint, float, int]) -> SpherePoint:
    """Normalizuje ulaz: ne-konačne vrednosti postaju INFINITY."""
    if is_infinity(z):
        return INFINITY
    return complex(z)


def chordal_distance(a: SpherePoint, b: SpherePoint) -> float:
    """
    Hordalna udaljenost na Rimanovoj sferi, uvek u [0, 2].

    Args:
        a: Prva tačka
        b: Druga tačka

    Returns:
        2|a-b| / sqrt((1+|a|^2)(1+|b|^2)), sa odgovarajućim graničnim slučajevima
    """
    a = as_sphere_point(a)
    b = as_sphere_point(b)
    if a is INFINITY and b is INFINITY:
        return 0.0
    if a is INFINITY or b is INFINITY:
        finite = b if a is INFINITY else a
        return 2.0 / math.sqrt(1.0 + abs(finite) ** 2)
    if abs(a) > 1.0 and abs(b) > 1.0:
        # Inverzija z -> 1/z je izometrija
        a, b = 1.0 / a, 1.0 / b
    value = 2.0 * abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))
    return min(value, 2.0)


def sort_key(z: SpherePoint) -> Tuple[int, float, float]:
    """Leksikografski ključ (re, im); beskonačnost ide na kraj."""
    if z is INFINITY:
        return (1, 0.0, 0.0)
    return (0, z.real, z.imag)


def rational_approximation(x: float,
                           depth: Optional[int] = None,
                           tol: Optional[float] = None,
                           max_denominator: Optional[int] = None) -> Optional[Fraction]:
    """
    Traži racionalan broj p/q blizu x preko verižnog razlomka.

    Args:
        x: Realan broj
        depth: Maksimalan broj koraka razvoja
        tol: Prihvata p/q ako je |x - p/q| < tol
        max_denominator: Najveći dozvoljeni imenilac q

    Returns:
        Fraction ili None ako ni jedna konvergenta sa q <= max_denominator
        nije dovoljno blizu
    """
    depth = Config.CF_DEPTH if depth is None else depth
    tol = Config.CF_TOL if tol is None else tol
    max_denominator = Config.CF_MAX_DENOMINATOR if max_denominator is None else max_denominator

    h_prev, h = 1, math.floor(x)
    k_prev, k = 0, 1
    remainder = x - math.floor(x)
    for _ in range(depth):
        if abs(x - h / k) < tol:
            return Fraction(h, k)
        if remainder < 1e-15:
            break
        inverse = 1.0 / remainder
        a = math.floor(inverse)
        remainder = inverse - a
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        # Svaka sledeća konvergenta ima veći imenilac
        if k > max_denominator:
            return None
    if abs(x - h / k) < tol:
        return Fraction(h, k)
    return None


def _as_coefficients(values: Union[Sequence[complex], np.ndarray]) -> np.ndarray:
    array = np.atleast_1d(np.asarray(values, dtype=np.complex128)).copy()
    if array.ndim != 1:
        raise ValueError("Koeficijenti moraju biti jednodimenzionalni niz")
    if array.size == 0:
        array = np.zeros(1, dtype=np.complex128)
    nonzero = np.flatnonzero(array)
    array = array[:nonzero[-1] + 1] if nonzero.size else array[:1]
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Gust polinom sa kompleksnim koeficijentima, najniži stepen prvi."""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _as_coefficients(self.coeffs)
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Koeficijenti polinoma moraju biti konačni")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_highest_first(cls, values: Sequence[complex]) -> "Polynomial":
        """Pravi polinom iz koeficijenata c_n ... c_0."""
        return cls(list(reversed(list(values))))

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "Polynomial":
        return cls(npoly.polyfromroots(np.asarray(roots, dtype=np.complex128)) * leading)

    @classmethod
    def monomial(cls, degree: int, coefficient: complex = 1.0) -> "Polynomial":
        coeffs = np.zeros(degree + 1, dtype=np.complex128)
        coeffs[degree] = coefficient
        return cls(coeffs)

    @classmethod
    def constant(cls, value: complex) -> "Polynomial":
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def scale(self) -> float:
        """Suma modula koeficijenata."""
        return float(np.sum(np.abs(self.coeffs)))

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def coefficient(self, k: int) -> complex:
        if 0 <= k <= self.degree:
            return complex(self.coeffs[k])
        return 0j

    def __call__(self, z):
        if np.isscalar(z):
            return complex(npoly.polyval(z, self.coeffs))
        return npoly.polyval(np.asarray(z, dtype=np.complex128), self.coeffs)

    def magnitude(self, z):
        """Suma |c_k||z|^k, skala za relativne reziduale."""
        return npoly.polyval(np.abs(z), np.abs(self.coeffs))

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0])
        return Polynomial(npoly.polyder(self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polyadd(self.coeffs, _coeffs_of(other)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polysub(self.coeffs, _coeffs_of(other)))

    def __mul__(self, other: Union["Polynomial", complex]) -> "Polynomial":
        if isinstance(other, Polynomial):
            return Polynomial(npoly.polymul(self.coeffs, other.coeffs))
        return Polynomial(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self.coeffs)

    def deflate(self, root: complex) -> "Polynomial":
        """Sintetičko deljenje sa (z - root), ostatak se odbacuje."""
        quotient, _ = npoly.polydiv(self.coeffs, np.array([-root, 1.0], dtype=np.complex128))
        return Polynomial(quotient)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(z)) Hornerovom šemom."""
        result = Polynomial([self.coeffs[-1]])
        for c in self.coeffs[-2::-1]:
            result = result * inner + Polynomial([c])
        return result

    def reversed(self, degree: int) -> "Polynomial":
        """w^degree * p(1/w)."""
        padded = np.zeros(degree + 1, dtype=np.complex128)
        padded[:self.degree + 1] = self.coeffs
        return Polynomial(padded[::-1])

    def trimmed(self, rel_tol: float = 1e-13) -> "Polynomial":
        """Briše vodeće koeficijente zanemarljive u odnosu na skalu."""
        threshold = rel_tol * max(self.scale, 1e-300)
        coeffs = self.coeffs.copy()
        coeffs[np.abs(coeffs) <= threshold] = 0
        return Polynomial(coeffs)

    def normalized(self) -> "Polynomial":
        return self if self.is_zero() else Polynomial(self.coeffs / self.leading)

    def allclose(self, other: "Polynomial", tol: float = 1e-9) -> bool:
        n = max(self.degree, other.degree) + 1
        a = np.zeros(n, dtype=np.complex128)
        b = np.zeros(n, dtype=np.complex128)
        a[:self.degree + 1] = self.coeffs
        b[:other.degree + 1] = other.coeffs
        return bool(np.max(np.abs(a - b)) <= tol)

    def to_list(self) -> List[complex]:
        return [complex(c) for c in self.coeffs]

    def __repr__(self) -> str:
        terms = [f"({complex(c):.6g})z^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return "Polynomial(" + (" + ".join(terms) or "0") + ")"


def _coeffs_of(value: Union[Polynomial, complex]) -> np.ndarray:
    if isinstance(value, Polynomial):
        return value.coeffs
    return np.array([value], dtype=np.complex128)


def _vanishes(p: Polynomial, z: complex, tol: float) -> bool:
    return abs(p(z)) <= tol * max(float(p.magnitude(z)), 1e-300)


def _safe_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        result = num / den
    result = np.where(den == 0, np.where(num == 0, np.nan, np.inf + 0j), result)
    return np.where(np.isfinite(result) | np.isnan(result), result, np.inf + 0j)


def reduce_coprime(P: Polynomial, Q: Polynomial,
                   tol: Optional[float] = None) -> Tuple[Polynomial, Polynomial]:
    """
    Uklanja zajedničke korene P i Q sintetičkim deljenjem.

    Args:
        P: Brojilac
        Q: Imenilac
        tol: Relativna tolerancija za zajednički koren

    Returns:
        Par uzajamno prostih polinoma
    """
    # Lenji import da izbegnemo kružni import (fixedpoints koristi maps)
    from dynamics.fixedpoints import cluster_roots, poly_roots

    tol = Config.COPRIME_TOL if tol is None else tol
    if P.is_zero():
        return Polynomial([0]), Polynomial([1])

    while P.degree >= 1 and Q.degree >= 1:
        smaller, other = (P, Q) if P.degree <= Q.degree else (Q, P)
        candidates = [c for c, _ in cluster_roots(poly_roots(smaller))]
        common = next((r for r in candidates
                       if _vanishes(other, r, tol) and _vanishes(smaller, r, tol)), None)
        if common is None:
            break
        logger.debug("Uklanjam zajednički koren %s", common)
        P, Q = P.deflate(common), Q.deflate(common)
    return P, Q


@dataclass(frozen=True, eq=False)
class RationalMap:
    """Racionalno preslikavanje f = P/Q sa uzajamno prostim P, Q."""
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise MalformedMapError("Imenilac je identički nula")

    @classmethod
    def reduced(cls, P: Polynomial, Q: Polynomial) -> "RationalMap":
        """Pravi preslikavanje posle redukcije na uzajamno proste i moničan imenilac."""
        if Q.is_zero():
            raise MalformedMapError("Imenilac je identički nula")
        P, Q = reduce_coprime(P, Q)
        lead = Q.leading
        return cls(Polynomial(P.coeffs / lead), Polynomial(Q.coeffs / lead))

    @classmethod
    def polynomial(cls, coeffs: Union[Sequence[complex], Polynomial]) -> "RationalMap":
        """Polinomijalno preslikavanje (koeficijenti najniži stepen prvi)."""
        P = coeffs if isinstance(coeffs, Polynomial) else Polynomial(coeffs)
        return cls(P, Polynomial([1]))

    @classmethod
    def from_coefficients(cls, numerator: Sequence[complex],
                          denominator: Sequence[complex] = (1,)) -> "RationalMap":
        return cls.reduced(Polynomial(numerator), Polynomial(denominator))

    @property
    def degree(self) -> int:
        return max(self.numerator.degree, self.denominator.degree)

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def conjugate_at_infinity(self) -> "RationalMap":
        """g(w) = 1/f(1/w) = rev_d(Q)/rev_d(P)."""
        d = self.degree
        return RationalMap(self.denominator.reversed(d), self.numerator.reversed(d))

    def source_chart_at_infinity(self) -> "RationalMap":
        """h(w) = f(1/w) = rev_d(P)/rev_d(Q)."""
        d = self.degree
        return RationalMap(self.numerator.reversed(d), self.denominator.reversed(d))

    def wronskian(self) -> Polynomial:
        """P'Q - PQ' bez redukcije."""
        P, Q = self.numerator, self.denominator
        return P.derivative() * Q - P * Q.derivative()

    def __call__(self, z: SpherePoint) -> SpherePoint:
        return eval_map(self, z)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Vektorizovana evaluacija; polovi i beskonačnost postaju inf."""
        z = np.asarray(z, dtype=np.complex128)
        d = self.degree
        finite = np.isfinite(z)
        big = finite & (np.abs(z) > 1.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = np.where(big, 1.0 / np.where(big, z, 1.0), 0.0)
            z_small = np.where(finite & ~big, z, 0.0)
            num = np.where(big, self.numerator.reversed(d)(w), self.numerator(z_small))
            den = np.where(big, self.denominator.reversed(d)(w), self.denominator(z_small))
        num = np.where(finite, num, self.numerator.coefficient(d))
        den = np.where(finite, den, self.denominator.coefficient(d))
        result = _safe_divide(num, den)
        if np.any(np.isnan(result)):
            raise MalformedMapError("0/0 pri evaluaciji preslikavanja")
        return result

    def derivative_at(self, z: complex) -> SpherePoint:
        """Lokalni izvod f'(z) u konačnoj tački; u polu vraća INFINITY."""
        q = self.denominator(z)
        if q == 0:
            return INFINITY
        value = self.wronskian()(z) / (q * q)
        return as_sphere_point(value)

    def spherical_derivative(self, z: SpherePoint) -> float:
        """
        Sferni izvod |f'(z)| / (1 + |f(z)|^2).

        Za konačno z koristi |W(z)| / (|P(z)|^2 + |Q(z)|^2), što pokriva i polove.
        U beskonačnosti radi u karti w = 1/z.
        """
        if is_infinity(z):
            return self.source_chart_at_infinity().spherical_derivative(0j)
        z = complex(z)
        p, q = self.numerator(z), self.denominator(z)
        norm = abs(p) ** 2 + abs(q) ** 2
        if norm == 0:
            raise MalformedMapError(f"0/0 u tački {z}")
        return abs(self.wronskian()(z)) / norm

    def __repr__(self) -> str:
        return f"RationalMap(d={self.degree}, P={self.numerator!r}, Q={self.denominator!r})"


def eval_map(f: RationalMap, z: SpherePoint) -> SpherePoint:
    """
    Računa f(z) na sferi.

    Args:
        f: Racionalno preslikavanje
        z: Tačka sfere

    Returns:
        f(z); pol daje INFINITY, a f(∞) se računa kao 1/g(0) za g(w) = 1/f(1/w)
    """
    z = as_sphere_point(z)
    if z is INFINITY:
        g = f.conjugate_at_infinity()
        g_at_zero = eval_map(g, 0j)
        if g_at_zero is INFINITY:
            return 0j
        if g_at_zero == 0:
            return INFINITY
        return 1.0 / g_at_zero

    p = f.numerator(z)
    q = f.denominator(z)
    if q == 0:
        if p == 0:
            raise MalformedMapError(f"0/0 u tački {z} posle redukcije")
        return INFINITY
    return as_sphere_point(p / q)


def derivative(f: RationalMap) -> RationalMap:
    """Izvod (P'Q - PQ')/Q^2 redukovan na uzajamno proste."""
    Q = f.denominator
    return RationalMap.reduced(f.wronskian(), Q * Q)


def spherical_derivative(f: RationalMap, z: SpherePoint) -> float:
    """|f'(z)| / (1 + |f(z)|^2), definisano i u polovima i u ∞."""
    return f.spherical_derivative(z)


def compose(f: RationalMap, g: RationalMap, max_degree: Optional[int] = None) -> RationalMap:
    """
    Kompozicija f∘g homogenom formulom sum p_k G^k H^(d-k).

    Args:
        f: Spoljno preslikavanje
        g: Unutrašnje preslikavanje
        max_degree: Dozvoljen stepen rezultata (podrazumevano Config.MAX_SYMBOLIC_DEGREE)

    Returns:
        Redukovano preslikavanje stepena najviše deg f · deg g
    """
    cap = Config.MAX_SYMBOLIC_DEGREE if max_degree is None else max_degree
    expected = f.degree * g.degree
    if expected > cap:
        raise DegreeTooLargeError(
            f"Stepen kompozicije {expected} prelazi granicu {cap}", expected, cap)

    d = f.degree
    G, H = g.numerator, g.denominator
    g_powers = [Polynomial([1])]
    h_powers = [Polynomial([1])]
    for _ in range(d):
        g_powers.append(g_powers[-1] * G)
        h_powers.append(h_powers[-1] * H)

    def homogenize(p: Polynomial) -> Polynomial:
        total = Polynomial([0])
        for k in range(d + 1):
            c = p.coefficient(k)
            if c != 0:
                total = total + (g_powers[k] * h_powers[d - k]) * c
        return total

    with np.errstate(over="ignore", invalid="ignore"):
        try:
            P = homogenize(f.numerator)
            Q = homogenize(f.denominator)
        except ValueError as exc:
            raise DegreeTooLargeError(
                "Koeficijenti kompozicije nisu predstavljivi", expected, cap) from exc

    P, Q = P.trimmed(), Q.trimmed()
    if max(P.degree, Q.degree) <= Config.MAX_SYMBOLIC_DEGREE:
        return RationalMap.reduced(P, Q)
    lead = Q.leading
    return RationalMap(Polynomial(P.coeffs / lead), Polynomial(Q.coeffs / lead))


def iterate_symbolic(f: RationalMap, n: int, max_degree: Optional[int] = None) -> RationalMap:
    """n-ti iterat f_n simboličkom kompozicijom."""
    if n < 1:
        raise ValueError("n mora biti bar 1")
    result = f
    for _ in range(n - 1):
        result = compose(f, result, max_degree=max_degree)
    return result


def default_escape_radius(f: RationalMap) -> float:
    """R = max(4, 2·(1 + sum |koeficijenata|))."""
    return max(4.0, 2.0 * (1.0 + f.numerator.scale / abs(f.denominator.leading)))


@dataclass(frozen=True)
class Orbit:
    """Orbita tačke: start, niz tačaka i indeks bekstva ako postoji."""
    start: SpherePoint
    points: Tuple[SpherePoint, ...]
    escape_index: Optional[int] = None

    @property
    def escaped(self) -> bool:
        return self.escape_index is not None

    def __len__(self) -> int:
        return len(self.points)


def iterate_orbit(f: RationalMap, z0: SpherePoint, n: int,
                  escape_radius: Optional[float] = None) -> Orbit:
    """
    Računa z0, f(z0), ..., f_n(z0) tačku po tačku.

    Args:
        f: Preslikavanje
        z0: Početna tačka
        n: Broj iteracija (n >= 0)
        escape_radius: Radijus bekstva za polinome

    Returns:
        Orbit dužine n+1; bekstvo se beleži samo za polinomijalno f kad |z| > R
    """
    if n < 0:
        raise ValueError("n mora biti nenegativan")
    radius = default_escape_radius(f) if escape_radius is None else escape_radius
    points = [as_sphere_point(z0)]
    for _ in range(n):
        points.append(eval_map(f, points[-1]))

    escape_index = None
    if f.is_polynomial:
        for k, z in enumerate(points):
            if z is INFINITY or abs(z) > radius:
                escape_index = k
                break
    return Orbit(start=points[0], points=tuple(points), escape_index=escape_index)


def _vanishing_order_at_zero(p: Polynomial, rel_tol: float = 1e-12) -> int:
    threshold = rel_tol * max(p.scale, 1e-300)
    order = 0
    for c in p.coeffs:
        if abs(c) > threshold:
            break
        order += 1
    return order


def critical_points(f: RationalMap) -> List[SpherePoint]:
    """
    Kritične tačke sa višestrukošću: nule P'Q - PQ' i beskonačnost.

    Args:
        f: Preslikavanje stepena d >= 2

    Returns:
        Lista od tačno 2d-2 tačaka (konačne sortirane, pa INFINITY)
    """
    from dynamics.fixedpoints import poly_roots

    d = f.degree
    if d < 2:
        raise ValueError("Kritične tačke su definisane za stepen d >= 2")

    W = f.wronskian().trimmed()
    finite = [] if W.degree < 1 else list(poly_roots(W))

    deficiency = 2 * d - 2 - W.degree
    at_infinity = _vanishing_order_at_zero(f.conjugate_at_infinity().wronskian())
    if at_infinity != deficiency:
        logger.warning("Višestrukost kritične tačke u ∞: karta daje %d, stepen daje %d",
                       at_infinity, deficiency)
        at_infinity = deficiency

    finite.sort(key=sort_key)
    return finite + [INFINITY] * at_infinity


@dataclass(frozen=True)
class MoebiusMap:
    """Mebijusova transformacija (Az+B)/(Cz+D), normalizovana na max |koeficijent| = 1."""
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        values = [complex(v) for v in (self.a, self.b, self.c, self.d)]
        scale = max(abs(v) for v in values)
        if scale == 0 or not all(cmath.isfinite(v) for v in values):
            raise MalformedMapError("Koeficijenti Mebijusove transformacije nisu validni")
        values = [v / scale for v in values]
        det = values[0] * values[3] - values[1] * values[2]
        if abs(det) <= 1e-14:
            raise MalformedMapError("AD - BC = 0, transformacija je degenerisana")
        for name, value in zip("abcd", values):
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "MoebiusMap":
        return cls(matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z: SpherePoint) -> SpherePoint:
        z = as_sphere_point(z)
        if z is INFINITY:
            return INFINITY if self.c == 0 else as_sphere_point(self.a / self.c)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return as_sphere_point((self.a * z + self.b) / den)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self∘other kao proizvod matrica."""
        return MoebiusMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def to_rational_map(self) -> RationalMap:
        return RationalMap.reduced(Polynomial([self.b, self.a]), Polynomial([self.d, self.c]))

    def is_close(self, other: "MoebiusMap", tol: float = 1e-10) -> bool:
        """Jednakost do skalarnog faktora."""
        m1, m2 = self.matrix.ravel(), other.matrix.ravel()
        k = int(np.argmax(np.abs(m1)))
        if m2[k] == 0:
            return False
        return bool(np.max(np.abs(m1 - m2 * (m1[k] / m2[k]))) <= tol)

    def fixed_points(self) -> List[SpherePoint]:
        """Rešenja Cz^2 + (D-A)z - B = 0, plus ∞ kada je C = 0."""
        a, b, c, d = self.a, self.b, self.c, self.d
        if abs(c) <= 1e-15:
            if abs(a - d) <= 1e-15:
                return [INFINITY]
            return [as_sphere_point(b / (d - a)), INFINITY]
        disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
        roots = [(a - d + disc) / (2 * c), (a - d - disc) / (2 * c)]
        if abs(disc) <= 1e-12:
            return [roots[0]]
        return sorted(roots, key=sort_key)


class MoebiusKind(str, Enum):
    """Klase Mebijusovih transformacija."""
    IDENTITY = "identity-like"
    PARABOLIC = "parabolic"
    ELLIPTIC_RATIONAL = "elliptic-rational"
    ELLIPTIC_IRRATIONAL = "elliptic-irrational"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class MoebiusClassification:
    """Rezultat klasifikacije sa fiksnim tačkama i odnosom kappa."""
    kind: MoebiusKind
    fixed_points: Tuple[SpherePoint, ...]
    kappa: Optional[complex] = None
    period: Optional[int] = None


def _normalized_eigenvalues(m: MoebiusMap) -> Tuple[complex, complex, np.ndarray]:
    matrix = m.matrix / cmath.sqrt(m.determinant)
    trace = matrix[0, 0] + matrix[1, 1]
    disc = cmath.sqrt(trace * trace - 4)
    return (trace + disc) / 2, (trace - disc) / 2, matrix


def _is_scalar_matrix(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    return (abs(matrix[0, 1]) <= tol and abs(matrix[1, 0]) <= tol
            and abs(matrix[0, 0] - matrix[1, 1]) <= tol)


def moebius_classify(m: MoebiusMap) -> MoebiusClassification:
    """
    Klasifikuje Mebijusovu transformaciju.

    Odnos kappa = (C r2 + D)/(C r1 + D) je količnik sopstvenih vrednosti matrice,
    što pokriva i slučaj kada je jedna fiksna tačka beskonačnost.
    """
    mu1, mu2, matrix = _normalized_eigenvalues(m)
    fixed = tuple(m.fixed_points())
    if _is_scalar_matrix(matrix):
        return MoebiusClassification(MoebiusKind.IDENTITY, fixed, 1 + 0j, 1)
    if abs(mu1 - mu2) <= 1e-9:
        return MoebiusClassification(MoebiusKind.PARABOLIC, fixed, 1 + 0j)

    kappa = mu1 / mu2
    if abs(abs(kappa) - 1.0) >= Config.NEUTRAL_TOL:
        return MoebiusClassification(MoebiusKind.LOXODROMIC, fixed, kappa)

    turn = (cmath.phase(kappa) / (2 * math.pi)) % 1.0
    fraction = rational_approximation(turn)
    if fraction is None:
        return MoebiusClassification(MoebiusKind.ELLIPTIC_IRRATIONAL, fixed, kappa)
    period = fraction.denominator
    if period == 1:
        return MoebiusClassification(MoebiusKind.IDENTITY, fixed, kappa, 1)
    return MoebiusClassification(MoebiusKind.ELLIPTIC_RATIONAL, fixed, kappa, period)


def moebius_iterate_closed(m: MoebiusMap, n: int) -> MoebiusMap:
    """
    n-ti iterat preko stepena matrice koeficijenata.

    Args:
        m: Mebijusova transformacija
        n: Broj iteracija (n >= 0)

    Returns:
        Normalizovana transformacija m_n
    """
    if n < 0:
        raise ValueError("n mora biti nenegativan")
    if n == 0:
        return MoebiusMap.identity()

    mu1, mu2, matrix = _normalized_eigenvalues(m)
    if _is_scalar_matrix(matrix):
        return MoebiusMap.identity()

    if abs(mu1 - mu2) <= 1e-9:
        # Žordanov oblik: M = mu (I + N), N^2 = 0
        mu = (matrix[0, 0] + matrix[1, 1]) / 2
        nilpotent = matrix / mu - np.eye(2)
        power = mu ** n * (np.eye(2) + n * nilpotent)
        return MoebiusMap.from_matrix(power)

    eigenvalues, vectors = np.linalg.eig(matrix)
    # Skaliramo sa max |mu|^n da izbegnemo prekoračenje za velike n
    top = max(abs(eigenvalues[0]), abs(eigenvalues[1]))
    powers = np.array([(mu / top) ** n for mu in eigenvalues])
    power = vectors @ np.diag(powers) @ np.linalg.inv(vectors)
    return MoebiusMap.from_matrix(power)


def elliptic_moebius(a: float, b: float, c: float, d: float) -> MoebiusMap:
    """((a+bi)z + (c+di)) / ((-c+di)z + (a-bi))."""
    return MoebiusMap(complex(a, b), complex(c, d), complex(-c, d), complex(a, -b))


def quadratic_map(A: complex, B: complex, C: complex) -> RationalMap:
    """f(z) = A z^2 + 2B z + C."""
    if A == 0:
        raise NotQuadraticError("A = 0, preslikavanje nije kvadratno")
    return RationalMap.polynomial([C, 2 * B, A])


def normalize_quadratic(A: complex, B: complex,
                        C: complex) -> Tuple[complex, MoebiusMap, MoebiusMap]:
    """
    Svodi f(z) = A z^2 + 2B z + C na z^2 + T.

    Args:
        A, B, C: Koeficijenti kvadratnog preslikavanja

    Returns:
        (T, omega1, omega2) gde je T = AC - B^2 + B, omega1(z) = (z-B)/A, omega2(z) = Az + B
    """
    A, B, C = complex(A), complex(B), complex(C)
    if A == 0:
        raise NotQuadraticError("A = 0, preslikavanje nije kvadratno")
    T = A * C - B * B + B
    omega1 = MoebiusMap(1, -B, 0, A)
    omega2 = MoebiusMap(A, B, 0, 1)
    return T, omega1, omega2


def chebyshev(n: int) -> RationalMap:
    """Čebiševljev polinom T_n, T_n(cos t) = cos(n t)."""
    if n < 1:
        raise ValueError("n mora biti bar 1")
    previous, current = Polynomial([1]), Polynomial([0, 1])
    two_z = Polynomial([0, 2])
    for _ in range(n - 1):
        previous, current = current, two_z * current - previous
    return RationalMap.polynomial(current)


if __name__ == "__main__":
    f = RationalMap.polynomial([-1, 0, 1])
    print("📊 Orbita z^2-1 iz 0:", iterate_orbit(f, 0, 4).points)
    print("📊 Kritične tačke:", critical_points(f))
    print("📊 -1/z:", moebius_classify(MoebiusMap(0, -1, 1, 0)))
