"""
Julijini skupovi i svuda haotična preslikavanja
Inverzna iteracija, raster vremena bekstva, Lattès preslikavanja, Vajerštrasova funkcija i dijagnostika normalnosti
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.special import gamma

from dynamics.errors import (
    DegenerateInputError,
    DegenerateLatticeError,
    PoleError,
    RootFindingError,
)
from dynamics.fixedpoints import cluster_roots, poly_roots
from dynamics.maps import (
    INFINITY,
    Polynomial,
    RationalMap,
    SpherePoint,
    as_sphere_point,
    chordal_distance,
    critical_points,
    default_escape_radius,
    eval_map,
    sort_key,
)
from utils.config import Config


logger = logging.getLogger(__name__)

PREIMAGE_RESIDUAL = 1e-8
EXCEPTIONAL_LEVELS = 3


@dataclass(frozen=True)
class Viewport:
    """Pravougaoni prozor u kompleksnoj ravni; red 0 je na vrhu."""
    center: complex
    half_width: float
    width: int
    height: int

    def __post_init__(self):
        if not self.half_width > 0 or not math.isfinite(self.half_width):
            raise ValueError("Poluširina prozora mora biti pozitivna")
        if self.width < 1 or self.height < 1:
            raise ValueError("Dimenzije u pikselima moraju biti pozitivne")

    @property
    def pixel_size(self) -> float:
        return 2.0 * self.half_width / self.width

    def grid(self) -> np.ndarray:
        """Centri piksela kao niz oblika (height, width)."""
        ps = self.pixel_size
        center = complex(self.center)
        xs = center.real - self.half_width + (np.arange(self.width) + 0.5) * ps
        ys = center.imag + (self.height / 2.0) * ps - (np.arange(self.height) + 0.5) * ps
        return xs[None, :] + 1j * ys[:, None]

    def pixel_of(self, z: complex) -> Optional[Tuple[int, int]]:
        """(red, kolona) piksela koji sadrži z, ili None van prozora."""
        ps = self.pixel_size
        col = math.floor((z.real - (self.center.real - self.half_width)) / ps)
        row = math.floor((self.center.imag + self.height / 2.0 * ps - z.imag) / ps)
        if 0 <= row < self.height and 0 <= col < self.width:
            return row, col
        return None


@dataclass(frozen=True)
class Disk:
    """Otvoren disk |z - center| < radius."""
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("Poluprečnik diska mora biti pozitivan")

    def samples(self, radial: int = 100, angular: int = 100) -> np.ndarray:
        """Polarna mreža od radial x angular tačaka."""
        radii = self.radius * (np.arange(radial) + 0.5) / radial
        angles = 2 * np.pi * np.arange(angular) / angular
        return (complex(self.center) + radii[:, None] * np.exp(1j * angles)[None, :]).ravel()

    def contains(self, z: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(z) - complex(self.center)) < self.radius


@dataclass
class PointCloud:
    """Tačke inverznog stabla sa nivoima i indeksima roditelja."""
    points: List[SpherePoint]
    levels: List[int]
    parents: List[int]
    metadata: Dict[str, Any] = field(default_factory=dict)
    skipped: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def level(self, k: int) -> List[SpherePoint]:
        return [p for p, lvl in zip(self.points, self.levels) if lvl == k]

    def rows(self) -> List[Tuple[float, float, int]]:
        """(re, im, nivo) za konačne tačke, redosledom stabla."""
        return [(p.real, p.imag, lvl) for p, lvl in zip(self.points, self.levels)
                if p is not INFINITY]


@dataclass
class RasterGrid:
    """Ćelije rastera: indeks bekstva ili oznaka korena, -1 za ograničeno/bez oznake."""
    viewport: Viewport
    cells: np.ndarray
    max_iter: int
    escape_radius: Optional[float] = None
    kind: str = "escape"
    labels: List[SpherePoint] = field(default_factory=list)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.cells.shape

    def counts(self) -> Dict[int, int]:
        values, counts = np.unique(self.cells, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def preimages(f: RationalMap, target: SpherePoint) -> List[SpherePoint]:
    """
    Različiti praoriginali tačke: koreni P - tQ (ili Q za t = ∞) i ∞ kada f(∞) = t.

    Args:
        f: Preslikavanje
        target: Tačka čiji se praoriginali traže

    Returns:
        Sortirana lista različitih tačaka
    """
    target = as_sphere_point(target)
    if target is INFINITY:
        g = f.denominator
    else:
        g = (f.numerator - f.denominator * target).trimmed()
    points: List[SpherePoint] = []
    if g.degree >= 1:
        points.extend(complex(r) for r in poly_roots(g))
    image_of_infinity = eval_map(f, INFINITY)
    if chordal_distance(image_of_infinity, target) < 1e-12:
        points.append(INFINITY)
    return [c for c, _ in cluster_roots(points)]


def is_exceptional(f: RationalMap, point: SpherePoint, levels: int = EXCEPTIONAL_LEVELS) -> bool:
    """Da li unija praoriginala kroz levels nivoa ima najviše 2 različite tačke."""
    seen: List[SpherePoint] = []
    frontier = [as_sphere_point(point)]
    for _ in range(levels):
        nxt = []
        for target in frontier:
            nxt.extend(preimages(f, target))
        frontier = [c for c, _ in cluster_roots(nxt)]
        seen = [c for c, _ in cluster_roots(seen + frontier)]
        if len(seen) > 2:
            return False
    return True


def exceptional_points(f: RationalMap) -> List[SpherePoint]:
    """Izuzetne tačke (najviše dve); kandidati su kritične vrednosti."""
    candidates = [eval_map(f, c) for c in critical_points(f)]
    distinct = [c for c, _ in cluster_roots(candidates)]
    return [p for p in distinct if is_exceptional(f, p)]


def inverse_iteration(f: RationalMap, seed: SpherePoint, depth: int,
                      cap: Optional[int] = None, rng_seed: Optional[int] = None) -> PointCloud:
    """
    Stablo praoriginala po širini do dubine depth.

    Args:
        f: Preslikavanje stepena >= 2
        seed: Početna tačka sa beskonačnom unazadnom orbitom
        depth: Broj nivoa
        cap: Ukupna granica broja tačaka (nivo zadržava najviše cap // depth)
        rng_seed: Seme za uzorkovanje nivoa

    Returns:
        PointCloud; čvorovi gde nalaženje korena ne uspe se preskaču i broje
    """
    cap = Config.CLOUD_CAP if cap is None else cap
    rng_seed = Config.SEED if rng_seed is None else rng_seed
    if depth < 1:
        raise ValueError("Dubina mora biti bar 1")
    if f.degree < 2:
        raise ValueError("Inverzna iteracija zahteva stepen bar 2")
    seed = as_sphere_point(seed)
    if is_exceptional(f, seed):
        raise DegenerateInputError(f"Tačka {seed} je izuzetna, unazadna orbita je konačna")

    rng = np.random.default_rng(rng_seed)
    per_level = max(1, cap // depth)
    points, levels, parents = [seed], [0], [-1]
    frontier = [0]
    skipped = 0
    for level in range(1, depth + 1):
        children: List[Tuple[SpherePoint, int]] = []
        for index in frontier:
            parent = points[index]
            try:
                candidates = preimages(f, parent)
            except RootFindingError as exc:
                skipped += 1
                logger.warning("Preskočen čvor %s na nivou %d: %s", parent, level, exc.message)
                continue
            for child in candidates:
                if chordal_distance(eval_map(f, child), parent) < PREIMAGE_RESIDUAL:
                    children.append((child, index))
                else:
                    skipped += 1
        children.sort(key=lambda item: sort_key(item[0]))
        if len(children) > per_level:
            chosen = np.sort(rng.choice(len(children), size=per_level, replace=False))
            children = [children[i] for i in chosen]
        frontier = []
        for child, index in children:
            frontier.append(len(points))
            points.append(child)
            levels.append(level)
            parents.append(index)
        logger.debug("Nivo %d: %d tačaka", level, len(children))

    if skipped:
        logger.warning("Inverzna iteracija: preskočeno %d čvorova", skipped)
    metadata = {"method": "inverse", "seed": seed, "depth": depth,
                "cap": cap, "rng_seed": rng_seed, "degree": f.degree}
    return PointCloud(points=points, levels=levels, parents=parents,
                      metadata=metadata, skipped=skipped)


def escape_time_raster(f: RationalMap, viewport: Viewport, max_iter: Optional[int] = None,
                       escape_radius: Optional[float] = None) -> RasterGrid:
    """
    Indeks prvog n sa |f_n(z)| >= R za svaki piksel, -1 za ograničene.

    Args:
        f: Polinomijalno preslikavanje
        viewport: Prozor
        max_iter: Broj iteracija
        escape_radius: R (podrazumevano max(4, 2(1 + sum|c|)))
    """
    if not f.is_polynomial:
        raise ValueError("Raster bekstva je definisan za polinome")
    max_iter = Config.MAX_ITER if max_iter is None else max_iter
    radius = default_escape_radius(f) if escape_radius is None else escape_radius
    if radius < default_escape_radius(f):
        logger.warning("R = %.4g je ispod preporučenog %.4g", radius, default_escape_radius(f))

    P = f.numerator
    q = complex(f.denominator.coeffs[0])
    z = viewport.grid().ravel()
    cells = np.full(z.shape, -1, dtype=np.int32)
    active = np.ones(z.shape, dtype=bool)
    for n in range(max_iter + 1):
        escaped = active & (np.abs(z) >= radius)
        cells[escaped] = n
        active &= ~escaped
        if n == max_iter or not active.any():
            break
        z[active] = P(z[active]) / q
    return RasterGrid(viewport=viewport, cells=cells.reshape(viewport.height, viewport.width),
                      max_iter=max_iter, escape_radius=radius, kind="escape")


def lattes_weierstrass(g2: complex, g3: complex) -> RationalMap:
    """R(z) = (z^4 + g2 z^2/2 + 2 g3 z + (g2/4)^2) / (4z^3 - g2 z - g3), pa je P(2u) = R(P(u))."""
    g2, g3 = complex(g2), complex(g3)
    discriminant = g2 ** 3 - 27 * g3 ** 2
    if abs(discriminant) <= 1e-12 * max(1.0, abs(g2) ** 3, 27 * abs(g3) ** 2):
        raise DegenerateLatticeError("g2^3 - 27 g3^2 = 0, rešetka je degenerisana", discriminant)
    P = Polynomial([(g2 / 4) ** 2, 2 * g3, g2 / 2, 0, 1])
    Q = Polynomial([-g3, -g2, 0, 4])
    return RationalMap.reduced(P, Q)


def lattes_sn(k: float) -> RationalMap:
    """f(z) = 4z(1-z)(1-k^2 z) / (1-k^2 z^2)^2, sn^2(2u) = f(sn^2 u)."""
    if not 0 < k < 1:
        raise ValueError("Modul k mora biti u (0, 1)")
    k2 = k * k
    P = Polynomial([0, 4]) * Polynomial([1, -1]) * Polynomial([1, -k2])
    base = Polynomial([1, 0, -k2])
    return RationalMap.reduced(P, base * base)


def lattes_cn(k: float) -> RationalMap:
    """f(z) = (A z^4 + B(2z^2 - 1)) / (B + A(2z^2 - z^4)), A = k^2, B = 1 - k^2; cn(2u) = f(cn u)."""
    if not 0 < k < 1:
        raise ValueError("Modul k mora biti u (0, 1)")
    A, B = k * k, 1 - k * k
    P = Polynomial([-B, 0, 2 * B, 0, A])
    Q = Polynomial([B, 0, 2 * A, 0, -A])
    return RationalMap.reduced(P, Q)


def _eisenstein(tau: complex, terms: int = 60) -> Tuple[complex, complex]:
    """E4(tau), E6(tau) preko q-razvoja."""
    q = cmath.exp(2j * math.pi * tau)
    e4, e6 = 1 + 0j, 1 + 0j
    qn = 1 + 0j
    for n in range(1, terms + 1):
        qn *= q
        divisors = [d for d in range(1, n + 1) if n % d == 0]
        e4 += 240 * sum(d ** 3 for d in divisors) * qn
        e6 -= 504 * sum(d ** 5 for d in divisors) * qn
        if abs(qn) < 1e-300:
            break
    return e4, e6


@dataclass(frozen=True)
class LatticeSpec:
    """Rešetka {a lambda + b mu} sa invarijantama g2, g3 i poluprečnikom sume."""
    lam: complex
    mu: complex
    truncation: Optional[float] = None

    def __post_init__(self):
        lam, mu = complex(self.lam), complex(self.mu)
        if lam == 0 or abs((mu / lam).imag) <= 1e-12:
            raise DegenerateLatticeError("mu/lambda je realan, rešetka je degenerisana", 0j)
        if (mu / lam).imag < 0:
            lam, mu = mu, lam
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        if self.truncation is None:
            object.__setattr__(self, "truncation",
                               Config.WP_RADIUS * max(abs(lam), abs(mu)))

    @classmethod
    def lemniscatic(cls, g2: complex = 4.0, truncation: Optional[float] = None) -> "LatticeSpec":
        """Kvadratna rešetka sa datim g2 i g3 = 0."""
        omega = gamma(0.25) ** 2 / (2 * math.sqrt(2 * math.pi)) * (4 / complex(g2)) ** 0.25
        return cls(omega, 1j * omega, truncation)

    @cached_property
    def tau(self) -> complex:
        return self.mu / self.lam

    @cached_property
    def eisenstein(self) -> Tuple[complex, complex]:
        """G4 = sum w^-4 i G6 = sum w^-6 preko sup q-reda."""
        e4, e6 = _eisenstein(self.tau)
        g4 = (math.pi ** 4 / 45) * e4 / self.lam ** 4
        g6 = (2 * math.pi ** 6 / 945) * e6 / self.lam ** 6
        return g4, g6

    @property
    def g2(self) -> complex:
        return 60 * self.eisenstein[0]

    @property
    def g3(self) -> complex:
        return 140 * self.eisenstein[1]

    @cached_property
    def points(self) -> np.ndarray:
        """Nenulte tačke rešetke sa |w| <= truncation."""
        span = abs(self.lam) * abs(self.tau.imag)
        reach_b = int(math.ceil(self.truncation / span)) + 1
        reach_a = int(math.ceil((self.truncation + reach_b * abs(self.mu)) / abs(self.lam))) + 1
        a, b = np.meshgrid(np.arange(-reach_a, reach_a + 1), np.arange(-reach_b, reach_b + 1))
        omega = (a * self.lam + b * self.mu).ravel()
        keep = (np.abs(omega) <= self.truncation) & (omega != 0)
        return omega[keep]

    @cached_property
    def tails(self) -> Tuple[complex, complex, complex]:
        """sum_{|w| > rho} w^-k za k = 4, 6, 8."""
        g4, g6 = self.eisenstein
        g8 = 3 * g4 * g4 / 7
        inner = [complex(np.sum(self.points ** -k)) for k in (4, 6, 8)]
        return g4 - inner[0], g6 - inner[1], g8 - inner[2]

    def reduce(self, z: complex) -> complex:
        """z minus najbliža tačka rešetke u koordinatama (a, b)."""
        matrix = np.array([[self.lam.real, self.mu.real], [self.lam.imag, self.mu.imag]])
        a, b = np.linalg.solve(matrix, [z.real, z.imag])
        return z - (round(a) * self.lam + round(b) * self.mu)


def weierstrass_p(lattice: LatticeSpec, z: complex) -> complex:
    """
    Vajerštrasova funkcija 1/z^2 + sum [1/(z+w)^2 - 1/w^2].

    Suma ide do poluprečnika lattice.truncation, a ostatak se dodaje kao
    3 z^2 T4 + 5 z^4 T6 + 7 z^6 T8 sa repovima Ajzenštajnovih suma.
    """
    z = lattice.reduce(complex(z))
    if abs(z) < 1e-9:
        raise PoleError("Tačka je pol funkcije (tačka rešetke)", z)
    omega = lattice.points
    total = 1.0 / z ** 2 + complex(np.sum(1.0 / (z + omega) ** 2 - 1.0 / omega ** 2))
    t4, t6, t8 = lattice.tails
    return total + 3 * z ** 2 * t4 + 5 * z ** 4 * t6 + 7 * z ** 6 * t8


def _sphere_stretch(f: RationalMap, z: np.ndarray) -> np.ndarray:
    """|f'(z)|(1+|z|^2)/(1+|f(z)|^2), za |z| > 1 u karti w = 1/z."""
    big = ~np.isfinite(z) | (np.abs(z) > 1.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = np.where(big, np.where(np.isfinite(z), 1.0 / np.where(big, z, 1.0), 0.0), z)
        d = f.degree
        P = np.where(big, f.numerator.reversed(d)(w), f.numerator(w))
        Q = np.where(big, f.denominator.reversed(d)(w), f.denominator(w))
        h = f.source_chart_at_infinity()
        W = np.where(big, h.wronskian()(w), f.wronskian()(w))
        return np.abs(W) * (1 + np.abs(w) ** 2) / (np.abs(P) ** 2 + np.abs(Q) ** 2)


def marty_diagnostic(f: RationalMap, region: Disk, n_max: int = 20,
                     radial: int = 32, angular: int = 32) -> np.ndarray:
    """
    Maksimum sfernog izvoda |f_n'(z)|/(1+|f_n(z)|^2) po mreži uzoraka, za n = 1..n_max.

    Izvod se akumulira lančanim pravilom kao suma logaritama.
    """
    z0 = region.samples(radial, angular)
    z = z0.copy()
    log_total = -np.log1p(np.abs(z0) ** 2)
    values = np.empty(n_max)
    for n in range(n_max):
        with np.errstate(divide="ignore"):
            log_total = log_total + np.log(_sphere_stretch(f, z))
        z = f.evaluate(z)
        with np.errstate(over="ignore"):
            values[n] = float(np.exp(np.max(log_total)))
    return values


def is_non_normal(values: np.ndarray, threshold: Optional[float] = None) -> bool:
    """Heuristika: rast sfernog izvoda preko praga ukazuje na ne-normalnost."""
    threshold = Config.MARTY_THRESHOLD if threshold is None else threshold
    return bool(len(values) and np.max(values) > threshold)


def transitivity_probe(f: RationalMap, U: Disk, V: Disk, max_n: int = 20) -> Optional[int]:
    """Prvo n >= 1 za koje neki od 10^4 uzoraka iz U pada u V, ili None."""
    z = U.samples()
    for n in range(1, max_n + 1):
        z = f.evaluate(z)
        finite = np.isfinite(z)
        if np.any(V.contains(np.where(finite, z, np.inf))):
            return n
    return None


if __name__ == "__main__":
    f = RationalMap.polynomial([0, 0, 1])
    cloud = inverse_iteration(f, 1, 6)
    print(f"📊 {len(cloud)} tačaka, max odstupanje od kruga "
          f"{max(abs(abs(p) - 1) for p in cloud.points):.2e}")
    lattice = LatticeSpec.lemniscatic(4.0)
    print(f"📊 g2 = {lattice.g2:.10f}, g3 = {lattice.g3:.2e}")
