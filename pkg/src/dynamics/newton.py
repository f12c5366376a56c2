"""
Njutnova preslikavanja
Njutnov metod kao racionalno preslikavanje i Kejlijeva podela ravni za kvadratne jednačine
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from dynamics.errors import NotSquarefreeError
from dynamics.fixedpoints import cluster_roots, multiplier, poly_roots
from dynamics.julia import RasterGrid, Viewport
from dynamics.maps import INFINITY, Polynomial, RationalMap, sort_key
from utils.config import Config


logger = logging.getLogger(__name__)

CONSECUTIVE_HITS = 3


def newton_map(p: Polynomial) -> RationalMap:
    """
    N(z) = z - p(z)/p'(z) = (z p' - p) / p' u redukovanom obliku.

    Args:
        p: Polinom stepena >= 2 bez višestrukih korena

    Returns:
        RationalMap čiji je svaki koren od p superprivlačna fiksna tačka
    """
    if p.degree < 2:
        raise ValueError("Njutnovo preslikavanje zahteva stepen bar 2")
    roots = poly_roots(p)
    if any(count > 1 for _, count in cluster_roots(roots)):
        raise NotSquarefreeError("Polinom ima višestruki koren", roots=list(roots))

    dp = p.derivative()
    N = RationalMap.reduced(Polynomial([0, 1]) * dp - p, dp)
    for root in roots:
        lam = multiplier(N, [complex(root)])
        if abs(lam) > 1e-8:
            logger.warning("Multiplikator u korenu %s je %.3g umesto 0", root, abs(lam))
    return N


def _chordal(z: np.ndarray, root: complex) -> np.ndarray:
    with np.errstate(invalid="ignore", over="ignore"):
        finite = np.isfinite(z)
        zf = np.where(finite, z, 0)
        dist = 2 * np.abs(zf - root) / np.sqrt((1 + np.abs(zf) ** 2) * (1 + abs(root) ** 2))
    return np.where(finite, dist, 2 / np.sqrt(1 + abs(root) ** 2))


def newton_basins(p: Polynomial, viewport: Viewport, max_iter: Optional[int] = None,
                  tol: Optional[float] = None) -> RasterGrid:
    """
    Oznaka korena za svaki piksel, -1 kada orbita ne konvergira.

    Konvergencija se proglašava kada je hordalno rastojanje do korena < tol
    tri uzastopne iteracije zaredom; oznake prate sortirane korene.
    """
    max_iter = Config.MAX_ITER if max_iter is None else max_iter
    tol = Config.NEWTON_TOL if tol is None else tol
    N = newton_map(p)
    roots: List[complex] = sorted((complex(r) for r in poly_roots(p)), key=sort_key)

    z = viewport.grid().ravel()
    cells = np.full(z.shape, -1, dtype=np.int32)
    candidate = np.full(z.shape, -1, dtype=np.int32)
    streak = np.zeros(z.shape, dtype=np.int32)
    active = np.ones(z.shape, dtype=bool)
    for _ in range(max_iter):
        z[active] = N.evaluate(z[active])
        nearest = np.full(z.shape, -1, dtype=np.int32)
        for label, root in enumerate(roots):
            nearest[active & (_chordal(z, root) < tol)] = label
        same = (nearest >= 0) & (nearest == candidate)
        streak = np.where(same, streak + 1, np.where(nearest >= 0, 1, 0))
        candidate = nearest
        done = active & (streak >= CONSECUTIVE_HITS)
        cells[done] = candidate[done]
        active &= ~done
        if not active.any():
            break
    return RasterGrid(viewport=viewport, cells=cells.reshape(viewport.height, viewport.width),
                      max_iter=max_iter, kind="roots", labels=list(roots))


@dataclass
class CayleyReport:
    """Poređenje bazena sa pravilom simetrale duži r1 r2."""
    grid: RasterGrid
    mismatches: int
    outside_band: int
    conjugacy_error: float

    @property
    def dichotomy_holds(self) -> bool:
        return self.outside_band == 0


def cayley_basins(p: Polynomial, viewport: Viewport, max_iter: Optional[int] = None,
                  tol: Optional[float] = None, samples: int = 20) -> CayleyReport:
    """
    Bazeni Njutnovog metoda za kvadratni polinom i provera Kejlijeve podele.

    Args:
        p: Kvadratni polinom sa različitim korenima
        viewport: Prozor
        max_iter: Broj iteracija
        tol: Hordalna tolerancija konvergencije
        samples: Broj tačaka za proveru konjugacije h(N(z)) = h(z)^2

    Returns:
        CayleyReport; neslaganja van pojasa od jednog piksela oko simetrale
        znače da podela ne važi
    """
    if p.degree != 2:
        raise ValueError("Kejlijeva podela je definisana za kvadratne polinome")
    grid = newton_basins(p, viewport, max_iter, tol)
    r1, r2 = grid.labels

    z = viewport.grid()
    d1, d2 = np.abs(z - r1) ** 2, np.abs(z - r2) ** 2
    expected = np.where(d1 < d2, 0, 1)
    distance = np.abs(d1 - d2) / (2 * abs(r1 - r2))
    wrong = grid.cells != expected
    outside = wrong & (distance > viewport.pixel_size)

    N = newton_map(p)
    rng = np.random.default_rng(Config.SEED)
    points = viewport.grid().ravel()[rng.choice(z.size, size=min(samples, z.size), replace=False)]
    errors = []
    for w in points:
        image = N(complex(w))
        if image is INFINITY or abs(w - r2) < 1e-9 or abs(image - r2) < 1e-9:
            continue
        hw = (w - r1) / (w - r2)
        errors.append(abs((image - r1) / (image - r2) - hw ** 2) / max(1.0, abs(hw) ** 2))
    conjugacy_error = max(errors) if errors else 0.0

    logger.debug("Kejli: %d neslaganja, %d van pojasa", int(wrong.sum()), int(outside.sum()))
    return CayleyReport(grid=grid, mismatches=int(wrong.sum()), outside_band=int(outside.sum()),
                        conjugacy_error=float(conjugacy_error))


if __name__ == "__main__":
    p = Polynomial([-1, 0, 1])
    print("📊 N za z^2-1:", newton_map(p))
    report = cayley_basins(p, Viewport(0j, 2.0, 64, 64))
    print("✅ Kejlijeva podela važi" if report.dichotomy_holds else "❌ podela ne važi")
