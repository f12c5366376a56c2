"""
Dynamics modul za Dinamiku
"""

__version__ = "1.0.0"

from .maps import (
    INFINITY,
    MoebiusMap,
    Polynomial,
    RationalMap,
    chebyshev,
    compose,
    iterate_symbolic,
    moebius_classify,
    moebius_iterate_closed,
)
from .fixedpoints import nonrepelling_count, periodic_cycles
from .boettcher import boettcher_milnor, boettcher_original, boettcher_ritt, boettcher_series
from .linearize import abel_solve, koenigs, poly_iter_root
from .julia import escape_time_raster, inverse_iteration, lattes_weierstrass
from .newton import newton_basins, newton_map

__all__ = [
    'INFINITY',
    'MoebiusMap',
    'Polynomial',
    'RationalMap',
    'chebyshev',
    'compose',
    'iterate_symbolic',
    'moebius_classify',
    'moebius_iterate_closed',
    'nonrepelling_count',
    'periodic_cycles',
    'boettcher_milnor',
    'boettcher_original',
    'boettcher_ritt',
    'boettcher_series',
    'abel_solve',
    'koenigs',
    'poly_iter_root',
    'escape_time_raster',
    'inverse_iteration',
    'lattes_weierstrass',
    'newton_basins',
    'newton_map',
]
