"""
Komande alata
classify, boettcher, render i probe nad parsiranim preslikavanjem
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import logging
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from cli.map_spec import MapSpec
from cli.models import DiskConfig, ReportDocument, ViewportConfig
from cli.output import sidecar_path, write_csv, write_ppm, write_report
from dynamics.boettcher import boettcher_milnor, boettcher_original, boettcher_ritt, boettcher_series
from dynamics.charts import ChartMethod, CoordinateChart
from dynamics.errors import DynamicsError, MapSpecError, WrongFixedPointTypeError
from dynamics.fixedpoints import (
    cluster_roots,
    fixed_points,
    holomorphic_index,
    multiplier,
    nonrepelling_count,
)
from dynamics.fixedpoints import classify as classify_multiplier
from dynamics.julia import (
    escape_time_raster,
    exceptional_points,
    inverse_iteration,
    is_non_normal,
    marty_diagnostic,
    transitivity_probe,
)
from dynamics.maps import (
    INFINITY,
    MoebiusMap,
    SpherePoint,
    critical_points,
    moebius_classify,
    normalize_quadratic,
)
from dynamics.newton import cayley_basins, newton_basins
from utils.config import Config
from utils.palettes import PaletteType, palette_manager
from utils.performance_tracker import tracker


logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
AGREEMENT_TOL = 1e-8
CHART_BUILDERS: Dict[str, Callable[..., CoordinateChart]] = {
    ChartMethod.RITT.value: boettcher_ritt,
    ChartMethod.ORIGINAL.value: boettcher_original,
    ChartMethod.SERIES.value: boettcher_series,
}
BOETTCHER_METHODS = ("ritt", "milnor", "series", ChartMethod.ORIGINAL.value)


def _run_section(name: str, flags: List[str], func: Callable, *args, **kwargs) -> Any:
    """
    Izvršava jednu sekciju izveštaja uz merenje trajanja.

    Numerička greška ne prekida komandu: sekcija dobija opis greške,
    a flags oznaku failed:<ime>.
    """
    tracking_id = tracker.start_tracking(name)
    try:
        result = func(*args, **kwargs)
    except DynamicsError as e:
        tracker.end_tracking(tracking_id, success=False, error=e.message)
        logger.warning("Sekcija %s nije uspela: %s", name, e.message)
        flags.append(f"failed:{name}")
        return _error_entry(e)
    tracker.end_tracking(tracking_id, success=True)
    return result


def _error_entry(error: DynamicsError) -> Dict[str, Any]:
    return {"error": type(error).__name__, "message": error.message}


def _as_moebius(spec: MapSpec) -> MoebiusMap:
    if spec.moebius is not None:
        return spec.moebius
    P, Q = spec.map.numerator, spec.map.denominator
    return MoebiusMap(P.coefficient(1), P.coefficient(0), Q.coefficient(1), Q.coefficient(0))


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

def _moebius_section(m: MoebiusMap) -> Dict[str, Any]:
    result = moebius_classify(m)
    return {
        "kind": result.kind.value,
        "fixed_points": list(result.fixed_points),
        "kappa": result.kappa,
        "period": result.period,
    }


def _fixed_point_section(f) -> Dict[str, Any]:
    entries = []
    indices = []
    for point, count in cluster_roots(fixed_points(f)):
        lam = multiplier(f, [point])
        kind = classify_multiplier(lam)
        index = holomorphic_index(f, point)
        indices.append(index)
        entries.append({
            "point": point,
            "multiplicity": count,
            "multiplier": lam,
            "abs_multiplier": abs(lam),
            "class": kind.label(),
            "rotation": kind.rotation,
            "index": index,
        })
    section: Dict[str, Any] = {"points": entries}
    if indices and all(index is not None for index in indices):
        section["index_sum"] = sum(indices)
    return section


def _cycle_section(f, max_period: int) -> Dict[str, Any]:
    check = nonrepelling_count(f, max_period)
    cycles = [{
        "period": cycle.exact_period,
        "points": list(cycle.points),
        "multiplier": cycle.multiplier,
        "abs_multiplier": abs(cycle.multiplier),
        "class": cycle.classification.label(),
    } for cycle in check.cycles]
    return {
        "cycles": cycles,
        "bound": {
            "nonrepelling": check.count,
            "bound": check.bound,
            "within_bound": check.within_bound,
            "max_period": check.max_period,
            "partial": True,
        },
    }


def _quadratic_section(spec: MapSpec) -> Dict[str, Any]:
    p = spec.polynomial
    T, omega1, omega2 = normalize_quadratic(p.coefficient(2), p.coefficient(1) / 2, p.coefficient(0))
    return {
        "T": T,
        "omega1": [omega1.a, omega1.b, omega1.c, omega1.d],
        "omega2": [omega2.a, omega2.b, omega2.c, omega2.d],
    }


def cmd_classify(spec: MapSpec, max_period: Optional[int] = None) -> ReportDocument:
    """
    Fiksne tačke, ciklusi sa multiplikatorima i granica 2d-2.

    Args:
        spec: Parsirano preslikavanje
        max_period: Najveći period (podrazumevano Config.MAX_PERIOD)
    """
    max_period = Config.MAX_PERIOD if max_period is None else max_period
    f = spec.map
    flags: List[str] = []
    sections: Dict[str, Any] = {}

    if f.degree < 1:
        raise MapSpecError("Konstantno preslikavanje nema dinamiku", 0)

    if f.degree == 1:
        sections["moebius"] = _run_section("moebius", flags, _moebius_section, _as_moebius(spec))
    else:
        sections["fixed_points"] = _run_section("fixed_points", flags, _fixed_point_section, f)
        sections["periodic"] = _run_section("periodic", flags, _cycle_section, f, max_period)
        sections["critical_points"] = _run_section("critical_points", flags, critical_points, f)
        sections["exceptional_points"] = _run_section(
            "exceptional_points", flags, exceptional_points, f)
        if spec.polynomial is not None and spec.polynomial.degree == 2 and spec.kind != "newton":
            sections["normal_form"] = _run_section("normal_form", flags, _quadratic_section, spec)

    return ReportDocument.build("classify", spec.to_report(), sections, flags)


# ----------------------------------------------------------------------
# boettcher
# ----------------------------------------------------------------------

def _superattracting_center(spec: MapSpec) -> SpherePoint:
    f = spec.map
    if f.is_polynomial:
        return INFINITY
    for point in fixed_points(f):
        lam = multiplier(f, [point])
        if abs(lam) <= 1e-10:
            return point
    raise WrongFixedPointTypeError("Preslikavanje nema superprivlačnu fiksnu tačku", 1.0)


def _default_samples(center: SpherePoint) -> List[complex]:
    if center is INFINITY:
        return [3 + 0j, 5 + 0j, 10 + 0j]
    return [center + 0.05, center + 0.05j, center - 0.05]


def _build_chart(spec: MapSpec, method: str, center: SpherePoint) -> CoordinateChart:
    if method == ChartMethod.MILNOR.value:
        if center is not INFINITY:
            raise WrongFixedPointTypeError("Milnorova karta postoji samo u ∞ polinoma", 0j)
        return boettcher_milnor(spec.map)
    return CHART_BUILDERS[method](spec.map, center)


def _sample_table(spec: MapSpec, chart: CoordinateChart, method: str,
                  points: Sequence[complex], flags: List[str]) -> List[Dict[str, Any]]:
    rows = []
    for i, z in enumerate(points):
        try:
            rows.append({"z": z, "value": chart(z), "residual": chart.residual(spec.map, z)})
        except DynamicsError as e:
            flags.append(f"outside:{method}:{i}")
            rows.append({"z": z, **_error_entry(e)})
    return rows


def _chart_section(spec: MapSpec, method: str, center: SpherePoint,
                   points: Sequence[complex], flags: List[str]) -> Dict[str, Any]:
    chart = _build_chart(spec, method, center)
    section = chart.describe()
    section["samples"] = _sample_table(spec, chart, method, points, flags)
    try:
        worst = chart.max_residual(spec.map, chart.sample_points(100))
    except DynamicsError as e:
        flags.append(f"residual:{method}")
        section["functional_equation"] = _error_entry(e)
        return section
    section["functional_equation"] = {"max_residual": worst, "tolerance": RESIDUAL_TOL,
                                      "samples": 100, "ok": worst < RESIDUAL_TOL}
    if not worst < RESIDUAL_TOL:
        flags.append(f"residual:{method}")
    return section


def _comparison(charts: Dict[str, Dict[str, Any]], points: Sequence[complex],
                flags: List[str]) -> List[Dict[str, Any]]:
    rows = []
    for i, z in enumerate(points):
        values = {name: section["samples"][i]["value"] for name, section in charts.items()
                  if "samples" in section and "value" in section["samples"][i]}
        spread = 0.0
        for a, b in combinations(sorted(values), 2):
            if values[a] is INFINITY or values[b] is INFINITY:
                continue
            spread = max(spread, abs(values[a] - values[b]))
        if spread >= AGREEMENT_TOL:
            flags.append(f"disagree:{i}")
        rows.append({"z": z, "methods": sorted(values), "max_difference": spread,
                     "ok": spread < AGREEMENT_TOL})
    return rows


def cmd_boettcher(spec: MapSpec, method: str = "all", points: Optional[Sequence[complex]] = None,
                  center: Optional[SpherePoint] = None) -> ReportDocument:
    """
    Konstruiše Böttcherove karte i tabelu reziduala u uzorcima.

    Args:
        spec: Parsirano preslikavanje
        method: ritt, milnor, series, original-1904 ili all
        points: Tačke uzorka (podrazumevano 3, 5, 10 za ∞)
        center: Superprivlačna fiksna tačka (podrazumevano ∞ za polinome)
    """
    if method != "all" and method not in BOETTCHER_METHODS:
        raise ValueError(f"Nepoznat metod '{method}'")
    flags: List[str] = []
    sections: Dict[str, Any] = {}

    if center is None:
        center = _run_section("center", flags, _superattracting_center, spec)
        if isinstance(center, dict):
            sections["center"] = center
            return ReportDocument.build("boettcher", spec.to_report(), sections, flags)
    points = list(points) if points else _default_samples(center)
    sections["center"] = center

    if method == "all":
        methods = [m for m in BOETTCHER_METHODS
                   if m != ChartMethod.MILNOR.value or (center is INFINITY and spec.map.is_polynomial)]
    else:
        methods = [method]

    charts: Dict[str, Dict[str, Any]] = {}
    for name in methods:
        charts[name] = _run_section(f"chart:{name}", flags, _chart_section,
                                    spec, name, center, points, flags)
    sections["charts"] = charts
    if method == "all":
        sections["comparison"] = _comparison(charts, points, flags)
    return ReportDocument.build("boettcher", spec.to_report(), sections, flags)


# ----------------------------------------------------------------------
# render
# ----------------------------------------------------------------------

RENDER_MODES = ("escape", "inverse", "newton")


def _inverse_seed(spec: MapSpec) -> SpherePoint:
    """Prva odbijajuća fiksna tačka, koja pripada Julijinom skupu."""
    f = spec.map
    for point, _ in cluster_roots(fixed_points(f)):
        if point is not INFINITY and classify_multiplier(multiplier(f, [point])).is_repelling:
            return point
    raise WrongFixedPointTypeError("Nema konačne odbijajuće fiksne tačke za seme", 0j)


def _render_escape(spec, viewport, max_iter, palette):
    grid = escape_time_raster(spec.map, viewport, max_iter)
    palette = palette or PaletteType.ESCAPE
    rgb = palette_manager.colorize(grid.cells, palette, labels=grid.max_iter + 1)
    counts = grid.counts()
    section = {"max_iter": grid.max_iter, "escape_radius": grid.escape_radius,
               "bounded_pixels": counts.get(-1, 0), "palette": palette.value}
    return rgb, section


def _render_newton(spec, viewport, max_iter, palette):
    if spec.polynomial is None:
        raise ValueError("Režim newton zahteva 'newton:' ili 'poly:' opis")
    p = spec.polynomial
    section: Dict[str, Any] = {}
    if p.degree == 2:
        report = cayley_basins(p, viewport, max_iter)
        grid = report.grid
        section["cayley"] = {"mismatches": report.mismatches, "outside_band": report.outside_band,
                             "conjugacy_error": report.conjugacy_error,
                             "dichotomy_holds": report.dichotomy_holds}
    else:
        grid = newton_basins(p, viewport, max_iter)
    palette = palette or PaletteType.ROOTS
    rgb = palette_manager.colorize(grid.cells, palette, labels=len(grid.labels))
    counts = grid.counts()
    section.update({"max_iter": grid.max_iter, "palette": palette.value, "roots": list(grid.labels),
                    "basin_pixels": {str(k): v for k, v in counts.items()}})
    return rgb, section


def cmd_render(spec: MapSpec, mode: str, viewport_config: ViewportConfig, out: Path,
               max_iter: Optional[int] = None, depth: int = 8,
               output_format: str = "ppm", timing: bool = False) -> ReportDocument:
    """
    Renderuje sliku i prateći JSON izveštaj.

    Args:
        spec: Parsirano preslikavanje
        mode: escape, inverse ili newton
        viewport_config: Prozor i paleta (None: escape za bekstvo, roots za bazene)
        out: Putanja slike; .json (i .csv za inverse) se pišu pored nje
        max_iter: Broj iteracija
        depth: Dubina inverznog stabla
        output_format: ppm, ili csv za inverse bez slike
        timing: Da li prateći JSON dobija trajanje sekcija

    Returns:
        ReportDocument upisan kao prateći JSON
    """
    if mode not in RENDER_MODES:
        raise ValueError(f"Nepoznat režim '{mode}'")
    if output_format == "csv" and mode != "inverse":
        raise ValueError("CSV izlaz postoji samo za režim inverse")
    out = Path(out)
    json_path = sidecar_path(out, ".json")
    if json_path == out:
        raise ValueError("Putanja slike ne sme imati ekstenziju .json")
    viewport = viewport_config.to_viewport()
    flags: List[str] = []
    outputs: List[str] = []
    section: Dict[str, Any] = {"mode": mode,
                               "viewport": viewport_config.model_dump(mode="json")}

    rgb = None
    if mode == "escape":
        tracking_id = tracker.start_tracking("render:escape")
        rgb, details = _render_escape(spec, viewport, max_iter, viewport_config.palette)
        tracker.end_tracking(tracking_id)
        section.update(details)
    elif mode == "newton":
        tracking_id = tracker.start_tracking("render:newton")
        rgb, details = _render_newton(spec, viewport, max_iter, viewport_config.palette)
        tracker.end_tracking(tracking_id)
        section.update(details)
    else:
        seed = _run_section("seed", flags, _inverse_seed, spec)
        if isinstance(seed, dict):
            section["seed"] = seed
        else:
            cloud = _run_section("render:inverse", flags, inverse_iteration, spec.map, seed, depth,
                                 None, viewport_config.seed)
            if isinstance(cloud, dict):
                section["cloud"] = cloud
            else:
                csv_path = out if output_format == "csv" else sidecar_path(out, ".csv")
                write_csv(("re", "im", "level"), cloud.rows(), csv_path)
                outputs.append(csv_path.name)
                section["cloud"] = {**cloud.metadata, "points": len(cloud), "skipped": cloud.skipped}
                pixels = [viewport.pixel_of(z) for z in cloud.points if z is not INFINITY]
                if output_format != "csv":
                    rgb = palette_manager.plot_points((viewport.height, viewport.width),
                                                      [p for p in pixels if p is not None])

    if rgb is not None:
        write_ppm(rgb, out)
        outputs.append(out.name)
    section["outputs"] = outputs

    report = ReportDocument.build("render", spec.to_report(), {"render": section}, flags)
    if timing:
        report.timing = tracker.summary()
    write_report(report, json_path)
    return report


# ----------------------------------------------------------------------
# probe
# ----------------------------------------------------------------------

def cmd_probe(spec: MapSpec, U: DiskConfig, V: DiskConfig, max_n: int = 20,
              region: Optional[DiskConfig] = None) -> ReportDocument:
    """
    Test tranzitivnosti i Martijeva dijagnostika ne-normalnosti.

    Args:
        spec: Parsirano preslikavanje
        U, V: Diskovi za proveru f_n(U) ∩ V
        max_n: Najveći broj iteracija
        region: Disk za Martijevu dijagnostiku (podrazumevano U)
    """
    region = U if region is None else region
    flags: List[str] = []
    f = spec.map

    hit = _run_section("transitivity", flags, transitivity_probe, f, U.to_disk(), V.to_disk(), max_n)
    series = _run_section("marty", flags, marty_diagnostic, f, region.to_disk(), max_n)

    sections: Dict[str, Any] = {
        "transitivity": hit if isinstance(hit, dict) else {
            "U": U.model_dump(), "V": V.model_dump(), "max_n": max_n, "first_hit": hit},
    }
    if isinstance(series, dict):
        sections["marty"] = series
    else:
        sections["marty"] = {
            "region": region.model_dump(),
            "series": list(series),
            "max": float(max(series)) if len(series) else 0.0,
            "threshold": Config.MARTY_THRESHOLD,
            "non_normal": is_non_normal(series),
        }
    return ReportDocument.build("probe", spec.to_report(), sections, flags)
