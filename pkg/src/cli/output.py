"""
Izlazni formati
PPM slike, CSV tabele i JSON izveštaji
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import csv
import logging
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from PIL import Image

from cli.models import ReportDocument


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_ppm(rgb: np.ndarray, path: PathLike) -> Path:
    """
    Čuva RGB niz (visina, širina, 3) kao binarni P6 PPM sa maxval 255.

    Args:
        rgb: uint8 niz, red 0 je gornji red slike
        path: Putanja izlaznog fajla
    """
    path = Path(path)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError("Slika mora imati oblik (visina, širina, 3)")
    Image.fromarray(np.ascontiguousarray(rgb, dtype=np.uint8)).save(path, format="PPM")
    logger.info("PPM sačuvan: %s (%dx%d)", path, rgb.shape[1], rgb.shape[0])
    return path


def _write_rows(f, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                         for v in row])


def write_csv(header: Sequence[str], rows: Iterable[Sequence],
              path: Optional[PathLike] = None) -> Optional[Path]:
    """CSV sa zaglavljem i LF krajevima redova; brojevi u repr obliku."""
    if path is None:
        _write_rows(sys.stdout, header, rows)
        return None
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        _write_rows(f, header, rows)
    logger.info("CSV sačuvan: %s", path)
    return path


def _pair(value) -> Tuple[Any, Any]:
    if isinstance(value, list) and len(value) == 2:
        return value[0], value[1]
    return value, ""


def report_table(report: ReportDocument) -> Tuple[List[str], List[List[Any]]]:
    """
    Ravna tabela izveštaja za --format csv.

    classify daje tačke ciklusa, boettcher tabelu uzoraka po metodu,
    probe niz Martijeve dijagnostike.
    """
    sections = report.sections
    rows: List[List[Any]] = []
    if report.command == "classify":
        header = ["period", "re", "im", "abs_multiplier", "class"]
        periodic = sections.get("periodic", {})
        for cycle in periodic.get("cycles", []):
            for point in cycle["points"]:
                rows.append([cycle["period"], *_pair(point), cycle["abs_multiplier"], cycle["class"]])
        return header, rows
    if report.command == "boettcher":
        header = ["method", "z_re", "z_im", "value_re", "value_im", "residual"]
        for method, chart in sorted(sections.get("charts", {}).items()):
            for sample in chart.get("samples", []):
                if "value" not in sample:
                    continue
                rows.append([method, *_pair(sample["z"]), *_pair(sample["value"]),
                             sample["residual"]])
        return header, rows
    if report.command == "probe":
        header = ["n", "marty"]
        for n, value in enumerate(sections.get("marty", {}).get("series", []), start=1):
            rows.append([n, value])
        return header, rows
    raise ValueError(f"CSV tabela nije definisana za komandu {report.command}")


def write_report(report: ReportDocument, path: Optional[PathLike] = None) -> Optional[Path]:
    """JSON izveštaj u fajl, ili na standardni izlaz kada path nije zadat."""
    text = report.to_json()
    if path is None:
        sys.stdout.write(text)
        return None
    path = Path(path)
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write(text)
    logger.info("Izveštaj sačuvan: %s", path)
    return path


def sidecar_path(path: PathLike, suffix: str) -> Path:
    """Putanja pratećeg fajla pored slike (npr. .json, .csv)."""
    return Path(path).with_suffix(suffix)
