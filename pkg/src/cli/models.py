"""
Pydantic modeli za komandnu liniju
Prozor za renderovanje i JSON izveštaj sa proverom konačnosti
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json
import math
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from dynamics import __version__
from dynamics.julia import Disk, Viewport
from dynamics.maps import INFINITY
from utils.config import Config
from utils.palettes import PaletteType


SCHEMA_VERSION = 1


def _split_numbers(text: str, count: int, what: str) -> List[float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"{what} očekuje {count} vrednosti razdvojene zarezima, dato {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"{what}: neispravan broj u '{text}'") from None


class ViewportConfig(BaseModel):
    """Prozor u kompleksnoj ravni sa dimenzijama, paletom i semenom."""

    center_re: float = Field(0.0, description="Realni deo centra")
    center_im: float = Field(0.0, description="Imaginarni deo centra")
    half_width: float = Field(2.0, gt=0, description="Poluširina prozora")
    width: int = Field(256, gt=0, le=16384, description="Širina u pikselima")
    height: int = Field(256, gt=0, le=16384, description="Visina u pikselima")
    palette: Optional[PaletteType] = Field(
        None, description="Paleta za bojenje; None bira paletu prema režimu")
    seed: int = Field(default_factory=lambda: Config.SEED, description="Seme za uzorkovanje")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "center_re": 0.0,
                "center_im": 0.0,
                "half_width": 2.0,
                "width": 512,
                "height": 512,
                "palette": "escape",
            }
        }
    )

    @field_validator('center_re', 'center_im', 'half_width')
    @classmethod
    def must_be_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError('Koordinate prozora moraju biti konačne')
        return v

    @classmethod
    def from_string(cls, text: str, **extra: Any) -> "ViewportConfig":
        """Parsira "cx,cy,hw,px,py"."""
        cx, cy, hw, px, py = _split_numbers(text, 5, "--viewport")
        if px != int(px) or py != int(py):
            raise ValueError("--viewport: dimenzije u pikselima moraju biti celi brojevi")
        return cls(center_re=cx, center_im=cy, half_width=hw, width=int(px), height=int(py), **extra)

    def to_viewport(self) -> Viewport:
        return Viewport(complex(self.center_re, self.center_im), self.half_width,
                        self.width, self.height)


class DiskConfig(BaseModel):
    """Disk za probe komandu."""

    center_re: float = 0.0
    center_im: float = 0.0
    radius: float = Field(..., gt=0, description="Poluprečnik diska")

    @classmethod
    def from_string(cls, text: str) -> "DiskConfig":
        """Parsira "cx,cy,r"."""
        cx, cy, r = _split_numbers(text, 3, "disk")
        return cls(center_re=cx, center_im=cy, radius=r)

    def to_disk(self) -> Disk:
        return Disk(complex(self.center_re, self.center_im), self.radius)


def to_jsonable(value: Any, flags: List[str], path: str = "") -> Any:
    """
    Pretvara rezultat u JSON strukturu.

    Kompleksni brojevi postaju [re, im], beskonačnost na sferi "inf",
    razlomci "p/q"; nekonačni brojevi postaju None i beleže se u flags.
    """
    if value is INFINITY:
        return "inf"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            flags.append(f"nonfinite:{path}")
            return None
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            flags.append(f"nonfinite:{path}")
            return None
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v, flags, f"{path}.{k}" if path else str(k))
                for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(v, flags, f"{path}[{i}]") for i, v in enumerate(value)]
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"Vrednost tipa {type(value).__name__} nije podržana u izveštaju")


def _check_finite(value: Any, path: str = "") -> None:
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"Nekonačna vrednost u izveštaju: {path}")
    if isinstance(value, dict):
        for k, v in value.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _check_finite(v, f"{path}[{i}]")


class ReportDocument(BaseModel):
    """JSON izveštaj jedne komande."""

    schema_version: int = Field(SCHEMA_VERSION, serialization_alias="schema")
    tool: str = Field("dinamika", description="Ime alata")
    version: str = Field(__version__, description="Verzija alata")
    command: Literal["classify", "boettcher", "render", "probe"] = Field(..., description="Podkomanda")
    map: Dict[str, Any] = Field(default_factory=dict, description="Ulazno preslikavanje")
    sections: Dict[str, Any] = Field(default_factory=dict, description="Rezultati analiza")
    flags: List[str] = Field(default_factory=list, description="Upozorenja i neuspele sekcije")
    timing: Optional[Dict[str, Any]] = Field(None, description="Trajanje sekcija (--timing)")

    @model_validator(mode='after')
    def all_numbers_finite(self):
        """Svaki broj u izveštaju mora biti konačan."""
        _check_finite(self.map, "map")
        _check_finite(self.sections, "sections")
        return self

    @property
    def failed(self) -> bool:
        return any(flag.startswith("failed:") for flag in self.flags)

    @classmethod
    def build(cls, command: str, map_report: Dict[str, Any],
              sections: Dict[str, Any], flags: Optional[List[str]] = None) -> "ReportDocument":
        """Pravi izveštaj iz sirovih rezultata, uz zamenu nekonačnih vrednosti."""
        flags = list(flags or [])
        clean_map = to_jsonable(map_report, flags, "map")
        clean_sections = to_jsonable(sections, flags, "sections")
        return cls(command=command, map=clean_map, sections=clean_sections,
                   flags=sorted(set(flags)))

    def to_json(self) -> str:
        data = self.model_dump(by_alias=True, mode="json")
        if data["timing"] is None:
            del data["timing"]
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
