"""
Palete za renderovanje
Predefinisane palete za raster bekstva, bazene korena i oblake tačaka
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from PIL import Image


class PaletteType(Enum):
    """Tipovi paleta."""
    ESCAPE = "escape"
    ROOTS = "roots"


@dataclass
class Palette:
    """Definiše paletu: tabelu nijansi i boju pozadine."""
    name: str
    description: str
    kind: PaletteType
    size: Optional[int] = None  # None znači jedna nijansa po oznaci
    background: Tuple[int, int, int] = (0, 0, 0)

    def table(self, count: Optional[int] = None) -> np.ndarray:
        """
        Tabela boja (count x 3, uint8), unos k ima nijansu k/count.

        Args:
            count: Broj unosa (podrazumevano size palete)
        """
        count = self.size if count is None else count
        if not count:
            return np.zeros((0, 3), dtype=np.uint8)
        hue = (256 * np.arange(count) // count).astype(np.uint8)
        full = np.full(count, 255, dtype=np.uint8)
        hsv = np.stack([hue, full, full], axis=-1)
        image = Image.frombytes("HSV", (count, 1), hsv.tobytes()).convert("RGB")
        return np.asarray(image, dtype=np.uint8).reshape(count, 3)


# Predefinisane palete
PALETTES = {
    PaletteType.ESCAPE: Palette(
        name="Vreme bekstva",
        description="256 nijansi po indeksu bekstva, ograničene tačke su crne",
        kind=PaletteType.ESCAPE,
        size=256,
    ),

    PaletteType.ROOTS: Palette(
        name="Bazeni korena",
        description="Jedna nijansa po korenu, crno za piksele bez oznake",
        kind=PaletteType.ROOTS,
    ),
}


class PaletteManager:
    """Upravlja paletama i bojenjem rastera."""

    def __init__(self):
        self.palettes = PALETTES

    def get_palette(self, palette_type: PaletteType) -> Palette:
        return self.palettes[palette_type]

    def list_palettes(self) -> str:
        """Formatirana lista paleta za --help."""
        lines = ["🎨 Dostupne palete:"]
        for palette_type, palette in self.palettes.items():
            lines.append(f"   {palette_type.value}: {palette.name} - {palette.description}")
        return "\n".join(lines)

    def colorize(self, cells: np.ndarray, palette_type: PaletteType,
                 labels: int = 0) -> np.ndarray:
        """
        Boji ćelije rastera; -1 dobija boju pozadine.

        Args:
            cells: Celobrojni raster (indeksi bekstva ili oznake korena)
            palette_type: Tip palete
            labels: Broj oznaka za paletu korena

        Returns:
            RGB niz oblika (visina, širina, 3)
        """
        palette = self.get_palette(palette_type)
        table = palette.table(labels if palette.size is None else None)
        rgb = np.empty(cells.shape + (3,), dtype=np.uint8)
        rgb[...] = palette.background
        marked = cells >= 0
        if len(table):
            rgb[marked] = table[cells[marked] % len(table)]
        return rgb

    def plot_points(self, shape: Tuple[int, int], pixels) -> np.ndarray:
        """Bele tačke na crnoj pozadini za oblak tačaka."""
        rgb = np.zeros(shape + (3,), dtype=np.uint8)
        for row, col in pixels:
            rgb[row, col] = (255, 255, 255)
        return rgb


# Globalna instanca
palette_manager = PaletteManager()
