"""
Parser opisa preslikavanja
Mini-gramatika "vrsta: argumenti" za --map opciju komandne linije
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from dynamics.errors import DegenerateLatticeError, MalformedMapError, MapSpecError, NotSquarefreeError
from dynamics.julia import lattes_cn, lattes_sn, lattes_weierstrass
from dynamics.maps import MoebiusMap, Polynomial, RationalMap, chebyshev
from dynamics.newton import newton_map


GRAMMAR_HELP = """Opis preslikavanja (--map):
  poly: c_n ... c_0          polinom, koeficijenti od najvišeg stepena
  rat: <poly> / <poly>       količnik dva polinoma
  moebius: A B C D           (Az + B) / (Cz + D)
  lattes-w: g2 g3            Lattès preslikavanje Vajerštrasove funkcije
  lattes-sn: k               Lattès preslikavanje za sn^2, 0 < k < 1
  lattes-cn: k               Lattès preslikavanje za cn, 0 < k < 1
  chebyshev: n               Čebiševljev polinom T_n
  newton: <poly>             Njutnovo preslikavanje polinoma
Kompleksni brojevi: 2, -1.5, 3i, 1+2i, 2.5e-3-i"""

_TOKEN = re.compile(r"\S+")

Token = Tuple[int, str]


@dataclass(frozen=True)
class MapSpec:
    """Parsirani opis: vrsta, izvorni tekst i konstruisano preslikavanje."""
    kind: str
    text: str
    map: RationalMap
    moebius: Optional[MoebiusMap] = None
    polynomial: Optional[Polynomial] = None

    def to_report(self) -> Dict[str, Any]:
        """Koeficijenti u rastućem redosledu stepena za izveštaj."""
        report: Dict[str, Any] = {
            "kind": self.kind,
            "spec": self.text,
            "degree": self.map.degree,
            "numerator": self.map.numerator.to_list(),
            "denominator": self.map.denominator.to_list(),
        }
        if self.polynomial is not None:
            report["polynomial"] = self.polynomial.to_list()
        return report


def parse_complex(token: str, position: int = 0) -> complex:
    """
    Parsira kompleksni literal oblika a+bi.

    Args:
        token: Tekst literala (bez razmaka)
        position: Pozicija u izvornom tekstu za poruku o grešci

    Returns:
        Konačan kompleksan broj
    """
    text = token.strip().lower()
    if not text or "j" in text or "n" in text:
        raise MapSpecError(f"Neispravan kompleksan broj '{token}'", position)
    try:
        value = complex(text.replace("i", "j"))
    except ValueError:
        raise MapSpecError(f"Neispravan kompleksan broj '{token}'", position) from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise MapSpecError(f"Broj '{token}' nije konačan", position)
    return value


def _tokens(text: str, offset: int) -> List[Token]:
    return [(offset + m.start(), m.group()) for m in _TOKEN.finditer(text)]


def _numbers(tokens: List[Token]) -> List[complex]:
    return [parse_complex(token, position) for position, token in tokens]


def _expect(tokens: List[Token], count: int, kind: str, end: int) -> List[complex]:
    if len(tokens) != count:
        position = tokens[count][0] if len(tokens) > count else end
        raise MapSpecError(f"'{kind}' očekuje {count} argument(a), dato {len(tokens)}", position)
    return _numbers(tokens)


def _polynomial(tokens: List[Token], kind: str, end: int) -> Polynomial:
    if not tokens:
        raise MapSpecError(f"'{kind}' očekuje bar jedan koeficijent", end)
    p = Polynomial.from_highest_first(_numbers(tokens))
    if p.is_zero():
        raise MapSpecError("Polinom je identički nula", tokens[0][0])
    return p


def _real_parameter(tokens: List[Token], kind: str, end: int) -> float:
    (value,) = _expect(tokens, 1, kind, end)
    if value.imag != 0:
        raise MapSpecError(f"'{kind}' očekuje realan parametar", tokens[0][0])
    return value.real


def parse_map_spec(text: str) -> MapSpec:
    """
    Parsira opis preslikavanja.

    Args:
        text: Npr. "poly: 1 0 -1" ili "moebius: 0 -1 1 0"

    Returns:
        MapSpec

    Raises:
        MapSpecError: Sa pozicijom prvog neispravnog znaka
    """
    if ":" not in text:
        raise MapSpecError("Nedostaje ':' posle vrste preslikavanja", len(text))
    head, body = text.split(":", 1)
    kind = head.strip().lower()
    offset = len(head) + 1
    tokens = _tokens(body, offset)
    end = len(text)

    try:
        if kind == "poly":
            p = _polynomial(tokens, kind, end)
            return MapSpec(kind, text, RationalMap.polynomial(p), polynomial=p)

        if kind == "rat":
            parts = body.split("/")
            if len(parts) != 2:
                position = end if len(parts) < 2 else offset + len(parts[0]) + 1 + len(parts[1])
                raise MapSpecError("'rat' očekuje tačno '<poly> / <poly>'", position)
            slash = offset + len(parts[0])
            P = _polynomial(_tokens(parts[0], offset), kind, slash)
            Q = _polynomial(_tokens(parts[1], slash + 1), kind, end)
            return MapSpec(kind, text, RationalMap.reduced(P, Q))

        if kind == "moebius":
            a, b, c, d = _expect(tokens, 4, kind, end)
            m = MoebiusMap(a, b, c, d)
            return MapSpec(kind, text, m.to_rational_map(), moebius=m)

        if kind == "lattes-w":
            g2, g3 = _expect(tokens, 2, kind, end)
            return MapSpec(kind, text, lattes_weierstrass(g2, g3))

        if kind in ("lattes-sn", "lattes-cn"):
            k = _real_parameter(tokens, kind, end)
            build = lattes_sn if kind == "lattes-sn" else lattes_cn
            return MapSpec(kind, text, build(k))

        if kind == "chebyshev":
            n = _real_parameter(tokens, kind, end)
            if n != int(n) or n < 1:
                raise MapSpecError("'chebyshev' očekuje ceo broj n >= 1", tokens[0][0])
            f = chebyshev(int(n))
            return MapSpec(kind, text, f, polynomial=f.numerator)

        if kind == "newton":
            p = _polynomial(tokens, kind, end)
            return MapSpec(kind, text, newton_map(p), polynomial=p)
    except (MalformedMapError, DegenerateLatticeError, NotSquarefreeError, ValueError) as e:
        raise MapSpecError(str(e), offset) from e

    raise MapSpecError(f"Nepoznata vrsta preslikavanja '{kind}'", len(head) - len(head.lstrip()))


def parse_complex_list(text: str) -> List[complex]:
    """Lista kompleksnih brojeva razdvojenih zarezima (npr. "3,5,1+2i")."""
    values = []
    position = 0
    for part in text.split(","):
        values.append(parse_complex(part, position))
        position += len(part) + 1
    return values


if __name__ == "__main__":
    print(GRAMMAR_HELP)
    for example in ("poly: 1 0 -1", "moebius: 0 -1 1 0", "lattes-w: 4 0", "newton: 1 0 -1"):
        spec = parse_map_spec(example)
        print(f"✅ {example} -> {spec.map}")
