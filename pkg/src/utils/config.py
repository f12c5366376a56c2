"""
Centralizovana konfiguracija za Dinamiku
Tolerancije, granice stepena i podrazumevani parametri algoritama
"""

import os
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Union
from dotenv import load_dotenv, dotenv_values


# Učitaj .env fajl
env_path = Path(__file__).parent.parent.parent / '.env'
load_dotenv(env_path)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == 'true'


class Config:
    """Centralizovana konfiguracija aplikacije."""

    # Tolerancije za korene i cikluse
    ROOT_TOL: float = float(os.getenv('DINAMIKA_ROOT_TOL', '1e-10'))
    COPRIME_TOL: float = float(os.getenv('DINAMIKA_COPRIME_TOL', '1e-9'))
    CLUSTER_TOL: float = float(os.getenv('DINAMIKA_CLUSTER_TOL', '1e-6'))
    CYCLE_TOL: float = float(os.getenv('DINAMIKA_CYCLE_TOL', '1e-7'))
    NEUTRAL_TOL: float = float(os.getenv('DINAMIKA_NEUTRAL_TOL', '1e-9'))

    # Verižni razlomci za racionalne uglove
    CF_DEPTH: int = int(os.getenv('DINAMIKA_CF_DEPTH', '12'))
    CF_TOL: float = float(os.getenv('DINAMIKA_CF_TOL', '1e-10'))
    CF_MAX_DENOMINATOR: int = int(os.getenv('DINAMIKA_CF_MAX_DENOMINATOR', '256'))

    # Granice simboličke algebre
    MAX_SYMBOLIC_DEGREE: int = int(os.getenv('DINAMIKA_MAX_SYMBOLIC_DEGREE', '64'))
    MAX_CYCLE_DEGREE: int = int(os.getenv('DINAMIKA_MAX_CYCLE_DEGREE', '4096'))
    MAX_PERIOD: int = int(os.getenv('DINAMIKA_MAX_PERIOD', '3'))

    # Redovi i iteracije
    SERIES_TERMS: int = int(os.getenv('DINAMIKA_SERIES_TERMS', '32'))
    REVERSION_TERMS: int = int(os.getenv('DINAMIKA_REVERSION_TERMS', '24'))
    MAX_ITER: int = int(os.getenv('DINAMIKA_MAX_ITER', '200'))
    NEWTON_TOL: float = float(os.getenv('DINAMIKA_NEWTON_TOL', '1e-8'))

    # Julia skupovi i dijagnostika
    SEED: int = int(os.getenv('DINAMIKA_SEED', '20240101'))
    CLOUD_CAP: int = int(os.getenv('DINAMIKA_CLOUD_CAP', '4096'))
    MARTY_THRESHOLD: float = float(os.getenv('DINAMIKA_MARTY_THRESHOLD', '1e3'))
    WP_RADIUS: float = float(os.getenv('DINAMIKA_WP_RADIUS', '20'))

    # App postavke
    LOG_LEVEL: str = os.getenv('DINAMIKA_LOG_LEVEL', 'WARNING')
    DEBUG_MODE: bool = _env_bool('DINAMIKA_DEBUG', 'False')

    # Kratka imena iz konfiguracionog fajla -> atributi klase
    FILE_KEYS: Dict[str, str] = {
        'root_tol': 'ROOT_TOL',
        'coprime_tol': 'COPRIME_TOL',
        'cluster_tol': 'CLUSTER_TOL',
        'cycle_tol': 'CYCLE_TOL',
        'neutral_tol': 'NEUTRAL_TOL',
        'cf_depth': 'CF_DEPTH',
        'cf_tol': 'CF_TOL',
        'cf_max_denominator': 'CF_MAX_DENOMINATOR',
        'max_symbolic_degree': 'MAX_SYMBOLIC_DEGREE',
        'max_cycle_degree': 'MAX_CYCLE_DEGREE',
        'max_period': 'MAX_PERIOD',
        'series_terms': 'SERIES_TERMS',
        'reversion_terms': 'REVERSION_TERMS',
        'max_iter': 'MAX_ITER',
        'newton_tol': 'NEWTON_TOL',
        'seed': 'SEED',
        'cloud_cap': 'CLOUD_CAP',
        'marty_threshold': 'MARTY_THRESHOLD',
        'wp_radius': 'WP_RADIUS',
        'log_level': 'LOG_LEVEL',
        'debug': 'DEBUG_MODE',
    }

    @classmethod
    def validate(cls) -> bool:
        """Proverava da li su vrednosti u dozvoljenim opsezima."""
        problems = []
        for name in ('ROOT_TOL', 'COPRIME_TOL', 'CLUSTER_TOL', 'CYCLE_TOL',
                     'NEUTRAL_TOL', 'CF_TOL', 'NEWTON_TOL'):
            value = getattr(cls, name)
            if not 0 < value < 1:
                problems.append(f"{name}={value} mora biti u (0, 1)")
        if cls.MAX_SYMBOLIC_DEGREE < 2:
            problems.append("MAX_SYMBOLIC_DEGREE mora biti bar 2")
        if cls.MAX_CYCLE_DEGREE < cls.MAX_SYMBOLIC_DEGREE:
            problems.append("MAX_CYCLE_DEGREE ne sme biti manji od MAX_SYMBOLIC_DEGREE")
        if not 1 <= cls.MAX_PERIOD <= 6:
            problems.append(f"MAX_PERIOD={cls.MAX_PERIOD} mora biti između 1 i 6")
        if (cls.CF_DEPTH < 1 or cls.CF_MAX_DENOMINATOR < 1
                or cls.SERIES_TERMS < 2 or cls.REVERSION_TERMS < 2):
            problems.append("dubine i broj članova reda moraju biti pozitivni")
        if cls.MAX_ITER < 1 or cls.CLOUD_CAP < 1:
            problems.append("MAX_ITER i CLOUD_CAP moraju biti pozitivni")

        if problems:
            for problem in problems:
                print(f"❌ GREŠKA: {problem}")
            return False

        if cls.DEBUG_MODE:
            print("✅ Konfiguracija učitana!")
            print(f"   - Max stepen kompozicije: {cls.MAX_SYMBOLIC_DEGREE}")
            print(f"   - Max period: {cls.MAX_PERIOD}")
            print(f"   - Seed: {cls.SEED}")
        return True

    @classmethod
    def load_file(cls, path: Union[str, Path]) -> Dict[str, Any]:
        """
        Čita ravan key=value konfiguracioni fajl.

        Args:
            path: Putanja do fajla

        Returns:
            Rečnik {ATRIBUT: vrednost} sa vrednostima konvertovanim u tip atributa
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Konfiguracioni fajl ne postoji: {path}")

        overrides: Dict[str, Any] = {}
        for key, raw in dotenv_values(path).items():
            if raw is None:
                continue
            name = cls.FILE_KEYS.get(key.lower())
            if name is None and key.upper().startswith('DINAMIKA_'):
                name = cls.FILE_KEYS.get(key.upper()[len('DINAMIKA_'):].lower())
            if name is None:
                raise ValueError(f"Nepoznat ključ u konfiguraciji: {key}")
            overrides[name] = cls._coerce(name, raw)
        return overrides

    @classmethod
    def _coerce(cls, name: str, raw: Any) -> Any:
        current = getattr(cls, name)
        if isinstance(raw, str) and isinstance(current, bool):
            return raw.strip().lower() == 'true'
        return type(current)(raw)

    @classmethod
    @contextmanager
    def overridden(cls, **values: Any) -> Iterator[None]:
        """Privremeno menja atribute konfiguracije (CLI i testovi)."""
        previous = {name: getattr(cls, name) for name in values}
        try:
            for name, value in values.items():
                if not hasattr(cls, name):
                    raise AttributeError(f"Config nema atribut {name}")
                setattr(cls, name, cls._coerce(name, value))
            yield
        finally:
            for name, value in previous.items():
                setattr(cls, name, value)


# Primer korišćenja
if __name__ == "__main__":
    print("=" * 50)
    print("Test učitavanja konfiguracije")
    print("=" * 50)

    if Config.validate():
        print(f"\n📌 Tolerancija korena: {Config.ROOT_TOL}")
        print(f"📌 Max iteracija: {Config.MAX_ITER}")
    else:
        print("\n⚠️ Konfiguracija nije validna!")
