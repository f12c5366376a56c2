"""
Glavni program za Dinamiku
Komandna linija: classify, boettcher, render i probe
"""

# Dodaj src folder u Python path
import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import argparse
import logging
from typing import Any, Dict, List, Optional

from cli.commands import BOETTCHER_METHODS, RENDER_MODES, cmd_boettcher, cmd_classify, cmd_probe, cmd_render
from cli.map_spec import GRAMMAR_HELP, parse_complex, parse_complex_list, parse_map_spec
from cli.models import DiskConfig, ViewportConfig
from cli.output import report_table, write_csv, write_report
from dynamics import __version__
from dynamics.errors import DynamicsError, MapSpecError
from dynamics.maps import INFINITY
from utils.config import Config
from utils.palettes import PaletteType, palette_manager
from utils.performance_tracker import tracker


EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


class DinamikaParser(argparse.ArgumentParser):
    """ArgumentParser koji greške prijavljuje kodom 1 umesto 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def napravi_parser() -> argparse.ArgumentParser:
    """Parser sa četiri podkomande i zajedničkim opcijama."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", required=True, help="Opis preslikavanja, npr. \"poly: 1 0 -1\"")
    common.add_argument("--config", help="key=value konfiguracioni fajl")
    common.add_argument("--seed", type=int, help="Seme za uzorkovanje")
    common.add_argument("--max-iter", type=int, help="Broj iteracija")
    common.add_argument("--out", help="Izlazni fajl (podrazumevano standardni izlaz)")
    common.add_argument("--format", choices=("json", "csv", "ppm"), default=None,
                        help="Format izlaza")
    common.add_argument("--timing", action="store_true", help="Dodaj trajanje sekcija u izveštaj")
    common.add_argument("--verbose", action="store_true", help="Detaljno logovanje")

    parser = DinamikaParser(
        prog="dinamika",
        description="Numerička kompleksna dinamika jedne promenljive",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"dinamika {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", parents=[common], help="Fiksne tačke, ciklusi i granica 2d-2")
    classify.add_argument("--max-period", type=int, help="Najveći period ciklusa")

    boettcher = sub.add_parser("boettcher", parents=[common], help="Böttcherove karte i reziduali")
    boettcher.add_argument("--method", choices=("all",) + BOETTCHER_METHODS, default="all")
    boettcher.add_argument("--points", help="Tačke uzorka razdvojene zarezima, npr. 3,5,1+2i")
    boettcher.add_argument("--center", help="Superprivlačna fiksna tačka (broj ili inf)")
    boettcher.add_argument("--series-terms", type=int, help="Broj članova reda")

    render = sub.add_parser("render", parents=[common], help="Slika Julijinog skupa ili bazena",
                            epilog=palette_manager.list_palettes(),
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    render.add_argument("--mode", choices=RENDER_MODES, default="escape")
    render.add_argument("--viewport", default="0,0,2,256,256", help="cx,cy,hw,px,py")
    render.add_argument("--depth", type=int, default=8, help="Dubina inverznog stabla")
    render.add_argument("--palette", choices=[p.value for p in PaletteType],
                        help="Paleta (podrazumevano prema režimu)")

    probe = sub.add_parser("probe", parents=[common], help="Tranzitivnost i Martijeva dijagnostika")
    probe.add_argument("--disk-u", required=True, help="cx,cy,r")
    probe.add_argument("--disk-v", required=True, help="cx,cy,r")
    probe.add_argument("--region", help="cx,cy,r za Martijevu dijagnostiku (podrazumevano U)")
    probe.add_argument("--max-n", type=int, default=20)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Vrednosti iz fajla, pa opcije komandne linije preko njih."""
    values: Dict[str, Any] = {}
    if args.config:
        values.update(Config.load_file(args.config))
    flag_names = {"seed": "SEED", "max_iter": "MAX_ITER", "max_period": "MAX_PERIOD",
                  "series_terms": "SERIES_TERMS"}
    for flag, name in flag_names.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[name] = value
    if args.verbose:
        values["LOG_LEVEL"] = "DEBUG"
    return values


def _parse_center(text: Optional[str]):
    if text is None:
        return None
    if text.strip().lower() in ("inf", "∞"):
        return INFINITY
    return parse_complex(text)


def izvrsi_komandu(args: argparse.Namespace) -> int:
    """Izvršava podkomandu i upisuje izlaz; vraća izlazni kod."""
    spec = parse_map_spec(args.map)
    output_format = args.format

    if args.command == "render":
        viewport = ViewportConfig.from_string(args.viewport, palette=args.palette)
        if output_format == "json":
            raise ValueError("render piše PPM (ili CSV za inverse) i prateći JSON")
        if not args.out:
            raise ValueError("render zahteva --out")
        report = cmd_render(spec, args.mode, viewport, args.out, depth=args.depth,
                            output_format=output_format or "ppm", timing=args.timing)
        print(f"✅ Sačuvano: {', '.join(report.sections['render']['outputs'])}", file=sys.stderr)
        return EXIT_NUMERIC if report.failed else EXIT_OK

    if output_format == "ppm":
        raise ValueError("PPM izlaz postoji samo za render")

    if args.command == "classify":
        report = cmd_classify(spec)
    elif args.command == "boettcher":
        points = parse_complex_list(args.points) if args.points else None
        report = cmd_boettcher(spec, args.method, points, _parse_center(args.center))
    else:
        report = cmd_probe(spec, DiskConfig.from_string(args.disk_u),
                           DiskConfig.from_string(args.disk_v), args.max_n,
                           DiskConfig.from_string(args.region) if args.region else None)

    if args.timing:
        report.timing = tracker.summary()
    if output_format == "csv":
        header, rows = report_table(report)
        write_csv(header, rows, args.out)
    else:
        write_report(report, args.out)
    if report.failed:
        print(f"⚠️ Neke sekcije nisu uspele: {', '.join(report.flags)}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def pokreni(argv: Optional[List[str]] = None) -> int:
    """
    Ulazna tačka komandne linije.

    Returns:
        0 uspeh, 1 greška parsiranja, 2 numerička greška, 3 ulaz/izlaz
    """
    args = napravi_parser().parse_args(argv)
    tracker.reset()

    try:
        overrides = _overrides(args)
    except OSError as e:
        print(f"❌ Konfiguracija: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"❌ Konfiguracija: {e}", file=sys.stderr)
        return EXIT_PARSE

    with Config.overridden(**overrides):
        logging.basicConfig(level=Config.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
        if not Config.validate():
            return EXIT_PARSE
        try:
            return izvrsi_komandu(args)
        except MapSpecError as e:
            print(f"❌ Opis preslikavanja: {e.message}", file=sys.stderr)
            return EXIT_PARSE
        except DynamicsError as e:
            print(f"❌ Numerička greška ({type(e).__name__}): {e.message}", file=sys.stderr)
            return EXIT_NUMERIC
        except OSError as e:
            print(f"❌ Greška pri upisu: {e}", file=sys.stderr)
            return EXIT_IO
        except ValueError as e:
            print(f"❌ Neispravan ulaz: {e}", file=sys.stderr)
            return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(pokreni())
