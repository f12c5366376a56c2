"""
Test scenariji za komandnu liniju
Parser opisa, modeli izveštaja, komande i izlazni kodovi
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import csv
import json
import math
import tempfile
from pathlib import Path

import pytest
from pydantic import ValidationError

from cli.commands import cmd_boettcher, cmd_classify, cmd_probe, cmd_render
from cli.map_spec import parse_complex, parse_complex_list, parse_map_spec
from cli.models import DiskConfig, ReportDocument, ViewportConfig, to_jsonable
from dynamics.errors import MapSpecError
from dynamics.maps import INFINITY
from main import pokreni
from utils.config import Config
from utils.palettes import PaletteType


def test_map_spec_parser():
    """Vrste preslikavanja i pozicije grešaka."""
    print("\n🧪 TEST 1: Parser opisa preslikavanja")
    print("=" * 50)

    spec = parse_map_spec("poly: 1 0 -1")
    assert spec.kind == "poly"
    assert spec.map.degree == 2
    assert spec.polynomial.to_list() == [-1, 0, 1]

    assert parse_map_spec("rat: 1 0 1 / 2 0").map.degree == 2
    assert parse_map_spec("moebius: 0 -1 1 0").moebius is not None
    assert parse_map_spec("lattes-w: 4 0").map.degree == 4
    assert parse_map_spec("lattes-sn: 0.5").map.degree == 4
    assert parse_map_spec("chebyshev: 3").polynomial.to_list() == [0, -3, 0, 4]
    assert parse_map_spec("newton: 1 0 -1").map.degree == 2

    bad = {
        "poly: 1 x": 8,
        "spline: 1 2": 0,
        "poly 1 0": len("poly 1 0"),
    }
    for text, position in bad.items():
        with pytest.raises(MapSpecError) as info:
            parse_map_spec(text)
        assert info.value.position == position, text
        assert f"(pozicija {position})" in str(info.value)
        print(f"  ✅ '{text}' -> pozicija {position}")

    for text in ("lattes-w: 0 0", "chebyshev: 0", "rat: 1 / 0", "newton: 1 -2 1", "poly: 0 0"):
        with pytest.raises(MapSpecError):
            parse_map_spec(text)


def test_complex_literals():
    """Kompleksni literali sa sufiksom i."""
    print("\n🧪 TEST 2: Kompleksni brojevi")
    print("=" * 50)

    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-3i") == -3j
    assert parse_complex("2.5e-3-i") == 0.0025 - 1j
    for token in ("1+2j", "nan", "inf", "", "abc"):
        with pytest.raises(MapSpecError):
            parse_complex(token)

    assert parse_complex_list("3,5,1+2i") == [3, 5, 1 + 2j]
    with pytest.raises(MapSpecError) as info:
        parse_complex_list("3,x")
    assert info.value.position == 2

    print("  ✅ a+bi literali parsirani")


def test_viewport_and_disk_config():
    """Validacija prozora i diskova."""
    print("\n🧪 TEST 3: Prozor i disk")
    print("=" * 50)

    viewport = ViewportConfig.from_string("0.5,-1,2,64,32")
    assert viewport.width == 64 and viewport.height == 32
    assert viewport.palette is None
    assert viewport.seed == Config.SEED
    assert viewport.to_viewport().center == 0.5 - 1j

    for text in ("0,0,0,64,64", "0,0,2,64", "0,0,2,20000,64", "0,0,2,6.5,64", "0,0,inf,4,4"):
        with pytest.raises(ValueError):
            ViewportConfig.from_string(text)

    disk = DiskConfig.from_string("1,2,0.5")
    assert disk.to_disk().center == 1 + 2j
    with pytest.raises(ValidationError):
        DiskConfig.from_string("0,0,-1")

    print("  ✅ Neispravni prozori odbijeni")


def test_report_document():
    """JSON izveštaj: nekonačne vrednosti i neuspele sekcije."""
    print("\n🧪 TEST 4: Izveštaj")
    print("=" * 50)

    flags = []
    data = to_jsonable({"a": [1 + 2j, INFINITY], "b": math.inf}, flags, "s")
    assert data == {"a": [[1.0, 2.0], "inf"], "b": None}
    assert flags == ["nonfinite:s.b"]

    report = ReportDocument.build("classify", {"kind": "poly"},
                                  {"x": float("nan")}, ["failed:periodic"])
    assert report.failed
    assert report.flags == ["failed:periodic", "nonfinite:sections.x"]

    parsed = json.loads(report.to_json())
    assert parsed["schema"] == 1
    assert parsed["tool"] == "dinamika"
    assert "timing" not in parsed
    assert parsed["sections"]["x"] is None

    with pytest.raises(ValidationError):
        ReportDocument(command="classify", sections={"x": math.inf})

    print("  ✅ Nekonačne vrednosti zamenjene sa null")


def test_classify_command():
    """Fiksne tačke, ciklusi i normalni oblik za z^2 - 1."""
    print("\n🧪 TEST 5: classify")
    print("=" * 50)

    report = cmd_classify(parse_map_spec("poly: 1 0 -1"), max_period=2)
    sections = report.sections
    assert not report.failed
    assert len(sections["fixed_points"]["points"]) == 3
    assert sections["fixed_points"]["index_sum"] == pytest.approx([1.0, 0.0], abs=1e-8)

    two_cycles = [c for c in sections["periodic"]["cycles"] if c["period"] == 2]
    assert len(two_cycles) == 1
    assert two_cycles[0]["class"] == "superattracting"
    bound = sections["periodic"]["bound"]
    assert bound["bound"] == 2 and bound["within_bound"]
    assert sections["exceptional_points"] == ["inf"]
    assert sections["normal_form"]["T"] == pytest.approx([-1.0, 0.0])

    moebius = cmd_classify(parse_map_spec("moebius: 0 -1 1 0")).sections["moebius"]
    assert moebius["kind"] == "elliptic-rational"
    assert moebius["period"] == 2

    with pytest.raises(MapSpecError):
        cmd_classify(parse_map_spec("poly: 5"))

    print(f"  ✅ Granica: {bound['nonrepelling']} <= {bound['bound']}")


def test_boettcher_command():
    """Karte u ∞ za z^2 - 2 i neuspeh bez superprivlačne tačke."""
    print("\n🧪 TEST 6: boettcher")
    print("=" * 50)

    report = cmd_boettcher(parse_map_spec("poly: 1 0 -2"), points=[10 + 0j, 20 + 0j])
    charts = report.sections["charts"]
    assert set(charts) == {"ritt", "milnor", "series", "original-1904"}
    exact = (10 + math.sqrt(96)) / 2
    for method, chart in charts.items():
        assert chart["samples"][0]["value"][0] == pytest.approx(exact, rel=1e-9), method
        assert chart["functional_equation"]["ok"], method
    assert all(row["ok"] for row in report.sections["comparison"])
    assert report.sections["center"] == "inf"

    failed = cmd_boettcher(parse_map_spec("rat: 1 / 1 0"))
    assert failed.failed
    assert "failed:center" in failed.flags

    with pytest.raises(ValueError):
        cmd_boettcher(parse_map_spec("poly: 1 0 0"), method="fourier")

    print(f"  ✅ F(10) = {exact:.12f} za sve metode")


def test_render_command():
    """PPM, prateći JSON i CSV oblak tačaka."""
    print("\n🧪 TEST 7: render")
    print("=" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        viewport = ViewportConfig.from_string("0,0,2,32,32")
        square = parse_map_spec("poly: 1 0 0")

        for run in ("a", "b"):
            (tmp / run).mkdir()
            cmd_render(square, "escape", viewport, tmp / run / "julia.ppm")
        image = (tmp / "a" / "julia.ppm").read_bytes()
        assert image.startswith(b"P6\n32 32\n255\n")
        assert len(image) == len(b"P6\n32 32\n255\n") + 32 * 32 * 3
        assert image == (tmp / "b" / "julia.ppm").read_bytes()
        assert (tmp / "a" / "julia.json").read_text() == (tmp / "b" / "julia.json").read_text()
        print("  ✅ Isti ulaz daje iste bajtove")

        report = cmd_render(parse_map_spec("poly: 2 0 -1"), "inverse", viewport,
                            tmp / "cloud.ppm", depth=6)
        assert not report.failed
        with open(tmp / "cloud.csv", newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["re", "im", "level"]
        for re_part, im_part, _ in rows[1:]:
            assert abs(float(im_part)) < 1e-9
            assert abs(float(re_part)) <= 1 + 1e-9
        print(f"  ✅ Oblak: {len(rows) - 1} tačaka na [-1, 1]")

        newton = cmd_render(parse_map_spec("newton: 1 0 -1"), "newton", viewport, tmp / "n.ppm")
        sidecar = json.loads((tmp / "n.json").read_text())
        assert sidecar["sections"]["render"]["cayley"]["dichotomy_holds"]
        assert newton.sections["render"]["outputs"] == ["n.ppm"]

        with pytest.raises(ValueError):
            cmd_render(square, "escape", viewport, tmp / "x.csv", output_format="csv")


def test_render_palettes():
    """Paleta iz prozora menja boje, podrazumevana zavisi od režima."""
    print("\n🧪 TEST 8: render sa paletom")
    print("=" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        square = parse_map_spec("poly: 1 0 0")
        default = ViewportConfig.from_string("0,0,2,32,32")
        hues = ViewportConfig.from_string("0,0,2,32,32", palette="roots")
        assert hues.palette == PaletteType.ROOTS

        plain = cmd_render(square, "escape", default, tmp / "plain.ppm", max_iter=20)
        colored = cmd_render(square, "escape", hues, tmp / "roots.ppm", max_iter=20)
        assert plain.sections["render"]["palette"] == "escape"
        assert colored.sections["render"]["palette"] == "roots"
        assert (tmp / "plain.ppm").read_bytes() != (tmp / "roots.ppm").read_bytes()

        newton = cmd_render(parse_map_spec("newton: 1 0 0 -1"), "newton", default, tmp / "n.ppm")
        assert newton.sections["render"]["palette"] == "roots"

        assert pokreni(["render", "--map", "poly: 1 0 -1", "--viewport", "0,0,2,8,8",
                        "--palette", "roots", "--out", str(tmp / "cli.ppm")]) == 0
        sidecar = json.loads((tmp / "cli.json").read_text())
        assert sidecar["sections"]["render"]["palette"] == "roots"
        with pytest.raises(SystemExit) as info:
            pokreni(["render", "--map", "poly: 1 0 0", "--palette", "sepia",
                     "--out", str(tmp / "bad.ppm")])
        assert info.value.code == 1

    example = ViewportConfig.model_json_schema()["example"]
    assert example["palette"] == "escape"
    assert ViewportConfig(**example).palette == PaletteType.ESCAPE

    print("  ✅ escape i roots daju različite slike")


def test_probe_command():
    """Tranzitivnost i Martijeva dijagnostika za Latèsovo preslikavanje."""
    print("\n🧪 TEST 9: probe")
    print("=" * 50)

    report = cmd_probe(parse_map_spec("lattes-w: 4 0"),
                       DiskConfig.from_string("0.3,0.2,0.05"),
                       DiskConfig.from_string("-2,1,0.5"), max_n=25)
    transitivity = report.sections["transitivity"]
    assert transitivity["first_hit"] is not None
    assert report.sections["marty"]["non_normal"]
    assert len(report.sections["marty"]["series"]) == 25

    print(f"  ✅ Prvi pogodak: n = {transitivity['first_hit']}")


def test_exit_codes():
    """Izlazni kodovi: 0 uspeh, 1 parsiranje, 2 numerika, 3 upis."""
    print("\n🧪 TEST 10: Izlazni kodovi")
    print("=" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        out = tmp / "classify.json"
        assert pokreni(["classify", "--map", "poly: 1 0 -1", "--out", str(out)]) == 0
        parsed = json.loads(out.read_text())
        assert parsed["command"] == "classify" and parsed["schema"] == 1

        table = tmp / "cycles.csv"
        assert pokreni(["classify", "--map", "poly: 1 0 -1", "--max-period", "2",
                        "--format", "csv", "--out", str(table)]) == 0
        assert table.read_text().splitlines()[0] == "period,re,im,abs_multiplier,class"

        max_period = Config.MAX_PERIOD
        config = tmp / "dinamika.cfg"
        config.write_text("max_period=2\nseed=5\n")
        assert pokreni(["classify", "--map", "poly: 1 0 -1", "--config", str(config),
                        "--out", str(out)]) == 0
        assert json.loads(out.read_text())["sections"]["periodic"]["bound"]["max_period"] == 2
        assert Config.MAX_PERIOD == max_period

        config.write_text("colour=red\n")
        assert pokreni(["classify", "--map", "poly: 1 0 -1", "--config", str(config)]) == 1
        assert pokreni(["classify", "--map", "poly: 1 0 -1",
                        "--config", str(tmp / "missing.cfg")]) == 3

        assert pokreni(["classify", "--map", "poly 1 0"]) == 1
        assert pokreni(["classify", "--map", "lattes-w: 0 0"]) == 1
        assert pokreni(["render", "--map", "poly: 1 0 0", "--viewport", "0,0,2,8,8"]) == 1
        assert pokreni(["render", "--map", "poly: 1 0 0", "--format", "json",
                        "--out", str(tmp / "r.ppm")]) == 1
        assert pokreni(["classify", "--map", "poly: 1 0 -1", "--format", "ppm"]) == 1

        assert pokreni(["boettcher", "--map", "rat: 1 / 1 0",
                        "--out", str(tmp / "b.json")]) == 2

        assert pokreni(["render", "--map", "poly: 1 0 0", "--viewport", "0,0,2,8,8",
                        "--out", str(tmp / "missing" / "r.ppm")]) == 3

    with pytest.raises(SystemExit) as info:
        pokreni(["classify"])
    assert info.value.code == 1

    print("  ✅ Svi izlazni kodovi tačni")


def run_all_tests():
    """Pokreće sve testove."""
    print("🚀 CLI TEST SUITE")
    print("=" * 60)

    test_map_spec_parser()
    test_complex_literals()
    test_viewport_and_disk_config()
    test_report_document()
    test_classify_command()
    test_boettcher_command()
    test_render_command()
    test_render_palettes()
    test_probe_command()
    test_exit_codes()

    print("\n✅ Svi testovi završeni!")


if __name__ == "__main__":
    run_all_tests()
