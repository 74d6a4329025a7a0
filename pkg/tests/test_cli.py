import json
import re
from pathlib import Path

import pytest

from tropkern.cli import corpus_results, run
from tropkern.skeletons import SkelSet
from tropkern.svg import plot_svg

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def call(capsys, *args):
    code = run(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_corner_svg_has_three_rays(tmp_path, capsys):
    svg = tmp_path / "line.svg"
    code, out, _ = call(capsys, "corner", "-e", "x + y + {0}", "--vars", "x,y", "--svg", str(svg))
    assert code == 0 and len(json.loads(out)["pieces"]) == 3
    text = svg.read_text()
    rays = re.findall(r'<line x1="200.000000" y1="200.000000"|<line [^>]*x2="200.000000" '
                      r'y2="200.000000"', text)
    assert len(rays) == 3 and text.count("url(#arrow)") == 3


def test_ci_check_reports_violation(capsys):
    code, out, _ = call(capsys, "ci-check", "-e", "((x+{1})*x)/(x+{1})", "--vars", "x")
    assert code == 0
    rep = json.loads(out)
    assert rep["integral"] is False and rep["violations"][0]["witness"] == ["1/1"]


def test_hodecomp_three_components(capsys):
    code, out, _ = call(capsys, "hodecomp", "-e", "x/(y+{0})", "--vars", "x,y")
    rep = json.loads(out)
    assert code == 0 and len(rep["components"]) == 3 and sorted(rep["hdim"]) == [1, 1, 2]


def test_json_output_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out, _ = call(capsys, "eval", "-e", "x + {0}", "--vars", "x", "--point", "-1",
                        "--json", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text()) == {"value": "0/1", "ghost": False}


@pytest.mark.parametrize("args, code", [
    (["skel", "-e", "x +", "--vars", "x"], 1),
    (["skel", "-e", "z", "--vars", "x"], 1),
    (["skel", "-e", "x", "--vars", "x", "--svg", "out.svg"], 2),
    (["skel", "-e", "x*y*z", "--vars", "x,y,z", "--svg", "out.svg"], 2),
    (["member", "-e", "x", "--vars", "x"], 2),
    (["corner", "-e", "x/y", "--vars", "x,y"], 2),
    (["eval", "-e", "x", "--vars", "x"], 2),
    (["thicken", "-e", "x", "--vars", "x", "--alpha=-1"], 2),
    (["chain", "-e", "x", "-e", "x*{1}", "--vars", "x"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(args, code, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    got, out, err = call(capsys, *args)
    assert got == code and out == ""
    assert not (tmp_path / "out.svg").exists()


def test_svg_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        assert call(capsys, "skel", "-e", "x/(y + {0})", "--vars", "x,y", "--svg", str(p))[0] == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b and a.count(b"<line") == 4  # two axes and two rays


def test_empty_set_legend():
    text = plot_svg(SkelSet(2, ()))
    assert "∅" in text and "<polygon" not in text


def test_corpus_matches_goldens():
    results = corpus_results(CORPUS)
    assert len(results) >= 20
    for name, text in results.items():
        assert (CORPUS / "golden" / name).read_text(encoding="utf-8") == text, name
