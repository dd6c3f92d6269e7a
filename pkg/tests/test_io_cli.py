import json
import subprocess
import sys
import warnings

import pytest

from nfpmerge import __version__
from nfpmerge.cli import main
from nfpmerge.fixtures import builtin_cases
from nfpmerge.io import (
    DocumentError,
    OrientationWarning,
    fmt,
    parse_nfp,
    parse_piece,
    render_svg,
    serialize_nfp,
    serialize_piece,
    write_piece,
)
from nfpmerge.merge import gen_nfp

from conftest import poly, rect, square_piece


def doc(**kw):
    base = {"name": "p", "outer": [[0, 0], [2, 0], [2, 2], [0, 2]]}
    base.update(kw)
    return json.dumps(base)


def test_fmt_rounds_and_folds_negative_zero():
    assert fmt(-0.0) == 0.0 and str(fmt(-0.0)) == "0.0"
    assert fmt(0.1 + 0.2) == 0.3


def test_parse_minimal_piece():
    p = parse_piece(doc())
    assert p.name == "p" and p.area() == 4.0 and p.reference_point == (0, 0)


def test_clockwise_outer_is_reversed_with_warning():
    with pytest.warns(OrientationWarning):
        p = parse_piece(doc(outer=[[0, 0], [0, 2], [2, 2], [2, 0]]))
    assert p.area() == 4.0


def test_ccw_hole_is_reversed_with_warning():
    with pytest.warns(OrientationWarning):
        p = parse_piece(doc(outer=[[0, 0], [4, 0], [4, 4], [0, 4]], holes=[[[1, 1], [2, 1], [2, 2], [1, 2]]]))
    assert p.area() == 15.0


def test_closing_point_is_accepted():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        p = parse_piece(doc(outer=[[0, 0], [2, 0], [2, 2], [0, 2], [0, 0]]))
    assert len(p.outer.vertices) == 4


@pytest.mark.parametrize("text,where", [
    ('{"outer": [[0, 0], [1, 0]', "line 1"),
    ('[]', "$"),
    ('{"name": "x"}', "$.outer"),
    (doc(outer=[[0, 0], [1, 0], [1, "a"]]), "$.outer[2]"),
    (doc(outer=[[0, 0], [2, 2], [2, 0], [0, 2]]), "$.outer"),
    (doc(outer=[[0, 0], [1, 0], [2, 0]]), "$.outer"),
    (doc(holes=[[[1, 1], [3, 1], [3, 3]]]), "$.holes[0]"),
    (doc(outer=[[0, 0], [9, 0], [9, 9], [0, 9]],
         holes=[[[1, 1], [1, 4], [4, 4], [4, 1]], [[2, 2], [2, 5], [5, 5], [5, 2]]]), "$.holes[1]"),
    (doc(name=3), "$.name"),
])
@pytest.mark.filterwarnings("ignore::nfpmerge.io.OrientationWarning")
def test_malformed_documents_name_the_location(text, where):
    with pytest.raises(DocumentError) as e:
        parse_piece(text)
    assert where in str(e.value)


def test_non_finite_rejected():
    with pytest.raises(DocumentError):
        parse_piece('{"outer": [[0, 0], [1, 0], [1, NaN]]}')


def test_piece_round_trip(ring_piece):
    data = serialize_piece(ring_piece)
    assert parse_piece(data) == ring_piece
    assert serialize_piece(parse_piece(data)) == data


def test_nfp_round_trip():
    case = builtin_cases()[2]
    r = gen_nfp(case.stationary, case.orbital)
    data = serialize_nfp(r, "a", "b")
    back, meta = parse_nfp(data)
    assert meta == {"stationary": "a", "orbital": "b", "tool_version": __version__}
    assert back.counts() == r.counts()
    assert serialize_nfp(back, "a", "b") == data


def test_nfp_document_fields():
    d = json.loads(serialize_nfp(gen_nfp(square_piece(), square_piece())))
    assert list(d) == ["stationary", "orbital", "outer", "holes", "slides", "fits", "epsilon",
                       "tool_version"]


def test_svg_output():
    r = gen_nfp(*[c for c in (builtin_cases()[2].stationary, builtin_cases()[2].orbital)])
    svg = render_svg(r).decode()
    assert svg.startswith("<svg") and 'fill-rule="evenodd"' in svg and "stroke-dasharray" in svg
    fit = render_svg(gen_nfp(poly((0, 0), (3, 0), (3, 3), (0, 3), holes=[rect(1, 1, 2, 2).vertices[::-1]]),
                             square_piece())).decode()
    assert "<circle" in fit
    assert render_svg([]).decode().startswith("<svg")


# --- CLI ---------------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    case = builtin_cases()[0]
    write_piece(case.stationary, a)
    write_piece(case.orbital, b)
    return tmp_path, str(a), str(b)


def test_cli_nfp_writes_document(files, capsysbinary):
    d, a, b = files
    assert main(["nfp", a, b, "--svg", str(d / "o.svg")]) == 0
    out = json.loads(capsysbinary.readouterr().out)
    assert len(out["outer"]) == 1 and len(out["holes"]) == 1
    assert (d / "o.svg").read_bytes().startswith(b"<svg")


def test_cli_output_is_byte_identical(files):
    d, a, b = files
    main(["nfp", a, b, "--out", str(d / "1.json")])
    main(["nfp", a, b, "--out", str(d / "2.json")])
    assert (d / "1.json").read_bytes() == (d / "2.json").read_bytes()


@pytest.mark.parametrize("op", ["or", "and", "xor", "not"])
def test_cli_boolean(files, op):
    d, a, b = files
    assert main(["boolean", op, a, b, "--out", str(d / "r.json")]) == 0
    assert "pieces" in json.loads((d / "r.json").read_text())


def test_cli_decompose(files):
    d, a, _ = files
    assert main(["decompose", a, "--out", str(d / "r.json")]) == 0
    parts = json.loads((d / "r.json").read_text())["pieces"]
    assert len(parts) >= 3


def test_cli_validate(files):
    d, a, b = files
    assert main(["validate", a, b, "--grid", "24", "--out", str(d / "v.txt")]) == 0
    assert "disagreements: 0" in (d / "v.txt").read_text()


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["nfp", str(bad), str(bad)]) == 1
    assert "line 1" in capsys.readouterr().err
    assert main(["nfp", str(tmp_path / "missing.json"), str(bad)]) == 1
    assert main(["nfp", str(bad), str(bad), "--epsilon", "0"]) == 1


def test_cli_warns_on_stderr(tmp_path, capsys):
    p = tmp_path / "cw.json"
    p.write_text(doc(outer=[[0, 0], [0, 2], [2, 2], [2, 0]]))
    assert main(["nfp", str(p), str(p), "--out", str(tmp_path / "o.json")]) == 0
    assert "warning" in capsys.readouterr().err


def test_module_entry_point(files):
    _, a, b = files
    r = subprocess.run([sys.executable, "-m", "nfpmerge", "nfp", a, b], capture_output=True)
    assert r.returncode == 0 and b'"outer"' in r.stdout
