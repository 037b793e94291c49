"""Command line driver: quiver file format, bundled quivers, JSON
payloads, exit codes."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from quiver_ed.cli import (
    bundled_quiver_names,
    load_bundled_quiver,
    main,
    parse_quiver_text,
    serialize_quiver,
)
from quiver_ed.errors import QuiverFileError
from quiver_ed.quiver import build_quiver, kronecker_quiver, star_quiver


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run_cli(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_parse_serialize_round_trip():
    q = build_quiver(3, [(1, 1), (1, 2), (3, 2), (3, 2)])
    assert parse_quiver_text(serialize_quiver(q)) == q
    text = "# a comment\n\nvertices 2\narrow 1 2\n  arrow 1 2  \n"
    assert parse_quiver_text(text) == kronecker_quiver(2)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("vertices 2\nwibble 1 2\n", "line 2: unknown keyword"),
        ("arrow 1 2\n", "line 1: arrow before the vertices line"),
        ("vertices 2\nvertices 2\n", "line 2: repeated vertices"),
        ("vertices two\n", "not an integer"),
        ("vertices 2\narrow 1\n", "expected 'arrow S T'"),
        ("# nothing\n", "missing vertices line"),
        ("vertices 2\narrow 1 5\n", ""),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(QuiverFileError) as exc:
        parse_quiver_text(text)
    assert fragment in str(exc.value)


def test_bundled_quivers():
    names = bundled_quiver_names()
    assert "k2" in names and "star4" in names and "secondcase" in names
    assert load_bundled_quiver("k2") == kronecker_quiver(2)
    assert load_bundled_quiver("star4") == star_quiver(4)
    with pytest.raises(QuiverFileError) as exc:
        load_bundled_quiver("nonesuch")
    assert "bundled names" in str(exc.value)


def test_classify_json():
    payload = run_json("classify", "k2")
    assert payload["command"] == "classify"
    assert payload["quiver"] == {"vertices": 2, "arrows": [[1, 2], [1, 2]]}
    assert payload["result"] == {
        "rep_type": "Tame",
        "components": [
            {"vertices": [1, 2], "verdict": "Tame", "label": "affine-A1"}
        ],
        "loops_everywhere": False,
        "genericity_all_vectors": False,
        "witness": None,
    }


def test_root_json():
    payload = run_json("root", "k2", "2,3")
    assert payload["vector"] == [2, 3]
    assert payload["result"] == {
        "verdict": "Real",
        "sign": 1,
        "reflections": [2, 1],
        "terminal": [0, 1],
        "in_fundamental_region": False,
    }


def test_ged_json():
    payload = run_json("ged", "k2", "3,3")
    assert payload["bounds"] == [3, 3]
    assert payload["status"] == "Exact"
    result = payload["result"]
    assert set(result) == {
        "quantity", "vector", "lower", "upper", "status",
        "base", "gcd", "tower_sum", "tower_max", "note",
    }
    assert result["quantity"] == "ged"
    assert result["lower"] == result["upper"] == 3


def test_genericity_json():
    payload = run_json("genericity", "k2")
    assert payload["status"] == "Fails"
    assert payload["result"]["alpha"] == [1, 2]
    assert payload["result"]["beta"] == [1, 1]

    payload = run_json("genericity", "k2", "3,3")
    assert payload["status"] == "Holds"
    assert "3 times the null root" in payload["result"]["reason"]


def test_decomp_json():
    payload = run_json("decomp", "k2", "1,3")
    assert payload["result"]["summands"] == [
        {"vector": [0, 1], "multiplicity": 1},
        {"vector": [1, 2], "multiplicity": 1},
    ]
    assert payload["result"]["is_schur_root"] is False


def test_oracle_json():
    payload = run_json("oracle", "k2", "2,2", "--trials", "50")
    assert payload["seed"] == 0
    result = payload["result"]
    assert result["modal_partition"] == [[1, 1], [1, 1]]
    assert result["trials"] == 50
    # the (2, 2) space over F_7 is too big to scan, so the miss is
    # only a sampling statement
    assert result["brick"]["found"] is False
    assert result["brick"]["definitive"] is False
    assert "inconclusive" in result["brick"]["note"]


def test_star_and_kron_json():
    payload = run_json("star", "--m", "4", "--n", "2")
    assert payload["result"] == {"m": 4, "n": 2, "ed": 1, "ged": 0}

    payload = run_json("kron", "--r", "2", "--a", "3", "--b", "4")
    assert payload["result"]["ed"] == 3


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices 2\nfrob 1 2\n")
    code, _, err = run_cli("classify", str(bad))
    assert code == 2
    assert "line 2" in err

    code, _, err = run_cli("root", "k2", "1,2,3")
    assert code == 2
    assert "3 entries" in err

    code, _, err = run_cli("kron", "--r", "5", "--a", "1", "--b", "1")
    assert code == 3
    assert "no closed form for r = 5" in err

    # a cap of 1 rules out every idempotent search, so each (2, 2)
    # sample is skipped and the run dies on a resource limit
    code, _, err = run_cli(
        "oracle", "k2", "2,2", "--prime", "3", "--trials", "3", "--cap", "1"
    )
    assert code == 4
    assert "every sample was skipped" in err

    code, _, _ = run_cli("classify", "k2")
    assert code == 0


def test_text_output_lines():
    code, out, _ = run_cli("ged", "k2", "3,3")
    assert code == 0
    assert out.splitlines()[0] == "ged = 3 [Exact]"

    code, out, _ = run_cli("decomp", "k2", "4,2")
    assert code == 0
    assert "  [2, 1] x2" in out.splitlines()
