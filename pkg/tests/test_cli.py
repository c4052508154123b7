import json

import pytest

from ngpgrowth import cli
from ngpgrowth.algebra import Polynomial, RationalFunction
from ngpgrowth.graphs import fixture_names


def call(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def write_graph(tmp_path, doc, name="g.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_check_examples(capsys):
    assert call_json(capsys, "check", "fixture:hexagon_diameters_3_7")["link_regular"] is True
    out = call_json(capsys, "check", "fixture:p3")
    assert out["link_regular"] is False and len(out["witness"]) == 2
    out = call_json(capsys, "check", "fixture:k4")
    assert out["ell"] == [4, 3, 2, 1, 0]
    code, text, _ = call(capsys, "check", "fixture:p3")
    assert code == 0 and "link-regular: no" in text and "witness" in text


def test_equiv_examples(capsys):
    assert call_json(capsys, "equiv", "fixture:two_squares_4_6", "fixture:octagon_4_6")["equivalent"]
    assert call_json(capsys, "equiv", "fixture:two_pentagons_2_6", "fixture:decagon_2_6")["equivalent"]
    assert not call_json(capsys, "equiv", "fixture:c4", "fixture:c5")["equivalent"]


def test_equiv_non_link_regular_is_hypothesis_error(capsys):
    code, _, err = call(capsys, "equiv", "fixture:c4", "fixture:p3")
    assert code == 3 and "second" in err


def test_series_k4_all(capsys):
    out = call_json(capsys, "series", "fixture:k4", "--method", "all", "--n-max", "5")
    assert {r["method"] for r in out["results"]} == {"auto", "racg", "oracle"}
    assert "trianglefree" in out["skipped"]
    assert out["cross_check"]["agree"]
    assert all(r["coefficients"][:5] == [1, 4, 12, 24, 24] for r in out["results"])


def test_series_c5_n3_all(capsys):
    out = call_json(capsys, "series", "fixture:c5_n3", "--method", "all", "--oracle-max-n", "5")
    assert {r["method"] for r in out["results"]} == {"auto", "trianglefree", "oracle"}
    assert out["cross_check"]["agree"]


def test_series_square_auto_vs_oracle(capsys):
    auto = call_json(capsys, "series", "fixture:square_20_7_2_13")
    orc = call_json(capsys, "series", "fixture:square_20_7_2_13", "--method", "oracle", "--n-max", "5")
    assert auto["results"][0]["coefficients"][:6] == orc["results"][0]["coefficients"]


def test_series_from_ell(capsys):
    out = call_json(capsys, "series", "--ell", "3,0", "--method", "racg", "--n-max", "3")
    r = out["results"][0]
    assert r["numerator"] == [1, 1] and r["denominator"] == [1, -2]
    assert r["coefficients"] == [1, 3, 6, 12]


def test_series_human_output(capsys):
    code, text, _ = call(capsys, "series", "fixture:empty3", "-v", "--n-max", "3")
    assert code == 0
    assert "G(z) = (1 + z) / (1 - 2*z)" in text
    assert "per-state series" in text


def test_oracle_subcommand(capsys):
    code, text, _ = call(capsys, "oracle", "fixture:empty3", "--n-max", "3")
    assert code == 0 and text == "n,count\n0,1\n1,3\n2,6\n3,12\n"
    out = call_json(capsys, "oracle", "fixture:k2_n3", "--word", "a b a")
    assert out == {"word": "a b a", "oracle": False, "automaton": False}


def test_export_fsa(capsys, tmp_path):
    code, text, _ = call(capsys, "export-fsa", "fixture:k2_n3")
    assert code == 0 and text.startswith("digraph")
    target = tmp_path / "fsa.dot"
    code, _, _ = call(capsys, "export-fsa", "fixture:k2_n3", "-o", str(target), "--include-reject")
    assert code == 0 and "reject" in target.read_text()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["check", "/nonexistent/graph.json"], 2),
        (["check", "fixture:nope"], 2),
        (["series", "fixture:p3", "--method", "racg"], 3),
        (["series", "fixture:c5", "--method", "trianglefree"], 3),
        (["series", "fixture:c5", "--method", "oracle", "--n-max", "9"], 4),
        (["oracle", "fixture:octagon_4_6", "--n-max", "6", "--budget", "1000"], 4),
        (["oracle", "fixture:c4", "--word", "v1^-1"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_bad_json_exit_code(capsys, tmp_path):
    path = write_graph(tmp_path, '{"vertices": ["a", "a"]}')
    code, _, err = call(capsys, "check", path)
    assert code == 2 and "a" in err


def test_disagreement_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "racg_growth", lambda ell: RationalFunction(Polynomial([1, 5])))
    code, _, err = call(capsys, "series", "fixture:c4", "--method", "all", "--n-max", "4")
    assert code == 5 and "disagree" in err


def test_graph_file_digest(capsys, tmp_path):
    path = write_graph(tmp_path, {"vertices": ["a"], "numbers": {"a": 4}})
    out = call_json(capsys, "series", path)
    assert len(out["sha256"]) == 64
    assert out["results"][0]["coefficients"][:3] == [1, 2, 2]


@pytest.mark.parametrize("name", fixture_names())
def test_all_methods_agree_on_shipped_fixtures(capsys, name):
    out = call_json(capsys, "series", f"fixture:{name}", "--method", "all", "--oracle-max-n", "4")
    assert out["cross_check"]["agree"]
