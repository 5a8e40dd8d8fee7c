import json

import pytest
from hypothesis import given, strategies as st

from conftest import run_cli, run_cli_json
from tqcsim.formats import FormatError, format_braid_word, parse_braid_word, target_from_json
from tqcsim.kcode import five_qubit_code
from tqcsim.links import BraidWord


def test_parse_examples():
    w = parse_braid_word("n=4\n1 -2 3\n")
    assert w.letters == (1, -2, 3) and w.strands == 4
    assert parse_braid_word("n=4").letters == ()
    assert parse_braid_word("# comment\nn = 6\n  5 -5 \n").letters == (5, -5)


def test_parse_errors_are_distinct():
    msgs = []
    for text, fragment in (
        ("n=4\n0", "zero is not a generator"),
        ("n=4\n5", "index out of range"),
        ("strands 4\n1", "malformed header"),
        ("n=4\n1 x", "malformed letter"),
        ("", "malformed header"),
    ):
        with pytest.raises(FormatError, match=fragment) as exc:
            parse_braid_word(text)
        msgs.append(str(exc.value))
    assert len(set(msgs)) == len(msgs)


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g]))))))
def test_format_roundtrip(case):
    n, letters = case
    w = BraidWord(letters, n)
    assert parse_braid_word(format_braid_word(w)) == w


def test_target_json():
    t = target_from_json({"name": "h"})
    assert t.scope == (1,)
    with pytest.raises(FormatError):
        target_from_json({"name": "nope"})
    with pytest.raises(FormatError):
        target_from_json({"matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})


def test_dims():
    code, out, _ = run_cli("dims", "--anyons", "8")
    assert code == 0 and out.strip() == "13"
    assert run_cli_json("dims", "--anyons", "10")["count"] == 34


def test_verify_random_report():
    code, out, _ = run_cli("verify", "--random", "20", "--strands", "4", "--len", "8", "--seed", "7")
    assert code == 0
    assert out.startswith("20/20 agree ≤ 1e-8")


def test_verify_requires_seed():
    code, _, err = run_cli("verify", "--random", "3", "--strands", "4", "--len", "3")
    assert code == 1 and "--seed" in err


def test_simulate_empty_word():
    doc = run_cli_json("simulate", "--word", "", "--strands", "4")
    assert doc["prob0"] == pytest.approx(1.0, abs=1e-12)
    assert doc["leakage"] == pytest.approx(0.0, abs=1e-12)


def test_jones_and_bracket(tmp_path):
    doc = run_cli_json("jones", "--word", "2 2", "--strands", "4")
    assert doc["components"] == 2
    out = tmp_path / "d.json"
    b = run_cli_json("bracket", "--word", "1 -2 3", "--strands", "4", "--export", str(out))
    again = run_cli_json("bracket", "--diagram", str(out))
    assert b["bracket"] == again["bracket"]


def test_compile_writes_braid_and_sidecar(tmp_path):
    out = tmp_path / "h.braid"
    doc = run_cli_json("compile", "--gate", "h", "--depth", "5", "--out", str(out))
    w = parse_braid_word(out.read_text())
    assert str(w) == doc["word"]
    side = json.loads(out.with_suffix(".json").read_text())
    assert set(side) == {"distance", "leakage_bound", "depth_searched"}
    assert side["depth_searched"] == 5


def test_compile_from_target_file(tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"name": "z", "scope": [2]}))
    doc = run_cli_json("compile", "--target", str(f), "--depth", "4")
    assert doc["strands"] == 8


def test_kcode_cli(tmp_path):
    f = tmp_path / "w.json"
    f.write_text(five_qubit_code().to_json())
    assert run_cli_json("kcode", "--subspace", str(f), "--max-k")["max_k"] == 2
    doc = run_cli_json("kcode", "--subspace", str(f), "--k", "3", "--basis", "pauli")
    assert doc["holds"] is False and len(doc["witness"]["support"]) == 3


def test_demo():
    doc = run_cli_json("demo")
    assert doc["within_bound"] and doc["verdict_topological"] == "accept"


def test_exit_codes(tmp_path):
    assert run_cli("simulate", "--word", "0", "--strands", "4")[0] == 1
    assert run_cli("nonsense")[0] == 1
    assert run_cli("dims")[0] == 1
    assert run_cli("simulate", "--braid", str(tmp_path / "missing"))[0] == 1
    # 2 * 10 + 4 = 24 crossings exceed the state-sum budget
    code, _, err = run_cli("verify", "--word", " ".join(["1"] * 10), "--strands", "4")
    assert code == 2 and "budget" in err


def test_seeded_output_is_reproducible():
    args = ("verify", "--random", "5", "--strands", "6", "--len", "6", "--seed", "3")
    assert run_cli("--json", *args)[1] == run_cli("--json", *args)[1]
