import json
import random
import subprocess
import sys

import pytest

from nacirc import fixtures
from nacirc.cli import main


@pytest.fixture
def assoc_file(tmp_path):
    f = tmp_path / "assoc.nacirc"
    f.write_text(fixtures.associator("comm").serialize())
    return str(f)


@pytest.fixture
def zero_file(tmp_path):
    f = tmp_path / "zero.nacirc"
    f.write_text(fixtures.commutator("comm").serialize())
    return str(f)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_pit_white_associator(capsys, assoc_file):
    code, out = run(capsys, ["pit-white", assoc_file])
    assert code == 0
    assert out.startswith("NONZERO ")
    assert "(" in out  # witness monomial literal


def test_pit_white_zero(capsys, zero_file):
    code, out = run(capsys, ["pit-white", zero_file])
    assert code == 0 and out == "ZERO\n"


def test_pit_random_zero(capsys, zero_file):
    code, out = run(capsys, ["pit-random", zero_file, "--set-size", "100", "--trials", "5", "--seed", "7"])
    assert code == 0
    assert out.startswith("ZERO p_fail<=")


def test_pit_hitting_linear_zero(capsys, tmp_path):
    f = tmp_path / "lin.nacirc"
    f.write_text(fixtures.linear_zero("comm").serialize())
    code, out = run(capsys, ["pit-hitting", str(f), "--depth", "0"])
    assert code == 0 and out == "ZERO\n"


def test_pit_hitting_budget_exit3(capsys, zero_file):
    code = main(["pit-hitting", zero_file, "--depth", "1", "--budget", "500"])
    assert code == 3


def test_expand_output_sorted(capsys, assoc_file):
    code, out = run(capsys, ["expand", assoc_file])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].startswith("const ")
    mono_lines = [l.split(" ", 1)[1] for l in lines[:-1]]
    assert mono_lines == sorted(mono_lines)


def test_gen_deterministic(capsys):
    code1, out1 = run(capsys, ["gen", "--n", "3", "--size", "15", "--degree", "4", "--seed", "11"])
    code2, out2 = run(capsys, ["gen", "--n", "3", "--size", "15", "--degree", "4", "--seed", "11"])
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith("nacirc v1\n")


def test_seeded_outputs_byte_identical(capsys, assoc_file):
    argv = ["pit-random", assoc_file, "--set-size", "300", "--trials", "3", "--seed", "5"]
    _, out1 = run(capsys, argv)
    _, out2 = run(capsys, argv)
    assert out1 == out2


def test_json_verdict_schema(capsys, assoc_file):
    code, out = run(capsys, ["pit-white", assoc_file, "--json"])
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"result", "witness", "bound", "stats"}
    assert payload["result"] == "NONZERO"
    # round-trips through the parser
    assert json.loads(json.dumps(payload)) == payload


def test_json_expand_schema(capsys, assoc_file):
    code, out = run(capsys, ["expand", assoc_file, "--json"])
    payload = json.loads(out)
    assert payload["const"] == 0
    assert len(payload["terms"]) == 2


def test_parse_error_exit2(tmp_path):
    f = tmp_path / "bad.nacirc"
    f.write_text("nacirc v1\nmode comm\nfield 101\nnvars 1\ngate 0 add 7 7\noutput 0\n")
    assert main(["pit-white", str(f)]) == 2
    f.write_text("garbage\n")
    assert main(["pit-white", str(f)]) == 2
    assert main(["pit-white", str(tmp_path / "missing.nacirc")]) == 2


def test_composite_field_gen_exit3():
    assert main(["gen", "--n", "1", "--size", "2", "--degree", "1", "--field", "10"]) == 3


def test_hitting_dump_small(capsys):
    code, out = run(capsys, ["hitting-dump", "--n", "2", "--size", "1", "--degree", "1", "--depth", "0"])
    assert code == 0
    assert out.startswith("point 0\nvar 1\nelem d=1\n")
    assert "scalar=0" in out


def test_fuzz_mutated_files_never_crash(tmp_path):
    base = fixtures.associator("comm").serialize()
    rng = random.Random(99)
    f = tmp_path / "fuzz.nacirc"
    alphabet = "abcdefgh0123456789 \n#"
    for trial in range(3000):
        text = list(base)
        for _ in range(rng.randint(1, 6)):
            op = rng.randrange(3)
            pos = rng.randrange(len(text))
            if op == 0:
                text[pos] = rng.choice(alphabet)
            elif op == 1:
                text.insert(pos, rng.choice(alphabet))
            else:
                del text[pos]
        f.write_text("".join(text))
        code = main(["pit-white", str(f)])
        assert code in (0, 2, 3), f"unexpected exit {code} on trial {trial}"


def test_console_script_entrypoint(assoc_file):
    out = subprocess.run(
        [sys.executable, "-m", "nacirc.cli", "pit-white", assoc_file],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert out.stdout.startswith("NONZERO")


def test_verify_json_roundtrip(capsys):
    code, out = run(capsys, ["verify", "--corpus", "small", "--seed", "1", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["results"]) == 9
    assert json.loads(json.dumps(payload)) == payload


def test_pit_hitting_nonzero_witness_dump(capsys, tmp_path):
    f = tmp_path / "sq.nacirc"
    f.write_text(fixtures.square("comm").serialize())
    code, out = run(capsys, ["pit-hitting", str(f), "--depth", "1"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "NONZERO"
    assert lines[1] == "var 1"
    assert lines[2].startswith("elem d=")


def test_hitting_dump_json(capsys):
    code, out = run(capsys, ["hitting-dump", "--n", "1", "--size", "1", "--degree", "1",
                             "--depth", "0", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["points"]
    elem = payload["points"][0][0]
    assert set(elem) == {"d", "scalar", "body"} and elem["d"] == 1


def test_expand_noncomm_orders_matter(capsys, tmp_path):
    f = tmp_path / "nc.nacirc"
    f.write_text(fixtures.commutator("noncomm").serialize())
    code, out = run(capsys, ["expand", str(f)])
    assert code == 0
    assert "(1 2)" in out and "(2 1)" in out


def test_gen_rejects_degenerate_parameters():
    assert main(["gen", "--n", "0", "--size", "5", "--degree", "2"]) == 2
    assert main(["gen", "--n", "2", "--size", "5", "--degree", "0"]) == 2
    assert main(["gen", "--n", "2", "--size", "0", "--degree", "2"]) == 2
