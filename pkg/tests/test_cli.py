import json
import subprocess
import sys

import pytest

from simplicial_wlp.cli import main
from simplicial_wlp.complex import parse_facets


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_example(capsys):
    code, out, _ = run(capsys, "info", "--builtin", "example_2_1")
    assert code == 0
    assert "f-vector: (1,5,6,2)" in out
    assert "Hilbert series: 1 + 5t + 6t^2 + 2t^3" in out
    assert "socle degree: 3 (not level)" in out
    assert "pure: no" in out


def test_info_octahedron(capsys):
    _, out, _ = run(capsys, "info", "--builtin", "octahedron")
    assert "pseudomanifold: without-boundary" in out
    assert "dual graph: 8 vertices, 12 edges, bipartite" in out


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "--builtin", "path_independence(7)", "--degree", "1")[0] == 0
    assert run(capsys, "check", "--builtin", "octahedron")[0] == 1
    assert run(capsys, "check", "--builtin", "tetrahedron_boundary", "--method", "both")[0] == 0
    assert run(capsys, "check", "--builtin", "octahedron", "--degree", "7")[0] == 2
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "check", "--builtin", "nonesuch")[0] == 2


def test_check_text_output(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "octahedron", "--method", "both")
    assert code == 1
    assert "degree 2: 12 -> 8  fails" in out
    assert "methods agree" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "octahedron", "--json", "--method", "both")
    payload = json.loads(out)
    assert code == 1
    assert payload["wlp"] is False and payload["disagreements"] == []
    deg2 = payload["degrees"][2]
    assert deg2["verdict"] == "fails" and deg2["method"] == "rank"
    assert deg2["certificate"]["criterion"]["method"] == "criterion-pseudomanifold"
    # byte-identical on a second run
    assert run(capsys, "check", "--builtin", "octahedron", "--json", "--method", "both")[1] == out


def test_check_criterion_not_applicable(capsys):
    code, _, err = run(capsys, "check", "--builtin", "example_2_1", "--method", "criterion")
    assert code == 2 and "not a pseudomanifold" in err


def test_check_criterion_only(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "cycle(4)", "--method", "criterion", "--json")
    assert code == 1
    assert json.loads(out)["degrees"][1]["method"] == "criterion-deg1"


def test_check_file_input(tmp_path, capsys):
    f = tmp_path / "c.txt"
    f.write_text("# triangle plus an edge\n1 2 3\n3 4\n")
    assert run(capsys, "check", str(f))[0] in (0, 1)
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n1 x\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "check", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "check", str(f), "--builtin", "octahedron")[0] == 2


def test_idealize(capsys):
    code, out, _ = run(capsys, "idealize", "--builtin", "cycle(4)", "--presentation")
    assert code == 1
    assert "Hilbert function: (1,8,8,1)" in out
    assert "deterministic-by-theorem" in out
    assert "x2*y1 - x4*y3" in out
    code, out, _ = run(capsys, "idealize", "--builtin", "cycle(4)", "--json")
    payload = json.loads(out)
    assert payload["hilbert_function"] == [1, 8, 8, 1]
    assert payload["degrees"][1]["confidence"] == "deterministic-by-theorem"


def test_idealize_usage_errors(capsys):
    assert run(capsys, "idealize", "--builtin", "example_2_1")[0] == 2
    assert run(capsys, "idealize", "--builtin", "cycle(5)", "--presentation")[0] == 2
    assert run(capsys, "idealize", "--builtin", "cycle(4)", "--trials", "0")[0] == 2


def test_idealize_holds(capsys):
    code, out, _ = run(capsys, "idealize", "--builtin", "cycle(3)")
    assert code == 0 and "witness-form" in out


def test_generate_round_trips(capsys):
    code, out, _ = run(capsys, "generate", "--count", "3", "--seed", "7")
    assert code == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 3
    for b in blocks:
        parse_facets(b)
    _, out2, _ = run(capsys, "generate", "--count", "3", "--seed", "7")
    assert out == out2
    code, out, _ = run(capsys, "generate", "--kind", "punctured-surface", "--count", "2")
    assert code == 0 and out.count("# complex") == 2


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--count", "30", "--seed", "1")
    assert code == 0 and "disagreements: 0" in out


def test_bad_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "simplicial_wlp", "check", "--builtin", "cycle(4)",
                          "--degree", "1"], capture_output=True, text=True, timeout=60)
    assert res.returncode == 1
    assert "fails" in res.stdout
