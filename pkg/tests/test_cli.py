import json
import subprocess
import sys

import pytest

from realloops.cli import main
from realloops.fixtures import venn_ornament
from realloops.poly import X
from realloops.ratmap import RationalMap


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_degree_map_constant(tmp_path, capsys):
    path = write(tmp_path, "f.json", RationalMap.of(X**2 + 1, X**2 + 1).to_json())
    code, out = run(capsys, ["degree-map", "--input", path])
    assert code == 0 and out["degree"] == 0 and out["winding_oracle"] == 0


def test_degree_map_common_root_is_violation(tmp_path, capsys):
    path = write(tmp_path, "f.json", {"m": 1, "n": 1, "polys": [["0", "1"], ["0", "1"]]})
    code, out = run(capsys, ["degree-map", "-i", path])
    assert code == 3 and out["error"] == "invariant violation"


def test_ornament_degree_methods_agree(tmp_path, capsys):
    path = write(tmp_path, "o.json", venn_ornament().to_json())
    for method in ("kronecker", "integral", "sweep"):
        code, out = run(capsys, ["ornament-degree", "--method", method, "-i", path])
        assert code == 0 and out["degree"] == 1


def test_classify_config(tmp_path, capsys):
    path = write(tmp_path, "c.json", {"word": "0101", "budget": 2})
    code, out = run(capsys, ["classify-config", "-i", path])
    assert code == 0 and out["degree"] == 2 and out["reduced_word"] == "0101"
    # one particle of each kind has odd counts, impossible at budget 2
    path = write(tmp_path, "bad.json", {"word": "01", "budget": 2})
    code, out = run(capsys, ["classify-config", "-i", path])
    assert code == 3


def test_malformed_input(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, out = run(capsys, ["degree-map", "-i", str(p)])
    assert code == 2
    code, out = run(capsys, ["degree-map", "-i", write(tmp_path, "y.json", {"m": 1})])
    assert code == 2


def test_flow_sim_deterministic(tmp_path, capsys):
    a = run(capsys, ["flow-sim", "--seed", "3", "--budget", "3"])
    b = run(capsys, ["flow-sim", "--seed", "3", "--budget", "3"])
    assert a == b and a[0] == 0
    traj = str(tmp_path / "t.json")
    cfg = write(tmp_path, "c.json", {"word": "0110", "budget": 2})
    code, out = run(capsys, ["flow-sim", "--config", cfg, "--out", traj])
    assert code == 0 and out["word"] == "" and json.load(open(traj))["trajectory"]


def test_approximate_and_gen(tmp_path, capsys):
    path = str(tmp_path / "loop.json")
    code, out = run(capsys, ["gen", "circle-loop", "--out", path])
    assert code == 0
    code, out = run(capsys, ["approximate", "--degree", "4", "-i", path])
    assert code == 0 and out["sup_error"] < 0.1 and out["degree"] == -1


@pytest.mark.parametrize("kind", ["venn", "generator-loop", "random-ornament"])
def test_plot(tmp_path, capsys, kind):
    src = str(tmp_path / "in.json")
    run(capsys, ["gen", kind, "--seed", "2", "--out", src])
    svg = str(tmp_path / "out.svg")
    code, out = run(capsys, ["plot", "-i", src, "-o", svg])
    assert code == 0 and open(svg).read().startswith("<svg")


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "realloops.cli", "gen", "venn"], capture_output=True, text=True)
    assert r.returncode == 0 and len(json.loads(r.stdout)["curves"]) == 3
