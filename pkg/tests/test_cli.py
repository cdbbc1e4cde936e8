import json
import subprocess
import sys

import pytest

from pvseq.apset import APSet
from pvseq.cli import main
from pvseq.recurrence import Equation

SMALL = ["--horizon", "400", "--window", "100", "--max-period", "30"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--equation", "fibonacci", "--init", "0,1", "--horizon", "10", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["sequence"]["values"][-1] == "55"
    assert data["zero_set"] == [0]
    assert Equation.from_json(data["equation"]) == Equation.parse(["-1", "-1"])


def test_decompose_reports_exact_finite(capsys):
    code, out, _ = run(capsys, "decompose", "--equation", "fibonacci", "--init", "0,1", *SMALL, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "exact-finite"
    assert APSet.from_json(data["apset"]) == APSet.finite([0])
    assert data["bell_case"] is True


def test_decompose_periodic_zeros(capsys):
    # y(i+2) = -y(i): 1, 0, -1, 0, ... vanishes exactly on the odd positions
    code, out, _ = run(capsys, "decompose", "--equation=1,0", "--init", "1,0", *SMALL, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "conjectured"
    assert APSet.from_json(data["apset"]) == APSet.progression(1, 2)


def test_orbit_membership(capsys):
    code, out, _ = run(capsys, "orbit", "--equation", "fibonacci", "--generator", "detZ + 1", *SMALL, "--json")
    assert code == 0
    data = json.loads(out)
    assert APSet.from_json(data["apset"]) == APSet.progression(1, 2)
    assert data["membership"][:3] == [1, 3, 5]


def test_psi_text(capsys):
    code, out, _ = run(capsys, "psi", "--equation", "fibonacci", "--function", "Z[1][1]", "--horizon", "6")
    assert code == 0
    assert out.splitlines()[-1] == "6: 5"


def test_guess(capsys):
    code, out, _ = run(capsys, "guess", "--values", ",".join(str(v) for v in _fib(60)), "--json")
    assert code == 0
    assert Equation.from_json(json.loads(out)["equation"]) == Equation.parse(["-1", "-1"])


def test_guess_inconclusive(capsys):
    code, _, _ = run(capsys, "guess", "--values", ",".join(str(i * i * i % 97) for i in range(60)))
    assert code == 2


def test_bell_check(capsys):
    code, out, _ = run(capsys, "bell-check", "--equation", "z,1", "--json")
    assert code == 0 and json.loads(out)["bell_case"] is False


def test_system_input(capsys, tmp_path):
    p = tmp_path / "swap.json"
    p.write_text(json.dumps({"n": 2, "entries": [["0", "1"], ["1", "0"]]}))
    code, out, _ = run(capsys, "period-bound", "--system", f"@{p}", *SMALL, "--json")
    assert code == 0
    assert json.loads(out)["period_lower_bound"] == 2


def test_period_bound_text(capsys):
    code, out, _ = run(capsys, "period-bound", "--equation", "fibonacci", *SMALL)
    assert code == 0
    assert out.splitlines()[0] == "period lower bound: 2"


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", *SMALL)
    assert code == 0
    assert "checks passed" in out


@pytest.mark.parametrize("argv", [
    ["solve", "--equation", "z/(z-z)", "--init", "1"],
    ["solve", "--equation", "fibonacci", "--init", "1"],
    ["decompose", "--equation", "fibonacci", "--init", "0,1", "--horizon", "100", "--window", "50"],
    ["orbit", "--system", '{"n": 2, "entries": [["1", "2"], ["2", "4"]]}', "--generator", "Z[1][1]"],
    ["psi", "--equation", "fibonacci", "--function", "Z[3][1]"],
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")


def test_parse_error_mentions_position(capsys):
    code, _, err = run(capsys, "solve", "--equation", "z + * 2", "--init", "1")
    assert code == 1 and "position 4" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pvseq", "bell-check", "--equation", "fibonacci"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.strip() == "bell case (equation): True"


def _fib(k):
    a, b = 0, 1
    out = []
    for _ in range(k):
        out.append(a)
        a, b = b, a + b
    return out
