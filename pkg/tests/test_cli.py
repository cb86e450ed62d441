import subprocess
import sys
from pathlib import Path

import pytest

from pcsp.cli import EXIT_GUARD, EXIT_INVARIANT, EXIT_USAGE, main
from pcsp.encodings import encode_max_cut, read_graph
from pcsp.ring import render
from pcsp.solve import solve

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_k3(capsys):
    code, out, _ = run(capsys, "solve", "--encoder", "maxcut", "--solver", "reduce", FIX / "k3.graph")
    assert code == 0
    assert out == "2 + 6*z^2\n"


@pytest.mark.parametrize("solver", ["reduce", "treedp", "splitlist", "oracle"])
def test_solvers_agree(capsys, solver):
    code, out, _ = run(capsys, "solve", "--encoder", "ising", "--solver", solver, FIX / "c4.graph")
    assert code == 0
    assert out == "1 + 4*w*z^2 + 4*w^2*z^2 + 2*w^2*z^4 + 4*w^3*z^2 + w^4\n"


def test_solve_with_td_file(capsys):
    code, out, _ = run(capsys, "solve", "--encoder", "maxcut", "--solver", "treedp",
                       "--td", FIX / "p3.td", FIX / "p3.graph")
    assert (code, out) == (0, "2 + 4*z + 2*z^2\n")


def test_solve_pruned(capsys):
    code, out, _ = run(capsys, "solve", "--encoder", "ising", "--prune", "z", FIX / "c4.graph")
    assert code == 0
    assert out == "1 + 4*w*z^2 + 2*w^2*z^4 + 4*w^3*z^2 + w^4\n"


@pytest.mark.parametrize("fixture,encoder", [
    ("k3.graph", "maxcut"), ("c4.graph", "ising"), ("p3.graph", "clique"),
    ("c4.graph", "judicious"), ("arcs.graph", "dicut"),
])
def test_selftest(capsys, fixture, encoder):
    code, out, _ = run(capsys, "selftest", "--encoder", encoder, FIX / fixture)
    assert (code, out) == (0, "OK: all solvers agree\n")


def test_extract_bisection(capsys):
    code, out, _ = run(capsys, "extract", "--readout", "bisection", FIX / "c4-ising.zpoly")
    assert code == 0
    assert "min_bisection=2 count=2" in out.splitlines()


def test_encode_then_solve_round_trip(capsys, tmp_path):
    inst = tmp_path / "k3.pcsp"
    assert run(capsys, "encode", "--encoder", "maxcut", FIX / "k3.graph", "--output", inst)[0] == 0
    code, out, _ = run(capsys, "solve", inst)
    direct = render(solve(encode_max_cut(read_graph((FIX / "k3.graph").read_text()))))
    assert out == direct + "\n"


def test_solve_output_file_feeds_extract(capsys, tmp_path):
    zfile = tmp_path / "z.zpoly"
    run(capsys, "solve", "--encoder", "maxcut", FIX / "k3.graph", "--output", zfile)
    code, out, _ = run(capsys, "extract", "--readout", "maxcut", zfile)
    assert (code, out) == (0, "max_cut=2 count=3\n")


def test_optimal(capsys):
    code, out, _ = run(capsys, "optimal", "--encoder", "maxcut", FIX / "k3.graph")
    assert code == 0
    assert out.splitlines() == ["z_degree=2 count=6", "assignment=0 0 1", "score=z^2"]


def test_optimal_min_bisection(capsys):
    code, out, _ = run(capsys, "optimal", "--encoder", "ising", "--where", "w=2",
                       "--sense", "min", FIX / "c4.graph")
    assert code == 0
    assert out.splitlines()[0] == "z_degree=2 count=4"


def test_sample_seed_reproducible(capsys):
    args = ("sample", "--encoder", "maxcut", "--count", "5", "--seed", "17", FIX / "c4.graph")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert first[1].startswith("seed=17 count=5\n")


def test_gibbs_from_temperature(capsys):
    code, out, _ = run(capsys, "gibbs", "--encoder", "ising", "--beta", "0.5", "--J", "1",
                       "--h", "0.2", "--count", "3", FIX / "c4.graph")
    assert code == 0
    assert len(out.splitlines()) == 4


def test_exit_usage_on_missing_file(capsys):
    code, _, err = run(capsys, "solve", "--encoder", "maxcut", FIX / "nope.graph")
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_exit_usage_on_splitlist_prune(capsys):
    code, _, err = run(capsys, "solve", "--encoder", "maxcut", "--solver", "splitlist",
                       "--prune", "z", FIX / "k3.graph")
    assert code == EXIT_USAGE
    assert "splitlist cannot prune" in err


def test_exit_guard(capsys):
    code, _, err = run(capsys, "solve", "--encoder", "maxcut", "--solver", "oracle",
                       "--guard", "2", FIX / "k3.graph")
    assert code == EXIT_GUARD
    assert "guard" in err


def test_exit_invariant_on_bad_decomposition(capsys):
    code, _, err = run(capsys, "solve", "--encoder", "maxcut", "--solver", "treedp",
                       "--td", FIX / "p3.td", FIX / "k3.graph")
    assert code == EXIT_INVARIANT
    assert "edge (0, 2) uncovered" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pcsp", "solve", "--encoder", "maxcut", str(FIX / "k3.graph")],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "2 + 6*z^2\n"
