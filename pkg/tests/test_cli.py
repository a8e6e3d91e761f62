import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qsvd import io, linalg
from qsvd.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_kv(text):
    return {line.split()[0]: line.split()[1:] for line in text.splitlines()}


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["schmidt", GOLDEN / "bell.json", "--dims", "2,2"], "schmidt_bell.txt"),
        (["tracedist", GOLDEN / "rho_zero.json", GOLDEN / "rho_plus.json", "--diagnostic"], "tracedist_diagnostic.txt"),
        (["frob", GOLDEN / "matrix_seed7.json"], "frob_seed7.txt"),
    ],
)
def test_golden_stdout(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_svd_writes_factors(capsys, tmp_path):
    a = np.array([[3, 0], [0, 2], [0, 0]], dtype=complex)
    io.save(a, tmp_path / "a.json", kind="matrix")
    code, out, _ = run(capsys, "svd", tmp_path / "a.json", "--out-prefix", tmp_path / "f")
    assert code == 0
    kv = parse_kv(out)
    assert kv["rank"] == ["2"]
    assert kv["singular_values"] == ["3.0", "2.0"]
    u, s, vh = (io.load(tmp_path / f"f.{x}") for x in ("u", "s", "vh"))
    np.testing.assert_allclose((u * s.real) @ vh, a, atol=1e-15)


def test_rank_and_normalize(capsys, tmp_path):
    io.save(np.array([1.0, 1.0, 0.0, 0.0]), tmp_path / "s.json", kind="tensor")
    code, out, _ = run(capsys, "rank", tmp_path / "s.json", "--dims", "2,2")
    assert code == 5
    code, out, _ = run(capsys, "rank", tmp_path / "s.json", "--dims", "2,2", "--normalize")
    assert code == 0 and out == "rank 1\n"


def test_tracedist_half_and_fidelity(capsys):
    code, out, _ = run(capsys, "tracedist", GOLDEN / "rho_zero.json", GOLDEN / "rho_plus.json", "--half")
    assert float(parse_kv(out)["trace_distance_halved"][0]) == pytest.approx(2**-0.5, abs=1e-12)
    code, out, _ = run(capsys, "fidelity", GOLDEN / "rho_zero.json", GOLDEN / "rho_plus.json")
    assert float(parse_kv(out)["fidelity"][0]) == pytest.approx(2**-0.5, abs=1e-12)
    code, out, _ = run(capsys, "fidelity", GOLDEN / "rho_zero.json", GOLDEN / "rho_plus.json", "--squared")
    assert float(parse_kv(out)["fidelity_squared"][0]) == pytest.approx(0.5, abs=1e-12)


def test_trace(capsys, tmp_path):
    io.save(np.array([[2, 1], [1, 2]]), tmp_path / "m.json", kind="matrix")
    code, out, _ = run(capsys, "trace", tmp_path / "m.json", "--via-svd")
    kv = parse_kv(out)
    assert kv["trace_re"] == ["4.0"] and kv["trace_im"] == ["0.0"]
    assert float(kv["trace_singular_values"][0]) == pytest.approx(4, rel=1e-15)


def test_contract_and_tensordot(capsys, tmp_path):
    a, b = np.array([[1, 2], [3, 4]]), np.array([[5, 6], [7, 8]])
    io.save(a, tmp_path / "a.json")
    io.save(b, tmp_path / "b.json")
    code, out, _ = run(capsys, "contract", "--spec", "ij,jk->ik", tmp_path / "a.json", tmp_path / "b.json", "--out", tmp_path / "c.json")
    assert code == 0 and out == "shape 2 2\n"
    np.testing.assert_array_equal(io.load(tmp_path / "c.json"), [[19, 22], [43, 50]])
    code, out, _ = run(capsys, "tensordot", tmp_path / "a.json", tmp_path / "b.json", "--axes", 1, "--out", tmp_path / "d.json")
    np.testing.assert_array_equal(io.load(tmp_path / "d.json"), [[19, 22], [43, 50]])
    code, out, _ = run(capsys, "contract", "--spec", "ii->", tmp_path / "a.json", "--out", tmp_path / "t.json")
    assert out == "shape\n"
    assert io.load(tmp_path / "t.json") == 5


def test_truncate(capsys, tmp_path):
    io.save(np.diag([3.0, 2.0, 1.0]), tmp_path / "m.json", kind="matrix")
    code, out, _ = run(capsys, "truncate", tmp_path / "m.json", "--rank", 2, "--out-prefix", tmp_path / "t")
    kv = parse_kv(out)
    assert kv["kept_rank"] == ["2"] and kv["discarded_weight"] == ["1.0"]
    assert io.load(tmp_path / "t.s").shape == (2,)
    code, _, err = run(capsys, "truncate", tmp_path / "m.json", "--out-prefix", tmp_path / "t")
    assert code == 2


def test_random_state_then_mps(capsys, tmp_path):
    code, out, _ = run(capsys, "random-state", "--dims", "2,2,2,2", "--seed", 3, "--out", tmp_path / "s.json")
    assert code == 0 and out == "shape 2 2 2 2\n"
    code, out, _ = run(capsys, "mps", tmp_path / "s.json", "--out-prefix", tmp_path / "m")
    kv = parse_kv(out)
    assert kv["sites"] == ["4"] and kv["bond_dims"] == ["2", "4", "2"]
    cores = [io.load(tmp_path / f"m.core{k}") for k in range(4)]
    state = cores[0]
    for c in cores[1:]:
        state = np.tensordot(state, c, axes=1)
    np.testing.assert_allclose(state.reshape(2, 2, 2, 2), io.read(tmp_path / "s.json").data, atol=1e-12)
    code, out, _ = run(capsys, "mps", tmp_path / "s.json", "--max-bond", 1, "--out-prefix", tmp_path / "m")
    assert parse_kv(out)["bond_dims"] == ["1", "1", "1"]


class TestExitCodes:
    def test_usage(self, capsys):
        assert run(capsys, "svd", "x.json")[0] == 2
        assert run(capsys, "nonsense")[0] == 2
        assert run(capsys, "schmidt", GOLDEN / "bell.json", "--dims", "2")[0] == 2

    def test_bad_spec_is_usage(self, capsys, tmp_path):
        code, _, err = run(capsys, "contract", "--spec", "ij->im", GOLDEN / "bell.json", "--out", tmp_path / "o.json")
        assert code == 2 and "ParseError" in err

    def test_format(self, capsys, tmp_path):
        (tmp_path / "bad.json").write_text("{")
        code, _, err = run(capsys, "frob", tmp_path / "bad.json")
        assert code == 3 and "FormatError" in err and "line 1" in err
        assert run(capsys, "frob", tmp_path / "missing.json")[0] == 3

    def test_shape(self, capsys):
        assert run(capsys, "schmidt", GOLDEN / "bell.json", "--dims", "3,2")[0] == 3

    def test_numerical(self, capsys, monkeypatch, tmp_path):
        rng = np.random.default_rng(0)
        io.save(rng.standard_normal((6, 6)), tmp_path / "m.json", kind="matrix")
        monkeypatch.setattr(linalg, "MAX_SWEEPS", 1)
        code, _, err = run(capsys, "svd", tmp_path / "m.json", "--out-prefix", tmp_path / "f")
        assert code == 4 and "ConvergenceFailure" in err

    def test_invariant(self, capsys, tmp_path):
        io.save(np.array([[0, 1], [0, 0]]), tmp_path / "n.json", kind="matrix")
        code, _, err = run(capsys, "trace", tmp_path / "n.json", "--via-svd")
        assert code == 5 and "NotPositiveSemidefinite" in err
        io.save(np.diag([1.5, -0.5]), tmp_path / "d.json", kind="tensor")
        assert run(capsys, "fidelity", tmp_path / "d.json", tmp_path / "d.json")[0] == 5


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "qsvd", "rank", str(GOLDEN / "bell.json"), "--dims", "2,2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "rank 2\n"
