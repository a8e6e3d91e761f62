import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qsvd import DensityMatrix, FormatError, InvalidInput, IoError, NotNormalized, StateVector, io
from oracles import crandn

GOLDEN = Path(__file__).parent / "golden"


def write(path, doc):
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def matrix_doc(**over):
    doc = {"format_version": 1, "kind": "matrix", "shape": [2, 2], "data": [[1, 0], [0, 0], [0, 0], [1, 0]]}
    doc.update(over)
    return doc


def test_load_identity(tmp_path):
    m = io.load(write(tmp_path / "m.json", matrix_doc()))
    np.testing.assert_array_equal(m, np.eye(2))


def test_round_trip_bits(tmp_path, rng):
    t = crandn(rng, 2, 3, 4) * 10.0 ** rng.integers(-300, 300, size=(2, 3, 4))
    t.flat[0] = complex(-0.0, 5e-324)
    io.save(t, tmp_path / "t.json")
    back = io.load(tmp_path / "t.json")
    assert back.shape == t.shape
    assert back.tobytes() == t.tobytes()


def test_scalar(tmp_path):
    io.save(np.array(2.5 - 1j), tmp_path / "s.json")
    doc = json.loads((tmp_path / "s.json").read_text())
    assert doc["shape"] == [] and doc["data"] == [[2.5, -1.0]]
    assert io.load(tmp_path / "s.json") == 2.5 - 1j


def test_overwrite(tmp_path):
    p = tmp_path / "x.json"
    io.save(np.zeros(3), p)
    io.save(np.ones(2), p)
    np.testing.assert_array_equal(io.load(p), np.ones(2))


def test_state_and_density_kinds(tmp_path):
    state = StateVector((2, 3), np.eye(6)[4])
    io.save(state, tmp_path / "s.json")
    back = io.load(tmp_path / "s.json")
    assert isinstance(back, StateVector) and back.dims == (2, 3)
    np.testing.assert_array_equal(back.amplitudes, state.amplitudes)

    rho = DensityMatrix(np.diag([0.25, 0.75]))
    io.save(rho, tmp_path / "d.json")
    back = io.load(tmp_path / "d.json")
    assert isinstance(back, DensityMatrix)
    np.testing.assert_array_equal(back.matrix, rho.matrix)


def test_unnormalized_state(tmp_path):
    p = write(tmp_path / "s.json", {"format_version": 1, "kind": "state", "shape": [2], "data": [[1, 0], [1, 0]]})
    with pytest.raises(NotNormalized, match="norm is 1.414"):
        io.load(p)
    assert io.load(p, normalize=True).amplitudes[0] == pytest.approx(2**-0.5)


BAD_FILES = {
    "not json": ("{oops", FormatError),
    "top-level list": ("[]", FormatError),
    "missing data": ({"format_version": 1, "kind": "matrix", "shape": [1]}, FormatError),
    "bad version": (matrix_doc(format_version=2), FormatError),
    "bad kind": (matrix_doc(kind="blob"), FormatError),
    "bad shape": (matrix_doc(shape=[2, 0]), FormatError),
    "wrong length": (matrix_doc(data=[[1, 0]] * 3), FormatError),
    "bad pair": (matrix_doc(data=[[1, 0], [0], [0, 0], [1, 0]]), FormatError),
    "string value": (matrix_doc(data=[[1, 0], ["0", 0], [0, 0], [1, 0]]), FormatError),
    "matrix rank": (matrix_doc(shape=[4]), FormatError),
    "metadata": (matrix_doc(metadata={"a": 1}), FormatError),
    "nan": ('{"format_version": 1, "kind": "tensor", "shape": [1], "data": [[NaN, 0]]}', InvalidInput),
    "infinity": ('{"format_version": 1, "kind": "tensor", "shape": [1], "data": [[1, Infinity]]}', InvalidInput),
    "non-psd density": (matrix_doc(kind="density", data=[[1.5, 0], [0, 0], [0, 0], [-0.5, 0]]), InvalidInput),
    "non-hermitian density": (matrix_doc(kind="density", data=[[0.5, 0], [1, 0], [0, 0], [0.5, 0]]), InvalidInput),
    "unit-less density": (matrix_doc(kind="density"), InvalidInput),
    "unnormalized state": (matrix_doc(kind="state"), InvalidInput),
}


@pytest.mark.parametrize("name", list(BAD_FILES))
def test_bad_corpus(tmp_path, name):
    doc, err = BAD_FILES[name]
    with pytest.raises(err):
        io.load(write(tmp_path / "bad.json", doc))


def test_format_error_location(tmp_path):
    with pytest.raises(FormatError, match="line 2 column"):
        io.load(write(tmp_path / "bad.json", '{"kind":\n  oops}'))
    with pytest.raises(FormatError, match=r"data\[1\]"):
        io.load(write(tmp_path / "bad.json", matrix_doc(data=[[1, 0], [0], [0, 0], [1, 0]])))


def test_missing_file(tmp_path):
    with pytest.raises(IoError):
        io.load(tmp_path / "nope.json")


def test_unwritable(tmp_path):
    with pytest.raises(IoError):
        io.save(np.zeros(1), tmp_path / "missing-dir" / "x.json")


finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.lists(st.integers(1, 3), max_size=3).map(tuple), elements=finite))
def test_round_trip_property(values):
    text = io.dumps(values + 1j * values[::-1] if values.ndim else values)
    back = io.parse(text).data
    want = np.asarray(values + 1j * values[::-1] if values.ndim else values, dtype=complex)
    assert back.tobytes() == want.tobytes()


class TestRandomState:
    def test_deterministic(self):
        assert io.random_state([2, 3], 42).tobytes() == io.random_state([2, 3], 42).tobytes()

    def test_unit_norm(self):
        for seed in (0, 5, 2**64 - 1):
            assert abs(np.linalg.norm(io.random_state([3, 3, 2], seed)) - 1) <= 1e-12

    def test_seeds_differ(self):
        assert not np.array_equal(io.random_state([4], 1), io.random_state([4], 2))

    @pytest.mark.parametrize("seed", [0, 1, 42])
    def test_golden_stream(self, seed):
        golden = io.load(GOLDEN / f"random_state_seed{seed}.json")
        assert io.random_state([2, 3], seed).reshape(-1).tobytes() == golden.amplitudes.tobytes()

    @pytest.mark.parametrize("dims,seed", [([], 0), ([2, 0], 0), ([2], -1), ([2], 2**64)])
    def test_bad_input(self, dims, seed):
        with pytest.raises(InvalidInput):
            io.random_state(dims, seed)
