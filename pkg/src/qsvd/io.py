"""Tensor file format and seeded random states.

File format (JSON, one object per file)::

    {
      "format_version": 1,
      "kind": "tensor" | "matrix" | "state" | "density",
      "shape": [d1, d2, ...],          # [] for a scalar
      "data": [[re, im], ...],         # row-major, prod(shape) pairs
      "metadata": {"key": "value"}     # optional, string -> string
    }

Floats are written with Python's shortest round-trip repr, so save followed
by load reproduces every value bit for bit. Structural problems raise
:class:`FormatError`; well-formed files whose contents break an invariant
(non-finite values, unnormalised state, non-PSD density) raise
:class:`InvalidInput`.

Random states
-------------
``random_state(dims, seed)`` draws amplitudes from the standard library's
Mersenne Twister (``random.Random(seed).random()``, whose output stream
Python guarantees across releases). Consecutive pairs of uniforms ``u1, u2``
become one amplitude through Box-Muller::

    r = sqrt(-2 ln(1 - u1));  amplitude = r cos(2 pi u2) + i r sin(2 pi u2)

filled in row-major order, then the vector is divided by its norm.
"""

import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, InvalidInput, IoError
from .metrics import DensityMatrix
from .schmidt import StateVector

FORMAT_VERSION = 1
KINDS = ("tensor", "matrix", "state", "density")


@dataclass
class TensorFile:
    kind: str
    shape: tuple
    data: np.ndarray
    metadata: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION


def _encode(obj, kind=None, metadata=None) -> TensorFile:
    meta = dict(metadata or {})
    if isinstance(obj, StateVector):
        meta.setdefault("bipartition", f"{obj.dims[0]},{obj.dims[1]}")
        return TensorFile("state", obj.dims, obj.as_matrix(), meta)
    if isinstance(obj, DensityMatrix):
        return TensorFile("density", obj.matrix.shape, obj.matrix, meta)
    if isinstance(obj, TensorFile):
        return obj
    arr = np.asarray(obj, dtype=np.complex128)
    if kind is None:
        kind = "tensor"
    if kind not in KINDS:
        raise InvalidInput(f"unknown kind {kind!r}")
    return TensorFile(kind, arr.shape, arr, meta)


def dumps(obj, kind=None, metadata=None) -> str:
    tf = _encode(obj, kind, metadata)
    flat = np.asarray(tf.data, dtype=np.complex128).reshape(-1)
    doc = {
        "format_version": tf.format_version,
        "kind": tf.kind,
        "shape": [int(d) for d in tf.shape],
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }
    if tf.metadata:
        doc["metadata"] = {str(k): str(v) for k, v in tf.metadata.items()}
    return json.dumps(doc) + "\n"


def save(obj, path, kind=None, metadata=None) -> None:
    """Write ``obj`` (array, StateVector or DensityMatrix) to ``path``, overwriting."""
    text = dumps(obj, kind, metadata)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def parse(text: str, source: str = "<string>") -> TensorFile:
    """Parse and structurally validate a tensor file; no kind-specific checks."""
    try:
        doc = json.loads(text, parse_constant=lambda c: float(c))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    for key in ("format_version", "kind", "shape", "data"):
        if key not in doc:
            raise FormatError(f"{source}: missing field '{key}'")
    if doc["format_version"] != FORMAT_VERSION:
        raise FormatError(f"{source}: field 'format_version': unsupported value {doc['format_version']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise FormatError(f"{source}: field 'kind': expected one of {KINDS}, got {kind!r}")
    shape = doc["shape"]
    if not isinstance(shape, list) or not all(type(d) is int and d > 0 for d in shape):
        raise FormatError(f"{source}: field 'shape': expected a list of positive integers")
    data = doc["data"]
    if not isinstance(data, list):
        raise FormatError(f"{source}: field 'data': expected a list of [re, im] pairs")
    n = math.prod(shape)
    if len(data) != n:
        raise FormatError(f"{source}: field 'data': {len(data)} entries, shape {shape} needs {n}")
    values = np.empty(n, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise FormatError(f"{source}: field 'data[{i}]': expected [re, im] pair of numbers")
        values[i] = complex(float(pair[0]), float(pair[1]))
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise FormatError(f"{source}: field 'metadata': expected a map of strings")
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise InvalidInput(f"{source}: field 'data[{bad}]': non-finite value")
    return TensorFile(kind, tuple(shape), values.reshape(shape), meta, doc["format_version"])


def read(path) -> TensorFile:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return parse(text, str(path))


def bipartition(tf: TensorFile) -> tuple:
    """Two-party split recorded in metadata, else inferred from the shape."""
    if "bipartition" in tf.metadata:
        try:
            da, db = (int(x) for x in tf.metadata["bipartition"].split(","))
        except ValueError as exc:
            raise FormatError("field 'metadata.bipartition': expected 'dA,dB'") from exc
        return da, db
    shape = tf.shape or (1,)
    return shape[0], math.prod(shape[1:])


def load(path, normalize: bool = False):
    """Load a file as the object its kind declares.

    tensor -> ndarray, matrix -> 2-D ndarray, state -> StateVector,
    density -> DensityMatrix. Invariants are checked here.
    """
    tf = read(path)
    if tf.kind == "tensor":
        return tf.data
    if tf.kind == "matrix":
        if len(tf.shape) != 2:
            raise FormatError(f"{path}: field 'shape': a matrix needs 2 dimensions, got {len(tf.shape)}")
        return tf.data
    if tf.kind == "state":
        return StateVector(bipartition(tf), tf.data, normalize=normalize)
    return DensityMatrix(tf.data)


def random_state(dims, seed: int) -> np.ndarray:
    """Normalised complex Gaussian tensor of shape ``dims``; see module docs for the stream."""
    dims = tuple(int(d) for d in dims)
    if not dims or min(dims) < 1:
        raise InvalidInput(f"dims must be a non-empty list of positive integers, got {dims}")
    if not 0 <= seed < 2**64:
        raise InvalidInput(f"seed must be an unsigned 64-bit integer, got {seed}")
    rng = random.Random(seed)
    n = math.prod(dims)
    out = np.empty(n, dtype=np.complex128)
    for i in range(n):
        u1, u2 = rng.random(), rng.random()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        out[i] = complex(r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2))
    # fsum keeps the norm independent of BLAS reduction order
    norm = math.sqrt(math.fsum(z.real * z.real + z.imag * z.imag for z in out.tolist()))
    out.real /= norm
    out.imag /= norm
    return out.reshape(dims)
