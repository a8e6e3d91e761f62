"""Dense tensors, tensordot and index-notation contraction.

Tensors are complex128 ``numpy`` arrays of any rank (rank 0 for scalars).
The contraction grammar is a strict subset of the usual einsum notation::

    expr    := operand ("," operand)* "->" output
    operand := [a-z]+
    output  := [a-z]*

No ellipsis, no implicit output, no broadcasting. A label repeated inside one
operand selects the generalised diagonal; labels missing from the output are
summed over.
"""

import math
import string
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, ParseError, ShapeError

LABELS = frozenset(string.ascii_lowercase)


def as_tensor(t) -> np.ndarray:
    x = np.array(t, dtype=np.complex128)
    if any(d < 1 for d in x.shape):
        raise ShapeError(f"tensor dimensions must be positive, got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidInput("tensor has non-finite entries")
    return x


def reshape(t, new_shape) -> np.ndarray:
    """Reinterpret row-major data under ``new_shape``."""
    t = as_tensor(t)
    new_shape = tuple(int(d) for d in new_shape)
    if any(d < 1 for d in new_shape):
        raise ShapeError(f"shape entries must be positive, got {new_shape}")
    if math.prod(new_shape) != t.size:
        raise ShapeError(f"cannot reshape {t.size} elements into {new_shape}")
    return t.reshape(new_shape)


def matricize(t, split: int) -> np.ndarray:
    """Group the first ``split`` axes into rows and the rest into columns."""
    t = as_tensor(t)
    if not 0 < split < t.ndim:
        raise ShapeError(f"split {split} out of range for rank-{t.ndim} tensor")
    rows = math.prod(t.shape[:split])
    return t.reshape(rows, -1)


def _cmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # numpy's SIMD complex multiply may fuse operations; spelling it out in real
    # arithmetic keeps every product identical to scalar complex multiplication
    re = x.real * y.real - x.imag * y.imag
    out = np.empty(re.shape, dtype=np.complex128)
    out.real = re
    out.imag = x.real * y.imag + x.imag * y.real
    return out


def tensordot(a, b, axes: int) -> np.ndarray:
    """Contract the last ``axes`` dimensions of ``a`` with the first ``axes`` of ``b``."""
    a, b = as_tensor(a), as_tensor(b)
    if axes < 0 or axes > a.ndim or axes > b.ndim:
        raise ShapeError(f"axes={axes} invalid for ranks {a.ndim} and {b.ndim}")
    left, shared = a.shape[: a.ndim - axes], a.shape[a.ndim - axes :]
    if shared != b.shape[:axes]:
        raise ShapeError(f"contracted dimensions differ: {shared} vs {b.shape[:axes]}")
    right = b.shape[axes:]
    k = math.prod(shared)
    a2 = a.reshape(-1, k)
    b2 = b.reshape(k, -1)
    out = np.sum(_cmul(a2[:, :, None], b2[None, :, :]), axis=1)
    return out.reshape(left + right)


@dataclass(frozen=True)
class ContractionSpec:
    input_indices: tuple
    output_indices: tuple

    def __str__(self) -> str:
        ins = ",".join("".join(op) for op in self.input_indices)
        return f"{ins}->{''.join(self.output_indices)}"

    def bind(self, shapes) -> dict:
        """Map every label to its dimension, checking ranks and consistency."""
        shapes = [tuple(s) for s in shapes]
        if len(shapes) != len(self.input_indices):
            raise ShapeError(f"expression has {len(self.input_indices)} operands, got {len(shapes)} tensors")
        dims = {}
        for pos, (labels, shape) in enumerate(zip(self.input_indices, shapes)):
            if len(labels) != len(shape):
                raise ShapeError(f"operand {pos} '{''.join(labels)}' has rank {len(labels)}, tensor has rank {len(shape)}")
            for label, d in zip(labels, shape):
                if dims.setdefault(label, d) != d:
                    raise ShapeError(f"label '{label}' bound to both {dims[label]} and {d}")
        return dims


def parse_contraction(spec: str) -> ContractionSpec:
    if not isinstance(spec, str):
        raise ParseError("contraction expression must be a string")
    spec = spec.strip()
    if spec.count("->") != 1:
        raise ParseError(f"expected exactly one '->' in {spec!r}")
    lhs, rhs = spec.split("->")
    operands = lhs.split(",")
    for pos, op in enumerate(operands):
        if not op:
            raise ParseError(f"operand {pos} is empty in {spec!r}")
        bad = set(op) - LABELS
        if bad:
            raise ParseError(f"illegal character(s) {sorted(bad)} in operand {pos}")
    bad = set(rhs) - LABELS
    if bad:
        raise ParseError(f"illegal character(s) {sorted(bad)} in output")
    seen = set(lhs) - {","}
    for label in rhs:
        if label not in seen:
            raise ParseError(f"output label '{label}' does not appear in any operand")
    if len(set(rhs)) != len(rhs):
        raise ParseError(f"duplicate label in output '{rhs}'")
    return ContractionSpec(tuple(tuple(op) for op in operands), tuple(rhs))


def _diagonal(t: np.ndarray, labels) -> tuple:
    """Collapse repeated labels of one operand; returns (array, unique labels)."""
    unique = list(dict.fromkeys(labels))
    if len(unique) == len(labels):
        return t, unique
    dims = [t.shape[labels.index(u)] for u in unique]
    grids = np.ix_(*[np.arange(d) for d in dims])
    where = {u: grids[i] for i, u in enumerate(unique)}
    return t[tuple(where[l] for l in labels)], unique


def contract(spec, tensors) -> np.ndarray:
    """Evaluate an index-notation contraction by one broadcast product and sum.

    ``spec`` may be a :class:`ContractionSpec` or an expression string. Every
    input is lifted onto the joint label space, the lifted arrays are
    multiplied, and the summed labels are reduced away. No pairwise ordering is
    attempted, so memory grows with the product of all label dimensions.
    """
    if isinstance(spec, str):
        spec = parse_contraction(spec)
    tensors = [as_tensor(t) for t in tensors]
    dims = spec.bind([t.shape for t in tensors])

    order = list(dict.fromkeys(l for op in spec.input_indices for l in op))
    axis = {l: i for i, l in enumerate(order)}
    prod = None
    for t, labels in zip(tensors, spec.input_indices):
        t, unique = _diagonal(t, list(labels))
        perm = sorted(range(len(unique)), key=lambda i: axis[unique[i]])
        t = t.transpose(perm)
        present = {unique[i] for i in perm}
        t = t.reshape([dims[l] if l in present else 1 for l in order])
        prod = t if prod is None else _cmul(prod, t)

    summed = tuple(axis[l] for l in order if l not in spec.output_indices)
    if summed:
        prod = np.sum(prod, axis=summed)
    kept = [l for l in order if l in spec.output_indices]
    out = np.asarray(prod).transpose([kept.index(l) for l in spec.output_indices])
    return out.copy()
