"""Command-line interface.

Every command prints line-oriented ``key value`` pairs; floats use the
shortest repr that round-trips. Exit codes: 0 success, 2 usage error
(including malformed contraction expressions), 3 input/format/shape error,
4 numerical failure, 5 invariant violation.
"""

import argparse
import sys

import numpy as np

from . import io
from .errors import QsvdError, ShapeError
from .linalg import frobenius_norm, frobenius_norm_via_svd, svd, trace, trace_via_singular_values
from .metrics import DensityMatrix, fidelity, spectral_diff_report, trace_distance
from .schmidt import StateVector, is_entangled, schmidt_decompose, schmidt_rank
from .tensor import contract, parse_contraction, tensordot
from .truncation import mps_from_state, truncated_svd


def fmt(x) -> str:
    return repr(float(x))


def emit(key, *values) -> None:
    print(key, *values)


def int_list(text: str) -> list:
    try:
        dims = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError(f"dimensions must be positive, got {text!r}")
    return dims


def pair(text: str) -> tuple:
    dims = int_list(text)
    if len(dims) != 2:
        raise argparse.ArgumentTypeError(f"expected two dimensions dA,dB, got {text!r}")
    return tuple(dims)


def read_matrix(path) -> np.ndarray:
    tf = io.read(path)
    if tf.kind == "state":
        return tf.data.reshape(io.bipartition(tf))
    if len(tf.shape) != 2:
        raise ShapeError(f"{path}: expected a matrix, got shape {list(tf.shape)}")
    return tf.data


def read_density(path) -> DensityMatrix:
    tf = io.read(path)
    if tf.kind == "state":
        return DensityMatrix.from_pure(tf.data)
    return DensityMatrix(tf.data)


def save_factors(prefix, u, s, vh) -> None:
    io.save(u, f"{prefix}.u", kind="matrix")
    io.save(np.asarray(s, dtype=np.complex128), f"{prefix}.s")
    io.save(vh, f"{prefix}.vh", kind="matrix")


def cmd_svd(args):
    res = svd(read_matrix(args.input))
    save_factors(args.out_prefix, res.u, res.singular_values, res.v_dagger)
    emit("rank", res.rank)
    emit("singular_values", *map(fmt, res.singular_values))


def _state(args) -> StateVector:
    return StateVector(args.dims, io.read(args.input).data, normalize=args.normalize)


def cmd_schmidt(args):
    dec = schmidt_decompose(_state(args), args.tol)
    emit("rank", dec.rank)
    emit("coefficients", *map(fmt, dec.coefficients))
    emit("weights", *map(fmt, dec.weights))
    emit("entangled", "yes" if dec.rank > 1 else "no")


def cmd_rank(args):
    emit("rank", schmidt_rank(_state(args), args.tol))


def cmd_tracedist(args):
    rho, sigma = read_density(args.a), read_density(args.b)
    if args.diagnostic:
        rep = spectral_diff_report(rho, sigma)
        d = rep.trace_distance / 2 if args.half else rep.trace_distance
    else:
        d = trace_distance(rho, sigma, halved=args.half)
    emit("trace_distance_halved" if args.half else "trace_distance", fmt(d))
    if args.diagnostic:
        emit("spectral_difference", fmt(rep.spectral_diff))
        emit("discrepancy", fmt(rep.discrepancy))


def cmd_fidelity(args):
    f = fidelity(read_density(args.a), read_density(args.b), squared=args.squared)
    emit("fidelity_squared" if args.squared else "fidelity", fmt(f))


def cmd_frob(args):
    a = read_matrix(args.input)
    direct, via = frobenius_norm(a), frobenius_norm_via_svd(a)
    emit("frobenius_entries", fmt(direct))
    emit("frobenius_singular_values", fmt(via))
    emit("difference", fmt(abs(direct - via)))


def cmd_trace(args):
    a = read_matrix(args.input)
    t = trace(a)
    emit("trace_re", fmt(t.real))
    emit("trace_im", fmt(t.imag))
    if args.via_svd:
        emit("trace_singular_values", fmt(trace_via_singular_values(a)))


def cmd_contract(args):
    spec = parse_contraction(args.spec)
    out = contract(spec, [io.read(p).data for p in args.inputs])
    io.save(out, args.out)
    emit("shape", *out.shape)


def cmd_tensordot(args):
    out = tensordot(io.read(args.a).data, io.read(args.b).data, args.axes)
    io.save(out, args.out)
    emit("shape", *out.shape)


def cmd_truncate(args, parser):
    if args.rank is None and args.tol is None:
        parser.error("truncate needs --rank, --tol, or both")
    res, rep = truncated_svd(read_matrix(args.input), args.rank, args.tol)
    save_factors(args.out_prefix, res.u, res.singular_values, res.v_dagger)
    emit("kept_rank", rep.kept_rank)
    emit("discarded_weight", fmt(rep.discarded_weight))
    emit("relative_error", fmt(rep.relative_error))


def cmd_mps(args):
    mps, reports = mps_from_state(io.read(args.input).data, args.max_bond, args.tol)
    for k, core in enumerate(mps.cores):
        io.save(core, f"{args.out_prefix}.core{k}")
    emit("sites", len(mps.cores))
    emit("bond_dims", *mps.bond_dims)
    for k, rep in enumerate(reports, start=1):
        emit(f"cut_{k}_kept_rank", rep.kept_rank)
        emit(f"cut_{k}_discarded_weight", fmt(rep.discarded_weight))
        emit(f"cut_{k}_relative_error", fmt(rep.relative_error))


def cmd_random_state(args):
    psi = io.random_state(args.dims, args.seed)
    io.save(psi, args.out, kind="state")
    emit("shape", *psi.shape)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsvd", description="SVD toolkit for quantum states and small tensor networks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("svd", help="thin SVD of a matrix")
    s.add_argument("input")
    s.add_argument("--out-prefix", required=True)
    s.set_defaults(func=cmd_svd)

    for name, func in (("schmidt", cmd_schmidt), ("rank", cmd_rank)):
        s = sub.add_parser(name, help=f"Schmidt {'decomposition' if name == 'schmidt' else 'rank'} of a bipartite state")
        s.add_argument("input")
        s.add_argument("--dims", type=pair, required=True)
        s.add_argument("--tol", type=float, default=1e-12)
        s.add_argument("--normalize", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("tracedist", help="trace distance Tr|a - b|")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--half", action="store_true")
    s.add_argument("--diagnostic", action="store_true")
    s.set_defaults(func=cmd_tracedist)

    s = sub.add_parser("fidelity", help="Uhlmann fidelity")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--squared", action="store_true")
    s.set_defaults(func=cmd_fidelity)

    s = sub.add_parser("frob", help="Frobenius norm by entries and by singular values")
    s.add_argument("input")
    s.set_defaults(func=cmd_frob)

    s = sub.add_parser("trace", help="diagonal-sum trace")
    s.add_argument("input")
    s.add_argument("--via-svd", action="store_true")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("contract", help="index-notation contraction")
    s.add_argument("--spec", required=True)
    s.add_argument("inputs", nargs="+")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("tensordot", help="contract last k axes of a with first k of b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--axes", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_tensordot)

    s = sub.add_parser("truncate", help="truncated SVD")
    s.add_argument("input")
    s.add_argument("--rank", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--out-prefix", required=True)
    s.set_defaults(func=lambda args: cmd_truncate(args, p))

    s = sub.add_parser("mps", help="left-canonical matrix product state")
    s.add_argument("input")
    s.add_argument("--max-bond", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--out-prefix", required=True)
    s.set_defaults(func=cmd_mps)

    s = sub.add_parser("random-state", help="seeded normalised random state")
    s.add_argument("--dims", type=int_list, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_random_state)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except QsvdError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
