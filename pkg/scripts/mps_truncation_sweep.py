"""Truncation error of MPS compression versus maximum bond dimension.

For each bond cap the state is compressed, contracted back, and the true
error is compared with the bound sqrt(sum of discarded weights).

    python3 scripts/mps_truncation_sweep.py --qubits 8 --seed 1
"""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from qsvd import io, mps_from_state, mps_to_state


@dataclass
class SweepConfig:
    qubits: int = 8
    seed: int = 1


def run(cfg: SweepConfig):
    psi = io.random_state([2] * cfg.qubits, cfg.seed)
    print("max_bond  bond_dims  error  bound")
    for chi in (2**k for k in range(cfg.qubits // 2 + 1)):
        mps, reports = mps_from_state(psi, max_bond=chi)
        err = float(np.linalg.norm(mps_to_state(mps) - psi))
        bound = math.sqrt(sum(r.discarded_weight for r in reports))
        dims = ",".join(map(str, mps.bond_dims))
        print(f"{chi:8d}  {dims}  {err:.3e}  {bound:.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", type=int, default=SweepConfig.qubits)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    run(SweepConfig(args.qubits, args.seed))
