"""File formats: density-matrix text files and Hamiltonian JSON.

Density-matrix text: header line "d M", then d^M lines of d^M entries,
each entry "re+imj" (parseable by Python's complex()), space separated.

Hamiltonian JSON: {"local_dim": 2, "terms": [{"ops": ["X","X"], "coeff": 1.0}, ...]}.
"""

from __future__ import annotations

import json

import numpy as np

from .linalg import DensityMatrix, HermitianOp
from .pauli import PAULI_LABELS, PauliTwoBodyHamiltonian


def format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


def write_density_text(rho: DensityMatrix, path) -> None:
    mat = rho.mat
    with open(path, "w") as fh:
        fh.write(f"{rho.local_dim} {rho.sites}\n")
        for row in mat:
            fh.write(" ".join(format_complex(z) for z in row) + "\n")


def read_density_text(path) -> DensityMatrix:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"bad header {header!r}, expected 'd M'")
        d, m = int(header[0]), int(header[1])
        dim = d**m
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            entries = [complex(tok) for tok in line.split()]
            if len(entries) != dim:
                raise ValueError(f"row has {len(entries)} entries, expected {dim}")
            rows.append(entries)
    if len(rows) != dim:
        raise ValueError(f"found {len(rows)} rows, expected {dim}")
    return DensityMatrix(HermitianOp(np.array(rows, dtype=complex), d))


def write_hamiltonian_json(h: PauliTwoBodyHamiltonian, path) -> None:
    payload = {
        "local_dim": 2,
        "terms": [
            {"ops": [a, b], "coeff": c} for (a, b), c in sorted(h.coeffs.items())
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_hamiltonian_json(path) -> PauliTwoBodyHamiltonian:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("local_dim", 2) != 2:
        raise ValueError("only local_dim=2 Hamiltonian tables are supported")
    coeffs = {}
    for term in payload["terms"]:
        ops = term["ops"]
        if len(ops) != 2 or any(o not in PAULI_LABELS for o in ops):
            raise ValueError(f"bad term ops {ops!r}")
        key = (ops[0], ops[1])
        coeffs[key] = coeffs.get(key, 0.0) + float(term["coeff"])
    return PauliTwoBodyHamiltonian(coeffs)
