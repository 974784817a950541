"""JSON and CSV serialisation.

Complex numbers are written as ``[re, im]`` pairs.  CSV files always carry
a header row and format reals with 17 significant digits, '.' decimal.
"""

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import UsageError
from .sic import FamilySpec, SicEnsemble


def fmt(x):
    if isinstance(x, (str, bool)):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def complex_pairs(a):
    """Nested lists with every complex entry replaced by ``[re, im]``."""
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def from_pairs(data):
    a = np.asarray(data, dtype=float)
    if a.shape[-1] != 2:
        raise UsageError("complex data must be [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def sic_to_dict(sic):
    return {
        "spec": sic.spec.to_dict(),
        "fiducial": complex_pairs(sic.fiducial),
        "projectors": complex_pairs(sic.projectors),
    }


def sic_from_dict(d):
    return SicEnsemble(from_pairs(d["projectors"]), from_pairs(d["fiducial"]),
                       FamilySpec.from_dict(d["spec"]))


def tensors_to_dict(inv, spec=None):
    """Dense 729-entry arrays in row-major ``(i, j, k)`` order, labels starting at 1."""
    out = {
        "shape": [9, 9, 9],
        "order": "row-major (i, j, k), labels 1..9",
        "T": complex_pairs(inv.T.reshape(-1)),
        "S": complex_pairs(inv.S.reshape(-1)),
    }
    if spec is not None:
        out["spec"] = spec.to_dict()
    return out


def dumps(obj):
    return json.dumps(obj, indent=1) + "\n"


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def rotation_csv(r):
    m = getattr(r, "matrix", r)
    return csv_text([f"c{j}" for j in range(1, 10)], np.asarray(m).tolist())


def rotation_to_dict(r):
    return {
        "from": r.from_spec.to_dict(),
        "to": r.to_spec.to_dict(),
        "matrix": np.asarray(r.matrix).tolist(),
    }


def probs_csv(p):
    return csv_text(["i", "p"], [(i, v) for i, v in enumerate(p, start=1)])


def read_state_file(path):
    """Load a state file: a 3x3 matrix (complex as ``[re, im]``) or a 9-entry probability vector.

    Returns ``("matrix", rho)`` or ``("probs", p)``, decided by shape.  A
    top-level object may wrap the payload as ``{"rho": ...}`` or ``{"p": ...}``.
    """
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        for key in ("rho", "p", "probs", "matrix"):
            if key in data:
                data = data[key]
                break
        else:
            raise UsageError(f"{path}: expected a 'rho' or 'p' entry")
    a = np.asarray(data, dtype=float)
    if a.shape == (3, 3, 2):
        return "matrix", a[..., 0] + 1j * a[..., 1]
    if a.shape == (3, 3):
        return "matrix", a.astype(complex)
    if a.shape == (9,):
        return "probs", a
    raise UsageError(f"{path}: state must be 3x3 (complex as [re, im]) or 9 probabilities, got shape {a.shape}")
