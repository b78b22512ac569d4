"""JSON and CSV formats for problems, results, reports and ZGV matrices."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .classify import ClassifiedEigenvalue
from .matpoly import MatrixPolynomial

RESULT_COLUMNS = ("index", "re", "im", "gamma", "alpha", "beta", "gap", "label")


class ProblemFormatError(ValueError):
    """A problem or matrix file does not follow the expected schema."""


def _entry(e) -> complex:
    if isinstance(e, (list, tuple)):
        if len(e) != 2:
            raise ProblemFormatError(f"complex entry must be [re, im], got {e!r}")
        return complex(float(e[0]), float(e[1]))
    if isinstance(e, (int, float)):
        return complex(e)
    raise ProblemFormatError(f"bad matrix entry {e!r}")


def _matrix(rows, shape=None) -> np.ndarray:
    try:
        A = np.array([[_entry(e) for e in row] for row in rows], dtype=complex)
    except TypeError as exc:
        raise ProblemFormatError(f"malformed matrix: {exc}") from exc
    if A.ndim != 2 or (shape is not None and A.shape != shape):
        raise ProblemFormatError(f"matrix has shape {A.shape}, expected {shape}")
    return A


def problem_to_dict(P: MatrixPolynomial) -> dict:
    return {
        "m": P.nrows,
        "n": P.ncols,
        "degree": P.degree,
        "coefficients": [[[[float(z.real), float(z.imag)] for z in row] for row in A]
                         for A in P.coeffs],
    }


def problem_from_dict(data: dict) -> MatrixPolynomial:
    try:
        m, n, d = int(data["m"]), int(data["n"]), int(data["degree"])
        coeffs = data["coefficients"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemFormatError(f"problem file needs m, n, degree, coefficients: {exc}") from exc
    if m < 1 or n < 1 or d < 0:
        raise ProblemFormatError("m, n must be positive and degree non-negative")
    if len(coeffs) != d + 1:
        raise ProblemFormatError(f"expected {d + 1} coefficient matrices, got {len(coeffs)}")
    return MatrixPolynomial(np.stack([_matrix(A, (m, n)) for A in coeffs]))


def read_problem(path) -> MatrixPolynomial:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: not valid JSON ({exc})") from exc
    return problem_from_dict(data)


def write_problem(P: MatrixPolynomial, path) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(P)))


def _finite_or_none(x: float):
    return float(x) if np.isfinite(x) else None


def result_records(classified: Sequence[ClassifiedEigenvalue]) -> list[dict]:
    out = []
    for c in classified:
        lam = c.candidate.lam
        if lam.is_infinite:
            lam_d = {"re": None, "im": None, "infinite": True}
        else:
            v = lam.value
            lam_d = {"re": float(v.real), "im": float(v.imag), "infinite": False}
        out.append({
            "lambda": lam_d,
            "gamma": float(c.candidate.gamma),
            "alpha": float(c.candidate.alpha),
            "beta": float(c.candidate.beta),
            "gap": _finite_or_none(c.gap),
            "label": c.label,
        })
    return out


def write_results_json(classified: Sequence[ClassifiedEigenvalue], path) -> None:
    Path(path).write_text(json.dumps(result_records(classified), indent=1))


def write_results_csv(classified: Sequence[ClassifiedEigenvalue], stream_or_path) -> None:
    rows = []
    for i, rec in enumerate(result_records(classified)):
        lam = rec["lambda"]
        re = "inf" if lam["infinite"] else repr(lam["re"])
        im = "0" if lam["infinite"] else repr(lam["im"])
        gap = "inf" if rec["gap"] is None else repr(rec["gap"])
        rows.append([i, re, im, repr(rec["gamma"]), repr(rec["alpha"]),
                     repr(rec["beta"]), gap, rec["label"]])
    _write_csv(RESULT_COLUMNS, rows, stream_or_path)


def _write_csv(header: Iterable[str], rows, stream_or_path) -> None:
    if hasattr(stream_or_path, "write"):
        w = csv.writer(stream_or_path, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(stream_or_path, "w", newline="") as fh:
        _write_csv(header, rows, fh)


def read_zgv_matrices(path) -> dict:
    """``{"L0", "L1", "L2", "M"}`` square matrices of equal size."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: not valid JSON ({exc})") from exc
    missing = {"L0", "L1", "L2", "M"} - set(data)
    if missing:
        raise ProblemFormatError(f"missing matrices: {sorted(missing)}")
    mats = {key: _matrix(data[key]) for key in ("L0", "L1", "L2", "M")}
    n = mats["M"].shape[0]
    for key, A in mats.items():
        if A.shape != (n, n):
            raise ProblemFormatError(f"{key} has shape {A.shape}, expected {(n, n)}")
    # real input stays real so symmetric problems use the Hermitian solver
    return {k: (A.real if not np.any(A.imag) else A) for k, A in mats.items()}


def write_zgv_csv(rows, stream_or_path) -> None:
    """Rows of ``(kappa, omega, zgv_residual)``."""
    _write_csv(("kappa", "omega", "zgv_residual"),
               [[repr(float(k)), repr(float(w)), repr(float(r))] for k, w, r in rows],
               stream_or_path)


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1))
