"""``spep`` command-line interface."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as sio
from .classify import (
    RANK_OK,
    ClassificationThresholds,
    label_candidates,
    label_counts,
    rank_diagnostic,
)
from .kernel import SingularPencilError
from .nullspace import (
    DegenerateProjectionError,
    load_basis,
    poly_det,
    projected_basis_roots,
    simplicity_check,
)
from .problems import UnknownFixtureError, fixture, zgv_frequencies, zgv_points
from .singular import (
    METHODS,
    EmptyResultError,
    SolverConfig,
    method_name,
    normal_rank,
    run_method,
)
from .trials import run_trials

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3


class InputError(Exception):
    pass


def _method(text: str) -> str:
    try:
        return method_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _k(text: str):
    if text == "auto":
        return None
    try:
        k = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("--k takes 'auto' or an integer") from exc
    if k < 0:
        raise argparse.ArgumentTypeError("--k must be non-negative")
    return k


def _params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            out[key.strip()] = float(value) if "." in value or "e" in value.lower() else int(value)
        except ValueError as exc:
            raise InputError(f"--param {key}: {value!r} is not a number") from exc
    return out


def _thresholds(args) -> ClassificationThresholds:
    try:
        return ClassificationThresholds(args.delta1, args.delta2, args.xi2)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _config(args) -> SolverConfig:
    try:
        return SolverConfig(tau=args.tau, delta_filter=args.delta, master_seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_solve(args) -> int:
    P = sio.read_problem(args.input)
    cfg = _config(args)
    th = _thresholds(args)
    rng = np.random.default_rng(args.seed)
    k = args.k
    if k is None:
        k = max(P.shape) - normal_rank(P, cfg, rng)
    try:
        cands = run_method(P, args.method, cfg, rng, k=k)
    except SingularPencilError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        print(f"diagnostic: the transformed problem is singular; the normal rank "
              f"{max(P.shape) - k} is probably over-estimated", file=sys.stderr)
        return EXIT_SOLVER
    except EmptyResultError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    labeled = label_candidates(cands, th)
    if args.output:
        sio.write_results_json(labeled, args.output)
    if args.csv:
        sio.write_results_csv(labeled, args.csv)
    counts = label_counts(labeled)
    print(f"normal rank {max(P.shape) - k} (k = {k}), method {args.method}")
    print("labels: " + ", ".join(f"{n} {lb}" for lb, n in counts.items() if n))
    for c in labeled:
        if c.label == "finite-true":
            v = c.candidate.value
            print(f"  {v.real: .12g} {v.imag:+.12g}i   gamma {c.candidate.gamma:.2e}")
    diag = rank_diagnostic(labeled, args.method, k)
    if diag != RANK_OK:
        print(f"diagnostic: normal rank looks {diag}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_bench(args) -> int:
    params = _params(args.param)
    methods = METHODS if args.method == "all" else (method_name(args.method),)
    cfg = _config(args)
    th = _thresholds(args)
    reports = []
    for m in methods:
        rep = run_trials(args.fixture, params, m, cfg, N=args.trials, master_seed=args.seed,
                         th=th, workers=args.workers)
        reports.append(rep.to_dict())
        print(f"{args.fixture:12s} {m:13s} N={rep.trials} F={rep.failures} "
              f"p={rep.empirical_p:.4f} maxerr={rep.max_error:.2e}")
    if args.output:
        sio.write_json(reports if len(reports) > 1 else reports[0], args.output)
    return EXIT_OK


def cmd_fixture(args) -> int:
    params = _params(args.param)
    params.setdefault("seed", args.seed)
    P, truth = fixture(args.name, params)
    sio.write_problem(P, args.emit)
    print(f"{args.name}: {P.nrows}x{P.ncols}, degree {P.degree}, normal rank {truth.nrank}, "
          f"{len(truth.finite_eigenvalues)} finite eigenvalues")
    return EXIT_OK


def cmd_lab(args) -> int:
    try:
        basis = load_basis(args.basis)
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise InputError(f"cannot read basis {args.basis}: {exc}") from exc
    rng = np.random.default_rng(args.seed)
    out = open(args.output, "w") if args.output else sys.stdout
    good = degenerate = 0
    try:
        out.write("trial,root,re,im,simple\n")
        for t in range(args.trials):
            V = rng.standard_normal((basis.n, basis.k)) + 1j * rng.standard_normal((basis.n, basis.k))
            try:
                roots = projected_basis_roots(basis, V)
            except DegenerateProjectionError:
                degenerate += 1
                continue
            G = basis.as_polynomial().transform(V.conj().T, np.eye(basis.k))
            simple = simplicity_check(roots, poly_det(G))
            good += bool(simple and len(roots) == basis.M)
            for j, z in enumerate(roots):
                out.write(f"{t},{j},{z.real!r},{z.imag!r},{int(simple)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"M = {basis.M}: {good}/{args.trials} trials with exactly M simple roots, "
          f"{degenerate} degenerate", file=sys.stderr)
    return EXIT_OK


def cmd_zgv(args) -> int:
    mats = sio.read_zgv_matrices(args.matrices)
    if args.kappa is None:
        rng = np.random.default_rng(args.seed)
        rows = [(k, w, r) for w, k, r in zgv_points(mats["L0"], mats["L1"], mats["L2"],
                                                    mats["M"], rng=rng)]
    else:
        rows = [(k, w, r) for k in args.kappa
                for w, r in zgv_frequencies(mats["L0"], mats["L1"], mats["L2"], mats["M"], k)]
    sio.write_zgv_csv(rows, sys.stdout)
    return EXIT_OK


def _add_thresholds(p):
    p.add_argument("--delta", type=float, default=None,
                   help="filter threshold (default depends on the method)")
    p.add_argument("--delta1", type=float, default=1e-16)
    p.add_argument("--delta2", type=float, default=1e-12)
    p.add_argument("--xi2", type=float, default=1e-2)
    p.add_argument("--tau", type=float, default=1e-2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spep", description="Eigenvalues of singular matrix polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)
    method_help = "perturb|project|augment (or 1|2|3, or the full names)"

    p = sub.add_parser("solve", help="solve one problem file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", type=_method, default="projection", help=method_help)
    p.add_argument("--k", type=_k, default=None, help="'auto' or size minus normal rank")
    _add_thresholds(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="repeated randomized runs on a fixture")
    p.add_argument("--fixture", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--method", default="all", help=method_help + " or all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None, help="default: SPEP_THREADS or CPU count")
    _add_thresholds(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fixture", help="write a named test problem to JSON")
    p.add_argument("--name", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit", required=True)
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("lab", help="roots of det(V^* S_R) for random V")
    p.add_argument("--basis", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_lab)

    p = sub.add_parser("zgv", help="frequencies and ZGV residuals of a waveguide model")
    p.add_argument("--matrices", required=True)
    p.add_argument("--kappa", type=float, nargs="+", default=None,
                   help="wavenumbers; without it the ZGV points are computed")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_zgv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, sio.ProblemFormatError, UnknownFixtureError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularPencilError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
