"""Command-line front end: ``infomat <subcommand> ...``.

Variable indices on the command line are 1-based.  ``-i``/``-o`` accept
``-`` for stdin/stdout, which is also the default.  Exit status is 0 on
success, 2 when ``check-psd`` finds a matrix that is not PSD, and 1 on
usage or data errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import io
from .distribution import JointDistribution
from .errors import InfomatError
from .examples import named_example
from .info import i_measure_atoms, mi_matrix, mutual_information, psd_certificate_3, subset_entropy
from .linalg import default_psd_tol, eigen_sym, is_psd
from .search import SearchConfig, logits_from_pmf, search_min_eigen, verify_three_var_conjecture

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_PSD = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _index_list(text: str, count: int | None = None) -> list[int]:
    try:
        idx = [int(t) - 1 for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated 1-based indices, got {text!r}") from None
    if any(i < 0 for i in idx):
        raise argparse.ArgumentTypeError("indices are 1-based")
    if count is not None and len(idx) != count:
        raise argparse.ArgumentTypeError(f"expected {count} indices, got {text!r}")
    return idx


def _pair(text):
    return _index_list(text, 2)


def _shape(text):
    try:
        shape = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}") from None
    if not shape or any(s < 1 for s in shape):
        raise argparse.ArgumentTypeError(f"bad shape {text!r}")
    return shape


def _matrix_from_doc(doc: dict) -> np.ndarray:
    """Accept either a matrix document or a distribution (whose MI matrix is used)."""
    if "support" in doc:
        return mi_matrix(io.dist_from_dict(doc))
    return io.matrix_from_dict(doc)


def _distribution(path: str) -> JointDistribution:
    return io.load_distribution(path)


def format_table(m: np.ndarray) -> str:
    cells = [[fmt(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "".join(" ".join(c.rjust(width) for c in row) + "\n" for row in cells)


def cmd_entropy(args):
    dist = _distribution(args.input)
    io.write_text(None, fmt(subset_entropy(dist, args.subset)) + "\n")


def cmd_mi(args):
    dist = _distribution(args.input)
    i, j = args.pair
    io.write_text(None, fmt(mutual_information(dist, i, j)) + "\n")


def cmd_mimatrix(args):
    m = mi_matrix(_distribution(args.input))
    if args.output is not None or args.json:
        io.write_text(args.output, io.dumps(io.matrix_to_dict(m)))
    else:
        io.write_text(None, format_table(m))


def cmd_eig(args):
    res = eigen_sym(_matrix_from_doc(io.read_json(args.input)))
    io.write_text(None, "".join(fmt(v) + "\n" for v in res.values))


def _env_tol_base() -> float:
    raw = os.environ.get("INFOMAT_TOL")
    if raw is None:
        return 1e-9
    try:
        base = float(raw)
    except ValueError:
        raise InfomatError(f"INFOMAT_TOL={raw!r} is not a number") from None
    if base < 0:
        raise InfomatError("INFOMAT_TOL must be non-negative")
    return base


def cmd_check_psd(args):
    m = _matrix_from_doc(io.read_json(args.input))
    tol = args.tol if args.tol is not None else default_psd_tol(m, _env_tol_base())
    verdict = is_psd(m, tol)
    if verdict.psd:
        io.write_text(None, f"PSD min_eigenvalue {fmt(verdict.value)} tol {fmt(tol)}\n")
        return EXIT_OK
    lines = [
        f"NOT PSD min_eigenvalue {fmt(verdict.value)} tol {fmt(tol)}",
        "witness_vector " + " ".join(fmt(x) for x in verdict.vector),
        f"quadratic_form {fmt(verdict.quadratic_form)}",
    ]
    io.write_text(None, "\n".join(lines) + "\n")
    return EXIT_NOT_PSD


def cmd_imeasure(args):
    table = i_measure_atoms(_distribution(args.input))
    io.write_text(args.output, io.dumps(io.atoms_to_dict(table)))


def cmd_certify3(args):
    cert = psd_certificate_3(_distribution(args.input))
    lines = [f"{k} {fmt(v)}" for k, v in cert.decomposition.coefficients().items()]
    lines.append(f"clamped {fmt(cert.decomposition.clamped)}")
    lines.append(f"max_reconstruction_error {fmt(cert.error)}")
    io.write_text(None, "\n".join(lines) + "\n")


def cmd_example(args):
    io.write_text(args.output, io.dumps(io.dist_to_dict(named_example(args.name))))


def cmd_search(args):
    init = None
    if args.init is not None:
        try:
            start = named_example(args.init)
        except InfomatError:
            start = _distribution(args.init)
        if list(start.shape) != args.shape:
            raise InfomatError(f"--init distribution has shape {list(start.shape)}, expected {args.shape}")
        init = tuple(logits_from_pmf(start.to_dense()))
    config = SearchConfig(
        shape=tuple(args.shape), seed=args.seed, iterations=args.iters, restarts=args.restarts,
        step_sigma=args.step_sigma, temperature=args.temperature, decay=args.decay,
        init_logits=init, init_sigma=args.init_sigma if args.init_sigma is not None else (0.05 if init else 1.0),
    )
    result = search_min_eigen(config, jobs=args.jobs)
    io.write_text(args.output, io.dumps(io.run_log_to_dict(result)))


def cmd_verify3(args):
    report = verify_three_var_conjecture(args.samples, args.max_alphabet, args.seed)
    io.write_text(args.output, io.dumps(report.to_dict()))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infomat", description="Mutual-information matrices of discrete random variables.")
    parser.add_argument("--verbose", action="store_true", help="report run metadata on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, inp=True, out=False):
        p = sub.add_parser(name, help=help)
        if inp:
            p.add_argument("-i", "--input", default="-", help="input JSON path ('-' for stdin)")
        if out:
            p.add_argument("-o", "--output", default=None, help="output path ('-' for stdout)")
        p.set_defaults(func=func)
        return p

    add("entropy", cmd_entropy, "joint entropy of a variable subset").add_argument(
        "--subset", type=_index_list, required=True, help="1-based indices, e.g. 1,3")
    add("mi", cmd_mi, "mutual information of two variables").add_argument(
        "--pair", type=_pair, required=True, help="1-based indices, e.g. 1,4")
    p = add("mimatrix", cmd_mimatrix, "MI matrix as a text table or JSON", out=True)
    p.add_argument("--json", action="store_true", help="print matrix JSON instead of a table")
    add("eig", cmd_eig, "eigenvalues of a matrix (or of a distribution's MI matrix)")
    add("check-psd", cmd_check_psd, "PSD verdict with a witness eigenpair").add_argument(
        "--tol", type=float, default=None, help="absolute tolerance on the smallest eigenvalue")
    add("imeasure", cmd_imeasure, "I-measure atom table", out=True)
    add("certify3", cmd_certify3, "PSD certificate for three variables")
    p = add("example", cmd_example, "emit a built-in distribution", inp=False, out=True)
    p.add_argument("name", help="xor4, sum4, parity:<n> or independent:<n>")

    p = add("search", cmd_search, "anneal for a low smallest eigenvalue", inp=False, out=True)
    p.add_argument("--shape", type=_shape, required=True, help="alphabet sizes, e.g. 2,2,2,4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=10_000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--step-sigma", type=float, default=SearchConfig.step_sigma)
    p.add_argument("--temperature", type=float, default=SearchConfig.temperature)
    p.add_argument("--decay", type=float, default=SearchConfig.decay)
    p.add_argument("--init", default=None, help="example name or distribution JSON to start from")
    p.add_argument("--init-sigma", type=float, default=None,
                   help="logit perturbation of the start (default 0.05 with --init, else 1.0)")
    p.add_argument("--jobs", type=int, default=1, help="parallel restarts")

    p = add("verify3", cmd_verify3, "randomized check of PSD-ness for three variables", inp=False, out=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--max-alphabet", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        start = time.perf_counter()
        code = args.func(args) or EXIT_OK
        if args.verbose:
            print(f"[infomat] {args.command} finished in {time.perf_counter() - start:.3f}s", file=sys.stderr)
        return code
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except (InfomatError, ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"infomat: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())
