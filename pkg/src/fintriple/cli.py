"""Command-line frontend.

Subcommands: qmatrix, validate, commutator, product, converge, zeta,
survey.  Exit codes: 0 success, 1 failed axiom or acceptance check,
2 usage error, 3 I/O error.  The random-element seed defaults to a fixed
constant (triple_core.DEFAULT_SEED); the environment variable
FINTRIPLE_SEED overrides the default and --seed overrides both.  Output
is deterministic for identical configurations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import analysis, product
from .calculus import blocks, commutator
from .dirac import Normalization, SpectralTriple, validate_axioms
from .errors import (
    DegenerateSize,
    DimensionMismatch,
    EmptySelection,
    FintripleError,
    SizeTooSmall,
    UsageError,
)
from .functions import builtin_function, load_sample_file, sample
from .qmatrix import Shape, build_q, determinant, kernel_dimension, det_sequence
from .triple_core import DEFAULT_SEED, AlgebraElement

__all__ = ["RunConfig", "parse_args", "run", "main"]

_LEIBNIZ_TOL = 1e-12
_DENSE_PRODUCT_MAX = 32


@dataclass
class RunConfig:
    command: str
    shape: Shape | None = None
    n: int | None = None
    n_list: list[int] = field(default_factory=list)
    n_max: int | None = None
    fn: str | None = None
    fn_x: str | None = None
    fn_y: str | None = None
    k: int = 1
    k_x: int = 1
    k_y: int = 1
    normalization: Normalization = Normalization.SQRT2_CORRECTED
    output_format: str = "json"
    output: str | None = None
    csv: str | None = None
    seed: int = DEFAULT_SEED
    det_seq: int | None = None
    block: int | None = None
    dirac_file: str | None = None
    s: float | None = None
    cutoff: int | None = None
    check_leibniz: bool = False
    limit_study: list[int] = field(default_factory=list)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fintriple",
        description="Finite spectral triples on circle and segment lattices.",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p, shape=True, n=True):
        if shape:
            p.add_argument("--shape", choices=["circle", "segment"])
        if n:
            p.add_argument("--n", type=int)
        p.add_argument("--normalization", choices=["sqrt2", "unit"], default="sqrt2")
        p.add_argument("--seed", type=int)
        p.add_argument("--output", help="write the report to this path")

    p = sub.add_parser("qmatrix", help="intersection matrix, determinant, kernel")
    common(p)
    p.add_argument("--det-seq", type=int, metavar="MAX",
                   help="append the determinant sequence up to MAX")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--csv", dest="csv_flag", action="store_true")

    p = sub.add_parser("validate", help="run the five axiom checks")
    common(p)
    p.add_argument("--dirac-file", help="JSON file with a raw operator matrix")

    p = sub.add_parser("commutator", help="per-point blocks of [D, pi(a)]")
    common(p)
    p.add_argument("--fn", help="sin|cos|exp|linear|const|file:PATH")
    p.add_argument("--k", type=int, default=1, help="wavenumber of exp(i*k*x)")
    p.add_argument("--block", type=int, help="print only the block at this point")
    p.add_argument("--json", action="store_true", default=True)

    p = sub.add_parser("product", help="tensor square of the circle triple")
    common(p, shape=False)
    p.add_argument("--fn-x", help="factor-1 function spec")
    p.add_argument("--fn-y", help="factor-2 function spec")
    p.add_argument("--k-x", type=int, default=1)
    p.add_argument("--k-y", type=int, default=2)
    p.add_argument("--check-leibniz", action="store_true")
    p.add_argument("--limit-study", help="comma-separated factor sizes")

    p = sub.add_parser("converge", help="block singular values vs |a'|")
    common(p, n=False)
    p.add_argument("--fn")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-list", help="comma-separated lattice sizes")
    p.add_argument("--csv", help="write records as CSV to this path")

    p = sub.add_parser("zeta", help="partial sums over |eigenvalue|^-s")
    common(p)
    p.add_argument("--s", type=float)
    p.add_argument("--cutoff", type=int)

    p = sub.add_parser("survey", help="determinant and kernel table")
    common(p, n=False)
    p.add_argument("--n-max", type=int)
    p.add_argument("--csv", help="write the table as CSV to this path")

    return parser


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}")
    if not values:
        raise UsageError(f"{flag} is empty")
    return values


def _require(ns, name: str):
    value = getattr(ns, name.replace("-", "_"), None)
    if value is None:
        raise UsageError(f"--{name} is required for {ns.command}")
    return value


def parse_args(argv: list[str]) -> RunConfig:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            raise UsageError("invalid arguments") from None
        raise
    if ns.command is None:
        raise UsageError("a subcommand is required (see --help)")

    config = RunConfig(command=ns.command)
    config.normalization = Normalization(ns.normalization)
    if ns.seed is not None:
        config.seed = ns.seed
    elif os.environ.get("FINTRIPLE_SEED"):
        try:
            config.seed = int(os.environ["FINTRIPLE_SEED"])
        except ValueError:
            raise UsageError("FINTRIPLE_SEED must be an integer")
    config.output = ns.output

    if ns.command in ("qmatrix", "validate", "commutator", "zeta", "survey", "converge"):
        config.shape = Shape(_require(ns, "shape"))
    if ns.command in ("qmatrix", "validate", "commutator", "zeta", "product"):
        config.n = _require(ns, "n")

    if ns.command == "qmatrix":
        config.det_seq = ns.det_seq
        config.output_format = "csv" if ns.csv_flag else "json"
    elif ns.command == "validate":
        config.dirac_file = ns.dirac_file
    elif ns.command == "commutator":
        config.fn = _require(ns, "fn")
        config.k = ns.k
        config.block = ns.block
    elif ns.command == "product":
        config.fn_x = _require(ns, "fn-x")
        config.fn_y = _require(ns, "fn-y")
        config.k_x = ns.k_x
        config.k_y = ns.k_y
        config.check_leibniz = ns.check_leibniz
        if ns.limit_study:
            config.limit_study = _parse_int_list(ns.limit_study, "--limit-study")
        if config.n > _DENSE_PRODUCT_MAX:
            raise UsageError(
                f"dense product assembly is capped at n = {_DENSE_PRODUCT_MAX} per factor"
            )
    elif ns.command == "converge":
        config.fn = _require(ns, "fn")
        config.k = ns.k
        config.n_list = _parse_int_list(_require(ns, "n-list"), "--n-list")
        config.csv = ns.csv
    elif ns.command == "zeta":
        config.s = _require(ns, "s")
        config.cutoff = _require(ns, "cutoff")
        if config.s <= 0:
            raise UsageError("--s must be positive")
        if config.cutoff < 1:
            raise UsageError("--cutoff must be a positive integer")
    elif ns.command == "survey":
        config.n_max = _require(ns, "n-max")
        config.csv = ns.csv
    return config


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.integer, np.floating)):
        return x.item()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(payload: dict, path: str | None):
    _emit(json.dumps(_jsonable(payload), indent=2, sort_keys=True), path)


def _resolve_samples(spec: str, shape: Shape, n: int, k: int):
    """Samples plus the named function (None for file input)."""
    if spec.startswith("file:"):
        a = load_sample_file(spec[5:])
        if len(a) != n:
            raise UsageError(
                f"sample file has {len(a)} values, lattice has {n} points"
            )
        return a, None
    try:
        fn = builtin_function(spec, k)
    except ValueError as exc:
        raise UsageError(str(exc))
    return sample(fn, shape, n), fn


def _load_dirac_file(path: str) -> np.ndarray:
    with open(path) as fh:
        data = json.load(fh)
    rows = data["matrix"] if isinstance(data, dict) else data
    return np.array(
        [[complex(entry[0], entry[1]) for entry in row] for row in rows],
        dtype=np.complex128,
    )


def _cmd_qmatrix(config: RunConfig) -> int:
    q = build_q(config.shape, config.n)
    if config.output_format == "csv":
        if config.det_seq is not None:
            rows = analysis.degeneracy_survey(config.shape, config.det_seq)
            lines = ["n,det,kernel_dim"]
            lines += [f"{r.n},{r.det},{r.kernel_dim}" for r in rows]
        else:
            lines = [",".join(str(int(v)) for v in row) for row in q.entries]
        _emit("\n".join(lines), config.output)
        return 0
    payload = {
        "shape": config.shape.value,
        "n": config.n,
        "entries": q.entries,
        "det": determinant(q),
        "kernel_dim": kernel_dimension(q),
    }
    if config.det_seq is not None:
        payload["det_sequence"] = det_sequence(config.shape, config.det_seq)
    _emit_json(payload, config.output)
    return 0


def _cmd_validate(config: RunConfig) -> int:
    t = SpectralTriple.standard(config.shape, config.n, config.normalization)
    operator = t.dirac
    if config.dirac_file:
        operator = _load_dirac_file(config.dirac_file)
        if operator.shape != (t.basis.total_dim, t.basis.total_dim):
            raise UsageError(
                f"matrix in {config.dirac_file} has shape {operator.shape}, "
                f"expected {(t.basis.total_dim, t.basis.total_dim)}"
            )
    report = validate_axioms(t.basis, t.gamma, t.real, operator, seed=config.seed)
    payload = {
        "shape": config.shape.value,
        "n": config.n,
        "normalization": config.normalization.value,
        "seed": config.seed,
        "degenerate_size": config.shape.is_degenerate(config.n),
        "report": report.to_dict(),
    }
    if payload["degenerate_size"]:
        payload["warning"] = (
            "det(q) = 0 at this size; axiom checks proceed regardless"
        )
    _emit_json(payload, config.output)
    return 0 if report.all_passed else 1


def _cmd_commutator(config: RunConfig) -> int:
    t = SpectralTriple.standard(config.shape, config.n, config.normalization)
    a, _ = _resolve_samples(config.fn, config.shape, config.n, config.k)
    bls = blocks(commutator(t.dirac, a), t.dirac)
    if config.block is not None:
        if not 0 <= config.block < config.n:
            raise UsageError(f"--block must lie in [0, {config.n - 1}]")
        bls = [bls[config.block]]
    payload = {
        "shape": config.shape.value,
        "n": config.n,
        "fn": config.fn,
        "normalization": config.normalization.value,
        "blocks": [
            {
                "l": b.l,
                "a_minus": b.a_minus,
                "a_plus": b.a_plus,
                "nu": b.nu,
                "kernel": b.kernel,
            }
            for b in bls
        ],
    }
    _emit_json(payload, config.output)
    return 0


def _cmd_product(config: RunConfig) -> int:
    t1 = SpectralTriple.standard(Shape.CIRCLE, config.n, config.normalization)
    t2 = SpectralTriple.standard(Shape.CIRCLE, config.n, config.normalization)
    p = product.tensor_triple(t1, t2, seed=config.seed, strict=False)
    payload = {
        "n": config.n,
        "normalization": config.normalization.value,
        "seed": config.seed,
        "axioms": p.report.to_dict(),
    }
    failed = not p.report.all_passed
    fx = builtin_function(config.fn_x, config.k_x) if config.fn_x else None
    fy = builtin_function(config.fn_y, config.k_y) if config.fn_y else None
    if config.check_leibniz:
        a = sample(fx, Shape.CIRCLE, config.n)
        b = sample(fy, Shape.CIRCLE, config.n)
        residual = product.leibniz_residual(p, a, b)
        payload["leibniz_residual"] = residual
        failed = failed or residual > _LEIBNIZ_TOL
    if config.limit_study:
        records = product.limit_study(
            config.limit_study, fx, fy, config.normalization
        )
        payload["limit_study"] = [
            {
                "n": r.n,
                "dx": r.dx,
                "anticomm_norm": r.max_anticommutator_norm,
                "sv_max_error": r.max_singular_value_error,
                "block_sv_table": [
                    {"l": l, "m": l, "sv": sv, "target": target}
                    for l, sv, target in r.diagonal
                ],
            }
            for r in records
        ]
    _emit_json(payload, config.output)
    return 1 if failed else 0


def _cmd_converge(config: RunConfig) -> int:
    _, fn = _resolve_samples(
        config.fn, config.shape, max(config.n_list), config.k
    )
    if fn is None or fn.derivative is None:
        raise UsageError("converge needs a named function with a derivative")
    try:
        study = analysis.converge_1d(
            fn, config.shape, config.n_list, config.normalization
        )
    except DegenerateSize as exc:
        raise UsageError(str(exc))
    if config.csv:
        lines = ["n,dx,metric,value,reference,error"]
        lines += [
            f"{r.n},{r.dx!r},{r.metric},{r.value!r},{r.reference!r},{r.error!r}"
            for r in study.records
        ]
        _emit("\n".join(lines), config.csv)
        return 0
    payload = {
        "shape": config.shape.value,
        "fn": study.function,
        "normalization": config.normalization.value,
        "metric": study.metric,
        "fitted_order": study.fitted_order,
        "records": [
            {
                "n": r.n,
                "dx": r.dx,
                "metric": r.metric,
                "value": r.value,
                "reference": r.reference,
                "error": r.error,
            }
            for r in study.records
        ],
    }
    _emit_json(payload, config.output)
    return 0


def _cmd_zeta(config: RunConfig) -> int:
    t = SpectralTriple.standard(config.shape, config.n, config.normalization)
    za = analysis.zeta_action(t.dirac, config.s, config.cutoff)
    payload = {
        "shape": config.shape.value,
        "n": config.n,
        "s": za.s,
        "cutoff": za.cutoff,
        "value": za.value,
        "partial_sums": za.partial_sums,
        "dixmier_proxy": za.dixmier_proxy,
        "note": "exploratory partial sums, not a trace computation",
    }
    _emit_json(payload, config.output)
    return 0


def _cmd_survey(config: RunConfig) -> int:
    rows = analysis.degeneracy_survey(config.shape, config.n_max)
    if config.csv:
        lines = ["n,det,kernel_dim"]
        lines += [f"{r.n},{r.det},{r.kernel_dim}" for r in rows]
        _emit("\n".join(lines), config.csv)
        return 0
    payload = {
        "shape": config.shape.value,
        "n_max": config.n_max,
        "rows": [
            {"n": r.n, "det": r.det, "kernel_dim": r.kernel_dim} for r in rows
        ],
    }
    _emit_json(payload, config.output)
    return 0


_COMMANDS = {
    "qmatrix": _cmd_qmatrix,
    "validate": _cmd_validate,
    "commutator": _cmd_commutator,
    "product": _cmd_product,
    "converge": _cmd_converge,
    "zeta": _cmd_zeta,
    "survey": _cmd_survey,
}


def run(config: RunConfig) -> int:
    try:
        return _COMMANDS[config.command](config)
    except (SizeTooSmall, EmptySelection, DimensionMismatch) as exc:
        raise UsageError(str(exc))


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except FintripleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
