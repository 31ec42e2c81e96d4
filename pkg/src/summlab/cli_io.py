"""Command-line front end and report serialization.

Exit codes: 0 success, 2 configuration or parse error, 3 I/O error,
4 hypothesis check failed under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import conditions as cond
from .conditions import ConditionId, ConditionReport
from .errors import PreconditionError
from .experiments import (
    THEOREMS,
    ExperimentReport,
    ExperimentRow,
    KernelBoundReport,
    check_hypotheses,
    corollary43_table,
    exemplar,
    exemplar_functions,
    lemma8_check,
    lemma9_head_check,
    lemma9_rest_check,
    run_experiment,
)
from .fourier_core import PeriodicFunction, TrigSeries
from .moduli import ModulusProfile, canonical_mediate
from .summability import (
    SummabilityMatrix,
    WeightSequence,
    cesaro_matrix,
    norlund_matrix,
    riesz_matrix,
)

COMMANDS = ("check-matrix", "kernel-bounds", "theorem", "rate-table", "list-exemplars")
EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_STRICT = 0, 2, 3, 4


class ConfigError(PreconditionError):
    """Invalid configuration; the CLI reports it and exits with code 2."""


class MatrixFileError(ConfigError):
    pass


# -- configuration -------------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    matrix: str = "cesaro"
    weights: str = "linear"
    function: str | None = None
    alpha: float = 0.5
    beta: float = 0.0
    n: str = "16..1024x2"
    theorem: str = "T10"
    lemma: str = "all"
    grid_size: int = 4096
    t_points: int = 2048
    output: str | None = None
    format: str = "json"
    strict: bool = False

    @property
    def n_list(self) -> list[int]:
        return parse_n_list(self.n)


_KEYS = {f.name for f in fields(RunConfig)}


def parse_n_list(text) -> list[int]:
    """``"64"``, ``"1,2,5"``, ``"4..12"`` or ``"16..1024x2"`` (doubling)."""
    if isinstance(text, int):
        return [text]
    text = str(text).strip()
    try:
        if ".." in text:
            lo, rest = text.split("..", 1)
            hi, _, ratio = rest.partition("x")
            lo, hi = int(lo), int(hi)
            if ratio:
                r = int(ratio)
                if r < 2 or lo < 1:
                    raise ValueError
                out = []
                while lo <= hi:
                    out.append(lo)
                    lo *= r
            else:
                out = list(range(lo, hi + 1))
        else:
            out = [int(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"n: cannot parse {text!r}") from None
    if not out or min(out) < 0 or any(b <= a for a, b in zip(out, out[1:])):
        raise ConfigError(f"n: {text!r} must give a nonempty increasing list of integers >= 0")
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="summlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    def common(sp):
        sp.add_argument("--config", default=S, help="JSON file with option values")
        sp.add_argument("--output", "-o", default=S)
        sp.add_argument("--format", choices=("csv", "json"), default=S)

    sp = sub.add_parser("check-matrix", help="row-sequence conditions and their constants")
    common(sp)
    sp.add_argument("--matrix", default=S)
    sp.add_argument("--beta", type=float, default=S)
    sp.add_argument("--n", default=S, help="largest row index")

    sp = sub.add_parser("kernel-bounds", help="normalized kernel-sum and kernel bounds")
    common(sp)
    sp.add_argument("--lemma", choices=("8", "9-head", "9-rest", "all"), default=S)
    sp.add_argument("--matrix", default=S)
    sp.add_argument("--beta", type=float, default=S)
    sp.add_argument("--n", default=S)
    sp.add_argument("--t-points", dest="t_points", type=int, default=S)

    sp = sub.add_parser("theorem", help="sup-norm error against a theorem's bound")
    common(sp)
    sp.add_argument("--id", dest="theorem", choices=THEOREMS, default=S)
    sp.add_argument("--matrix", default=S)
    sp.add_argument("--function", default=S)
    sp.add_argument("--alpha", type=float, default=S)
    sp.add_argument("--beta", type=float, default=S)
    sp.add_argument("--n", default=S)
    sp.add_argument("--grid-size", dest="grid_size", type=int, default=S)
    sp.add_argument("--strict", action="store_true", default=S)

    sp = sub.add_parser("rate-table", help="Riesz means against the Lip(alpha) rate")
    common(sp)
    sp.add_argument("--weights", default=S)
    sp.add_argument("--function", default=S)
    sp.add_argument("--alpha", type=float, default=S)
    sp.add_argument("--beta", type=float, default=S)
    sp.add_argument("--n", default=S)
    sp.add_argument("--grid-size", dest="grid_size", type=int, default=S)
    sp.add_argument("--strict", action="store_true", default=S)

    sp = sub.add_parser("list-exemplars", help="names of the built-in test functions")
    common(sp)
    return p


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Merge defaults, an optional JSON config file, then flags (flags win)."""
    parser = _build_parser()
    try:
        ns = vars(parser.parse_args(argv))
    except SystemExit as e:
        if e.code == 0:
            raise
        raise ConfigError("invalid command line") from e
    values: dict = {}
    cfg_path = ns.pop("config", None)
    if cfg_path is not None:
        try:
            loaded = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"config: cannot read {cfg_path}: {e}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config: top level must be an object")
        for k, v in loaded.items():
            key = k.replace("-", "_")
            if key not in _KEYS or key == "command":
                raise ConfigError(f"config: unknown key {k!r}")
            values[key] = v
    values.update(ns)
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"command: unknown {cfg.command!r}")
    try:
        cfg.beta = float(cfg.beta)
        cfg.alpha = float(cfg.alpha)
        cfg.grid_size = int(cfg.grid_size)
        cfg.t_points = int(cfg.t_points)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"numeric option: {e}") from None
    if not cfg.beta >= 0:
        raise ConfigError("beta must be ≥ 0")
    if not 0 < cfg.alpha <= 1:
        raise ConfigError("alpha must lie in (0, 1]")
    if cfg.grid_size < 256:
        raise ConfigError("grid_size must be ≥ 256")
    if cfg.t_points < 1:
        raise ConfigError("t_points must be ≥ 1")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format: unknown {cfg.format!r}")
    if cfg.theorem not in THEOREMS:
        raise ConfigError(f"theorem: unknown {cfg.theorem!r}")
    if cfg.lemma not in ("8", "9-head", "9-rest", "all"):
        raise ConfigError(f"lemma: unknown {cfg.lemma!r}")
    parse_n_list(cfg.n)
    _split_matrix_spec(cfg.matrix)
    _check_weights_spec(cfg.weights)
    if cfg.function is not None and not str(cfg.function).startswith("file:"):
        known = [e.name for e in exemplar_functions(8)]
        if cfg.function not in known:
            raise ConfigError(f"function: unknown exemplar {cfg.function!r}; known: {known}")


# -- matrices, weights, functions from specs and files --------------------------------

def _numbers(path: str | Path) -> list[list[float]]:
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([float(v) for v in line.split()])
    return rows


def matrix_from_file(path: str | Path, label: str | None = None) -> SummabilityMatrix:
    """One row per line, whitespace-separated; row n holds n+1 values; '#' starts a comment."""
    try:
        rows = _numbers(path)
    except ValueError as e:
        raise MatrixFileError(f"{path}: {e}") from None
    for n, r in enumerate(rows):
        if len(r) != n + 1:
            raise MatrixFileError(f"{path}: row {n} has {len(r)} entries, expected {n + 1}")
    if not rows:
        raise MatrixFileError(f"{path}: no rows")
    if any(v < 0 for r in rows for v in r):
        warnings.warn(f"{path}: matrix has negative entries", stacklevel=2)
    return SummabilityMatrix(rows, label or f"file:{path}")


def _check_weights_spec(spec: str) -> None:
    head, _, arg = spec.partition(":")
    if head in ("ones", "linear") and not arg:
        return
    if head == "geometric":
        try:
            if float(arg) > 0:
                return
        except ValueError:
            pass
        raise ConfigError(f"weights: geometric ratio must be a positive number, got {arg!r}")
    if head == "file" and arg:
        return
    raise ConfigError(f"weights: unknown spec {spec!r}")


def weights_from_spec(spec: str, N: int) -> WeightSequence:
    _check_weights_spec(spec)
    head, _, arg = spec.partition(":")
    if head == "ones":
        return WeightSequence.ones(N)
    if head == "linear":
        return WeightSequence.linear(N)
    if head == "geometric":
        return WeightSequence.geometric(float(arg), N)
    try:
        vals = [v for r in _numbers(arg) for v in r]
    except ValueError as e:
        raise ConfigError(f"weights: {arg}: {e}") from None
    if len(vals) < N + 1:
        raise ConfigError(f"weights: {arg} has {len(vals)} values, need {N + 1}")
    return WeightSequence(np.array(vals[:N + 1]), f"file:{arg}")


def _split_matrix_spec(spec: str) -> tuple[str, str]:
    head, _, arg = spec.partition(":")
    if head == "cesaro" and not arg:
        return head, arg
    if head in ("norlund", "riesz"):
        _check_weights_spec(arg or "")
        return head, arg
    if head == "file" and arg:
        return head, arg
    raise ConfigError(f"matrix: unknown spec {spec!r}")


def matrix_from_spec(spec: str, N: int) -> SummabilityMatrix:
    head, arg = _split_matrix_spec(spec)
    if head == "cesaro":
        return cesaro_matrix(N)
    if head == "file":
        A = matrix_from_file(arg)
        if A.max_row < N:
            raise ConfigError(f"matrix: {arg} has rows 0..{A.max_row}, need {N}")
        return A
    p = weights_from_spec(arg, N)
    A = norlund_matrix(p, N) if head == "norlund" else riesz_matrix(p, N)
    A.label = spec
    return A


def series_from_file(path: str | Path) -> tuple[PeriodicFunction, TrigSeries]:
    """JSON ``{"a0": .., "cosines": [..], "sines": [..]}``; the function is the series itself."""
    try:
        d = json.loads(Path(path).read_text())
        s = TrigSeries(d.get("a0", 0.0), d["cosines"], d["sines"])
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"function: {path}: {e}") from None
    return PeriodicFunction(s, f"file:{path}"), s


def _function_for(cfg: RunConfig):
    name = cfg.function
    if name is None:
        name = "triangle" if cfg.alpha == 1 else f"weierstrass-{cfg.alpha:g}"
    if name.startswith("file:"):
        return series_from_file(name[5:])
    try:
        e = exemplar(name)
    except KeyError:
        raise ConfigError(f"function: no default exemplar for alpha={cfg.alpha:g}; "
                          "pass --function") from None
    return e.function, e.series


# -- report serialization ----------------------------------------------------------

def _num(v) -> str:
    return format(float(v), ".12g")


def _jsonable(obj):
    if isinstance(obj, ConditionId):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def report_to_dict(report) -> dict:
    d = _jsonable(asdict(report))
    d["type"] = type(report).__name__
    return d


def report_from_dict(d: dict):
    d = dict(d)
    kind = d.pop("type")
    if kind == "ExperimentReport":
        d["rows"] = [ExperimentRow(**r) for r in d["rows"]]
        return ExperimentReport(**d)
    if kind == "ConditionReport":
        d["condition_id"] = ConditionId(d["condition_id"])
        d["witness"] = None if d["witness"] is None else tuple(d["witness"])
        d["degenerate"] = [tuple(x) for x in d["degenerate"]]
        return ConditionReport(**d)
    if kind == "KernelBoundReport":
        d["worst_case"] = tuple(d["worst_case"])
        d["per_index"] = {int(k): v for k, v in d["per_index"].items()}
        return KernelBoundReport(**d)
    raise ValueError(f"unknown report type {kind!r}")


def render_report(report, fmt: str) -> str:
    """Serialize one report or a list of reports of the same type."""
    many = isinstance(report, list)
    items = report if many else [report]
    if fmt == "json":
        payload = [report_to_dict(r) for r in items] if many else report_to_dict(report)
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    kinds = {type(r) for r in items}
    if kinds == {ExperimentReport}:
        w.writerow(["n", "sup_error", "bound", "ratio"])
        for r in items:
            for row in r.rows:
                w.writerow([row.n, _num(row.sup_error), _num(row.bound), _num(row.ratio)])
    elif kinds == {ConditionReport}:
        w.writerow(["condition_id", "beta", "n", "constant"])
        for r in items:
            for n, c in enumerate(r.per_row_constant):
                w.writerow([r.condition_id.value, _num(r.beta), n, _num(c)])
    elif kinds == {KernelBoundReport}:
        w.writerow(["label", "beta", "index", "max_normalized"])
        for r in items:
            for k in sorted(r.per_index):
                w.writerow([r.label, _num(r.beta), k, _num(r.per_index[k])])
    else:
        raise ValueError("CSV needs reports of a single type")
    return buf.getvalue()


def write_report(report, fmt: str, path: str | Path | None) -> None:
    """Write to ``path`` (stdout when None); OSError propagates (exit 3 in the CLI)."""
    text = render_report(report, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_report(path: str | Path):
    payload = json.loads(Path(path).read_text())
    if isinstance(payload, list):
        return [report_from_dict(d) for d in payload]
    return report_from_dict(payload)


# -- commands ------------------------------------------------------------------------

class StrictFailure(Exception):
    pass


def _cmd_check_matrix(cfg: RunConfig):
    A = matrix_from_spec(cfg.matrix, cfg.n_list[-1])
    reports = [
        cond.check_row_stochastic(A),
        cond.check_monotone(A, "nondecreasing"),
        cond.check_monotone(A, "nonincreasing"),
    ]
    for fn in (cond.hbvs_constant, cond.rbvs_constant):
        try:
            reports.append(fn(A))
        except PreconditionError as e:
            warnings.warn(str(e), stacklevel=2)
    for fn in (cond.beta_head_constant, cond.beta_rest_constant):
        try:
            reports.append(fn(A, cfg.beta))
        except PreconditionError as e:
            warnings.warn(str(e), stacklevel=2)
    return reports


def _cmd_kernel_bounds(cfg: RunConfig):
    t = np.pi * np.arange(1, cfg.t_points + 1) / cfg.t_points
    ns = cfg.n_list
    out = []
    if cfg.lemma in ("8", "all"):
        out.append(lemma8_check(cfg.beta, range(ns[-1] + 1) if len(ns) == 1 else ns, t))
    if cfg.lemma != "8":
        A = matrix_from_spec(cfg.matrix, ns[-1])
        if cfg.lemma in ("9-head", "all"):
            out.append(lemma9_head_check(A, cfg.beta, ns, t))
        if cfg.lemma in ("9-rest", "all"):
            out.append(lemma9_rest_check(A, cfg.beta, ns, t))
    return out


def _cmd_theorem(cfg: RunConfig):
    ns = cfg.n_list
    A = matrix_from_spec(cfg.matrix, ns[-1])
    f, s = _function_for(cfg)
    w = ModulusProfile.power(cfg.alpha)
    H = canonical_mediate(w)
    if cfg.strict:
        hyp = check_hypotheses(cfg.theorem, A, cfg.beta, w, H)
        if not hyp["all"]:
            bad = sorted(k for k, v in hyp.items() if k != "all" and not v)
            raise StrictFailure(f"{cfg.theorem} hypotheses fail for {A.label}: {bad}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return run_experiment(cfg.theorem, A, f, s, w, H, ns, cfg.grid_size, cfg.beta)


def _cmd_rate_table(cfg: RunConfig):
    ns = cfg.n_list
    p = weights_from_spec(cfg.weights, ns[-1])
    if cfg.strict:
        rep = cond.beta_head_constant(riesz_matrix(p, ns[-1]), cfg.beta)
        if not rep.holds_uniformly:
            raise StrictFailure(f"riesz:{cfg.weights} fails the weighted head condition")
    f, s = _function_for(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return corollary43_table(p, cfg.alpha, f, s, ns, cfg.beta, cfg.grid_size)


def _cmd_list_exemplars(cfg: RunConfig) -> str:
    items = [{"name": e.name, "alpha": e.alpha, "degree": e.series.N, "omega": e.profile.label}
             for e in exemplar_functions()]
    if cfg.format == "json":
        return json.dumps(items, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "alpha", "degree", "omega"])
    for it in items:
        w.writerow([it["name"], "" if it["alpha"] is None else _num(it["alpha"]),
                    it["degree"], it["omega"]])
    return buf.getvalue()


_DISPATCH = {
    "check-matrix": _cmd_check_matrix,
    "kernel-bounds": _cmd_kernel_bounds,
    "theorem": _cmd_theorem,
    "rate-table": _cmd_rate_table,
}


def run(cfg: RunConfig) -> int:
    try:
        if cfg.command == "list-exemplars":
            text = _cmd_list_exemplars(cfg)
            if cfg.output is None:
                sys.stdout.write(text)
            else:
                Path(cfg.output).write_text(text, encoding="utf-8")
        else:
            write_report(_DISPATCH[cfg.command](cfg), cfg.format, cfg.output)
    except ConfigError as e:
        print(f"summlab: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except StrictFailure as e:
        print(f"summlab: {e}", file=sys.stderr)
        return EXIT_STRICT
    except OSError as e:
        print(f"summlab: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as e:
        if not isinstance(e.__cause__, SystemExit):
            print(f"summlab: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
