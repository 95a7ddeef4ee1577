"""Command-line front end: ``janowski-lab {check,oracle,implication-sweep,bounds,membership}``.

Reports go to ``--out`` (or stdout), log text goes to stderr and the exit
code is 0 for an all-clear, 1 for a negative result and 2 for bad input.
Every report embeds the fully resolved run configuration; passing a report
back through ``--config`` reproduces it byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .conditions import (DeltaKind, DegenerateFormula, check_lemma, compute_gh,
                         corollary_delta, disagreement_flags)
from .lab import (CoefficientFileError, f_from_coefficients, implication_sweep, koebe,
                  normalized_f, read_coefficient_file, starlike_membership)
from .operators import LEMMAS, OperatorKind
from .oracle import OracleDomainError, OracleGrid, default_workers, verify_admissibility
from .params import DEFAULT_CHECK_RADIUS, ParameterError, Parameters

log = logging.getLogger("janowski_lab")

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2
COMMANDS = ("check", "oracle", "implication-sweep", "bounds", "membership")
PARAM_FLAGS = ("A", "B", "D", "E", "alpha", "lambda", "n", "mu")
PARAM_DEFAULTS = {"alpha": "1", "lambda": "1", "n": "1"}
DEFAULT_LAMBDAS = "0:0.9:0.1"


class InputError(Exception):
    """Bad flags, config or files; maps to exit code 2."""


# -- serialisation ------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    return format(x, ".17g")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# -- ranges -------------------------------------------------------------------

def parse_values(text: str, integer: bool = False) -> list:
    """A scalar, or ``start:stop:step`` meaning start, start+step, ... up to stop inclusive."""
    text = str(text).strip()
    conv = int if integer else float
    try:
        if ":" not in text:
            return [conv(text)]
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"expected a number or start:stop:step, got {text!r}") from None
    if not all(map(math.isfinite, (start, stop, step))) or step == 0 or (stop - start) / step < 0:
        raise InputError(f"range {text!r} is not a finite progression")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count > 100_000:
        raise InputError(f"range {text!r} has too many points")
    vals = [start + i * step for i in range(count)]
    if integer:
        if any(abs(v - round(v)) > 1e-9 for v in vals):
            raise InputError(f"range {text!r} must be integral")
        return [int(round(v)) for v in vals]
    # round away representation noise from the accumulated step
    return [float(f"{v:.12g}") for v in vals]


def expand_params(spec: dict):
    """Cartesian product of the parameter value lists; invalid combinations are skipped."""
    lists = [parse_values(spec[k], integer=(k == "n")) for k in PARAM_FLAGS]
    good, skipped = [], []
    for combo in itertools.product(*lists):
        raw = dict(zip(PARAM_FLAGS, combo))
        try:
            good.append(Parameters(raw["A"], raw["B"], raw["D"], raw["E"], raw["alpha"],
                                   raw["lambda"], raw["n"], raw["mu"]))
        except ParameterError as exc:
            skipped.append({"params": raw, "reason": str(exc)})
    return good, skipped


def _params_dict(P: Parameters) -> dict:
    d = P.as_dict()
    d["lambda"] = d.pop("lam")
    d["mu_prime"] = P.mu_prime
    return d


# -- config -------------------------------------------------------------------

def _lemmas(cfg) -> list:
    if cfg.get("operator"):
        return [OperatorKind(cfg["operator"]).lemma]
    lem = cfg.get("lemma") or "all"
    return list(LEMMAS) if lem == "all" else [lem]


def resolve_config(args) -> dict:
    """Everything that determines the report, in a JSON-ready dict."""
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        cfg = data.get("config", data)
        if not isinstance(cfg, dict) or cfg.get("command") != args.command:
            raise InputError(f"config {args.config} is not a {args.command!r} config")
        return cfg
    cmd = args.command
    cfg = {"command": cmd, "version": __version__}
    if cmd in ("check", "oracle", "implication-sweep"):
        params = {}
        for k in PARAM_FLAGS:
            v = getattr(args, k.replace("lambda", "lam"))
            if v is None:
                v = PARAM_DEFAULTS.get(k)
            if v is None:
                raise InputError(f"--{k} is required")
            params[k] = str(v)
        cfg["params"] = params
        cfg["lemma"] = args.lemma
        cfg["operator"] = args.operator
    if cmd == "oracle":
        cfg["grid"] = OracleGrid(args.grid_rho_max, args.grid_rho_steps, args.grid_sigma_depth,
                                 args.grid_sigma_steps, args.seed).as_dict()
    if cmd == "implication-sweep":
        cfg["trials"] = args.trials
        cfg["seed"] = args.seed
    if cmd == "bounds":
        cfg["lambda"] = args.lam or DEFAULT_LAMBDAS
        cfg["n"] = args.n or "1:3:1"
        cfg["mu_prime"] = args.mu_prime or "2"
    if cmd == "membership":
        cfg["A"], cfg["B"] = args.A, args.B
        if cfg["A"] is None or cfg["B"] is None:
            raise InputError("--A and --B are required")
        cfg["radius"] = args.radius
        cfg["function"] = _membership_function(args)
    cfg["format"] = args.format
    return cfg


def _membership_function(args) -> dict:
    if args.coeff_file:
        sample = _load_f(args.coeff_file)
        return {"source": "file", "coefficients": [[c.real, c.imag] for c in sample.coefficients]}
    if args.koebe:
        return {"source": "koebe"}
    return {"source": "identity"}


def _load_f(path):
    try:
        return read_coefficient_file(path, "f")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except CoefficientFileError as exc:
        raise InputError(str(exc)) from None


# -- commands -----------------------------------------------------------------

def _tuples(cfg):
    good, skipped = expand_params(cfg["params"])
    if not good:
        raise InputError("no valid parameter tuple: " + "; ".join(s["reason"] for s in skipped))
    for s in skipped:
        log.info("skipping %s: %s", s["params"], s["reason"])
    return good, skipped


def cmd_check(cfg):
    tuples, skipped = _tuples(cfg)
    results, ok = [], True
    for P in tuples:
        reports = [check_lemma(lem, P).as_dict() for lem in _lemmas(cfg)]
        ok &= all(r["verdict"] for r in reports)
        results.append({"params": _params_dict(P), "reports": reports})
    return {"results": results, "skipped": skipped}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_oracle(cfg):
    tuples, skipped = _tuples(cfg)
    grid = OracleGrid(**cfg["grid"])
    results, ok = [], True
    for P in tuples:
        for lem in _lemmas(cfg):
            kind = OperatorKind.from_lemma(lem)
            rep = verify_admissibility(kind, P, grid)
            verdict = check_lemma(lem, P).verdict
            ok &= rep.passed
            results.append({"params": _params_dict(P), "lemma": lem, "operator": kind.value,
                            "oracle": rep.as_dict(), "closed_form_verdict": verdict,
                            "agrees": (not verdict) or rep.passed,
                            "flags": list(disagreement_flags(lem, P))})
    return {"results": results, "skipped": skipped}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_implication_sweep(cfg):
    tuples, skipped = _tuples(cfg)
    jobs = [(P, lem) for P in tuples for lem in _lemmas(cfg)]

    def run(job):
        P, lem = job
        kind = OperatorKind.from_lemma(lem)
        res = implication_sweep(kind, P, cfg["trials"], cfg["seed"])
        return {"params": _params_dict(P), "lemma": lem, "operator": kind.value,
                "closed_form_verdict": check_lemma(lem, P).verdict, "sweep": res.as_dict()}

    workers = default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    found = sum(r["sweep"]["counts"]["counterexample"] for r in results)
    if found:
        log.warning("%d counterexample cases", found)
    return {"results": results, "skipped": skipped}, EXIT_NEGATIVE if found else EXIT_OK


def bounds_rows(cfg):
    lams = parse_values(cfg["lambda"])
    pairs = [(1, 2.0)] + [(n, mp) for n in parse_values(cfg["n"], integer=True)
                          for mp in parse_values(cfg["mu_prime"]) if (n, mp) != (1, 2.0)]
    rows = []
    for kind in DeltaKind:
        for n, mp in pairs:
            try:
                gh = compute_gh(n, mp)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            for lam in lams:
                try:
                    val = corollary_delta(kind, lam, gh.G, gh.H)
                except DegenerateFormula:
                    val = None
                except ValueError as exc:
                    raise InputError(str(exc)) from None
                rows.append({"kind": kind.value, "lambda": lam, "n": n, "mu_prime": mp,
                             "G": gh.G, "H": gh.H, "classical": (n, mp) == (1, 2.0),
                             "delta": val})
    return rows


def cmd_bounds(cfg):
    return {"rows": bounds_rows(cfg)}, EXIT_OK


def cmd_membership(cfg):
    fn = cfg["function"]
    if fn["source"] == "koebe":
        f = koebe()
    elif fn["source"] == "file":
        f = f_from_coefficients([complex(re, im) for re, im in fn["coefficients"]])
    else:
        f = normalized_f(1, 0.0)
    try:
        v = starlike_membership(f, cfg["A"], cfg["B"], cfg["radius"])
    except (ParameterError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    out = {"holds": v.holds, "worst_margin": v.worst_margin,
           "worst_point": [v.worst_point.real, v.worst_point.imag]}
    return out, EXIT_OK if v.holds else EXIT_NEGATIVE


HANDLERS = {"check": cmd_check, "oracle": cmd_oracle, "implication-sweep": cmd_implication_sweep,
            "bounds": cmd_bounds, "membership": cmd_membership}


def render(cfg, body) -> str:
    if cfg["format"] == "csv":
        if cfg["command"] != "bounds":
            raise InputError("csv output exists only for the bounds table")
        buf = io.StringIO()
        cols = ["kind", "lambda", "n", "mu_prime", "G", "H", "classical", "delta"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in body["rows"]:
            w.writerow([_fmt_float(r[c]) if isinstance(r[c], float) else
                        ("" if r[c] is None else r[c]) for c in cols])
        return buf.getvalue()
    return to_json({"config": cfg, **body}) + "\n"


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="janowski-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="rerun from a report (or bare config) JSON file")
        p.add_argument("--out", help="report path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("-v", "--verbose", action="store_true")

    def param_flags(p):
        for k in ("A", "B", "D", "E", "alpha"):
            p.add_argument(f"--{k}", help="value or start:stop:step")
        p.add_argument("--lambda", dest="lam", help="value or start:stop:step")
        p.add_argument("--n", help="value or start:stop:step")
        p.add_argument("--mu", help="value or start:stop:step")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--lemma", choices=LEMMAS + ("all",))
        g.add_argument("--operator", choices=[k.value for k in OperatorKind])

    p = sub.add_parser("check", help="closed-form sufficient conditions")
    param_flags(p)
    common(p)

    p = sub.add_parser("oracle", help="brute-force admissibility sweep")
    param_flags(p)
    d = OracleGrid()
    p.add_argument("--grid-rho-max", type=float, default=d.rho_max)
    p.add_argument("--grid-rho-steps", type=int, default=d.rho_steps)
    p.add_argument("--grid-sigma-depth", type=float, default=d.sigma_depth)
    p.add_argument("--grid-sigma-steps", type=int, default=d.sigma_steps)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("implication-sweep", help="randomised falsification of the implication")
    param_flags(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("bounds", help="subclass bounds over a lambda grid")
    p.add_argument("--lambda", dest="lam", help=f"lambda values (default {DEFAULT_LAMBDAS})")
    p.add_argument("--n", help="n values (default 1:3:1)")
    p.add_argument("--mu-prime", help="mu' values (default 2)")
    common(p)

    p = sub.add_parser("membership", help="z f'/f subordinate to (1+Az)/(1+Bz)?")
    p.add_argument("--A", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--radius", type=float, default=DEFAULT_CHECK_RADIUS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--coeff-file", help="coefficients of f, one 're im' per line from c_0")
    src.add_argument("--koebe", action="store_true", help="use z/(1-z)^2")
    common(p)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        cfg = resolve_config(args)
        log.info("running %s with %d worker(s)", cfg["command"], default_workers())
        body, code = HANDLERS[cfg["command"]](cfg)
        text = render(cfg, body)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (ParameterError, OracleDomainError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
