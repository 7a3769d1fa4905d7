"""Command-line front end.

Exit codes: 0 success, 1 domain-level rejection, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

from .awrel import aw_scalars, closed_scalars, verify_aw
from .classify import classify_type
from .errors import (
    ConditionsViolated,
    DegreeLimitExceeded,
    EigenvalueMismatch,
    InconsistentScalars,
    LeonardError,
    MissingC,
    NotALeonardPair,
    NotInFamily,
    ParseError,
    ZeroC,
)
from .exactmat import determinant
from .expr import parse_scalar
from .lbtd import (
    LBTDPair,
    build,
    check_conditions,
    has_lbtd_form,
    parameter_array_of,
    recover_params,
    theta_star_of,
    verify_leonard_pair,
)
from .params import ClosedFormParams, split_sequences_of
from .qfield import QuadExtElement, RationalFunction

SUBCOMMANDS = ("construct", "verify", "recover", "classify", "aw-check", "split", "conditions")
SCALAR_FLAGS = ("a", "a_prime", "b", "b_prime", "c", "alpha", "alpha_star", "xi")

DOMAIN_ERRORS = (ConditionsViolated, NotInFamily, NotALeonardPair, EigenvalueMismatch,
                 InconsistentScalars)
INPUT_ERRORS = (ParseError, MissingC, ZeroC, DegreeLimitExceeded, ValueError, KeyError,
                TypeError, json.JSONDecodeError)


class UsageError(Exception):
    pass


@dataclass
class Report:
    """Outcome of one request: exit code, JSON payload and text rendering."""

    code: int
    payload: object
    text: list[str] = field(default_factory=list)


# rendering

def jsonable(x):
    if isinstance(x, (RationalFunction, QuadExtElement)):
        return x.to_json()
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def _fmt(x) -> str:
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _aligned(rows: list[tuple[str, object]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    out = []
    for key, val in rows:
        s = str(val)
        if "\n" in s:
            out.append(f"{key}:")
            out.extend("  " + line for line in s.splitlines())
        else:
            out.append(f"{key.ljust(width)} : {_fmt(val)}")
    return out


def rejection(exc: Exception) -> Report:
    payload = {"status": "rejected", "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ConditionsViolated):
        payload["violations"] = [v.to_json() for v in exc.violations]
    if isinstance(exc, NotALeonardPair):
        payload["axiom"] = exc.axiom
    if isinstance(exc, NotInFamily):
        payload["step"] = exc.step
    rows = [("status", "rejected"), ("error", type(exc).__name__), ("message", str(exc))]
    for v in payload.get("violations", []):
        rows.append(("violation", f"{v['condition']} ({v['detail']})"))
    return Report(1, payload, _aligned(rows))


# request decoding

def params_from_values(d, values: dict) -> ClosedFormParams:
    """ClosedFormParams from a mapping of flag names to strings or numbers."""
    if d is None:
        raise UsageError("--d is required")
    try:
        d = int(d)
    except (TypeError, ValueError):
        raise UsageError(f"--d must be an integer, got {d!r}") from None
    if d < 1:
        raise UsageError("--d must be at least 1")
    kw = {}
    for name in SCALAR_FLAGS:
        v = values.get(name)
        if v is not None:
            kw[name] = parse_scalar(v)
    for name in ("a", "a_prime"):
        if name not in kw:
            raise UsageError(f"--{name.replace('_', '-')} is required")
    return ClosedFormParams(d=d, **kw)


def _load_json(path: str):
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _pair_from_args(args) -> LBTDPair:
    if args.input:
        return LBTDPair.from_json(_load_json(args.input))
    cf = _params(args)
    if cf.c is None:
        raise UsageError("--c is required to construct a pair")
    return build(cf)


def _params(args) -> ClosedFormParams:
    return params_from_values(args.d, {k: getattr(args, k) for k in SCALAR_FLAGS})


def _theta_star_for(pair: LBTDPair, args) -> tuple:
    if getattr(args, "theta_star", None):
        return tuple(parse_scalar(s) for s in args.theta_star.split(","))
    if pair.provenance is None:
        raise UsageError("verify needs --theta-star when the pair has no provenance")
    return theta_star_of(pair.provenance)


# subcommands

def cmd_construct(args) -> Report:
    cf = _params(args)
    if cf.c is None:
        raise UsageError("--c is required to construct a pair")
    pair = build(cf)
    rows = [("d", cf.d), ("A", pair.A), ("A*", pair.Astar)]
    return Report(0, pair.to_json(), _aligned(rows))


def cmd_conditions(args) -> Report:
    cf = _params(args)
    if cf.c is None:
        raise UsageError("--c is required to check the conditions")
    bad = check_conditions(cf)
    if bad:
        return rejection(ConditionsViolated(bad))
    return Report(0, {"status": "valid", "violations": []}, ["status : valid"])


def cmd_verify(args) -> Report:
    pair = _pair_from_args(args)
    ts = _theta_star_for(pair, args)
    cert = verify_leonard_pair(pair, ts)
    payload = {"status": "certified", "d": pair.d,
               "theta_orderings": jsonable(cert.theta_orderings),
               "theta_star_orderings": jsonable(cert.theta_star_orderings)}
    rows = [("status", "certified"), ("theta", list(cert.theta_orderings[0])),
            ("theta*", list(cert.theta_star_orderings[0])),
            ("orderings", "given and reversed, on both sides")]
    return Report(0, payload, _aligned(rows))


def cmd_recover(args) -> Report:
    pair = _pair_from_args(args)
    res = recover_params(pair)
    payload = res.to_json()
    rows = [("q_inverted", res.q_inverted), ("alpha", res.alpha), ("a", res.a),
            ("a_prime", res.a_prime), ("c", res.c), ("alpha_star", res.alpha_star),
            ("b+b'", res.b_plus_bprime), ("bb'", res.b_times_bprime), ("xi", res.xi),
            ("b_split", "none" if res.b_split is None else list(res.b_split))]
    return Report(0, payload, _aligned(rows))


def cmd_classify(args) -> Report:
    if args.input:
        res = recover_params(LBTDPair.from_json(_load_json(args.input)))
        a, ap, xi = res.a, res.a_prime, res.xi
        if res.b_split_rational:
            b, bp = res.b_split
        else:
            # an irrational pair of roots has bb' != 0, so both are nonzero;
            # only the zero pattern matters here
            b, bp = 1, 1
    else:
        cf = _params(args)
        a, ap, b, bp = cf.a, cf.a_prime, cf.b, cf.b_prime
        if cf.xi is None and cf.c is None:
            raise UsageError("classify needs --xi or --c")
        xi = cf.with_xi().xi
    kind = classify_type(a, ap, b, bp, xi)
    lbtd = has_lbtd_form(a, ap, b, bp, xi)
    payload = {"type": kind.value, "has_lbtd_form": lbtd}
    return Report(0, payload, _aligned([("type", kind.value), ("has_lbtd_form", lbtd)]))


def cmd_split(args) -> Report:
    cf = _params(args)
    pa = parameter_array_of(cf)
    pair = build(cf)
    vp, ph = split_sequences_of(pair.A, pair.Astar, pa.theta, pa.theta_star)
    agree = vp == pa.varphi and ph == pa.phi
    payload = {"parameter_array": pa.to_json(), "matches_matrices": agree}
    rows = [("theta", list(pa.theta)), ("theta*", list(pa.theta_star)),
            ("varphi", list(pa.varphi)), ("phi", list(pa.phi)),
            ("matches_matrices", agree)]
    return Report(0 if agree else 1, payload, _aligned(rows))


def cmd_aw_check(args) -> Report:
    cf = _params(args)
    pa = parameter_array_of(cf)
    pair = build(cf)
    s = aw_scalars(pa)
    ok = verify_aw(pair.A, pair.Astar, s)
    payload = {"scalars": s.to_json(), "relations_hold": ok}
    rows = [(k, getattr(s, k)) for k in ("beta", "gamma", "gamma_star", "rho", "rho_star",
                                         "omega", "eta", "eta_star")]
    rows.append(("relations_hold", ok))
    if not cf.alpha and not cf.alpha_star:
        closed = closed_scalars(cf) == s
        payload["closed_forms_agree"] = closed
        rows.append(("closed_forms_agree", closed))
        ok = ok and closed
    det_ok = determinant(pair.Astar) == reduce(lambda u, v: u * v, pa.theta_star)
    payload["det_identity"] = det_ok
    rows.append(("det_identity", det_ok))
    return Report(0 if ok and det_ok else 1, payload, _aligned(rows))


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "recover": cmd_recover,
    "classify": cmd_classify,
    "aw-check": cmd_aw_check,
    "split": cmd_split,
    "conditions": cmd_conditions,
}


def execute(args) -> Report:
    try:
        return COMMANDS[args.command](args)
    except DOMAIN_ERRORS as exc:
        return rejection(exc)
    except UsageError as exc:
        return Report(2, {"status": "error", "message": str(exc)}, [f"error : {exc}"])
    except INPUT_ERRORS as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return Report(2, {"status": "error", "message": msg}, [f"error : {msg}"])
    except LeonardError as exc:
        return rejection(exc)


# grid mode

def _grid_item(job) -> tuple[int, object, list[str]]:
    command, entry = job
    ns = argparse.Namespace(command=command, input=None, theta_star=entry.get("theta_star"),
                            d=entry.get("d"),
                            **{k: (None if entry.get(k) is None else str(entry[k]))
                               for k in SCALAR_FLAGS})
    rep = execute(ns)
    return rep.code, jsonable(rep.payload), rep.text


def run_grid(command: str, entries: list, jobs: int) -> Report:
    work = [(command, e) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_grid_item, work))
    else:
        results = [_grid_item(w) for w in work]
    code = max((r[0] for r in results), default=0)
    payload = [{"index": i, "exit": r[0], "result": r[1]} for i, r in enumerate(results)]
    text = []
    for i, r in enumerate(results):
        text.append(f"[{i}] exit {r[0]}")
        text.extend("    " + line for line in r[2])
    return Report(code, payload, text)


# entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leonard", description=(
        "Construct, certify and decompose LB-TD Leonard pairs over Q(q). "
        "Scalars accept integers, p/q and expressions in q such as 'q^2 - 1/q'."))
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--d", type=str)
        for flag in SCALAR_FLAGS:
            p.add_argument("--" + flag.replace("_", "-"), dest=flag, type=str)
        p.add_argument("--input", help="pair JSON file ('-' for stdin)")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--theta-star", dest="theta_star",
                       help="comma-separated eigenvalues of A* (verify only)")
        p.add_argument("--grid", help="JSON list of parameter objects to run in batch")
        p.add_argument("--jobs", type=int, default=1)
    return parser


def render(rep: Report, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(rep.text) + "\n"
    return json.dumps(jsonable(rep.payload), indent=2) + "\n"


VALUE_FLAGS = {"--" + f.replace("_", "-") for f in SCALAR_FLAGS} | {"--d", "--theta-star"}


def attach_values(argv: list[str]) -> list[str]:
    """Join scalar flags to their values so argparse accepts "--b -q" and "--a -5/2"."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(attach_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.grid:
        try:
            entries = _load_json(args.grid)
            if not isinstance(entries, list):
                raise UsageError("--grid file must hold a JSON list")
        except (UsageError, json.JSONDecodeError) as exc:
            rep = Report(2, {"status": "error", "message": str(exc)}, [f"error : {exc}"])
        else:
            rep = run_grid(args.command, entries, max(1, args.jobs))
    else:
        rep = execute(args)
    out = render(rep, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
