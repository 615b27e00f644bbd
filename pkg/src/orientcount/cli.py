"""Command-line front end.

Exit status: 0 on success, 1 on a usage or input error, 2 when two
computations of the same quantity disagree.
"""

from __future__ import annotations

import argparse
import math
import random
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import counting as ct
from .enumeration import DEFAULT_GUARD, EnumerationGuardError
from .factor_graph import GaugeError, gauge_trial
from .gaussian import GaussianRational
from .graph import GraphFormatError, Multigraph, generate, parse_edge_list, parse_graph6, is_regular
from .report import render
from .signatures import (
    c_vector,
    clement_matrix,
    krawtchouk_matrix,
    q_coefficients,
    quarter_pi_rotation,
    rotation_matrix,
    s_vector,
)

TARGETS = {
    "count": ("eulerian", "half-graphs"),
    "verify": ("eulerian", "half-graphs", "gauge", "duality", "schrijver", "rotation", "cubic-hg"),
    "matrix": ("krawtchouk", "clement", "rotation", "q", "s", "c"),
    "distribution": ("cubic",),
    "identity": ("cubic-hg", "duality"),
}


class UsageError(ValueError):
    pass


class Mismatch(Exception):
    def __init__(self, payload: dict):
        self.payload = payload
        super().__init__("verification mismatch")


_PI_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?pi(?:/(\d+))?$")


def parse_angle(text: str) -> tuple[float, int | None]:
    """Angle in radians plus the number of quarter turns when it is a multiple of pi/4."""
    s = text.strip().replace(" ", "").lower()
    m = _PI_RE.match(s)
    if m:
        sign, coef, den = m.groups()
        c = Fraction(coef or 1) / Fraction(den or 1)
        if sign == "-":
            c = -c
        quarter = c * 4
        return float(c) * math.pi, int(quarter) if quarter.denominator == 1 else None
    try:
        value = float(Fraction(s)) if "/" in s else float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    return value, 0 if value == 0 else None


def load_graph(args) -> Multigraph:
    if args.family and args.file:
        raise UsageError("use either --family or --file, not both")
    if args.family:
        return generate(args.family)
    if args.file:
        path = Path(args.file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
        if first.startswith(">>") or (first and len(first.split()) == 1):
            g = parse_graph6(first)
        else:
            g = parse_edge_list(text)
        return Multigraph(g.n, g.edges, name=path.stem)
    raise UsageError("this command needs a graph: --family NAME or --file PATH")


def _report_payload(rep: ct.CountReport) -> dict:
    out = {"graph": rep.graph, "method": rep.method, "values": rep.values}
    if rep.agreement is not None:
        out["agreement"] = rep.agreement
    if rep.bounds:
        out["bounds"] = rep.bounds
    if rep.checks:
        out["checks"] = rep.checks
    return out


def _random_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                            Fraction(rng.randint(-5, 5), rng.randint(1, 4)))


def cmd_count(args) -> dict:
    g = load_graph(args)
    if args.target == "eulerian":
        rep = ct.eulerian_report(g, args.guard, args.workers)
    else:
        rep = ct.half_graph_report(g, args.guard, args.workers)
    payload = _report_payload(rep)
    if not rep.ok:
        raise Mismatch(payload)
    return payload


def cmd_verify(args) -> dict:
    t = args.target
    if t == "eulerian":
        return cmd_count(args)
    if t == "half-graphs":
        # three computation paths plus the comparison with Eulerian orientations
        payload = cmd_count(args)
        dich = ct.eulerian_vs_halfgraphs(load_graph(args), args.guard, args.workers)
        payload["comparison"] = {**dich.values, **dich.checks}
        if not dich.ok:
            raise Mismatch(payload)
        return payload
    if t == "gauge":
        return _verify_gauge(args)
    if t == "duality":
        return _verify_duality(args)
    if t == "rotation":
        return _verify_rotation(args)
    if t == "cubic-hg":
        return cmd_identity(args)
    rep = ct.schrijver_report(load_graph(args), args.guard, args.workers)
    payload = _report_payload(rep)
    if not rep.ok:
        raise Mismatch(payload)
    return payload


def _verify_gauge(args) -> dict:
    rng = random.Random(args.seed)
    g = load_graph(args) if (args.family or args.file) else None
    inv_fail = comp_fail = 0
    for _ in range(args.trials):
        trial = gauge_trial(rng, g)
        inv_fail += not trial.invariant
        comp_fail += not trial.composition_ok
    payload = {"trials": args.trials, "seed": args.seed,
               "invariance_failures": inv_fail, "composition_failures": comp_fail,
               "match": inv_fail == 0 and comp_fail == 0}
    if not payload["match"]:
        raise Mismatch(payload)
    return payload


def _verify_duality(args) -> dict:
    g = load_graph(args)
    rng = random.Random(args.seed)
    failures = 0
    nonreal = 0
    for _ in range(args.trials):
        w = [[_random_gaussian(rng) for _ in range(d + 1)] for d in g.degrees()]
        res = ct.duality_check(g, w, guard=min(args.guard, 20))
        failures += not res.equal
        nonreal += bool(res.right.im) if isinstance(res.right, GaussianRational) else 0
    payload = {"graph": ct.graph_summary(g), "trials": args.trials, "seed": args.seed,
               "failures": failures, "match": failures == 0}
    if failures:
        raise Mismatch(payload)
    return payload


def _verify_rotation(args) -> dict:
    g = load_graph(args)
    d = is_regular(g)
    if d is None:
        raise UsageError("rotation invariance needs a regular graph")
    angle, quarter = parse_angle(args.t or "pi/4")
    rng = random.Random(args.seed)
    results = []
    for _ in range(args.trials):
        if quarter is not None and not args.float:
            x = [_random_gaussian(rng) for _ in range(d + 1)]
            res = ct.rotation_invariance(g, x, quarter_turns=quarter, guard=args.guard)
        else:
            x = [rng.uniform(-1, 1) for _ in range(d + 1)]
            res = ct.rotation_invariance(g, x, t=angle, guard=args.guard)
        results.append(res)
    payload = {"graph": ct.graph_summary(g), "angle": args.t or "pi/4",
               "exact": all(r.exact for r in results), "trials": args.trials,
               "failures": sum(not r.equal for r in results)}
    payload["match"] = payload["failures"] == 0
    if not payload["match"]:
        raise Mismatch(payload)
    return payload


def cmd_matrix(args) -> dict:
    t = args.target
    if args.d is None:
        raise UsageError("-d DEGREE is required")
    d = args.d
    if t == "clement":
        return {"d": d, "matrix": clement_matrix(d)}
    if t == "krawtchouk":
        k = krawtchouk_matrix(d)
        if args.float:
            return {"d": d, "matrix": k.as_float().tolist()}
        return {"d": d, "sqrt2_exponent": k.sqrt2_exponent, "matrix": [list(r) for r in k.entries]}
    if t == "rotation":
        angle, quarter = parse_angle(args.t or "0")
        if quarter is not None and not args.float:
            r = quarter_pi_rotation(d, quarter)
            return {"d": d, "angle": args.t or "0", "sqrt2_exponent": r.sqrt2_exponent,
                    "matrix": [list(x) for x in r.entries]}
        return {"d": d, "angle": args.t, "matrix": rotation_matrix(d, angle).as_float().tolist()}
    if t == "q":
        if args.k is None:
            raise UsageError("-k INDEX is required for q")
        return {"d": d, "k": args.k, "coefficients": list(q_coefficients(d, args.k).coeffs)}
    vec = s_vector(d) if t == "s" else c_vector(d)
    return {"d": d, "vector": list(vec.entries)}


def cmd_distribution(args) -> dict:
    g = load_graph(args)
    dist = ct.cubic_distribution(g, args.guard, args.workers)
    payload = {"graph": ct.graph_summary(g), "orientations": dist.orientations,
               "enumerated": dist.enumerated, "closed_form": dist.closed_form, "match": dist.match}
    if not dist.match:
        raise Mismatch(payload)
    return payload


def cmd_identity(args) -> dict:
    g = load_graph(args)
    if args.target == "duality":
        return _verify_duality(args)
    try:
        tau = Fraction(args.tau or "2")
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --tau {args.tau!r}") from None
    res = ct.cubic_hg_identity_check(g, tau, args.guard, args.workers)
    payload = {"graph": ct.graph_summary(g), "tau": res.tau, "t": res.tau ** 4,
               "a": res.a, "b": res.b,
               "orientation_side": res.orientation_side, "subgraph_side": res.subgraph_side,
               "F_at_ab": res.f_value, "a_n_plus_b_n": res.closed_form,
               "match": res.equal and res.closed_form_holds}
    if not payload["match"]:
        raise Mismatch(payload)
    return payload


COMMANDS = {
    "count": cmd_count,
    "verify": cmd_verify,
    "matrix": cmd_matrix,
    "distribution": cmd_distribution,
    "identity": cmd_identity,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orientcount",
                                description="Exact Eulerian-orientation and half-graph counting.")
    p.add_argument("verb", choices=sorted(COMMANDS))
    p.add_argument("target")
    p.add_argument("--family", help="named graph, e.g. K5, C6, K3,3, K2,2,2, petersen, C3+C3")
    p.add_argument("--file", help="edge-list file ('n m' header, then 'u v' lines) or graph6")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="refuse enumerations above 2^GUARD")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--float", action="store_true", help="use floating point rotations")
    p.add_argument("--tau", help="rational fourth root of t for the cubic identity")
    p.add_argument("-d", type=int, help="signature degree")
    p.add_argument("-k", type=int, help="eigen-form index for 'matrix q'")
    p.add_argument("-t", help="angle: pi/4, 3*pi/2, 0.3, ...")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    return p


_DEFAULT_TRIALS = {"gauge": 200, "duality": 20, "rotation": 20}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    fmt = args.format
    try:
        if args.target not in TARGETS[args.verb]:
            raise UsageError(f"unknown target {args.target!r} for {args.verb}; "
                             f"choose from {', '.join(TARGETS[args.verb])}")
        if args.trials is None:
            args.trials = _DEFAULT_TRIALS.get(args.target, 20)
        if args.workers < 1 or args.trials < 1:
            raise UsageError("--workers and --trials must be positive")
        payload = COMMANDS[args.verb](args)
    except Mismatch as exc:
        out.write(render(exc.payload, fmt))
        err.write("error: verification mismatch\n")
        return 2
    except ct.VerificationError as exc:
        err.write(f"internal error: {exc}\n")
        return 2
    except (UsageError, GraphFormatError, EnumerationGuardError, GaugeError,
            ct.PreconditionError, ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    out.write(render({"command": f"{args.verb} {args.target}", **payload}, fmt))
    return 0


def main() -> None:
    sys.exit(run())
