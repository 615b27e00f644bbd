"""Counting Eulerian orientations and half-graphs, two ways each.

Every closed-form evaluation of the subgraph counting polynomial
``F_G(x) = sum_{A subset E} prod_v x^v_{deg_A(v)}`` is paired with a
brute-force oracle that never touches the evaluation vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .enumeration import (
    DEFAULT_GUARD,
    StateSpace,
    check_guard,
    contract,
    gray_count,
    indegree_space,
    state_histogram,
    subgraph_space,
)
from .gaussian import GaussianRational, I, ZERO, format_gaussian
from .graph import Multigraph, is_bipartite, is_connected, is_regular
from .signatures import (
    SignatureVector,
    c_vector,
    krawtchouk_matrix,
    q_coefficients,
    quarter_pi_rotation,
    rotation_matrix,
    s_vector,
    schrijver_factor,
)


class PreconditionError(ValueError):
    """Input graph or weights do not satisfy an operation's requirements."""


class VerificationError(AssertionError):
    """Two computations of the same quantity disagree (an implementation bug)."""


WeightAssignment = Sequence[Sequence]


# core evaluations

def _check_loopless(g: Multigraph, what: str):
    if g.has_loops():
        raise PreconditionError(f"{what} is defined only for loop-free graphs")


def _check_even(g: Multigraph):
    odd = [v for v, d in enumerate(g.degrees()) if d % 2]
    if odd:
        raise PreconditionError(f"graph is not Eulerian: vertices {odd[:5]} have odd degree")


@lru_cache(maxsize=16)
def _histogram(g: Multigraph, kind: str, workers: int):
    deg = g.degrees()
    space = subgraph_space(g.n, g.edges, deg) if kind == "subgraph" else indegree_space(g.n, g.edges, deg)
    # the guard is enforced by callers; the cache must not bake one in
    keys, counts = state_histogram(space, guard=max(space.m, 0), workers=workers)
    return space, keys, counts


def subgraph_histogram(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1):
    """``(space, keys, counts)`` of subgraph degree vectors over all edge subsets."""
    check_guard(g.m, guard, "subset enumeration")
    return _histogram(g, "subgraph", workers)


def orientation_histogram(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1):
    """``(space, keys, counts)`` of in-degree vectors over all orientations."""
    _check_loopless(g, "orientation enumeration")
    check_guard(g.m, guard, "orientation enumeration")
    return _histogram(g, "orientation", workers)


def _weights(g: Multigraph, w: WeightAssignment) -> list[SignatureVector]:
    deg = g.degrees()
    if len(w) != g.n:
        raise PreconditionError(f"expected {g.n} signature vectors, got {len(w)}")
    out = []
    for v, vec in enumerate(w):
        sv = SignatureVector.of(vec)
        if len(sv) != deg[v] + 1:
            raise PreconditionError(f"vertex {v} has degree {deg[v]} but its vector has length {len(sv)}")
        out.append(sv)
    return out


def subgraph_poly_eval(g: Multigraph, w: WeightAssignment, guard: int = DEFAULT_GUARD, workers: int = 1):
    """``F_G`` at per-vertex signature vectors; exact unless a weight is a float."""
    vectors = _weights(g, w)
    space, keys, counts = subgraph_histogram(g, guard, workers)
    return contract(space, keys, counts, [v.entries for v in vectors])


def uniform_weights(g: Multigraph, vector: Sequence) -> list[SignatureVector]:
    """The same vector at every vertex (all vertices must share its degree)."""
    vec = SignatureVector.of(vector)
    for v, d in enumerate(g.degrees()):
        if d != vec.d:
            raise PreconditionError(f"vertex {v} has degree {d}, vector has degree {vec.d}")
    return [vec] * g.n


def _oriented_weights(g: Multigraph, y) -> list[list]:
    deg = g.degrees()
    if len(y) != g.n:
        raise PreconditionError(f"expected {g.n} oriented-degree maps, got {len(y)}")
    out = []
    for v, (d, yv) in enumerate(zip(deg, y)):
        if isinstance(yv, Mapping):
            bad = [k for k in yv if abs(k) > d or (d - k) % 2]
            if bad:
                raise PreconditionError(f"vertex {v}: oriented degrees {bad} impossible at degree {d}")
            col = [yv.get(d - 2 * j, 0) for j in range(d + 1)]
        else:
            if len(yv) != d + 1:
                raise PreconditionError(f"vertex {v}: expected {d + 1} values ordered by oriented degree")
            # sequence ordered -d, -d+2, ..., d; in-degree j has oriented degree d - 2j
            col = [yv[d - j] for j in range(d + 1)]
        out.append([x if isinstance(x, (float, complex)) else GaussianRational.coerce(x) for x in col])
    return out


def orientation_sum(g: Multigraph, y, guard: int = DEFAULT_GUARD, workers: int = 1):
    """``sum over orientations O of prod_v y_v[d_O(v)]`` with ``d_O = out - in``.

    ``y[v]`` is a mapping from oriented degree to value (missing keys are 0)
    or a sequence ordered by oriented degree ``-deg, -deg+2, ..., deg``.
    """
    weights = _oriented_weights(g, y)
    space, keys, counts = orientation_histogram(g, guard, workers)
    return contract(space, keys, counts, weights)


def _as_integer(z: GaussianRational, what: str) -> int:
    if not z.is_integer():
        raise VerificationError(f"{what} evaluated to the non-integer {format_gaussian(z)}")
    return int(z.re)


# Eulerian orientations

def count_eulerian_bruteforce(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> int:
    """Walk every orientation and count those with in-degree = out-degree everywhere."""
    _check_even(g)
    _check_loopless(g, "Eulerian orientation counting")
    check_guard(g.m, guard, "orientation enumeration")
    deg = g.degrees()
    return gray_count(indegree_space(g.n, g.edges, deg), [d // 2 for d in deg], guard, workers)


def eulerian_weights(g: Multigraph) -> list[SignatureVector]:
    return [s_vector(d) for d in g.degrees()]


def half_graph_weights(g: Multigraph) -> list[SignatureVector]:
    return [c_vector(d) for d in g.degrees()]


def count_eulerian_eval(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> int:
    """``F_G`` at the per-vertex s-vectors."""
    _check_even(g)
    _check_loopless(g, "Eulerian orientation counting")
    value = subgraph_poly_eval(g, eulerian_weights(g), guard, workers)
    return _as_integer(value, "F_G(s)")


# half-graphs

def count_half_graphs_bruteforce(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> int:
    """Walk every edge subset and count those with half the degree at every vertex."""
    _check_even(g)
    check_guard(g.m, guard, "subset enumeration")
    deg = g.degrees()
    return gray_count(subgraph_space(g.n, g.edges, deg), [d // 2 for d in deg], guard, workers)


def count_half_graphs_eval(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> int:
    """``F_G`` at the per-vertex c-vectors."""
    _check_even(g)
    value = subgraph_poly_eval(g, half_graph_weights(g), guard, workers)
    return _as_integer(value, "F_G(c)")


def count_half_graphs_krawtchouk(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> int:
    """Regular graphs only: ``F_G`` at the middle column of the Krawtchouk matrix."""
    _check_even(g)
    d = is_regular(g)
    if d is None:
        raise PreconditionError("Krawtchouk-column evaluation needs a regular graph")
    column = [GaussianRational(x) for x in krawtchouk_matrix(d).normalized().column(d // 2)]
    value = subgraph_poly_eval(g, [column] * g.n, guard, workers)
    return _as_integer(value, "F_G(R e_{d/2})")


# reports

def graph_summary(g: Multigraph) -> dict:
    bip, _ = is_bipartite(g)
    return {
        "name": g.label(),
        "n": g.n,
        "m": g.m,
        "degrees": g.degrees(),
        "regular": is_regular(g),
        "bipartite": bip,
        "connected": is_connected(g),
    }


@dataclass
class CountReport:
    graph: dict
    method: str
    values: dict = field(default_factory=dict)
    agreement: bool | None = None
    bounds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.agreement is not False and all(self.checks.values())


def eulerian_report(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> CountReport:
    ev = count_eulerian_eval(g, guard, workers)
    bf = count_eulerian_bruteforce(g, guard, workers)
    return CountReport(graph_summary(g), "both", {"evaluation": ev, "brute_force": bf}, ev == bf)


def half_graph_report(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> CountReport:
    values = {
        "evaluation": count_half_graphs_eval(g, guard, workers),
        "brute_force": count_half_graphs_bruteforce(g, guard, workers),
    }
    if is_regular(g) is not None:
        values["krawtchouk"] = count_half_graphs_krawtchouk(g, guard, workers)
    agree = len(set(values.values())) == 1
    return CountReport(graph_summary(g), "both", values, agree)


def schrijver_bound(g: Multigraph) -> Fraction:
    _check_even(g)
    return math.prod((schrijver_factor(d) for d in g.degrees()), start=Fraction(1))


def schrijver_report(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> CountReport:
    """Eulerian count against Schrijver's bound and its doubled form."""
    _check_even(g)
    eps = count_eulerian_eval(g, guard, workers)
    bound = schrijver_bound(g)
    s = eulerian_weights(g)
    deg = g.degrees()
    empty_term = math.prod((v[0].re for v in s), start=Fraction(1))
    full_term = math.prod((v[d].re for v, d in zip(s, deg)), start=Fraction(1))
    checks = {
        "nonnegative_terms": all(x.is_real() and x.re >= 0 for v in s for x in v),
        "empty_term_is_bound": empty_term == bound,
        "full_term_is_bound": full_term == bound,
        "at_least_bound": eps >= bound,
    }
    if g.m:
        checks["at_least_twice_bound"] = eps >= 2 * bound
    return CountReport(
        graph_summary(g), "evaluation", {"eulerian_orientations": eps},
        None, {"schrijver": bound, "twice_schrijver": 2 * bound,
               "equality_at_twice": bool(g.m) and eps == 2 * bound},
        checks,
    )


def eulerian_vs_halfgraphs(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> CountReport:
    """Compare the two counts; equality must coincide with bipartiteness."""
    eps = count_eulerian_bruteforce(g, guard, workers)
    h = count_half_graphs_bruteforce(g, guard, workers)
    bip, _ = is_bipartite(g)
    relation = "equal" if eps == h else ("strict" if eps > h else "reversed")
    checks = {"eulerian_at_least_half": eps >= h, "equality_iff_bipartite": (eps == h) == bip}
    return CountReport(graph_summary(g), "brute-force",
                       {"eulerian_orientations": eps, "half_graphs": h, "relation": relation},
                       None, {}, checks)


# duality

@dataclass
class DualityResult:
    left: object
    right: object
    equal: bool


def duality_check(g: Multigraph, w: WeightAssignment, guard: int = 20, workers: int = 1) -> DualityResult:
    """Subgraph sum vs. ``2^-m`` times the orientation sum of eigen-forms."""
    _check_loopless(g, "the orientation side of duality")
    check_guard(g.m, guard, "duality check")
    vectors = _weights(g, w)
    y = []
    for v, d in enumerate(g.degrees()):
        y.append({k: q_coefficients(d, k)(vectors[v].entries) for k in range(-d, d + 1, 2)})
    left = subgraph_poly_eval(g, vectors, guard, workers)
    right = orientation_sum(g, y, guard, workers)
    if isinstance(right, GaussianRational):
        right = right * Fraction(1, 2 ** g.m)
        equal = left == right
    else:
        right = right / 2 ** g.m
        equal = abs(complex(left) - right) <= 1e-9 * (1 + abs(right))
    return DualityResult(left, right, equal)


# rotation invariance

@dataclass
class RotationResult:
    original: object
    rotated: object
    equal: bool
    exact: bool


def rotation_invariance(g: Multigraph, x: Sequence, t: float | None = None,
                        quarter_turns: int | None = None, guard: int = DEFAULT_GUARD,
                        tolerance: float = 1e-9) -> RotationResult:
    """``F_G(R_t x)`` against ``F_G(x)`` for a regular graph.

    With ``quarter_turns = j`` the rotation is by ``j*pi/4`` and, for exact
    ``x``, the comparison is exact: a ``sqrt(2)`` scale on the matrix comes
    out of the degree-``n`` homogeneous ``F_G`` as ``2**(e*n/2)``.
    """
    d = is_regular(g)
    if d is None:
        raise PreconditionError("rotation invariance applies to regular graphs")
    vec = SignatureVector.of(x)
    if vec.d != d:
        raise PreconditionError(f"vector has degree {vec.d}, graph is {d}-regular")
    base = subgraph_poly_eval(g, [vec] * g.n, guard)
    if quarter_turns is not None and vec.is_exact():
        r = quarter_pi_rotation(d, quarter_turns)
        ints = [[GaussianRational(e) for e in row] for row in r.entries]
        y = [sum((a * b for a, b in zip(row, vec.entries) if a and b), ZERO) for row in ints]
        rotated = subgraph_poly_eval(g, [y] * g.n, guard)
        e_n = r.sqrt2_exponent * g.n
        assert e_n % 2 == 0
        rotated = rotated * (Fraction(2) ** (e_n // 2))
        return RotationResult(base, rotated, base == rotated, True)
    angle = t if t is not None else quarter_turns * math.pi / 4
    y = list(rotation_matrix(d, angle).as_float() @ [complex(v) for v in vec.entries])
    rotated = subgraph_poly_eval(g, [y] * g.n, guard)
    base_c = complex(base)
    ok = abs(complex(rotated) - base_c) <= tolerance * (1 + abs(base_c))
    return RotationResult(base_c, complex(rotated), ok, False)


# cubic graphs

def _check_cubic(g: Multigraph):
    if g.has_loops():
        raise PreconditionError("cubic statements need a loop-free graph")
    if is_regular(g) != 3 or g.n == 0:
        raise PreconditionError("graph is not 3-regular")
    if not is_connected(g):
        raise PreconditionError("graph is not connected")


def cubic_closed_form(n: int, k: int) -> Fraction:
    """Probability that (#sources - #sinks) equals ``k`` for a connected cubic graph on ``n`` vertices."""
    j = n // 2 - 2 * k
    if j < 0 or j > n:
        return Fraction(0)
    return Fraction(math.comb(n, j), 2 ** (n - 1))


@dataclass
class CubicDistribution:
    n: int
    enumerated: dict[int, Fraction]
    closed_form: dict[int, Fraction]
    orientations: int

    @property
    def match(self) -> bool:
        keys = set(self.enumerated) | set(self.closed_form)
        return all(self.enumerated.get(k, 0) == self.closed_form.get(k, 0) for k in keys)


def cubic_distribution(g: Multigraph, guard: int = DEFAULT_GUARD, workers: int = 1) -> CubicDistribution:
    """Exact law of (vertices with out-degree 3) - (vertices with in-degree 3)."""
    _check_cubic(g)
    space, keys, counts = orientation_histogram(g, guard, workers)
    states = space.decode(keys)
    diff = (states == 0).sum(axis=1) - (states == 3).sum(axis=1)
    tally: dict[int, int] = {}
    for k, c in zip(diff.tolist(), counts.tolist()):
        tally[k] = tally.get(k, 0) + c
    total = 2 ** g.m
    enumerated = {k: Fraction(c, total) for k, c in sorted(tally.items())}
    span = g.n // 4
    closed = {k: cubic_closed_form(g.n, k) for k in range(-span, span + 1)}
    closed = {k: p for k, p in closed.items() if p}
    return CubicDistribution(g.n, enumerated, closed, total)


@dataclass
class CubicIdentityResult:
    tau: Fraction
    orientation_side: GaussianRational
    subgraph_side: GaussianRational
    f_value: GaussianRational
    closed_form: GaussianRational
    a: GaussianRational
    b: GaussianRational

    @property
    def equal(self) -> bool:
        return self.orientation_side == self.subgraph_side

    @property
    def closed_form_holds(self) -> bool:
        return self.f_value == self.closed_form


def cubic_hg_identity_check(g: Multigraph, tau, guard: int = DEFAULT_GUARD, workers: int = 1) -> CubicIdentityResult:
    """``H_G(1/t, 1, 1, t)`` against ``2^(3n/2) F_G(a, 0, 0, b)`` with ``t = tau^4``."""
    _check_cubic(g)
    tau = Fraction(tau)
    if tau == 0:
        raise PreconditionError("tau must be non-zero")
    t = tau ** 4
    a = GaussianRational((tau + 1 / tau) / 2)
    b = GaussianRational(0, (tau - 1 / tau) / 2)
    y = [{-3: 1 / t, -1: 1, 1: 1, 3: t}] * g.n
    h = orientation_sum(g, y, guard, workers)
    f = subgraph_poly_eval(g, [[a, ZERO, ZERO, b]] * g.n, guard, workers)
    scaled = f * 2 ** g.m
    closed = a ** g.n + b ** g.n
    return CubicIdentityResult(tau, h, scaled, f, closed, a, b)
