"""Normal factor graphs, their partition function and gauge transformations.

Argument order of a local function is the incidence order at its vertex:
edges in id order, with a loop occupying two consecutive slots.  Every
table entry is a ``GaussianRational``.

Gauges whose defining product is ``2**k`` times the identity (instead of
the identity) are allowed; the power of two is carried as an integer
exponent so no irrational scalar is ever stored.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .enumeration import DEFAULT_GUARD, check_guard
from .gaussian import GaussianRational, I, ONE, ZERO
from .graph import Multigraph

Matrix = tuple[tuple[GaussianRational, ...], ...]


class GaugeError(ValueError):
    pass


@dataclass(frozen=True)
class LocalFunction:
    arity: int
    q: int
    table: tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.table) != self.q ** self.arity:
            raise ValueError(f"table has {len(self.table)} entries, expected {self.q}^{self.arity}")

    @classmethod
    def from_callable(cls, arity: int, q: int, fn: Callable[[tuple[int, ...]], object]) -> "LocalFunction":
        table = tuple(GaussianRational.coerce(fn(args))
                      for args in itertools.product(range(q), repeat=arity))
        return cls(arity, q, table)

    @classmethod
    def symmetric(cls, values: Sequence) -> "LocalFunction":
        """Binary function whose value depends only on the number of ones."""
        vals = [GaussianRational.coerce(x) for x in values]
        return cls.from_callable(len(vals) - 1, 2, lambda a: vals[sum(a)])

    def index(self, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.q + a
        return idx

    def __call__(self, *args: int) -> GaussianRational:
        return self.table[self.index(args)]


@dataclass(frozen=True)
class NormalFactorGraph:
    """``g`` with one local function per vertex.

    ``log2_scale`` records that the raw partition function equals
    ``2**log2_scale`` times that of the graph the gauges started from.
    """

    g: Multigraph
    q: int
    functions: tuple[LocalFunction, ...]
    log2_scale: int = 0

    def __post_init__(self):
        if len(self.functions) != self.g.n:
            raise ValueError("need exactly one local function per vertex")
        for v, (f, d) in enumerate(zip(self.functions, self.g.degrees())):
            if f.arity != d:
                raise ValueError(f"vertex {v}: arity {f.arity} != degree {d}")
            if f.q != self.q:
                raise ValueError(f"vertex {v}: alphabet {f.q} != {self.q}")


def symmetric_factor_graph(g: Multigraph, vectors: Sequence[Sequence]) -> NormalFactorGraph:
    """Binary factor graph with a symmetric signature at every vertex."""
    fns = tuple(LocalFunction.symmetric(vec) for vec in vectors)
    return NormalFactorGraph(g, 2, fns)


def partition_function(h: NormalFactorGraph, guard: int = DEFAULT_GUARD) -> GaussianRational:
    """Sum over all edge assignments of the product of local functions."""
    m = h.g.m
    check_guard(m * math.log2(h.q) if h.q > 1 else 0, guard, "partition function")
    inc = h.g.incidence()
    total = ZERO
    for sigma in itertools.product(range(h.q), repeat=m):
        term = ONE
        for f, slots in zip(h.functions, inc):
            val = f.table[f.index([sigma[e] for e in slots])]
            if not val:
                term = ZERO
                break
            term = term * val
        if term:
            total = total + term
    return total


# gauges

def _as_matrix(rows) -> Matrix:
    return tuple(tuple(GaussianRational.coerce(x) for x in row) for row in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise GaugeError(f"inner dimensions differ: {len(a[0])} vs {len(b)}")
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in cols)
                 for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def identity(q: int, scale=1) -> Matrix:
    s = GaussianRational.coerce(scale)
    return tuple(tuple(s if i == j else ZERO for j in range(q)) for i in range(q))


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the Gaussian rationals."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise GaugeError("only square matrices are invertible")
    work = [list(row) + list(idr) for row, idr in zip(a, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise GaugeError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].reciprocal()
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


@dataclass(frozen=True)
class GaugePair:
    """Per-edge matrices ``at_tail[e]`` (used at ``u``) and ``at_head[e]`` (used at ``v``).

    Each is ``|Y| x |X|`` and ``at_tail[e]^T @ at_head[e] == 2**log2_scale * Id``.
    """

    at_tail: tuple[Matrix, ...]
    at_head: tuple[Matrix, ...]
    log2_scale: int = 0

    def __post_init__(self):
        if len(self.at_tail) != len(self.at_head):
            raise GaugeError("tail and head lists differ in length")
        tail = tuple(_as_matrix(m) for m in self.at_tail)
        head = tuple(_as_matrix(m) for m in self.at_head)
        object.__setattr__(self, "at_tail", tail)
        object.__setattr__(self, "at_head", head)
        target = None
        for e, (gt, gh) in enumerate(zip(tail, head)):
            shape = (len(gt), len(gt[0]))
            if (len(gh), len(gh[0])) != shape:
                raise GaugeError(f"edge {e}: matrix shapes differ")
            if target is None or len(target) != shape[1]:
                target = identity(shape[1], Fraction(2) ** self.log2_scale)
            if mat_mul(transpose(gt), gh) != target:
                raise GaugeError(f"edge {e}: G_uv^T G_vu is not 2^{self.log2_scale} * Id")

    @property
    def m(self) -> int:
        return len(self.at_tail)

    def alphabets(self) -> tuple[int, int]:
        """``(|Y|, |X|)``."""
        gt = self.at_tail[0]
        return len(gt), len(gt[0])

    def inverse(self) -> "GaugePair":
        """Per-edge inverses; composing with it gives the identity gauge."""
        return GaugePair(tuple(inverse(m) for m in self.at_tail),
                         tuple(inverse(m) for m in self.at_head), -self.log2_scale)


def identity_gauge(m: int, q: int) -> GaugePair:
    return GaugePair((identity(q),) * m, (identity(q),) * m)


def rotation_gauge(m: int, cos, sin) -> GaugePair:
    """The same rotation ``[[c, s], [-s, c]]`` at both ends of every edge."""
    c, s = GaussianRational.coerce(cos), GaussianRational.coerce(sin)
    rot = ((c, s), (-s, c))
    return GaugePair((rot,) * m, (rot,) * m)


ORIENT_OUT = _as_matrix([[1, -I], [1, I]])
ORIENT_IN = _as_matrix([[1, I], [1, -I]])


def orientation_gauge(g: Multigraph) -> GaugePair:
    """Unscaled orientation gauges: ``ORIENT_OUT`` at each tail, ``ORIENT_IN`` at each head.

    Their product is twice the identity, so every edge contributes one
    factor of two.
    """
    if g.has_loops():
        raise GaugeError("gauges on loops are not supported")
    return GaugePair((ORIENT_OUT,) * g.m, (ORIENT_IN,) * g.m, log2_scale=1)


def random_gauge(m: int, q: int, rng: random.Random, spread: int = 3) -> GaugePair:
    """``((M^T)^-1, M)`` per edge for random invertible rational ``M``."""
    tails, heads = [], []
    for _ in range(m):
        while True:
            mm = _as_matrix([[_random_gaussian(rng, spread) for _ in range(q)] for _ in range(q)])
            try:
                inv_t = inverse(transpose(mm))
            except GaugeError:
                continue
            break
        tails.append(inv_t)
        heads.append(mm)
    return GaugePair(tuple(tails), tuple(heads))


def _random_gaussian(rng: random.Random, spread: int) -> GaussianRational:
    re = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
    im = Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) if rng.random() < 0.5 else 0
    return GaussianRational(re, im)


def random_factor_graph(g: Multigraph, q: int, rng: random.Random, spread: int = 3) -> NormalFactorGraph:
    fns = []
    for d in g.degrees():
        table = tuple(_random_gaussian(rng, spread) for _ in range(q ** d))
        fns.append(LocalFunction(d, q, table))
    return NormalFactorGraph(g, q, tuple(fns))


def _integer_parts(values, shape) -> tuple[np.ndarray, np.ndarray, int]:
    # common denominator so the tensor contractions run on Python ints
    vals = list(values)
    den = math.lcm(*(x.re.denominator for x in vals), *(x.im.denominator for x in vals))
    re = np.empty(len(vals), dtype=object)
    im = np.empty(len(vals), dtype=object)
    for i, x in enumerate(vals):
        re[i] = x.re.numerator * (den // x.re.denominator)
        im[i] = x.im.numerator * (den // x.im.denominator)
    return re.reshape(shape), im.reshape(shape), den


def _transform_table(f: LocalFunction, mats: Sequence[Matrix], new_q: int) -> LocalFunction:
    if f.arity == 0:
        return LocalFunction(0, new_q, f.table)
    re, im, den = _integer_parts(f.table, (f.q,) * f.arity)
    for axis, mat in enumerate(mats):
        shape = (len(mat), len(mat[0]))
        m_re, m_im, m_den = _integer_parts((x for row in mat for x in row), shape)
        den *= m_den

        def along(a, b):
            return np.moveaxis(np.tensordot(a, b, axes=([1], [axis])), 0, axis)

        re, im = along(m_re, re) - along(m_im, im), along(m_re, im) + along(m_im, re)
    table = tuple(GaussianRational(Fraction(int(a), den), Fraction(int(b), den))
                  for a, b in zip(re.flat, im.flat))
    return LocalFunction(f.arity, new_q, table)


def apply_gauge(h: NormalFactorGraph, gp: GaugePair) -> NormalFactorGraph:
    """Transform every local function by the gauge matrices on its edges."""
    g = h.g
    if g.has_loops():
        raise GaugeError("gauges on loops are not supported")
    if gp.m != g.m:
        raise GaugeError(f"gauge covers {gp.m} edges, graph has {g.m}")
    if g.m == 0:
        return h
    new_q, old_q = gp.alphabets()
    if old_q != h.q:
        raise GaugeError(f"gauge acts on alphabet {old_q}, factor graph uses {h.q}")
    inc = g.incidence()
    fns = []
    for v, (f, slots) in enumerate(zip(h.functions, inc)):
        mats = [gp.at_tail[e] if g.edges[e][0] == v else gp.at_head[e] for e in slots]
        fns.append(_transform_table(f, mats, new_q))
    return NormalFactorGraph(g, new_q, tuple(fns), h.log2_scale + gp.log2_scale * g.m)


def compose_gauges(first: GaugePair, second: GaugePair) -> GaugePair:
    """Gauge equal to applying ``first`` and then ``second``."""
    if first.m != second.m:
        raise GaugeError("gauges cover different edge counts")
    tails = tuple(mat_mul(b, a) for a, b in zip(first.at_tail, second.at_tail))
    heads = tuple(mat_mul(b, a) for a, b in zip(first.at_head, second.at_head))
    return GaugePair(tails, heads, first.log2_scale + second.log2_scale)


def perfect_matching_function(d: int) -> LocalFunction:
    return LocalFunction.from_callable(d, 2, lambda a: 1 if sum(a) == 1 else 0)


def even_parity_function(d: int) -> LocalFunction:
    return LocalFunction.from_callable(d, 2, lambda a: 1 if sum(a) % 2 == 0 else 0)


def uniform_factor_graph(g: Multigraph, make: Callable[[int], LocalFunction]) -> NormalFactorGraph:
    return NormalFactorGraph(g, 2, tuple(make(d) for d in g.degrees()))


def random_loopless_multigraph(rng: random.Random, max_edges: int = 6, max_vertices: int = 5) -> Multigraph:
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


@dataclass
class GaugeTrial:
    graph: Multigraph
    q: int
    z_before: GaussianRational
    z_after: GaussianRational
    composition_ok: bool

    @property
    def invariant(self) -> bool:
        return self.z_before == self.z_after


def gauge_trial(rng: random.Random, g: Multigraph | None = None, q: int | None = None) -> GaugeTrial:
    """One randomized check of gauge invariance and of gauge composition."""
    g = g if g is not None else random_loopless_multigraph(rng)
    q = q if q is not None else rng.choice((2, 3))
    h = random_factor_graph(g, q, rng)
    gp1 = random_gauge(g.m, q, rng)
    gp2 = random_gauge(g.m, q, rng)
    once = apply_gauge(h, gp1)
    twice = apply_gauge(once, gp2)
    combined = apply_gauge(h, compose_gauges(gp1, gp2))
    comp_ok = all(a.table == b.table for a, b in zip(twice.functions, combined.functions))
    return GaugeTrial(g, q, partition_function(h), partition_function(once), comp_ok)
