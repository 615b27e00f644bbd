"""Exhaustive enumeration kernels over edge subsets and orientations.

Both problems reduce to one shape: a per-vertex integer state
``base + sum_e b_e * delta_e`` over all bit vectors ``b`` in ``{0,1}^m``,
where each ``delta_e`` touches at most the two endpoints of edge ``e``.
For subsets the state is the subgraph degree; for orientations it is the
in-degree relative to a reference orientation.

Two independent kernels walk that space:

* ``state_histogram`` counts how many bit vectors land on each state
  vector.  States are packed into a mixed-radix integer key (the key is
  linear in the state), so subset sums of per-edge key increments are
  built by doubling on two halves of the edge list and combined
  meet-in-the-middle with exact int64 counts.
* ``gray_count`` walks the Gray-code order with one state update per
  step.  It is the brute-force oracle.

Index ranges are split into contiguous blocks that can run on separate
processes; block results are merged in block order, so the outcome does
not depend on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gaussian import GaussianRational

DEFAULT_GUARD = 30

# combined (low x high) table size above which the high half is chunked
_CHUNK_CELLS = 1 << 22


class EnumerationGuardError(ValueError):
    """Raised instead of starting an enumeration that is too large."""


def check_guard(bits: float, guard: int, what: str = "enumeration"):
    if bits > guard:
        raise EnumerationGuardError(
            f"{what} needs 2^{bits:g} steps, above the guard of 2^{guard}; "
            f"raise the guard explicitly to run it"
        )


@dataclass(frozen=True)
class StateSpace:
    """``radices[v]`` bounds the state of ``v``; ``deltas[e]`` is ``((u, du), (w, dw))``."""

    base: tuple[int, ...]
    deltas: tuple[tuple[tuple[int, int], ...], ...]
    radices: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.radices)

    @property
    def m(self) -> int:
        return len(self.deltas)

    def places(self) -> list[int]:
        places = [1] * self.n
        for v in range(self.n - 2, -1, -1):
            places[v] = places[v + 1] * self.radices[v + 1]
        return places

    def key_span(self) -> int:
        return math.prod(self.radices)

    def encode(self, state: Sequence[int]) -> int:
        return sum(s * p for s, p in zip(state, self.places()))

    def decode(self, keys: np.ndarray) -> np.ndarray:
        """Rows of per-vertex states for an array of keys."""
        keys = np.asarray(keys, dtype=np.int64)
        out = np.empty((len(keys), self.n), dtype=np.int64)
        rest = keys.copy()
        for v in range(self.n - 1, -1, -1):
            out[:, v] = rest % self.radices[v]
            rest //= self.radices[v]
        return out


def subgraph_space(n: int, edges: Sequence[tuple[int, int]], degrees: Sequence[int]) -> StateSpace:
    deltas = tuple(((u, 2), (u, 0)) if u == v else ((u, 1), (v, 1)) for u, v in edges)
    return StateSpace(tuple([0] * n), deltas, tuple(d + 1 for d in degrees))


def indegree_space(n: int, edges: Sequence[tuple[int, int]], degrees: Sequence[int]) -> StateSpace:
    """In-degrees; bit ``e`` reverses edge ``e`` from its stored direction ``u -> v``."""
    base = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("orientations are not defined for loops")
        base[v] += 1
    deltas = tuple(((u, 1), (v, -1)) for u, v in edges)
    return StateSpace(tuple(base), deltas, tuple(d + 1 for d in degrees))


# histogram kernel

def _subset_sums(increments: Sequence[int]) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for inc in increments:
        sums = np.concatenate([sums, sums + np.int64(inc)])
    return sums


def _unique_counts(keys: np.ndarray, counts: np.ndarray | None = None):
    if counts is None:
        return np.unique(keys, return_counts=True)
    order = np.argsort(keys, kind="stable")
    keys, counts = keys[order], counts[order]
    uniq, start = np.unique(keys, return_index=True)
    return uniq, np.add.reduceat(counts, start)


def _combine_block(args):
    low_k, low_c, high_k, high_c = args
    keys = (low_k[None, :] + high_k[:, None]).ravel()
    counts = (low_c[None, :] * high_c[:, None]).ravel()
    return _unique_counts(keys, counts)


def state_histogram(space: StateSpace, guard: int = DEFAULT_GUARD, workers: int = 1):
    """Exact ``(keys, counts)`` over all ``2^m`` bit vectors, keys ascending."""
    check_guard(space.m, guard)
    if space.key_span() >= 2**62:
        raise EnumerationGuardError("state space too large for 64-bit keys")
    places = space.places()
    increments = [sum(amount * places[v] for v, amount in delta) for delta in space.deltas]
    half = space.m // 2
    low_k, low_c = _unique_counts(_subset_sums(increments[:half]))
    high_k, high_c = _unique_counts(_subset_sums(increments[half:]))
    high_k = high_k + np.int64(space.encode(space.base))
    low_c = low_c.astype(np.int64)
    high_c = high_c.astype(np.int64)

    rows = max(1, _CHUNK_CELLS // max(1, len(low_k)))
    blocks = [(low_k, low_c, high_k[i:i + rows], high_c[i:i + rows])
              for i in range(0, len(high_k), rows)]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_combine_block, blocks))
    else:
        parts = [_combine_block(b) for b in blocks]
    if len(parts) == 1:
        return parts[0]
    return _unique_counts(np.concatenate([p[0] for p in parts]),
                          np.concatenate([p[1] for p in parts]))


# exact contraction of a histogram against per-vertex weights

def _gaussian_columns(weights: Sequence) -> tuple[np.ndarray, np.ndarray, int]:
    vals = [GaussianRational.coerce(w) for w in weights]
    den = math.lcm(*([v.re.denominator for v in vals] + [v.im.denominator for v in vals])) if vals else 1
    re = np.array([int(v.re * den) for v in vals] or [0], dtype=object)
    im = np.array([int(v.im * den) for v in vals] or [0], dtype=object)
    return re, im, den


def contract(space: StateSpace, keys: np.ndarray, counts: np.ndarray, weights: Sequence[Sequence]):
    """``sum over keys of count * prod_v weights[v][state_v]``.

    Exact when every weight is exact (returns ``GaussianRational``);
    otherwise evaluated in complex floating point.
    """
    if len(weights) != space.n:
        raise ValueError(f"expected {space.n} weight vectors, got {len(weights)}")
    for v, w in enumerate(weights):
        if len(w) != space.radices[v]:
            raise ValueError(f"vertex {v}: expected {space.radices[v]} weights, got {len(w)}")
    exact = all(not isinstance(x, (float, complex)) for w in weights for x in w)
    keys = np.asarray(keys, dtype=np.int64)
    if exact:
        re = np.asarray(counts).astype(object)
        im = None
        denominator = 1
    else:
        re = np.asarray(counts).astype(np.complex128)
    for v in range(space.n - 1, -1, -1):
        r = space.radices[v]
        digit = keys % r
        keys = keys // r
        if exact:
            wa, wb, den = _gaussian_columns(weights[v])
            denominator *= den
            a, b = wa[digit], wb[digit]
            if im is None:
                new_re = re * a
                new_im = re * b if any(wb) else None
            else:
                new_re = re * a - im * b
                new_im = re * b + im * a
        else:
            w = np.array([complex(x) for x in weights[v]], dtype=np.complex128)
            new_re = re * w[digit]
        uniq, start = np.unique(keys, return_index=True)
        keys = uniq
        re = np.add.reduceat(new_re, start)
        if exact:
            im = None if new_im is None else np.add.reduceat(new_im, start)
    if exact:
        total_re = int(re[0]) if len(re) else 0
        total_im = int(im[0]) if im is not None and len(im) else 0
        return GaussianRational(Fraction(total_re, denominator), Fraction(total_im, denominator))
    return complex(re[0]) if len(re) else 0j


# Gray-code kernel

def gray_code(i: int) -> int:
    return i ^ (i >> 1)


def gray_walk(m: int):
    """Yield ``(code, flipped_bit)`` for all ``2^m`` codes; the first flip is ``None``."""
    code = 0
    yield code, None
    for i in range(1, 1 << m):
        bit = (i & -i).bit_length() - 1
        code ^= 1 << bit
        yield code, bit


def _state_at(space: StateSpace, code: int) -> list[int]:
    state = list(space.base)
    e = 0
    while code:
        if code & 1:
            for v, amount in space.deltas[e]:
                state[v] += amount
        code >>= 1
        e += 1
    return state


def _gray_count_block(args) -> int:
    space, target, start, stop = args
    code = gray_code(start)
    state = _state_at(space, code)
    mismatched = sum(1 for s, t in zip(state, target) if s != t)
    count = 0 if mismatched else 1
    flat = [(a, da, b, db) for (a, da), (b, db) in space.deltas]
    for i in range(start + 1, stop):
        bit = (i & -i).bit_length() - 1
        code ^= 1 << bit
        a, da, b, db = flat[bit]
        if not (code >> bit) & 1:
            da, db = -da, -db
        old = state[a]
        new = old + da
        state[a] = new
        ta = target[a]
        if old == ta and new != ta:
            mismatched += 1
        elif new == ta and old != ta:
            mismatched -= 1
        old = state[b]
        new = old + db
        state[b] = new
        tb = target[b]
        if old == tb and new != tb:
            mismatched += 1
        elif new == tb and old != tb:
            mismatched -= 1
        if not mismatched:
            count += 1
    return count


def gray_count(space: StateSpace, target: Sequence[int], guard: int = DEFAULT_GUARD,
               workers: int = 1, blocks: int | None = None) -> int:
    """Number of bit vectors whose state equals ``target``, by Gray-code walk."""
    check_guard(space.m, guard)
    if len(target) != space.n:
        raise ValueError("target length does not match vertex count")
    total = 1 << space.m
    nblocks = blocks or max(1, workers)
    nblocks = min(nblocks, total)
    edges = [total * k // nblocks for k in range(nblocks + 1)]
    jobs = [(space, tuple(target), edges[k], edges[k + 1]) for k in range(nblocks)]
    if workers > 1 and nblocks > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_gray_count_block, jobs))
    return sum(_gray_count_block(j) for j in jobs)
