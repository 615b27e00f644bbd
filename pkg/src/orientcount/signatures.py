"""Symmetric signatures and the linear algebra acting on them.

Vectors are indexed by the number of selected edges at a vertex, ``0..d``.
Everything that is an identity or a count is exact (``GaussianRational``);
only generic-angle rotations use floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gaussian import GaussianRational, I, ONE, ZERO


@dataclass(frozen=True)
class SignatureVector:
    """Per-vertex weights ``(x_0, ..., x_d)``."""

    entries: tuple

    @classmethod
    def of(cls, values: Sequence) -> "SignatureVector":
        if isinstance(values, SignatureVector):
            return values
        out = []
        for x in values:
            if isinstance(x, (float, complex)):
                out.append(x)
            else:
                out.append(GaussianRational.coerce(x))
        return cls(tuple(out))

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def is_exact(self) -> bool:
        return all(isinstance(x, GaussianRational) for x in self.entries)

    def scaled(self, c) -> "SignatureVector":
        return SignatureVector(tuple(c * x for x in self.entries))


@dataclass(frozen=True)
class LinearForm:
    """``sum_k coeffs[k] * x_k``."""

    coeffs: tuple[GaussianRational, ...]

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Sequence):
        if len(x) != len(self.coeffs):
            raise ValueError(f"form of degree {self.d} applied to vector of length {len(x)}")
        if all(isinstance(v, GaussianRational) or isinstance(v, (int, Fraction)) for v in x):
            total = ZERO
            for b, v in zip(self.coeffs, x):
                if b and v:
                    total = total + b * v
            return total
        return sum(complex(b) * complex(v) for b, v in zip(self.coeffs, x))

    def times_matrix(self, a: Sequence[Sequence]) -> "LinearForm":
        """Row-vector product ``b · A``."""
        n = len(self.coeffs)
        out = []
        for j in range(n):
            acc = ZERO
            for k in range(n):
                if a[k][j]:
                    acc = acc + self.coeffs[k] * a[k][j]
            out.append(acc)
        return LinearForm(tuple(out))

    def derivation(self) -> "LinearForm":
        """Image under the derivation ``x_k -> (d-k) x_{k+1} - k x_{k-1}``."""
        return self.times_matrix(clement_matrix(self.d))


def _poly_mul(a: list, b: list) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _poly_pow(p: list, k: int) -> list:
    out = [ONE]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def q_coefficients(d: int, k: int) -> LinearForm:
    """Eigen-form of the derivation with eigenvalue ``k*i``.

    Coefficient ``j`` is the ``z**j`` coefficient of
    ``(1 + iz)**r * (1 - iz)**(d - r)`` with ``r = (d - k) / 2``, so the
    ``x_0`` coefficient is 1.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if abs(k) > d:
        raise ValueError(f"|k| = {abs(k)} exceeds d = {d}")
    if (d - k) % 2:
        raise ValueError(f"k = {k} must have the parity of d = {d}")
    r = (d - k) // 2
    plus = _poly_pow([ONE, I], r)
    minus = _poly_pow([ONE, -I], d - r)
    return LinearForm(tuple(_poly_mul(plus, minus)))


def clement_matrix(d: int) -> list[list[int]]:
    """Tridiagonal matrix with superdiagonal ``d-k`` and subdiagonal ``-k``."""
    a = [[0] * (d + 1) for _ in range(d + 1)]
    for k in range(d + 1):
        if k < d:
            a[k][k + 1] = d - k
        if k > 0:
            a[k][k - 1] = -k
    return a


# evaluation vectors

def _require_even(d: int):
    if d < 0 or d % 2:
        raise ValueError(f"degree must be a non-negative even integer, got {d}")


def s_vector(d: int) -> SignatureVector:
    """Weights under which the subgraph polynomial counts Eulerian orientations."""
    _require_even(d)
    h = d // 2
    top = math.comb(d, h)
    out = []
    for k in range(d + 1):
        if k % 2:
            out.append(ZERO)
        else:
            out.append(GaussianRational(Fraction(top * math.comb(h, k // 2), 2**h * math.comb(d, k))))
    return SignatureVector(tuple(out))


def s_prime_vector(d: int) -> SignatureVector:
    """``s_vector(d)`` rescaled so the first entry is 1."""
    _require_even(d)
    h = d // 2
    return SignatureVector(tuple(
        ZERO if k % 2 else GaussianRational(Fraction(math.comb(h, k // 2), math.comb(d, k)))
        for k in range(d + 1)
    ))


def c_vector(d: int) -> SignatureVector:
    """Weights under which the subgraph polynomial counts half-graphs."""
    s = s_vector(d)
    return SignatureVector(tuple(
        x if (k // 2) % 2 == 0 else -x for k, x in enumerate(s.entries)
    ))


def schrijver_factor(d: int) -> Fraction:
    """``C(d, d/2) / 2**(d/2)``, which equals both end entries of ``s_vector(d)``."""
    _require_even(d)
    return Fraction(math.comb(d, d // 2), 2 ** (d // 2))


# rotations

@dataclass(frozen=True)
class RotationMatrix:
    """Matrix sending a signature to its rotated signature.

    The represented matrix is ``entries * sqrt(2)**sqrt2_exponent``; exact
    matrices keep integer or rational entries and push any irrational
    power of two into ``sqrt2_exponent``.
    """

    d: int
    entries: tuple[tuple, ...]
    exact: bool
    angle: float | None = None
    sqrt2_exponent: int = 0

    def as_float(self) -> np.ndarray:
        scale = math.sqrt(2.0) ** self.sqrt2_exponent
        return np.array([[complex(x).real if isinstance(x, GaussianRational) else float(x)
                          for x in row] for row in self.entries]) * scale

    def rational_entries(self) -> list[list[Fraction]]:
        """Entries with the power of two folded in; needs an even exponent."""
        if not self.exact:
            raise ValueError("float matrix has no exact entries")
        if self.sqrt2_exponent % 2:
            raise ValueError("odd power of sqrt(2) is irrational")
        scale = Fraction(2) ** (self.sqrt2_exponent // 2)
        return [[Fraction(x) * scale for x in row] for row in self.entries]

    def normalized(self) -> "RotationMatrix":
        if not self.exact or self.sqrt2_exponent % 2 or not self.sqrt2_exponent:
            return self
        rows = tuple(tuple(x for x in row) for row in self.rational_entries())
        return RotationMatrix(self.d, rows, True, self.angle, 0)

    def __matmul__(self, other: "RotationMatrix") -> "RotationMatrix":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        angle = None
        if self.angle is not None and other.angle is not None:
            angle = self.angle + other.angle
        if self.exact and other.exact:
            n = self.d + 1
            a, b = self.entries, other.entries
            rows = tuple(
                tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
                for i in range(n)
            )
            return RotationMatrix(self.d, rows, True, angle,
                                  self.sqrt2_exponent + other.sqrt2_exponent).normalized()
        prod = self.as_float() @ other.as_float()
        return RotationMatrix(self.d, tuple(map(tuple, prod.tolist())), False, angle)

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def apply(self, x: Sequence) -> list:
        """``R x``; exact when both sides are exact and the scale is rational."""
        if len(x) != self.d + 1:
            raise ValueError("vector length does not match matrix")
        if self.exact and all(isinstance(v, GaussianRational) for v in x):
            rows = self.rational_entries()
            return [sum((GaussianRational(r) * v for r, v in zip(row, x) if r), ZERO)
                    for row in rows]
        return list(self.as_float() @ np.array([complex(v) for v in x]))


def _rotation_rows(d: int, c, s, zero, one) -> list[list]:
    # row r: coefficients of (x c - s)^r (x s + c)^(d - r), lowest power first
    def mul(a, b):
        out = [zero] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                out[i + j] = out[i + j] + u * v
        return out

    def power(p, k):
        out = [one]
        for _ in range(k):
            out = mul(out, p)
        return out

    return [mul(power([-s, c], r), power([c, s], d - r)) for r in range(d + 1)]


def rotation_matrix(d: int, t: float) -> RotationMatrix:
    rows = _rotation_rows(d, math.cos(t), math.sin(t), 0.0, 1.0)
    return RotationMatrix(d, tuple(tuple(float(v) for v in row) for row in rows), False, float(t))


def rotation_matrix_exact(d: int, cos, sin) -> RotationMatrix:
    """Rotation for a rational point ``(cos, sin)`` on the unit circle."""
    c, s = Fraction(cos), Fraction(sin)
    if c * c + s * s != 1:
        raise ValueError(f"({c}, {s}) is not on the unit circle")
    rows = _rotation_rows(d, c, s, Fraction(0), Fraction(1))
    return RotationMatrix(d, tuple(map(tuple, rows)), True, math.atan2(s, c))


def krawtchouk_matrix(d: int) -> RotationMatrix:
    """Exact rotation by a quarter of pi.

    Entry ``(r, j)`` is ``2**(-d/2)`` times the ``x**j`` coefficient of
    ``(x - 1)**r (x + 1)**(d - r)``.  Even ``d`` is returned with rational
    entries; odd ``d`` keeps integers and ``sqrt2_exponent = -d``.
    """
    rows = _rotation_rows(d, 1, 1, 0, 1)
    m = RotationMatrix(d, tuple(tuple(Fraction(v) for v in row) for row in rows), True,
                       math.pi / 4, -d)
    return m.normalized()


def identity_rotation(d: int) -> RotationMatrix:
    rows = tuple(tuple(Fraction(int(i == j)) for j in range(d + 1)) for i in range(d + 1))
    return RotationMatrix(d, rows, True, 0.0)


def quarter_pi_rotation(d: int, j: int) -> RotationMatrix:
    """Exact ``R_{j*pi/4}`` as a power of the Krawtchouk matrix."""
    k = krawtchouk_matrix(d)
    j %= 8
    out = identity_rotation(d)
    for _ in range(j):
        out = out @ k
    return RotationMatrix(d, out.entries, True, j * math.pi / 4, out.sqrt2_exponent)


def a_hat(d: int, r: int, t: float, x: Sequence) -> complex | float:
    """Row ``r`` of the rotation by ``t`` applied to ``x``."""
    if not 0 <= r <= d:
        raise ValueError(f"row index {r} outside 0..{d}")
    if len(x) != d + 1:
        raise ValueError("signature length must be d + 1")
    row = _rotation_rows(d, math.cos(t), math.sin(t), 0.0, 1.0)[r]
    vals = [complex(v) for v in x]
    total = sum(a * v for a, v in zip(row, vals))
    return total.real if all(v.imag == 0 for v in vals) else total


def exact_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][p] * b[p][j] for p in range(k) if a[i][p] and b[p][j]), ZERO)
             for j in range(m)] for i in range(n)]


def matvec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((r * v for r, v in zip(row, x) if r and v), ZERO) for row in a]
