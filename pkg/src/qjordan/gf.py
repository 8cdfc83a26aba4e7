"""Finite fields F_p and F_{p^m}.

Elements are encoded as integer codes ``c0 + c1*p + ... + c(m-1)*p^(m-1)``
where ``c0..c(m-1)`` are the polynomial coefficients (constant term first).
Code order is the canonical element order: 0 comes first, 1 second.

The array methods on :class:`FieldSpec` (``add``, ``mul``, ``matmul`` ...)
take numpy integer arrays of codes and broadcast. Prime fields use plain
modular arithmetic; extension fields go through precomputed tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np


class FieldMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomials over F_p as coefficient lists, constant term first --------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of a by the monic-or-not polynomial b over F_p."""
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = (a[-1] * lead_inv) % p
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _trim(a)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree m over F_p.

    Candidates are ordered by their integer value ``sum c_i p^i``, i.e.
    compared from the highest coefficient down, so ``(2, 3)`` gives
    x^3 + x + 1 rather than x^3 + x^2 + 1. Returns the coefficient tuple
    (constant term first, leading 1 included).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 2:
        raise ValueError("degree must be at least 2")
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^m}, realized as F_p[x]/(modulus)."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.m == 1:
            if self.modulus is not None:
                raise ValueError("prime fields carry no modulus")
            return
        mod = find_irreducible(self.p, self.m) if self.modulus is None else tuple(self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in mod))

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self):
        if self.m == 1:
            return f"FieldSpec(p={self.p})"
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- code <-> coefficients ---------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        return tuple((int(code) // self.p**i) % self.p for i in range(self.m))

    def code(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    # -- tables --------------------------------------------------------------

    @cached_property
    def coeff_table(self) -> np.ndarray:
        codes = np.arange(self.q)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.m)], axis=-1)

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coeff_table
        s = (c[:, None, :] + c[None, :, :]) % self.p
        return s @ (self.p ** np.arange(self.m))

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.m == 1:
            a = np.arange(self.p)
            return np.outer(a, a) % self.p
        q = self.q
        table = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                table[x, y] = table[y, x] = self._poly_mul_code(x, y)
        return table

    def _poly_mul_code(self, x: int, y: int) -> int:
        a, b = self.coeffs(x), self.coeffs(y)
        prod = [0] * (2 * self.m - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
        r = poly_mod(prod, self.modulus, self.p)
        return self.code(r + [0] * (self.m - len(r)))

    @cached_property
    def neg_table(self) -> np.ndarray:
        return (-self.coeff_table % self.p) @ (self.p ** np.arange(self.m))

    @cached_property
    def inv_table(self) -> np.ndarray:
        """inv_table[x] is the inverse of x; entry 0 holds 0 as a placeholder."""
        mt = self.mul_table
        inv = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            inv[x] = int(np.flatnonzero(mt[x] == 1)[0])
        return inv

    # -- vectorized arithmetic on code arrays -------------------------------

    def add(self, x, y):
        if self.m == 1:
            return (np.asarray(x) + y) % self.p
        return self.add_table[x, y]

    def neg(self, x):
        if self.m == 1:
            return (-np.asarray(x)) % self.p
        return self.neg_table[x]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.m == 1:
            return (np.asarray(x) * y) % self.p
        return self.mul_table[x, y]

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[x]

    def from_int(self, n: int) -> int:
        """Code of the prime-field element n*1."""
        return int(n) % self.p

    def scale(self, t, A):
        """Multiply every entry of A by the scalar code t."""
        return self.mul(np.asarray(A), t)

    def matmul(self, A, B):
        """Batched matrix product (broadcasting over leading axes)."""
        A = np.asarray(A)
        B = np.asarray(B)
        if self.m == 1:
            return np.matmul(A, B) % self.p
        k = A.shape[-1]
        acc = self.mul_table[A[..., :, 0, None], B[..., None, 0, :]]
        for j in range(1, k):
            acc = self.add_table[acc, self.mul_table[A[..., :, j, None], B[..., None, j, :]]]
        return acc

    def vecmat(self, v, A):
        """Row vector(s) times matrix(es): (..., n) x (..., n, k) -> (..., k)."""
        v = np.asarray(v)
        return self.matmul(v[..., None, :], A)[..., 0, :]

    def dot(self, x, y):
        """Sum over the last axis of the elementwise product."""
        prod = self.mul(np.asarray(x), np.asarray(y))
        return self.sum(prod, axis=-1)

    def sum(self, x, axis=0):
        x = np.asarray(x)
        if self.m == 1:
            return x.sum(axis=axis) % self.p
        x = np.moveaxis(x, axis, 0)
        acc = x[0]
        for row in x[1:]:
            acc = self.add_table[acc, row]
        return acc

    def power(self, x: int, e: int) -> int:
        result = 1
        base = int(x)
        mt = self.mul_table
        while e:
            if e & 1:
                result = int(mt[result, base])
            base = int(mt[base, base])
            e >>= 1
        return result

    # -- element-level API ---------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an int (prime-field residue) or coefficient list."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, (int, np.integer)):
            if self.m == 1:
                return FieldElement(self, int(value) % self.p)
            return FieldElement(self, int(value) % self.p)
        return FieldElement(self, self.code(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def format_code(self, code: int) -> str:
        if self.m == 1:
            return str(int(code))
        return ",".join(str(c) for c in self.coeffs(code))

    def parse_code(self, text: str) -> int:
        parts = text.strip().split(",")
        if len(parts) != self.m:
            raise ValueError(f"field element {text!r} needs {self.m} coefficient(s)")
        coeffs = [int(c) for c in parts]
        if any(c < 0 or c >= self.p for c in coeffs):
            raise ValueError(f"coefficient out of range in {text!r}")
        return self.code(coeffs)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.spec.q:
            raise ValueError("code out of range")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.code)

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.spec.element(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        return FieldElement(self.spec, int(self.spec.add_table[self.code, other.code]))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, int(self.spec.neg_table[self.code]))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        return FieldElement(self.spec, int(self.spec.mul_table[self.code, other.code]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.spec, int(self.spec.inv_table[self.code]))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.spec, self.spec.power(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return self.spec.format_code(self.code)


def ff_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def ff_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def ff_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, c) for c in range(spec.q)]
