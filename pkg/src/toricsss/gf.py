"""Arithmetic in small finite fields GF(p^k).

Elements are plain integers in ``[0, q)``. For ``k == 1`` an element is its
residue mod p; for ``k > 1`` it is the base-p digit encoding of the
coefficient vector of a polynomial reduced modulo the field modulus
(digit ``i`` is the coefficient of ``x**i``).

A field carries exp/log tables for a distinguished primitive element ``g``
and a Zech table, so every scalar operation is O(1). Dense q-by-q addition
and multiplication tables are built on demand for ``q <= TABLE_CAP``; the
compiled kernels and the vectorised helpers use them when present.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .errors import DivisionByZero, FieldTooLarge, NonPrimeP, ReducibleModulus

DEFAULT_MAX_Q = 2**16
TABLE_CAP = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, k)`` with ``q == p**k``; raise NonPrimeP otherwise."""
    if q < 2:
        raise NonPrimeP(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NonPrimeP(f"{q} is not a prime power")
    return p, k


# polynomials over GF(p): coefficient lists, lowest degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = _trim(modulus)
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for fdeg in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=fdeg):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, ordering candidates by the
    base-p integer value of their lower coefficients."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p**self.k

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus or ())}


class GF:
    """Finite field GF(p^k) with exp/log tables.

    >>> F = GF(5)
    >>> F.g, F.mul(2, 3), F.inv(2)
    (2, 1, 3)
    """

    def __init__(self, p: int, k: int = 1, modulus=None, max_q: int = DEFAULT_MAX_Q):
        if not is_prime(p):
            raise NonPrimeP(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p**k > max_q:
            raise FieldTooLarge(f"q = {p}^{k} exceeds cap {max_q}")
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(_trim(modulus)) != k + 1:
                raise ReducibleModulus(f"modulus must have degree {k}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
            lead = pow(modulus[-1], p - 2, p)
            modulus = tuple(c * lead % p for c in modulus)
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self.spec = FieldSpec(p, k, self.modulus if k > 1 else None)
        self._build_tables()

    # construction

    def _digits(self, a: int):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _from_digits(self, ds) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod_ = _poly_mul(self._digits(a), self._digits(b), self.p)
        r = _poly_mod(prod_, list(self.modulus), self.p)
        return self._from_digits(r + [0] * (self.k - len(r)))

    def _slow_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def _build_tables(self):
        q = self.q
        order = q - 1
        for cand in range(1, q):
            exp = np.empty(order, dtype=np.int64)
            x = 1
            ok = True
            for i in range(order):
                exp[i] = x
                x = self._slow_mul(x, cand)
                if x == 1 and i < order - 1:
                    ok = False
                    break
            if ok:
                self.g = cand
                break
        self.exp = exp
        self.exp.setflags(write=False)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order)
        self.log = log
        self.log.setflags(write=False)
        # zech[n] = log(1 + g^n), -1 when 1 + g^n == 0
        zech = np.empty(order, dtype=np.int64)
        for n in range(order):
            s = self._slow_add(1, int(exp[n]))
            zech[n] = log[s] if s else -1
        self._zech = zech
        self._neg_one = next(int(e) for e in range(q) if self._slow_add(e, 1) == 0)

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self.log[a], self.log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        if z < 0:
            return 0
        return int(self.exp[(la + z) % (self.q - 1)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.mul(self._neg_one, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[-self.log[a] % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def elements(self):
        return range(self.q)

    # dense tables and vectorised arithmetic

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_CAP

    @cached_property
    def add_table(self) -> np.ndarray:
        if not self.has_tables:
            raise FieldTooLarge(f"dense tables are limited to q <= {TABLE_CAP}")
        if self.k == 1:
            r = np.arange(self.q)
            t = (r[:, None] + r[None, :]) % self.p
        else:
            digits = np.array([self._digits(a) for a in range(self.q)])
            s = (digits[:, None, :] + digits[None, :, :]) % self.p
            t = (s * self.p ** np.arange(self.k)).sum(axis=2)
        t = t.astype(np.int32)
        t.setflags(write=False)
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        if not self.has_tables:
            raise FieldTooLarge(f"dense tables are limited to q <= {TABLE_CAP}")
        r = np.arange(self.q)
        t = self.vmul(r[:, None], r[None, :]).astype(np.int32)
        t.setflags(write=False)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        t = np.array([self.neg(a) for a in range(self.q)], dtype=np.int32)
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.int32)
        t[1:] = [self.inv(a) for a in range(1, self.q)]
        t.setflags(write=False)
        return t

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.has_tables:
            return self.add_table[a, b].astype(np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += ((a // w) % self.p + (b // w) % self.p) % self.p * w
        return out

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return -a % self.p
        return self.neg_table[a].astype(np.int64)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return a * b % self.p
        la = self.log[a]
        lb = self.log[b]
        r = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp[-self.log[a] % (self.q - 1)]

    def vsum(self, a, axis=-1) -> np.ndarray:
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.vadd(out, row)
        return out

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.k == 1:
            return (A @ B) % self.p
        prods = self.vmul(A[:, :, None], B[None, :, :])
        return self.vsum(prods, axis=1)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={self.modulus})"


def field_new(spec: FieldSpec, max_q: int = DEFAULT_MAX_Q) -> GF:
    return GF(spec.p, spec.k, spec.modulus, max_q=max_q)


def field_of_size(q: int, modulus=None) -> GF:
    p, k = prime_power(q)
    return GF(p, k, modulus)
