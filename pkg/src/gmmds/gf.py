"""Arithmetic in GF(p^m).

Elements are encoded as integers 0 <= a < q whose base-p digits are the
coefficients (little-endian) of the polynomial representative modulo the
field modulus.  The encoding is a bijection with canonical coefficient
vectors, so equality and hashing are plain integer operations.

Prime fields use native modular arithmetic and accept large p.  Extension
fields up to 2^16 elements use log/antilog tables; larger ones fall back to
polynomial multiplication.
"""

from __future__ import annotations

import functools
import random
from typing import Iterator, Sequence

import sympy

from .errors import DegreeMismatch, MalformedInput, NonPrimeP, ReducibleModulus, ZeroToNegativePower

MAX_EXT_DEGREE = 16
MAX_EXT_CHAR = 2**31
_TABLE_LIMIT = 2**16
_FULL_TABLE_LIMIT = 256


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return poly.degree() == len(coeffs) - 1 and poly.is_irreducible


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    # smallest by integer encoding of the lower coefficients (c_{m-1} most significant)
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over GF({p})")


class GF:
    """A finite field GF(p^m); instances are cached and immutable."""

    __slots__ = (
        "p", "m", "q", "modulus", "_exp", "_log", "_mul_t", "_sub_t", "_add_t", "_neg_t", "_inv_t",
        "__weakref__",
    )

    def __new__(cls, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        return _build(int(p), int(m), None if modulus is None else tuple(int(c) for c in modulus))

    # -- construction -----------------------------------------------------
    @classmethod
    def _create(cls, p: int, m: int, modulus: tuple[int, ...]) -> "GF":
        self = object.__new__(cls)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "q", p**m)
        object.__setattr__(self, "modulus", modulus)
        for name in ("_exp", "_log", "_mul_t", "_sub_t", "_add_t", "_neg_t", "_inv_t"):
            object.__setattr__(self, name, None)
        if m > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()
        return self

    def __setattr__(self, name, value):
        raise AttributeError("GF is immutable")

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = sympy.primefactors(order) if order > 1 else []
        gen = None
        for g in range(2, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                gen = g
                break
        if gen is None:  # q == 2 cannot happen for m > 1
            gen = 1
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        neg = [self._slow_neg(a) for a in range(q)]
        object.__setattr__(self, "_neg_t", neg)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(order - log[a]) % order]
        object.__setattr__(self, "_inv_t", inv)
        if q <= _FULL_TABLE_LIMIT:
            mul_t = [[0] * q for _ in range(q)]
            for a in range(1, q):
                la = log[a]
                row = mul_t[a]
                for b in range(1, q):
                    row[b] = exp[la + log[b]]
            add_t = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
            sub_t = [[add_t[a][neg[b]] for b in range(q)] for a in range(q)]
            object.__setattr__(self, "_mul_t", mul_t)
            object.__setattr__(self, "_add_t", add_t)
            object.__setattr__(self, "_sub_t", sub_t)

    # -- digit helpers ----------------------------------------------------
    def to_coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, d = divmod(a, p)
            out.append(d)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise MalformedInput(f"element needs {self.m} coefficients, got {len(coeffs)}")
        a = 0
        for c in reversed(coeffs):
            c = int(c)
            if not 0 <= c < self.p:
                raise MalformedInput(f"coefficient {c} out of range for p={self.p}")
            a = a * self.p + c
        return a

    def element(self, x) -> int:
        """Coerce an int (encoding, or residue in a prime field) or coefficient list."""
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        x = int(x)
        if self.m == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise MalformedInput(f"element {x} out of range for GF({self.q})")
        return x

    # -- slow polynomial arithmetic (used for table building / huge fields) --
    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([(x + y) % p for x, y in zip(ca, cb)])

    def _slow_neg(self, a: int) -> int:
        p = self.p
        return self.from_coeffs([(-x) % p for x in self.to_coeffs(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                for t in range(m):
                    prod[d - m + t] -= c * mod[t]
            prod[d] = 0
        return self.from_coeffs([c % p for c in prod[:m]])

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    # -- field operations -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self._neg_t is not None:
            return self._neg_t[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        if self._sub_t is not None:
            return self._sub_t[a][b]
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if self._mul_t is not None:
            return self._mul_t[a][b]
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._inv_t is not None:
            return self._inv_t[a]
        return self._slow_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            if a == 0:
                raise ZeroToNegativePower("zero raised to a negative power")
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._slow_pow(a, e)

    def frobenius(self, a: int, j: int = 1) -> int:
        """a ** (p ** j)."""
        return self.pow(a, self.p**j)

    # -- vectorised row kernels used by exactla ---------------------------
    def scale_row(self, row: Sequence[int], f: int) -> list[int]:
        if self.m == 1:
            p = self.p
            return [x * f % p for x in row]
        if self._mul_t is not None:
            mf = self._mul_t[f]
            return [mf[x] for x in row]
        mul = self.mul
        return [mul(f, x) for x in row]

    def axpy_row(self, row: Sequence[int], f: int, prow: Sequence[int]) -> list[int]:
        """row - f * prow."""
        if self.m == 1:
            p = self.p
            return [(x - f * y) % p for x, y in zip(row, prow)]
        if self._mul_t is not None:
            mf = self._mul_t[f]
            if self.p == 2:
                return [x ^ mf[y] for x, y in zip(row, prow)]
            st = self._sub_t
            return [st[x][mf[y]] for x, y in zip(row, prow)]
        mul, sub = self.mul, self.sub
        return [sub(x, mul(f, y)) for x, y in zip(row, prow)]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        if self.m == 1:
            return sum(x * y for x, y in zip(u, v)) % self.p
        acc = 0
        add, mul = self.add, self.mul
        for x, y in zip(u, v):
            if x and y:
                acc = add(acc, mul(x, y))
        return acc

    # -- enumeration / sampling ------------------------------------------
    def elements(self) -> range:
        return range(self.q)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    # -- misc ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (GF, (self.p, self.m, self.modulus))


@functools.lru_cache(maxsize=None)
def _build(p: int, m: int, modulus: tuple[int, ...] | None) -> GF:
    if p < 2 or not sympy.isprime(p):
        raise NonPrimeP(f"{p} is not prime")
    if not 1 <= m <= MAX_EXT_DEGREE:
        raise DegreeMismatch(f"extension degree {m} outside [1, {MAX_EXT_DEGREE}]")
    if m > 1 and p >= MAX_EXT_CHAR:
        raise MalformedInput("extension fields need p < 2^31")
    if modulus is None:
        modulus = _default_modulus(p, m)
    else:
        if len(modulus) != m + 1:
            raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {m}")
        if modulus[-1] % p != 1:
            raise DegreeMismatch("modulus must be monic")
        modulus = tuple(c % p for c in modulus)
        if m == 1:
            pass  # every monic linear polynomial is irreducible
        elif not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    if m == 1:
        # arithmetic in GF(p) does not depend on the linear modulus; keep it canonical
        modulus = (0, 1)
    return GF._create(p, m, modulus)


def build_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> GF:
    """Validated field constructor; the default modulus is the smallest irreducible monic.

    "Smallest" compares the integer encoding sum(c_i p^i) of the lower
    coefficients, so c_{m-1} is the most significant digit.
    """
    return GF(p, m, modulus)


def fe_add(F: GF, a: int, b: int) -> int:
    return F.add(a, b)


def fe_sub(F: GF, a: int, b: int) -> int:
    return F.sub(a, b)


def fe_neg(F: GF, a: int) -> int:
    return F.neg(a)


def fe_mul(F: GF, a: int, b: int) -> int:
    return F.mul(a, b)


def fe_div(F: GF, a: int, b: int) -> int:
    return F.div(a, b)


def fe_pow(F: GF, a: int, e: int) -> int:
    return F.pow(a, e)


def sample_uniform(F: GF, rng: random.Random) -> int:
    return F.random_element(rng)


def enumerate_field(F: GF) -> Iterator[int]:
    """All q elements in increasing integer encoding (lexicographic, top coefficient first)."""
    return iter(F.elements())


def field_of_order(q: int) -> GF:
    """GF(q) for a prime power q, with the default modulus."""
    f = sympy.factorint(q) if q > 1 else {}
    if len(f) != 1:
        raise NonPrimeP(f"{q} is not a prime power")
    ((p, m),) = f.items()
    return GF(p, m)
