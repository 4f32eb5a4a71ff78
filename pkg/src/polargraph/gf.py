"""Arithmetic in GF(p^k) for small prime powers.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` is the coefficient of ``x^i`` in the polynomial representative.
``FieldSpec`` works on these integer codes directly (fast path used by the
plane and graph builders); ``FieldElem`` wraps a code with its field for
readable, checked arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

# Monic moduli, coefficients least-degree first.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (5, 2): (2, 0, 1),        # x^2 + 2
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
}

MAX_ORDER = 2 ** 16
LOG_TABLE_LIMIT = 2 ** 12


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q = p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# -- polynomials over GF(p), coefficient lists least-degree first -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim([c % p for c in m])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        shift = len(a) - len(m)
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _poly_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def check_modulus(p: int, k: int, modulus: Sequence[int]) -> None:
    """Raise FieldError unless ``modulus`` is monic of degree k and irreducible.

    Irreducibility is decided by the absence of roots (enough for k <= 3)
    plus, for k == 4, the absence of monic quadratic factors.
    """
    mod = list(modulus)
    if len(mod) != k + 1 or mod[-1] != 1:
        raise FieldError(f"modulus {mod} is not monic of degree {k}")
    if any(not 0 <= c < p for c in mod):
        raise FieldError(f"modulus {mod} has coefficients outside [0, {p})")
    if k == 1:
        return
    for r in range(p):
        if _poly_eval(mod, r, p) == 0:
            raise FieldError(f"modulus {mod} has root {r} over GF({p})")
    if k == 4:
        for c0 in range(p):
            for c1 in range(p):
                if not _poly_mod(mod, [c0, c1, 1], p):
                    raise FieldError(
                        f"modulus {mod} has quadratic factor x^2 + {c1}x + {c0}")
    if k > 4:
        raise FieldError("extension degree above 4 is not supported")


class FieldSpec:
    """The finite field GF(p^k) with an explicit modulus polynomial.

    Immutable after construction.  Elements are integer codes in ``range(q)``;
    code 0 is zero and code 1 is one.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        check_modulus(p, k, modulus)
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p ** k
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.q <= LOG_TABLE_LIMIT:
            self._build_log_tables()

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (FieldSpec, (self.p, self.k, self.modulus))

    # -- codes <-> coefficient vectors --------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + c % self.p
        return a

    def elem(self, value: int | Sequence[int]) -> FieldElem:
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.k == 1:
                value %= self.p
            elif not 0 <= value < self.q:
                raise FieldError(f"code {value} out of range for GF({self.q})")
            return FieldElem(value, self)
        return FieldElem(self.code(value), self)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(a, self) for a in range(self.q)]

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.code([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            raise FieldError("negative exponent")
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def _mul_poly(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.code(_poly_mod(prod, self.modulus, self.p))

    def _build_log_tables(self) -> None:
        n = self.q - 1
        for g in range(1, self.q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._mul_poly(x, g)
            if len(powers) == n:
                break
        exp = powers + powers  # exp[i] for 0 <= i < 2n avoids a modulo in mul
        log = [0] * self.q
        for i, x in enumerate(powers):
            log[x] = i
        self._exp, self._log = exp, log

    # -- dense tables for vectorised builders --------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        t = np.empty((self.q, self.q), dtype=np.int64)
        for a in range(self.q):
            for b in range(self.q):
                t[a, b] = self.add(a, b)
        t.setflags(write=False)
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        t = np.empty((self.q, self.q), dtype=np.int64)
        for a in range(self.q):
            for b in range(self.q):
                t[a, b] = self.mul(a, b)
        t.setflags(write=False)
        return t


@dataclass(frozen=True)
class FieldElem:
    value: int
    field: FieldSpec

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.elem(other % self.field.p).value
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field.neg(self.value), self.field)

    def __sub__(self, other):
        return FieldElem(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return FieldElem(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return FieldElem(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return self * FieldElem(self.field.inv(self._other(other)), self.field)

    def __pow__(self, n: int):
        return FieldElem(self.field.pow(self.value, n), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __lt__(self, other: FieldElem) -> bool:
        return self.value < self._other(other)

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if c != 1 or i == 0 else mono)
        return " + ".join(reversed(terms)) if terms else "0"


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^k).

    Without ``modulus`` the fixed table entry is used (prime fields need none).
    A supplied modulus overrides the table after validation.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not 1 <= k <= 4:
        raise FieldError(f"extension degree {k} outside 1..4")
    if p ** k > MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds {MAX_ORDER}")
    if modulus is None:
        if k == 1:
            modulus = (0, 1)
        elif (p, k) in MODULUS_TABLE:
            modulus = MODULUS_TABLE[(p, k)]
        else:
            raise FieldError(f"no built-in modulus for GF({p}^{k}); pass one explicitly")
    return FieldSpec(p, k, modulus)


def field_of_order(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], modulus)
