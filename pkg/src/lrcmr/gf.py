"""Finite fields GF(p^e) with a fixed modulus and primitive element.

Elements are carried as ints in ``[0, q)``: the coefficient vector
``(c_0, ..., c_{e-1})`` of the polynomial representative, packed in base ``p``
with the constant term least significant.  :class:`Fe` wraps such an int for
operator-style arithmetic; matrices and kernels use the raw ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotPrime, ReducibleModulus, ZeroElement

MAX_FIELD_SIZE = 1 << 20


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


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p): coefficient lists, low degree first ------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def _poly_powmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        n >>= 1
    return result


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..e//2``."""
    e = len(modulus) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(modulus), list(low) + [1], p):
                return False
    return True


def _x_is_primitive(modulus: list[int], p: int) -> bool:
    e = len(modulus) - 1
    q = p**e
    for ell in prime_factors(q - 1):
        if _poly_powmod([0, 1], (q - 1) // ell, modulus, p) == [1]:
            return False
    return True


def _pack(coeffs, p: int) -> int:
    v = 0
    for c in reversed(list(coeffs)):
        v = v * p + int(c)
    return v


def _unpack(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(v % p)
        v //= p
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) with a monic irreducible ``modulus`` and primitive ``alpha``."""

    p: int
    e: int
    modulus: tuple[int, ...]
    alpha: int
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.e)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    # tables are derived data; equality and hashing ignore them
    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        exp_t = np.zeros(2 * (q - 1) if q > 2 else 2, dtype=np.int64)
        log_t = np.zeros(q, dtype=np.int64)
        alpha = _unpack(self.alpha, self.p, self.e)
        cur = [1]
        mod = list(self.modulus)
        for i in range(q - 1):
            v = _pack(cur + [0] * (self.e - len(cur)), self.p)
            exp_t[i] = v
            log_t[v] = i
            cur = _poly_mulmod(cur, alpha, mod, self.p) if self.e > 1 else [cur[0] * alpha[0] % self.p]
        exp_t[q - 1 :] = exp_t[: len(exp_t) - (q - 1)]
        exp_t.setflags(write=False)
        log_t.setflags(write=False)
        return exp_t, log_t

    @property
    def exp_table(self) -> np.ndarray:
        return self._tables[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._tables[1]

    @cached_property
    def zech_table(self) -> np.ndarray:
        """``zech[d] = log(1 + alpha**d)``, or ``-1`` where ``1 + alpha**d = 0``."""
        exp_t, log_t = self._tables
        qm1 = self.q - 1
        ones = np.array([self.add(1, int(v)) for v in exp_t[:qm1]], dtype=np.int64)
        z = np.where(ones == 0, -1, log_t[ones])
        z.setflags(write=False)
        return z

    def kernel_args(self) -> tuple:
        """``(p, e, exp, log, zech, q-1)`` in the order the kernels expect."""
        exp_t, log_t = self._tables
        return self.p, self.e, exp_t, log_t, self.zech_table, self.q - 1

    # -- scalar arithmetic on packed ints --------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        return _pack([(x + y) % p for x, y in zip(_unpack(a, p, self.e), _unpack(b, p, self.e))], p)

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        return _pack([(-x) % p for x in _unpack(a, p, self.e)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp_t, log_t = self._tables
        return int(exp_t[log_t[a] + log_t[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        exp_t, log_t = self._tables
        return int(exp_t[(self.q - 1 - log_t[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if n == 0 else 0
        exp_t, log_t = self._tables
        return int(exp_t[(int(log_t[a]) * n) % (self.q - 1)])

    def alpha_pow(self, n: int) -> int:
        """``alpha**n`` for any integer ``n``."""
        return int(self.exp_table[n % (self.q - 1)])

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        qm1 = self.q - 1
        return qm1 // gcd(int(self.log_table[a]), qm1)

    def element(self, value) -> Fe:
        if isinstance(value, Fe):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        return Fe(self, int(value) % self.q if not isinstance(value, (list, tuple)) else _pack(value, self.p))

    @property
    def zero(self) -> Fe:
        return Fe(self, 0)

    @property
    def one(self) -> Fe:
        return Fe(self, 1)

    @property
    def gen(self) -> Fe:
        return Fe(self, self.alpha)

    def elements(self) -> list[Fe]:
        return [Fe(self, v) for v in range(self.q)]

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus), "alpha": self.alpha}


@dataclass(frozen=True)
class Fe:
    """A field element; ``value`` is the packed coefficient vector."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_unpack(self.value, self.field.p, self.field.e))

    def _other(self, other) -> int:
        if isinstance(other, Fe):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p  # integers embed via the prime subfield
        return NotImplemented

    def __add__(self, other):
        return Fe(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Fe(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Fe(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return Fe(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return Fe(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Fe(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Fe(self.field, self.field.div(self._other(other), self.value))

    def __pow__(self, n: int):
        return Fe(self.field, self.field.pow(self.value, n))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fe({self.value} in {self.field!r})"


def arith(op: str, a: Fe, b: Fe) -> Fe:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    f = a.field
    fn = {"add": f.add, "sub": f.sub, "mul": f.mul, "div": f.div}[op]
    return Fe(f, fn(a.value, b.value))


def power(a: Fe, n: int) -> Fe:
    return a**n


def element_order(a: Fe) -> int:
    return a.field.order(a.value)


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e`` (compared constant term
    first) whose root ``x`` is primitive."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p) and _x_is_primitive(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no primitive modulus of degree {e} over GF({p})")  # unreachable


@lru_cache(maxsize=None)
def _make_field(p: int, e: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e > MAX_FIELD_SIZE:
        raise ValueError(f"GF({p}^{e}) exceeds the supported size 2^20")
    if modulus is None:
        modulus = default_modulus(p, e)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {e}")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    if e == 1:
        alpha = next(g for g in range(1, p) if _prime_field_order(g, p) == p - 1) if p > 2 else 1
    elif _x_is_primitive(list(modulus), p):
        alpha = p  # the residue class of x
    else:
        probe = FieldSpec(p, e, modulus, p)
        alpha = next(v for v in range(2, p**e) if _is_primitive_packed(probe, v))
    return FieldSpec(p, e, modulus, alpha)


def _prime_field_order(g: int, p: int) -> int:
    t, x = 1, g % p
    while x != 1:
        x = x * g % p
        t += 1
    return t


def _is_primitive_packed(f: FieldSpec, v: int) -> bool:
    coeffs = _unpack(v, f.p, f.e)
    mod = list(f.modulus)
    for ell in prime_factors(f.q - 1):
        if _poly_powmod(_trim(coeffs[:]), (f.q - 1) // ell, mod, f.p) == [1]:
            return False
    return True


def make_field(p: int, e: int = 1, modulus=None) -> FieldSpec:
    """Build GF(p^e); omitted modulus picks the documented default."""
    return _make_field(int(p), int(e), None if modulus is None else tuple(int(c) for c in modulus))


def field_from_json(obj: dict) -> FieldSpec:
    return make_field(obj["p"], obj["e"], obj["modulus"])
