"""Exact arithmetic in GF(p^e) with a reproducible canonical construction.

Elements are encoded as integers in [0, q): the base-p digits of the encoding
are the coefficients of the polynomial-basis representative, low degree first.
The modulus is the lexicographically smallest monic *primitive* polynomial of
degree e over GF(p), comparing coefficient vectors low-degree first, so the
encodings are bit-identical across runs, machines and processes.  For e = 1
the modulus is the formal polynomial x and arithmetic is plain mod p.

Because the modulus is primitive, x itself generates the multiplicative
group, which gives discrete log/antilog tables for free.  Fields up to
q = 2^20 are supported; small fields (q <= 2048) additionally carry full
q x q addition and multiplication tables so that numpy bulk operations
reduce to flat table gathers.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    NotPrimeError,
    TooLargeError,
)

MAX_FIELD_SIZE = 1 << 20
_FULL_TABLE_LIMIT = 2048

_FIELD_CACHE: dict[tuple[int, int], "Field"] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomial arithmetic over GF(p), used only for the modulus scan --

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul_mod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    return _prem(prod, mod, p)


def _prem(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    _ptrim(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while a and len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _ppow_x(k: int, mod: list[int], p: int) -> list[int]:
    # x^k mod (mod), square-and-multiply on the exponent
    result = [1]
    base = _prem([0, 1], mod, p)
    while k:
        if k & 1:
            result = _pmul_mod(result, base, mod, p)
        base = _pmul_mod(base, base, mod, p)
        k >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _prem(a, b, p)
        _ptrim(b)
    return a


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    e = len(coeffs) - 1
    if e < 1 or coeffs[-1] != 1:
        return False
    if coeffs[0] == 0:
        return e == 1
    # x^(p^e) == x mod f, and gcd(x^(p^(e/l)) - x, f) = 1 for primes l | e
    xq = _ppow_x(p**e, coeffs, p)
    if _ptrim([(c1 - c2) % p for c1, c2 in itertools.zip_longest(xq, [0, 1], fillvalue=0)]):
        return False
    for ell in _prime_factors(e):
        xr = _ppow_x(p ** (e // ell), coeffs, p)
        diff = [(c1 - c2) % p for c1, c2 in itertools.zip_longest(xr, [0, 1], fillvalue=0)]
        g = _pgcd(coeffs, diff, p)
        if len(g) - 1 >= 1:
            return False
    return True


def _is_primitive(coeffs: list[int], p: int) -> bool:
    # x must have multiplicative order exactly p^e - 1 mod the (irreducible) modulus
    e = len(coeffs) - 1
    q1 = p**e - 1
    if coeffs[0] == 0:
        return False
    for d in _prime_factors(q1):
        if _ppow_x(q1 // d, coeffs, p) == [1]:
            return False
    return True


def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        coeffs = list(tail) + [1]
        if _is_irreducible(coeffs, p) and _is_primitive(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no primitive polynomial of degree {e} over GF({p})")  # unreachable


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for a in range(2, p):
        if all(pow(a, (p - 1) // d, p) != 1 for d in factors):
            return a
    raise RuntimeError("no primitive root found")  # unreachable


class Field:
    """GF(p^e) with canonical modulus and integer-encoded elements.

    Construct through :func:`field_create`; direct construction bypasses the
    cache but produces an identical field.
    """

    __slots__ = (
        "p", "e", "q", "modulus",
        "_exp", "_log", "_digit_pows",
        "_add_flat", "_sub_flat", "_mul_flat", "_neg_t", "_inv_t",
    )

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if e < 1:
            raise TooLargeError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_FIELD_SIZE:
            raise TooLargeError(f"field size {p}^{e} exceeds {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _canonical_modulus(p, e)
        self._digit_pows = tuple(p**i for i in range(e))
        self._build_log_tables()
        if q <= _FULL_TABLE_LIMIT:
            self._build_full_tables()
        else:
            self._add_flat = None
            self._sub_flat = None
            self._mul_flat = None
            self._build_unary_tables()

    # -- construction helpers -------------------------------------------

    def _scalar_add(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        for pw in self._digit_pows:
            out += (((a // pw) + (b // pw)) % p) * pw
        return out

    def _scalar_digit_scale(self, c: int, a: int) -> int:
        p = self.p
        out = 0
        for pw in self._digit_pows:
            out += ((c * (a // pw)) % p) * pw
        return out

    def _mul_by_x(self, a: int) -> int:
        # shift digits up one place, then reduce the overflow digit by the modulus
        v = a * self.p
        top, low = divmod(v, self.q)
        if top == 0:
            return low
        mod_low = sum(self.modulus[i] * self._digit_pows[i] for i in range(self.e))
        return self._scalar_add(low, self._scalar_digit_scale((self.p - top) % self.p, mod_low))

    def _build_log_tables(self) -> None:
        q = self.q
        exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if self.e == 1:
            g = _smallest_primitive_root(self.p)
            cur = 1
            for i in range(q - 1):
                exp[i] = cur
                log[cur] = i
                cur = (cur * g) % self.p
        else:
            cur = 1
            for i in range(q - 1):
                exp[i] = cur
                log[cur] = i
                cur = self._mul_by_x(cur)
            if cur != 1:
                raise RuntimeError("modulus is not primitive")  # unreachable
        self._exp = exp
        self._log = log

    def _digit_matrix(self) -> np.ndarray:
        vals = np.arange(self.q, dtype=np.int64)
        return np.stack([(vals // pw) % self.p for pw in self._digit_pows], axis=1)

    def _build_unary_tables(self) -> None:
        digs = self._digit_matrix()
        neg = ((self.p - digs) % self.p) @ np.asarray(self._digit_pows, dtype=np.int64)
        self._neg_t = neg
        inv = np.zeros(self.q, dtype=np.int64)
        if self.q > 1:
            logs = self._log[1:]
            inv[1:] = self._exp[(self.q - 1 - logs) % (self.q - 1)]
        self._inv_t = inv

    def _build_full_tables(self) -> None:
        q = self.q
        self._build_unary_tables()
        digs = self._digit_matrix()
        pows = np.asarray(self._digit_pows, dtype=np.int64)
        add = np.zeros((q, q), dtype=np.int64)
        for i in range(self.e):
            col = digs[:, i]
            add += (((col[:, None] + col[None, :]) % self.p) * pows[i])
        self._add_flat = add.reshape(-1)
        self._sub_flat = add[:, self._neg_t].reshape(-1)
        logs = self._log.copy()
        logs[0] = 0
        mul = self._exp[(logs[:, None] + logs[None, :]) % max(q - 1, 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self._mul_flat = mul.reshape(-1)

    # -- identity / equality ---------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- scalar arithmetic on encodings -----------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_flat is not None:
            return int(self._add_flat[a * self.q + b])
        if self.e == 1:
            return (a + b) % self.p
        return self._scalar_add(a, b)

    def neg(self, a: int) -> int:
        return int(self._neg_t[a])

    def sub(self, a: int, b: int) -> int:
        if self._sub_flat is not None:
            return int(self._sub_flat[a * self.q + b])
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_flat is not None:
            return int(self._mul_flat[a * self.q + b])
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        return int(self._inv_t[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DivisionByZeroError("negative power of zero")
            return 0
        la = int(self._log[a])
        return int(self._exp[(la * k) % (self.q - 1)])

    # -- vectorized arithmetic on int64 numpy arrays ----------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._add_flat is not None:
            return self._add_flat[a * self.q + b]
        if self.e == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._digit_pows:
            out += (((a // pw) + (b // pw)) % self.p) * pw
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return self._neg_t[a]

    def vsub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._sub_flat is not None:
            return self._sub_flat[a * self.q + b]
        return self.vadd(a, self._neg_t[b])

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_flat is not None:
            return self._mul_flat[a * self.q + b]
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[(np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZeroError("inverse of zero")
        return self._inv_t[a]

    def vdiv(self, a, b):
        return self.vmul(a, self.vinv(b))

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if k < 0:
            return self.vpow(self.vinv(a), -k)
        la = self._log[a]
        out = self._exp[(np.where(la < 0, 0, la) * k) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    # -- elements ----------------------------------------------------------

    def element(self, enc: int) -> "FieldElement":
        return FieldElement(self, enc % self.q)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def generator(self) -> "FieldElement":
        if self.q == 2:
            return FieldElement(self, 1)
        return FieldElement(self, int(self._exp[1]))

    def from_prime_subfield(self, c: int) -> int:
        """Encoding of the image of the integer c under GF(p) -> GF(q)."""
        return c % self.p

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


class FieldElement:
    """An element of GF(p^e), identified by its integer encoding."""

    __slots__ = ("field", "enc")

    def __init__(self, field: Field, enc: int):
        self.field = field
        self.enc = enc

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.enc
        if isinstance(other, int):
            return other % self.field.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.enc, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.enc, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.enc))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.enc, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.enc, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.enc))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.enc))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.enc, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.enc))

    def __bool__(self) -> bool:
        return self.enc != 0

    def __repr__(self) -> str:
        return f"{self.field!r}:{self.enc}"


def field_create(p: int, e: int) -> Field:
    """Create (or fetch the cached) GF(p^e) with the canonical modulus."""
    key = (p, e)
    f = _FIELD_CACHE.get(key)
    if f is None:
        f = Field(p, e)
        _FIELD_CACHE[key] = f
    return f


def field_from_json(obj: dict) -> Field:
    f = field_create(int(obj["p"]), int(obj["e"]))
    if "modulus" in obj and list(obj["modulus"]) != list(f.modulus):
        raise FieldMismatchError("modulus in serialized field is not the canonical one")
    return f


def mth_roots(field: Field, c, m: int) -> list[FieldElement]:
    """All y in GF(q) with y^m = c, sorted by encoding.

    Exhaustive over the field (vectorized): for c != 0 the count is 0 or
    gcd(m, q-1); for c = 0 the only root is 0.
    """
    cenc = c.enc if isinstance(c, FieldElement) else int(c)
    if m < 1:
        raise ValueError("m must be >= 1")
    if cenc == 0:
        return [field.zero()]
    vals = np.arange(field.q, dtype=np.int64)
    powers = field.vpow(vals, m)
    hits = np.nonzero(powers == cenc)[0]
    return [FieldElement(field, int(v)) for v in hits]
