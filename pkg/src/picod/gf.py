"""Arithmetic in binary extension fields GF(2^b), 1 <= b <= 16.

Elements are plain integers in ``[0, 2^b)`` whose bits are polynomial
coefficients over GF(2).  Fields with ``b <= 12`` multiply through
log/antilog tables; wider fields use carry-less multiply and reduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, UsageError

MAX_BITS = 16
TABLE_BITS = 12


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, p: int) -> int:
    """Remainder of ``a`` divided by ``p`` as polynomials over GF(2)."""
    dp = poly_degree(p)
    while a and poly_degree(a) >= dp:
        a ^= p << (poly_degree(a) - dp)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = poly_degree(p)
    if d < 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def default_polynomial(b: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree ``b``."""
    if not 1 <= b <= MAX_BITS:
        raise UsageError(f"extension degree must be in [1, {MAX_BITS}], got {b}")
    for p in range(1 << b, 1 << (b + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _clmul_reduce(x: int, y: int, b: int, poly: int) -> int:
    r = 0
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x >> b:
            x ^= poly
    return r


@lru_cache(maxsize=None)
def _tables(b: int, poly: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(exp, log) tables built from the smallest multiplicative generator.

    ``exp`` has length ``2 * order`` so a sum of two logs indexes it directly.
    """
    order = (1 << b) - 1
    for g in range(1, 1 << b):
        exp = [0] * (2 * order)
        x = 1
        ok = True
        for i in range(order):
            if i and x == 1:
                ok = False
                break
            exp[i] = x
            x = _clmul_reduce(x, g, b, poly)
        if ok:
            break
    else:  # pragma: no cover
        raise AssertionError("no generator found; polynomial not irreducible")
    for i in range(order, 2 * order):
        exp[i] = exp[i - order]
    log = [0] * (1 << b)
    for i in range(order):
        log[exp[i]] = i
    return tuple(exp), tuple(log)


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^b) defined by a degree-b irreducible ``poly`` (bit mask incl. x^b)."""

    b: int
    poly: int = 0

    def __post_init__(self):
        if not 1 <= self.b <= MAX_BITS:
            raise UsageError(f"extension degree must be in [1, {MAX_BITS}], got {self.b}")
        if self.poly == 0:
            object.__setattr__(self, "poly", default_polynomial(self.b))
        if poly_degree(self.poly) != self.b:
            raise UsageError(f"polynomial {self.poly:#b} does not have degree {self.b}")
        if not is_irreducible(self.poly):
            raise UsageError(f"polynomial {self.poly:#b} is reducible")

    @classmethod
    def of_size_at_least(cls, size: int) -> FieldSpec:
        """Smallest binary field with at least ``size`` elements."""
        b = max(1, (max(size, 2) - 1).bit_length())
        return cls(b)

    @property
    def size(self) -> int:
        return 1 << self.b

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return (1 << self.b) - 1

    @property
    def has_tables(self) -> bool:
        return self.b <= TABLE_BITS

    @property
    def tables(self):
        if not self.has_tables:
            raise UsageError(f"GF(2^{self.b}) has no log tables")
        return _tables(self.b, self.poly)

    def to_json(self) -> dict:
        return {"b": self.b, "poly": self.poly}

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        return cls(int(d["b"]), int(d["poly"]))

    def __str__(self):
        return f"GF(2^{self.b})"

    # raw integer arithmetic

    def check(self, x: int) -> int:
        if not 0 <= x < (1 << self.b):
            raise UsageError(f"{x} is not an element of {self}")
        return x

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.has_tables:
            exp, log = self.tables
            return exp[log[x] + log[y]]
        return _clmul_reduce(x, y, self.b, self.poly)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise DomainError("zero has no multiplicative inverse")
        if self.has_tables:
            exp, log = self.tables
            return exp[(self.order - log[x]) % self.order]
        return self.pow(x, self.order - 1)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.size)]


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self):
        self.field.check(self.value)

    def _same(self, other: FieldElement) -> FieldSpec:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise UsageError(f"field mismatch: {self.field} vs {other.field}")
        return self.field

    def __add__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(self.value ^ other.value, f)

    __sub__ = __add__

    def __mul__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f.mul(self.value, other.value), f)

    def __truediv__(self, other):
        f = self._same(other)
        if f is NotImplemented:
            return f
        return FieldElement(f.div(self.value, other.value), f)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value:#x}@{self.field}"


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


GF2 = FieldSpec(1)
