"""Arithmetic in GF(p^n) with an explicit irreducible modulus.

Elements are stored as integer encodings: the base-p little-endian digits of
the encoding are the polynomial coefficients, so the element c0 + c1*x + ...
has encoding c0 + c1*p + c2*p^2 + ...  Multiplication and division go through
log/antilog tables built once per field, which keeps search and verification
workloads cheap.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    LogOfZero,
    NonPrimeCharacteristic,
    NonPrimitiveBase,
    ReducibleModulus,
    UnsupportedSize,
)

DEFAULT_ORDER_CAP = 1 << 16

# Default moduli (little-endian coefficients, monic) for the extension fields
# that show up at desk scale.  Fixed so golden vectors stay stable.
DEFAULT_MODULI = {
    4: (1, 1, 1),          # x^2 + x + 1
    8: (1, 1, 0, 1),       # x^3 + x + 1
    9: (1, 0, 1),          # x^2 + 1
    16: (1, 1, 0, 0, 1),   # x^4 + x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
}


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p^n and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, int(math.isqrt(q)) + 1):
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m == 1 and is_prime(p):
                return p, n
            return None
    return q, 1  # q itself prime


# polynomial helpers over Z_p, little-endian coefficient tuples

def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    # m must be monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        shift = len(a) - 1 - dm
        lead = a[-1]
        if lead:
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Exhaustive factor search; fine at desk-scale degrees."""
    n = len(mod) - 1
    if n == 1:
        return True
    for r in range(p):  # linear factors <=> roots
        acc = 0
        for c in reversed(mod):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    m = list(mod)
    for d in range(2, n // 2 + 1):
        for enc in range(p ** d):
            div = _digits(enc, p, d) + [1]  # monic degree-d candidate
            if not any(_poly_mod(m, div, p)):
                return False
    return True


def _digits(e: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(e % p)
        e //= p
    return out


def _encode(digits: list[int], p: int) -> int:
    e = 0
    for c in reversed(digits):
        e = e * p + c
    return e


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for enc in range(p ** n):
        cand = tuple(_digits(enc, p, n) + [1])
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """Immutable description of GF(p^n) plus its arithmetic tables."""

    __slots__ = ("p", "n", "q", "modulus", "exp_table", "log_table",
                 "_exp", "_log", "_primitive")

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self._build_tables()

    def _mul_direct(self, a: int, b: int) -> int:
        # table-free multiplication, used only while building the tables
        if self.n == 1:
            return (a * b) % self.p
        prod = _poly_mul(_digits(a, self.p, self.n), _digits(b, self.p, self.n), self.p)
        return _encode(_poly_mod(prod, list(self.modulus), self.p), self.p)

    def _build_tables(self) -> None:
        q = self.q
        # smallest-encoding element of multiplicative order q-1
        gen = None
        for cand in range(1, q):
            x = cand
            order = 1
            while x != 1:
                x = self._mul_direct(x, cand)
                order += 1
            if order == q - 1:
                gen = cand
                break
        assert gen is not None
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_direct(x, gen)
        exp[q - 1:] = exp[:q - 1]
        self.exp_table = exp
        self.log_table = log
        self.exp_table.flags.writeable = False
        self.log_table.flags.writeable = False
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._primitive = gen

    # scalar arithmetic on integer encodings

    def add_enc(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        out, pw = 0, 1
        for _ in range(self.n):
            out += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return out

    def sub_enc(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        out, pw = 0, 1
        for _ in range(self.n):
            out += ((a // pw - b // pw) % self.p) * pw
            pw *= self.p
        return out

    def neg_enc(self, a: int) -> int:
        return self.sub_enc(0, a)

    def mul_enc(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv_enc(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div_enc(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.q - 1)]

    def pow_enc(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # vectorized arithmetic on numpy arrays of encodings

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.n == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.n):
            out += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return out

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        la = self.log_table[np.where(zero, 1, a)]
        lb = self.log_table[np.where(zero, 1, b)]
        out = self.exp_table[la + lb]
        return np.where(zero, 0, out)

    # element construction

    def __call__(self, encoding: int) -> "FieldElement":
        return FieldElement(self, encoding)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        for e in range(self.q):
            yield FieldElement(self, e)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and self.p == other.p and self.n == other.n
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"


class FieldElement:
    """Field element as an integer encoding bound to its FieldSpec."""

    __slots__ = ("field", "encoding")

    def __init__(self, field: FieldSpec, encoding: int):
        if not 0 <= encoding < field.q:
            raise ValueError(f"encoding {encoding} out of range for {field!r}")
        self.field = field
        self.encoding = int(encoding)

    def _peer(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other.encoding

    def __add__(self, other):
        return FieldElement(self.field, self.field.add_enc(self.encoding, self._peer(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub_enc(self.encoding, self._peer(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul_enc(self.encoding, self._peer(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div_enc(self.encoding, self._peer(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_enc(self.encoding, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_enc(self.encoding))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_enc(self.encoding))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.encoding == other
        if isinstance(other, FieldElement):
            return self.field == other.field and self.encoding == other.encoding
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.encoding))

    def __int__(self) -> int:
        return self.encoding

    def __repr__(self) -> str:
        return f"GF({self.field.q}):{self.encoding}"


def make_field(p: int, n: int = 1, modulus=None, *, order_cap: int = DEFAULT_ORDER_CAP) -> FieldSpec:
    """Build a validated GF(p^n).

    If modulus is omitted for an extension field, the default table entry is
    used when present, otherwise the smallest-encoding monic irreducible of
    degree n is found by exhaustive search.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if n < 1:
        raise UnsupportedSize(f"extension degree must be >= 1, got {n}")
    q = p ** n
    if q > order_cap:
        raise UnsupportedSize(f"field order {q} exceeds cap {order_cap}")
    if n == 1:
        return FieldSpec(p, 1, None)
    if modulus is None:
        mod = DEFAULT_MODULI.get(q) or _smallest_irreducible(p, n)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != n + 1 or mod[-1] != 1:
            raise ReducibleModulus(
                f"modulus must be monic of degree {n}, got {list(modulus)}")
    if not _is_irreducible(mod, p):
        raise ReducibleModulus(f"modulus {list(mod)} is reducible over Z_{p}")
    return FieldSpec(p, n, mod)


def make_field_of_order(q: int, modulus=None) -> FieldSpec:
    """Convenience constructor from a prime-power order."""
    pn = factor_prime_power(q)
    if pn is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(pn[0], pn[1], modulus)


def primitive_element(f: FieldSpec) -> FieldElement:
    """Nonzero element of smallest encoding with multiplicative order q-1."""
    return FieldElement(f, f._primitive)


def multiplicative_order(x: FieldElement) -> int:
    if x.encoding == 0:
        raise LogOfZero("zero has no multiplicative order")
    f = x.field
    d = f._log[x.encoding]
    return (f.q - 1) // math.gcd(d, f.q - 1)


def discrete_log(f: FieldSpec, alpha: FieldElement, x: FieldElement) -> int:
    """The unique d in [0, q-1) with alpha^d = x, for primitive alpha."""
    if alpha.field != f or x.field != f:
        raise FieldMismatch("elements not from the given field")
    if x.encoding == 0:
        raise LogOfZero("discrete log of zero")
    if alpha.encoding == 0:
        raise NonPrimitiveBase("zero is not primitive")
    la = f._log[alpha.encoding]
    if math.gcd(la, f.q - 1) != 1:
        raise NonPrimitiveBase(f"{alpha!r} has order {multiplicative_order(alpha)}, not {f.q - 1}")
    if f.q == 2:
        return 0
    return (f._log[x.encoding] * pow(la, -1, f.q - 1)) % (f.q - 1)
