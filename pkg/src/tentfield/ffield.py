"""Arithmetic in F_p[x] and F_{p^n}.

Polynomials over F_p are coefficient tuples, lowest degree first, with no trailing
zeros (the zero polynomial is the empty tuple). Field elements are coefficient
vectors of length exactly n, the class representative of degree < n modulo the
context's modulus.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np
import numpy.typing as npt
from sympy import divisors as _sympy_divisors
from sympy import factorint, isprime

from .errors import InvalidArgumentError, InvalidModulusError

log = logging.getLogger(__name__)

IntMatrix = npt.NDArray[np.int64]


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 2 or not isprime(p):
        raise InvalidArgumentError(f"p must be a prime number, got {p!r}.")
    return p


def require_positive(value: int, *, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}.")
    return value


def divisors(n: int) -> list[int]:
    require_positive(n, name="n")
    return [int(d) for d in _sympy_divisors(n)]


def mobius(n: int) -> int:
    require_positive(n, name="n")
    exponents = factorint(n)
    if any(e > 1 for e in exponents.values()):
        return 0
    return -1 if len(exponents) % 2 else 1


def prime_factors(n: int) -> list[int]:
    return sorted(int(q) for q in factorint(n))


# ---------------------------------------------------------------------------
# F_p[x]
# ---------------------------------------------------------------------------


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class PolyFp:
    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.p < 2:
            raise InvalidArgumentError(f"modulus p must be >= 2, got {self.p!r}.")
        normalized = _trim([int(c) % self.p for c in self.coeffs])
        object.__setattr__(self, "coeffs", normalized)

    @classmethod
    def from_coeffs(cls, p: int, coeffs: Iterable[int]) -> "PolyFp":
        return cls(p, tuple(coeffs))

    @classmethod
    def x(cls, p: int) -> "PolyFp":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __add__(self, other: "PolyFp") -> "PolyFp":
        self._check_same_field(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return PolyFp(self.p, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "PolyFp":
        return PolyFp(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        return self + (-other)

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        self._check_same_field(other)
        if self.is_zero() or other.is_zero():
            return PolyFp(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyFp(self.p, tuple(out))

    def __divmod__(self, other: "PolyFp") -> tuple["PolyFp", "PolyFp"]:
        self._check_same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = pow(other.coeffs[-1], -1, p)
        shift_max = len(rem) - len(other.coeffs)
        for shift in range(shift_max, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] * inv_lead % p
            if c:
                quot[shift] = c
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = (rem[shift + j] - c * b) % p
        return PolyFp(p, tuple(quot)), PolyFp(p, tuple(rem))

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[1]

    def monic(self) -> "PolyFp":
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return PolyFp(self.p, tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "PolyFp") -> "PolyFp":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: "PolyFp") -> "PolyFp":
        result = PolyFp(self.p, (1,)) % modulus
        base = self % modulus
        while e > 0:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __str__(self) -> str:
        return format_coeffs(self.coeffs, "x")

    def _check_same_field(self, other: "PolyFp") -> None:
        if not isinstance(other, PolyFp) or other.p != self.p:
            raise InvalidArgumentError("polynomials must be over the same prime field.")


def format_coeffs(coeffs: Sequence[int], symbol: str) -> str:
    """Render ``[1, 1, 0, 1]`` as ``"a^3 + a + 1"`` (highest degree first)."""
    terms: list[str] = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if not c:
            continue
        if power == 0:
            terms.append(str(c))
            continue
        mono = symbol if power == 1 else f"{symbol}^{power}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def is_irreducible(f: PolyFp) -> bool:
    """Ben-Or test: f of degree d is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= d/2."""
    if not isinstance(f, PolyFp):
        raise InvalidArgumentError("is_irreducible expects a PolyFp.")
    if f.degree < 1:
        raise InvalidArgumentError(f"irreducibility is undefined for constant polynomial {f}.")
    if not f.is_monic():
        raise InvalidArgumentError(f"polynomial must be monic, got {f}.")
    if f.degree == 1:
        return True

    x = PolyFp.x(f.p)
    x_power = x % f
    for _ in range(f.degree // 2):
        x_power = x_power.powmod(f.p, f)
        if (x_power - x).gcd(f).degree > 0:
            return False
    return True


def monic_polynomials(p: int, degree: int) -> Iterator[PolyFp]:
    """All monic polynomials of the given degree, lexicographic from the constant term up."""
    for tail in itertools.product(range(p), repeat=degree):
        yield PolyFp(p, tail + (1,))


def count_irreducibles(p: int, m: int) -> int:
    require_prime(p)
    require_positive(m, name="m")
    total = sum(mobius(m // d) * p**d for d in divisors(m))
    return total // m


def divisor_sum_check(p: int, n: int) -> bool:
    require_prime(p)
    require_positive(n, name="n")
    return sum(d * count_irreducibles(p, d) for d in divisors(n)) == p**n


# ---------------------------------------------------------------------------
# F_{p^n}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _mul_mod(p: int, modulus: tuple[int, ...], a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # modulus is monic of degree n = len(a) = len(b)
    n = len(a)
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for top in range(2 * n - 2, n - 1, -1):
        c = prod[top] % p
        if c:
            base = top - n
            for j in range(n):
                prod[base + j] -= c * modulus[j]
        prod[top] = 0
    return tuple(v % p for v in prod[:n])


def _pow_mod(p: int, modulus: tuple[int, ...], a: tuple[int, ...], e: int) -> tuple[int, ...]:
    n = len(a)
    result = (1,) + (0,) * (n - 1)
    base = a
    while e > 0:
        if e & 1:
            result = _mul_mod(p, modulus, result, base)
        base = _mul_mod(p, modulus, base, base)
        e >>= 1
    return result


def _is_primitive(p: int, n: int, modulus: tuple[int, ...], a: tuple[int, ...]) -> bool:
    if not any(a):
        return False
    order = p**n - 1
    one = (1,) + (0,) * (n - 1)
    if _pow_mod(p, modulus, a, order) != one:
        return False
    return all(_pow_mod(p, modulus, a, order // q) != one for q in prime_factors(order))


def _reduce_x(p: int, n: int, modulus: PolyFp) -> tuple[int, ...]:
    rem = PolyFp.x(p) % modulus
    return rem.coeffs + (0,) * (n - len(rem.coeffs))


@dataclass(frozen=True)
class FieldContext:
    p: int
    n: int
    modulus: PolyFp
    alpha: FieldElement

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def _mod(self) -> tuple[int, ...]:
        return self.modulus.coeffs

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.n)

    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.n - 1))

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        values = [int(c) for c in coeffs]
        if len(values) > self.n:
            raise InvalidArgumentError(f"element of F_{self.p}^{self.n} has at most {self.n} coefficients.")
        values += [0] * (self.n - len(values))
        return FieldElement(tuple(v % self.p for v in values))

    def element_from_int(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise InvalidArgumentError(f"element index must be in [0, {self.order}), got {value}.")
        digits = []
        for _ in range(self.n):
            value, d = divmod(value, self.p)
            digits.append(d)
        return FieldElement(tuple(digits))

    def elements(self) -> Iterator[FieldElement]:
        for value in range(self.order):
            yield self.element_from_int(value)

    def check(self, a: FieldElement) -> FieldElement:
        if not isinstance(a, FieldElement) or len(a.coeffs) != self.n:
            raise InvalidArgumentError(f"element {a!r} does not belong to F_{self.p}^{self.n}.")
        if any(not 0 <= c < self.p for c in a.coeffs):
            raise InvalidArgumentError(f"element {a!r} has coefficients outside [0, {self.p}).")
        return a

    def format(self, a: FieldElement, symbol: str = "a") -> str:
        self.check(a)
        return format_coeffs(a.coeffs, symbol)


def make_field(p: int, n: int, modulus: PolyFp | Sequence[int] | None = None) -> FieldContext:
    require_prime(p)
    require_positive(n, name="n")

    if modulus is not None:
        poly = modulus if isinstance(modulus, PolyFp) else PolyFp.from_coeffs(p, modulus)
        if poly.p != p:
            raise InvalidModulusError(f"modulus is over F_{poly.p}, expected F_{p}.")
        if poly.degree != n:
            raise InvalidModulusError(f"modulus {poly} must have degree {n}, got {poly.degree}.")
        if not poly.is_monic():
            raise InvalidModulusError(f"modulus {poly} must be monic.")
        if not is_irreducible(poly):
            raise InvalidModulusError(f"modulus {poly} is reducible over F_{p}.")
        alpha = _find_primitive(p, n, poly)
        log.debug("using supplied modulus %s with alpha=%s", poly, alpha)
        return FieldContext(p=p, n=n, modulus=poly, alpha=FieldElement(alpha))

    poly, alpha = _default_modulus(p, n)
    log.debug("selected default modulus %s with alpha=%s", poly, alpha)
    return FieldContext(p=p, n=n, modulus=poly, alpha=FieldElement(alpha))


def _find_primitive(p: int, n: int, poly: PolyFp) -> tuple[int, ...]:
    x = _reduce_x(p, n, poly)
    if _is_primitive(p, n, poly.coeffs, x):
        return x
    for candidate in itertools.product(range(p), repeat=n):
        if _is_primitive(p, n, poly.coeffs, candidate):
            return candidate
    raise InvalidModulusError(f"no primitive element found modulo {poly}.")  # pragma: no cover


@lru_cache(maxsize=64)
def _default_modulus(p: int, n: int) -> tuple[PolyFp, tuple[int, ...]]:
    first_irreducible: PolyFp | None = None
    for poly in monic_polynomials(p, n):
        if not is_irreducible(poly):
            continue
        if first_irreducible is None:
            first_irreducible = poly
        x = _reduce_x(p, n, poly)
        if _is_primitive(p, n, poly.coeffs, x):
            return poly, x
    # x is primitive modulo some irreducible of every degree, so this is a fallback only.
    assert first_irreducible is not None  # pragma: no cover
    return first_irreducible, _find_primitive(p, n, first_irreducible)  # pragma: no cover


def fe_add(ctx: FieldContext, a: FieldElement, b: FieldElement) -> FieldElement:
    ctx.check(a)
    ctx.check(b)
    return FieldElement(tuple((x + y) % ctx.p for x, y in zip(a.coeffs, b.coeffs)))


def fe_mul(ctx: FieldContext, a: FieldElement, b: FieldElement) -> FieldElement:
    ctx.check(a)
    ctx.check(b)
    return FieldElement(_mul_mod(ctx.p, ctx._mod, a.coeffs, b.coeffs))


def fe_pow(ctx: FieldContext, a: FieldElement, e: int) -> FieldElement:
    ctx.check(a)
    if e < 0:
        raise InvalidArgumentError(f"exponent must be non-negative, got {e}.")
    return FieldElement(_pow_mod(ctx.p, ctx._mod, a.coeffs, e))


@lru_cache(maxsize=32)
def frobenius_matrix(ctx: FieldContext) -> IntMatrix:
    """Column i holds (x^i)^p, so a^p == frobenius_matrix(ctx) @ a (mod p) on coefficient vectors."""
    basis = [tuple(int(i == j) for j in range(ctx.n)) for i in range(ctx.n)]
    columns = [_pow_mod(ctx.p, ctx._mod, e, ctx.p) for e in basis]
    matrix = np.array(columns, dtype=np.int64).T
    matrix.setflags(write=False)
    return matrix


def frobenius(ctx: FieldContext, a: FieldElement) -> FieldElement:
    ctx.check(a)
    image = frobenius_matrix(ctx) @ np.array(a.coeffs, dtype=np.int64) % ctx.p
    return FieldElement(tuple(int(v) for v in image))


def frobenius_images(ctx: FieldContext, elements: Sequence[FieldElement]) -> IntMatrix:
    """Row r holds the coefficients of elements[r]^p."""
    for a in elements:
        ctx.check(a)
    coeffs = np.array([a.coeffs for a in elements], dtype=np.int64).reshape(len(elements), ctx.n)
    return coeffs @ frobenius_matrix(ctx).T % ctx.p


def element_order(ctx: FieldContext, a: FieldElement) -> int:
    ctx.check(a)
    if a.is_zero():
        raise InvalidArgumentError("the zero element has no multiplicative order.")
    one = ctx.one()
    order = ctx.order - 1
    for q in prime_factors(order):
        while order % q == 0 and fe_pow(ctx, a, order // q) == one:
            order //= q
    return order


@lru_cache(maxsize=8)
def alpha_powers(ctx: FieldContext) -> tuple[FieldElement, ...]:
    """``(alpha^0, alpha^1, ..., alpha^(p^n - 1))`` by repeated multiplication, cached per field."""
    powers = [ctx.one()]
    current = ctx.one().coeffs
    for _ in range(ctx.order - 1):
        current = _mul_mod(ctx.p, ctx._mod, current, ctx.alpha.coeffs)
        powers.append(FieldElement(current))
    return tuple(powers)
