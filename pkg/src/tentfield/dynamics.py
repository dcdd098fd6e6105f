"""Exact dynamics of the up-down maps g_{p,I} on [0, 1].

Branch k of g_{p,I} lives on [k/p, (k+1)/p) and is x -> p*x - k when k is in I,
x -> k + 1 - p*x otherwise. The last branch is closed at x = 1 so that the map is
defined on the whole unit interval. I = evens gives the continuous map g_p.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import ConsistencyError, DomainError, InvalidArgumentError
from .ffield import divisors, mobius, require_positive

log = logging.getLogger(__name__)

RationalLike = Union[Fraction, int]


def _require_base(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 2:
        raise InvalidArgumentError(f"base p must be an integer >= 2, got {p!r}.")
    return p


@dataclass(frozen=True)
class UpSet:
    """The set I of increasing branches of g_{p,I}."""

    p: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_base(self.p)
        members = tuple(sorted(set(int(m) for m in self.members)))
        bad = [m for m in members if not 0 <= m < self.p]
        if bad:
            raise InvalidArgumentError(f"branches {bad} are outside 0..{self.p - 1}.")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, p: int, members: Iterable[int]) -> "UpSet":
        return cls(p, tuple(members))

    @classmethod
    def evens(cls, p: int) -> "UpSet":
        return cls(p, tuple(range(0, p, 2)))

    @classmethod
    def empty(cls, p: int) -> "UpSet":
        return cls(p, ())

    @classmethod
    def full(cls, p: int) -> "UpSet":
        return cls(p, tuple(range(p)))

    @classmethod
    def parse(cls, p: int, spec: str) -> "UpSet":
        """Parse ``evens``, ``empty``, ``full`` or a comma-separated residue list."""
        raw = spec.strip().lower()
        if raw in ("evens", "even"):
            return cls.evens(p)
        if raw in ("empty", "none", ""):
            return cls.empty(p)
        if raw in ("full", "all"):
            return cls.full(p)
        try:
            members = [int(part) for part in raw.split(",") if part.strip()]
        except ValueError:
            raise InvalidArgumentError(
                f"invalid branch set {spec!r}; use evens, empty, full or a list like 0,2."
            ) from None
        return cls.of(p, members)

    def __contains__(self, k: object) -> bool:
        return k in self.members

    @property
    def is_evens(self) -> bool:
        return self.members == tuple(range(0, self.p, 2))

    @property
    def label(self) -> str:
        if self.is_evens:
            return "evens"
        if not self.members:
            return "empty"
        if len(self.members) == self.p:
            return "full"
        return "{" + ",".join(str(m) for m in self.members) + "}"


@dataclass(frozen=True)
class DigitWord:
    """Base-p digits (a_1 ... a_n), most significant first."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_base(self.p)
        digits = tuple(int(d) for d in self.digits)
        if any(not 0 <= d < self.p for d in digits):
            raise InvalidArgumentError(f"digits {digits} are not all in [0, {self.p}).")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_int(cls, p: int, value: int, length: int) -> "DigitWord":
        _require_base(p)
        if not 0 <= value < p**length:
            raise InvalidArgumentError(f"{value} does not fit in {length} base-{p} digits.")
        out = []
        for _ in range(length):
            value, d = divmod(value, p)
            out.append(d)
        return cls(p, tuple(reversed(out)))

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.p + d
        return v

    def complement(self) -> "DigitWord":
        return DigitWord(self.p, tuple(self.p - 1 - d for d in self.digits))

    def __add__(self, other: "DigitWord") -> "DigitWord":
        if other.p != self.p:
            raise InvalidArgumentError("cannot concatenate words in different bases.")
        return DigitWord(self.p, self.digits + other.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        if self.p <= 10:
            return "".join(str(d) for d in self.digits)
        return " ".join(str(d) for d in self.digits)


@dataclass(frozen=True)
class PeriodicExpansion:
    """x = (0.overline(period))_p."""

    p: int
    period: DigitWord

    def __post_init__(self) -> None:
        if self.period.p != self.p:
            raise InvalidArgumentError("period digits must be in the expansion's base.")
        if not len(self.period):
            raise InvalidArgumentError("a periodic expansion needs a non-empty period.")

    @property
    def value(self) -> Fraction:
        return Fraction(self.period.value, self.p ** len(self.period) - 1)

    def __str__(self) -> str:
        return f"0.({self.period})_{self.p}"


@dataclass(frozen=True)
class OrbitPartition:
    cycles: tuple[tuple[int, ...], ...]

    def length_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(len(c) for c in self.cycles).items()))

    def points_of_order(self, m: int) -> list[int]:
        return sorted(k for cycle in self.cycles if len(cycle) == m for k in cycle)

    def cycle_length_of(self) -> dict[int, int]:
        return {k: len(cycle) for cycle in self.cycles for k in cycle}

    def to_json_obj(self) -> list[list[int]]:
        return [list(c) for c in self.cycles]


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (Fraction, int)):
        raise DomainError(f"expected an exact rational, got {x!r}.")
    return Fraction(x)


def _check_upset(p: int, I: UpSet) -> None:
    _require_base(p)
    if I.p != p:
        raise InvalidArgumentError(f"branch set is for base {I.p}, expected {p}.")


def eval_g(p: int, I: UpSet, x: RationalLike) -> Fraction:
    _check_upset(p, I)
    x = _as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {x}.")
    k = min(p * x.numerator // x.denominator, p - 1)
    if k in I:
        return p * x - k
    return k + 1 - p * x


def eval_g_iter(p: int, I: UpSet, x: RationalLike, n: int) -> Fraction:
    require_positive(n, name="n")
    y = _as_fraction(x)
    for _ in range(n):
        y = eval_g(p, I, y)
    return y


@lru_cache(maxsize=16)
def _increasing_flags(p: int, I: UpSet, n: int) -> tuple[bool, ...]:
    # k = (a_1 ... a_m) is increasing for g^m iff the tail (a_2 ... a_m) is increasing
    # for g^(m-1) when a_1 is in I, and iff the complemented tail is not, otherwise.
    flags = tuple(k in I for k in range(p))
    for _ in range(2, n + 1):
        nxt: list[bool] = []
        for a in range(p):
            if a in I:
                nxt.extend(flags)
            else:
                nxt.extend(not f for f in reversed(flags))
        flags = tuple(nxt)
    return flags


def increasing_set(p: int, I: UpSet, n: int) -> frozenset[int]:
    _check_upset(p, I)
    require_positive(n, name="n")
    return frozenset(k for k, up in enumerate(_increasing_flags(p, I, n)) if up)


def is_increasing(p: int, I: UpSet, n: int, k: int) -> bool:
    """Pointwise membership k in I_{p^n}."""
    _check_upset(p, I)
    if n == 0:
        return k == 0
    if not 0 <= k < p**n:
        raise InvalidArgumentError(f"branch index must be in [0, {p**n}), got {k}.")
    return _increasing_flags(p, I, n)[k]


def fixed_point(p: int, I: UpSet, n: int, k: int) -> Fraction:
    q = p**n
    if not 0 <= k < q:
        raise InvalidArgumentError(f"fixed-point index must be in [0, {q}), got {k}.")
    if is_increasing(p, I, n, k):
        return Fraction(k, q - 1)
    return Fraction(k + 1, q + 1)


def fixed_points(p: int, I: UpSet, n: int, *, verify: bool = False) -> list[Fraction]:
    _check_upset(p, I)
    require_positive(n, name="n")
    q = p**n
    points = [
        Fraction(k, q - 1) if up else Fraction(k + 1, q + 1)
        for k, up in enumerate(_increasing_flags(p, I, n))
    ]
    if verify:
        for k, x in enumerate(points):
            if eval_g_iter(p, I, x, n) != x:
                raise ConsistencyError(f"x_{k} = {x} is not fixed by g^{n} for I={I.label}.")
    return points


def index_of_fixed_point(p: int, I: UpSet, n: int, y: Fraction) -> int:
    """Index j with x_j == y; raises ConsistencyError when y is not a fixed point of g^n."""
    q = p**n
    j = min(q * y.numerator // y.denominator, q - 1)
    if j < 0 or fixed_point(p, I, n, j) != y:
        raise ConsistencyError(f"{y} is not a fixed point of g^{n} for p={p}, I={I.label}.")
    return j


def expansion_of_fixed_point(p: int, I: UpSet, n: int, k: int) -> PeriodicExpansion:
    _check_upset(p, I)
    require_positive(n, name="n")
    if not 0 <= k < p**n:
        raise InvalidArgumentError(f"fixed-point index must be in [0, {p**n}), got {k}.")
    word = DigitWord.from_int(p, k, n)
    if is_increasing(p, I, n, k):
        return PeriodicExpansion(p, word)
    return PeriodicExpansion(p, word + word.complement())


def eval_g_digits(p: int, I: UpSet, expansion: PeriodicExpansion) -> PeriodicExpansion:
    _check_upset(p, I)
    if expansion.p != p:
        raise InvalidArgumentError(f"expansion is in base {expansion.p}, expected {p}.")
    digits = expansion.period.digits
    shifted = DigitWord(p, digits[1:] + digits[:1])
    if digits[0] not in I:
        shifted = shifted.complement()
    return PeriodicExpansion(p, shifted)


def successor_indices(p: int, I: UpSet, n: int) -> list[int]:
    """succ[k] = j with g(x_k) = x_j.

    Same arithmetic as :func:`eval_g` and :func:`index_of_fixed_point`, kept on
    unreduced numerators over q - 1 or q + 1 so no Fraction is built per row.
    """
    _check_upset(p, I)
    require_positive(n, name="n")
    q = p**n
    flags = _increasing_flags(p, I, n)
    succ: list[int] = []
    for k, up in enumerate(flags):
        num, den = (k, q - 1) if up else (k + 1, q + 1)
        a = min(p * num // den, p - 1)
        num = p * num - a * den if a in I else (a + 1) * den - p * num
        j = min(q * num // den, q - 1)
        j_num, j_den = (j, q - 1) if flags[j] else (j + 1, q + 1)
        if num * j_den != j_num * den:
            raise ConsistencyError(f"g(x_{k}) is not a fixed point of g^{n} for p={p}, I={I.label}.")
        succ.append(j)
    return succ


def orbit_partition(p: int, I: UpSet, n: int) -> OrbitPartition:
    succ = successor_indices(p, I, n)
    seen = [False] * len(succ)
    cycles: list[tuple[int, ...]] = []
    for start in range(len(succ)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        k = succ[start]
        while k != start:
            if seen[k]:
                raise ConsistencyError(f"g does not permute the fixed points of g^{n} (index {k}).")
            seen[k] = True
            cycle.append(k)
            k = succ[k]
        if n % len(cycle):
            raise ConsistencyError(f"cycle length {len(cycle)} does not divide n={n}.")
        cycles.append(tuple(cycle))
    log.debug("orbit partition p=%s n=%s I=%s: %s cycles", p, n, I.label, len(cycles))
    return OrbitPartition(tuple(cycles))


def periodic_count(p: int, m: int) -> int:
    _require_base(p)
    require_positive(m, name="m")
    return sum(mobius(m // d) * p**d for d in divisors(m))


def periodic_points_of_order(p: int, I: UpSet, m: int) -> list[Fraction]:
    """Fixed points of g^m whose exact period under g is m."""
    points = fixed_points(p, I, m)
    return [points[k] for k in orbit_partition(p, I, m).points_of_order(m)]
