"""The permutations pi_{p^n,I} and the bijections B_{alpha,I} onto F_{p^n}.

B_{alpha,I} sends x_k to alpha^{pi(k)}, except for the single index k* with
pi(k*) = 0, which goes to the field zero. For I = evens, k* = 0.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .dynamics import (
    DigitWord,
    UpSet,
    fixed_points,
    is_increasing,
    orbit_partition,
    periodic_count,
    successor_indices,
)
from .errors import ConsistencyError, InvalidArgumentError
from .ffield import (
    FieldContext,
    FieldElement,
    alpha_powers,
    divisors,
    fe_mul,
    fe_pow,
    frobenius_images,
    require_positive,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PiPermutation:
    p: int
    n: int
    I: UpSet
    table: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.table[k]

    def __len__(self) -> int:
        return len(self.table)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.table)
        for k, v in enumerate(self.table):
            inv[v] = k
        return tuple(inv)

    def is_bijection(self) -> bool:
        return sorted(self.table) == list(range(self.p**self.n))


def _check_args(p: int, n: int, I: UpSet) -> None:
    require_positive(n, name="n")
    if I.p != p:
        raise InvalidArgumentError(f"branch set is for base {I.p}, expected {p}.")


def pi_recursive(p: int, n: int, I: UpSet, k: int) -> int:
    _check_args(p, n, I)
    if not 0 <= k < p**n:
        raise InvalidArgumentError(f"k must be in [0, {p**n}), got {k}.")
    result = 0
    for m in range(n, 1, -1):
        block = p ** (m - 1)
        a, r = divmod(k, block)
        result += a * block
        k = r if a in I else block - r - 1
    return result + k


def pi_table(p: int, n: int, I: UpSet) -> PiPermutation:
    """Materialise pi_{p^n,I} block by block, straight from the recursive definition."""
    _check_args(p, n, I)
    table = list(range(p))
    for m in range(2, n + 1):
        block = p ** (m - 1)
        nxt: list[int] = []
        for a in range(p):
            segment = table if a in I else table[::-1]
            nxt.extend(a * block + v for v in segment)
        table = nxt
    return PiPermutation(p=p, n=n, I=I, table=tuple(table))


def pi_digits(p: int, n: int, k: DigitWord) -> DigitWord:
    """Running-parity form of pi_{p^n} (continuous case only)."""
    if k.p != p or len(k) != n:
        raise InvalidArgumentError(f"expected a base-{p} word of length {n}, got {k}.")
    out: list[int] = []
    parity = 0
    for a in k.digits:
        b = a if parity % 2 == 0 else p - 1 - a
        out.append(b)
        parity += b
    return DigitWord(p, tuple(out))


def pi_digits_binary(n: int, k: DigitWord) -> DigitWord:
    """For p = 2: b_1 = a_1 and b_i = 1 exactly when a_i differs from a_(i-1)."""
    if k.p != 2 or len(k) != n:
        raise InvalidArgumentError(f"expected a binary word of length {n}, got {k}.")
    if not n:
        return k
    digits = k.digits
    return DigitWord(2, (digits[0],) + tuple(digits[i - 1] ^ digits[i] for i in range(1, n)))


def pi_digits_general(p: int, n: int, I: UpSet, k: DigitWord) -> DigitWord:
    _check_args(p, n, I)
    if k.p != p or len(k) != n:
        raise InvalidArgumentError(f"expected a base-{p} word of length {n}, got {k}.")
    out: list[int] = []
    flipped = False
    for a in k.digits:
        b = p - 1 - a if flipped else a
        out.append(b)
        if b not in I:
            flipped = not flipped
    return DigitWord(p, tuple(out))


def pi_step(p: int, n: int, I: UpSet, b: int, d: int) -> int:
    """pi_{p^n,I}(p*b + d) from pi_{p^(n-1),I}(b) and the bottom digit d."""
    _check_args(p, n, I)
    if n < 2:
        raise InvalidArgumentError(f"pi_step needs n >= 2, got {n}.")
    if not 0 <= b < p ** (n - 1) or not 0 <= d < p:
        raise InvalidArgumentError(f"need 0 <= b < {p ** (n - 1)} and 0 <= d < {p}, got b={b}, d={d}.")
    low = d if is_increasing(p, I, n - 1, b) else p - d - 1
    return p * pi_recursive(p, n - 1, I, b) + low


# ---------------------------------------------------------------------------
# B_{alpha,I}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BijectionRow:
    k: int
    x: Fraction
    pi: int
    image: FieldElement


@dataclass(frozen=True)
class BijectionTable:
    ctx: FieldContext
    I: UpSet
    rows: tuple[BijectionRow, ...]
    perm: PiPermutation
    zero_index: int

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return self.ctx.n

    def __len__(self) -> int:
        return len(self.rows)


def build_bijection(ctx: FieldContext, I: UpSet) -> BijectionTable:
    if I.p != ctx.p:
        raise InvalidArgumentError(f"branch set is for base {I.p}, but the field has p={ctx.p}.")
    perm = pi_table(ctx.p, ctx.n, I)
    points = fixed_points(ctx.p, I, ctx.n)
    powers = alpha_powers(ctx)
    zero_index = perm.inverse[0]
    rows = tuple(
        BijectionRow(
            k=k,
            x=x,
            pi=perm[k],
            image=ctx.zero() if k == zero_index else powers[perm[k]],
        )
        for k, x in enumerate(points)
    )
    log.debug("built B_alpha for p=%s n=%s I=%s (zero at k=%s)", ctx.p, ctx.n, I.label, zero_index)
    return BijectionTable(ctx=ctx, I=I, rows=rows, perm=perm, zero_index=zero_index)


@dataclass(frozen=True)
class RowViolation:
    k: int
    j: int
    expected: FieldElement | None = None
    actual: FieldElement | None = None


@dataclass(frozen=True)
class CheckReport:
    name: str
    checked: int
    violations: tuple[RowViolation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def passed_count(self) -> int:
        return self.checked - len(self.violations)

    def summary(self) -> str:
        return f"{self.passed_count}/{self.checked} {self.name} checks passed"


def verify_frobenius(table: BijectionTable) -> CheckReport:
    """B(g(x_k)) == B(x_k)^p for every row; a^p is applied to all images at once as an F_p-matrix."""
    ctx, I = table.ctx, table.I
    succ = successor_indices(ctx.p, I, ctx.n)
    images = [row.image for row in table.rows]
    lifted = frobenius_images(ctx, images)
    expected = np.array([images[j].coeffs for j in succ], dtype=np.int64).reshape(lifted.shape)
    bad = np.flatnonzero((lifted != expected).any(axis=1))
    violations: list[RowViolation] = []
    for k in bad.tolist():
        j = succ[k]
        log.debug("Frobenius violation at k=%s -> j=%s", k, j)
        actual = FieldElement(tuple(int(v) for v in lifted[k]))
        violations.append(RowViolation(k=k, j=j, expected=images[j], actual=actual))
    return CheckReport(name="Frobenius", checked=len(table.rows), violations=tuple(violations))


def multiply_indices(table: BijectionTable, i: int, j: int) -> int:
    q = table.ctx.order
    for idx in (i, j):
        if not 0 <= idx < q:
            raise InvalidArgumentError(f"row index must be in [0, {q}), got {idx}.")
        if idx == table.zero_index:
            raise InvalidArgumentError(f"row {idx} maps to the field zero, which has no exponent.")
    exponent = (table.perm[i] + table.perm[j]) % (q - 1)
    if exponent == 0:
        exponent = q - 1
    r = table.perm.inverse[exponent]
    product = fe_mul(table.ctx, table.rows[i].image, table.rows[j].image)
    if product != table.rows[r].image:
        raise ConsistencyError(f"B(x_{i}) * B(x_{j}) != B(x_{r}).")
    return r


def verify_subfield_restriction(table: BijectionTable) -> CheckReport:
    """image^(p^d) == image exactly for the points whose cycle length divides d."""
    ctx = table.ctx
    cycle_len = orbit_partition(ctx.p, table.I, ctx.n).cycle_length_of()
    violations: list[RowViolation] = []
    checked = 0
    for d in divisors(ctx.n):
        for row in table.rows:
            checked += 1
            lifted = fe_pow(ctx, row.image, ctx.p**d)
            in_subfield = lifted == row.image
            if in_subfield != (d % cycle_len[row.k] == 0):
                violations.append(RowViolation(k=row.k, j=d, expected=row.image, actual=lifted))
    return CheckReport(name="subfield", checked=checked, violations=tuple(violations))


def verify_products(
    table: BijectionTable,
    *,
    exhaustive_limit: int = 256,
    samples: int = 1000,
    seed: int = 0,
) -> CheckReport:
    nonzero = [row.k for row in table.rows if row.k != table.zero_index]
    if len(table.rows) <= exhaustive_limit:
        pairs = list(itertools.product(nonzero, repeat=2))
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(nonzero), rng.choice(nonzero)) for _ in range(samples)]
    violations: list[RowViolation] = []
    for i, j in pairs:
        try:
            multiply_indices(table, i, j)
        except ConsistencyError:
            product = fe_mul(table.ctx, table.rows[i].image, table.rows[j].image)
            violations.append(RowViolation(k=i, j=j, actual=product))
    return CheckReport(name="product", checked=len(pairs), violations=tuple(violations))


def verify_pi_step(p: int, n: int, I: UpSet) -> CheckReport:
    if n < 2:
        return CheckReport(name="pi_step", checked=0)
    perm = pi_table(p, n, I)
    bad = tuple(
        k for k in range(p**n) if pi_step(p, n, I, k // p, k % p) != perm[k]
    )
    return CheckReport(
        name="pi_step",
        checked=p**n,
        violations=tuple(RowViolation(k=k, j=k) for k in bad),
    )


def verify_counting(p: int, n: int, I: UpSet) -> CheckReport:
    """Exact-order point counts from the orbit partition against the Moebius formula."""
    counts = orbit_partition(p, I, n).length_counts()
    bad = tuple(
        d for d in divisors(n) if counts.get(d, 0) * d != periodic_count(p, d)
    )
    return CheckReport(
        name="counting",
        checked=len(divisors(n)),
        violations=tuple(RowViolation(k=d, j=d) for d in bad),
    )


@dataclass(frozen=True)
class SuiteReport:
    p: int
    n: int
    I: UpSet
    reports: tuple[CheckReport, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def verify_suite(ctx: FieldContext, I: UpSet, *, seed: int = 0, samples: int = 1000) -> SuiteReport:
    table = build_bijection(ctx, I)
    reports = (
        verify_frobenius(table),
        verify_products(table, seed=seed, samples=samples),
        verify_subfield_restriction(table),
        verify_pi_step(ctx.p, ctx.n, I),
        verify_counting(ctx.p, ctx.n, I),
    )
    return SuiteReport(p=ctx.p, n=ctx.n, I=I, reports=reports)


def random_upsets(p: int, count: int, *, seed: int) -> list[UpSet]:
    rng = random.Random(seed)
    return [UpSet.of(p, (k for k in range(p) if rng.random() < 0.5)) for _ in range(count)]


def sweep_upsets(p: int, *, random_count: int = 10, seed: int = 0) -> list[UpSet]:
    """evens, empty, full, {2} (when p > 2) and seeded random subsets."""
    family = [UpSet.evens(p), UpSet.empty(p), UpSet.full(p)]
    if p > 2:
        family.append(UpSet.of(p, (2,)))
    family.extend(random_upsets(p, random_count, seed=seed))
    return family
