"""Chebyshev polynomials and the transport of the fixed-point bijection through h(x) = cos(pi x).

h conjugates g_p on [0, 1] with T_p on [-1, 1] (T_p o h = h o g_p), so the fixed points of
T_{p^n} are y_k = cos(pi x_k) and B_alpha carries over unchanged. Evaluation always uses the
three-term recurrence on values; exact integer coefficients are only used for checks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Protocol, Sequence, Union, overload

import numpy as np
import numpy.typing as npt

from .bijection import BijectionTable, CheckReport, RowViolation, build_bijection
from .dynamics import UpSet, eval_g_iter, fixed_points
from .errors import InvalidArgumentError, PrecisionError
from .ffield import FieldContext, FieldElement, frobenius, require_positive, require_prime

log = logging.getLogger(__name__)

MATCH_TOLERANCE = 1e-8

FloatArray = npt.NDArray[np.float64]
RealLike = Union[float, FloatArray]


def _require_index(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InvalidArgumentError(f"Chebyshev index must be a non-negative integer, got {k!r}.")
    return k


@dataclass(frozen=True)
class ChebPoly:
    """T_k with exact integer coefficients, lowest degree first."""

    k: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        terms: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = "x" if power == 1 else f"x^{power}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms) if terms else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@lru_cache(maxsize=128)
def cheb_coeffs(k: int) -> ChebPoly:
    _require_index(k)
    prev: list[int] = [1]
    if k == 0:
        return ChebPoly(0, (1,))
    cur: list[int] = [0, 1]
    for _ in range(1, k):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return ChebPoly(k, tuple(cur))


@overload
def cheb_eval(k: int, x: float) -> float: ...


@overload
def cheb_eval(k: int, x: FloatArray) -> FloatArray: ...


def cheb_eval(k: int, x: RealLike) -> RealLike:
    _require_index(k)
    values = np.asarray(x, dtype=np.float64)
    if k == 0:
        out = np.ones_like(values)
    else:
        prev, out = np.ones_like(values), values.copy()
        for _ in range(1, k):
            prev, out = out, 2.0 * values * out - prev
    if np.ndim(x) == 0:
        return float(out)
    return out


def _iterate(fn: Callable[[FloatArray], FloatArray], values: FloatArray, times: int) -> FloatArray:
    for _ in range(times):
        values = fn(values)
    return values


def compose_check(m: int, n: int, samples: int = 1000) -> float:
    require_positive(m, name="m")
    require_positive(n, name="n")
    require_positive(samples, name="samples")
    xs = np.linspace(-1.0, 1.0, samples)
    lhs = cheb_eval(m, cheb_eval(n, xs))
    rhs = cheb_eval(m * n, xs)
    return float(np.max(np.abs(lhs - rhs)))


def _unit_grid(samples: int) -> list[Fraction]:
    if samples == 1:
        return [Fraction(0)]
    return [Fraction(i, samples - 1) for i in range(samples)]


def conjugacy_check(p: int, n: int, samples: int = 1000) -> float:
    """max |T_{p^n}(cos pi x) - cos(pi g_p^n(x))| over an exact grid on [0, 1]."""
    require_prime(p)
    require_positive(n, name="n")
    require_positive(samples, name="samples")
    evens = UpSet.evens(p)
    grid = _unit_grid(samples)
    xs = np.array([float(x) for x in grid])
    images = np.array([float(eval_g_iter(p, evens, x, n)) for x in grid])
    lhs = cheb_eval(p**n, np.cos(np.pi * xs))
    rhs = np.cos(np.pi * images)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class ChebFixedPoint:
    k: int
    value: float
    source: Fraction
    residual: float


def cheb_fixed_points(p: int, n: int) -> list[ChebFixedPoint]:
    require_prime(p)
    require_positive(n, name="n")
    sources = fixed_points(p, UpSet.evens(p), n)
    values = np.cos(np.pi * np.array([float(x) for x in sources]))
    # residual is |T_{p^n}(y) - y|, with T_{p^n} = T_p composed n times
    lifted = _iterate(lambda v: cheb_eval(p, v), values, n)
    residuals = np.abs(lifted - values)
    return [
        ChebFixedPoint(k=k, value=float(values[k]), source=x, residual=float(residuals[k]))
        for k, x in enumerate(sources)
    ]


def _expand_roots(roots: Sequence[Fraction]) -> list[Fraction]:
    poly = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return poly


def factorization_check(p: int, n: int) -> float:
    """Relative coefficient error of T_{p^n}(x) - x against 2^(p^n - 1) * prod(x - y_k).

    The product is expanded exactly over the float roots, so the error only reflects the
    rounding of the y_k themselves.
    """
    require_prime(p)
    require_positive(n, name="n")
    N = p**n
    exact = cheb_coeffs(N).to_list()
    exact[1] -= 1
    roots = [Fraction(point.value) for point in cheb_fixed_points(p, n)]
    scaled = [c * 2 ** (N - 1) for c in _expand_roots(roots)]
    if len(scaled) != len(exact):
        raise InvalidArgumentError(f"degree mismatch: {len(scaled) - 1} != {len(exact) - 1}.")
    worst = max(abs(s - e) for s, e in zip(scaled, exact))
    return float(worst / max(abs(e) for e in exact))


def chebyshev_roots_oracle(N: int) -> FloatArray:
    """Roots of T_N(x) - x from the Chebyshev-basis companion matrix, ascending."""
    require_positive(N, name="N")
    if N < 2:
        raise InvalidArgumentError("T_1(x) - x vanishes identically.")
    c = np.zeros(N + 1)
    c[N] = 1.0
    c[1] -= 1.0
    roots = np.polynomial.chebyshev.chebroots(c)
    return np.sort(np.real(roots))


# ---------------------------------------------------------------------------
# Transport through a conjugacy
# ---------------------------------------------------------------------------


class Conjugacy(Protocol):
    """A homeomorphism h of [0, 1] onto an interval with f_p o h = h o g_{p,I}."""

    def forward(self, x: Fraction) -> float: ...

    def target_map(self, y: FloatArray) -> FloatArray: ...


@dataclass(frozen=True)
class ChebyshevConjugacy:
    p: int

    def forward(self, x: Fraction) -> float:
        return float(np.cos(np.pi * float(x)))

    def target_map(self, y: FloatArray) -> FloatArray:
        return cheb_eval(self.p, np.asarray(y, dtype=np.float64))


@dataclass(frozen=True)
class GridConjugacy:
    """A monotone conjugacy known only on a grid, linearly interpolated with numpy."""

    grid_x: tuple[float, ...]
    grid_y: tuple[float, ...]
    f: Callable[[FloatArray], FloatArray]

    def __post_init__(self) -> None:
        if len(self.grid_x) != len(self.grid_y) or len(self.grid_x) < 2:
            raise InvalidArgumentError("conjugacy grid needs at least two matching samples.")
        if self.grid_x[0] != 0.0 or self.grid_x[-1] != 1.0:
            raise InvalidArgumentError("conjugacy grid must span [0, 1].")
        dx = np.diff(np.asarray(self.grid_x))
        dy = np.diff(np.asarray(self.grid_y))
        if np.any(dx <= 0):
            raise InvalidArgumentError("conjugacy grid_x must be strictly increasing.")
        if not (np.all(dy > 0) or np.all(dy < 0)):
            raise InvalidArgumentError("conjugacy samples must be strictly monotone.")

    @classmethod
    def sample(
        cls,
        h: Callable[[FloatArray], FloatArray],
        f: Callable[[FloatArray], FloatArray],
        samples: int = 1001,
    ) -> "GridConjugacy":
        xs = np.linspace(0.0, 1.0, samples)
        ys = np.asarray(h(xs), dtype=np.float64)
        return cls(tuple(float(v) for v in xs), tuple(float(v) for v in ys), f)

    def forward(self, x: Fraction) -> float:
        return float(np.interp(float(x), self.grid_x, self.grid_y))

    def target_map(self, y: FloatArray) -> FloatArray:
        return np.asarray(self.f(np.asarray(y, dtype=np.float64)), dtype=np.float64)


@dataclass(frozen=True)
class TransportedBijection:
    """B_f = B_alpha o h^-1 on the transported fixed points."""

    table: BijectionTable
    points: tuple[ChebFixedPoint, ...]
    conjugacy: Conjugacy
    tolerance: float = MATCH_TOLERANCE

    @property
    def ctx(self) -> FieldContext:
        return self.table.ctx

    def image(self, k: int) -> FieldElement:
        return self.table.rows[k].image

    @cached_property
    def _sorted(self) -> tuple[FloatArray, npt.NDArray[np.intp]]:
        values = np.array([pt.value for pt in self.points])
        order = np.argsort(values, kind="stable")
        return values[order], order

    def match(self, target: float) -> int:
        """Index of the unique transported fixed point within tolerance of target."""
        values, order = self._sorted
        lo = int(np.searchsorted(values, target - self.tolerance, side="left"))
        hi = int(np.searchsorted(values, target + self.tolerance, side="right"))
        if hi - lo == 1:
            return int(order[lo])
        if hi == lo:
            near = values[max(lo - 1, 0) : lo + 1]
            nearest = float(near[int(np.argmin(np.abs(near - target)))])
            raise PrecisionError("no transported fixed point within tolerance", target, (nearest,))
        raise PrecisionError(
            "transported fixed point match is ambiguous", target, tuple(float(v) for v in values[lo:hi])
        )

    def verify_frobenius(self) -> CheckReport:
        ctx = self.table.ctx
        targets = self.conjugacy.target_map(np.array([pt.value for pt in self.points]))
        violations: list[RowViolation] = []
        for pt, target in zip(self.points, targets):
            j = self.match(float(target))
            lhs = frobenius(ctx, self.image(pt.k))
            rhs = self.image(j)
            if lhs != rhs:
                violations.append(RowViolation(k=pt.k, j=j, expected=rhs, actual=lhs))
        return CheckReport(name="transported Frobenius", checked=len(self.points), violations=tuple(violations))


def transport_bijection(
    table: BijectionTable,
    conjugacy: Conjugacy,
    *,
    tolerance: float = MATCH_TOLERANCE,
) -> TransportedBijection:
    values = np.array([conjugacy.forward(row.x) for row in table.rows])
    lifted = _iterate(conjugacy.target_map, values, table.n)
    residuals = np.abs(lifted - values)
    points = tuple(
        ChebFixedPoint(k=row.k, value=float(values[row.k]), source=row.x, residual=float(residuals[row.k]))
        for row in table.rows
    )
    log.debug("transported %s fixed points (max residual %.3g)", len(points), float(residuals.max()))
    return TransportedBijection(table=table, points=points, conjugacy=conjugacy, tolerance=tolerance)


def cheb_bijection(ctx: FieldContext, n: int) -> TransportedBijection:
    if n != ctx.n:
        raise InvalidArgumentError(f"field has degree {ctx.n}, but n={n} was requested.")
    table = build_bijection(ctx, UpSet.evens(ctx.p))
    return transport_bijection(table, ChebyshevConjugacy(ctx.p))
