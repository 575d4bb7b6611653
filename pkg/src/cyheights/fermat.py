"""Invariants of the Fermat hypersurface x_0^m + ... + x_{r+1}^m = 0 over GF(q).

The Frobenius eigenvalues on middle cohomology are Jacobi sums indexed
by exponent vectors (a_0, ..., a_{r+1}) with 0 < a_i < m summing to
0 mod m.  Everything downstream is assembled from that index set: the
Stickelberger exponent gives the P-adic valuation of each eigenvalue,
the valuations normalized by f are the Newton slopes, the slopes in
[0, 1) count the height of the formal group attached to H^r(X, O_X),
and the full eigenvalue product is the interesting factor of the zeta
function.  When m = r + 2 the hypersurface is Calabi-Yau and the height
is the invariant the theorems here are about; everything is computed
from first principles so the closed-form predictions stay testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from itertools import product

from .character_sums import Character, JacobiCache, jacobi_sum_table
from .cyclotomic import CycInt, modulus_squared
from .errors import BudgetError, InputError, InternalCheckError, PrecisionError
from .finite_field import (DEFAULT_TABLE_BUDGET, build_field, is_prime,
                           order_mod)
from .padic import ValuationOracle, default_precision

DEFAULT_ALPHA_BUDGET = 10**6
DEFAULT_POINT_BUDGET = 10**8

AlphaVector = tuple[int, ...]


@dataclass(frozen=True)
class FermatParams:
    """Validated (p, m, r) with the derived field data f and q = p^f."""

    p: int
    m: int
    r: int
    f: int
    q: int

    @classmethod
    def create(cls, p: int, m: int, r: int) -> FermatParams:
        if not is_prime(p):
            raise InputError(f"p must be prime, got {p}")
        if m < 3:
            raise InputError(f"degree m must be >= 3, got {m}")
        if r < 1:
            raise InputError(f"dimension r must be >= 1, got {r}")
        if gcd(p, m) != 1:
            raise InputError(f"gcd(p, m) must be 1, got p={p}, m={m}")
        f = order_mod(p, m)
        return cls(p, m, r, f, p**f)

    @property
    def is_calabi_yau(self) -> bool:
        return self.m == self.r + 2


class HeightValue:
    """Height of a one-dimensional formal group: an integer >= 1 or infinity."""

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        self._value = value

    @classmethod
    def finite(cls, h: int) -> HeightValue:
        if h < 1:
            raise InputError(f"finite height must be >= 1, got {h}")
        return cls(h)

    @classmethod
    def infinite(cls) -> HeightValue:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise InputError("infinite height has no integer value")
        return self._value

    def __eq__(self, other) -> bool:
        return isinstance(other, HeightValue) and self._value == other._value

    def __hash__(self):
        return hash(("HeightValue", self._value))

    def __repr__(self) -> str:
        return f"HeightValue({self._value!r})"

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def json(self) -> int | str:
        return "inf" if self._value is None else self._value


INFINITE = HeightValue.infinite()


def alpha_count(m: int, r: int) -> int:
    """Closed form |{alpha}| = ((m-1)^(r+2) + (-1)^(r+2) (m-1)) / m."""
    sign = 1 if (r + 2) % 2 == 0 else -1
    total = (m - 1) ** (r + 2) + sign * (m - 1)
    if total % m:
        raise InternalCheckError("exponent-vector count is not integral")
    return total // m


def exponent_vectors(m: int, r: int, *,
                     budget: int = DEFAULT_ALPHA_BUDGET) -> list[AlphaVector]:
    """All (a_0, ..., a_{r+1}) with 0 < a_i < m and sum = 0 mod m, in
    lexicographic order."""
    if m < 2:
        raise InputError(f"degree m must be >= 2, got {m}")
    if r < 1:
        raise InputError(f"dimension r must be >= 1, got {r}")
    expected = alpha_count(m, r)
    if expected > budget:
        raise BudgetError(
            f"exponent-vector budget exceeded: |A| = {expected} > {budget}")
    out: list[AlphaVector] = []
    for head in product(range(1, m), repeat=r + 1):
        last = (-sum(head)) % m
        if last:
            out.append(head + (last,))
    if len(out) != expected:
        raise InternalCheckError("enumeration disagrees with closed form")
    return out


def frobenius_subgroup(p: int, m: int) -> tuple[int, ...]:
    """The cyclic subgroup {p^j mod m} of (Z/m)^*, in power order."""
    if gcd(p, m) != 1:
        raise InputError(f"gcd(p, m) must be 1, got p={p}, m={m}")
    powers = [1]
    x = p % m
    while x != 1:
        powers.append(x)
        x = (x * p) % m
    return tuple(powers)


def stickelberger_exponent(alpha: AlphaVector, p: int, m: int) -> int:
    """sum over t in <p> of [sum_{j>=1} <t * a_j / m>].

    [x] and <x> are the integer and fractional parts; the component a_0
    is excluded from the inner sum.  This is ord_P of the Jacobi sum
    j(alpha) at the canonical prime P.
    """
    total = 0
    for t in frobenius_subgroup(p, m):
        s = 0
        for a in alpha[1:]:
            s += (t * a) % m
        total += s // m
    return total


def slope_deficient_count(p: int, m: int, r: int, *,
                          budget: int = DEFAULT_ALPHA_BUDGET) -> int:
    """Number of exponent vectors whose Stickelberger exponent is below f.

    These index the Frobenius eigenvalues of slope in [0, 1), whose count
    is the formal-group height when it is positive.
    """
    params = FermatParams.create(p, m, r)
    f = params.f
    tables = [tuple((t * a) % m for a in range(m))
              for t in frobenius_subgroup(p, m)]
    count = 0
    for alpha in exponent_vectors(m, r, budget=budget):
        total = 0
        for tbl in tables:
            s = 0
            for a in alpha[1:]:
                s += tbl[a]
            total += s // m
            if total >= f:
                break
        else:
            count += 1
    return count


def height_fermat(p: int, m: int, r: int, *,
                  budget: int = DEFAULT_ALPHA_BUDGET) -> HeightValue:
    """Formal-group height of the degree-m Fermat variety of dimension r.

    Counts the slope-deficient eigenvalues; a count of zero means no
    slope falls in [0, 1), i.e. the additive formal group.  The formal
    group itself is attached to the Calabi-Yau case m = r + 2, but the
    count is well defined for any valid parameters.
    """
    count = slope_deficient_count(p, m, r, budget=budget)
    if count == 0:
        return INFINITE
    return HeightValue.finite(count)


def predicted_height(p: int, m: int, r: int) -> HeightValue | None:
    """Closed-form height prediction: 1 when p = 1 mod m, else infinite.

    Only stated for the Calabi-Yau case m = r + 2 with r >= 2; returns
    None when it does not apply.
    """
    if r < 2 or m != r + 2:
        return None
    return HeightValue.finite(1) if p % m == 1 else INFINITE


@dataclass(frozen=True)
class SlopeMultiset:
    """Newton slopes with multiplicity, as exact rationals over f."""

    entries: tuple[tuple[Fraction, int], ...]
    denominator: int

    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.entries)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.entries)

    def reflected(self, r: int) -> SlopeMultiset:
        """The multiset with every slope s replaced by r - s."""
        flipped = sorted((r - s, mult) for s, mult in self.entries)
        return SlopeMultiset(tuple(flipped), self.denominator)


def newton_slopes(p: int, m: int, r: int, *,
                  budget: int = DEFAULT_ALPHA_BUDGET) -> SlopeMultiset:
    """The eigenvalue slopes: Stickelberger exponents divided by f."""
    params = FermatParams.create(p, m, r)
    f = params.f
    tables = [tuple((t * a) % m for a in range(m))
              for t in frobenius_subgroup(p, m)]
    counts: dict[int, int] = {}
    for alpha in exponent_vectors(m, r, budget=budget):
        a_h = 0
        for tbl in tables:
            s = 0
            for a in alpha[1:]:
                s += tbl[a]
            a_h += s // m
        counts[a_h] = counts.get(a_h, 0) + 1
    entries = tuple(sorted((Fraction(a_h, f), mult)
                           for a_h, mult in counts.items()))
    for slope, _ in entries:
        if not 0 <= slope <= r:
            raise InternalCheckError(f"slope {slope} outside [0, {r}]")
    return SlopeMultiset(entries, f)


@dataclass(frozen=True)
class HodgeVector:
    """Primitive middle-cohomology Hodge numbers h[l] = h^(r-l, l)."""

    m: int
    r: int
    h: tuple[int, ...]


def hodge_numbers_fermat(m: int, r: int, *,
                         budget: int = DEFAULT_ALPHA_BUDGET) -> HodgeVector:
    """Griffiths-style count: alpha contributes to level sum(a_j)/m - 1."""
    h = [0] * (r + 1)
    for alpha in exponent_vectors(m, r, budget=budget):
        h[sum(alpha) // m - 1] += 1
    return HodgeVector(m, r, tuple(h))


def fully_rigged_fermat(p: int, m: int, r: int) -> bool:
    """Whether -1 lies in the subgroup of (Z/m)^* generated by p.

    Equivalent to all even-degree etale cohomology being spanned by
    algebraic cycles for the degree-m Fermat variety of even dimension.
    """
    if r % 2:
        raise InputError(f"dimension r must be even, got {r}")
    if m < 4:
        raise InputError(f"degree m must be >= 4, got {m}")
    if gcd(p, m) != 1:
        raise InputError(f"gcd(p, m) must be 1, got p={p}, m={m}")
    f = order_mod(p, m)
    return any(pow(p, nu, m) == m - 1 for nu in range(1, f + 1))


@dataclass(frozen=True)
class ArtinComparison:
    """The two supersingularity notions side by side."""

    additive_type: bool
    fully_rigged: bool


def artin_comparison(p: int, m: int, r: int, *,
                     budget: int = DEFAULT_ALPHA_BUDGET) -> ArtinComparison:
    """Compare height-infinity against the algebraic-cycle criterion.

    For r = 2 the two agree; in higher even dimension they provably can
    differ, which this record makes checkable prime by prime.
    """
    if r % 2:
        raise InputError(f"dimension r must be even, got {r}")
    if m != r + 2:
        raise InputError(
            f"comparison needs the Calabi-Yau case m = r + 2, got m={m}, r={r}")
    additive = not height_fermat(p, m, r, budget=budget).is_finite
    return ArtinComparison(additive, fully_rigged_fermat(p, m, r))


def variety_report(p: int, m: int, r: int, *,
                   budget: int = DEFAULT_ALPHA_BUDGET) -> dict:
    """One JSON-ready record of the slope-level invariants.

    Timings are deliberately absent so identical inputs serialize
    identically."""
    params = FermatParams.create(p, m, r)
    height = height_fermat(p, m, r, budget=budget)
    slopes = newton_slopes(p, m, r, budget=budget)
    rigged = None
    if r % 2 == 0 and m >= 4:
        rigged = fully_rigged_fermat(p, m, r)
    return {
        "p": params.p, "m": params.m, "r": params.r,
        "f": params.f, "q": params.q,
        "height": height.json(),
        "slopes": [[str(slope), mult] for slope, mult in slopes.entries],
        "alpha_count": alpha_count(m, r),
        "hodge": list(hodge_numbers_fermat(m, r, budget=budget).h),
        "fully_rigged": rigged,
    }


# --- zeta functions and point counts ---


@dataclass(frozen=True)
class ZetaData:
    """Z(T) = P(T)^sign_exponent / prod_i (1 - q^i T), i = 0..r."""

    p: int
    m: int
    r: int
    q: int
    poly_coeffs: tuple[int, ...]  # P(T), constant term first
    pole_q_powers: tuple[int, ...]
    sign_exponent: int

    @property
    def degree(self) -> int:
        return len(self.poly_coeffs) - 1


def zeta_fermat(p: int, m: int, r: int, *,
                cache: JacobiCache | None = None,
                alpha_budget: int = DEFAULT_ALPHA_BUDGET,
                table_budget: int = DEFAULT_TABLE_BUDGET,
                cache_dir: str | None = None) -> ZetaData:
    """Expand P(T) = prod (1 - j(alpha) T) exactly in Z[zeta_m][T].

    Every coefficient must land in the rational integers and every
    eigenvalue must satisfy |j|^2 = q^r exactly; both are hard checks.
    """
    params = FermatParams.create(p, m, r)
    field = build_field(p, params.f, table_budget=table_budget,
                        cache_dir=cache_dir)
    chi = Character(field, m)
    alphas = exponent_vectors(m, r, budget=alpha_budget)
    sums = jacobi_sum_table(chi, alphas, cache=cache)

    q_to_r = CycInt.integer(m, params.q**r)
    coeffs = [CycInt.one(m)]
    for alpha in alphas:
        j = sums[alpha]
        if modulus_squared(j) != q_to_r:
            raise InternalCheckError(
                f"|j({alpha})|^2 != q^r; eigenvalue check failed")
        coeffs.append(CycInt.zero(m))
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] = coeffs[i] - j * coeffs[i - 1]

    integral: list[int] = []
    for i, c in enumerate(coeffs):
        if not c.is_rational_integer():
            raise InternalCheckError(
                f"coefficient of T^{i} is not a rational integer: {c!r}")
        integral.append(c.as_rational_integer())
    return ZetaData(p, m, r, params.q, tuple(integral),
                    tuple(range(r + 1)), 1 if (r - 1) % 2 == 0 else -1)


def eigenvalue_power_sums(poly_coeffs: tuple[int, ...], s: int) -> list[int]:
    """Power sums pi_1..pi_s of the inverse roots of P(T), by Newton's
    identities."""
    deg = len(poly_coeffs) - 1
    pi: list[int] = []
    for n in range(1, s + 1):
        acc = n * poly_coeffs[n] if n <= deg else 0
        for i in range(1, min(n, deg + 1)):
            acc += poly_coeffs[i] * pi[n - i - 1]
        pi.append(-acc)
    return pi


def point_count_from_zeta(z: ZetaData, s: int) -> int:
    """N_s = sum_i q^(i s) + (-1)^r sum_alpha j(alpha)^s, all exact."""
    if s < 1:
        raise InputError(f"s must be >= 1, got {s}")
    pi_s = eigenvalue_power_sums(z.poly_coeffs, s)[-1]
    total = sum(z.q ** (i * s) for i in range(z.r + 1))
    total += pi_s if z.r % 2 == 0 else -pi_s
    if total < 0:
        raise InternalCheckError(f"negative point count N_{s} = {total}")
    return total


def brute_force_point_count(p: int, m: int, r: int, s: int, *,
                            budget: int = DEFAULT_POINT_BUDGET,
                            table_budget: int = DEFAULT_TABLE_BUDGET,
                            cache_dir: str | None = None) -> int:
    """Projective solutions of sum x_i^m = 0 over GF(q^s), enumerated.

    Representatives are normalized so the first nonzero coordinate is 1.
    The candidate count (Q^(r+2) - 1)/(Q - 1) must stay within budget.
    """
    if s < 1:
        raise InputError(f"s must be >= 1, got {s}")
    params = FermatParams.create(p, m, r)
    big_q = params.q**s
    candidates = (big_q ** (r + 2) - 1) // (big_q - 1)
    if candidates > budget:
        raise BudgetError(
            f"point-enumeration budget exceeded: {candidates} candidate "
            f"tuples > {budget}")
    field = build_field(p, params.f * s, table_budget=table_budget,
                        cache_dir=cache_dir)
    q_minus = big_q - 1
    mth = [0] * big_q
    for x in range(1, big_q):
        mth[x] = field.exp[(m * field.dlog[x]) % q_minus]
    add = field.add

    def count_tails(positions: int, acc: int) -> int:
        if positions == 0:
            return 1 if acc == 0 else 0
        total = 0
        for x in range(big_q):
            total += count_tails(positions - 1, add(acc, mth[x]))
        return total

    total = 0
    for lead in range(r + 2):
        total += count_tails(r + 1 - lead, 1)  # leading coordinate fixed to 1
    return total


# --- the Stickelberger cross-check ---


@dataclass(frozen=True)
class StickelbergerRow:
    alpha: AlphaVector
    exponent: int
    valuation: int | None
    error: str | None

    @property
    def equal(self) -> bool:
        return self.valuation == self.exponent


@dataclass(frozen=True)
class StickelbergerReport:
    p: int
    m: int
    r: int
    f: int
    q: int
    rows: tuple[StickelbergerRow, ...]

    @property
    def all_equal(self) -> bool:
        return all(row.equal for row in self.rows)

    @property
    def mismatches(self) -> list[StickelbergerRow]:
        return [row for row in self.rows if row.error is None and not row.equal]

    @property
    def precision_failures(self) -> list[StickelbergerRow]:
        return [row for row in self.rows if row.error is not None]


def stickelberger_check(p: int, m: int, r: int, *,
                        cache: JacobiCache | None = None,
                        precision: int | None = None,
                        alpha_budget: int = DEFAULT_ALPHA_BUDGET,
                        table_budget: int = DEFAULT_TABLE_BUDGET,
                        cache_dir: str | None = None) -> StickelbergerReport:
    """Verify that ord_P(j(alpha)) equals the Stickelberger exponent,
    for every exponent vector.

    The left side is computed from the Jacobi sum through the lifted
    root of unity, the right side from integer arithmetic alone; the
    two share nothing but the field construction.
    """
    params = FermatParams.create(p, m, r)
    field = build_field(p, params.f, table_budget=table_budget,
                        cache_dir=cache_dir)
    chi = Character(field, m)
    alphas = exponent_vectors(m, r, budget=alpha_budget)
    sums = jacobi_sum_table(chi, alphas, cache=cache)
    k0 = precision if precision is not None else default_precision(params.f, r)
    oracle = ValuationOracle(field, m, k0)

    rows = []
    for alpha in alphas:
        expected = stickelberger_exponent(alpha, p, m)
        try:
            val = oracle.valuation(sums[alpha])
            rows.append(StickelbergerRow(alpha, expected, val, None))
        except PrecisionError as exc:
            rows.append(StickelbergerRow(alpha, expected, None, str(exc)))
    return StickelbergerReport(p, m, r, params.f, params.q, tuple(rows))
