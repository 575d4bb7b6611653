"""Heights of Kummer-type Calabi-Yau varieties and period lattices.

A Calabi-Yau resolution of A/G, with A an abelian variety and |G| prime
to the characteristic, inherits the formal group of A, so its height is
read off the p-rank of A: n gives height 1, n-1 gives 2, anything lower
gives infinity.  For the standard example, A = E^3 with E: y^2 = x^3 + 1
acted on by a cube root of unity, the p-rank comes from an O(p) point
count of E rather than from any congruence shortcut.

The intermediate Jacobian of the rigid quotient is C modulo the lattice
generated by 1, omega, omega^2, omega^3 for a quadratic omega; the
lattice lives in Q(omega) and is handled with exact rational arithmetic
in Hermite normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import BudgetError, InputError, InternalCheckError
from .fermat import HeightValue, INFINITE
from .finite_field import is_prime

DEFAULT_PRIME_BUDGET = 10**6


def legendre(a: int, p: int) -> int:
    """The Legendre symbol (a/p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + a*x + b over GF(p), p >= 5."""

    p: int
    a: int
    b: int

    @classmethod
    def create(cls, p: int, a: int, b: int) -> EllipticCurve:
        if p < 5 or not is_prime(p):
            raise InputError(f"p must be a prime >= 5, got {p}")
        a %= p
        b %= p
        if (4 * a**3 + 27 * b**2) % p == 0:
            raise InputError(
                f"singular curve: 4a^3 + 27b^2 = 0 mod {p} for a={a}, b={b}")
        return cls(p, a, b)


def ec_count_points(curve: EllipticCurve, *,
                    budget: int = DEFAULT_PRIME_BUDGET) -> int:
    """#E(F_p) including the point at infinity, by a Legendre-symbol sweep."""
    p = curve.p
    if p > budget:
        raise BudgetError(
            f"point-count budget exceeded: p = {p} > {budget}")
    total = p + 1
    for x in range(p):
        total += legendre(x * x * x + curve.a * x + curve.b, p)
    trace = p + 1 - total
    if trace * trace > 4 * p:
        raise InternalCheckError(
            f"Hasse bound violated: |a_p| = {abs(trace)} > 2*sqrt({p})")
    return total


def ec_trace(curve: EllipticCurve, *,
             budget: int = DEFAULT_PRIME_BUDGET) -> int:
    """The Frobenius trace a_p = p + 1 - #E(F_p)."""
    return curve.p + 1 - ec_count_points(curve, budget=budget)


def ec_p_rank(curve: EllipticCurve, *,
              budget: int = DEFAULT_PRIME_BUDGET) -> int:
    """1 for ordinary, 0 for supersingular (a_p = 0; valid since p >= 5)."""
    return 0 if ec_trace(curve, budget=budget) == 0 else 1


def product_p_rank(*ranks: int) -> int:
    """p-rank of a product abelian variety: the sum of the factors'."""
    return sum(ranks)


@dataclass(frozen=True)
class AbelianData:
    """Dimension and p-rank of an abelian variety."""

    n: int
    p_rank: int

    def __post_init__(self):
        if not 0 <= self.p_rank <= self.n:
            raise InputError(
                f"p-rank must lie in [0, {self.n}], got {self.p_rank}")


def abelian_height(data: AbelianData) -> HeightValue:
    """Height of the formal group of an abelian variety from its p-rank."""
    if data.n < 2:
        raise InputError(f"dimension must be >= 2, got {data.n}")
    if data.p_rank == data.n:
        return HeightValue.finite(1)
    if data.p_rank == data.n - 1:
        return HeightValue.finite(2)
    return INFINITE


def kummer_height(data: AbelianData) -> HeightValue:
    """Height of a Kummer Calabi-Yau built from A; equals that of A.

    The caller attests that the acting group has order prime to p.
    """
    return abelian_height(data)


def kummer_example_height(p: int, *,
                          budget: int = DEFAULT_PRIME_BUDGET) -> HeightValue:
    """Height for the resolution of E^3 / (diagonal cube-root action),
    with E: y^2 = x^3 + 1 over GF(p).

    The p-rank is measured by counting points on E, so the closed-form
    pattern mod 3 stays an independent check."""
    curve = EllipticCurve.create(p, 0, 1)
    rank = ec_p_rank(curve, budget=budget)
    return kummer_height(AbelianData(3, product_p_rank(rank, rank, rank)))


# --- rank-2 lattices in an imaginary quadratic field ---


MinPoly = tuple[int, int, int]


def _check_min_poly(poly: MinPoly) -> MinPoly:
    a, b, c = (int(x) for x in poly)
    if a <= 0:
        raise InputError(f"leading coefficient must be positive, got {a}")
    if gcd(gcd(a, b), c) != 1:
        raise InputError(f"minimal polynomial {poly} is not primitive")
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise InputError(
            f"discriminant must be negative (omega non-real), got {disc}")
    return (a, b, c)


Pair = tuple[Fraction, Fraction]


def _hnf_rows(rows: list[tuple[int, int]]) -> tuple[tuple[int, int],
                                                    tuple[int, int]]:
    """Hermite normal form [[a, b], [0, c]] of a rank-2 integer row span."""
    work = [list(r) for r in rows if r != (0, 0)]
    # clear the first column down to a single pivot by gcd elimination
    while True:
        nonzero = [r for r in work if r[0] != 0]
        if len(nonzero) <= 1:
            break
        nonzero.sort(key=lambda r: abs(r[0]))
        pivot = nonzero[0]
        for r in nonzero[1:]:
            t = r[0] // pivot[0]
            r[0] -= t * pivot[0]
            r[1] -= t * pivot[1]
        work = [r for r in work if r != [0, 0]]
    pivot_rows = [r for r in work if r[0] != 0]
    tail = [r[1] for r in work if r[0] == 0]
    if not pivot_rows or not any(tail):
        raise InputError("generators do not span a rank-2 lattice")
    a, b = pivot_rows[0]
    if a < 0:
        a, b = -a, -b
    c = 0
    for y in tail:
        c = gcd(c, y)
    b %= c
    return (a, b), (0, c)


def _common_denominator(pairs: list[Pair]) -> int:
    d = 1
    for u, v in pairs:
        d = d * u.denominator // gcd(d, u.denominator)
        d = d * v.denominator // gcd(d, v.denominator)
    return d


@dataclass(frozen=True, eq=False)
class QuadLattice:
    """A rank-2 Z-module in Q(omega), coordinates (u, v) for u + v*omega.

    Equality compares the quadratic field and the canonical basis, so
    two generating sets of the same module compare equal."""

    min_poly: MinPoly
    generators: tuple[Pair, ...]
    basis: tuple[Pair, Pair]  # canonical: [[a, b], [0, c]] over a denominator

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadLattice)
                and self.min_poly == other.min_poly
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.min_poly, self.basis))

    def contains(self, u, v) -> bool:
        u, v = Fraction(u), Fraction(v)
        (a, b), (_, c) = self.basis
        s = u / a
        if s.denominator != 1:
            return False
        t = (v - s * b) / c
        return t.denominator == 1

    def determinant(self) -> Fraction:
        """Covolume in (u, v) coordinates; positive."""
        return self.basis[0][0] * self.basis[1][1]


def lattice_from_generators(min_poly: MinPoly, generators) -> QuadLattice:
    """Canonicalize a generating set into Hermite normal form.

    The span equality between input and basis is verified: each
    generator must be an integer combination of the basis and the
    generator coordinates must span all of Z^2."""
    poly = _check_min_poly(min_poly)
    pairs: list[Pair] = [(Fraction(u), Fraction(v)) for u, v in generators]
    den = _common_denominator(pairs)
    int_rows = [(int(u * den), int(v * den)) for u, v in pairs]
    (a, b), (_, c) = _hnf_rows(int_rows)
    basis = ((Fraction(a, den), Fraction(b, den)),
             (Fraction(0), Fraction(c, den)))
    _verify_same_span(int_rows, a, b, c)
    return QuadLattice(poly, tuple(pairs), basis)


def _verify_same_span(int_rows, a: int, b: int, c: int) -> None:
    coord_rows = []
    for u, v in int_rows:
        if (u, v) == (0, 0):
            continue
        s, rem = divmod(u, a)
        if rem:
            raise InternalCheckError("generator escapes the HNF basis span")
        t, rem = divmod(v - s * b, c)
        if rem:
            raise InternalCheckError("generator escapes the HNF basis span")
        coord_rows.append((s, t))
    identity = _hnf_rows(coord_rows)
    if identity != ((1, 0), (0, 1)):
        raise InternalCheckError("HNF basis is not generated by the input")


def period_lattice(min_poly: MinPoly) -> QuadLattice:
    """The Z-module generated by 1, omega, omega^2, omega^3 in Q(omega).

    omega satisfies a*omega^2 + b*omega + c = 0 with negative
    discriminant; higher powers are rewritten through the relation."""
    a, b, c = _check_min_poly(min_poly)
    one: Pair = (Fraction(1), Fraction(0))
    omega: Pair = (Fraction(0), Fraction(1))
    omega2: Pair = (Fraction(-c, a), Fraction(-b, a))
    # omega^3 = omega * omega^2 = (-b*omega^2 - c*omega) / a
    omega3: Pair = (Fraction(b * c, a * a),
                    Fraction(b * b, a * a) - Fraction(c, a))
    return lattice_from_generators((a, b, c), [one, omega, omega2, omega3])


def standard_lattice(min_poly: MinPoly) -> QuadLattice:
    """Z + Z*omega."""
    return lattice_from_generators(min_poly, [(1, 0), (0, 1)])


def lattice_index(inner: QuadLattice, outer: QuadLattice) -> Fraction:
    """Generalized index [outer : inner] as a positive rational.

    Equals the ratio of covolumes; it is 1 exactly when the two modules
    have equal determinant, and together with equality of the canonical
    bases that certifies isomorphic period lattices."""
    if inner.min_poly != outer.min_poly:
        raise InputError("lattices live over different quadratic fields")
    return inner.determinant() / outer.determinant()
