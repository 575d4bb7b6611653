"""P-adic valuations of cyclotomic integers at a canonical prime above p.

Because gcd(p, m) = 1, the prime p is unramified in Q(zeta_m) and the
completion at a prime P above p is the unramified extension of Q_p of
degree f.  We model its ring of integers truncated mod p^k as
R_k = (Z/p^k)[x] / (M) where M is the field modulus of GF(p^f) read over
Z/p^k.  The m-th roots of unity in R_k are Teichmuller lifts of those in
GF(p^f); evaluating a cyclotomic integer at such a lift and taking the
minimum p-adic valuation of its R_k coordinates computes ord_P exactly
whenever the answer is below the precision k.

The canonical P is pinned by sending zeta to the Teichmuller lift of
g^-((q-1)/m), with g the field's canonical generator.  Paired with the
canonical character chi(g) = zeta of the character-sum code, this is the
choice under which Jacobi-sum valuations match Stickelberger exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclotomic import CycInt, degree
from .errors import InputError, InternalCheckError, PrecisionError
from .finite_field import FiniteField


@dataclass(frozen=True)
class Valuation:
    """Either an exact valuation or the lower bound 'at least k'."""

    value: int
    exact: bool

    @classmethod
    def of(cls, n: int) -> Valuation:
        return cls(n, True)

    @classmethod
    def at_least(cls, k: int) -> Valuation:
        return cls(k, False)

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


# --- arithmetic in R_k, coefficient vectors constant-first, length f ---


def _rk_mul(a: list[int], b: list[int], modulus: tuple[int, ...],
            pk: int) -> list[int]:
    f = len(a)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % pk
    # reduce modulo the monic lift of the field modulus
    for e in range(2 * f - 2, f - 1, -1):
        c = prod[e]
        if c:
            prod[e] = 0
            for i in range(f):
                prod[e - f + i] = (prod[e - f + i] - c * modulus[i]) % pk
    return prod[:f]


def _rk_pow(a: list[int], e: int, modulus: tuple[int, ...],
            pk: int) -> list[int]:
    f = len(a)
    result = [1] + [0] * (f - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _rk_mul(result, base, modulus, pk)
        base = _rk_mul(base, base, modulus, pk)
        e >>= 1
    return result


class PadicContext:
    """Truncated unramified ring R_k with a fixed primitive m-th root of unity.

    Immutable after construction; rebuild with a larger k rather than
    mutating.
    """

    __slots__ = ("field", "m", "k", "pk", "modulus", "zeta_hat",
                 "_zeta_powers")

    def __init__(self, field: FiniteField, m: int, k: int):
        p, f, q = field.p, field.f, field.q
        if m < 1:
            raise InputError(f"conductor must be >= 1, got {m}")
        if gcd(p, m) != 1:
            raise InputError(f"gcd(p, m) must be 1, got p={p}, m={m}")
        if (q - 1) % m != 0:
            raise InputError(f"m={m} does not divide q-1={q - 1}")
        if k < 1:
            raise InputError(f"precision k must be >= 1, got {k}")
        self.field = field
        self.m = m
        self.k = k
        self.pk = p**k
        self.modulus = tuple(c % self.pk for c in field.modulus)

        # Teichmuller lift of g^-((q-1)/m): iterating x -> x^q gains at
        # least one p-adic digit per round, so k rounds stabilize mod p^k.
        root_enc = field.exp[(q - 1) - (q - 1) // m]
        z = [c % self.pk for c in field.coeffs(root_enc)]
        for _ in range(k + 1):
            nxt = _rk_pow(z, q, self.modulus, self.pk)
            if nxt == z:
                break
            z = nxt
        if _rk_pow(z, q, self.modulus, self.pk) != z:
            raise InternalCheckError("Teichmuller lift did not stabilize")
        one = [1] + [0] * (f - 1)
        if _rk_pow(z, m, self.modulus, self.pk) != one:
            raise InternalCheckError("lifted root of unity has wrong order")
        if field.encode(d % p for d in z) != root_enc:
            raise InternalCheckError("Teichmuller lift moved the residue")
        self.zeta_hat = tuple(z)

        powers = [one]
        for _ in range(degree(m) - 1):
            powers.append(_rk_mul(powers[-1], list(self.zeta_hat),
                                  self.modulus, self.pk))
        self._zeta_powers = tuple(tuple(w) for w in powers)

    def __repr__(self) -> str:
        return (f"PadicContext(p={self.field.p}, f={self.field.f}, "
                f"m={self.m}, k={self.k})")


def build_padic_context(field: FiniteField, m: int, k: int) -> PadicContext:
    return PadicContext(field, m, k)


def default_precision(f: int, r: int) -> int:
    """Working precision f*r + 2: Jacobi-sum valuations are at most f*r."""
    return f * r + 2


def padic_valuation(z: CycInt, ctx: PadicContext) -> Valuation:
    """ord_P of z at the canonical prime, or a lower bound >= k.

    The image of z in R_k is computed on the power basis; since R_k is
    unramified, ord_P is the minimum of the coordinate valuations.
    """
    if z.m != ctx.m:
        raise InputError(f"conductor mismatch: {z.m} vs context {ctx.m}")
    f = ctx.field.f
    pk = ctx.pk
    image = [0] * f
    for c, power in zip(z.coeffs, ctx._zeta_powers):
        if c:
            for i in range(f):
                image[i] = (image[i] + c * power[i]) % pk
    p = ctx.field.p
    best = None
    for coord in image:
        if coord == 0:
            continue
        v = 0
        while coord % p == 0:
            coord //= p
            v += 1
        if best is None or v < best:
            best = v
            if best == 0:
                break
    if best is None:
        return Valuation.at_least(ctx.k)
    return Valuation.of(best)


class ValuationOracle:
    """Exact ord_P with automatic precision growth.

    Starts from k0 (default f*r + 2) and doubles the precision on every
    'at least k' answer, at most max_doublings times, before giving up
    with PrecisionError.
    """

    def __init__(self, field: FiniteField, m: int, k0: int, *,
                 max_doublings: int = 8):
        self._ctx = PadicContext(field, m, k0)
        self._max_doublings = max_doublings

    @property
    def context(self) -> PadicContext:
        return self._ctx

    def valuation(self, z: CycInt) -> int:
        if not z:
            raise InputError("ord_P of 0 is infinite")
        val = padic_valuation(z, self._ctx)
        doublings = 0
        while not val.exact:
            if doublings >= self._max_doublings:
                raise PrecisionError(
                    f"valuation still >= {self._ctx.k} after "
                    f"{doublings} precision doublings")
            doublings += 1
            self._ctx = PadicContext(self._ctx.field, self._ctx.m,
                                     2 * self._ctx.k)
            val = padic_valuation(z, self._ctx)
        return val.value
