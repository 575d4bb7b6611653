"""Deterministic construction of GF(p^f) with dense discrete-log tables.

Field elements are encoded as plain integers in [0, q): the element with
coefficient vector (c_0, ..., c_{f-1}) against the power basis of the
modulus is encoded as sum(c_i * p**i).  The encoding order doubles as the
canonical ordering used to select the modulus and the generator, so two
constructions of the same field agree bit for bit, across runs and across
machines.

Polynomials over GF(p) are coefficient lists with the constant term first.
"""

from __future__ import annotations

import json
import os
from math import gcd

from .errors import BudgetError, InputError, InternalCheckError

# Largest field the dense exp/dlog tables may hold, as a cardinality.
DEFAULT_TABLE_BUDGET = 1 << 24

_CACHE_FORMAT = 1


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale inputs."""
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


def order_mod(p: int, m: int) -> int:
    """Least f >= 1 with p**f = 1 (mod m).

    Requires gcd(p, m) = 1 and m >= 2.
    """
    if m < 2:
        raise InputError(f"modulus m must be >= 2, got {m}")
    if gcd(p, m) != 1:
        raise InputError(f"gcd(p, m) must be 1, got p={p}, m={m}")
    f = 1
    x = p % m
    while x != 1:
        x = (x * p) % m
        f += 1
    return f


def _factorize(n: int) -> dict[int, int]:
    facts: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            facts[d] = facts.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        facts[n] = facts.get(n, 0) + 1
    return facts


# --- polynomial helpers over GF(p), constant term first ---


def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod must be monic
    a = list(a)
    deg_m = len(mod) - 1
    for i in range(len(a) - 1, deg_m - 1, -1):
        c = a[i] % p
        if c:
            for j in range(deg_m + 1):
                a[i - deg_m + j] = (a[i - deg_m + j] - c * mod[j]) % p
    del a[deg_m:]
    if not a:
        a = [0]
    return _poly_trim(a)


def _poly_from_enc(k: int, p: int) -> list[int]:
    if k == 0:
        return [0]
    digits = []
    while k:
        digits.append(k % p)
        k //= p
    return digits


def _enc_from_poly(a: list[int], p: int) -> int:
    enc = 0
    for c in reversed(a):
        enc = enc * p + (c % p)
    return enc


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for k in range(p**d):
            low = _poly_from_enc(k, p)
            div = low + [0] * (d - len(low)) + [1]
            if _poly_rem(poly, div, p) == [0]:
                return False
    return True


def _smallest_irreducible(p: int, f: int) -> list[int]:
    # Candidates x^f + (digits of k), scanned in increasing encoding order:
    # this is exactly lexicographic order on the coefficient tuple read
    # leading coefficient first.
    for k in range(p**f):
        low = _poly_from_enc(k, p)
        poly = low + [0] * (f - len(low)) + [1]
        if _is_irreducible(poly, p):
            return poly
    raise InternalCheckError(  # pragma: no cover
        "no irreducible polynomial found; this cannot happen")


class FiniteField:
    """Immutable GF(p^f) with exp/dlog tables against a fixed generator.

    All arithmetic works on integer encodings.  Instances are safe to
    share between threads or processes; nothing is mutated after
    construction.
    """

    __slots__ = ("p", "f", "q", "modulus", "generator", "exp", "dlog")

    def __init__(self, p: int, f: int, modulus: tuple[int, ...],
                 generator: int, exp: tuple[int, ...],
                 dlog: tuple[int | None, ...]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self.generator = generator
        self.exp = exp
        self.dlog = dlog

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, f={self.f})"

    # --- element arithmetic on encodings ---

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out = 0
        shift = 1
        while a or b:
            out += ((a % p + b % p) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out = 0
        shift = 1
        while a:
            d = a % p
            if d:
                out += (p - d) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.dlog[a] + self.dlog[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.exp[(-self.dlog[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self.exp[(self.dlog[a] * e) % (self.q - 1)]

    def pth_power(self, a: int) -> int:
        """The Frobenius map x -> x^p."""
        return self.pow(a, self.p)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (c_0, ..., c_{f-1}) of an encoded element."""
        p = self.p
        out = []
        for _ in range(self.f):
            out.append(a % p)
            a //= p
        return tuple(out)

    def encode(self, coeffs) -> int:
        enc = 0
        for c in reversed(list(coeffs)):
            enc = enc * self.p + (c % self.p)
        return enc

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)


def dlog(field: FiniteField, x: int) -> int:
    """Discrete log of x against the field's canonical generator."""
    if x == 0:
        raise InputError("dlog of 0 is undefined")
    return field.dlog[x]


def _has_full_order(enc: int, q: int, prime_factors: dict[int, int],
                    modulus: list[int], p: int) -> bool:
    """True iff enc has multiplicative order exactly q - 1."""
    n = q - 1

    def powmod(base_enc: int, e: int) -> int:
        base = _poly_from_enc(base_enc, p)
        result = [1]
        while e:
            if e & 1:
                result = _poly_rem(_poly_mul(result, base, p), modulus, p)
            base = _poly_rem(_poly_mul(base, base, p), modulus, p)
            e >>= 1
        return _enc_from_poly(result, p)

    if powmod(enc, n) != 1:
        return False
    for ell in prime_factors:
        if powmod(enc, n // ell) == 1:
            return False
    return True


def build_field(p: int, f: int, *, table_budget: int = DEFAULT_TABLE_BUDGET,
                cache_dir: str | None = None) -> FiniteField:
    """Construct GF(p^f) deterministically.

    The modulus is the lexicographically smallest monic irreducible of
    degree f (coefficient tuple compared leading term first) and the
    generator is the smallest encoding of multiplicative order q - 1.
    When cache_dir is given, a versioned JSON sidecar keyed by (p, f)
    short-circuits the table build.
    """
    if not is_prime(p):
        raise InputError(f"p must be prime, got {p}")
    if f < 1:
        raise InputError(f"extension degree f must be >= 1, got {f}")
    q = p**f
    if q > table_budget:
        raise BudgetError(
            f"table-size budget exceeded: q = {p}^{f} = {q} > {table_budget}"
        )

    if cache_dir is not None:
        cached = _load_cached(cache_dir, p, f)
        if cached is not None:
            return cached

    if f == 1:
        modulus = [0, 1]  # the linear polynomial x; elements are residues mod p
    else:
        modulus = _smallest_irreducible(p, f)

    prime_factors = _factorize(q - 1) if q > 2 else {}
    generator = None
    if q == 2:
        generator = 1
    else:
        for cand in range(1, q):
            if _has_full_order(cand, q, prime_factors, modulus, p):
                generator = cand
                break
    assert generator is not None

    # Walk the cyclic group once to fill both tables.
    exp = [0] * (q - 1)
    dlog_table: list[int | None] = [None] * q
    gen_poly = _poly_from_enc(generator, p)
    cur = [1]
    for i in range(q - 1):
        enc = _enc_from_poly(cur, p)
        exp[i] = enc
        dlog_table[enc] = i
        cur = _poly_rem(_poly_mul(cur, gen_poly, p), modulus, p)
    if _enc_from_poly(cur, p) != 1:
        raise InternalCheckError("generator order check failed")

    field = FiniteField(p, f, tuple(modulus), generator, tuple(exp),
                        tuple(dlog_table))
    if cache_dir is not None:
        _store_cached(cache_dir, field)
    return field


def fermat_field(p: int, m: int, *, table_budget: int = DEFAULT_TABLE_BUDGET,
                 cache_dir: str | None = None) -> FiniteField:
    """The field GF(p^f) with f the multiplicative order of p mod m."""
    return build_field(p, order_mod(p, m), table_budget=table_budget,
                       cache_dir=cache_dir)


# --- optional on-disk cache ---


def _cache_path(cache_dir: str, p: int, f: int) -> str:
    return os.path.join(cache_dir, f"gf_p{p}_f{f}_v{_CACHE_FORMAT}.json")


def _load_cached(cache_dir: str, p: int, f: int) -> FiniteField | None:
    path = _cache_path(cache_dir, p, f)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if (data.get("format") != _CACHE_FORMAT or data.get("p") != p
            or data.get("f") != f):
        return None
    dlog_table = tuple(data["dlog"])
    q = p**f
    exp = [0] * (q - 1)
    for enc, i in enumerate(dlog_table):
        if i is not None:
            exp[i] = enc
    return FiniteField(p, f, tuple(data["modulus"]), data["generator"],
                       tuple(exp), dlog_table)


def _store_cached(cache_dir: str, field: FiniteField) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, field.p, field.f)
    payload = {
        "format": _CACHE_FORMAT,
        "p": field.p,
        "f": field.f,
        "modulus": list(field.modulus),
        "generator": field.generator,
        "dlog": list(field.dlog),
    }
    tmp = path + f".tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)  # atomic; concurrent writers are idempotent
