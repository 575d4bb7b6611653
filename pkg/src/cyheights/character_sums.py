"""Jacobi sums over GF(q), evaluated exactly in Z[zeta_m].

The canonical multiplicative character of order m sends the field's
generator g to zeta_m; concretely chi(x) = zeta^(e(x)) with
e(x) = dlog(x) mod m, which is well defined because m divides q - 1.

For an exponent vector (a_0, ..., a_{r+1}) the Jacobi sum is

    j(alpha) = (-1)^r * sum chi(v_1)^(a_1) * ... * chi(v_{r+1})^(a_{r+1})

over the solutions of 1 + v_1 + ... + v_{r+1} = 0 with all v_i nonzero.
Equivalently it is the (r+1)-fold additive convolution of the tables
f_a(x) = chi(x)^a (with f_a(0) = 0) evaluated at -1, times (-1)^r.

The production evaluator exploits that every partial convolution
g = f_{a_1} * ... * f_{a_s} is scaling-equivariant,
g(lambda*z) = chi(lambda)^(a_1+...+a_s) * g(z), hence is determined by
the pair (g(0), g(1)).  Folding in one more factor costs a single
two-variable Jacobi sum J(s, b) = sum_{y != 0,1} chi(1-y)^s chi(y)^b,
an O(q) count reused across exponent vectors.  The values produced are
identical, coefficient for coefficient, to the dense convolution; the
independent check is the literal enumeration in jacobi_sum_naive.
"""

from __future__ import annotations

import json
import os
from math import gcd

from .cyclotomic import CycInt, degree
from .errors import BudgetError, InputError
from .finite_field import FiniteField

DEFAULT_NAIVE_BUDGET = 10**7


class Character:
    """The canonical order-m multiplicative character of a finite field."""

    __slots__ = ("field", "m", "exponent", "_minus_one_exp", "_two_var_cache")

    def __init__(self, field: FiniteField, m: int):
        if m < 1:
            raise InputError(f"character order must be >= 1, got {m}")
        if (field.q - 1) % m != 0:
            raise InputError(
                f"order m={m} does not divide q-1={field.q - 1}")
        self.field = field
        self.m = m
        # exponent[x] = dlog(x) mod m for x != 0; index 0 is unused
        exponent = [0] * field.q
        for enc in range(1, field.q):
            exponent[enc] = field.dlog[enc] % m
        self.exponent = tuple(exponent)
        self._minus_one_exp = self.exponent[field.neg(1)]
        self._two_var_cache: dict[tuple[int, int], CycInt] = {}

    def value(self, x: int, power: int = 1) -> CycInt:
        """chi(x)^power as a cyclotomic integer; x = 0 is rejected."""
        if x == 0:
            raise InputError("chi(0) is undefined")
        return CycInt.root_of_unity(self.m, self.exponent[x] * power)

    def two_variable_sum(self, s: int, b: int) -> CycInt:
        """J(s, b) = sum over y outside {0, 1} of chi(1-y)^s chi(y)^b."""
        key = (s % self.m, b % self.m)
        cached = self._two_var_cache.get(key)
        if cached is not None:
            return cached
        field, m, e = self.field, self.m, self.exponent
        s, b = key
        counts = [0] * m
        one = 1  # encoding of the field element 1
        for y in range(1, field.q):
            if y == one:
                continue
            counts[(s * e[field.sub(one, y)] + b * e[y]) % m] += 1
        result = CycInt.from_exponent_counts(m, counts)
        self._two_var_cache[key] = result  # idempotent under races
        return result


def character_table(field: FiniteField, m: int) -> Character:
    return Character(field, m)


def _check_alpha(alpha: tuple[int, ...], m: int) -> int:
    """Validate an exponent vector; returns r = len(alpha) - 2."""
    if len(alpha) < 3:
        raise InputError("exponent vector needs at least 3 components")
    if any(not 0 < a < m for a in alpha):
        raise InputError(
            f"components of {alpha} must lie strictly between 0 and {m}")
    if sum(alpha) % m != 0:
        raise InputError(f"components of {alpha} must sum to 0 mod {m}")
    return len(alpha) - 2


def jacobi_sum(alpha: tuple[int, ...], chi: Character) -> CycInt:
    """The Jacobi sum j(alpha) for the canonical character.

    Exactly equals (-1)^r times the sum of chi(v_1)^(a_1) ... over
    solutions of 1 + v_1 + ... + v_{r+1} = 0 in nonzero field elements;
    a_0 does not enter the summand.
    """
    m = chi.m
    r = _check_alpha(alpha, m)
    q = chi.field.q
    neg = chi._minus_one_exp

    # state of the partial convolution: value at 0, value at 1, total twist
    s = alpha[1]
    c0 = CycInt.zero(m)
    c1 = CycInt.one(m)
    for b in alpha[2:]:
        if (s + b) % m == 0:
            new_c0 = c1 * CycInt.root_of_unity(m, s * neg) * (q - 1)
        else:
            new_c0 = CycInt.zero(m)
        c0, c1 = new_c0, c0 + c1 * chi.two_variable_sum(s, b)
        s = (s + b) % m
    # s = -a_0 mod m is nonzero, so the value at -1 comes from the c1 branch
    value_at_minus_one = CycInt.root_of_unity(m, s * neg) * c1
    if r % 2:
        return -value_at_minus_one
    return value_at_minus_one


def jacobi_sum_naive(alpha: tuple[int, ...], chi: Character, *,
                     budget: int = DEFAULT_NAIVE_BUDGET) -> CycInt:
    """Literal enumeration oracle for jacobi_sum.

    Walks all (v_1, ..., v_r) in (F_q^*)^r, solves for v_{r+1}, and
    tallies character exponents.  Enumeration size q^r must stay within
    budget.
    """
    m = chi.m
    r = _check_alpha(alpha, m)
    field = chi.field
    q = field.q
    if q**r > budget:
        raise BudgetError(
            f"naive-oracle budget exceeded: q^r = {q}^{r} = {q**r} > {budget}")

    e = chi.exponent
    exps = alpha[1:]
    counts = [0] * m
    minus_one = field.neg(1)
    units = range(1, q)

    def walk(depth: int, acc_sum: int, acc_exp: int) -> None:
        if depth == r:
            v_last = field.sub(minus_one, acc_sum)
            if v_last:
                counts[(acc_exp + exps[r] * e[v_last]) % m] += 1
            return
        a = exps[depth]
        for v in units:
            walk(depth + 1, field.add(acc_sum, v), acc_exp + a * e[v])

    walk(0, 0, 0)
    total = CycInt.from_exponent_counts(m, counts)
    if r % 2:
        return -total
    return total


def scaled_alpha(t: int, alpha: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Componentwise t*alpha mod m, components kept in (0, m)."""
    if gcd(t, m) != 1:
        raise InputError(f"t={t} is not a unit modulo {m}")
    return tuple((t * a) % m for a in alpha)


def jacobi_sum_table(chi: Character, alphas, *,
                     cache: JacobiCache | None = None) -> dict:
    """Jacobi sums for a family of exponent vectors.

    One representative per Galois orbit is evaluated; the rest of the
    orbit is filled via j(t*alpha) = sigma_t(j(alpha)).  An optional
    on-disk cache is consulted first and updated with new values.
    """
    m = chi.m
    field = chi.field
    wanted = list(alphas)
    table: dict[tuple[int, ...], CycInt] = {}
    units = [t for t in range(1, m) if gcd(t, m) == 1]
    dirty = False
    for alpha in wanted:
        if alpha in table:
            continue
        j = cache.get(field.p, m, alpha) if cache is not None else None
        if j is None:
            j = jacobi_sum(alpha, chi)
            dirty = True
        table[alpha] = j
        for t in units[1:]:
            talpha = scaled_alpha(t, alpha, m)
            if talpha not in table:
                table[talpha] = j.galois(t)
    if cache is not None and dirty:
        for alpha in wanted:
            cache.put(field.p, m, alpha, table[alpha])
        cache.save()
    return {alpha: table[alpha] for alpha in wanted}


class GroupFunction:
    """A dense table F_q -> Z[zeta_m], convolved over the additive group.

    The quadratic-time convolution here is the reference semantics for
    jacobi_sum; it is also what the associativity and commutativity
    spot-tests run against.  Fine for q up to a few hundred.
    """

    __slots__ = ("field", "m", "values")

    def __init__(self, field: FiniteField, m: int, values):
        values = list(values)
        if len(values) != field.q:
            raise InputError("table length must equal q")
        self.field = field
        self.m = m
        self.values = values

    @classmethod
    def character_power(cls, chi: Character, a: int) -> GroupFunction:
        """The table x -> chi(x)^a with value 0 at x = 0."""
        vals = [CycInt.zero(chi.m)]
        for x in range(1, chi.field.q):
            vals.append(CycInt.root_of_unity(chi.m, chi.exponent[x] * a))
        return cls(chi.field, chi.m, vals)

    def convolve(self, other: GroupFunction) -> GroupFunction:
        if self.field is not other.field or self.m != other.m:
            raise InputError("convolution operands live on different groups")
        field = self.field
        q = field.q
        out = [CycInt.zero(self.m) for _ in range(q)]
        for x in range(q):
            fx = self.values[x]
            if not fx:
                continue
            for y in range(q):
                gy = other.values[y]
                if gy:
                    z = field.add(x, y)
                    out[z] = out[z] + fx * gy
        return GroupFunction(field, self.m, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupFunction) and self.m == other.m
                and self.field is other.field and self.values == other.values)

    def __call__(self, x: int) -> CycInt:
        return self.values[x]


class JacobiCache:
    """Versioned JSON store of Jacobi-sum coefficient vectors.

    Keys are (p, m, r, alpha); values are power-basis coordinates.
    Writes go through an atomic replace, so concurrent writers can only
    race to store identical data.
    """

    FORMAT = 1

    def __init__(self, path: str):
        self.path = path
        self.entries: dict[str, list[int]] = {}
        self._load()

    @staticmethod
    def _key(p: int, m: int, alpha: tuple[int, ...]) -> str:
        r = len(alpha) - 2
        return f"{p},{m},{r}:" + ",".join(str(a) for a in alpha)

    def _load(self) -> None:
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return
        if data.get("format") == self.FORMAT:
            self.entries = dict(data.get("entries", {}))

    def get(self, p: int, m: int, alpha: tuple[int, ...]) -> CycInt | None:
        coeffs = self.entries.get(self._key(p, m, alpha))
        if coeffs is None or len(coeffs) != degree(m):
            return None
        return CycInt.from_coeffs(m, coeffs)

    def put(self, p: int, m: int, alpha: tuple[int, ...], value: CycInt) -> None:
        self.entries[self._key(p, m, alpha)] = list(value.coeffs)

    def save(self) -> None:
        payload = {"format": self.FORMAT, "entries": self.entries}
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        tmp = f"{self.path}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, self.path)
