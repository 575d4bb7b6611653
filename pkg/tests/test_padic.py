import random

import pytest

from cyheights.cyclotomic import CycInt, degree, galois_apply, modulus_squared
from cyheights.errors import InputError, PrecisionError
from cyheights.finite_field import build_field
from cyheights.padic import (Valuation, ValuationOracle,
                             build_padic_context, default_precision,
                             padic_valuation)


@pytest.fixture(scope="module")
def f9():
    return build_field(3, 2)


def test_trivial_conductor():
    field = build_field(5, 1)
    ctx = build_padic_context(field, 1, 3)
    assert ctx.zeta_hat == (1,)


def test_lifted_root_satisfies_exact_relations(f9):
    ctx = build_padic_context(f9, 4, 4)
    # zeta_hat^4 = 1 and zeta_hat^2 = -1 exactly in R_4
    minus_one = padic_valuation(CycInt.root_of_unity(4, 2) + 1, ctx)
    assert not minus_one.exact  # the image of zeta^2 + 1 is exactly 0
    one = padic_valuation(CycInt.root_of_unity(4, 4) - 1, ctx)
    assert not one.exact


def test_lifted_root_reduces_to_order_m_element(f9):
    ctx = build_padic_context(f9, 4, 5)
    residue = f9.encode(c % 3 for c in ctx.zeta_hat)
    # the residue has exact multiplicative order 4 in GF(9)
    assert f9.dlog[residue] % 2 == 0 and f9.dlog[residue] % 4 != 0
    powers = {1}
    acc = residue
    for _ in range(3):
        powers.add(acc)
        acc = f9.mul(acc, residue)
    assert acc == 1 and len(powers) == 4


def test_valuation_of_constants(f9):
    ctx = build_padic_context(f9, 4, 6)
    assert padic_valuation(CycInt.integer(4, 1), ctx) == Valuation.of(0)
    assert padic_valuation(CycInt.integer(4, 3), ctx) == Valuation.of(1)
    # q = p^f = 9 has valuation f = 2 (ord_P is unnormalized)
    assert padic_valuation(CycInt.integer(4, 9), ctx) == Valuation.of(2)
    assert padic_valuation(CycInt.zero(4), ctx) == Valuation.at_least(6)


def test_valuation_is_additive(f9):
    rng = random.Random(17)
    ctx = build_padic_context(f9, 4, 12)
    for _ in range(40):
        a = CycInt.from_coeffs(4, [rng.randint(-15, 15) for _ in range(2)])
        b = CycInt.from_coeffs(4, [rng.randint(-15, 15) for _ in range(2)])
        va = padic_valuation(a, ctx)
        vb = padic_valuation(b, ctx)
        if not (va.exact and vb.exact) or va.value + vb.value >= ctx.k:
            continue
        assert padic_valuation(a * b, ctx) == Valuation.of(va.value + vb.value)


def test_valuation_norm_consistency(f9):
    rng = random.Random(23)
    ctx = build_padic_context(f9, 4, 12)
    for _ in range(40):
        z = CycInt.from_coeffs(4, [rng.randint(-10, 10) for _ in range(2)])
        v = padic_valuation(z, ctx)
        vconj = padic_valuation(galois_apply(3, z), ctx)
        vnorm = padic_valuation(modulus_squared(z), ctx)
        if v.exact and vconj.exact and vnorm.exact:
            assert v.value + vconj.value == vnorm.value


def test_context_validations(f9):
    with pytest.raises(InputError):
        build_padic_context(f9, 5, 4)   # 5 does not divide q - 1 = 8
    with pytest.raises(InputError):
        build_padic_context(f9, 3, 4)   # gcd fine but 3 does not divide 8
    with pytest.raises(InputError):
        build_padic_context(f9, 4, 0)
    field = build_field(2, 4)
    with pytest.raises(InputError):
        build_padic_context(field, 4, 3)  # gcd(p, m) != 1


def test_conductor_mismatch(f9):
    ctx = build_padic_context(f9, 4, 4)
    with pytest.raises(InputError):
        padic_valuation(CycInt.one(5), ctx)


def test_default_precision():
    assert default_precision(4, 3) == 14


def test_oracle_doubles_precision(f9):
    k0 = 3
    oracle = ValuationOracle(f9, 4, k0)
    # valuation 7 is invisible at k = 3; two doublings reach k = 12
    assert oracle.valuation(CycInt.integer(4, 3**7)) == 7
    assert oracle.context.k == 12


def test_oracle_gives_up_cleanly(f9):
    oracle = ValuationOracle(f9, 4, 2, max_doublings=1)
    with pytest.raises(PrecisionError):
        oracle.valuation(CycInt.integer(4, 3**40))
    with pytest.raises(InputError):
        oracle.valuation(CycInt.zero(4))


def test_larger_conductor_context():
    field = build_field(7, 4)  # q = 2401, 5 | q - 1
    ctx = build_padic_context(field, 5, 6)
    assert len(ctx.zeta_hat) == 4
    # zeta_hat^5 = 1 exactly: the image of zeta^5 - 1 vanishes in R_6
    gone = padic_valuation(CycInt.root_of_unity(5) ** 5 - 1, ctx)
    assert not gone.exact
    # 7 is still a uniformizer upstairs
    assert padic_valuation(CycInt.integer(5, 7), ctx) == Valuation.of(1)
    assert degree(5) == 4
