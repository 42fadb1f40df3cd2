import random

import numpy as np
import pytest

from mk3kit.gf import FieldCtx, LogTable, find_irreducible, is_irreducible

from oracles import brute_irreducible, squares_mod

rng = random.Random(40923)


def test_find_irreducible_degree_one():
    assert find_irreducible(7, 1) == (0, 1)


def test_find_irreducible_7_2():
    # -1 is a non-square mod 7, so x^2 + 1 is the lexicographic minimum
    assert find_irreducible(7, 2) == (1, 0, 1)


def test_find_irreducible_7_3_against_oracle():
    mod = find_irreducible(7, 3)
    assert brute_irreducible(mod, 7)
    # lexicographic minimality: nothing smaller is irreducible
    idx = sum(c * 7**i for i, c in enumerate(mod[:-1]))
    for smaller in range(idx):
        low = []
        t = smaller
        for _ in range(3):
            low.append(t % 7)
            t //= 7
        assert not brute_irreducible(low + [1], 7)


def test_is_irreducible_matches_oracle():
    for n in (2, 3):
        for _ in range(30):
            poly = [rng.randrange(7) for _ in range(n)] + [1]
            assert is_irreducible(poly, 7) == brute_irreducible(poly, 7)


def test_field_rejects_bad_input():
    with pytest.raises(ValueError):
        FieldCtx(2, 1)
    with pytest.raises(ValueError):
        FieldCtx(9, 1)
    with pytest.raises(ValueError):
        FieldCtx(7, 2, modulus=(0, 0, 1))  # x^2 is reducible


def test_modulus_relation_f49():
    ctx = FieldCtx(7, 2, modulus=(1, 0, 1))
    x = ctx.elem((0, 1))
    assert ctx.mul(x, x) == ctx.elem(-1)


def test_inverse():
    ctx = FieldCtx(7, 2)
    assert ctx.inv(ctx.one) == ctx.one
    with pytest.raises(ZeroDivisionError):
        ctx.inv(ctx.zero)
    for _ in range(20):
        e = ctx.elem((rng.randrange(7), rng.randrange(7)))
        if e != ctx.zero:
            assert ctx.mul(e, ctx.inv(e)) == ctx.one


def test_frobenius_is_additive():
    ctx = FieldCtx(7, 3)
    for _ in range(30):
        e1 = ctx.elem([rng.randrange(7) for _ in range(3)])
        e2 = ctx.elem([rng.randrange(7) for _ in range(3)])
        assert ctx.frobenius(ctx.add(e1, e2)) == ctx.add(ctx.frobenius(e1), ctx.frobenius(e2))


def test_fermat_little():
    ctx = FieldCtx(7, 2)
    for _ in range(20):
        e = ctx.elem((rng.randrange(7), rng.randrange(7)))
        if e != ctx.zero:
            assert ctx.pow(e, ctx.q - 1) == ctx.one


def test_quadratic_character_basics():
    ctx = FieldCtx(7, 1)
    assert ctx.quadratic_character(ctx.zero) == 0
    assert squares_mod(7) == {1, 2, 4}
    assert ctx.quadratic_character(ctx.elem(3)) == -1
    assert ctx.quadratic_character(ctx.elem(2)) == 1


def test_quadratic_character_even_powers():
    ctx = FieldCtx(7, 2)
    table = LogTable(ctx)
    g = table.generator
    for _ in range(10):
        k = rng.randrange(1, ctx.q - 1)
        assert ctx.quadratic_character(ctx.pow(g, 2 * k)) == 1


def test_quadratic_character_multiplicative():
    ctx = FieldCtx(7, 3)
    for _ in range(30):
        e1 = ctx.elem([rng.randrange(7) for _ in range(3)])
        e2 = ctx.elem([rng.randrange(7) for _ in range(3)])
        if e1 != ctx.zero and e2 != ctx.zero:
            assert ctx.quadratic_character(ctx.mul(e1, e2)) == (
                ctx.quadratic_character(e1) * ctx.quadratic_character(e2)
            )


def test_enumerate_elements():
    ctx = FieldCtx(7, 2)
    elems = list(ctx.enumerate_elements())
    assert len(elems) == 49
    assert elems[0] == ctx.zero
    assert len(set(elems)) == 49
    plus = sum(1 for e in elems if ctx.quadratic_character(e) == 1)
    assert plus == (ctx.q - 1) // 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_table_chi_matches_polynomial_backend(n):
    ctx = FieldCtx(7, n)
    table = LogTable(ctx)
    chi = table.chi_by_packed()
    for idx in range(ctx.q):
        assert chi[idx] == ctx.quadratic_character(ctx.unpack(idx))


def test_square_table_packing():
    ctx = FieldCtx(7, 2)
    table = LogTable(ctx)
    bits = np.unpackbits(table.square_table())[: ctx.q]
    chi = table.chi_by_packed()
    assert ((chi == 1).astype(np.uint8) == bits).all()


def test_zech_addition_matches_field_addition():
    ctx = FieldCtx(7, 3)
    table = LogTable(ctx)
    for _ in range(200):
        i = rng.randrange(table.M + 1)
        j = rng.randrange(table.M + 1)
        lhs = ctx.add(table.elem_of(i), table.elem_of(j))
        assert table.elem_of(table.sadd(i, j)) == lhs
        rhs = ctx.mul(table.elem_of(i), table.elem_of(j))
        assert table.elem_of(table.smul(i, j)) == rhs


def test_exp_table_blocked_recurrence():
    # the vectorized block construction must agree with naive iteration
    # (2500 steps crosses the seed-block boundary at 1024 twice)
    ctx = FieldCtx(7, 4)
    table = LogTable(ctx)
    cur = ctx.one
    for k in range(min(2300, table.M)):
        assert ctx.pack(cur) == int(table.exp[k])
        cur = ctx.mul(cur, table.generator)


def test_table_limit_guard():
    ctx = FieldCtx(7, 1)
    table = LogTable(ctx)
    assert table.q == 7
