import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, seed, strategies as st

from qcpr.braiding import D, V, LegOperator
from qcpr.relations import build_relations, decide, metric_families
from qcpr.wordspace import (
    DBP, DP, P, Alphabet, TensorFamily, apply_leg_op, atom, contract, insert, mul,
    normalize_bimodule_form, otimes, scalar, shape_of,
)

from conftest import braidings


def _fr(fam):
    return {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in fam.data.items()}


def test_atom_identity_coefficients():
    a = atom(P, 2)
    al = Alphabet(2)
    assert a.ext == (V, D)
    assert len(a.data) == 4
    for i, j in itertools.product(range(2), repeat=2):
        assert a.component(i, j) == {(al.code(P, i, j),): 1}


def test_products_and_legs():
    pp = mul(atom(P, 2), atom(P, 2))
    assert len(pp.ext) == 4
    x = otimes(atom(DP, 2), atom(DBP, 2))
    assert x.ext == (V, D, V, D)
    assert shape_of(Alphabet(2), next(iter(x.data))[1]).markers == (1,)
    a, b, c = atom(P, 2), atom(DP, 2), atom(DBP, 2)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(scalar(1, 2), a) == a
    with pytest.raises(ValueError):
        a + pp


def test_apply_identity_and_mismatch():
    pp = mul(atom(P, 2), atom(P, 2))
    assert apply_leg_op(pp, LegOperator.identity((V, D), 2), 3) == pp
    with pytest.raises(ValueError):
        apply_leg_op(pp, LegOperator.identity((V, V), 2), 1)


def test_S_on_pp_classical_index_permutation():
    _, _, so = braidings(1, 1)
    pp = mul(atom(P, 2), atom(P, 2))
    spp = apply_leg_op(pp, so.S, 1)
    for idx in itertools.product(range(2), repeat=4):
        i, j, k, l = idx
        assert spp.component(*idx) == pp.component(k, j, i, l)


def test_metric_classical_form():
    _, bs, _ = braidings(2, 1)
    g_pm, g_mp = metric_families(bs.ctx, bs)
    al = Alphabet(3)
    want = {((), (al.code(DP, i, j), al.code(DBP, j, i))): 1 for i in range(3) for j in range(3)}
    assert _fr(g_pm) == want


def test_coevaluation_insert_classical():
    # C'_2 p has component (ijkl) = delta_kj p^il
    _, bs, _ = braidings(1, 1)
    f = insert(atom(P, 2), bs.Cp, 2)
    al = Alphabet(2)
    assert f.ext == (V, D, V, D)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        want = {(al.code(P, i, l),): 1} if k == j else {}
        assert f.component(i, j, k, l) == want


def test_contract_insert_snake():
    _, bs, _ = braidings(2, Fraction(7, 10))
    f = mul(atom(DP, 3), atom(P, 3))
    # E_23 C_1 = id on the first V leg
    g = contract(insert(f, bs.C, 1), bs.E, 2)
    assert g == f
    with pytest.raises(ValueError):
        contract(f, bs.C, 1)
    with pytest.raises(ValueError):
        insert(f, bs.E, 1)


def test_normalize_already_normal_unchanged():
    rels = build_relations(*braidings(1, Fraction(7, 10))[:2], so=braidings(1, Fraction(7, 10))[2])
    f = mul(mul(atom(P, 2), atom(DP, 2)), atom(DBP, 2))
    assert normalize_bimodule_form(f, rels.move_left, "left") == f
    with pytest.raises(ValueError):
        normalize_bimodule_form(f, rels.move_left, "up")


def test_normalize_classical_is_permutation():
    ctx, bs, so = braidings(1, 1)
    rels = build_relations(ctx, bs, so=so)
    f = mul(atom(DP, 2), atom(P, 2))
    g = normalize_bimodule_form(f, rels.move_left, "left")
    al = Alphabet(2)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        # dp^ij p^kl = p^kj dp^il classically (up to the commutation in B)
        comp = g.component(i, j, k, l)
        assert len(comp) == 1
        (w, c), = comp.items()
        assert c == 1 and al.skeleton(w) == (DP,)


# -- property: normalization equals its input in the quotient ---------------

@st.composite
def words(draw, n):
    syms = draw(st.lists(st.sampled_from([P, P, DP, DBP]), min_size=2, max_size=4))
    if all(s == P for s in syms) or syms.count(DP) + syms.count(DBP) > 2:
        syms = [DP, P]
    al = Alphabet(n)
    return tuple(al.code(s, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for s in syms)


@pytest.mark.parametrize("direction", ["left", "right"])
@pytest.mark.property
@seed(5)
@settings(max_examples=12, deadline=None)
@given(data=st.data())
def test_normalization_equivalence(direction, data):
    ctx, bs, so = braidings(1, Fraction(7, 10))
    rels = _rels(1)
    w = data.draw(words(2))
    f = TensorFamily(2, (), {((), w): 1})
    table = rels.move_left if direction == "left" else rels.move_right
    g = normalize_bimodule_form(f, table, direction)
    assert decide(g - f, rels).zero


_RELS = {}


def _rels(r):
    if r not in _RELS:
        ctx, bs, so = braidings(r, Fraction(7, 10))
        _RELS[r] = build_relations(ctx, bs, so=so)
    return _RELS[r]


@pytest.mark.property
@seed(9)
@settings(max_examples=20, deadline=None)
@given(c=st.fractions(min_value=-3, max_value=3, max_denominator=5), pos=st.sampled_from([1, 3]))
def test_leg_op_distributes(c, pos):
    _, bs, so = braidings(1, Fraction(3, 5))
    f = mul(atom(P, 2), atom(DP, 2))
    h = mul(atom(DBP, 2), atom(P, 2))
    op = bs.br(V, D)
    lhs = apply_leg_op(f.scale(c) + h, op, pos)
    rhs = apply_leg_op(f, op, pos).scale(c) + apply_leg_op(h, op, pos)
    assert lhs == rhs
