import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, seed, strategies as st

from qcpr.relations import (
    CORE_NAMES, build_relations, build_span, decide, engine_for, is_zero, spans_mutually_contain,
)
from qcpr.wordspace import DBP, DP, P, Alphabet, TensorFamily, apply_leg_op, atom, contract, mul

from conftest import T_GRID, braidings

_CACHE = {}


def rels(r, t, wedge="none", tier="core"):
    key = (r, Fraction(t), wedge, tier)
    if key not in _CACHE:
        ctx, bs, so = braidings(r, Fraction(t))
        _CACHE[key] = build_relations(ctx, bs, tier=tier, wedge=wedge, so=so)
    return _CACHE[key]


def _classical_entries(fam):
    return {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in fam.data.items()}


def test_core_names_and_unknown_options():
    R = rels(1, Fraction(7, 10))
    assert tuple(R.core) == CORE_NAMES
    ctx, bs, so = braidings(1, 1)
    with pytest.raises(ValueError):
        build_relations(ctx, bs, tier="bogus", so=so)
    with pytest.raises(ValueError):
        build_relations(ctx, bs, wedge="bogus", so=so)


def test_classical_A1_and_A3():
    R = rels(1, 1)
    al = Alphabet(2)
    A1 = R.core["A1"]
    for i, j, k, l in itertools.product(range(2), repeat=4):
        comp = A1.component(i, j, k, l)
        w1 = (al.code(P, i, j), al.code(P, k, l))
        w2 = (al.code(P, k, j), al.code(P, i, l))
        if w1 == w2:
            assert comp == {}
        else:
            # S pp - pp: the word p^kj p^il minus p^ij p^kl
            assert comp == {w2: 1, w1: -1}
    A3 = R.core["A3"].component()
    assert A3 == {(al.code(P, 0, 0),): 1, (al.code(P, 1, 1),): 1, (): -1}


def test_sigma_wedge_classical_is_antisymmetrizer():
    R = rels(1, 1, wedge="sigma")
    al = Alphabet(2)
    f = R.wedge["IS+-"]
    for i, j, k, l in itertools.product(range(2), repeat=4):
        comp = f.component(i, j, k, l)
        assert comp == {(al.code(DP, i, j), al.code(DBP, k, l)): 1,
                        (al.code(DBP, k, l), al.code(DP, i, j)): 1}


@pytest.mark.parametrize("r", [1, 2])
def test_projection_relation_derivable(r, t):
    R = rels(r, t)
    p = atom(P, r + 1)
    ctx, bs, _ = braidings(r, t)
    proj = contract(mul(p, p), bs.E, 2) - p
    v = decide(proj, R)
    assert v.zero and v.degree_used <= 3


def test_quotient_nonzero_at_low_degree():
    R = rels(1, Fraction(7, 10))
    eng = engine_for(R)
    sp = eng.base(2)
    # the relations cut the word space but leave a nonzero quotient
    words = sum(4 ** k for k in range(3))
    assert 0 < sp.dim() < words
    assert sp.ambient() <= words


def test_nonzero_word_never_zero():
    # under the character p -> e_11 the word p^11 maps to 1
    R = rels(1, Fraction(7, 10))
    al = Alphabet(2)
    w = TensorFamily(2, (), {((), (al.code(P, 0, 0),)): 1})
    for D in (1, 2, 3, 4):
        assert not is_zero(w, build_span(R, D)).zero


def test_empty_element_is_zero():
    R = rels(1, 1)
    assert decide(TensorFamily(2, ()), R).zero


def test_degree_overflow_is_inconclusive():
    R = rels(1, Fraction(7, 10))
    p = atom(P, 2)
    v = is_zero(mul(mul(p, p), p), build_span(R, 1))
    assert v.status == "INCONCLUSIVE" and "raise D" in v.note


@pytest.mark.parametrize("r", [1])
def test_C2_C3_identities(r, t):
    ctx, bs, so = braidings(r, t)
    R = rels(r, t)
    n = r + 1
    dp = atom(DP, n)
    E23 = contract(mul(dp, dp), bs.E, 2)
    assert decide(E23, R).zero
    x = mul(dp, dp)
    assert decide(apply_leg_op(x, so.St, 2) - x.scale(ctx.tp(-ctx.w.omega_sq)), R).zero


def test_containment_identical_sets():
    R = rels(1, Fraction(7, 10), wedge="HK")
    c = spans_mutually_contain(R, R)
    assert c.status == "ZERO"


def test_containment_two_sided_r1():
    A = rels(1, Fraction(3, 5), wedge="HK")
    B = rels(1, Fraction(3, 5), wedge="sigma")
    c = spans_mutually_contain(A, B)
    assert c.status == "ZERO", c.payload


# -- property suites ---------------------------------------------------------

def _member(R, draw_idx, n):
    """A random combination of relation instances in context."""
    al = Alphabet(n)
    fams = [R.core[k] for k in ("A1", "A2", "A3", "C1", "C2", "R1")]
    fam = fams[draw_idx[0] % len(fams)]
    comps = [el for el in fam.components().values() if el]
    el = comps[draw_idx[1] % len(comps)]
    left = (al.code(P, draw_idx[2] % n, draw_idx[3] % n),) if draw_idx[4] % 2 else ()
    return TensorFamily(n, (), {((), left + w): c for w, c in el.items()})


@pytest.mark.property
@seed(13)
@settings(max_examples=20, deadline=None)
@given(idx=st.lists(st.integers(0, 60), min_size=5, max_size=5))
def test_members_zero_at_both_points(idx):
    # identities are parameter-uniform: the same instance is ZERO at each t
    for t in (Fraction(7, 10), Fraction(3, 5)):
        R = rels(1, t)
        f = _member(R, idx, 2)
        assert decide(f, R).zero


@pytest.mark.property
@seed(17)
@settings(max_examples=10, deadline=None)
@given(idx=st.lists(st.integers(0, 60), min_size=5, max_size=5))
def test_span_monotonicity(idx):
    R = rels(1, Fraction(7, 10))
    f = _member(R, idx, 2)
    D0 = f.max_degree() + 1
    verdicts = [is_zero(f, build_span(R, D)).zero for D in range(D0, D0 + 3)]
    first = verdicts.index(True) if True in verdicts else None
    if first is not None:
        assert all(verdicts[first:])
