from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from affine_sl2.affine_pbw import (AffineGenerator, bracket, depth, enumerate_pbw, gen, parse_monomial,
                                   render_combination, render_monomial, straighten, weight)
from oracles import loop_bracket, pbw_series

LEVEL = Fraction(7, 3)


def as_dict(terms):
    return {(g.mode, g.label): c for c, g in terms}


def test_bracket_examples():
    terms, central = bracket(gen("e", 1), gen("f", -1), 5)
    assert as_dict(terms) == {(0, 1): 1} and central == 5
    terms, central = bracket(gen("h", 2), gen("h", -2), 3)
    assert not terms and central == 12
    terms, central = bracket(gen("e", 3), gen("e", -3), 3)
    assert not terms and central == 0


GENS = [AffineGenerator(m, lab) for m in range(-3, 4) for lab in range(3)]


def test_bracket_matches_loop_realization():
    for a, b in product(GENS, GENS):
        terms, central = bracket(a, b, LEVEL)
        assert (as_dict(terms), central) == loop_bracket(tuple(a), tuple(b), LEVEL)


def _br(u, v):
    """Bracket of combinations {(mode, label) or 'c': coeff}; central element is inert."""
    out = {}
    for a, ca in u.items():
        for b, cb in v.items():
            if a == "c" or b == "c":
                continue
            terms, central = bracket(AffineGenerator(*a), AffineGenerator(*b), LEVEL)
            for c, g in terms:
                out[tuple(g)] = out.get(tuple(g), 0) + ca * cb * c
            if central:
                out["c"] = out.get("c", 0) + ca * cb * central
    return {k: v for k, v in out.items() if v}


def _sum(*vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def test_jacobi_identity():
    gens = [{tuple(g): 1} for g in GENS]
    for a, b, c in product(gens, repeat=3):
        lhs = _br(a, _br(b, c))
        rhs = _sum(_br(_br(a, b), c), _br(b, _br(a, c)))
        assert lhs == rhs


def test_pbw_counts_match_series():
    series = pbw_series(6)
    for d in range(7):
        assert len(enumerate_pbw(d)) == series[d]
    assert enumerate_pbw(0) == ((),)
    assert {render_monomial(m) for m in enumerate_pbw(1)} == {"e(-1)", "h(-1)", "f(-1)"}


def test_pbw_monomials_sorted_and_homogeneous():
    for d in range(6):
        for mono in enumerate_pbw(d):
            assert list(mono) == sorted(mono)
            assert depth(mono) == d


def test_straighten_examples():
    e1, f1, h1 = gen("e", -1), gen("f", -1), gen("h", -1)
    assert straighten([f1, e1]) == {(e1, f1): 1, (gen("h", -2),): -1}
    assert straighten([e1, e1]) == {(e1, e1): 1}
    assert straighten([h1, gen("e", -2)]) == {(gen("e", -2), h1): 1, (gen("e", -3),): 2}


def test_straighten_rejects_nonnegative_modes():
    with pytest.raises(ValueError):
        straighten([gen("e", 0)])


neg_gen = st.builds(AffineGenerator, st.integers(-3, -1), st.integers(0, 2))


@settings(max_examples=150, deadline=None)
@given(st.lists(neg_gen, max_size=5))
def test_straighten_preserves_depth_and_weight(seq):
    seq = tuple(seq)
    for mono in straighten(seq):
        assert depth(mono) == depth(seq)
        assert weight(mono) == weight(seq)
        assert list(mono) == sorted(mono)


@settings(max_examples=100, deadline=None)
@given(st.lists(neg_gen, max_size=5))
def test_straighten_idempotent_on_sorted(seq):
    mono = tuple(sorted(seq))
    assert straighten(mono) == {mono: 1}


@settings(max_examples=60, deadline=None)
@given(st.lists(neg_gen, max_size=4), st.lists(neg_gen, max_size=4))
def test_straighten_is_associative(a, b):
    # straightening a product must not depend on straightening a factor first
    whole = straighten(a + b)
    staged = {}
    for mono, c in straighten(a).items():
        for t, c2 in straighten(list(mono) + b).items():
            staged[t] = staged.get(t, 0) + c * c2
    assert whole == {k: v for k, v in staged.items() if v}


def test_render_roundtrip():
    for d in range(4):
        for mono in enumerate_pbw(d):
            assert parse_monomial(render_monomial(mono)) == mono
    assert render_monomial((gen("e", -2), gen("h", -1))) == "e(-2)h(-1)"
    assert render_combination({}) == "0"
    with pytest.raises(ValueError):
        parse_monomial("e(-1)x")
