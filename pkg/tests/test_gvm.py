from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from affine_sl2.affine_pbw import gen
from affine_sl2.gvm import (CAP_ENV, GeneralizedVermaModule, GVMConfig, ModuleElement, ResourceLimitError,
                            build_module, conformal_weight, element, key_grade)
from affine_sl2.linalg import axpy
from affine_sl2.sl2_core import E, F, H, ROOT_WEIGHT
from oracles import loop_bracket, pbw_series


def vec(V, text_mono, k=0, c=1):
    from affine_sl2.affine_pbw import parse_monomial
    return element({(parse_monomial(text_mono), k): Fraction(c)})


def test_dims_small():
    V = build_module(0, 1, 2)
    assert [V.dim(d) for d in range(3)] == [1, 3, 9]
    assert {w: len(V.block(2, w)) for w in V.weights(2)} == {4: 1, 2: 2, 0: 3, -2: 2, -4: 1}
    W = build_module(2, 2, 0)
    assert W.weights(0) == [2, 0, -2] and all(len(W.block(0, w)) == 1 for w in (2, 0, -2))


@pytest.mark.parametrize("n", range(4))
def test_dims_match_series(n):
    V = build_module(n, 1, 5)
    series = pbw_series(5)
    assert [V.dim(d) for d in range(6)] == [(n + 1) * s for s in series]


def test_config_validation():
    with pytest.raises(ValueError):
        GVMConfig(0, -2, 1)
    with pytest.raises(ValueError):
        GVMConfig(-1, 1, 1)
    with pytest.raises(ValueError):
        GVMConfig(0, 1, -1)
    assert build_module(0, Fraction(1, 2), 2).dim(2) == 9


def test_resource_cap(monkeypatch):
    monkeypatch.setenv(CAP_ENV, "10")
    with pytest.raises(ResourceLimitError):
        GeneralizedVermaModule(GVMConfig(0, 1, 3))


@pytest.mark.parametrize("lv", [1, 2, 3])
def test_action_examples(lv):
    V = build_module(0, lv, 3)
    assert V.act(E, 1, vec(V, "e(-1)")) == {}
    assert V.act(E, 1, vec(V, "f(-1)")) == {((), 0): lv}
    ee = vec(V, "e(-1)e(-1)")
    assert V.act(H, 0, ee) == {k: 4 * c for k, c in ee.items()}


def test_truncation_flag():
    V = build_module(0, 1, 2)
    top = vec(V, "e(-1)e(-1)")
    out = V.act(F, -1, top)
    assert out == {} and out.truncated
    assert not V.act(F, -1, vec(V, "e(-1)")).truncated


def test_conformal_weight():
    assert conformal_weight(0, 5, 0) == 0
    assert conformal_weight(1, 1, 0) == Fraction(1, 4)
    assert conformal_weight(2, 2, 3) == Fraction(7, 2)
    assert build_module(2, 2, 1).conformal_weight(3) == Fraction(7, 2)


GENS = [(m, g) for m in range(-2, 3) for g in (E, H, F)]


@pytest.mark.parametrize("n,lv", [(0, 1), (1, 2)])
def test_bracket_fidelity(n, lv):
    V = build_module(n, lv, 6)
    for d in range(3):
        for key in V.basis(d):
            v = element({key: 1})
            for x in GENS:
                for y in GENS:
                    lhs = V.act(x[1], x[0], V.act(y[1], y[0], v))
                    axpy(lhs, -1, V.act(y[1], y[0], V.act(x[1], x[0], v)))
                    terms, central = loop_bracket(x, y, Fraction(lv))
                    rhs = ModuleElement()
                    for (m, g), c in terms.items():
                        axpy(rhs, c, V.act(g, m, v))
                    axpy(rhs, central, v)
                    assert lhs == rhs, (x, y, key)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2), st.integers(0, 3), st.sampled_from([E, H, F]), st.integers(-3, 3), st.data())
def test_action_respects_grade_and_weight(n, d, g, m, data):
    V = build_module(n, 2, 6)
    key = data.draw(st.sampled_from(V.basis(d)))
    for tgt in V.act(g, m, element({key: 1})):
        assert key_grade(tgt) == d - m
        assert V.key_weight(tgt) == V.key_weight(key) + ROOT_WEIGHT[g]


def _kernel_dim_oracle(V, d, w):
    blk = V.block(d, w)
    rows = {}
    for g, m in ((E, 0), (F, 1)):
        for c, key in enumerate(blk):
            for tgt, coeff in V.act_key(g, m, key).items():
                rows.setdefault((g, m, tgt), {})[c] = coeff
    if not rows:
        return len(blk)
    M = sympy.Matrix([[sympy.Rational(str(r.get(c, 0))) for c in range(len(blk))] for r in rows.values()])
    return len(blk) - M.rank()


@pytest.mark.parametrize("n,lv", [(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)])
def test_singular_vectors_against_generator_kernel(n, lv):
    V = build_module(n, lv, 4)
    for d in range(1, 4):
        found = V.singular_vectors(d)
        for s in found:
            for g in (E, H, F):
                for m in range(1, 5):
                    assert not V.act(g, m, s)
            assert not V.act(E, 0, s)
        per_w = {}
        for s in found:
            per_w.setdefault(V.key_weight(next(iter(s))), []).append(s)
        for w in V.weights(d):
            assert len(per_w.get(w, [])) == _kernel_dim_oracle(V, d, w)


def test_singular_vector_examples():
    V = build_module(0, 1, 3)
    assert V.singular_vectors(1) == []
    assert V.singular_vectors(2) == [vec(V, "e(-1)e(-1)")]
    for lv in (1, 2, 3):
        for n in range(lv + 1):
            d = lv + 1 - n
            W = build_module(n, lv, d)
            for dd in range(1, d):
                assert W.singular_vectors(dd) == []
            sv = W.singular_vectors(d)
            assert len(sv) == 1
            assert {W.key_weight(k) for k in sv[0]} == {2 * (lv + 1) - n}


def test_rendering_and_skeleton():
    V = build_module(1, 1, 1)
    assert V.render(V.act(E, -1, element({((), 1): 1}))) == "1*e(-1)u1"
    sk = V.skeleton()
    assert [g["dim"] for g in sk["grades"]] == [2, 6]
    assert V.skeleton_json() == build_module(1, 1, 1).skeleton_json()


def test_act_word_applies_rightmost_first():
    V = build_module(0, 1, 2)
    one = element({((), 0): 1})
    word = (gen("e", -1), gen("f", -1))
    expected = V.act(E, -1, V.act(F, -1, one))
    assert V.act_word(word, one) == expected
