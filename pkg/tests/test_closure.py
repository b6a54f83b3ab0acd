from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from spherevec.avmod import TMElement, a_mult, deg, vf_act, w_generator
from spherevec.closure import (
    OPERATORS,
    EmptyGenerators,
    Inconclusive,
    Window,
    WindowError,
    WindowOverflow,
    close,
    degree_sequence,
    density_witness,
    element_coordinates,
    element_from_coordinates,
    generate,
    least_density_witness,
    membership,
    min_degree,
    operator_image,
    rank_one_invariant,
    shifted,
    uniqueness_probe,
)
from spherevec.config import CertifyConfig
from spherevec.glmod import GLWeight
from spherevec.ring import LocalizedFun, SphereFun
from spherevec.vectorfields import GENERATORS


def z_power(weight: GLWeight, k: int, i: int = 0) -> TMElement:
    return TMElement.basis(weight, i, LocalizedFun.monomial(0, 0, k))


def apply_op(op: str, v: TMElement) -> TMElement:
    if op in "xyz":
        return a_mult(SphereFun.var(op), v)
    return vf_act(GENERATORS[op], v)


# ---------------------------------------------------------------------------
# brute-force oracle: iterate S <- S + sum_T (T(S) ∩ W) with dense sympy algebra


def oracle_closure(gens, window: Window):
    weight = gens[0].weight
    keys = window.keys(weight)
    index = {k: n for n, k in enumerate(keys)}

    def vec(v):
        return [element_coordinates(v).get(k, 0) for k in keys]

    span = sp.Matrix([vec(g) for g in gens]).rref()[0]
    while True:
        basis = [element_from_coordinates(weight, {keys[c]: Fraction(int(x.p), int(x.q)) for c, x in enumerate(span.row(r)) if x})
                 for r in range(span.rows) if any(span.row(r))]
        new_rows = []
        for op in OPERATORS:
            images = [element_coordinates(apply_op(op, b)) for b in basis]
            outside = sorted({k for im in images for k in im if k not in index})
            if outside:
                # combinations of images whose out-of-window part cancels
                out_mat = sp.Matrix([[im.get(k, 0) for im in images] for k in outside])
                combos = out_mat.nullspace()
            else:
                combos = [sp.eye(len(images)).col(j) for j in range(len(images))]
            for c in combos:
                row = [sum((c[j] * images[j].get(k, 0) for j in range(len(images))), sp.Integer(0)) for k in keys]
                new_rows.append(row)
        grown = sp.Matrix.vstack(span, sp.Matrix(new_rows)) if new_rows else span
        grown = grown.rref()[0]
        grown = sp.Matrix([list(grown.row(r)) for r in range(grown.rows) if any(grown.row(r))])
        nonzero_span = sp.Matrix([list(span.row(r)) for r in range(span.rows) if any(span.row(r))])
        if grown.rows == nonzero_span.rows:
            return grown
        span = grown


def engine_matrix(b):
    keys = b.window.keys(b.weight)
    return sp.Matrix([[element_coordinates(v).get(k, 0) for k in keys] for v in b.vectors()])


@st.composite
def window_gens(draw):
    weight = GLWeight(draw(st.integers(0, 1)), Fraction(draw(st.integers(-4, 4)), 2))
    window = Window(draw(st.integers(0, 1)), draw(st.integers(1, 2)))
    keys = window.keys(weight)
    gens = []
    for _ in range(draw(st.integers(1, 2))):
        chosen = draw(st.lists(st.sampled_from(keys), min_size=1, max_size=3, unique=True))
        coords = {k: Fraction(draw(st.integers(1, 3)) * draw(st.sampled_from([-1, 1]))) for k in chosen}
        gens.append(element_from_coordinates(weight, coords))
    return gens, window


@settings(max_examples=15)
@given(window_gens())
def test_closure_matches_brute_force_oracle(case):
    gens, window = case
    ours = close(gens, window)
    theirs = oracle_closure(gens, window)
    assert engine_matrix(ours) == theirs


# ---------------------------------------------------------------------------
# invariants


@settings(max_examples=15)
@given(window_gens(), st.randoms(use_true_random=False))
def test_determinism_under_generator_order(case, rng):
    gens, window = case
    shuffled = list(gens)
    rng.shuffle(shuffled)
    assert close(gens, window).rows == close(shuffled, window).rows
    assert close(gens, window, jobs=3).rows == close(gens, window).rows


@pytest.mark.parametrize("weight, gen", [(GLWeight(1, 0), 0), (GLWeight(2, 1), 1), (GLWeight(1, 1), None)])
def test_monotone_in_window(weight, gen):
    g = w_generator(1, 1) if gen is None else z_power(weight, gen)
    degrees = degree_sequence([g], [Window(K, 4) for K in (1, 2, 3, 4)])
    assert all(a >= b for a, b in zip(degrees, degrees[1:]))


def test_operators_preserve_closure():
    window = Window(2, 4)
    b = close([w_generator(1, 1)], window)
    for v in b.vectors():
        for op in OPERATORS:
            img = apply_op(op, v)
            if all(window.contains(k) for k in element_coordinates(img)):
                assert membership(img, b)


@pytest.mark.parametrize("op", OPERATORS)
def test_operator_images_match_module_action(op):
    weight = GLWeight(1, Fraction(1, 2))
    for key in [(0, 1, 0, 0), (-1, 0, 2, 1), (2, 1, 1, 0)]:
        k, e, b, i = key
        v = TMElement.basis(weight, i, LocalizedFun.monomial(e, b, k))
        assert dict(operator_image(op, weight, key)) == element_coordinates(apply_op(op, v))


def test_window_shape():
    w = Window(2, 3)
    weight = GLWeight(1, 0)
    assert len(w.keys(weight)) == w.dimension(weight) == 36 * 2
    assert w.contains((-2, 1, 4, 0)) and not w.contains((-3, 0, 0, 0)) and not w.contains((0, 1, 3, 0))
    with pytest.raises(ValueError):
        Window(0, -1)


# ---------------------------------------------------------------------------
# examples


def test_rank_one_minus_two_is_bounded():
    report = generate([z_power(GLWeight(0, -2), 1)], Window(0, 6))
    assert report.label == "Bounded(1)"
    b = report.basis
    assert b.dimension == 36  # all z*mu (x) v0, deg mu <= 5
    assert density_witness(b, 1) and not density_witness(b, 0)
    assert report.to_json()["window"] == {"K": 0, "D": 6}


def test_non_integral_degrees_decrease():
    degrees = degree_sequence([z_power(GLWeight(1, 0), 0)], [Window(K, 4) for K in (2, 4, 6)])
    assert degrees[0] > degrees[1] > degrees[2]
    report = generate([z_power(GLWeight(1, 0), 0)], Window(2, 4))
    assert report.status != "Bounded"


def test_empty_generators():
    with pytest.raises(EmptyGenerators):
        close([], Window(0, 2))
    with pytest.raises(EmptyGenerators):
        generate([TMElement.zero(GLWeight(0, 0))], Window(0, 2))


def test_generator_outside_window():
    with pytest.raises(WindowError):
        close([z_power(GLWeight(0, 0), -3)], Window(2, 4))


def test_cap():
    with pytest.raises(WindowOverflow):
        close([z_power(GLWeight(1, 0), 0)], Window(2, 4), cap=10)
    with pytest.raises(WindowOverflow):
        generate([z_power(GLWeight(1, 0), 0)], Window(2, 4), config=CertifyConfig(cap=10))


def test_min_degree_examples():
    b = close([w_generator(1, 1)], Window(2, 5))
    assert min_degree(b) == -1
    # z times every row shifts the least degree by one
    z = SphereFun.var("z")
    assert min(deg(a_mult(z, v)) for v in b.vectors()) == min_degree(b) + 1
    # but z * generator closes back down: the fields lower z-degree
    assert min_degree(close(shifted([w_generator(1, 1)]), Window(2, 5))) == -1
    single = close([z_power(GLWeight(0, 3), 0)], Window(0, 0))
    assert single.dimension == 1 and min_degree(single) == 0
    with pytest.raises(ValueError):
        min_degree(close([TMElement.zero(GLWeight(0, 0))], Window(0, 1)))


def test_density_examples():
    b = close([w_generator(2, 0)], Window(2, 6))
    assert density_witness(b, 1)
    assert least_density_witness(b) == 1
    rank1 = close([z_power(GLWeight(0, -2), 1)], Window(2, 6))
    assert not density_witness(rank1, 0)
    zero = close([TMElement.zero(GLWeight(0, 0))], Window(0, 2))
    assert not any(density_witness(zero, N) for N in range(0, 3))
    with pytest.raises(WindowError):
        density_witness(b, 7)


def test_membership_examples():
    w1 = w_generator(1, 1)
    b = close([w1], Window(2, 5))
    assert all(membership(v, b) for v in b.vectors())
    assert membership(vf_act(GENERATORS["D23"], w1), b)
    with pytest.raises(WindowError):
        membership(z_power(GLWeight(1, 1), 6), b)


def test_uniqueness_examples():
    w2 = w_generator(2, 0)
    window = Window(3, 6)
    assert uniqueness_probe([w2], shifted([w2]), window)
    assert uniqueness_probe([w2], shifted([w2], 2), window)
    with pytest.raises(ValueError):
        uniqueness_probe([w_generator(0, 2)], [w_generator(0, -2)], window)
    with pytest.raises(Inconclusive):
        uniqueness_probe([z_power(GLWeight(0, 0), -3)], [z_power(GLWeight(0, 0), 0)], Window(3, 4), Window(0, 4))


def test_rank_one_invariance():
    assert rank_one_invariant(2, -1)
    assert not rank_one_invariant(2, 1)
