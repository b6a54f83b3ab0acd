from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import alphas, elements, fields, sphere_funs, weights
from spherevec.avmod import (
    NonIntegralExponent,
    OMEGA_WEIGHT,
    TMElement,
    TMTensorElement,
    VECT_WEIGHT,
    a_mult,
    compatibility_check,
    deg,
    derived_zE,
    dual_basis,
    dual_pair,
    embed,
    form_action,
    omega_embed,
    parse_element,
    phi,
    project,
    rank_one,
    tensor,
    tensor_a_mult,
    vf_act,
    vf_act_tensor,
    vf_embed,
    w_generator,
)
from spherevec.expr import parse_localized
from spherevec.glmod import INDICES, GLWeight
from spherevec.ring import LocalizedFun, SphereFun
from spherevec.vectorfields import D12, D23, D31, VARS, apply, bracket, form_to_chart

ZERO = LocalizedFun.lift(0)


def L(text: str) -> LocalizedFun:
    return parse_localized(text)


# ---------------------------------------------------------------------------
# elements


def test_element_printing_and_json():
    v = parse_element("z^2 (x) v0 - x/z (x) v1", GLWeight(1, Fraction(1, 2)))
    assert str(v) == "(1 - x^2 - y^2) ⊗ v0 + (-x/z) ⊗ v1 [1,1/2]"
    assert v.to_json() == {"m": 1, "alpha": "1/2", "coeffs": ["1 - x^2 - y^2", "-x/z"]}


def test_element_rejects_bad_input():
    with pytest.raises(ValueError):
        TMElement(GLWeight(1), [1])
    with pytest.raises(ValueError):
        TMElement(GLWeight(0), [L("1/x")])
    with pytest.raises(ValueError):
        parse_element("1 (x) v2", GLWeight(1))


def test_a_mult_examples():
    v = TMElement.basis(GLWeight(0, 3), 0, L("z^-1"))
    assert a_mult(SphereFun.var("z"), v) == TMElement.basis(GLWeight(0, 3), 0)


@given(elements(), sphere_funs(), sphere_funs())
def test_a_mult_associative(v, a, b):
    assert a_mult(a * b, v) == a_mult(a, a_mult(b, v))
    assert a_mult(1, v) == v


def test_deg_examples():
    w = GLWeight(1, 0)
    assert deg(TMElement(w, [L("z^3"), L("z")])) == 1
    assert deg(w_generator(1, 1)) == -1
    with pytest.raises(ValueError):
        deg(TMElement.zero(w))


@given(elements())
def test_deg_shift(v):
    if v:
        assert deg(a_mult(SphereFun.var("z"), v)) == deg(v) + 1


# ---------------------------------------------------------------------------
# the action


@pytest.mark.parametrize("m, alpha", [(0, -2), (1, 1), (2, Fraction(1, 2)), (3, -3)])
@pytest.mark.parametrize("N", [-2, 0, 3])
def test_d23_on_z_power(m, alpha, N):
    w = GLWeight(m, alpha)
    got = vf_act(D23, TMElement.basis(w, 0, LocalizedFun.monomial(0, 0, N)))
    c = -(N + (w.alpha - m) / 2)
    assert got == TMElement.basis(w, 0, c * LocalizedFun.monomial(0, 1, N - 1))


@given(alphas, st.integers(-3, 3), sphere_funs())
def test_rank_one_leading_term(alpha, k, a):
    w = GLWeight(0, alpha)
    z = LocalizedFun.monomial(0, 0, k)
    got = vf_act(D23, TMElement.basis(w, 0, z * a))
    expected = -(k + w.alpha / 2) * a * LocalizedFun.monomial(0, 1, k - 1)
    # equal modulo z^k A
    diff = got.coeffs[0] - expected
    assert not diff or diff.degree_z() >= k


@given(alphas)
def test_d12_kills_constant(alpha):
    assert not vf_act(D12, TMElement.basis(GLWeight(0, alpha), 0))


def test_compatibility_example():
    assert compatibility_check(D23, SphereFun.var("x"), TMElement.basis(GLWeight(0, 1), 0))


@given(fields(), sphere_funs(3), elements())
def test_compatibility(eta, a, v):
    assert compatibility_check(eta, a, v)


@given(fields(1), fields(1), elements(max_degree=2))
def test_lie_algebra_action(eta, mu, v):
    assert vf_act(bracket(eta, mu), v) == vf_act(eta, vf_act(mu, v)) - vf_act(mu, vf_act(eta, v))


# ---------------------------------------------------------------------------
# distinguished elements


def test_w_generator_examples():
    assert w_generator(0, -2) == TMElement.basis(GLWeight(0, -2), 0, L("z"))
    assert w_generator(1, 1) == TMElement(GLWeight(1, 1), [L("x/z"), L("y/z")])
    assert rank_one(4) == TMElement.basis(GLWeight(0, 4), 0, L("z^-2"))
    with pytest.raises(NonIntegralExponent):
        w_generator(1, 0)
    with pytest.raises(NonIntegralExponent):
        w_generator(0, Fraction(1, 2))


@st.composite
def integral_weights(draw, max_m=3):
    m = draw(st.integers(0, max_m))
    return m, m + 2 * draw(st.integers(-3, 3))


@given(integral_weights())
def test_w_first_layer_bounded(mw):
    m, alpha = mw
    w = w_generator(m, alpha)
    assert deg(w) == -(alpha + m) // 2
    for d in (D12, D23, D31):
        img = vf_act(d, w)
        assert not img or deg(img) >= deg(w)


# ---------------------------------------------------------------------------
# forms and fields


def test_omega_embed_dz():
    assert omega_embed((0, 0, 1)) == -w_generator(1, 1)
    assert omega_embed((1, 0, 0)) == TMElement.basis(OMEGA_WEIGHT, 0)


def test_vf_embed_d12_is_w():
    assert vf_embed(D12) == w_generator(1, -1)
    assert vf_embed(D12).weight == VECT_WEIGHT


def _ambient_lie_derivative(eta, form):
    """L_eta(sum F_i dx_i) = sum eta(F_i) dx_i + F_i d(eta_i), with ambient partials."""
    out = [SphereFun() for _ in range(3)]
    for i in range(3):
        out[i] = out[i] + apply(eta, form[i])
        for j, var in enumerate(VARS):
            out[j] = out[j] + form[i] * eta.comps[i].ambient_partial(var)
    return out


@st.composite
def ambient_forms(draw):
    return tuple(draw(sphere_funs(2)) for _ in range(3))


@given(fields(), ambient_forms())
def test_omega_action_matches_ambient_lie_derivative(eta, form):
    assert vf_act(eta, omega_embed(form)) == omega_embed(_ambient_lie_derivative(eta, form))


@given(fields(), ambient_forms())
def test_omega_action_matches_chart_formula(eta, form):
    chart = form_to_chart(form)
    assert vf_act(eta, omega_embed(chart)) == omega_embed(form_action(eta, chart))


@given(fields(), fields())
def test_field_action_is_bracket(eta, mu):
    assert vf_act(eta, vf_embed(mu)) == vf_embed(bracket(eta, mu))


# ---------------------------------------------------------------------------
# z (x) E_pq


def test_zE_examples():
    w = GLWeight(1, Fraction(3, 2))
    v = TMElement.basis(w, 1)
    assert derived_zE(1, 2, v) == TMElement.basis(w, 0, L("z"))
    assert derived_zE(1, 2, v, "witness") == TMElement.basis(w, 0, L("z"))
    assert not derived_zE(2, 1, TMElement.zero(w), "witness")
    with pytest.raises(ValueError):
        derived_zE(1, 2, v, "other")


@given(elements(max_degree=2))
def test_zE_direct_equals_witness(v):
    for p, q in INDICES:
        assert derived_zE(p, q, v) == derived_zE(p, q, v, "witness")


# ---------------------------------------------------------------------------
# duals


def test_dual_pair_examples():
    w = GLWeight(2, 1)
    assert dual_pair(TMElement.basis(w, 0), dual_basis(w, 0)) == LocalizedFun.lift(1)
    assert dual_pair(vf_embed(D12), omega_embed((1, 0, 0))) == LocalizedFun.var("y")
    with pytest.raises(ValueError):
        dual_pair(TMElement.basis(w, 0), TMElement.basis(w, 0))


@given(fields(), fields(), ambient_forms())
def test_pairing_is_contraction(eta, mu, form):
    gx, gy = form_to_chart(form)
    f = mu.comps
    assert dual_pair(vf_embed(mu), omega_embed(form)) == LocalizedFun.lift(f[0]) * gx + LocalizedFun.lift(f[1]) * gy


@given(weights(), fields(), st.data())
def test_pairing_invariance(w, eta, data):
    v = data.draw(elements(w, max_degree=2))
    u = data.draw(elements(GLWeight(w.m, -w.alpha), max_degree=2))
    lhs = apply(eta, dual_pair(v, u))
    assert lhs == dual_pair(vf_act(eta, v), u) + dual_pair(v, vf_act(eta, u))


@given(weights())
def test_dual_basis_pairs_to_delta(w):
    for i in range(w.dim):
        for j in range(w.dim):
            assert dual_pair(TMElement.basis(w, j), dual_basis(w, i)) == LocalizedFun.lift(int(i == j))


# ---------------------------------------------------------------------------
# tensor products


@given(fields(1), elements(max_m=2, max_degree=2), elements(max_m=2, max_degree=2))
def test_tensor_leibniz(eta, v, u):
    lhs = vf_act_tensor(eta, tensor(v, u))
    assert lhs == tensor(vf_act(eta, v), u) + tensor(v, vf_act(eta, u))


@given(elements(max_m=2, max_degree=2), elements(max_m=2, max_degree=2), sphere_funs(2))
def test_project_reconstruct_and_linear(v, u, a):
    t = tensor(v, u)
    ks = range(min(v.weight.m, u.weight.m) + 1)
    total = None
    for k in ks:
        piece = embed(k, project(k, t), t.left, t.right)
        total = piece if total is None else total + piece
        assert project(k, tensor_a_mult(a, t)) == a_mult(a, project(k, t))
    assert total == t


@given(fields(1), elements(max_m=2, max_degree=2), elements(max_m=2, max_degree=2))
def test_project_commutes_with_fields(eta, v, u):
    t = tensor(v, u)
    for k in range(min(v.weight.m, u.weight.m) + 1):
        assert project(k, vf_act_tensor(eta, t)) == vf_act(eta, project(k, t))


@pytest.mark.parametrize("m, a, n, b", [(1, 1, 1, -1), (2, 0, 1, 1), (3, 1, 2, 2), (0, -2, 3, -1), (3, 3, 3, -3)])
def test_phi_of_generators(m, a, n, b):
    assert phi(tensor(w_generator(m, a), w_generator(n, b))) == w_generator(m + n, a + b)


def test_project_range():
    t = tensor(w_generator(1, 1), w_generator(1, 1))
    with pytest.raises(ValueError):
        project(2, t)
    assert isinstance(t, TMTensorElement)
