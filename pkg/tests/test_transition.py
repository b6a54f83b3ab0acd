
import pytest

from conftest import SPHERE_POINTS
from spherevec.avmod import NonIntegralExponent, w_generator
from spherevec.expr import parse_localized
from spherevec.glmod import GLWeight
from spherevec.ring import LocalizedFun, SpherePoint
from spherevec.transition import (
    CHART_PAIRS,
    check_diagram,
    check_images,
    cocycle_check,
    compose,
    field_image,
    parse_module_spec,
    rho_apply,
    rho_matrix,
    transition_matrix,
    twist_exponent,
    w_image,
)
from spherevec.vectorfields import D12, D23, D31, VAR_INDEX

L = parse_localized
ONE, ZERO = LocalizedFun.lift(1), LocalizedFun.lift(0)
ALL_PAIRS = [(a, b) for a in "xyz" for b in "xyz" if a != b]


def test_z_to_x_matrix():
    C = transition_matrix("z", "x")
    assert C.entries == ((L("-y/x"), L("-z/x")), (ONE, ZERO))
    assert C.det == L("z/x")


def test_same_chart_is_identity():
    C = transition_matrix("z", "z")
    assert C.entries == ((ONE, ZERO), (ZERO, ONE)) and C.det == ONE
    w = GLWeight(2, 4)
    v = (L("x"), L("y/z"), L("1"))
    assert rho_apply(w, C, v) == v


@pytest.mark.parametrize("point", SPHERE_POINTS)
def test_chain_rule_at_points(point):
    P = SpherePoint(*point)
    direct = transition_matrix("z", "y")
    via = compose(transition_matrix("z", "x"), transition_matrix("x", "y"))
    assert [[g.evaluate(P) for g in row] for row in via.entries] == [[g.evaluate(P) for g in row] for row in direct.entries]
    with pytest.raises(ValueError):
        compose(transition_matrix("z", "x"), transition_matrix("y", "z"))


@pytest.mark.parametrize("a, b", ALL_PAIRS)
def test_inverse_transition(a, b):
    there, back = transition_matrix(a, b), transition_matrix(b, a)
    assert compose(there, back).entries == ((ONE, ZERO), (ZERO, ONE))
    assert there.det * back.det == ONE


def test_rho_examples():
    C = transition_matrix("z", "x")
    assert rho_matrix(GLWeight(0, -2), C) == ((L("x/z"),),)
    assert rho_matrix(GLWeight(1, 1), C) == C.entries
    with pytest.raises(NonIntegralExponent):
        rho_matrix(GLWeight(1, 0), C)
    with pytest.raises(NonIntegralExponent):
        twist_exponent(GLWeight(0, 1))


@pytest.mark.parametrize("a, b", [(-2, 2), (4, -2), (2, 2)])
def test_rank_one_rho_multiplicative(a, b):
    for pair in ALL_PAIRS:
        C = transition_matrix(*pair)
        Ra, Rb, Rab = (rho_matrix(GLWeight(0, al), C)[0][0] for al in (a, b, a + b))
        assert Ra * Rb == Rab


@pytest.mark.parametrize("m, alpha", [(0, -2), (0, 2), (1, 1), (1, -1), (2, 0), (2, 2), (2, -2)])
def test_cocycle(m, alpha):
    assert cocycle_check(GLWeight(m, alpha))


def test_rank_one_diagram_by_hand():
    C = transition_matrix("z", "x")
    assert rho_apply(GLWeight(0, -2), C, (L("z"),)) == (L("x"),)
    assert check_images(GLWeight(0, -2), (L("z"),), (L("x"),), ("z", "x"))


@pytest.mark.parametrize("module", ["A^-2", "A^2", "A^4", "Omega", "Vect", "w:2,0", "w:1,1", "w:2,2", "w:3,1"])
@pytest.mark.parametrize("pair", ALL_PAIRS + [("z", "z")])
def test_diagrams_commute(module, pair):
    assert check_diagram(parse_module_spec(module), pair)


@pytest.mark.parametrize("m, alpha", [(0, -2), (1, 1), (1, -1), (2, 0), (3, 1)])
def test_w_image_in_z_chart_is_generator(m, alpha):
    assert w_image(GLWeight(m, alpha), "z") == w_generator(m, alpha).coeffs


def test_other_field_alignment_fails():
    # d/dt1 -> v0, d/dt2 -> v1 in every chart does not commute with rho
    def naive(eta, chart):
        t1, t2 = {"z": "xy", "x": "yz", "y": "zx"}[chart]
        return (LocalizedFun.lift(eta.comps[VAR_INDEX[t1]]), LocalizedFun.lift(eta.comps[VAR_INDEX[t2]]))

    w = GLWeight(1, -1)
    results = [check_images(w, naive(eta, a), naive(eta, b), (a, b)) for eta in (D12, D23, D31) for a, b in CHART_PAIRS]
    assert not all(results)
    assert all(check_images(w, field_image(eta, a), field_image(eta, b), (a, b)) for eta in (D12, D23, D31) for a, b in CHART_PAIRS)


def test_module_spec_parsing():
    assert str(parse_module_spec("A^-2")) == "A^-2"
    assert parse_module_spec("Vect").weight == GLWeight(1, -1)
    assert str(parse_module_spec("w:2,0")) == "w:2,0"
    with pytest.raises(NonIntegralExponent):
        parse_module_spec("A^3")
    with pytest.raises(NonIntegralExponent):
        parse_module_spec("w:1,0")
    with pytest.raises(ValueError):
        parse_module_spec("Sym2")
    with pytest.raises(ValueError):
        check_images(GLWeight(1, 1), (ONE,), (ONE,), ("z", "x"))
