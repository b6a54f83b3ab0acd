"""Modules A_(z) (x) U_m^alpha over functions and vector fields on the sphere.

An element sum_i g_i (x) v_i is stored with g_i in A_(z).  A field acts by

    eta.(g (x) u) = sum_i f_i dg/dt_i (x) u + sum_{p,i} g df_i/dt_p (x) E_pi u

where f_1 d/dx + f_2 d/dy is eta written in the chart N(z), t = (x, y).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import glmod
from .expr import ParseError, parse_element_terms
from .glmod import GLWeight
from .ring import LocalizedFun, SphereFun, partial
from .vectorfields import D23, D31, VField, apply, form_to_chart

_ZERO = LocalizedFun.lift(0)


class NonIntegralExponent(ValueError):
    """The weight has (m - alpha)/2 outside Z, so w_m has no z-power."""


def _coerce(g) -> LocalizedFun:
    g = LocalizedFun.lift(g)
    if g.denom[0] or g.denom[1]:
        raise ValueError(f"coefficient {g} has denominators other than powers of z")
    return g


class TMElement:
    """sum_i coeffs[i] (x) v_i in A_(z) (x) U_m^alpha."""

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight: GLWeight, coeffs: Sequence):
        coeffs = tuple(_coerce(g) for g in coeffs)
        if len(coeffs) != weight.dim:
            raise ValueError(f"U_{weight.m} needs {weight.dim} coefficients, got {len(coeffs)}")
        self.weight = weight
        self.coeffs = coeffs

    @classmethod
    def zero(cls, weight: GLWeight) -> "TMElement":
        return cls(weight, [_ZERO] * weight.dim)

    @classmethod
    def basis(cls, weight: GLWeight, i: int, g=1) -> "TMElement":
        return cls(weight, [g if j == i else _ZERO for j in range(weight.dim)])

    def __eq__(self, other) -> bool:
        return isinstance(other, TMElement) and self.weight == other.weight and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.weight, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _check(self, other: "TMElement"):
        if self.weight != other.weight:
            raise ValueError(f"weight mismatch: {self.weight} vs {other.weight}")

    def __add__(self, other: "TMElement") -> "TMElement":
        self._check(other)
        return TMElement(self.weight, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TMElement") -> "TMElement":
        self._check(other)
        return TMElement(self.weight, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TMElement":
        return TMElement(self.weight, [-a for a in self.coeffs])

    def __rmul__(self, a) -> "TMElement":
        return a_mult(a, self)

    def __str__(self) -> str:
        parts = [f"({g}) ⊗ v{i}" for i, g in enumerate(self.coeffs) if g]
        return (" + ".join(parts) if parts else "0") + f" {self.weight}"

    def __repr__(self) -> str:
        return f"TMElement({str(self)!r})"

    def to_json(self) -> dict:
        return {"m": self.weight.m, "alpha": str(self.weight.alpha), "coeffs": [str(g) for g in self.coeffs]}


def parse_element(text: str, weight: GLWeight) -> TMElement:
    """Parse ``g0 (x) v0 + g1 (x) v1`` as an element of A_(z) (x) U_m^alpha."""
    terms = parse_element_terms(text)
    coeffs = [_ZERO] * weight.dim
    for i, g in terms.items():
        if i > weight.m:
            raise ParseError(f"v{i} is not a basis vector of U_{weight.m}", text.find(f"v{i}"), text)
        if g.denom[0] or g.denom[1]:
            raise ParseError(f"coefficient {g} of v{i} has denominators other than powers of z", 0, text)
        coeffs[i] = coeffs[i] + g
    return TMElement(weight, coeffs)


def a_mult(a, v: TMElement) -> TMElement:
    a = _coerce(a)
    return TMElement(v.weight, [a * g for g in v.coeffs])


def deg(v: TMElement) -> int:
    """Largest k with v in z^k A (x) U."""
    degrees = [g.degree_z() for g in v.coeffs if g]
    if not degrees:
        raise ValueError("degree of the zero element is undefined")
    return min(degrees)


# ---------------------------------------------------------------------------
# the field action


@lru_cache(maxsize=4096)
def _chart_data(eta: VField):
    """Chart coefficients (f_1, f_2) and the Jacobian df_i/dt_p of a field."""
    f = (LocalizedFun.lift(eta.comps[0]), LocalizedFun.lift(eta.comps[1]))
    jac = tuple(tuple(partial(f[i], t, "z") for i in range(2)) for t in ("x", "y"))
    return f, jac


def _act(eta: VField, coeffs: Sequence[LocalizedFun], table) -> list[LocalizedFun]:
    """The action formula on a flat coefficient list; ``table(p, q)`` is the sparse E_pq."""
    f, jac = _chart_data(eta)
    out = [_ZERO] * len(coeffs)
    for k, g in enumerate(coeffs):
        if not g:
            continue
        acc = out[k]
        for fi, t in zip(f, ("x", "y")):
            if fi:
                acc = acc + fi * partial(g, t, "z")
        out[k] = acc
    for p in range(2):
        for i in range(2):
            d = jac[p][i]
            if not d:
                continue
            for k, terms in enumerate(table(p + 1, i + 1)):
                g = coeffs[k]
                if g and terms:
                    dg = d * g
                    for j, c in terms:
                        out[j] = out[j] + dg * c
    return out


def vf_act(eta: VField, v: TMElement) -> TMElement:
    w = v.weight
    return TMElement(w, _act(eta, v.coeffs, lambda p, q: glmod.action(p, q, w)))


def compatibility_check(eta: VField, a, v: TMElement) -> bool:
    """eta.(a v) == eta(a) v + a (eta.v)."""
    a = _coerce(a)
    lhs = vf_act(eta, a_mult(a, v))
    rhs = a_mult(apply(eta, a), v) + a_mult(a, vf_act(eta, v))
    return lhs == rhs


# ---------------------------------------------------------------------------
# distinguished elements


def w_exponent(m: int, alpha) -> int:
    e = -(Fraction(alpha) + m) / 2
    if e.denominator != 1:
        raise NonIntegralExponent(
            f"(m - alpha)/2 = {(m - Fraction(alpha)) / 2} is not an integer for (m, alpha) = ({m}, {alpha})"
        )
    return int(e)


def w_generator(m: int, alpha) -> TMElement:
    """sum_i z^(-(alpha+m)/2) x^(m-i) y^i (x) v_i."""
    e = w_exponent(m, alpha)
    return TMElement(
        GLWeight(m, alpha), [LocalizedFun.monomial(m - i, i, e) for i in range(m + 1)]
    )


def rank_one(alpha) -> TMElement:
    """Generator z^(-alpha/2) (x) v_0 of the rank-one module A^alpha."""
    return w_generator(0, alpha)


OMEGA_WEIGHT = GLWeight(1, 1)
VECT_WEIGHT = GLWeight(1, -1)


def omega_embed(form: Sequence) -> TMElement:
    """1-forms into A_(z) (x) U_1^1 with dx -> v_0, dy -> v_1.

    ``form`` is either chart coefficients (g_x, g_y) on dx, dy or an ambient
    triple (f1, f2, f3) for f1 dx + f2 dy + f3 dz.
    """
    if len(form) == 3:
        form = form_to_chart(form, "z")
    return TMElement(OMEGA_WEIGHT, list(form))


def vf_embed(eta: VField) -> TMElement:
    """Fields into A_(z) (x) U_1^-1 with d/dx -> v_1, d/dy -> -v_0.

    This is the alignment for which the field action reproduces the
    bracket: v_1 and v_0 carry the weights of d/dx and d/dy.
    """
    return TMElement(VECT_WEIGHT, [-LocalizedFun.lift(eta.comps[1]), eta.comps[0]])


def form_action(eta: VField, form: Sequence[LocalizedFun]) -> tuple[LocalizedFun, LocalizedFun]:
    """Lie derivative of g_1 dx + g_2 dy in chart coefficients.

    sum_i f_i dg_j/dt_i dt_j + g_j d(f_j), independent of the module model.
    """
    f, jac = _chart_data(eta)
    out = []
    for j, t in enumerate(("x", "y")):
        acc = _ZERO
        for i, s in enumerate(("x", "y")):
            acc = acc + f[i] * partial(form[j], s, "z") + form[i] * jac[j][i]
        out.append(acc)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# the operators z (x) E_pq

WITNESS_PAIRS = {
    (1, 2): (D23, "x", 1),
    (2, 2): (D23, "y", 1),
    (1, 1): (D31, "x", -1),
    (2, 1): (D31, "y", -1),
}


def derived_zE(p: int, q: int, v: TMElement, method: str = "direct") -> TMElement:
    """z (x) E_pq applied to v.

    ``direct`` applies the definition; ``witness`` obtains the same operator
    as (f mu).v - f (mu.v), which shows the submodule generated by v is
    closed under it.
    """
    if method == "direct":
        out = [_ZERO] * v.weight.dim
        z = LocalizedFun.var("z")
        for k, terms in enumerate(glmod.action(p, q, v.weight)):
            g = v.coeffs[k]
            if g:
                for j, c in terms:
                    out[j] = out[j] + z * g * c
        return TMElement(v.weight, out)
    if method == "witness":
        mu, var, sign = WITNESS_PAIRS[(p, q)]
        f = SphereFun.var(var)
        diff = vf_act(f * mu, v) - a_mult(f, vf_act(mu, v))
        return diff if sign == 1 else -diff
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# duals


def dual_weight(w: GLWeight) -> GLWeight:
    return glmod.dual_weight(w)


def dual_pair(v: TMElement, w: TMElement) -> LocalizedFun:
    """The A_(z)-bilinear invariant pairing of A_(z) (x) U_m^alpha with A_(z) (x) U_m^-alpha."""
    if v.weight.m != w.weight.m or v.weight.alpha != -w.weight.alpha:
        raise ValueError(f"cannot pair {v.weight} with {w.weight}")
    form = glmod.invariant_form(v.weight.m)
    out = _ZERO
    m = v.weight.m
    for i, g in enumerate(v.coeffs):
        h = w.coeffs[m - i]
        if g and h:
            out = out + g * h * form[i][m - i]
    return out


def dual_basis(weight: GLWeight, i: int) -> TMElement:
    """The element of A_(z) (x) U_m^-alpha pairing to 1 with v_i and 0 with other v_j."""
    m = weight.m
    c = glmod.invariant_form(m)[i][m - i]
    return TMElement(glmod.dual_weight(weight), [Fraction(1) / c if j == m - i else 0 for j in range(m + 1)])


# ---------------------------------------------------------------------------
# tensor products over A


class TMTensorElement:
    """sum_ij coeffs[i][j] (x) v_i (x) v_j in A_(z) (x) (U_m^alpha (x) U_n^beta)."""

    __slots__ = ("left", "right", "coeffs")

    def __init__(self, left: GLWeight, right: GLWeight, coeffs):
        rows = tuple(tuple(_coerce(g) for g in row) for row in coeffs)
        if len(rows) != left.dim or any(len(r) != right.dim for r in rows):
            raise ValueError("coefficient shape does not match the weights")
        self.left, self.right, self.coeffs = left, right, rows

    def flat(self) -> list[LocalizedFun]:
        return [g for row in self.coeffs for g in row]

    @classmethod
    def from_flat(cls, left: GLWeight, right: GLWeight, flat: Sequence) -> "TMTensorElement":
        n = right.dim
        return cls(left, right, [flat[i * n:(i + 1) * n] for i in range(left.dim)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TMTensorElement)
            and (self.left, self.right) == (other.left, other.right)
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.left, self.right, self.coeffs))

    def __add__(self, other: "TMTensorElement") -> "TMTensorElement":
        return TMTensorElement.from_flat(self.left, self.right, [a + b for a, b in zip(self.flat(), other.flat())])

    def __bool__(self) -> bool:
        return any(self.flat())


def tensor(v: TMElement, w: TMElement) -> TMTensorElement:
    return TMTensorElement(v.weight, w.weight, [[g * h for h in w.coeffs] for g in v.coeffs])


def tensor_a_mult(a, t: TMTensorElement) -> TMTensorElement:
    a = _coerce(a)
    return TMTensorElement.from_flat(t.left, t.right, [a * g for g in t.flat()])


def vf_act_tensor(eta: VField, t: TMTensorElement) -> TMTensorElement:
    out = _act(eta, t.flat(), lambda p, q: glmod.tensor_action(p, q, t.left, t.right))
    return TMTensorElement.from_flat(t.left, t.right, out)


def _coefficientwise(t: TMTensorElement, rows) -> list[LocalizedFun]:
    flat = t.flat()
    out = []
    for row in rows:
        acc = _ZERO
        for c, g in zip(row, flat):
            if c and g:
                acc = acc + g * c
        out.append(acc)
    return out


def project(k: int, t: TMTensorElement) -> TMElement:
    """pi_k: the component in A_(z) (x) U_(m+n-2k)^(alpha+beta)."""
    glmod._check_k(k, t.left.m, t.right.m)
    rows = glmod.cg_data(t.left.m, t.right.m).project[k]
    return TMElement(glmod.product_weight(t.left, t.right, k), _coefficientwise(t, rows))


def embed(k: int, v: TMElement, left: GLWeight, right: GLWeight) -> TMTensorElement:
    glmod._check_k(k, left.m, right.m)
    if v.weight != glmod.product_weight(left, right, k):
        raise ValueError(f"{v.weight} is not summand {k} of {left} (x) {right}")
    images = glmod.cg_data(left.m, right.m).embed[k]
    size = left.dim * right.dim
    flat = [_ZERO] * size
    for j, g in enumerate(v.coeffs):
        if g:
            for idx, c in enumerate(images[j]):
                if c:
                    flat[idx] = flat[idx] + g * c
    return TMTensorElement.from_flat(left, right, flat)


def phi(t: TMTensorElement) -> TMElement:
    """Multiplication U_m (x) U_n -> U_(m+n) applied coefficientwise."""
    m, n = t.left.m, t.right.m
    w = glmod.product_weight(t.left, t.right)
    out = [_ZERO] * w.dim
    for i, row in enumerate(t.coeffs):
        for j, g in enumerate(row):
            if g:
                out[i + j] = out[i + j] + g * glmod.phi_coefficient(m, i, n, j)
    return TMElement(w, out)
