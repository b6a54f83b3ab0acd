"""Polynomial vector fields on the sphere.

A field is stored as its ambient triple (f1, f2, f3), meaning
f1 d/dx + f2 d/dy + f3 d/dz, subject to x f1 + y f2 + z f3 = 0.  Unlike
combinations of the rotation fields D23, D31, D12 this representation is
unique.
"""

from __future__ import annotations

from typing import Sequence

from .expr import parse_field_terms
from .ring import (
    CHART_PARAMS,
    VAR_INDEX,
    VARS,
    LocalizedFun,
    SphereFun,
    partial,
)

_X, _Y, _Z = (SphereFun.var(v) for v in VARS)
_COORDS = (_X, _Y, _Z)


class NotTangent(ValueError):
    """The triple violates x f1 + y f2 + z f3 = 0."""


def _as_sphere(f) -> SphereFun:
    if isinstance(f, SphereFun):
        return f
    if isinstance(f, LocalizedFun):
        return f.as_sphere()
    return SphereFun.const(f)


class VField:
    __slots__ = ("comps",)

    def __init__(self, f1, f2, f3):
        comps = (_as_sphere(f1), _as_sphere(f2), _as_sphere(f3))
        if _X * comps[0] + _Y * comps[1] + _Z * comps[2]:
            raise NotTangent(f"({', '.join(map(str, comps))}) is not tangent to the sphere")
        self.comps = comps

    def __eq__(self, other) -> bool:
        return isinstance(other, VField) and self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def __bool__(self) -> bool:
        return any(self.comps)

    def __add__(self, other: "VField") -> "VField":
        return VField(*(a + b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "VField":
        return VField(*(-a for a in self.comps))

    def __sub__(self, other: "VField") -> "VField":
        return self + (-other)

    def __rmul__(self, a) -> "VField":
        """A-module structure: a * eta."""
        a = _as_sphere(a)
        return VField(*(a * c for c in self.comps))

    def __call__(self, f):
        return apply(self, f)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.comps) + ")"

    def __repr__(self) -> str:
        return f"VField{self}"


ZERO_FIELD = VField(0, 0, 0)


def delta(i: int, j: int) -> VField:
    """D_ij = x_j d/dx_i - x_i d/dx_j."""
    if i == j or not ({i, j} <= {1, 2, 3}):
        raise ValueError(f"delta({i}, {j}) needs two distinct indices in 1..3")
    comps = [SphereFun(), SphereFun(), SphereFun()]
    comps[i - 1] = _COORDS[j - 1]
    comps[j - 1] = -_COORDS[i - 1]
    return VField(*comps)


D12, D23, D31 = delta(1, 2), delta(2, 3), delta(3, 1)
GENERATORS = {"D12": D12, "D23": D23, "D31": D31}


def from_deltas(a, b, c) -> VField:
    """a*D23 + b*D31 + c*D12."""
    a, b, c = _as_sphere(a), _as_sphere(b), _as_sphere(c)
    return a * D23 + b * D31 + c * D12


def to_deltas(eta: VField) -> tuple[SphereFun, SphereFun, SphereFun]:
    """Coefficients (a, b, c) of D23, D31, D12 with c free of z.

    (a, b, c) = f x r works because the field is r x w for w = (a, b, c)
    and |r| = 1; adding lambda*r to w does not change the field, which is
    used to clear the z-part of c.
    """
    f1, f2, f3 = eta.comps
    a = f2 * _Z - f3 * _Y
    b = f3 * _X - f1 * _Z
    c = f1 * _Y - f2 * _X
    lam = SphereFun(c.q)
    return a - lam * _X, b - lam * _Y, c - lam * _Z


def apply(eta: VField, f):
    """eta(f) for f in A (ambient derivative of the canonical lift) or in A_(z)."""
    if isinstance(f, LocalizedFun):
        if any(f.denom[:2]):
            raise ValueError("apply() on localized functions supports z-denominators only")
        if f.denom[2]:
            return chart_apply(to_chart(eta, "z"), f, "z")
        f = f.num
    f = _as_sphere(f)
    out = SphereFun()
    for comp, var in zip(eta.comps, VARS):
        if comp:
            d = f.ambient_partial(var)
            if d:
                out = out + comp * d
    return out


def bracket(eta: VField, mu: VField) -> VField:
    return VField(*(apply(eta, m) - apply(mu, e) for e, m in zip(eta.comps, mu.comps)))


def to_chart(eta: VField, chart: str = "z") -> tuple[LocalizedFun, LocalizedFun]:
    """Coefficients of eta on d/dt1, d/dt2 for the chart parameters (t1, t2).

    A derivation of A_(h) is determined by its values on the parameters, so
    the coefficients are just eta(t1), eta(t2).
    """
    t1, t2 = CHART_PARAMS[chart]
    return (
        LocalizedFun.lift(eta.comps[VAR_INDEX[t1]]),
        LocalizedFun.lift(eta.comps[VAR_INDEX[t2]]),
    )


def chart_apply(coeffs: Sequence[LocalizedFun], f, chart: str = "z") -> LocalizedFun:
    """(g1 d/dt1 + g2 d/dt2)(f) with chart partials."""
    t1, t2 = CHART_PARAMS[chart]
    out = LocalizedFun.lift(0)
    for g, t in zip(coeffs, (t1, t2)):
        if g:
            out = out + g * partial(f, t, chart)
    return out


def form_to_chart(form: Sequence, chart: str = "z") -> tuple[LocalizedFun, LocalizedFun]:
    """Chart coefficients of the 1-form f1 dx + f2 dy + f3 dz on dt1, dt2."""
    t1, t2 = CHART_PARAMS[chart]
    out = []
    for t in (t1, t2):
        acc = LocalizedFun.lift(0)
        for coeff, var in zip(form, VARS):
            coeff = LocalizedFun.lift(coeff)
            if coeff:
                acc = acc + coeff * partial(LocalizedFun.var(var), t, chart)
        out.append(acc)
    return out[0], out[1]


def parse_field(text: str) -> VField:
    terms = parse_field_terms(text)
    get = lambda k: terms.get(k, LocalizedFun.lift(0)).as_sphere()  # noqa: E731
    return from_deltas(get("23"), get("31"), get("12"))


def format_field(eta: VField) -> str:
    a, b, c = to_deltas(eta)
    parts = []
    for coeff, name in ((a, "D23"), (b, "D31"), (c, "D12")):
        if coeff:
            s = str(coeff)
            parts.append(f"{name}" if s == "1" else f"({s})*{name}")
    return " + ".join(parts) if parts else "0"
