"""Chart changes between N(x), N(y), N(z) and their action on U_m^alpha.

For charts with parameters t (source) and s (target) the transition matrix
is M[i][j] = dt_i/ds_j, computed with the target chart's partials, so that
dt_i = sum_j M[i][j] ds_j.  On U_m^alpha it acts through
det(M)^((alpha-m)/2) times the m-th symmetric power, in the row convention
v_i -> sum_j R[i][j] v_j, which makes M -> R multiplicative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .avmod import NonIntegralExponent, OMEGA_WEIGHT, VECT_WEIGHT
from .glmod import GLWeight, phi_coefficient
from .ring import CHART_PARAMS, VAR_INDEX, LocalizedFun, partial
from .vectorfields import D12, D23, D31, VField, form_to_chart

_ZERO = LocalizedFun.lift(0)
_ONE = LocalizedFun.lift(1)

Coeffs = tuple[LocalizedFun, ...]
Matrix = tuple[tuple[LocalizedFun, ...], ...]


@dataclass(frozen=True)
class Chart:
    h: str

    def __post_init__(self):
        if self.h not in CHART_PARAMS:
            raise ValueError(f"unknown chart N({self.h}); use x, y or z")

    @property
    def params(self) -> tuple[str, str]:
        return CHART_PARAMS[self.h]

    def __str__(self) -> str:
        return f"N({self.h})"


CHARTS = {h: Chart(h) for h in "xyz"}
CHART_PAIRS = (("z", "x"), ("x", "y"), ("z", "y"))


def _chart(c) -> Chart:
    return c if isinstance(c, Chart) else CHARTS[c]


@dataclass(frozen=True)
class TransitionMatrix:
    source: Chart
    target: Chart
    entries: Matrix
    det: LocalizedFun


def _det(m: Matrix) -> LocalizedFun:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mat2(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2))


def transition_matrix(source, target) -> TransitionMatrix:
    source, target = _chart(source), _chart(target)
    if source == target:
        entries = ((_ONE, _ZERO), (_ZERO, _ONE))
    else:
        entries = tuple(
            tuple(partial(LocalizedFun.var(t), s, target.h) for s in target.params) for t in source.params
        )
    return TransitionMatrix(source, target, entries, _det(entries))


def compose(a: TransitionMatrix, b: TransitionMatrix) -> TransitionMatrix:
    """Chain rule: (source of a) -> (target of b) through the shared chart."""
    if a.target != b.source:
        raise ValueError(f"cannot compose {a.source}->{a.target} with {b.source}->{b.target}")
    entries = _mat2(a.entries, b.entries)
    return TransitionMatrix(a.source, b.target, entries, _det(entries))


def twist_exponent(w: GLWeight) -> int:
    e = (w.alpha - w.m) / 2
    if e.denominator != 1:
        raise NonIntegralExponent(f"(alpha - m)/2 = {e} is not an integer for {w}")
    return int(e)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, u in p.items():
        for b, v in q.items():
            out[a + b] = out.get(a + b, _ZERO) + u * v
    return out


def rho_matrix(w: GLWeight, C: TransitionMatrix) -> Matrix:
    """R[i][j]: coefficient of v_j in rho(C) v_i, with v_i = C(m, i) X^(m-i) Y^i."""
    m = w.m
    twist = C.det ** twist_exponent(w)
    # images of X and Y as polynomials {power of Y: coeff}
    gx = {0: C.entries[0][0], 1: C.entries[0][1]}
    gy = {0: C.entries[1][0], 1: C.entries[1][1]}
    rows = []
    for i in range(m + 1):
        poly = {0: LocalizedFun.lift(comb(m, i))}
        for _ in range(m - i):
            poly = _poly_mul(poly, gx)
        for _ in range(i):
            poly = _poly_mul(poly, gy)
        rows.append(tuple(twist * poly.get(j, _ZERO) / comb(m, j) for j in range(m + 1)))
    return tuple(rows)


def rho_apply(w: GLWeight, C: TransitionMatrix, coeffs: Sequence) -> Coeffs:
    """rho(C) on sum_i coeffs[i] (x) v_i."""
    coeffs = [LocalizedFun.lift(g) for g in coeffs]
    if len(coeffs) != w.dim:
        raise ValueError(f"U_{w.m} needs {w.dim} coefficients, got {len(coeffs)}")
    R = rho_matrix(w, C)
    out = []
    for j in range(w.dim):
        acc = _ZERO
        for i, g in enumerate(coeffs):
            if g and R[i][j]:
                acc = acc + g * R[i][j]
        out.append(acc)
    return tuple(out)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), _ZERO) for j in range(n)) for i in range(n)
    )


def cocycle_check(w: GLWeight) -> bool:
    """rho(C_{z->x}) rho(C_{x->y}) == rho(C_{z->y}), and the same for the raw matrices."""
    zx, xy, zy = (transition_matrix(a, b) for a, b in (("z", "x"), ("x", "y"), ("z", "y")))
    if compose(zx, xy).entries != zy.entries:
        return False
    return _mat_mul(rho_matrix(w, zx), rho_matrix(w, xy)) == rho_matrix(w, zy)


# ---------------------------------------------------------------------------
# chart images of module elements, computed from geometry rather than from rho


@dataclass(frozen=True)
class ModuleSpec:
    """A tensor module and the generators used to test it.

    kind: "A" (rank one, alpha even), "Omega", "Vect" or "w" (w_m generator).
    """

    kind: str
    weight: GLWeight

    def __str__(self) -> str:
        if self.kind == "A":
            return f"A^{self.weight.alpha}"
        if self.kind == "w":
            return f"w:{self.weight.m},{self.weight.alpha}"
        return self.kind


def parse_module_spec(text: str) -> ModuleSpec:
    t = text.strip()
    if t == "Omega":
        return ModuleSpec("Omega", OMEGA_WEIGHT)
    if t in ("Vect", "V"):
        return ModuleSpec("Vect", VECT_WEIGHT)
    if t.startswith("A^"):
        try:
            alpha = Fraction(t[2:])
        except ValueError:
            raise ValueError(f"cannot read the weight in {text!r}") from None
        if (alpha / 2).denominator != 1:
            raise NonIntegralExponent(f"A^{alpha} needs an even weight for a chart image")
        return ModuleSpec("A", GLWeight(0, alpha))
    if t.startswith("w:"):
        try:
            m, a = t[2:].split(",")
            w = GLWeight(int(m), Fraction(a))
        except ValueError:
            raise ValueError(f"expected w:m,alpha, got {text!r}") from None
        twist_exponent(w)
        return ModuleSpec("w", w)
    raise ValueError(f"unsupported module {text!r}; use A^k, Omega, Vect or w:m,a")


def _h_power(chart: Chart, k) -> LocalizedFun:
    exps = [0, 0, 0]
    exps[VAR_INDEX[chart.h]] = int(k)
    return LocalizedFun.monomial(*exps)


def form_image(form: Sequence, chart) -> Coeffs:
    """1-form f1 dx + f2 dy + f3 dz on the chart basis dt1, dt2 (v_0, v_1 of U_1^1)."""
    return tuple(form_to_chart(form, _chart(chart).h))


def field_image(eta: VField, chart) -> Coeffs:
    """Contraction of the field with dt1 ^ dt2, on dt1, dt2 (v_0, v_1 of U_1^-1)."""
    t1, t2 = _chart(chart).params
    return (-LocalizedFun.lift(eta.comps[VAR_INDEX[t2]]), LocalizedFun.lift(eta.comps[VAR_INDEX[t1]]))


def volume_image(alpha, chart) -> Coeffs:
    """sigma^(alpha/2), sigma = dt1 ^ dt2 / h the invariant area form, on (dt1 ^ dt2)^(alpha/2)."""
    half = Fraction(alpha) / 2
    if half.denominator != 1:
        raise NonIntegralExponent(f"alpha = {alpha} must be even")
    return (_h_power(_chart(chart), -half),)


MINUS_DZ = (0, 0, -1)


def w_image(w: GLWeight, chart) -> Coeffs:
    """(-dz)^m times sigma^((alpha-m)/2), multiplied out into U_m^alpha."""
    chart = _chart(chart)
    base = form_image(MINUS_DZ, chart)
    coeffs: list[LocalizedFun] = [_ONE]
    for n in range(w.m):
        nxt = [_ZERO] * (n + 2)
        for i, g in enumerate(coeffs):
            for j, h in enumerate(base):
                if g and h:
                    nxt[i + j] = nxt[i + j] + g * h * phi_coefficient(n, i, 1, j)
        coeffs = nxt
    twist = volume_image(w.alpha - w.m, chart)[0]
    return tuple(twist * g for g in coeffs)


def sample_elements(spec: ModuleSpec) -> list:
    """Module elements used by :func:`check_diagram` (generator first)."""
    from .ring import SphereFun

    x, y, z = (SphereFun.var(v) for v in "xyz")
    if spec.kind == "Omega":
        return [(0, 0, 1), (y, -x, 0), (x * z, 0, y)]
    if spec.kind == "Vect":
        return [D12, D23, D31, x * D23 + z * D12]
    return [SphereFun.const(1), x, y * z]


def chart_image(spec: ModuleSpec, element, chart) -> Coeffs:
    if spec.kind == "Omega":
        return form_image(element, chart)
    if spec.kind == "Vect":
        return field_image(element, chart)
    f = LocalizedFun.lift(element)
    base = volume_image(spec.weight.alpha, chart) if spec.kind == "A" else w_image(spec.weight, chart)
    return tuple(f * g for g in base)


def check_diagram(spec: ModuleSpec, pair, elements: Sequence | None = None) -> bool:
    """rho(C) carries each element's image in the first chart to its image in the second."""
    src, tgt = (_chart(c) for c in pair)
    C = transition_matrix(src, tgt)
    for el in elements if elements is not None else sample_elements(spec):
        if rho_apply(spec.weight, C, chart_image(spec, el, src)) != chart_image(spec, el, tgt):
            return False
    return True


def check_images(w: GLWeight, image_src: Sequence, image_tgt: Sequence, pair) -> bool:
    """The diagram for explicitly given images of one element in two charts."""
    if len(image_src) != w.dim or len(image_tgt) != w.dim:
        raise ValueError(f"images do not match the weight {w}")
    C = transition_matrix(*pair)
    return rho_apply(w, C, image_src) == tuple(LocalizedFun.lift(g) for g in image_tgt)
