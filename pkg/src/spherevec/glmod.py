"""Finite-dimensional gl2-modules U_m^alpha.

Basis v_0..v_m with

    E11 v_i = (alpha + m - 2i)/2 v_i      E12 v_i = (m - i + 1) v_{i-1}
    E21 v_i = (i + 1) v_{i+1}             E22 v_i = (alpha - m + 2i)/2 v_i

so v_0 is the highest weight vector for h = E11 - E22.  Concretely
v_i = C(m, i) X^(m-i) Y^i inside Q[X, Y] with E_pq acting as the
derivation sending the q-th variable to the p-th, twisted by a power of
the determinant so that the identity acts by alpha.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import linalg

INDICES = ((1, 1), (1, 2), (2, 1), (2, 2))


@dataclass(frozen=True)
class GLWeight:
    m: int
    alpha: Fraction

    def __init__(self, m: int, alpha=0):
        if m < 0 or int(m) != m:
            raise ValueError(f"highest weight must be a nonnegative integer, got {m}")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "alpha", Fraction(alpha))

    @property
    def dim(self) -> int:
        return self.m + 1

    def __str__(self) -> str:
        return f"[{self.m},{self.alpha}]"


@lru_cache(maxsize=None)
def action(p: int, q: int, w: GLWeight) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    """Sparse action of E_pq: entry i lists (j, c) with E_pq v_i = sum c v_j."""
    m, alpha = w.m, w.alpha
    out = []
    for i in range(m + 1):
        if (p, q) == (1, 1):
            c = (alpha + m - 2 * i) / 2
            out.append(((i, c),) if c else ())
        elif (p, q) == (2, 2):
            c = (alpha - m + 2 * i) / 2
            out.append(((i, c),) if c else ())
        elif (p, q) == (1, 2):
            out.append(((i - 1, Fraction(m - i + 1)),) if i > 0 else ())
        elif (p, q) == (2, 1):
            out.append(((i + 1, Fraction(i + 1)),) if i < m else ())
        else:
            raise ValueError(f"E_{p}{q} is not a basis element of gl2")
    return tuple(out)


@lru_cache(maxsize=None)
def matrix(p: int, q: int, w: GLWeight) -> tuple[tuple[Fraction, ...], ...]:
    """Dense matrix of E_pq; column i holds the coordinates of E_pq v_i."""
    n = w.dim
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i, terms in enumerate(action(p, q, w)):
        for j, c in terms:
            mat[j][i] += c
    return tuple(tuple(r) for r in mat)


@dataclass(frozen=True)
class GLElement:
    weight: GLWeight
    coeffs: tuple[Fraction, ...]

    def __init__(self, weight: GLWeight, coeffs: Sequence):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != weight.dim:
            raise ValueError(f"U_{weight.m} needs {weight.dim} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis(cls, weight: GLWeight, i: int) -> "GLElement":
        return cls(weight, [int(j == i) for j in range(weight.dim)])

    def __add__(self, other: "GLElement") -> "GLElement":
        _same(self.weight, other.weight)
        return GLElement(self.weight, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GLElement") -> "GLElement":
        _same(self.weight, other.weight)
        return GLElement(self.weight, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rmul__(self, c) -> "GLElement":
        return GLElement(self.weight, [c * a for a in self.coeffs])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __str__(self) -> str:
        terms = [f"{c}*v{i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) if terms else "0") + f" {self.weight}"


def _same(a: GLWeight, b: GLWeight):
    if a != b:
        raise ValueError(f"weight mismatch: {a} vs {b}")


def act_E(p: int, q: int, u: GLElement) -> GLElement:
    out = [Fraction(0)] * u.weight.dim
    for i, terms in enumerate(action(p, q, u.weight)):
        if u.coeffs[i]:
            for j, c in terms:
                out[j] += c * u.coeffs[i]
    return GLElement(u.weight, out)


# ---------------------------------------------------------------------------
# tensor products


@dataclass(frozen=True)
class GLTensorElement:
    left: GLWeight
    right: GLWeight
    coeffs: tuple[tuple[Fraction, ...], ...]  # coeffs[i][j] on v_i (x) v_j

    def __init__(self, left: GLWeight, right: GLWeight, coeffs):
        rows = tuple(tuple(Fraction(c) for c in row) for row in coeffs)
        if len(rows) != left.dim or any(len(r) != right.dim for r in rows):
            raise ValueError("coefficient shape does not match the weights")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def pure(cls, u: GLElement, v: GLElement) -> "GLTensorElement":
        return cls(u.weight, v.weight, [[a * b for b in v.coeffs] for a in u.coeffs])

    @classmethod
    def from_flat(cls, left: GLWeight, right: GLWeight, flat: Sequence) -> "GLTensorElement":
        n = right.dim
        return cls(left, right, [flat[i * n:(i + 1) * n] for i in range(left.dim)])

    def flat(self) -> list[Fraction]:
        return [c for row in self.coeffs for c in row]

    def __add__(self, other: "GLTensorElement") -> "GLTensorElement":
        return GLTensorElement.from_flat(
            self.left, self.right, [a + b for a, b in zip(self.flat(), other.flat())]
        )

    def __bool__(self) -> bool:
        return any(any(r) for r in self.coeffs)


def tensor_action(p: int, q: int, left: GLWeight, right: GLWeight):
    """Sparse Leibniz action on the flat basis index i*(n+1) + j."""
    n = right.dim
    al, ar = action(p, q, left), action(p, q, right)
    out = []
    for i in range(left.dim):
        for j in range(right.dim):
            terms: dict[int, Fraction] = {}
            for i2, c in al[i]:
                terms[i2 * n + j] = terms.get(i2 * n + j, 0) + c
            for j2, c in ar[j]:
                terms[i * n + j2] = terms.get(i * n + j2, 0) + c
            out.append(tuple((k, v) for k, v in terms.items() if v))
    return tuple(out)


def act_E_tensor(p: int, q: int, t: GLTensorElement) -> GLTensorElement:
    flat = t.flat()
    out = [Fraction(0)] * len(flat)
    for src, terms in enumerate(tensor_action(p, q, t.left, t.right)):
        if flat[src]:
            for dst, c in terms:
                out[dst] += c * flat[src]
    return GLTensorElement.from_flat(t.left, t.right, out)


def product_weight(left: GLWeight, right: GLWeight, k: int = 0) -> GLWeight:
    return GLWeight(left.m + right.m - 2 * k, left.alpha + right.alpha)


def phi_coefficient(m: int, i: int, n: int, j: int) -> Fraction:
    """v_i^m * v_j^n = c * v_(i+j)^(m+n) in Q[X, Y]."""
    return Fraction(comb(m, i) * comb(n, j), comb(m + n, i + j))


def phi_multiply(t: GLTensorElement) -> GLElement:
    """The multiplication map U_m^a (x) U_n^b -> U_(m+n)^(a+b)."""
    w = product_weight(t.left, t.right)
    out = [Fraction(0)] * w.dim
    for i, row in enumerate(t.coeffs):
        for j, c in enumerate(row):
            if c:
                out[i + j] += c * phi_coefficient(t.left.m, i, t.right.m, j)
    return GLElement(w, out)


# ---------------------------------------------------------------------------
# Clebsch-Gordan decomposition


@dataclass(frozen=True)
class CGData:
    """Embeddings of the summands and the projections onto them.

    ``embed[k][j]`` is the flat vector of the image of v_j in summand k;
    ``project[k][j]`` is the row giving the v_j-coordinate of pi_k.
    """

    m: int
    n: int
    embed: tuple[tuple[tuple[Fraction, ...], ...], ...]
    project: tuple[tuple[tuple[Fraction, ...], ...], ...]


_cg_lock = threading.Lock()
_cg_cache: dict[tuple[int, int], CGData] = {}


def highest_weight_vector(m: int, n: int, k: int) -> list[Fraction]:
    """Kernel of E12 on span{v_i (x) v_(k-i)}, scaled to 1 on v_0 (x) v_k."""
    left, right = GLWeight(m), GLWeight(n)
    size = (m + 1) * (n + 1)
    span = [i * (n + 1) + (k - i) for i in range(k + 1) if i <= m and k - i <= n]
    e12 = tensor_action(1, 2, left, right)
    targets = sorted({dst for src in span for dst, _ in e12[src]})
    rows = [[Fraction(0)] * len(span) for _ in targets]
    for col, src in enumerate(span):
        for dst, c in e12[src]:
            rows[targets.index(dst)][col] += c
    kernel = linalg.nullspace(rows, len(span)) if rows else linalg.identity(len(span))
    if len(kernel) != 1:
        raise ArithmeticError(f"highest weight space of summand {k} has dimension {len(kernel)}")
    vec = kernel[0]
    lead = vec[span.index(k)]  # v_0 (x) v_k
    out = [Fraction(0)] * size
    for col, src in enumerate(span):
        out[src] = vec[col] / lead
    return out


def cg_data(m: int, n: int) -> CGData:
    key = (m, n)
    data = _cg_cache.get(key)
    if data is not None:
        return data
    with _cg_lock:
        data = _cg_cache.get(key)
        if data is None:
            data = _build_cg(m, n)
            _cg_cache[key] = data
    return data


def _build_cg(m: int, n: int) -> CGData:
    left, right = GLWeight(m), GLWeight(n)
    e21 = tensor_action(2, 1, left, right)
    size = (m + 1) * (n + 1)

    def lower(v):
        out = [Fraction(0)] * size
        for src, c in enumerate(v):
            if c:
                for dst, a in e21[src]:
                    out[dst] += a * c
        return out

    embed = []
    columns = []
    for k in range(min(m, n) + 1):
        vec = highest_weight_vector(m, n, k)
        images = []
        for j in range(m + n - 2 * k + 1):
            # E21^j hw / j! is the image of v_j, since E21 v_j = (j+1) v_(j+1)
            images.append(tuple(c / factorial(j) for c in vec))
            vec = lower(vec)
        if any(vec):
            raise ArithmeticError("lowering did not terminate on the summand")
        embed.append(tuple(images))
        columns.extend(images)
    if len(columns) != size:
        raise ArithmeticError("summand dimensions do not add up")
    basis = [[columns[c][r] for c in range(size)] for r in range(size)]
    inv = linalg.inverse(basis)
    project = []
    pos = 0
    for images in embed:
        project.append(tuple(tuple(inv[pos + j]) for j in range(len(images))))
        pos += len(images)
    return CGData(m, n, tuple(embed), tuple(project))


def _check_k(k: int, m: int, n: int):
    if not 0 <= k <= min(m, n):
        raise ValueError(f"summand index {k} out of range 0..{min(m, n)}")


def cg_project(k: int, t: GLTensorElement) -> GLElement:
    m, n = t.left.m, t.right.m
    _check_k(k, m, n)
    flat = t.flat()
    rows = cg_data(m, n).project[k]
    w = product_weight(t.left, t.right, k)
    return GLElement(w, [sum((r[i] * flat[i] for i in range(len(flat)) if flat[i]), Fraction(0)) for r in rows])


def cg_embed(k: int, u: GLElement, left: GLWeight, right: GLWeight) -> GLTensorElement:
    _check_k(k, left.m, right.m)
    if u.weight != product_weight(left, right, k):
        raise ValueError(f"{u.weight} is not summand {k} of {left} (x) {right}")
    images = cg_data(left.m, right.m).embed[k]
    flat = [Fraction(0)] * (left.dim * right.dim)
    for j, c in enumerate(u.coeffs):
        if c:
            for idx, a in enumerate(images[j]):
                flat[idx] += c * a
    return GLTensorElement.from_flat(left, right, flat)


def casimir_matrix(left: GLWeight, right: GLWeight) -> linalg.Matrix:
    """e f + f e + h^2/2 on the tensor product (e = E12, f = E21, h = E11 - E22)."""
    size = left.dim * right.dim

    def dense(p, q):
        mat = [[Fraction(0)] * size for _ in range(size)]
        for src, terms in enumerate(tensor_action(p, q, left, right)):
            for dst, c in terms:
                mat[dst][src] += c
        return mat

    e, f = dense(1, 2), dense(2, 1)
    e11, e22 = dense(1, 1), dense(2, 2)
    h = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(e11, e22)]
    ef, fe, hh = linalg.matmul(e, f), linalg.matmul(f, e), linalg.matmul(h, h)
    return [[ef[i][j] + fe[i][j] + hh[i][j] / 2 for j in range(size)] for i in range(size)]


def casimir_value(m: int) -> Fraction:
    return Fraction(m * m, 2) + m


def casimir_projector(k: int, left: GLWeight, right: GLWeight) -> linalg.Matrix:
    """Projection onto summand k as a polynomial in the Casimir (oracle for cg_project)."""
    m, n = left.m, right.m
    _check_k(k, m, n)
    cas = casimir_matrix(left, right)
    size = len(cas)
    proj = linalg.identity(size)
    target = casimir_value(m + n - 2 * k)
    for other in range(min(m, n) + 1):
        if other == k:
            continue
        val = casimir_value(m + n - 2 * other)
        shifted = [[cas[i][j] - (val if i == j else 0) for j in range(size)] for i in range(size)]
        proj = linalg.matmul(shifted, proj)
        proj = [[x / (target - val) for x in row] for row in proj]
    return proj


# ---------------------------------------------------------------------------
# duals


def dual_weight(w: GLWeight) -> GLWeight:
    return GLWeight(w.m, -w.alpha)


def dual_act(p: int, q: int, u: GLElement) -> GLElement:
    """Action on (U_m^alpha)^* in the dual basis: E acts by -E^T.

    ``u`` carries the weight of the module being dualized.
    """
    mat = matrix(p, q, u.weight)
    n = u.weight.dim
    return GLElement(u.weight, [-sum((mat[j][i] * u.coeffs[j] for j in range(n)), Fraction(0)) for i in range(n)])


def invariant_form(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """B(v_i, v_j) on U_m^alpha x U_m^(-alpha) with B(E u, v) + B(u, E v) = 0.

    Invariance forces B(v_i, v_(m-i)) = c (-1)^i C(m, i); c = (-1)^m makes
    B(v_1, v_0) = 1 for m = 1, the contraction of d/dx with dx.
    """
    return tuple(
        tuple(Fraction((-1) ** (m - i) * comb(m, i)) if i + j == m else Fraction(0) for j in range(m + 1))
        for i in range(m + 1)
    )
