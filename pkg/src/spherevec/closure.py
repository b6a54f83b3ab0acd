"""Submodule closures inside a finite window of A_(z) (x) U.

Coordinates: eliminating x^2 = 1 - y^2 - z^2, the elements
z^k x^e y^b (x) v_i (k in Z, e in {0, 1}, b >= 0) form a basis of
A_(z) (x) U_m^alpha, and the z-degree of an element is the least k present.
``Window(K, D)`` is the span of those with k >= -K and k + e + b <= D.

Given generators, :func:`close` computes the least subspace S of the window
that contains them and satisfies T(S) ∩ W ⊆ S for the six operators
(multiplication by x, y, z and the fields D12, D23, D31).  This is
contained in (submodule generated) ∩ W, grows with the window, and does not
depend on generator order.
"""

from __future__ import annotations

import heapq
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .avmod import TMElement, a_mult, vf_act
from .config import DEFAULT_CERTIFY, CertifyConfig
from .glmod import GLWeight
from .linalg import Echelon
from .ring import LocalizedFun, from_z_coordinates, z_coordinates
from .vectorfields import GENERATORS

Key = tuple[int, int, int, int]  # (k, e, b, i)

OPERATORS = ("x", "y", "z", "D12", "D23", "D31")
DEFAULT_CAP = DEFAULT_CERTIFY.cap


class EmptyGenerators(ValueError):
    pass


class WindowOverflow(RuntimeError):
    pass


class WindowError(ValueError):
    """An element or degree lies outside the window."""


class Inconclusive(RuntimeError):
    pass


@dataclass(frozen=True)
class Window:
    K: int
    D: int

    def __post_init__(self):
        if self.D < 0:
            raise ValueError(f"window needs D >= 0, got {self.D}")

    def contains(self, key: Sequence[int]) -> bool:
        k, e, b = key[:3]
        return k >= -self.K and k + e + b <= self.D

    def enlarged(self, step: int) -> "Window":
        return Window(self.K + step, self.D + step)

    def keys(self, weight: GLWeight) -> list[Key]:
        """In-window basis keys in pivot order: z-degree, then graded-lex in (x, y), then i."""
        out = []
        for k in range(-self.K, self.D + 1):
            for d in range(self.D - k + 1):
                for e in (1, 0):
                    b = d - e
                    if b >= 0:
                        for i in range(weight.dim):
                            out.append((k, e, b, i))
        return out

    def dimension(self, weight: GLWeight) -> int:
        return (self.D + self.K + 1) ** 2 * weight.dim

    def to_json(self) -> dict:
        return {"K": self.K, "D": self.D}


def element_coordinates(v: TMElement) -> dict[Key, Fraction]:
    out = {}
    for i, g in enumerate(v.coeffs):
        if g:
            for (k, e, b), c in z_coordinates(g).items():
                out[(k, e, b, i)] = c
    return out


def element_from_coordinates(weight: GLWeight, coords: dict[Key, Fraction]) -> TMElement:
    parts: list[dict] = [{} for _ in range(weight.dim)]
    for (k, e, b, i), c in coords.items():
        parts[i][(k, e, b)] = c
    return TMElement(weight, [from_z_coordinates(p) for p in parts])


@lru_cache(maxsize=None)
def operator_image(op: str, weight: GLWeight, key: Key) -> tuple[tuple[Key, Fraction], ...]:
    """Image of the basis element ``key`` under one of the six operators."""
    k, e, b, i = key
    if op == "z":
        return (((k + 1, e, b, i), Fraction(1)),)
    if op == "y":
        return (((k, e, b + 1, i), Fraction(1)),)
    if op == "x":
        if e == 0:
            return (((k, 1, b, i), Fraction(1)),)
        return (((k, 0, b, i), Fraction(1)), ((k, 0, b + 2, i), Fraction(-1)), ((k + 2, 0, b, i), Fraction(-1)))
    basis = TMElement.basis(weight, i, LocalizedFun.monomial(e, b, k))
    image = vf_act(GENERATORS[op], basis)
    return tuple(element_coordinates(image).items())


class _Columns:
    """Integer column indices: in-window keys in pivot order, others negative."""

    def __init__(self, window: Window, weight: GLWeight):
        self.keys = window.keys(weight)
        self.index = {key: n for n, key in enumerate(self.keys)}
        self.outside: dict[Key, int] = {}

    def col(self, key: Key) -> int:
        n = self.index.get(key)
        if n is None:
            n = self.outside.get(key)
            if n is None:
                n = -1 - len(self.outside)
                self.outside[key] = n
        return n

    def key(self, col: int) -> Key:
        return self.keys[col]

    def row(self, coords: dict[Key, Fraction]) -> dict[int, Fraction]:
        return {self.col(k): c for k, c in coords.items()}


@dataclass
class SubspaceBasis:
    """Reduced echelon basis of a subspace of a window; rows keyed by pivot column."""

    window: Window
    weight: GLWeight
    rows: dict[int, dict[int, Fraction]]
    _columns: _Columns = field(repr=False)
    _echelon: Echelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[Key]:
        return [self._columns.key(p) for p in sorted(self.rows)]

    def vectors(self) -> list[TMElement]:
        keys = self._columns.keys
        return [
            element_from_coordinates(self.weight, {keys[c]: v for c, v in self.rows[p].items()})
            for p in sorted(self.rows)
        ]

    def coordinates(self, v: TMElement) -> dict[int, Fraction]:
        if v.weight != self.weight:
            raise ValueError(f"weight mismatch: {v.weight} vs {self.weight}")
        coords = element_coordinates(v)
        outside = [k for k in coords if not self.window.contains(k)]
        if outside:
            raise WindowError(f"{v} has terms outside window {self.window}, e.g. key {outside[0]}")
        return {self._columns.index[k]: c for k, c in coords.items()}


@dataclass
class ClosureStats:
    ops_applied: int = 0
    clipped: int = 0


def _check_generators(gens: Sequence[TMElement], window: Window) -> GLWeight:
    gens = list(gens)
    if not gens:
        raise EmptyGenerators("closure needs at least one generator")
    weight = gens[0].weight
    for g in gens:
        if g.weight != weight:
            raise ValueError(f"generators have different weights: {weight} vs {g.weight}")
        for key in element_coordinates(g):
            if not window.contains(key):
                raise WindowError(f"generator {g} leaves window {window} at key {key}")
    return weight


def _apply(op: str, weight: GLWeight, cols: _Columns, row: dict[int, Fraction]) -> dict[Key, Fraction]:
    out: dict[Key, Fraction] = {}
    keys = cols.keys
    for c, v in row.items():
        for key, a in operator_image(op, weight, keys[c]):
            s = out.get(key, 0) + a * v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _push(queue: list, row: dict[int, Fraction], tick=itertools.count()):
    heapq.heappush(queue, (-min(row), next(tick), row))


def close(
    gens: Sequence[TMElement],
    window: Window,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    stats: ClosureStats | None = None,
) -> SubspaceBasis:
    """Least subspace S of the window with gens ⊆ S and T(S) ∩ W ⊆ S."""
    weight = _check_generators(gens, window)
    stats = stats if stats is not None else ClosureStats()
    cols = _Columns(window, weight)
    span = Echelon()
    images = {op: Echelon() for op in OPERATORS}
    # pending vectors, highest pivot first: building the span from the deep
    # end keeps intermediate reduced forms small
    queue: list = []
    for g in gens:
        if g:
            _push(queue, cols.row(element_coordinates(g)))
    pool = ThreadPoolExecutor(jobs) if jobs > 1 else None
    try:
        while queue:
            row = span.insert(heapq.heappop(queue)[2])
            if row is None:
                continue
            if len(span) > cap:
                raise WindowOverflow(f"closure dimension exceeded the cap of {cap}")
            if pool is not None:
                results = list(pool.map(lambda op: _apply(op, weight, cols, row), OPERATORS))
            else:
                results = [_apply(op, weight, cols, row) for op in OPERATORS]
            for op, coords in zip(OPERATORS, results):
                stats.ops_applied += 1
                if not coords:
                    continue
                if any(not window.contains(k) for k in coords):
                    stats.clipped += 1
                new = images[op].insert(cols.row(coords))
                # an image-span row led by an in-window column lies in T(S) ∩ W
                if new is not None and min(new) >= 0:
                    _push(queue, dict(new))
    finally:
        if pool is not None:
            pool.shutdown()
    return SubspaceBasis(window, weight, span.reduced(), cols, span)


def min_degree(b: SubspaceBasis) -> int:
    if not b.rows:
        raise ValueError("min_degree of the zero subspace is undefined")
    return b._columns.key(min(b.rows))[0]


def density_witness(b: SubspaceBasis, N: int) -> bool:
    """True iff every z^k x^e y^b (x) v_i of the window with k >= N lies in the span."""
    if not -b.window.K <= N <= b.window.D:
        raise WindowError(f"N = {N} is outside window {b.window}")
    cols = [n for n, key in enumerate(b._columns.keys) if key[0] >= N]
    # all of those columns are pivots iff the unit vectors are in the span,
    # because every later column also has z-degree >= N
    return bool(cols) and all(c in b.rows for c in cols)


def least_density_witness(b: SubspaceBasis) -> int | None:
    for N in range(-b.window.K, b.window.D + 1):
        if density_witness(b, N):
            return N
    return None


def membership(v: TMElement, b: SubspaceBasis) -> bool:
    row = b.coordinates(v)
    return not row or b._echelon.contains(row)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ClosureReport:
    basis: SubspaceBasis
    min_degree: int
    status: str  # "Bounded", "DenseWitness" or "Inconclusive"
    status_value: int | None
    ops_applied: int
    clipped: int
    window: Window
    degree_trail: list[tuple[Window, int]]
    density_N: int | None
    elapsed: float

    @property
    def label(self) -> str:
        return self.status if self.status_value is None else f"{self.status}({self.status_value})"

    def to_json(self) -> dict:
        return {
            "status": self.label,
            "min_degree": self.min_degree,
            "dimension": self.basis.dimension,
            "window": self.window.to_json(),
            "ops_applied": self.ops_applied,
            "clipped": self.clipped,
            "density_N": self.density_N,
            "degree_trail": [{"window": w.to_json(), "min_degree": d} for w, d in self.degree_trail],
            "elapsed_s": round(self.elapsed, 3),
        }


def generate(
    gens: Sequence[TMElement],
    window: Window,
    *,
    config: CertifyConfig = DEFAULT_CERTIFY,
    jobs: int = 1,
    certify: bool = True,
) -> ClosureReport:
    """Close the generators and classify the result.

    Bounded(d) when the least degree d is unchanged over ``config.enlargements``
    enlargements by ``config.step`` in both K and D; otherwise
    DenseWitness(N) for the least N with a density witness in the original
    window; otherwise Inconclusive.
    """
    start = time.perf_counter()
    stats = ClosureStats()
    basis = close(gens, window, cap=config.cap, jobs=jobs, stats=stats)
    if not basis.rows:
        raise EmptyGenerators("all generators are zero")
    d = min_degree(basis)
    trail = [(window, d)]
    if certify:
        for n in range(1, config.enlargements + 1):
            w = window.enlarged(config.step * n)
            trail.append((w, min_degree(close(gens, w, cap=config.cap, jobs=jobs, stats=stats))))
    density = least_density_witness(basis)
    if certify and all(deg == d for _, deg in trail):
        status, value = "Bounded", d
    elif density is not None:
        status, value = "DenseWitness", density
    else:
        status, value = "Inconclusive", None
    return ClosureReport(
        basis, d, status, value, stats.ops_applied, stats.clipped, window, trail, density,
        time.perf_counter() - start,
    )


def degree_sequence(gens: Sequence[TMElement], windows: Iterable[Window], **kw) -> list[int]:
    return [min_degree(close(gens, w, **kw)) for w in windows]


def uniqueness_probe(
    gens_a: Sequence[TMElement],
    gens_b: Sequence[TMElement],
    window_a: Window,
    window_b: Window | None = None,
) -> bool:
    """Compare two closures below the shallowest density witness.

    With N the least depth at which one of the closures contains all of
    z^N A (x) U in the window, returns whether both closures meet
    z^N A (x) U in the same subspace.
    """
    wa = gens_a[0].weight if gens_a else None
    wb = gens_b[0].weight if gens_b else None
    if wa is None or wb is None:
        raise EmptyGenerators("uniqueness_probe needs generators on both sides")
    if wa != wb:
        raise ValueError(f"weight mismatch: {wa} vs {wb}")
    window_b = window_b or window_a
    common = Window(min(window_a.K, window_b.K), min(window_a.D, window_b.D))
    try:
        sa, sb = close(gens_a, common), close(gens_b, common)
    except WindowError as exc:
        raise Inconclusive(f"generators do not share the window {common}: {exc}") from exc
    depths = [n for n in (least_density_witness(sa), least_density_witness(sb)) if n is not None]
    if not depths:
        raise Inconclusive("neither closure has a density witness in the window")
    N = min(depths)
    return _deep_part(sa, N) == _deep_part(sb, N)


def _deep_part(b: SubspaceBasis, N: int) -> dict[int, dict[int, Fraction]]:
    """RREF rows spanning span(b) ∩ span{keys with k >= N}."""
    keys = b._columns.keys
    first = next((n for n, key in enumerate(keys) if key[0] >= N), len(keys))
    # columns are sorted by z-degree, so a reduced row lies in the deep part iff its pivot does
    return {p: r for p, r in b.rows.items() if p >= first}


# ---------------------------------------------------------------------------
# rank one


def rank_one_invariant(alpha, k: int, window: Window | None = None) -> bool:
    """Whether z^k A (x) v_0 is stable under the fields in A_(z) (x) U_0^alpha."""
    w = GLWeight(0, alpha)
    gen = TMElement.basis(w, 0, LocalizedFun.monomial(0, 0, k))
    window = window or Window(abs(k) + 2, max(abs(k) + 4, 6))
    return min_degree(close([gen], window)) == k


def resolve_rank1_sign(alpha) -> str:
    """The sign s for which z^(s alpha/2) A (x) v_0 is invariant."""
    alpha = Fraction(alpha)
    if alpha == 0 or (alpha / 2).denominator != 1:
        raise ValueError(f"sign resolution needs a nonzero even alpha, got {alpha}")
    found = [s for s, sign in (("+", 1), ("-", -1)) if rank_one_invariant(alpha, int(sign * alpha / 2))]
    if len(found) != 1:
        raise Inconclusive(f"invariant signs for alpha = {alpha}: {found}")
    return found[0]


def shifted(gens: Sequence[TMElement], power: int = 1) -> list[TMElement]:
    z = LocalizedFun.monomial(0, 0, power)
    return [a_mult(z, g) for g in gens]
