"""Exact arithmetic in the coordinate ring of the sphere and its localizations.

A = Q[x, y, z] / (x^2 + y^2 + z^2 - 1).  Every element has a unique
representative p(x, y) + q(x, y) z, which is what :class:`SphereFun` stores.
:class:`LocalizedFun` adds denominators x^a y^b z^c.

Charts are named by the coordinate they invert: ``"z"`` is N(z) with chart
parameters (x, y); ``"x"`` is N(x) with (y, z); ``"y"`` is N(y) with (z, x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Union

VARS = ("x", "y", "z")
VAR_INDEX = {"x": 0, "y": 1, "z": 2}
CHART_PARAMS = {"z": ("x", "y"), "x": ("y", "z"), "y": ("z", "x")}

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """The element is not a multiple of the requested coordinate."""


class NotInvertible(ArithmeticError):
    pass


class OutsideChart(ZeroDivisionError):
    """A point where a denominator (or the chart function) vanishes."""


class LocalizationError(ValueError):
    """Result needs a coordinate inverted that the chart does not invert."""

    def __init__(self, message: str, required: frozenset[str]):
        super().__init__(message)
        self.required = required


class ValuationError(RuntimeError):
    pass


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------------------
# Q[x, y]


class PolyXY:
    """Sparse polynomial in x, y with rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[tuple[int, int], Fraction] = {}
        for mono, c in items:
            if c:
                t[mono] = t.get(mono, 0) + _frac(c)
        self._t = {k: v for k, v in t.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "PolyXY":
        # trusts that t has no zero coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "PolyXY":
        return cls._raw({(0, 0): _frac(c)} if c else {})

    def items(self):
        return self._t.items()

    def coeff(self, a: int, b: int) -> Fraction:
        return self._t.get((a, b), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyXY):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == PolyXY.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._t), default=-1)

    def __add__(self, other: "PolyXY") -> "PolyXY":
        t = dict(self._t)
        for k, v in other._t.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return PolyXY._raw(t)

    def __neg__(self) -> "PolyXY":
        return PolyXY._raw({k: -v for k, v in self._t.items()})

    def __sub__(self, other: "PolyXY") -> "PolyXY":
        return self + (-other)

    def scale(self, c: Scalar) -> "PolyXY":
        if not c:
            return PolyXY._raw({})
        return PolyXY._raw({k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        t: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return PolyXY._raw({k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def shift(self, a: int, b: int) -> "PolyXY":
        """Multiply by x^a y^b."""
        return PolyXY._raw({(i + a, j + b): c for (i, j), c in self._t.items()})

    def divide_monomial(self, a: int, b: int) -> "PolyXY | None":
        """Exact quotient by x^a y^b, or None when some term is not divisible."""
        t = {}
        for (i, j), c in self._t.items():
            if i < a or j < b:
                return None
            t[(i - a, j - b)] = c
        return PolyXY._raw(t)

    def divmod_sphere(self) -> tuple["PolyXY", "PolyXY"]:
        """Divide by u = 1 - x^2 - y^2 in graded-lex order.

        The leading term of u is -x^2, so a remainder has x-degree < 2
        in every term.  {u} is a Groebner basis of (u), hence u divides
        self iff the remainder is zero.
        """
        rem = dict(self._t)
        quo: dict[tuple[int, int], Fraction] = {}
        # process terms with x-degree >= 2 from the top down
        while True:
            lead = None
            for (i, j) in rem:
                if i >= 2 and (lead is None or (i + j, i) > (lead[0] + lead[1], lead[0])):
                    lead = (i, j)
            if lead is None:
                break
            c = rem[lead]
            i, j = lead
            t = -c  # c x^i y^j / (-x^2)
            k = (i - 2, j)
            quo[k] = quo.get(k, 0) + t
            # rem -= t * (1 - x^2 - y^2) * x^(i-2) y^j
            for (di, dj), uc in ((0, 0), 1), ((2, 0), -1), ((0, 2), -1):
                m = (i - 2 + di, j + dj)
                v = rem.get(m, 0) - t * uc
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return PolyXY._raw({k: v for k, v in quo.items() if v}), PolyXY._raw(rem)

    def partial(self, var: int) -> "PolyXY":
        t = {}
        for (a, b), c in self._t.items():
            if var == 0 and a:
                t[(a - 1, b)] = c * a
            elif var == 1 and b:
                t[(a, b - 1)] = c * b
        return PolyXY._raw(t)

    def evaluate(self, px: Fraction, py: Fraction) -> Fraction:
        return sum((c * px**a * py**b for (a, b), c in self._t.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"PolyXY({format_terms({(a, b, 0): c for (a, b), c in self._t.items()})!r})"


SPHERE_U = PolyXY({(0, 0): 1, (2, 0): -1, (0, 2): -1})


@lru_cache(maxsize=None)
def _u_power(n: int) -> PolyXY:
    if n == 0:
        return PolyXY.const(1)
    return _u_power(n - 1) * SPHERE_U


# ---------------------------------------------------------------------------
# A


class SphereFun:
    """Element p + q*z of A in canonical form (z-degree at most 1)."""

    __slots__ = ("p", "q", "_hash")

    def __init__(self, p: PolyXY | None = None, q: PolyXY | None = None):
        self.p = p if p is not None else PolyXY._raw({})
        self.q = q if q is not None else PolyXY._raw({})
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "SphereFun":
        return cls(PolyXY.const(c))

    @classmethod
    def var(cls, name: str) -> "SphereFun":
        if name == "x":
            return cls(PolyXY._raw({(1, 0): Fraction(1)}))
        if name == "y":
            return cls(PolyXY._raw({(0, 1): Fraction(1)}))
        if name == "z":
            return cls(None, PolyXY.const(1))
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: Scalar = 1) -> "SphereFun":
        """coeff * x^a y^b z^c, rewritten into canonical form."""
        base = _u_power(c // 2).shift(a, b).scale(coeff)
        return cls(None, base) if c % 2 else cls(base)

    @classmethod
    def normalize(cls, raw: Mapping[tuple[int, int, int], Scalar]) -> "SphereFun":
        """Canonical form of a formal polynomial {(a, b, c): coeff} in x, y, z."""
        p: dict = {}
        q: dict = {}
        for (a, b, c), coeff in raw.items():
            if not coeff:
                continue
            target = q if c % 2 else p
            for (i, j), uc in _u_power(c // 2).items():
                k = (i + a, j + b)
                target[k] = target.get(k, 0) + uc * _frac(coeff)
        return cls(PolyXY(p), PolyXY(q))

    def terms(self) -> Iterator[tuple[tuple[int, int, int], Fraction]]:
        for (a, b), c in self.p.items():
            yield (a, b, 0), c
        for (a, b), c in self.q.items():
            yield (a, b, 1), c

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other) -> bool:
        if isinstance(other, SphereFun):
            return self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self == SphereFun.const(other)
        if isinstance(other, LocalizedFun):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.q))
        return self._hash

    def degree(self) -> int:
        """Total degree of the canonical representative; -1 for zero."""
        dq = self.q.degree()
        return max(self.p.degree(), dq + 1 if dq >= 0 else -1)

    def _coerce(self, other):
        if isinstance(other, SphereFun):
            return other
        if isinstance(other, (int, Fraction)):
            return SphereFun.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SphereFun(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self) -> "SphereFun":
        return SphereFun(-self.p, -self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SphereFun(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SphereFun(self.p.scale(other), self.q.scale(other))
        if not isinstance(other, SphereFun):
            return NotImplemented
        # (p1 + q1 z)(p2 + q2 z) with z^2 = u
        p = self.p * other.p
        qq = self.q * other.q
        if qq:
            p = p + qq * SPHERE_U
        q = self.p * other.q + self.q * other.p
        return SphereFun(p, q)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SphereFun":
        if n < 0:
            raise ValueError("negative power of a SphereFun; use LocalizedFun")
        result = SphereFun.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_by_coordinate(self, coord: str) -> "SphereFun":
        """Exact quotient f / coord; raises NotDivisible when f is not in coord*A."""
        if coord == "x" or coord == "y":
            a, b = (1, 0) if coord == "x" else (0, 1)
            p = self.p.divide_monomial(a, b)
            q = self.q.divide_monomial(a, b)
            if p is None or q is None:
                raise NotDivisible(f"not divisible by {coord}")
            return SphereFun(p, q)
        if coord == "z":
            # p + q z = z (q + r z)  iff  p = r u
            r, rem = self.p.divmod_sphere()
            if rem:
                raise NotDivisible("not divisible by z")
            return SphereFun(self.q, r)
        raise ValueError(f"unknown coordinate {coord!r}")

    def multiplicity(self, coord: str) -> int:
        """Largest k with f in coord^k A (f nonzero)."""
        if not self:
            raise ValueError("multiplicity of zero")
        k, f = 0, self
        while True:
            try:
                f = f.divide_by_coordinate(coord)
            except NotDivisible:
                return k
            k += 1

    def ambient_partial(self, var: str) -> "SphereFun":
        """Derivative of the representative p + q z as a polynomial in x, y, z."""
        if var == "z":
            return SphereFun(self.q)
        i = VAR_INDEX[var]
        return SphereFun(self.p.partial(i), self.q.partial(i))

    def evaluate(self, point: "SpherePoint") -> Fraction:
        px, py, pz = point.coords
        return self.p.evaluate(px, py) + self.q.evaluate(px, py) * pz

    def __str__(self) -> str:
        return format_terms(dict(self.terms()))

    def __repr__(self) -> str:
        return f"SphereFun({str(self)!r})"


# ---------------------------------------------------------------------------
# A localized at coordinate monomials

Denom = tuple[int, int, int]


class LocalizedFun:
    """num / (x^a y^b z^c) with num not divisible by any inverted coordinate."""

    __slots__ = ("num", "denom", "_hash")

    def __init__(self, num: SphereFun | Scalar, denom: Denom = (0, 0, 0)):
        if not isinstance(num, SphereFun):
            num = SphereFun.const(num)
        if any(e < 0 for e in denom):
            raise ValueError("denominator exponents must be nonnegative")
        self.num, self.denom = _cancel(num, tuple(denom))
        self._hash = None

    @classmethod
    def _raw(cls, num: SphereFun, denom: Denom) -> "LocalizedFun":
        obj = cls.__new__(cls)
        obj.num = num
        obj.denom = denom
        obj._hash = None
        return obj

    @classmethod
    def lift(cls, f) -> "LocalizedFun":
        if isinstance(f, LocalizedFun):
            return f
        if isinstance(f, SphereFun):
            return cls._raw(f, (0, 0, 0))
        if isinstance(f, (int, Fraction)):
            return cls._raw(SphereFun.const(f), (0, 0, 0))
        raise TypeError(f"cannot lift {type(f).__name__} to LocalizedFun")

    @classmethod
    def var(cls, name: str) -> "LocalizedFun":
        return cls._raw(SphereFun.var(name), (0, 0, 0))

    @classmethod
    def from_laurent(cls, terms: Mapping[tuple[int, int, int], Scalar]) -> "LocalizedFun":
        """Canonical element from a formal Laurent polynomial {(a, b, c): coeff}."""
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return ZERO
        shift = tuple(max(0, -min(k[i] for k in terms)) for i in range(3))
        raw = {(a + shift[0], b + shift[1], c + shift[2]): v for (a, b, c), v in terms.items()}
        return cls(SphereFun.normalize(raw), shift)

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: Scalar = 1) -> "LocalizedFun":
        return cls.from_laurent({(a, b, c): coeff})

    def laurent(self) -> dict[tuple[int, int, int], Fraction]:
        """Formal Laurent representative (not canonical)."""
        da, db, dc = self.denom
        return {(a - da, b - db, e - dc): c for (a, b, e), c in self.num.terms()}

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, LocalizedFun):
            return self.denom == other.denom and self.num == other.num
        if isinstance(other, (SphereFun, int, Fraction)):
            return self == LocalizedFun.lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.denom))
        return self._hash

    def inverted(self) -> frozenset[str]:
        """Coordinates that must be inverted for this element to make sense."""
        return frozenset(v for v, e in zip(VARS, self.denom) if e > 0)

    def as_sphere(self) -> SphereFun:
        if any(self.denom):
            raise ValueError(f"{self} is not in A")
        return self.num

    @staticmethod
    def _coerce(other) -> "LocalizedFun | None":
        if isinstance(other, LocalizedFun):
            return other
        if isinstance(other, (SphereFun, int, Fraction)):
            return LocalizedFun.lift(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.denom == o.denom:
            return LocalizedFun(self.num + o.num, self.denom)
        d = tuple(max(a, b) for a, b in zip(self.denom, o.denom))
        n1 = _times_monomial(self.num, tuple(x - y for x, y in zip(d, self.denom)))
        n2 = _times_monomial(o.num, tuple(x - y for x, y in zip(d, o.denom)))
        return LocalizedFun(n1 + n2, d)

    __radd__ = __add__

    def __neg__(self) -> "LocalizedFun":
        return LocalizedFun._raw(-self.num, self.denom)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LocalizedFun._raw(self.num * other, self.denom)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        return LocalizedFun(self.num * o.num, tuple(a + b for a, b in zip(self.denom, o.denom)))

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        """True when the numerator is a single canonical term c x^a y^b z^e."""
        return len(self.num.p) + len(self.num.q) == 1

    def inverse(self) -> "LocalizedFun":
        """Inverse of c x^a y^b z^e (any integer exponents).

        z^2 is stored as 1 - x^2 - y^2, so coordinate powers are stripped
        by repeated division rather than read off a single term.
        """
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        rest = self.num
        mult = []
        for coord in VARS:
            k = rest.multiplicity(coord)
            for _ in range(k):
                rest = rest.divide_by_coordinate(coord)
            mult.append(k)
        if rest.q or len(rest.p) != 1 or rest.p.coeff(0, 0) == 0:
            raise NotInvertible(f"{self} is not a unit of a monomial localization")
        c = rest.p.coeff(0, 0)
        exps = tuple(d - k for d, k in zip(self.denom, mult))
        return LocalizedFun.from_laurent({exps: 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int) -> "LocalizedFun":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree_z(self) -> int:
        """Largest k with f in z^k A (filtration degree); f must be nonzero."""
        if not self.num:
            raise ValueError("degree of zero is undefined")
        return self.num.multiplicity("z") - self.denom[2]

    def evaluate(self, point: "SpherePoint") -> Fraction:
        den = Fraction(1)
        for coord, e in zip(point.coords, self.denom):
            den *= coord**e
        if den == 0:
            raise OutsideChart(f"denominator of {self} vanishes at {point}")
        return self.num.evaluate(point) / den

    def __str__(self) -> str:
        return format_localized(self)

    def __repr__(self) -> str:
        return f"LocalizedFun({str(self)!r})"


def _times_monomial(f: SphereFun, exps: Denom) -> SphereFun:
    a, b, c = exps
    if not (a or b or c):
        return f
    return f * SphereFun.monomial(a, b, c)


def _cancel(num: SphereFun, denom: Denom) -> tuple[SphereFun, Denom]:
    if not num:
        return num, (0, 0, 0)
    d = list(denom)
    for i, coord in enumerate(VARS):
        while d[i] > 0:
            try:
                num = num.divide_by_coordinate(coord)
            except NotDivisible:
                break
            d[i] -= 1
    return num, tuple(d)


ZERO = LocalizedFun._raw(SphereFun(), (0, 0, 0))
ONE = LocalizedFun._raw(SphereFun.const(1), (0, 0, 0))


def lift(f) -> LocalizedFun:
    return LocalizedFun.lift(f)


# ---------------------------------------------------------------------------
# chart calculus


def _check_chart(t: str, chart: str) -> tuple[int, int]:
    if chart not in CHART_PARAMS:
        raise ValueError(f"unknown chart N({chart})")
    if t not in CHART_PARAMS[chart]:
        raise ValueError(f"{t} is not a chart parameter of N({chart}); use {CHART_PARAMS[chart]}")
    return VAR_INDEX[t], VAR_INDEX[chart]


def partial(f, t: str, chart: str = "z", *, strict: bool = False) -> LocalizedFun:
    """The derivation d/dt of A_(h), h = chart, applied to f.

    Uses dh/dt = -t/h, the unique extension from Q[t1, t2].  With
    ``strict`` a result that needs a coordinate other than h inverted
    raises :class:`LocalizationError`.
    """
    ti, hi = _check_chart(t, chart)
    f = LocalizedFun.lift(f)
    out: dict[tuple[int, int, int], Fraction] = {}
    for exps, c in f.laurent().items():
        et, eh = exps[ti], exps[hi]
        if et:
            k = list(exps)
            k[ti] -= 1
            k = tuple(k)
            out[k] = out.get(k, 0) + c * et
        if eh:
            # d(h^e)/dt = e h^(e-1) * (-t/h)
            k = list(exps)
            k[ti] += 1
            k[hi] -= 2
            k = tuple(k)
            out[k] = out.get(k, 0) - c * eh
    result = LocalizedFun.from_laurent(out)
    if strict:
        extra = result.inverted() - {chart}
        if extra:
            raise LocalizationError(
                f"d/d{t} in N({chart}) produced denominators in {sorted(extra)}",
                result.inverted(),
            )
    return result


def evaluate(f, point: "SpherePoint") -> Fraction:
    return LocalizedFun.lift(f).evaluate(point)


def degree_z(f) -> int:
    return LocalizedFun.lift(f).degree_z()


def divide_by_coordinate(f: SphereFun, coord: str) -> SphereFun:
    return f.divide_by_coordinate(coord)


def normalize(raw: Mapping[tuple[int, int, int], Scalar]) -> SphereFun:
    return SphereFun.normalize(raw)


# ---------------------------------------------------------------------------
# z-adapted coordinates: eliminating x^2 = 1 - y^2 - z^2 makes
# {z^k x^e y^b : k in Z, e in {0, 1}, b >= 0} a basis of A_(z)


@lru_cache(maxsize=None)
def _x2_power(n: int) -> tuple[tuple[int, int, int], ...]:
    """(1 - y^2 - z^2)^n as ((j, l, coeff), ...) for the term y^(2j) z^(2l)."""
    out = []
    for j in range(n + 1):
        for l in range(n - j + 1):
            c = factorial(n) // (factorial(j) * factorial(l) * factorial(n - j - l))
            out.append((j, l, (-1) ** (j + l) * c))
    return tuple(out)


def z_coordinates(f) -> dict[tuple[int, int, int], Fraction]:
    """Coefficients of f in A_(z) on the basis z^k x^e y^b, keyed (k, e, b)."""
    f = LocalizedFun.lift(f)
    if f.denom[0] or f.denom[1]:
        raise LocalizationError(f"{f} is not in A_(z)", f.inverted())
    dz = f.denom[2]
    out: dict[tuple[int, int, int], Fraction] = {}
    for (a, b, ez), c in f.num.terms():
        e, n = a % 2, a // 2
        for j, l, m in _x2_power(n):
            key = (ez - dz + 2 * l, e, b + 2 * j)
            s = out.get(key, 0) + c * m
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def from_z_coordinates(coords: Mapping[tuple[int, int, int], Scalar]) -> LocalizedFun:
    return LocalizedFun.from_laurent({(e, b, k): c for (k, e, b), c in coords.items()})


@dataclass(frozen=True)
class SpherePoint:
    """A rational point on the unit sphere."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, px: Scalar, py: Scalar, pz: Scalar):
        coords = (_frac(px), _frac(py), _frac(pz))
        if sum(c * c for c in coords) != 1:
            raise ValueError(f"{coords} is not on the unit sphere")
        object.__setattr__(self, "coords", coords)

    def in_chart(self, chart: str) -> bool:
        return self.coords[VAR_INDEX[chart]] != 0

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def valuation(f, point: SpherePoint, chart: str = "z", *, max_order: int = 64) -> int:
    """Least total order of a chart-partial monomial not vanishing at the point."""
    f = LocalizedFun.lift(f)
    if not f:
        raise ValueError("valuation of zero is undefined")
    if not point.in_chart(chart):
        raise OutsideChart(f"{point} is not in N({chart})")
    t1, t2 = CHART_PARAMS[chart]
    layer = {(0, 0): f}
    for order in range(max_order + 1):
        if any(g.evaluate(point) != 0 for g in layer.values()):
            return order
        nxt = {}
        for (a1, a2), g in layer.items():
            if (a1 + 1, a2) not in nxt:
                nxt[(a1 + 1, a2)] = partial(g, t1, chart)
            if (a1, a2 + 1) not in nxt:
                nxt[(a1, a2 + 1)] = partial(g, t2, chart)
        layer = nxt
    raise ValuationError(f"valuation exceeds the cap {max_order}")


# ---------------------------------------------------------------------------
# printing


def _term_key(exps: tuple[int, int, int]):
    a, b, e = exps
    return (a + b + e, -a, -b, -e)


def _monomial_str(exps: tuple[int, int, int]) -> str:
    parts = []
    for name, e in zip(VARS, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms: Mapping[tuple[int, int, int], Fraction]) -> str:
    """Ascending total degree, x before y before z within a degree."""
    if not terms:
        return "0"
    out = []
    for exps in sorted(terms, key=_term_key):
        c = terms[exps]
        mono = _monomial_str(exps)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_localized(f: LocalizedFun) -> str:
    num = str(f.num)
    if not any(f.denom):
        return num
    den = _monomial_str(f.denom)
    if len(f.num.p) + len(f.num.q) > 1:
        num = f"({num})"
    if "*" in den:
        den = f"({den})"
    return f"{num}/{den}"
