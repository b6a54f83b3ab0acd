"""Seeded random objects built from term lists ("recipes").

Keeping the recipe lets a failing case be shrunk by dropping terms and
rebuilding, which is how the CLI minimizes counterexamples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .avmod import TMElement
from .config import DEFAULT_SAMPLING, SamplingConfig
from .glmod import GLElement, GLWeight
from .ring import LocalizedFun, SphereFun
from .vectorfields import VField, from_deltas

Term = tuple[int, int, int, int]  # (a, b, c, coeff) for coeff x^a y^b z^c


def random_terms(rng: random.Random, cfg: SamplingConfig, *, z_pole: int = 0, max_degree: int | None = None) -> list[Term]:
    """Up to cfg.max_terms monomials with nonzero coefficients; c may go down to -z_pole."""
    top = cfg.max_degree if max_degree is None else max_degree
    terms = []
    for _ in range(rng.randint(1, cfg.max_terms)):
        d = rng.randint(0, top)
        a = rng.randint(0, d)
        b = rng.randint(0, d - a)
        c = d - a - b - rng.randint(0, z_pole)
        coeff = rng.choice([k for k in range(-cfg.coeff_bound, cfg.coeff_bound + 1) if k])
        terms.append((a, b, c, coeff))
    return terms


def build_fun(terms) -> SphereFun:
    return SphereFun.normalize(_accumulate(terms))


def build_lfun(terms) -> LocalizedFun:
    return LocalizedFun.from_laurent(_accumulate(terms))


def _accumulate(terms) -> dict:
    out: dict = {}
    for a, b, c, k in terms:
        out[(a, b, c)] = out.get((a, b, c), 0) + k
    return out


def build_field(parts) -> VField:
    """a*D23 + b*D31 + c*D12 from three term lists."""
    return from_deltas(*(build_fun(p) for p in parts))


def random_alpha(rng: random.Random, cfg: SamplingConfig) -> Fraction:
    return Fraction(rng.randint(-2 * cfg.alpha_bound, 2 * cfg.alpha_bound), 2)


@dataclass
class Case:
    """A random input: fixed scalars plus shrinkable term lists."""

    meta: dict
    parts: dict[str, list] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"meta": {k: str(v) for k, v in self.meta.items()}, "parts": {k: _json_part(v) for k, v in self.parts.items()}}


def _json_part(part):
    if part and isinstance(part[0], tuple):
        return [list(t) for t in part]
    return [_json_part(p) for p in part]


def build_element(meta: dict, parts: list) -> TMElement:
    w = GLWeight(meta["m"], meta["alpha"])
    return TMElement(w, [build_lfun(p) for p in parts])


def random_element_parts(rng: random.Random, cfg: SamplingConfig, m: int) -> list:
    return [random_terms(rng, cfg, z_pole=cfg.max_z_pole) if rng.random() < 0.8 else [] for _ in range(m + 1)]


def random_field_parts(rng: random.Random, cfg: SamplingConfig, max_degree: int | None = None) -> list:
    return [random_terms(rng, cfg, max_degree=max_degree) if rng.random() < 0.8 else [] for _ in range(3)]


def random_gl_element(rng: random.Random, w: GLWeight, cfg: SamplingConfig = DEFAULT_SAMPLING) -> GLElement:
    return GLElement(w, [rng.randint(-cfg.coeff_bound, cfg.coeff_bound) for _ in range(w.dim)])


def shrink(case: Case, fails: Callable[[Case], bool], budget: int = 200) -> Case:
    """Greedily drop single terms while the case keeps failing."""
    changed = True
    while changed and budget > 0:
        changed = False
        for path, terms in list(_leaves(case.parts)):
            for idx in range(len(terms)):
                smaller = Case(dict(case.meta), _replace(case.parts, path, terms[:idx] + terms[idx + 1:]))
                budget -= 1
                try:
                    still = fails(smaller)
                except Exception:
                    still = True
                if still:
                    case, changed = smaller, True
                    break
                if budget <= 0:
                    break
            if changed or budget <= 0:
                break
    return case


def _leaves(parts, path=()):
    if isinstance(parts, dict):
        for k, v in parts.items():
            yield from _leaves(v, path + (k,))
    elif not parts or isinstance(parts[0], tuple):
        yield path, list(parts)
    else:
        for i, p in enumerate(parts):
            yield from _leaves(p, path + (i,))


def _replace(parts, path, value):
    if not path:
        return value
    head, rest = path[0], path[1:]
    if isinstance(parts, dict):
        out = dict(parts)
        out[head] = _replace(parts[head], rest, value)
        return out
    out = list(parts)
    out[head] = _replace(parts[head], rest, value)
    return out
