"""Randomized and deterministic identity checks, shared by the CLI and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import glmod
from .avmod import compatibility_check, derived_zE, vf_act
from .config import DEFAULT_SAMPLING, SamplingConfig
from .glmod import GLElement, GLWeight, act_E
from .ring import SphereFun, partial
from .sampling import (
    Case,
    build_element,
    build_field,
    build_fun,
    build_lfun,
    random_alpha,
    random_element_parts,
    random_field_parts,
    random_terms,
    shrink,
)
from .vectorfields import D12, D23, D31, ZERO_FIELD, apply, bracket, from_deltas

_X, _Y, _Z = (SphereFun.var(v) for v in "xyz")


def bracket_table() -> dict[str, bool]:
    return {
        "[D12,D23]=D31": bracket(D12, D23) == D31,
        "[D23,D31]=D12": bracket(D23, D31) == D12,
        "[D31,D12]=D23": bracket(D31, D12) == D23,
        "x*D23+y*D31+z*D12=0": from_deltas(_X, _Y, _Z) == ZERO_FIELD,
    }


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    sample: Callable[[random.Random, SamplingConfig], Case]
    check: Callable[[Case], bool]


def _funs(*names, z_pole=0):
    def sample(rng, cfg):
        return Case({}, {n: random_terms(rng, cfg, z_pole=z_pole) for n in names})
    return sample


def _fields(names, extra_funs=(), max_degree=2):
    def sample(rng, cfg):
        parts = {n: random_field_parts(rng, cfg, max_degree) for n in names}
        parts.update({n: random_terms(rng, cfg) for n in extra_funs})
        return Case({}, parts)
    return sample


def _module(field_names=(), fun_names=(), field_degree=2):
    def sample(rng, cfg):
        m = rng.randint(0, cfg.max_m)
        meta = {"m": m, "alpha": random_alpha(rng, cfg)}
        parts = {"v": random_element_parts(rng, cfg, m)}
        parts.update({n: random_field_parts(rng, cfg, field_degree) for n in field_names})
        parts.update({n: random_terms(rng, cfg) for n in fun_names})
        return Case(meta, parts)
    return sample


def _ring_assoc(c: Case) -> bool:
    f, g, h = (build_fun(c.parts[n]) for n in "fgh")
    return (f * g) * h == f * (g * h) and f * (g + h) == f * g + f * h and f * g == g * f


def _chart_leibniz(c: Case) -> bool:
    f, g = build_lfun(c.parts["f"]), build_lfun(c.parts["g"])
    return all(partial(f * g, t) == partial(f, t) * g + f * partial(g, t) for t in "xy")


def _derivation(c: Case) -> bool:
    eta = build_field(c.parts["eta"])
    f, g = build_fun(c.parts["f"]), build_fun(c.parts["g"])
    return apply(eta, f * g) == apply(eta, f) * g + f * apply(eta, g)


def _jacobi(c: Case) -> bool:
    a, b, d = (build_field(c.parts[n]) for n in ("eta", "mu", "nu"))
    total = bracket(a, bracket(b, d)) + bracket(b, bracket(d, a)) + bracket(d, bracket(a, b))
    return not total and bracket(a, b) == -bracket(b, a)


def _gl_relations(c: Case) -> bool:
    w = GLWeight(c.meta["m"], c.meta["alpha"])
    rng = random.Random(c.meta.get("seed", 0))
    u = GLElement(w, [rng.randint(-3, 3) for _ in range(w.dim)])
    for p, q in glmod.INDICES:
        for r, s in glmod.INDICES:
            lhs = act_E(p, q, act_E(r, s, u)) - act_E(r, s, act_E(p, q, u))
            rhs = GLElement(w, [0] * w.dim)
            if q == r:
                rhs = rhs + act_E(p, s, u)
            if s == p:
                rhs = rhs - act_E(r, q, u)
            if lhs != rhs:
                return False
    return True


def _gl_sample(rng, cfg):
    return Case({"m": rng.randint(0, 6), "alpha": random_alpha(rng, cfg), "seed": rng.randrange(2**32)}, {})


def _compatibility(c: Case) -> bool:
    v = build_element(c.meta, c.parts["v"])
    return compatibility_check(build_field(c.parts["eta"]), build_fun(c.parts["a"]), v)


def _lie_action(c: Case) -> bool:
    v = build_element(c.meta, c.parts["v"])
    eta, mu = build_field(c.parts["eta"]), build_field(c.parts["mu"])
    lhs = vf_act(bracket(eta, mu), v)
    return lhs == vf_act(eta, vf_act(mu, v)) - vf_act(mu, vf_act(eta, v))


def _zE(c: Case) -> bool:
    v = build_element(c.meta, c.parts["v"])
    return all(derived_zE(p, q, v) == derived_zE(p, q, v, "witness") for p, q in glmod.INDICES)


PROPERTIES = (
    Property("ring", "ring axioms", _funs("f", "g", "h"), _ring_assoc),
    Property("ring", "chart Leibniz rule", _funs("f", "g", z_pole=2), _chart_leibniz),
    Property("vectorfields", "fields act as derivations", _fields(("eta",), ("f", "g")), _derivation),
    Property("vectorfields", "Jacobi identity", _fields(("eta", "mu", "nu"), max_degree=2), _jacobi),
    Property("glmod", "gl2 commutation relations", _gl_sample, _gl_relations),
    Property("avmod", "compatibility with A", _module(("eta",), ("a",)), _compatibility),
    Property("avmod", "Lie algebra action", _module(("eta", "mu")), _lie_action),
    Property("avmod", "z (x) E_pq closure", _module(), _zE),
)


@dataclass
class PropertyResult:
    suite: str
    name: str
    trials: int
    passed: int
    counterexample: Case | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"suite": self.suite, "name": self.name, "trials": self.trials, "passed": self.passed, "ok": self.ok}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        if self.error:
            out["error"] = self.error
        return out


def _fails(prop: Property, case: Case) -> bool:
    return not prop.check(case)


def run_property(prop: Property, trials: int, rng: random.Random, cfg: SamplingConfig = DEFAULT_SAMPLING) -> PropertyResult:
    result = PropertyResult(prop.suite, prop.name, trials, 0)
    for _ in range(trials):
        case = prop.sample(rng, cfg)
        try:
            ok = prop.check(case)
        except Exception as exc:  # an exception is a failure too
            ok, result.error = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            result.counterexample = shrink(case, lambda c: _fails(prop, c))
            break
        result.passed += 1
    return result


def run_all(trials: int, seed: int, cfg: SamplingConfig = DEFAULT_SAMPLING, suites=None) -> list[PropertyResult]:
    rng = random.Random(seed)
    return [run_property(p, trials, rng, cfg) for p in PROPERTIES if suites is None or p.suite in suites]
