"""Command line: ``spherevec <command> ...`` (or ``python -m spherevec``).

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import axioms, closure, transition
from .avmod import (
    NonIntegralExponent,
    TMElement,
    deg,
    parse_element,
    phi,
    project,
    tensor,
    vf_act,
    w_generator,
)
from .config import DEFAULT_CERTIFY
from .expr import ParseError
from .glmod import GLWeight
from .ring import LocalizedFun
from .vectorfields import D23, D31, format_field, parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number like 3 or -1/2, got {text!r}") from None


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or any(p not in "xyz" or not p for p in parts):
        raise argparse.ArgumentTypeError(f"expected a chart pair like z,x, got {text!r}")
    return parts[0], parts[1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spherevec", description="Exact computations with modules of vector fields on the sphere.")
    parser.add_argument("--json", action="store_true", help="print a machine-readable report envelope")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for closure computations")
    parser.add_argument("--seed", type=int, default=0, help="seed recorded in every report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-axioms", help="run the randomized identity suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", dest="cmd_seed", type=int, default=None)

    p = sub.add_parser("act", help="apply a vector field to an element of A_(z) (x) U_m^alpha")
    p.add_argument("--field", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-a", "--alpha", type=_fraction, required=True)

    p = sub.add_parser("generate", help="close w_m and classify the submodule")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-a", "--alpha", type=_fraction, required=True)
    p.add_argument("-K", type=int, default=None)
    p.add_argument("-D", type=int, default=DEFAULT_CERTIFY.default_D)

    p = sub.add_parser("decompose", help="decompose w_m (x) w_n into summands")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-a", "--alpha", type=_fraction, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-b", "--beta", type=_fraction, required=True)
    p.add_argument("-K", type=int, default=None)
    p.add_argument("-D", type=int, default=None)

    p = sub.add_parser("transition", help="check the chart-change diagram for a module")
    p.add_argument("--pair", type=_pair, required=True)
    p.add_argument("--module", required=True, help="A^k, Omega, Vect or w:m,a")
    return parser


# ---------------------------------------------------------------------------
# commands; each returns (exit code, payload, human-readable lines)


def cmd_verify_axioms(trials: int, seed: int) -> tuple[int, dict, list[str]]:
    table = axioms.bracket_table()
    results = axioms.run_all(trials, seed)
    ok = all(table.values()) and all(r.ok for r in results)
    payload = {"bracket_table": table, "properties": [r.to_json() for r in results], "trials": trials}
    lines = [f"{'pass' if v else 'FAIL'}  {k}" for k, v in table.items()]
    for r in results:
        lines.append(f"{'pass' if r.ok else 'FAIL'}  {r.suite}: {r.name} ({r.passed}/{r.trials})")
        if not r.ok:
            lines.append(f"      counterexample: {json.dumps(r.counterexample.to_json())}")
            if r.error:
                lines.append(f"      error: {r.error}")
    if trials == 0:
        payload["warning"] = "trials=0: randomized suites ran no cases"
        lines.append("warning: trials=0, randomized suites are vacuous")
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


def cmd_act(field_text: str, elem_text: str, m: int, alpha: Fraction) -> tuple[int, dict, list[str]]:
    w = GLWeight(m, alpha)
    eta = parse_field(field_text)
    v = parse_element(elem_text, w)
    out = vf_act(eta, v)
    payload = {"field": format_field(eta), "element": v.to_json(), "result": out.to_json(), "result_text": str(out)}
    return EXIT_OK, payload, [str(out)]


def default_K(m: int, alpha: Fraction) -> int:
    return int(abs(alpha + m) / 2) + DEFAULT_CERTIFY.margin


def cmd_generate(m: int, alpha: Fraction, K: int | None, D: int, jobs: int = 1) -> tuple[int, dict, list[str]]:
    w = GLWeight(m, alpha)
    try:
        gen = w_generator(m, alpha)
    except NonIntegralExponent as exc:
        # no bounded submodule exists; show the degree running off instead
        K = 2 if K is None else K
        start = TMElement.basis(w, 0, LocalizedFun.monomial(0, 0, 2))
        windows = [closure.Window(K + 2 * j, D) for j in range(3)]
        degrees = closure.degree_sequence([start], windows, jobs=jobs)
        decreasing = all(a > b for a, b in zip(degrees, degrees[1:]))
        payload = {
            "non_integral": str(exc),
            "start": start.to_json(),
            "degree_trail": [{"window": wi.to_json(), "min_degree": d} for wi, d in zip(windows, degrees)],
            "strictly_decreasing": decreasing,
        }
        lines = [f"NonIntegralExponent: {exc}", f"closure of {start}:"]
        lines += [f"  K={wi.K} D={wi.D}: min_degree {d}" for wi, d in zip(windows, degrees)]
        lines.append("min_degree strictly decreasing: " + ("yes" if decreasing else "no"))
        return (EXIT_OK if decreasing else EXIT_INCONCLUSIVE), payload, lines
    K = default_K(m, alpha) if K is None else K
    report = closure.generate([gen], closure.Window(K, D), jobs=jobs)
    payload = {"generator": gen.to_json(), "expected_degree": deg(gen), **report.to_json()}
    lines = [f"w_{m} = {gen}", f"status: {report.label}", f"dimension: {report.basis.dimension}"]
    lines += [f"  K={wi.K} D={wi.D}: min_degree {d}" for wi, d in report.degree_trail]
    if report.status == "Inconclusive":
        return EXIT_INCONCLUSIVE, payload, lines
    ok = report.status == "Bounded" and report.min_degree == deg(gen)
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


def decomposition_probes(wm: TMElement, wn: TMElement) -> list[tuple[str, object]]:
    """Elements of M (x) N: the generator tensor and field images of it."""
    return [
        ("w_m (x) w_n", tensor(wm, wn)),
        ("D23 w_m (x) w_n", tensor(vf_act(D23, wm), wn)),
        ("w_m (x) D31 w_n", tensor(wm, vf_act(D31, wn))),
        ("D23 w_m (x) D31 w_n", tensor(vf_act(D23, wm), vf_act(D31, wn))),
    ]


def auto_window(v: TMElement, target: TMElement, K: int | None = None, D: int | None = None) -> closure.Window:
    keys = list(closure.element_coordinates(v)) + list(closure.element_coordinates(target))
    lo = min(k for k, _, _, _ in keys)
    top = max(k + e + b for k, e, b, _ in keys)
    margin = DEFAULT_CERTIFY.margin
    return closure.Window(
        max(-lo, 0) + margin if K is None else K,
        max(top + margin, DEFAULT_CERTIFY.default_D) if D is None else D,
    )


def decompose(m, alpha, n, beta, K=None, D=None, jobs=1) -> dict:
    wm, wn = w_generator(m, alpha), w_generator(n, beta)
    target_weight = alpha + beta
    phi_ok = phi(tensor(wm, wn)) == w_generator(m + n, target_weight)
    components = []
    for k in range(min(m, n) + 1):
        target = w_generator(m + n - 2 * k, target_weight)
        entries = []
        for label, t in decomposition_probes(wm, wn):
            p = project(k, t)
            if not p:
                entries.append({"probe": label, "zero": True, "member": True})
                continue
            win = auto_window(p, target, K, D)
            try:
                member = closure.membership(p, closure.close([target], win, jobs=jobs))
            except closure.WindowError as exc:
                entries.append({"probe": label, "zero": False, "member": None, "error": str(exc)})
                continue
            entries.append({"probe": label, "zero": False, "member": member, "window": win.to_json(), "component": str(p)})
        components.append({"k": k, "target": target.to_json(), "probes": entries})
    return {"phi_identity": phi_ok, "components": components}


def cmd_decompose(m, alpha, n, beta, K, D, jobs=1) -> tuple[int, dict, list[str]]:
    payload = decompose(m, alpha, n, beta, K, D, jobs)
    lines = [f"phi(w_{m} (x) w_{n}) = w_{m + n}: {'pass' if payload['phi_identity'] else 'FAIL'}"]
    status = EXIT_OK if payload["phi_identity"] else EXIT_FAIL
    for comp in payload["components"]:
        k = comp["k"]
        for e in comp["probes"]:
            if e["member"] is None:
                state = "inconclusive"
                if status == EXIT_OK:
                    status = EXIT_INCONCLUSIVE
            elif e["zero"]:
                state = "zero"
            else:
                state = "member" if e["member"] else "NOT a member"
                if not e["member"]:
                    status = EXIT_FAIL
            lines.append(f"pi_{k}({e['probe']}) -> U_{m + n - 2 * k}: {state}")
    return status, payload, lines


def cmd_transition(pair: tuple[str, str], module: str) -> tuple[int, dict, list[str]]:
    spec = transition.parse_module_spec(module)
    diagram = transition.check_diagram(spec, pair)
    cocycle = transition.cocycle_check(spec.weight)
    C = transition.transition_matrix(*pair)
    payload = {
        "module": str(spec),
        "weight": {"m": spec.weight.m, "alpha": str(spec.weight.alpha)},
        "pair": list(pair),
        "matrix": [[str(e) for e in row] for row in C.entries],
        "det": str(C.det),
        "diagram": diagram,
        "cocycle": cocycle,
    }
    lines = [
        f"N({pair[0]}) -> N({pair[1]}): C = {payload['matrix']}, det = {C.det}",
        f"diagram for {spec}: {'pass' if diagram else 'FAIL'}",
        f"cocycle on U_{spec.weight.m}^{spec.weight.alpha}: {'pass' if cocycle else 'FAIL'}",
    ]
    return (EXIT_OK if diagram and cocycle else EXIT_FAIL), payload, lines


# ---------------------------------------------------------------------------


def _inputs(args) -> dict:
    skip = {"json", "command", "cmd_seed"}
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in vars(args).items() if k not in skip}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if args.command == "verify-axioms" and args.cmd_seed is not None:
        seed = args.cmd_seed
    start = time.perf_counter()
    try:
        if args.command == "verify-axioms":
            code, payload, lines = cmd_verify_axioms(args.trials, seed)
        elif args.command == "act":
            code, payload, lines = cmd_act(args.field, args.elem, args.m, args.alpha)
        elif args.command == "generate":
            code, payload, lines = cmd_generate(args.m, args.alpha, args.K, args.D, args.jobs)
        elif args.command == "decompose":
            code, payload, lines = cmd_decompose(args.m, args.alpha, args.n, args.beta, args.K, args.D, args.jobs)
        else:
            code, payload, lines = cmd_transition(args.pair, args.module)
    except (ParseError, NonIntegralExponent, ValueError, UsageError) as exc:
        code, payload, lines = EXIT_USAGE, {"error": f"{type(exc).__name__}: {exc}"}, [f"error: {exc}"]
    except closure.Inconclusive as exc:
        code, payload, lines = EXIT_INCONCLUSIVE, {"error": str(exc)}, [f"inconclusive: {exc}"]
    except closure.WindowOverflow as exc:
        code, payload, lines = EXIT_INCONCLUSIVE, {"error": str(exc)}, [f"window exhausted: {exc}"]
    elapsed = time.perf_counter() - start
    if args.json:
        envelope = {
            "command": args.command,
            "inputs": _inputs(args),
            "payload": payload,
            "exact": True,
            "elapsed_s": round(elapsed, 3),
            "seed": seed,
            "exit_code": code,
        }
        print(json.dumps(envelope, indent=2), file=out)
    else:
        stream = out if code in (EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE) else sys.stderr
        for line in lines:
            print(line, file=stream)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
