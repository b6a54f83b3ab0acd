"""Chart-change diagrams and cocycle identities for the tensor modules."""

from spherevec.glmod import GLWeight
from spherevec.transition import CHART_PAIRS, check_diagram, cocycle_check, parse_module_spec, transition_matrix

MODULES = ["A^2", "A^-2", "A^4", "Omega", "Vect", "w:2,0", "w:1,1", "w:2,2", "w:3,1"]


def main():
    for a, b in CHART_PAIRS:
        C = transition_matrix(a, b)
        print(f"N({a}) -> N({b}): {[[str(e) for e in row] for row in C.entries]}, det {C.det}")
    print()
    for mod in MODULES:
        spec = parse_module_spec(mod)
        cells = [f"{a}{b}:{'ok' if check_diagram(spec, (a, b)) else 'FAIL'}" for a, b in CHART_PAIRS]
        print(f"{mod:>7}  {'  '.join(cells)}")
    print()
    weights = [GLWeight(m, al) for m in range(4) for al in range(-4, 5) if (al - m) % 2 == 0]
    bad = [str(w) for w in weights if not cocycle_check(w)]
    print(f"cocycle: {len(weights) - len(bad)}/{len(weights)} weights" + (f", failing {bad}" if bad else ""))


if __name__ == "__main__":
    main()
