"""Membership of the summands of w_m (x) w_n in the closures of w_(m+n-2k)."""

from spherevec.cli import decompose

CASES = [(1, 1, 1, -1), (1, 1, 1, 1), (2, 0, 1, 1), (2, 0, 1, -1), (2, 2, 1, -1), (0, 2, 0, -2), (1, 1, 0, -2)]


def main():
    for m, a, n, b in CASES:
        result = decompose(m, a, n, b)
        print(f"w_{m}^({a}) (x) w_{n}^({b}): phi identity {'ok' if result['phi_identity'] else 'FAILED'}")
        for comp in result["components"]:
            t = comp["target"]
            states = ["zero" if e["zero"] else ("member" if e["member"] else "NOT member") for e in comp["probes"]]
            print(f"   k={comp['k']} -> U_{t['m']}^{t['alpha']}: {', '.join(states)}")


if __name__ == "__main__":
    main()
