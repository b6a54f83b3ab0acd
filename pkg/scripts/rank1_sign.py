"""Which of z^(alpha/2) A (x) v0 and z^(-alpha/2) A (x) v0 is invariant in A_(z) (x) U_0^alpha."""

from spherevec.closure import rank_one_invariant, resolve_rank1_sign


def main():
    print(f"{'alpha':>5}  {'k=alpha/2':>9}  {'k=-alpha/2':>10}  sign")
    for alpha in (-6, -4, -2, 2, 4, 6):
        plus = rank_one_invariant(alpha, alpha // 2)
        minus = rank_one_invariant(alpha, -alpha // 2)
        print(f"{alpha:>5}  {str(plus):>9}  {str(minus):>10}  {resolve_rank1_sign(alpha)}")


if __name__ == "__main__":
    main()
