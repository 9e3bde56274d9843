"""The non-controllable (s+1)-system, end to end.

Denotes the term, shows the kernel representation, extracts the maximal
controllable sub-behaviour, and checks trace windows operationally.
"""

from fractions import Fraction as F

from openwires.cli import parse_term
from openwires.lti import behaviour_rep, controllable_part, is_controllable
from openwires.sfg import check_trace, sfg_denote, step

TERM = "copy ; (delay (+) id) ; add ; co-add ; (co-delay (+) id) ; co-copy"


def main():
    term = parse_term(TERM)
    print(f"term: {TERM}")
    cospan = sfg_denote(term)
    rep = behaviour_rep(cospan)
    print("kernel representation [A -B]:")
    print(rep.kernel_matrix)

    print(f"\ncontrollable: {is_controllable(cospan)}")
    r, s = controllable_part(cospan)
    print("maximal controllable sub-behaviour (a span):")
    print(r)
    print(s)

    print("\noperational check: w1(t) = (-1)^t, w2 = 0 over six ticks")
    window = [([F((-1) ** k)], [F(0)]) for k in range(6)]
    print(f"realizable with registers (0, 1): {check_trace(term, window, [F(0), F(1)])}")
    print(f"realizable from any registers:   {check_trace(term, window)}")
    print(f"realizable on a bare wire:       {check_trace(parse_term('id'), window)}")

    print("\nstepping the registers forward from (0, 1):")
    state = [F(0), F(1)]
    for k in range(6):
        u, v = [F((-1) ** k)], [F(0)]
        state = step(term, state, (u, v))
        regs = ", ".join(str(r) for r in state)
        print(f"  tick {k}: boundary ({u[0]}, {v[0]}) -> registers ({regs})")


if __name__ == "__main__":
    main()
