"""Worked circuit examples, computed exactly.

Runs the classic equivalences (series, parallel, star-mesh) and prints
the black-boxed behaviours, over Q and over Q(s).
"""

from fractions import Fraction as F

from openwires import (
    QS,
    black_box,
    circuits_equivalent,
    compose_circuits,
    eliminate_node,
    extended_power,
    parallel,
    power_functional,
    resistor,
    series,
)
from openwires.dirichlet import DirichletForm


def show_relation(label, relation, field):
    print(f"{label}:")
    for row in relation.space.basis:
        print("   [" + ", ".join(field.format(v) for v in row) + "]")


def main():
    from openwires import QQ

    print("== series law ==")
    pair = series([F(1), F(1)])
    single = resistor(F(2))
    q = power_functional(pair)
    print(f"power functional coefficient of 1R-1R series: {q.coeff[0][1]} (expect 1/4)")
    print(f"equivalent to a single 2R resistor: {circuits_equivalent(pair, single)}")

    print("\n== parallel law ==")
    r, s = F(3), F(6)
    t = 1 / (1 / r + 1 / s)
    print(f"3R || 6R equivalent to {t}R: {circuits_equivalent(parallel([r, s]), resistor(t))}")

    print("\n== star-mesh ==")
    star = DirichletForm.from_entries(
        4, {(0, 3): F(1, 2), (1, 3): F(1, 2), (2, 3): F(1, 2)}
    )
    mesh = eliminate_node(star, 3)
    print("eliminating the center of a unit star gives mesh coefficients:")
    for row in mesh.coeff:
        print("   " + str([str(v) for v in row]))

    print("\n== Ohm's law as a black box ==")
    show_relation("black_box(resistor 3R)", black_box(resistor(F(3))), QQ)

    print("\n== black-box functoriality ==")
    composed = black_box(compose_circuits(resistor(F(1)), resistor(F(1))))
    direct = black_box(resistor(F(2)))
    print(f"bb(1R ; 1R) == bb(2R): {composed.space == direct.space}")

    print("\n== frequency domain (field Q(s)) ==")
    z_l, z_r, z_c = QS.parse("3*s"), QS.parse("2"), QS.parse("1/(5*s)")
    rlc = series([z_l, z_r, z_c], field=QS)
    total = z_l + z_r + z_c
    print(f"series RLC impedance: {QS.format(total)}")
    show_relation("black_box(RLC chain)", black_box(rlc), QS)
    print(f"extended power has {extended_power(rlc).size} nodes; boundary keeps 2")


if __name__ == "__main__":
    main()
