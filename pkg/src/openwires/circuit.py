"""Open passive linear circuits: impedance-labelled graphs over cospans.

A circuit is a finite graph whose edges carry nonzero impedances, glued
onto a cospan of finite sets that marks the input and output terminals.
Composition pushes the cospans out and relabels both edge lists through
the glued apex; tensor is disjoint union.  Ideal wires are never edges:
zero impedance is rejected at construction, and perfect conduction is
expressed by the Frobenius generators (node gluing) instead.

Over Q, impedances must be strictly positive.  Over Q(s), positivity of
an impedance has no implemented decision procedure; nonzero values are
accepted and ``OpenCircuit.positivity_verified`` is False to record that
the claim is unchecked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .finset import (
    FinCospan,
    FinFunction,
    corel_generator,
    pushout_composition,
    tensor_cospans,
)
from .scalars import Field, QQ


class ImpedanceError(ValueError):
    pass


@dataclass(frozen=True)
class LabelledGraph:
    """A multigraph with impedance-labelled edges; self-loops permitted."""

    num_nodes: int
    edges: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        for src, tgt, _ in self.edges:
            if not (0 <= src < self.num_nodes and 0 <= tgt < self.num_nodes):
                raise ValueError(f"edge ({src}, {tgt}) outside node range")

    def relabel(self, node_map: FinFunction) -> "LabelledGraph":
        if node_map.domain_size != self.num_nodes:
            raise ValueError("relabelling map has wrong domain")
        return LabelledGraph(
            node_map.codomain_size,
            tuple((node_map(s), node_map(t), z) for s, t, z in self.edges),
        )


@dataclass(frozen=True)
class OpenCircuit:
    """A labelled graph decorating a cospan X -> N <- Y."""

    field: Field
    graph: LabelledGraph
    cospan: FinCospan

    def __post_init__(self):
        if self.cospan.apex_size != self.graph.num_nodes:
            raise ValueError("cospan apex must be the node set of the graph")
        for src, tgt, z in self.graph.edges:
            positive = self.field.is_positive(z)
            if positive is False:
                if self.field == QQ:
                    raise ImpedanceError(
                        f"impedance on edge ({src}, {tgt}) must be positive over Q"
                    )
                raise ImpedanceError(
                    f"impedance on edge ({src}, {tgt}) must be nonzero"
                )

    @property
    def num_inputs(self) -> int:
        return self.cospan.left_size

    @property
    def num_outputs(self) -> int:
        return self.cospan.right_size

    @property
    def positivity_verified(self) -> bool:
        """True when every impedance passed a real positivity check."""
        return all(self.field.is_positive(z) is True for _, _, z in self.graph.edges)


def boundary(c: OpenCircuit) -> list[int]:
    """The terminals: sorted union of the two leg images."""
    return sorted(set(c.cospan.left.table) | set(c.cospan.right.table))


def compose_circuits(a: OpenCircuit, b: OpenCircuit) -> OpenCircuit:
    """Glue b onto a along the shared boundary.

    Every edge of both circuits appears exactly once in the composite,
    a's edges first, with endpoints relabelled through the pushout.
    """
    if a.field != b.field:
        raise ValueError("circuits must share a scalar field")
    cospan, inject_a, inject_b = pushout_composition(a.cospan, b.cospan)
    graph = LabelledGraph(
        cospan.apex_size,
        a.graph.relabel(inject_a).edges + b.graph.relabel(inject_b).edges,
    )
    return OpenCircuit(a.field, graph, cospan)


def tensor_circuits(a: OpenCircuit, b: OpenCircuit) -> OpenCircuit:
    if a.field != b.field:
        raise ValueError("circuits must share a scalar field")
    cospan = tensor_cospans(a.cospan, b.cospan)
    shift = a.graph.num_nodes
    edges = a.graph.edges + tuple(
        (s + shift, t + shift, z) for s, t, z in b.graph.edges
    )
    return OpenCircuit(a.field, LabelledGraph(cospan.apex_size, edges), cospan)


def circuit_generator(kind: str, n: int = 1, m: int = 1, field: Field = QQ) -> OpenCircuit:
    """Frobenius/identity/swap generators: edgeless graphs over the corelation.

    The apex is one node per block of the generator's partition, with the
    legs landing on their blocks.
    """
    corel = corel_generator(kind, n, m)
    left = FinFunction(
        corel.left_size, corel.num_classes, corel.class_of[: corel.left_size]
    )
    right = FinFunction(
        corel.right_size, corel.num_classes, corel.class_of[corel.left_size :]
    )
    return OpenCircuit(
        field, LabelledGraph(corel.num_classes, ()), FinCospan(left, right)
    )


def identity_circuit(n: int, field: Field = QQ) -> OpenCircuit:
    return circuit_generator("id", n, field=field)


def resistor(impedance, field: Field = QQ) -> OpenCircuit:
    """A single two-terminal component: input 0, output 1."""
    graph = LabelledGraph(2, ((0, 1, impedance),))
    cospan = FinCospan(
        FinFunction(1, 2, (0,)),
        FinFunction(1, 2, (1,)),
    )
    return OpenCircuit(field, graph, cospan)


def series(impedances: Sequence, field: Field = QQ) -> OpenCircuit:
    """A path of two-terminal components from node 0 to node k."""
    k = len(impedances)
    graph = LabelledGraph(k + 1, tuple((i, i + 1, z) for i, z in enumerate(impedances)))
    cospan = FinCospan(FinFunction(1, k + 1, (0,)), FinFunction(1, k + 1, (k,)))
    return OpenCircuit(field, graph, cospan)


def parallel(impedances: Sequence, field: Field = QQ) -> OpenCircuit:
    """Parallel two-terminal components between node 0 and node 1."""
    graph = LabelledGraph(2, tuple((0, 1, z) for z in impedances))
    cospan = FinCospan(FinFunction(1, 2, (0,)), FinFunction(1, 2, (1,)))
    return OpenCircuit(field, graph, cospan)


def canonical_form(c: OpenCircuit) -> tuple:
    """A relabelling-invariant snapshot, for comparing composites.

    Nodes are renumbered by first occurrence scanning the left leg, the
    right leg, then edge endpoints in order; untouched nodes follow in
    index order.  Pushout composition built in different orders agrees
    after this renumbering.
    """
    order: dict[int, int] = {}

    def visit(node: int):
        if node not in order:
            order[node] = len(order)

    for node in c.cospan.left.table:
        visit(node)
    for node in c.cospan.right.table:
        visit(node)
    for src, tgt, _ in c.graph.edges:
        visit(src)
        visit(tgt)
    for node in range(c.graph.num_nodes):
        visit(node)
    return (
        c.graph.num_nodes,
        tuple(order[v] for v in c.cospan.left.table),
        tuple(order[v] for v in c.cospan.right.table),
        tuple((order[s], order[t], z) for s, t, z in c.graph.edges),
    )
