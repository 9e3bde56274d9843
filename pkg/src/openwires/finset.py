"""Finite sets, cospans, and corelations (the algebra of ideal wires).

A cospan X -> N <- Y marks which apex elements are reachable from the left
and right boundaries; composition glues two cospans along their shared foot
by pushout, computed here with a union-find.  A corelation forgets the apex
and keeps only the induced partition of X + Y; its composition is
transitive closure followed by restriction, which silently drops any block
that touches neither boundary (the "extra" law).

Boundary elements are 0-indexed positions throughout; named boundaries live
only at the CLI layer.  Partitions are canonically labelled: block ids are
assigned by first occurrence along X then Y, so equal corelations are equal
as Python values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class UnionFind:
    """Union-find over 0..n-1 with path compression.

    Roots are canonicalized to the smallest index of their class so that
    apices of pushouts come out in a reproducible order.
    """

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx

    def canonical_labels(self) -> tuple[list[int], int]:
        """Block id per element, ids numbered by first occurrence."""
        labels = [-1] * len(self.parent)
        mapping: dict[int, int] = {}
        for x in range(len(self.parent)):
            root = self.find(x)
            if root not in mapping:
                mapping[root] = len(mapping)
            labels[x] = mapping[root]
        return labels, len(mapping)


@dataclass(frozen=True)
class FinFunction:
    """A function {0..domain_size-1} -> {0..codomain_size-1} as a table."""

    domain_size: int
    codomain_size: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain_size:
            raise ValueError("table length must equal domain size")
        for value in self.table:
            if not 0 <= value < self.codomain_size:
                raise ValueError(f"table entry {value} outside codomain")

    @staticmethod
    def identity(n: int) -> "FinFunction":
        return FinFunction(n, n, tuple(range(n)))

    @staticmethod
    def from_list(table: Sequence[int], codomain_size: int) -> "FinFunction":
        return FinFunction(len(table), codomain_size, tuple(table))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, then: "FinFunction") -> "FinFunction":
        """self followed by `then`."""
        if self.codomain_size != then.domain_size:
            raise ValueError("codomain/domain mismatch in composition")
        return FinFunction(
            self.domain_size, then.codomain_size, tuple(then.table[v] for v in self.table)
        )

    def image(self) -> list[int]:
        return sorted(set(self.table))

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.domain_size

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.codomain_size


def epi_mono_factor(f: FinFunction) -> tuple[FinFunction, FinFunction]:
    """Factor f = m . e with e surjective and m injective.

    Image elements are numbered by first occurrence in the table, so the
    factorization is canonical.
    """
    index: dict[int, int] = {}
    e_table = []
    for value in f.table:
        if value not in index:
            index[value] = len(index)
        e_table.append(index[value])
    m_table = [0] * len(index)
    for value, position in index.items():
        m_table[position] = value
    e = FinFunction(f.domain_size, len(index), tuple(e_table))
    m = FinFunction(len(index), f.codomain_size, tuple(m_table))
    return e, m


@dataclass(frozen=True)
class FinCospan:
    """A pair of functions X -> N <- Y into a shared apex."""

    left: FinFunction
    right: FinFunction

    def __post_init__(self):
        if self.left.codomain_size != self.right.codomain_size:
            raise ValueError("cospan legs must share their codomain")

    @property
    def apex_size(self) -> int:
        return self.left.codomain_size

    @property
    def left_size(self) -> int:
        return self.left.domain_size

    @property
    def right_size(self) -> int:
        return self.right.domain_size

    @staticmethod
    def identity(n: int) -> "FinCospan":
        return FinCospan(FinFunction.identity(n), FinFunction.identity(n))

    def converse(self) -> "FinCospan":
        return FinCospan(self.right, self.left)


def compose_cospans(a: FinCospan, b: FinCospan) -> FinCospan:
    """Pushout composition of a: X -> Y and b: Y -> Z.

    Glues apex(a) + apex(b) by o_a(y) ~ i_b(y) for every shared boundary
    point y; the glued apex is numbered by first occurrence.  Returns the
    maps through the quotient together with the injection data needed by
    callers that relabel decorations.
    """
    cospan, _, _ = pushout_composition(a, b)
    return cospan


def pushout_composition(
    a: FinCospan, b: FinCospan
) -> tuple[FinCospan, FinFunction, FinFunction]:
    if a.right_size != b.left_size:
        raise ValueError(
            f"shared boundary mismatch: {a.right_size} vs {b.left_size}"
        )
    n, m = a.apex_size, b.apex_size
    uf = UnionFind(n + m)
    for y in range(a.right_size):
        uf.union(a.right(y), n + b.left(y))
    labels, count = uf.canonical_labels()
    inject_a = FinFunction(n, count, tuple(labels[:n]))
    inject_b = FinFunction(m, count, tuple(labels[n:]))
    composite = FinCospan(a.left.compose(inject_a), b.right.compose(inject_b))
    return composite, inject_a, inject_b


def tensor_cospans(a: FinCospan, b: FinCospan) -> FinCospan:
    n = a.apex_size
    left = FinFunction(
        a.left_size + b.left_size,
        n + b.apex_size,
        a.left.table + tuple(v + n for v in b.left.table),
    )
    right = FinFunction(
        a.right_size + b.right_size,
        n + b.apex_size,
        a.right.table + tuple(v + n for v in b.right.table),
    )
    return FinCospan(left, right)


@dataclass(frozen=True)
class Corelation:
    """An equivalence relation on X + Y, canonically labelled.

    ``class_of`` lists the block id of each element of X + Y (X first),
    block ids numbered by first occurrence.  Every block id in
    0..num_classes-1 occurs.
    """

    left_size: int
    right_size: int
    class_of: tuple[int, ...]
    num_classes: int

    def __post_init__(self):
        if len(self.class_of) != self.left_size + self.right_size:
            raise ValueError("partition must cover X + Y")
        seen: dict[int, int] = {}
        for block in self.class_of:
            if block not in seen:
                if block != len(seen):
                    raise ValueError("blocks must be numbered by first occurrence")
                seen[block] = len(seen)
        if len(seen) != self.num_classes:
            raise ValueError("num_classes does not match the labelling")

    @staticmethod
    def from_labels(left_size: int, right_size: int, labels: Sequence[int]) -> "Corelation":
        mapping: dict[int, int] = {}
        canonical = []
        for label in labels:
            if label not in mapping:
                mapping[label] = len(mapping)
            canonical.append(mapping[label])
        return Corelation(left_size, right_size, tuple(canonical), len(mapping))

    @staticmethod
    def from_blocks(
        left_size: int, right_size: int, blocks: Iterable[Iterable[int]]
    ) -> "Corelation":
        """Build from explicit blocks over 0..X+Y-1 (must be a partition)."""
        labels = [-1] * (left_size + right_size)
        for i, block in enumerate(blocks):
            for element in block:
                if labels[element] != -1:
                    raise ValueError("blocks overlap")
                labels[element] = i
        if any(label == -1 for label in labels):
            raise ValueError("blocks must cover X + Y")
        return Corelation.from_labels(left_size, right_size, labels)

    @staticmethod
    def identity(n: int) -> "Corelation":
        labels = list(range(n)) * 2
        return Corelation.from_labels(n, n, labels)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for element, block in enumerate(self.class_of):
            out[block].append(element)
        return out

    def converse(self) -> "Corelation":
        labels = list(self.class_of[self.left_size :]) + list(
            self.class_of[: self.left_size]
        )
        return Corelation.from_labels(self.right_size, self.left_size, labels)


def cospan_to_corelation(c: FinCospan) -> Corelation:
    """Partition of X + Y induced by the copairing [left, right]: X+Y -> N.

    Apex elements hit by neither leg leave no block (the extra law).
    """
    labels = list(c.left.table) + list(c.right.table)
    return Corelation.from_labels(c.left_size, c.right_size, labels)


def compose_corelations(a: Corelation, b: Corelation) -> Corelation:
    """Transitive closure across the shared boundary, then restrict to X + Z.

    Blocks that end up meeting only the glued Y vanish.
    """
    if a.right_size != b.left_size:
        raise ValueError(
            f"shared boundary mismatch: {a.right_size} vs {b.left_size}"
        )
    x, y, z = a.left_size, a.right_size, b.right_size
    # elements: X | Y | Z
    uf = UnionFind(x + y + z)
    reps_a: dict[int, int] = {}
    for element in range(x + y):
        block = a.class_of[element]
        if block in reps_a:
            uf.union(reps_a[block], element)
        else:
            reps_a[block] = element
    reps_b: dict[int, int] = {}
    for element in range(y + z):
        block = b.class_of[element]
        shifted = element + x
        if block in reps_b:
            uf.union(reps_b[block], shifted)
        else:
            reps_b[block] = shifted
    labels = [uf.find(e) for e in list(range(x)) + list(range(x + y, x + y + z))]
    return Corelation.from_labels(x, z, labels)


def tensor_corelations(a: Corelation, b: Corelation) -> Corelation:
    x1, y1 = a.left_size, a.right_size
    x2, y2 = b.left_size, b.right_size
    labels = [0] * (x1 + x2 + y1 + y2)
    shift = a.num_classes
    for i in range(x1):
        labels[i] = a.class_of[i]
    for i in range(x2):
        labels[x1 + i] = b.class_of[i] + shift
    for j in range(y1):
        labels[x1 + x2 + j] = a.class_of[x1 + j]
    for j in range(y2):
        labels[x1 + x2 + y1 + j] = b.class_of[x2 + j] + shift
    return Corelation.from_labels(x1 + x2, y1 + y2, labels)


GENERATOR_KINDS = ("id", "swap", "mult", "unit", "comult", "counit", "cup", "cap")


def corel_generator(kind: str, n: int = 1, m: int = 1) -> Corelation:
    """The named Frobenius/compact generator as a corelation.

    Arities on the object n: id n -> n, mult 2n -> n, unit 0 -> n,
    comult n -> 2n, counit n -> 0, cup 0 -> 2n, cap 2n -> 0, and
    swap (n, m): n+m -> m+n.
    """
    if kind == "id":
        return Corelation.identity(n)
    if kind == "swap":
        labels = list(range(n + m)) + list(range(n, n + m)) + list(range(n))
        return Corelation.from_labels(n + m, m + n, labels)
    if kind == "mult":
        labels = list(range(n)) * 3
        return Corelation.from_labels(2 * n, n, labels)
    if kind == "unit":
        return Corelation.from_labels(0, n, list(range(n)))
    if kind == "comult":
        labels = list(range(n)) * 3
        return Corelation.from_labels(n, 2 * n, labels)
    if kind == "counit":
        return Corelation.from_labels(n, 0, list(range(n)))
    if kind == "cup":
        return Corelation.from_labels(0, 2 * n, list(range(n)) * 2)
    if kind == "cap":
        return Corelation.from_labels(2 * n, 0, list(range(n)) * 2)
    raise ValueError(f"unknown generator kind {kind!r}")


def empty_corelation() -> Corelation:
    """The unique corelation 0 -> 0 with no blocks."""
    return Corelation(0, 0, (), 0)
