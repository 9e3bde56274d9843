"""Lagrangian relations over F^X + (F^X)*: black-boxed circuit behaviours.

The state space of a boundary set X is the standard symplectic space
S(X) = F^X + (F^X)*, potentials then currents, with
omega((phi, i), (phi', i')) = i'(phi) - i(phi').  A relation S(X) -> S(Y)
is a Lagrangian subspace of the conjugated sum: internally every relation
is stored over the fixed coordinate order (phi_X.., phi_Y.., i_X.., i_Y..)
and the conjugation of the domain is a sign in the omega evaluation, not a
data change.

Composition is plain relational composition (intersect with the matching
constraints, then project).  Currents are recorded flowing *through*: the
domain-side conjugation means that what leaves one relation enters the
next, which is the same physics as requiring outward currents of glued
parts to cancel (i + i' = 0) when both are recorded outward.

``black_box`` sends an open circuit to its behaviour two ways: the oracle
route pairs the graph of the extended power functional with the
symplectified boundary corelation; the fast route minimizes the Dirichlet
form onto the boundary first.  The two agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import OpenCircuit, boundary
from .dirichlet import DirichletForm, extended_power, power_functional
from .finset import Corelation, FinCospan, FinFunction, cospan_to_corelation
from .scalars import Field, QQ


@dataclass(frozen=True)
class Subspace:
    """A linear subspace as a reduced-row-echelon basis matrix.

    Rows are basis vectors; pivot columns strictly increase and every
    pivot is 1 with zeros above and below, so equal subspaces have equal
    representations.
    """

    field: Field
    ambient_dim: int
    basis: tuple[tuple[object, ...], ...]

    @staticmethod
    def span(field: Field, ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        reduced = _rref(field, [list(r) for r in rows], ambient_dim)
        return Subspace(field, ambient_dim, reduced)

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, ())

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        rows = []
        for k in range(ambient_dim):
            row = [field.zero] * ambient_dim
            row[k] = field.one
            rows.append(tuple(row))
        return Subspace(field, ambient_dim, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise ValueError("vector has wrong length")
        zero = self.field.zero
        residue = list(vector)
        for row in self.basis:
            pivot = _pivot_column(row, zero)
            if residue[pivot] != zero:
                factor = residue[pivot]
                residue = [a - factor * b for a, b in zip(residue, row)]
        return all(v == zero for v in residue)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        constraints = list(self.constraints().basis) + list(other.constraints().basis)
        return kernel_of_matrix(self.field, constraints, self.ambient_dim)

    def add(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.span(
            self.field, self.ambient_dim, list(self.basis) + list(other.basis)
        )

    def constraints(self) -> "Subspace":
        """The annihilator: functionals vanishing on this subspace."""
        return kernel_of_matrix(self.field, self.basis, self.ambient_dim)

    def project(self, columns: Sequence[int]) -> "Subspace":
        """Image under selection of the given coordinates."""
        rows = [[row[c] for c in columns] for row in self.basis]
        return Subspace.span(self.field, len(columns), rows)

    def map_columns(self, transform) -> "Subspace":
        """Image under a columnwise linear recombination given as a callable
        row -> new row (must be linear for the result to be a subspace)."""
        return Subspace.span(
            self.field, self.ambient_dim, [transform(list(row)) for row in self.basis]
        )

    def _check_compatible(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("subspaces live in different ambient spaces")


def _pivot_column(row, zero) -> int:
    for k, value in enumerate(row):
        if value != zero:
            return k
    raise ValueError("zero row in basis")


def _rref(field: Field, rows: list[list], width: int) -> tuple[tuple, ...]:
    zero, one = field.zero, field.one
    matrix = [list(r) for r in rows]
    for row in matrix:
        if len(row) != width:
            raise ValueError("row has wrong length")
    pivot_rows: list[list] = []
    for col in range(width):
        sel = None
        for r, row in enumerate(matrix):
            if row[col] != zero:
                sel = r
                break
        if sel is None:
            continue
        pivot_row = matrix.pop(sel)
        inv = one / pivot_row[col]
        if inv != one:
            pivot_row = [v * inv for v in pivot_row]
        for r, row in enumerate(matrix):
            if row[col] != zero:
                factor = row[col]
                matrix[r] = [a - factor * b for a, b in zip(row, pivot_row)]
        for r, row in enumerate(pivot_rows):
            if row[col] != zero:
                factor = row[col]
                pivot_rows[r] = [a - factor * b for a, b in zip(row, pivot_row)]
        pivot_rows.append(pivot_row)
        matrix = [row for row in matrix if any(v != zero for v in row)]
        if not matrix:
            break
    pivot_rows.sort(key=lambda row: _pivot_column(row, zero))
    return tuple(tuple(row) for row in pivot_rows)


def kernel_of_matrix(field: Field, rows: Sequence[Sequence], width: int) -> Subspace:
    """Null space {x : A x = 0} of a matrix given by rows."""
    zero, one = field.zero, field.one
    reduced = _rref(field, [list(r) for r in rows], width)
    pivots = [_pivot_column(row, zero) for row in reduced]
    pivot_set = set(pivots)
    free = [c for c in range(width) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [zero] * width
        vec[f] = one
        for row, p in zip(reduced, pivots):
            if row[f] != zero:
                vec[p] = -row[f]
        basis.append(vec)
    return Subspace.span(field, width, basis)


def image_of_matrix(field: Field, rows: Sequence[Sequence], width: int) -> Subspace:
    """Column space of a matrix given by rows, as a subspace of F^rows."""
    height = len(rows)
    columns = [[rows[r][c] for r in range(height)] for c in range(width)]
    return Subspace.span(field, height, columns)


@dataclass(frozen=True)
class SymplecticSpace:
    """F^n + (F^n)* with coordinates (phi_1..phi_n, i_1..i_n).

    ``sign`` is +1 for the standard form i'(phi) - i(phi'), -1 for the
    conjugate.
    """

    field: Field
    n: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def conjugate(self) -> "SymplecticSpace":
        return SymplecticSpace(self.field, self.n, -self.sign)

    def omega(self, u: Sequence, v: Sequence):
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("vectors must have length 2n")
        total = self.field.zero
        n = self.n
        for k in range(n):
            total = total + u[k] * v[n + k] - u[n + k] * v[k]
        return total if self.sign == 1 else -total


def _relation_omega_pairs(
    dom: SymplecticSpace, cod: SymplecticSpace
) -> list[tuple[int, int, int]]:
    """(phi_index, current_index, sign) triples of the conjugated-sum form.

    Coordinates are (phi_X.., phi_Y.., i_X.., i_Y..); the domain block
    enters conjugated, so its own sign is flipped.
    """
    total = dom.n + cod.n
    pairs = []
    for k in range(dom.n):
        pairs.append((k, total + k, -dom.sign))
    for k in range(cod.n):
        pairs.append((dom.n + k, total + dom.n + k, cod.sign))
    return pairs


def _omega_eval(pairs, u: Sequence, v: Sequence, zero):
    total = zero
    for p, c, sign in pairs:
        term = u[p] * v[c] - u[c] * v[p]
        total = total + (term if sign == 1 else -term)
    return total


def symplectic_complement(space: Subspace, sym: SymplecticSpace) -> Subspace:
    """S° = {v : omega(v, s) = 0 for all s in S}."""
    if space.ambient_dim != sym.dim:
        raise ValueError("subspace does not live in the symplectic space")
    n = sym.n
    zero = space.field.zero
    constraint_rows = []
    for row in space.basis:
        # omega(v, row) = sum_k v_phi[k] row_i[k] - v_i[k] row_phi[k]
        coeffs = [zero] * sym.dim
        for k in range(n):
            coeffs[k] = row[n + k] if sym.sign == 1 else -row[n + k]
            coeffs[n + k] = -row[k] if sym.sign == 1 else row[k]
        constraint_rows.append(coeffs)
    return kernel_of_matrix(space.field, constraint_rows, sym.dim)


def is_lagrangian(space: Subspace, sym: SymplecticSpace) -> bool:
    """Isotropic of dimension n, checked on all basis pairs."""
    if space.ambient_dim != sym.dim:
        raise ValueError("subspace does not live in the symplectic space")
    if space.dim != sym.n:
        return False
    zero = space.field.zero
    basis = space.basis
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if sym.omega(basis[a], basis[b]) != zero:
                return False
    return True


@dataclass(frozen=True)
class LagrangianRelation:
    """A Lagrangian subspace of conj(dom) + cod.

    The subspace lives over the coordinates
    (phi_X.., phi_Y.., i_X.., i_Y..) with X the domain boundary.  The
    endpoints carry their own signs, so symplectomorphisms onto conjugate
    spaces (the current twist) are first-class relations.
    """

    field: Field
    dom: SymplecticSpace
    cod: SymplecticSpace
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != 2 * (self.dom.n + self.cod.n):
            raise ValueError("relation subspace has wrong ambient dimension")

    @property
    def dom_n(self) -> int:
        return self.dom.n

    @property
    def cod_n(self) -> int:
        return self.cod.n

    def is_lagrangian(self) -> bool:
        if self.space.dim != self.dom.n + self.cod.n:
            return False
        zero = self.field.zero
        pairs = _relation_omega_pairs(self.dom, self.cod)
        basis = self.space.basis
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                if _omega_eval(pairs, basis[a], basis[b], zero) != zero:
                    return False
        return True

    def converse(self) -> "LagrangianRelation":
        """The same wires read from the other side (the dagger)."""
        x, y = self.dom.n, self.cod.n

        def flip(row):
            phi_x = row[:x]
            phi_y = row[x : x + y]
            i_x = row[x + y : x + y + x]
            i_y = row[x + y + x :]
            return list(phi_y) + list(phi_x) + list(i_y) + list(i_x)

        return LagrangianRelation(
            self.field,
            self.cod,
            self.dom,
            Subspace.span(self.field, 2 * (x + y), [flip(list(r)) for r in self.space.basis]),
        )


def identity_relation(n: int, field: Field = QQ) -> LagrangianRelation:
    zero, one = field.zero, field.one
    rows = []
    for k in range(n):
        row = [zero] * (4 * n)
        row[k] = one
        row[n + k] = one
        rows.append(row)
    for k in range(n):
        row = [zero] * (4 * n)
        row[2 * n + k] = one
        row[3 * n + k] = one
        rows.append(row)
    space = SymplecticSpace(field, n)
    return LagrangianRelation(field, space, space, Subspace.span(field, 4 * n, rows))


def twist(n: int, field: Field = QQ, conjugated_domain: bool = False) -> LagrangianRelation:
    """The sign-flip symplectomorphism (phi, i) -> (phi, -i) as a relation.

    It lands in the conjugate of its domain; composing two of them (the
    second read off the conjugate side) gives the identity.
    """
    zero, one = field.zero, field.one
    rows = []
    for k in range(n):
        row = [zero] * (4 * n)
        row[k] = one
        row[n + k] = one
        rows.append(row)
    for k in range(n):
        row = [zero] * (4 * n)
        row[2 * n + k] = one
        row[3 * n + k] = -one
        rows.append(row)
    sign = -1 if conjugated_domain else 1
    return LagrangianRelation(
        field,
        SymplecticSpace(field, n, sign),
        SymplecticSpace(field, n, -sign),
        Subspace.span(field, 4 * n, rows),
    )


def compose_lagrangian(
    first: LagrangianRelation, second: LagrangianRelation
) -> LagrangianRelation:
    """Relational composite {(u, w) | exists v}: intersect then project."""
    if first.cod != second.dom:
        raise ValueError("relations are not composable")
    if first.field != second.field:
        raise ValueError("relations must share a scalar field")
    field = first.field
    u, v, w = first.dom_n, first.cod_n, second.cod_n
    # big coordinates: (phi_U, phi_V, phi_W, i_U, i_V, i_W)
    width = 2 * (u + v + w)
    phi_u = list(range(u))
    phi_v = list(range(u, u + v))
    phi_w = list(range(u + v, u + v + w))
    i_u = list(range(u + v + w, u + v + w + u))
    i_v = list(range(u + v + w + u, u + v + w + u + v))
    i_w = list(range(u + v + w + u + v, width))
    first_coords = phi_u + phi_v + i_u + i_v
    second_coords = phi_v + phi_w + i_v + i_w
    constraint_rows = []
    zero = field.zero
    for functional in first.space.constraints().basis:
        row = [zero] * width
        for value, position in zip(functional, first_coords):
            row[position] = row[position] + value
        constraint_rows.append(row)
    for functional in second.space.constraints().basis:
        row = [zero] * width
        for value, position in zip(functional, second_coords):
            row[position] = row[position] + value
        constraint_rows.append(row)
    meet = kernel_of_matrix(field, constraint_rows, width)
    space = meet.project(phi_u + phi_w + i_u + i_w)
    return LagrangianRelation(field, first.dom, second.cod, space)


def tensor_lagrangian(
    a: LagrangianRelation, b: LagrangianRelation
) -> LagrangianRelation:
    """Direct sum, reshuffled into the internal coordinate order."""
    if a.field != b.field:
        raise ValueError("relations must share a scalar field")
    if a.dom.sign != b.dom.sign or a.cod.sign != b.cod.sign:
        raise ValueError("tensor requires matching conjugation on each side")
    field = a.field
    x1, y1, x2, y2 = a.dom_n, a.cod_n, b.dom_n, b.cod_n
    width = 2 * (x1 + x2 + y1 + y2)
    zero = field.zero
    rows = []

    def embed(row, xs, ys, x_off, y_off):
        out = [zero] * width
        for k in range(xs):
            out[x_off + k] = row[k]
            out[x1 + x2 + y1 + y2 + x_off + k] = row[xs + ys + k]
        for k in range(ys):
            out[x1 + x2 + y_off + k] = row[xs + k]
            out[x1 + x2 + y1 + y2 + x1 + x2 + y_off + k] = row[xs + ys + xs + k]
        return out

    for row in a.space.basis:
        rows.append(embed(list(row), x1, y1, 0, 0))
    for row in b.space.basis:
        rows.append(embed(list(row), x2, y2, x1, y1))
    return LagrangianRelation(
        field,
        SymplecticSpace(field, x1 + x2, a.dom.sign),
        SymplecticSpace(field, y1 + y2, a.cod.sign),
        Subspace.span(field, width, rows),
    )


def graph_of_dQ(q: DirichletForm) -> Subspace:
    """Graph of the formal differential: {(phi, dQ_phi)} in S(N)."""
    field = q.field
    n = q.size
    zero, one = field.zero, field.one
    rows = []
    for k in range(n):
        unit = [zero] * n
        unit[k] = one
        rows.append(unit + q.gradient(unit))
    return Subspace.span(field, 2 * n, rows)


def symplectify(e: Corelation, field: Field = QQ) -> LagrangianRelation:
    """Ideal wires: potentials constant per block, currents summing per block.

    For each block the currents entering from the domain side equal the
    currents leaving on the codomain side.
    """
    x, y = e.left_size, e.right_size
    width = 2 * (x + y)
    zero, one = field.zero, field.one
    rows = []
    blocks = e.blocks()
    for block in blocks:
        row = [zero] * width
        for element in block:
            row[element] = one
        rows.append(row)
    for block in blocks:
        leader = block[0]
        leader_sign = one if leader < x else -one
        for element in block[1:]:
            sign = one if element < x else -one
            row = [zero] * width
            row[x + y + element] = one
            row[x + y + leader] = -sign / leader_sign
            rows.append(row)
    return LagrangianRelation(
        field,
        SymplecticSpace(field, x),
        SymplecticSpace(field, y),
        Subspace.span(field, width, rows),
    )


def apply_relation(rel: LagrangianRelation, sub: Subspace) -> Subspace:
    """Relational image of a subspace of S(dom) under a relation.

    This is how a decoration travels along ideal wires: the result is
    again Lagrangian when the input is.
    """
    a, b = rel.dom_n, rel.cod_n
    if sub.ambient_dim != 2 * a:
        raise ValueError("subspace does not match the relation's domain")
    field = rel.field
    width = 2 * (a + b)
    zero = field.zero
    phi_a = list(range(a))
    phi_b = list(range(a, a + b))
    i_a = list(range(a + b, a + b + a))
    i_b = list(range(a + b + a, width))
    constraint_rows = []
    for functional in sub.constraints().basis:
        row = [zero] * width
        for value, position in zip(functional, phi_a + i_a):
            row[position] = row[position] + value
        constraint_rows.append(row)
    for functional in rel.space.constraints().basis:
        constraint_rows.append(list(functional))
    meet = kernel_of_matrix(field, constraint_rows, width)
    return meet.project(phi_b + i_b)


def _negate_block(space: Subspace, columns: Sequence[int]) -> Subspace:
    column_set = set(columns)

    def flip(row):
        return [-v if c in column_set else v for c, v in enumerate(row)]

    return space.map_columns(flip)


def _boundary_corelation(cospan: FinCospan) -> Corelation:
    """The apex read toward X + Y: one block per reachable node."""
    apex = cospan.apex_size
    legs = FinCospan(
        FinFunction.identity(apex),
        FinFunction(
            cospan.left_size + cospan.right_size,
            apex,
            cospan.left.table + cospan.right.table,
        ),
    )
    return cospan_to_corelation(legs)


def black_box(c: OpenCircuit, method: str = "fast") -> LagrangianRelation:
    """The behaviour of an open circuit as a Lagrangian relation.

    ``oracle`` pairs the graph of the extended power functional on all
    nodes with the symplectification of the whole boundary corelation;
    ``fast`` first minimizes the power functional onto the terminals.
    Both finish by flipping the domain-side current signs so composition
    is plain relational composition.
    """
    x, y = c.num_inputs, c.num_outputs
    if method == "oracle":
        decorated = graph_of_dQ(extended_power(c))
        wires = symplectify(_boundary_corelation(c.cospan), c.field)
    elif method == "fast":
        nodes = boundary(c)
        position = {node: k for k, node in enumerate(nodes)}
        decorated = graph_of_dQ(power_functional(c))
        restricted = FinCospan(
            FinFunction.identity(len(nodes)),
            FinFunction(
                x + y,
                len(nodes),
                tuple(
                    position[v] for v in c.cospan.left.table + c.cospan.right.table
                ),
            ),
        )
        wires = symplectify(cospan_to_corelation(restricted), c.field)
    else:
        raise ValueError(f"unknown black-box method {method!r}")
    on_boundary = apply_relation(wires, decorated)
    # conjugate the input side: currents at inputs are recorded flowing in
    current_x = [x + y + k for k in range(x)]
    space = _negate_block(on_boundary, current_x)
    return LagrangianRelation(
        c.field,
        SymplecticSpace(c.field, x),
        SymplecticSpace(c.field, y),
        space,
    )
