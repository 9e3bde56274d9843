"""Matrices over Q[s, s^-1]: Smith normal form, cospans, behaviours, control.

A morphism m -> n is an n x m matrix of Laurent polynomials.  The ring is a
Euclidean domain (degree = spread between top and bottom exponent), so every
matrix has a Smith normal form M = U D V with U, V invertible and the
diagonal divisibility-ordered; everything else here is built on that:

* epi/split-mono factorization, and the jointly-epic reduction of cospans;
* pushout composition of cospans, with torsion killed by saturating the
  glued image (the categorical pushout among free modules);
* behaviour inclusion ker(theta M) <= ker(theta N) decided by solving
  X M = N over the ring;
* kernels (pullback spans) and the controllability test.

Behaviours are LTI systems on biinfinite streams, but streams are never
materialized: a behaviour is always carried as a finite kernel
representation [A -B].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .scalars import LaurentPoly

_L0 = LaurentPoly()
_L1 = LaurentPoly.constant(1)


@dataclass(frozen=True)
class PolyMatrix:
    """A rows x cols matrix of Laurent polynomials.

    As a morphism of free modules this is a map F^cols -> F^rows; the
    prop convention is that an arrow m -> n is an n x m matrix.
    """

    rows: int
    cols: int
    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError("entry grid does not match the declared shape")

    @staticmethod
    def from_lists(rows: Sequence[Sequence]) -> "PolyMatrix":
        data = tuple(
            tuple(e if isinstance(e, LaurentPoly) else LaurentPoly.constant(e) for e in row)
            for row in rows
        )
        height = len(data)
        width = len(data[0]) if data else 0
        return PolyMatrix(height, width, data)

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix(
            n, n, tuple(tuple(_L1 if i == j else _L0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "PolyMatrix":
        return PolyMatrix(rows, cols, tuple(tuple(_L0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, pos: tuple[int, int]) -> LaurentPoly:
        return self.entries[pos[0]][pos[1]]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = _L0
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, tuple(out))

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return PolyMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def neg(self) -> "PolyMatrix":
        return PolyMatrix(
            self.rows, self.cols, tuple(tuple(-e for e in row) for row in self.entries)
        )

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return PolyMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(ra + rb for ra, rb in zip(self.entries, other.entries)),
        )

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return PolyMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_diag(self, other: "PolyMatrix") -> "PolyMatrix":
        top = self.hstack(PolyMatrix.zeros(self.rows, other.cols))
        bottom = PolyMatrix.zeros(other.rows, self.cols).hstack(other)
        return top.vstack(bottom)

    def take_rows(self, indices: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            len(indices), self.cols, tuple(self.entries[i] for i in indices)
        )

    def take_cols(self, indices: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.rows,
            len(indices),
            tuple(tuple(row[j] for j in indices) for row in self.entries),
        )

    def __str__(self) -> str:
        cells = [[str(e) for e in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(
            "[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells
        )


@dataclass(frozen=True)
class SnfResult:
    """M = u . d . v with u, v invertible; inverses carried along."""

    u: PolyMatrix
    d: PolyMatrix
    v: PolyMatrix
    u_inv: PolyMatrix
    v_inv: PolyMatrix
    rank: int

    @property
    def diagonal(self) -> list[LaurentPoly]:
        return [self.d.entries[i][i] for i in range(min(self.d.rows, self.d.cols))]


class _Eliminator:
    """Mutable SNF working state: D with row/col operations mirrored into
    the invertible factors and their inverses."""

    def __init__(self, m: PolyMatrix):
        self.d = [list(row) for row in m.entries]
        self.rows = m.rows
        self.cols = m.cols
        self.u = [list(row) for row in PolyMatrix.identity(m.rows).entries]
        self.u_inv = [list(row) for row in PolyMatrix.identity(m.rows).entries]
        self.v = [list(row) for row in PolyMatrix.identity(m.cols).entries]
        self.v_inv = [list(row) for row in PolyMatrix.identity(m.cols).entries]

    # D' = E D with E elementary: U absorbs E^-1 on the right, U_inv = E U_inv

    def swap_rows(self, a: int, b: int):
        if a == b:
            return
        self.d[a], self.d[b] = self.d[b], self.d[a]
        self.u_inv[a], self.u_inv[b] = self.u_inv[b], self.u_inv[a]
        for row in self.u:
            row[a], row[b] = row[b], row[a]

    def add_row(self, src: int, dst: int, factor: LaurentPoly):
        """row_dst += factor * row_src."""
        if factor.is_zero():
            return
        self.d[dst] = [a + factor * b for a, b in zip(self.d[dst], self.d[src])]
        self.u_inv[dst] = [
            a + factor * b for a, b in zip(self.u_inv[dst], self.u_inv[src])
        ]
        for row in self.u:
            row[src] = row[src] - factor * row[dst]

    def scale_row(self, idx: int, unit: LaurentPoly):
        inv = unit.unit_inverse()
        self.d[idx] = [unit * e for e in self.d[idx]]
        self.u_inv[idx] = [unit * e for e in self.u_inv[idx]]
        for row in self.u:
            row[idx] = row[idx] * inv

    def swap_cols(self, a: int, b: int):
        if a == b:
            return
        for row in self.d:
            row[a], row[b] = row[b], row[a]
        for row in self.v_inv:
            row[a], row[b] = row[b], row[a]
        self.v[a], self.v[b] = self.v[b], self.v[a]

    def add_col(self, src: int, dst: int, factor: LaurentPoly):
        """col_dst += factor * col_src."""
        if factor.is_zero():
            return
        for row in self.d:
            row[dst] = row[dst] + factor * row[src]
        for row in self.v_inv:
            row[dst] = row[dst] + factor * row[src]
        self.v[src] = [a - factor * b for a, b in zip(self.v[src], self.v[dst])]

    def result(self) -> SnfResult:
        rank = 0
        size = min(self.rows, self.cols)
        while rank < size and not self.d[rank][rank].is_zero():
            rank += 1
        return SnfResult(
            u=PolyMatrix(self.rows, self.rows, tuple(tuple(r) for r in self.u)),
            d=PolyMatrix(self.rows, self.cols, tuple(tuple(r) for r in self.d)),
            v=PolyMatrix(self.cols, self.cols, tuple(tuple(r) for r in self.v)),
            u_inv=PolyMatrix(self.rows, self.rows, tuple(tuple(r) for r in self.u_inv)),
            v_inv=PolyMatrix(self.cols, self.cols, tuple(tuple(r) for r in self.v_inv)),
            rank=rank,
        )


def snf(m: PolyMatrix) -> SnfResult:
    """Smith normal form over Q[s, s^-1].

    Pivots are chosen with minimal degree spread (ties broken by position),
    which makes the computation terminate and reproducible.  Diagonal
    entries are canonicalized to offset 0 with leading coefficient 1 and
    ordered by divisibility.
    """
    work = _Eliminator(m)
    pos = 0
    size = min(m.rows, m.cols)
    while pos < size:
        pivot = _find_pivot(work, pos)
        if pivot is None:
            break
        work.swap_rows(pos, pivot[0])
        work.swap_cols(pos, pivot[1])
        while True:
            if _reduce_once(work, pos):
                continue
            offender = _divisibility_offender(work, pos)
            if offender is None:
                break
            work.add_row(offender, pos, _L1)
        pos += 1
    for k in range(size):
        entry = work.d[k][k]
        if entry.is_zero():
            break
        unit, _ = entry.canonical()
        if not unit.is_one():
            work.scale_row(k, unit.unit_inverse())
    return work.result()


def _find_pivot(work: _Eliminator, pos: int):
    best = None
    best_spread = None
    for i in range(pos, work.rows):
        for j in range(pos, work.cols):
            e = work.d[i][j]
            if e.is_zero():
                continue
            if best_spread is None or e.deg_spread < best_spread:
                best, best_spread = (i, j), e.deg_spread
                if best_spread == 0:
                    return best
    return best


def _reduce_once(work: _Eliminator, pos: int) -> bool:
    """One pass clearing the pivot row and column; True if the pivot moved."""
    pivot = work.d[pos][pos]
    for i in range(pos + 1, work.rows):
        e = work.d[i][pos]
        if e.is_zero():
            continue
        q, r = divmod(e, pivot)
        work.add_row(pos, i, -q)
        if not r.is_zero():
            work.swap_rows(pos, i)
            return True
    for j in range(pos + 1, work.cols):
        e = work.d[pos][j]
        if e.is_zero():
            continue
        q, r = divmod(e, pivot)
        work.add_col(pos, j, -q)
        if not r.is_zero():
            work.swap_cols(pos, j)
            return True
    return False


def _divisibility_offender(work: _Eliminator, pos: int):
    pivot = work.d[pos][pos]
    if pivot.is_unit():
        return None
    for i in range(pos + 1, work.rows):
        for j in range(pos + 1, work.cols):
            if not pivot.divides(work.d[i][j]):
                return i
    return None


def epi_split_mono_factor(m: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """Factor m = mono . epi with epi of full row rank and mono split.

    Built from the Smith normal form: keep the full-rank part of the
    diagonal with the column factor as the epi, the first rank columns of
    the row factor as the split mono.
    """
    decomposition = snf(m)
    r = decomposition.rank
    epi = decomposition.d.take_rows(range(r)).mul(decomposition.v)
    mono = decomposition.u.take_cols(range(r))
    return epi, mono


def kernel_basis(m: PolyMatrix) -> PolyMatrix:
    """Columns spanning ker(m) as a free module (cols x nullity matrix).

    With M = U D V of rank r, the kernel is V^-1 applied to the last
    cols - r coordinate axes.
    """
    decomposition = snf(m)
    return decomposition.v_inv.take_cols(range(decomposition.rank, m.cols))


def solve_left(m: PolyMatrix, target: PolyMatrix):
    """A matrix x with x . m = target over the ring, or None.

    Writing m = U D V, the equation becomes (x U) D = target V^-1, which
    is a divisibility condition columnwise.
    """
    if m.cols != target.cols:
        raise ValueError("column mismatch in solve_left")
    decomposition = snf(m)
    transformed = target.mul(decomposition.v_inv)
    r = decomposition.rank
    rows = []
    for i in range(target.rows):
        row = []
        for j in range(m.rows):
            if j < r:
                d = decomposition.d.entries[j][j]
                entry = transformed.entries[i][j]
                q, rem = divmod(entry, d)
                if not rem.is_zero():
                    return None
                row.append(q)
            else:
                row.append(_L0)
        rows.append(tuple(row))
    for j in range(r, m.cols):
        for i in range(target.rows):
            if not transformed.entries[i][j].is_zero():
                return None
    y = PolyMatrix(target.rows, m.rows, tuple(rows))
    return y.mul(decomposition.u_inv)


@dataclass(frozen=True)
class MatCospan:
    """A cospan m -> d <- n of Laurent-polynomial matrices."""

    left: PolyMatrix
    right: PolyMatrix

    def __post_init__(self):
        if self.left.rows != self.right.rows:
            raise ValueError("cospan legs must share their codomain")

    @property
    def dom(self) -> int:
        return self.left.cols

    @property
    def cod(self) -> int:
        return self.right.cols

    @property
    def apex(self) -> int:
        return self.left.rows

    @staticmethod
    def identity(n: int) -> "MatCospan":
        eye = PolyMatrix.identity(n)
        return MatCospan(eye, eye)

    def converse(self) -> "MatCospan":
        return MatCospan(self.right, self.left)


def compose_mat_cospans(a: MatCospan, b: MatCospan) -> MatCospan:
    """Pushout composition in the category of free modules.

    The glue matrix K = [B1; -A2] is quotiented out along with its
    saturation (torsion must die for the quotient to stay free): with
    SNF K = U D V of rank r, the projection onto the pushout is the last
    d1 + d2 - r rows of U^-1.
    """
    if a.cod != b.dom:
        raise ValueError("cospan feet do not match")
    d1, d2 = a.apex, b.apex
    glue = a.right.vstack(b.left.neg())
    decomposition = snf(glue)
    keep = range(decomposition.rank, d1 + d2)
    projection = decomposition.u_inv.take_rows(keep)
    left = projection.take_cols(range(d1)).mul(a.left)
    right = projection.take_cols(range(d1, d1 + d2)).mul(b.right)
    return MatCospan(left, right)


def tensor_mat_cospans(a: MatCospan, b: MatCospan) -> MatCospan:
    return MatCospan(a.left.block_diag(b.left), a.right.block_diag(b.right))


def mat_corelation(c: MatCospan) -> MatCospan:
    """The jointly-epic representative: epi part of the copairing [A B]."""
    combined = c.left.hstack(c.right)
    epi, _ = epi_split_mono_factor(combined)
    return MatCospan(epi.take_cols(range(c.dom)), epi.take_cols(range(c.dom, c.dom + c.cod)))


@dataclass(frozen=True)
class BehaviourRep:
    """ker(theta [A -B]): a finite presentation of an LTI behaviour.

    ``behaviour_rep`` always produces a full-row-rank kernel matrix (the
    jointly-epic reduction); direct construction trusts the caller, since
    the inclusion test below is correct for any presentation.
    """

    m: int
    n: int
    kernel_matrix: PolyMatrix

    def __post_init__(self):
        if self.kernel_matrix.cols != self.m + self.n:
            raise ValueError("kernel matrix must have m + n columns")


def behaviour_rep(c: MatCospan) -> BehaviourRep:
    reduced = mat_corelation(c)
    return BehaviourRep(
        reduced.dom, reduced.cod, reduced.left.hstack(reduced.right.neg())
    )


def behaviour_leq(a: BehaviourRep, b: BehaviourRep) -> bool:
    """ker(theta M) <= ker(theta N) iff X M = N is solvable over the ring."""
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError("behaviours have different boundary types")
    return solve_left(a.kernel_matrix, b.kernel_matrix) is not None


def behaviour_eq(a: BehaviourRep, b: BehaviourRep) -> bool:
    return behaviour_leq(a, b) and behaviour_leq(b, a)


def cospans_equivalent(a: MatCospan, b: MatCospan) -> bool:
    """Equality of the represented behaviours."""
    return behaviour_eq(behaviour_rep(a), behaviour_rep(b))


def pullback_span(c: MatCospan) -> tuple[PolyMatrix, PolyMatrix]:
    """The pullback m <- e -> n of the cospan: a kernel computation.

    Columns of [R; S] form a basis of ker [A -B]; in particular
    A R = B S exactly.
    """
    combined = c.left.hstack(c.right.neg())
    basis = kernel_basis(combined)
    r = basis.take_rows(range(c.dom))
    s = basis.take_rows(range(c.dom, c.dom + c.cod))
    return r, s


def span_to_cospan(r: PolyMatrix, s: PolyMatrix) -> MatCospan:
    """Push out a span m <- e -> n to a cospan (the span's behaviour)."""
    if r.cols != s.cols:
        raise ValueError("span legs must share their domain")
    return compose_mat_cospans(
        MatCospan(PolyMatrix.identity(r.rows), r),
        MatCospan(s, PolyMatrix.identity(s.rows)),
    )


def controllable_part(c: MatCospan) -> tuple[PolyMatrix, PolyMatrix]:
    """The maximal controllable sub-behaviour, as a span."""
    return pullback_span(c)


def is_controllable(c: MatCospan) -> bool:
    """Controllable iff the pullback span has the same behaviour."""
    r, s = pullback_span(c)
    return cospans_equivalent(span_to_cospan(r, s), c)
