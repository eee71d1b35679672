"""Principal factors, their combinatorial band quotients, and block structure.

Each D-class yields a principal factor: the class plus a fresh zero, with
every product that escapes the class redirected to that zero.  For a regular
class the factor collapses, H-class by H-class, onto a rectangular band with
zero; the idempotent cells of that band split into maximal rectangular
blocks whose sizes decide whether a permutation matching can exist.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotOrthodoxError, NotRegularDClassError
from .green import green_classes
from .structure import idempotents, inverse_sets
from .table import BoolStructureMatrix, MulTable, rees_matrix


@dataclass(frozen=True)
class PrincipalFactor:
    """One D-class with an adjoined zero.

    element_map[i] is the original element behind factor element i; the
    zero (always the last index) has no preimage.
    """

    d_class: int
    table: MulTable
    element_map: tuple
    zero: int


def _fresh_zero_name(taken) -> str:
    name = "0"
    while name in taken:
        name += "'"
    return name


def principal_factors(table: MulTable) -> tuple:
    """Principal factor of every D-class, in D-class id order."""
    g = green_classes(table)
    prod = table.product
    out = []
    for d, members in enumerate(g.d_classes):
        index_of = {a: i for i, a in enumerate(members)}
        k = len(members)
        zero = k
        fprod = np.full((k + 1, k + 1), zero, dtype=np.intp)
        for i, a in enumerate(members):
            for j, b in enumerate(members):
                ab = int(prod[a, b])
                if g.d_class[ab] == d:
                    fprod[i, j] = index_of[ab]
        member_names = [table.element_name(a) for a in members]
        names = member_names + [_fresh_zero_name(set(member_names))]
        out.append(
            PrincipalFactor(
                d_class=d,
                table=MulTable(fprod, names),
                element_map=tuple(members),
                zero=zero,
            )
        )
    return tuple(out)


class ZeroRectBand:
    """Rectangular band with zero: the H-quotient of a regular principal factor.

    Cells are pairs (i, lam) with i an R-class position and lam an L-class
    position in the factor's egg box; h_map sends each original semigroup
    element of the D-class to its cell.
    """

    __slots__ = ("m", "n", "p", "h_map", "_table")

    def __init__(self, m: int, n: int, p: BoolStructureMatrix, h_map: dict):
        self.m = m
        self.n = n
        self.p = p
        self.h_map = h_map
        self._table = None

    @property
    def zero(self) -> int:
        return self.m * self.n

    def pair_index(self, i: int, lam: int) -> int:
        return i * self.n + lam

    def coords(self, idx: int) -> tuple:
        return divmod(idx, self.n)

    def table(self) -> MulTable:
        if self._table is None:
            self._table = rees_matrix(self.p)
        return self._table

    def __repr__(self):
        return f"ZeroRectBand(m={self.m}, n={self.n})"


def h_quotient_band(pf: PrincipalFactor) -> ZeroRectBand:
    """Collapse each H-class of the factor's nonzero part to a point.

    The quotient of a regular principal factor is a rectangular band with
    zero whose structure matrix records which cells hold an idempotent.
    Raises NotRegularDClassError when the class has no idempotent.
    """
    t = pf.table
    idems = set(idempotents(t))
    if not any(e != pf.zero for e in idems):
        raise NotRegularDClassError(
            f"D-class {pf.d_class} holds no idempotent; it has no band quotient"
        )
    g = green_classes(t)
    nz_d = g.d_class[0]
    if any(g.d_class[x] != nz_d for x in range(pf.zero)):
        raise RuntimeError("regular principal factor must be 0-simple")
    box = g.egg_boxes[nz_d]
    m, n = len(box.r_ids), len(box.l_ids)
    entries = [[False] * m for _ in range(n)]
    h_map = {}
    for i in range(m):
        for lam in range(n):
            cell = box.grid[i][lam]
            if not cell:
                raise RuntimeError("empty cell inside a single D-class egg box")
            entries[lam][i] = any(x in idems for x in cell)
            for x in cell:
                h_map[pf.element_map[x]] = (i, lam)
    return ZeroRectBand(m=m, n=n, p=BoolStructureMatrix(entries), h_map=h_map)


@dataclass(frozen=True)
class Subband:
    """A maximal rectangular block of idempotent cells in a band with zero."""

    rep: int
    members: tuple
    r_indices: tuple
    l_indices: tuple
    m: int
    n: int


@dataclass(frozen=True)
class BandDecomposition:
    """The maximal rectangular subbands of a ZeroRectBand.

    row_block and col_block send each R-position and L-position of the band
    to the index of the subband whose rows/columns cover it; phi composes
    them with h_map, giving every original D-class element its coordinate
    pair (row subband, column subband).  r_order and l_order list positions
    subband by subband, the order that displays the blocks diagonally.
    """

    subbands: tuple
    r_order: tuple
    l_order: tuple
    row_block: tuple
    col_block: tuple
    phi: dict

    def block_sizes(self) -> tuple:
        return tuple((s.m, s.n) for s in self.subbands)


def maximal_rect_subbands(zband: ZeroRectBand) -> BandDecomposition:
    """Partition the nonzero idempotent cells into maximal rectangular blocks.

    Two idempotent cells lie in one block exactly when they are mutually
    inverse, so blocks are read off the inverse sets of the band.  Requires
    the idempotents of the band to be closed under products (the orthodox
    condition at this level); otherwise NotOrthodoxError carries the first
    offending cell pair.
    """
    t = zband.table()
    zero = zband.zero
    idems = [e for e in idempotents(t) if e != zero]
    idem_or_zero = set(idems) | {zero}
    prod = t.product
    for e in idems:
        for f in idems:
            if int(prod[e, f]) not in idem_or_zero:
                raise NotOrthodoxError((e, f))
    v = inverse_sets(t)
    subbands = []
    assigned = set()
    for e in idems:
        if e in assigned:
            continue
        members = tuple(sorted(v[e]))
        for f in members:
            if f not in idem_or_zero or f == zero or v[f] != v[e]:
                raise RuntimeError("inverse classes of an orthodox band must agree")
        r_indices = tuple(sorted({zband.coords(x)[0] for x in members}))
        l_indices = tuple(sorted({zband.coords(x)[1] for x in members}))
        if len(members) != len(r_indices) * len(l_indices):
            raise RuntimeError("block is not a full rectangle of cells")
        if set(members) != {
            zband.pair_index(i, lam) for i in r_indices for lam in l_indices
        }:
            raise RuntimeError("block cells do not form a grid")
        subbands.append(
            Subband(
                rep=members[0],
                members=members,
                r_indices=r_indices,
                l_indices=l_indices,
                m=len(r_indices),
                n=len(l_indices),
            )
        )
        assigned.update(members)
    r_order = tuple(i for s in subbands for i in s.r_indices)
    l_order = tuple(lam for s in subbands for lam in s.l_indices)
    if sorted(r_order) != list(range(zband.m)) or sorted(l_order) != list(range(zband.n)):
        raise RuntimeError("blocks must partition the rows and columns of the band")
    row_block = [0] * zband.m
    col_block = [0] * zband.n
    for k, s in enumerate(subbands):
        for i in s.r_indices:
            row_block[i] = k
        for lam in s.l_indices:
            col_block[lam] = k
    phi = {
        a: (row_block[i], col_block[lam]) for a, (i, lam) in zband.h_map.items()
    }
    return BandDecomposition(
        subbands=tuple(subbands),
        r_order=r_order,
        l_order=l_order,
        row_block=tuple(row_block),
        col_block=tuple(col_block),
        phi=phi,
    )


@dataclass(frozen=True)
class SimilarityVerdict:
    """Whether all blocks have proportional shapes (m_i * n_j == m_j * n_i)."""

    pairwise_similar: bool
    witness: tuple | None


def similarity_check(dec: BandDecomposition) -> SimilarityVerdict:
    """Cross-multiplied shape comparison over all block pairs, first failure wins."""
    sizes = dec.block_sizes()
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            if sizes[i][0] * sizes[j][1] != sizes[j][0] * sizes[i][1]:
                return SimilarityVerdict(pairwise_similar=False, witness=(i, j))
    return SimilarityVerdict(pairwise_similar=True, witness=None)
