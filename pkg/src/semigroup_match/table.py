"""Finite semigroups as multiplication tables, plus the standard constructions.

Elements are the integers 0..n-1; an optional name per element is kept for
display only.  Every constructor funnels through MulTable, which checks all
n^3 triples for associativity, so no table in the rest of the package is
ever trusted blindly.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    CapExceededError,
    EntryRangeError,
    NotAssociativeError,
    NotRegularMatrixError,
    TableFormatError,
)

DEFAULT_SIZE_CAP = 5000
DEFAULT_RANK_CAP = 4

# scratch cells per chunk of the vectorized associativity sweep
_ASSOC_CHUNK_CELLS = 1 << 21


def _associativity_witness(product: np.ndarray):
    """First triple (a, b, c) with (ab)c != a(bc) in lexicographic order, or None."""
    n = product.shape[0]
    chunk = max(1, _ASSOC_CHUNK_CELLS // (n * n))
    for start in range(0, n, chunk):
        rows = product[start:start + chunk]
        left = product[rows]          # left[a, b, c] = (a*b)*c
        right = rows[:, product]      # right[a, b, c] = a*(b*c)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            return (start + int(bad[0]), int(bad[1]), int(bad[2]))
    return None


class MulTable:
    """A finite semigroup on elements 0..n-1 given by its product table.

    Entries are range-checked and associativity is verified for every triple
    at construction; instances are immutable afterwards.  Derived structure
    (Green classes, inverse sets) is cached on the instance by the modules
    that compute it.
    """

    __slots__ = ("n", "product", "names", "_cache")

    def __init__(self, product, names=None):
        arr = np.array(product, dtype=np.intp)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise TableFormatError(f"product table must be square, got shape {arr.shape}")
        n = int(arr.shape[0])
        if n == 0:
            raise TableFormatError("a semigroup needs at least one element")
        if int(arr.min()) < 0 or int(arr.max()) >= n:
            a, b = (int(x) for x in np.argwhere((arr < 0) | (arr >= n))[0])
            raise EntryRangeError(f"entry product[{a}][{b}] = {int(arr[a, b])} outside [0, {n})")
        witness = _associativity_witness(arr)
        if witness is not None:
            raise NotAssociativeError(witness)
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n:
                raise TableFormatError(f"expected {n} names, got {len(names)}")
            if len(set(names)) != n:
                raise TableFormatError("element names must be distinct")
            if any(not s or any(ch.isspace() for ch in s) for s in names):
                raise TableFormatError("element names must be non-empty and whitespace-free")
        arr.setflags(write=False)
        self.n = n
        self.product = arr
        self.names = names
        self._cache = {}

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def power(self, a: int, k: int) -> int:
        """a^k for k >= 1."""
        if k < 1:
            raise ValueError("power needs k >= 1")
        x = a
        for _ in range(k - 1):
            x = int(self.product[x, a])
        return x

    def element_name(self, a: int) -> str:
        return self.names[a] if self.names is not None else str(a)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        return (
            isinstance(other, MulTable)
            and self.n == other.n
            and self.names == other.names
            and np.array_equal(self.product, other.product)
        )

    __hash__ = None

    def __repr__(self):
        return f"MulTable(n={self.n})"


def parse_table(text: str) -> MulTable:
    """Parse the table file format.

    Lines starting with '#' are comments; a '# names: x y z' comment supplies
    display names.  The first data line is the element count n, followed by n
    lines of n whitespace-separated entries in [0, n).
    """
    names = None
    data = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("names:"):
                names = body[len("names:"):].split()
            continue
        data.append(line)
    if not data:
        raise TableFormatError("no data lines found")
    head = data[0].split()
    if len(head) != 1:
        raise TableFormatError(f"first data line must be the element count, got {data[0]!r}")
    try:
        n = int(head[0])
    except ValueError:
        raise TableFormatError(f"element count is not an integer: {head[0]!r}") from None
    if n <= 0:
        raise TableFormatError("element count must be positive")
    if len(data) - 1 != n:
        raise TableFormatError(f"expected {n} table rows, got {len(data) - 1}")
    rows = []
    for i, line in enumerate(data[1:]):
        toks = line.split()
        if len(toks) != n:
            raise TableFormatError(f"row {i}: expected {n} entries, got {len(toks)}")
        try:
            rows.append([int(t) for t in toks])
        except ValueError:
            raise TableFormatError(f"row {i}: non-integer entry") from None
    return MulTable(rows, names)


def render_table(table: MulTable) -> str:
    """Serialize in the format accepted by parse_table (round-trips exactly)."""
    lines = []
    if table.names is not None:
        lines.append("# names: " + " ".join(table.names))
    lines.append(str(table.n))
    for a in range(table.n):
        lines.append(" ".join(str(int(x)) for x in table.product[a]))
    return "\n".join(lines) + "\n"


class BoolStructureMatrix:
    """Boolean sandwich matrix for the combinatorial Rees construction.

    Rows are indexed by L-class labels, columns by R-class labels.  The
    matrix must be regular: every row and every column contains a True.
    """

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries):
        mat = tuple(tuple(bool(x) for x in row) for row in entries)
        if not mat or not mat[0]:
            raise TableFormatError("structure matrix must be non-empty")
        if any(len(r) != len(mat[0]) for r in mat):
            raise TableFormatError("structure matrix rows must have equal length")
        self.entries = mat
        self.rows = len(mat)
        self.cols = len(mat[0])
        for lam, row in enumerate(mat):
            if not any(row):
                raise NotRegularMatrixError(f"row {lam} of the structure matrix is all false")
        for i in range(self.cols):
            if not any(row[i] for row in mat):
                raise NotRegularMatrixError(f"column {i} of the structure matrix is all false")

    def __eq__(self, other):
        return isinstance(other, BoolStructureMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"BoolStructureMatrix({self.rows}x{self.cols})"


def rees_matrix(p: BoolStructureMatrix) -> MulTable:
    """Combinatorial semigroup with zero built over a structure matrix.

    Nonzero elements are pairs (i, lam) with i a column label and lam a row
    label of p; the product is (i, lam)(k, mu) = (i, mu) when p[lam][k]
    holds and 0 otherwise.  Pairs are indexed lexicographically and the zero
    sits last.  Display names are 1-based, "(1,2)" style.
    """
    rows, cols = p.rows, p.cols
    nz = cols * rows
    n = nz + 1
    zero = nz

    def idx(i, lam):
        return i * rows + lam

    prod = np.full((n, n), zero, dtype=np.intp)
    for i in range(cols):
        for lam in range(rows):
            a = idx(i, lam)
            for k in range(cols):
                if p.entries[lam][k]:
                    for mu in range(rows):
                        prod[a, idx(k, mu)] = idx(i, mu)
    names = [f"({i + 1},{lam + 1})" for i in range(cols) for lam in range(rows)]
    names.append("0")
    return MulTable(prod, names)


def rectangular_band(m: int, n: int) -> MulTable:
    """The m x n rectangular band: (i, j)(k, l) = (i, l)."""
    if m < 1 or n < 1:
        raise TableFormatError("rectangular band needs m >= 1 and n >= 1")
    size = m * n
    a = np.arange(size)
    prod = (a[:, None] // n) * n + a[None, :] % n
    names = [f"({i + 1},{j + 1})" for i in range(m) for j in range(n)]
    return MulTable(prod, names)


def full_transformation(n: int, max_rank: int = DEFAULT_RANK_CAP) -> MulTable:
    """All n^n self-maps of {0..n-1} under left-to-right composition.

    The product fg applies f first: x(fg) = (xf)g.  Maps are ordered
    lexicographically by their value tuples and named by the digit string of
    their values, so the identity of T_3 is "012".
    """
    if n < 1:
        raise TableFormatError("n must be positive")
    if n > max_rank:
        raise CapExceededError(
            f"T_{n} has {n ** n} elements; default rank cap is {max_rank}, raise it explicitly"
        )
    maps = list(itertools.product(range(n), repeat=n))
    index = {f: i for i, f in enumerate(maps)}
    size = len(maps)
    prod = np.empty((size, size), dtype=np.intp)
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            prod[i, j] = index[tuple(g[x] for x in f)]
    names = ["".join(str(v) for v in f) for f in maps]
    return MulTable(prod, names)


def direct_product(s: MulTable, t: MulTable, max_size: int = DEFAULT_SIZE_CAP) -> MulTable:
    """Componentwise product on pairs; (a, b) gets index a * |T| + b."""
    size = s.n * t.n
    if size > max_size:
        raise CapExceededError(f"direct product has {size} elements, cap is {max_size}")
    a = np.arange(s.n).repeat(t.n)
    b = np.tile(np.arange(t.n), s.n)
    prod = s.product[np.ix_(a, a)] * t.n + t.product[np.ix_(b, b)]
    names = None
    if s.names is not None and t.names is not None:
        names = [f"({s.names[x]},{t.names[y]})" for x in range(s.n) for y in range(t.n)]
    return MulTable(prod, names)
