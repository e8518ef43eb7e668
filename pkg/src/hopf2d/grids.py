"""Formal sums of symbol-labeled lattice grids.

The basic objects are grids of algebra symbols on an n x m square lattice
and finite complex-linear combinations of such grids.  Sites are numbered
linearly starting at the bottom-left corner, running left to right along a
row and then jumping to the row above, so for a 3 x 3 grid::

    7 8 9
    4 5 6
    1 2 3

Cells of a :class:`GridWord` are stored in this linear order.
"""

from __future__ import annotations

from dataclasses import dataclass
import json

# Coefficients below this magnitude are dropped during canonicalization.
CANON_TOL = 1e-14
# Default tolerance for comparing formal sums coefficientwise.
EQ_TOL = 1e-10


class ShapeError(ValueError):
    """Operands live on incompatible grid shapes."""


class SiteRangeError(ValueError):
    """A lattice coordinate is outside the grid."""


@dataclass(frozen=True, order=True)
class Symbol:
    """A named generator, identified by a small integer id within its alphabet."""

    id: int
    name: str

    def __repr__(self):
        return self.name


class Alphabet:
    """An ordered set of symbols with lookup by name."""

    def __init__(self, names):
        seen = set()
        for n in names:
            if not n:
                raise ValueError("symbol names must be nonempty")
            if n in seen:
                raise ValueError(f"duplicate symbol name {n!r}")
            seen.add(n)
        self.symbols = tuple(Symbol(i, n) for i, n in enumerate(names))
        self._by_name = {s.name: s for s in self.symbols}

    def __getitem__(self, name: str) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def __contains__(self, name):
        return name in self._by_name

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def words(self, cells) -> tuple[Symbol, ...]:
        """Map an iterable of names to a tuple of symbols."""
        return tuple(self[c] if isinstance(c, str) else c for c in cells)


@dataclass(frozen=True, order=True)
class GridShape:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid shape must be positive, got {self}")

    @property
    def sites(self):
        return self.rows * self.cols

    def __repr__(self):
        return f"{self.rows}x{self.cols}"


def site_index(i: int, j: int, shape: GridShape) -> int:
    """Linear index (1-based) of the site at row ``i`` (from the bottom), column ``j``."""
    if not (1 <= i <= shape.rows and 1 <= j <= shape.cols):
        raise SiteRangeError(f"site ({i},{j}) outside {shape}")
    return (i - 1) * shape.cols + j


@dataclass(frozen=True)
class GridWord:
    """One lattice configuration: a symbol on every site of a grid.

    ``cells`` is stored in linear site order (bottom row first).
    """

    shape: GridShape
    cells: tuple[Symbol, ...]

    def __post_init__(self):
        if len(self.cells) != self.shape.sites:
            raise ShapeError(
                f"{len(self.cells)} cells do not fill {self.shape}"
            )

    def cell(self, i, j):
        return self.cells[site_index(i, j, self.shape) - 1]

    def row(self, i) -> "GridWord":
        """The 1 x m row word at height ``i`` (1 = bottom)."""
        m = self.shape.cols
        off = (i - 1) * m
        return GridWord(GridShape(1, m), self.cells[off:off + m])

    def col(self, j) -> "GridWord":
        """The n x 1 column word at column ``j`` (1 = leftmost)."""
        return GridWord(GridShape(self.shape.rows, 1),
                        tuple(self.cell(i, j) for i in range(1, self.shape.rows + 1)))

    def rows_top_down(self):
        """Rows as lists of names, top row first (the layout grids are displayed in)."""
        return [[self.cell(i, j).name for j in range(1, self.shape.cols + 1)]
                for i in range(self.shape.rows, 0, -1)]

    @staticmethod
    def from_rows_top_down(alphabet: Alphabet, rows) -> "GridWord":
        """Build a word from rows listed top first, as displayed in print."""
        n, m = len(rows), len(rows[0])
        if any(len(r) != m for r in rows):
            raise ShapeError("ragged rows")
        cells = []
        for r in reversed(rows):
            cells.extend(alphabet.words(r))
        return GridWord(GridShape(n, m), tuple(cells))

    def _key(self):
        return (self.shape.rows, self.shape.cols, tuple(s.id for s in self.cells))

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return "/".join(" ".join(r) for r in self.rows_top_down())


def word1(sym: Symbol) -> GridWord:
    """The 1 x 1 word holding a single symbol."""
    return GridWord(GridShape(1, 1), (sym,))


class FormalSum:
    """A finite complex-linear combination of grid words of a common shape.

    Instances are canonical (coefficients below ``CANON_TOL`` dropped,
    duplicate words merged) and treated as immutable.
    """

    __slots__ = ("shape", "_terms")

    def __init__(self, shape: GridShape, terms=None):
        self.shape = shape
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for word, coeff in items:
                if word.shape != shape:
                    raise ShapeError(f"term shape {word.shape} != sum shape {shape}")
                c = acc.get(word, 0j) + complex(coeff)
                acc[word] = c
        self._terms = {w: c for w, c in acc.items() if abs(c) > CANON_TOL}

    @staticmethod
    def unit(word: GridWord, coeff=1.0) -> "FormalSum":
        return FormalSum(word.shape, [(word, coeff)])

    @staticmethod
    def zero(shape: GridShape) -> "FormalSum":
        return FormalSum(shape)

    def items(self):
        """Terms in deterministic (lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0]._key())

    def coeff(self, word: GridWord) -> complex:
        return self._terms.get(word, 0j)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms, key=lambda w: w._key()))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape} sums")
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0j) + c
        return FormalSum(self.shape, terms)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, scalar) -> "FormalSum":
        return FormalSum(self.shape, {w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return f"0[{self.shape}]"
        bits = []
        for w, c in self.items():
            bits.append(f"({c:g})·[{w}]" if c != 1 else f"[{w}]")
        return " + ".join(bits)

    def map_words(self, fn) -> "FormalSum":
        """Apply ``word -> word`` (shape-preserving) to every term."""
        return FormalSum(self.shape, [(fn(w), c) for w, c in self._terms.items()])

    def to_json(self) -> str:
        terms = [
            {"cells": [s.name for s in w.cells], "re": c.real, "im": c.imag}
            for w, c in self.items()
        ]
        return json.dumps(
            {"shape": [self.shape.rows, self.shape.cols], "terms": terms},
            sort_keys=True,
        )

    @staticmethod
    def from_json(data: str, alphabet: Alphabet) -> "FormalSum":
        obj = json.loads(data)
        shape = GridShape(*obj["shape"])
        terms = []
        for t in obj["terms"]:
            word = GridWord(shape, alphabet.words(t["cells"]))
            terms.append((word, complex(t["re"], t["im"])))
        return FormalSum(shape, terms)


def sums_equal(a: FormalSum, b: FormalSum, tol: float = EQ_TOL) -> bool:
    """True iff shapes match and coefficients agree within ``tol`` on the union of terms."""
    return sum_difference(a, b) <= tol if a.shape == b.shape else False


def sum_difference(a: FormalSum, b: FormalSum) -> float:
    """Max coefficient mismatch over the union of terms (inf on shape mismatch)."""
    if a.shape != b.shape:
        return float("inf")
    words = set(a._terms) | set(b._terms)
    if not words:
        return 0.0
    return max(abs(a.coeff(w) - b.coeff(w)) for w in words)


def concat_h(a: FormalSum, b: FormalSum) -> FormalSum:
    """Juxtapose two sums side by side (``a`` on the left); bilinear."""
    if a.shape.rows != b.shape.rows:
        raise ShapeError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape.rows
    shape = GridShape(n, a.shape.cols + b.shape.cols)
    terms = []
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            cells = []
            for i in range(1, n + 1):
                cells.extend(wa.row(i).cells)
                cells.extend(wb.row(i).cells)
            terms.append((GridWord(shape, tuple(cells)), ca * cb))
    return FormalSum(shape, terms)


def concat_v(a: FormalSum, b: FormalSum) -> FormalSum:
    """Stack two sums vertically (``a`` at the bottom); bilinear."""
    if a.shape.cols != b.shape.cols:
        raise ShapeError(f"column mismatch: {a.shape} vs {b.shape}")
    shape = GridShape(a.shape.rows + b.shape.rows, a.shape.cols)
    terms = []
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            terms.append((GridWord(shape, wa.cells + wb.cells), ca * cb))
    return FormalSum(shape, terms)
