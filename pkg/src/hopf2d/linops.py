"""Numeric evaluation of formal sums as sparse lattice operators.

A :class:`Representation` sends every alphabet symbol to a d x d complex
matrix; a grid word then maps to the Kronecker product of its cell matrices
taken in linear site order (site 1 = leftmost Kronecker factor), and a
formal sum to the corresponding linear combination.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .grids import Alphabet, FormalSum, Symbol


class RepresentationError(ValueError):
    """A symbol has no matrix in the representation."""


class ResourceLimitError(ValueError):
    """Requested operator exceeds the configured dimension cap."""


class Representation:
    """Mapping symbol -> d x d complex matrix over a common alphabet."""

    def __init__(self, alphabet: Alphabet, matrices):
        self.alphabet = alphabet
        self.matrices = {}
        dim = None
        for sym, mat in matrices.items():
            if isinstance(sym, str):
                sym = alphabet[sym]
            m = np.asarray(mat, dtype=complex)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"matrix for {sym} is not square")
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise ValueError("all matrices must share one dimension")
            self.matrices[sym] = m
        self.dim = dim

    def __getitem__(self, sym: Symbol):
        try:
            return self.matrices[sym]
        except KeyError:
            raise RepresentationError(f"no matrix for symbol {sym}") from None


class SparseOperator:
    """Sparse complex operator on the lattice Hilbert space.

    Thin wrapper around a CSR matrix with canonical COO export and
    Matrix Market serialization.
    """

    def __init__(self, mat):
        self.mat = sp.csr_matrix(mat, dtype=complex)
        self.mat.sum_duplicates()
        self.mat.eliminate_zeros()

    @property
    def dim(self):
        return self.mat.shape[0]

    @property
    def nnz(self):
        return self.mat.nnz

    def entries(self):
        """Canonical coordinate list [(row, col, value)], row-major sorted, 0-based."""
        coo = self.mat.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), complex(coo.data[k])) for k in order]

    def toarray(self):
        return self.mat.toarray()

    def __add__(self, other):
        return SparseOperator(self.mat + other.mat)

    def __sub__(self, other):
        return SparseOperator(self.mat - other.mat)

    def __mul__(self, scalar):
        return SparseOperator(self.mat * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return SparseOperator(self.mat @ other.mat)

    def max_abs(self):
        return 0.0 if self.mat.nnz == 0 else float(np.abs(self.mat.data).max())

    def write_matrix_market(self, path):
        write_matrix_market(self.mat, path)


def operator_difference(a: SparseOperator, b: SparseOperator) -> float:
    """Max-abs-entry norm of a - b."""
    return (a - b).max_abs()


def identity_operator(dim) -> SparseOperator:
    return SparseOperator(sp.identity(dim, dtype=complex, format="csr"))


def evaluate(s: FormalSum, rep: Representation, dim_cap: int | None = None) -> SparseOperator:
    """Evaluate a formal sum in a representation as a sparse operator.

    The resulting dimension is d**(n*m); ``dim_cap`` rejects larger requests.
    """
    sites = s.shape.sites
    dim = rep.dim ** sites
    if dim_cap is not None and dim > dim_cap:
        raise ResourceLimitError(f"dimension {dim} exceeds cap {dim_cap}")
    total = sp.csr_matrix((dim, dim), dtype=complex)
    for word, coeff in s.items():
        factors = [sp.csr_matrix(rep[c]) for c in word.cells]
        acc = factors[0]
        for f in factors[1:]:
            acc = sp.kron(acc, f, format="csr")
        total = total + coeff * acc
    return SparseOperator(total)


def write_matrix_market(mat, path):
    """Write a sparse complex matrix in Matrix Market coordinate format (1-based)."""
    coo = sp.coo_matrix(mat)
    coo.sum_duplicates()
    order = np.lexsort((coo.col, coo.row))
    lines = ["%%MatrixMarket matrix coordinate complex general"]
    lines.append(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}")
    for k in order:
        v = coo.data[k]
        lines.append(f"{coo.row[k] + 1} {coo.col[k] + 1} {v.real:.17g} {v.imag:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix_market(path):
    """Read back a coordinate complex general file as a CSR matrix."""
    import scipy.io

    return sp.csr_matrix(scipy.io.mmread(path))
