"""Edge transition matrix and the exact Perron certificate.

The deformation of each 0-edge is a block of gamma1 between consecutive
matched markers; counting the image labels inside each block gives a
nonnegative integer matrix whose spectral radius must equal the degree.
Rather than computing eigenvalues we certify: the nullspace of (A - dI)
is computed exactly over the rationals, and a strictly positive
one-dimensional representative is, by Perron-Frobenius, proof that d is
the spectral radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import SpectralError
from .mapspec import MapSpec


@dataclass(frozen=True)
class TransitionMatrix:
    entries: tuple[tuple[int, ...], ...]   # rows follow word0 positions
    edges: tuple[str, ...]                 # edge name per row/column index

    @property
    def size(self) -> int:
        return len(self.entries)

    def column_sums(self) -> list[int]:
        n = self.size
        return [sum(self.entries[i][j] for i in range(n)) for j in range(n)]


@dataclass(frozen=True)
class LengthVector:
    lengths: tuple[Fraction, ...]          # normalized, sums to 1
    eigenvector: tuple[int, ...]           # primitive positive integer representative


def deformation_words(spec: MapSpec) -> list[list[int]]:
    """Word1 positions making up each 0-edge's deformation block.

    Block i runs from matched marker i (inclusive) to matched marker i+1
    (exclusive), cyclically; the k blocks partition word1.
    """
    k, n1 = spec.k, spec.n1
    markers = spec.markers
    if list(markers) != sorted(set(markers)):
        raise SpectralError("markers not strictly increasing")
    words = []
    for i in range(k):
        a = markers[i]
        b = markers[(i + 1) % k]
        span = (b - a) % n1
        if span == 0:
            span = n1 if k == 1 else 0
        words.append([(a + s) % n1 for s in range(span)])
    return words


def transition_matrix(spec: MapSpec) -> TransitionMatrix:
    """a[i][j] = number of 1-edges over edge j inside the deformation of edge i."""
    words = deformation_words(spec)
    edges = tuple(w.edge for w in spec.word0)
    col = {e: j for j, e in enumerate(edges)}
    rows = []
    for block in words:
        counts = [0] * spec.k
        for pos in block:
            counts[col[spec.word1[pos].image_edge]] += 1
        rows.append(tuple(counts))
    return TransitionMatrix(entries=tuple(rows), edges=edges)


def _integer_row_echelon(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Returns the echelon rows and the pivot columns; every intermediate value
    stays an integer, with growth bounded by minors of the input.
    """
    a = [row[:] for row in m]
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                num = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise SpectralError("fraction-free elimination lost exactness")
                a[i][j] = q
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def _rational_nullspace(m: list[list[int]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of an integer matrix, exactly."""
    a, pivots = _integer_row_echelon(m)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((Fraction(a[r][c]) * v[c] for c in range(pc + 1, n)), Fraction(0))
            v[pc] = -s / a[r][pc]
        basis.append(v)
    return basis


def _primitive_integers(v: list[Fraction]) -> list[int]:
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def certify_perron(matrix: TransitionMatrix, d: int) -> LengthVector:
    """Certify that d is the spectral radius of the transition matrix.

    Requires the nullspace of (A - dI) to be one-dimensional with a strictly
    positive representative v; returns v normalized to unit total length.
    """
    n = matrix.size
    m = [
        [matrix.entries[i][j] - (d if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    basis = _rational_nullspace(m)
    if len(basis) == 0:
        raise SpectralError(f"d is not an eigenvalue: nullspace of (A - {d}I) is trivial")
    if len(basis) > 1:
        raise SpectralError(
            f"Perron certification failed: nullspace dimension {len(basis)} > 1"
        )
    v = _primitive_integers(basis[0])
    if all(x < 0 for x in v):
        v = [-x for x in v]
    if not all(x > 0 for x in v):
        raise SpectralError("Perron certification failed: no strictly positive eigenvector")

    # entrywise exactness check of A v = d v
    for i in range(n):
        lhs = sum(matrix.entries[i][j] * v[j] for j in range(n))
        if lhs != d * v[i]:
            raise SpectralError("Perron certification failed: A v != d v")

    total = sum(v)
    lengths = tuple(Fraction(x, total) for x in v)
    return LengthVector(lengths=lengths, eigenvector=tuple(v))
