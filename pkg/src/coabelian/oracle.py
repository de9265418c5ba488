"""Slow, independent re-implementations used to cross-check the main code.

These deliberately avoid the canonical-form machinery: rank is recomputed by
plain fraction-free elimination, projected-kernel indices by an extended-gcd
column echelon coded from scratch, and lattice indices by literally counting
residue classes. Shared surface with the rest of the package is limited to
the IntMatrix container and big-integer arithmetic.
"""

from __future__ import annotations

from .intmatrix import IntMatrix, hstack
from .lattice import Lattice
from .model import ProductHom

INDEX_BOUND = 10**4
AMBIENT_BOUND = 4


class OracleBoundExceeded(ValueError):
    pass


def rank_by_elimination(a: IntMatrix) -> int:
    """Rank via Bareiss-style fraction-free row elimination, no normal forms."""
    m = [list(row) for row in a.data]
    rows, cols = a.rows, a.cols
    prev = 1
    r = 0
    for col in range(cols):
        pivot_row = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, rows):
            for j in range(col + 1, cols):
                m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = m[r][col]
        r += 1
        if r == rows:
            break
    return r


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a > 0 else -1) if a else 0, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def _column_echelon(a: IntMatrix) -> list[list[int]]:
    """Column echelon form over Z via extended-gcd column combinations;
    returns the nonzero columns, ordered by strictly increasing leading row.
    Not canonical, not reduced — unimodular column operations only."""
    cols = [c for j in range(a.cols)
            if any(c := [a.data[i][j] for i in range(a.rows)])]
    done = []
    for row in range(a.rows):
        idxs = [j for j, c in enumerate(cols) if c[row] != 0]
        if not idxs:
            continue
        p = idxs[0]
        for j in idxs[1:]:
            g, x, y = _xgcd(cols[p][row], cols[j][row])
            u, v = cols[p][row] // g, cols[j][row] // g
            # the 2x2 operation [[x, -v], [y, u]] has determinant 1
            new_p = [x * s + y * t for s, t in zip(cols[p], cols[j])]
            new_j = [-v * s + u * t for s, t in zip(cols[p], cols[j])]
            cols[p], cols[j] = new_p, new_j
        done.append(cols.pop(p))
        cols = [c for c in cols if any(c)]
    return done


def _kernel_columns(a: IntMatrix) -> list[list[int]]:
    """Integer kernel basis of a, via column echelon of the stacked matrix
    [A; I] — the identity rows under columns killed in A span the kernel."""
    stacked = IntMatrix.from_rows(
        [list(row) for row in a.data] +
        [[1 if j == i else 0 for j in range(a.cols)] for i in range(a.cols)],
        cols=a.cols)
    kernel = []
    for col in _column_echelon(stacked):
        if all(x == 0 for x in col[:a.rows]):
            kernel.append(col[a.rows:])
    return kernel


def _index_from_columns(cols: list[list[int]], ambient: int) -> int | None:
    """Index of the span of the given columns in Z^ambient via residue
    counting; None when the span has lower rank (infinite index)."""
    if ambient == 0:
        return 1
    echelon = _column_echelon(IntMatrix.from_rows(
        [[c[i] for c in cols] for i in range(ambient)], cols=len(cols))
        if cols else IntMatrix.zeros(ambient, 0))
    if len(echelon) < ambient:
        return None
    # full rank: the echelon columns are triangular (column j leads in row j),
    # so the index is the absolute product of the leading entries
    index = 1
    for j, col in enumerate(echelon):
        index *= abs(col[j])
    return index


def vsp_by_preimage(h: ProductHom, t) -> int | None:
    """Index of the abelianized projected kernel for the tuple T (1-based),
    computed without the rank shortcut: the preimage under A_T of the image
    of the complementary blocks, via an independently coded echelon kernel.
    Returns the finite index, or None for infinite."""
    t0 = tuple(sorted(set(i - 1 for i in t)))
    comp = tuple(i for i in range(h.num_factors) if i not in t0)
    a_t = hstack([h.blocks[i] for i in t0], rows=h.target_rank)
    comp_cols = [[h.blocks[i].data[row][j] for row in range(h.target_rank)]
                 for i in comp for j in range(h.blocks[i].cols)]
    # solve A_T x = B y: kernel of [A_T | -B], keep the x part
    b_mat = IntMatrix.from_rows(
        [[c[row] for c in comp_cols] for row in range(h.target_rank)],
        cols=len(comp_cols))
    stacked = hstack([a_t, -b_mat], rows=h.target_rank)
    preimage_cols = [col[:a_t.cols] for col in _kernel_columns(stacked)]
    return _index_from_columns(preimage_cols, a_t.cols)


def _det_by_cofactors(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[x] for x in range(n) if x != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det_by_cofactors(minor)
    return total


def index_by_residue_count_raw(ambient: int, cols: list[list[int]]) -> int:
    """Count residue classes of Z^ambient modulo the span of the columns.

    Requires full rank. Picks ambient columns with nonzero determinant d,
    then closes the subgroup generated by all columns inside (Z/d)^ambient
    by breadth-first search; the index is d^ambient / |subgroup|.
    """
    if ambient > AMBIENT_BOUND:
        raise OracleBoundExceeded(f"ambient rank {ambient} > {AMBIENT_BOUND}")
    if ambient == 0:
        return 1
    from itertools import combinations
    d = 0
    for subset in combinations(range(len(cols)), ambient):
        square = [[cols[j][i] for j in subset] for i in range(ambient)]
        d = _det_by_cofactors(square)
        if d != 0:
            break
    if d == 0:
        raise ValueError("columns do not have full rank")
    d = abs(d)
    if d == 1:
        return 1
    gens = [tuple(x % d for x in c) for c in cols]
    seen = {tuple([0] * ambient)}
    frontier = [tuple([0] * ambient)]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % d for a, b in zip(cur, g))
            if nxt not in seen:
                if len(seen) >= 10**6:
                    raise OracleBoundExceeded("subgroup closure too large")
                seen.add(nxt)
                frontier.append(nxt)
    index = d ** ambient // len(seen)
    if index > INDEX_BOUND:
        raise OracleBoundExceeded(f"index {index} > {INDEX_BOUND}")
    return index


def index_by_residue_count(lat: Lattice) -> int:
    """Index of a full-rank lattice by residue counting (oracle for the
    triangular-determinant shortcut)."""
    cols = [[lat.basis.data[i][j] for i in range(lat.ambient_rank)]
            for j in range(lat.basis.cols)]
    return index_by_residue_count_raw(lat.ambient_rank, cols)
