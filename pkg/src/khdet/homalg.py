"""Exact linear algebra over Z, F2 and Q.

Everything here works with Python integers, so there is no overflow.
Homology of a chain complex is found in two stages.  First, differential
entries that are units in the coefficient ring are cancelled by Gaussian
elimination, which does not change the homology.  Then the small residual
maps go through a Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RINGS",
    "ChainComplexError",
    "IntMatrix",
    "AbelianGroup",
    "GradedComplex",
    "BigradedTable",
    "smith_normal_form",
    "smith_diagonal",
    "cokernel",
    "field_rank",
    "complex_homology",
]

RINGS = ("Z", "F2", "Q")


class ChainComplexError(ValueError):
    """The differential does not square to zero."""

    def __init__(self, message: str, bidegree: tuple[int, int] | None = None):
        super().__init__(message)
        self.bidegree = bidegree


def _check_ring(ring: str) -> str:
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")
    return ring


class IntMatrix:
    """Sparse integer matrix stored by row; zero entries are never kept."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Mapping[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        stored = []
        if data is None:
            stored = [{} for _ in range(rows)]
        else:
            for r in data:
                row = {}
                for j, v in r.items():
                    if not 0 <= j < cols:
                        raise IndexError(f"column {j} outside 0..{cols - 1}")
                    if v:
                        row[j] = int(v)
                stored.append(row)
            if len(stored) != rows:
                raise ValueError(f"expected {rows} rows, got {len(stored)}")
        self._data = tuple(stored)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None):
        nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(nrows, ncols, ({j: v for j, v in enumerate(r) if v} for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, int]], nrows: int):
        data = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data[i][j] = v
        return cls(nrows, len(columns), data)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, ({i: 1} for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> dict[int, int]:
        return dict(self._data[i])

    def iter_rows(self):
        return iter(self._data)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, 0)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in enumerate(self._data):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, v in r.items():
                data[j][i] = v
        return IntMatrix(self.cols, self.rows, data)

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        data = []
        for r in self._data:
            acc: dict[int, int] = {}
            for k, v in r.items():
                for j, w in other._data[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            data.append({j: v for j, v in acc.items() if v})
        return IntMatrix(self.rows, other.cols, data)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        data = []
        for a, b in zip(self._data, other._data):
            row = dict(a)
            for j, v in b.items():
                row[j] = row.get(j, 0) - v
            data.append(row)
        return IntMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ({j: -v for j, v in r.items()} for r in self._data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def is_zero(self) -> bool:
        return not any(self._data)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.to_dense()
        n = self.rows
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_dense()!r})"


# --------------------------------------------------------------------------
# Smith normal form


def _snf_dense(a: list[list[int]], track: bool):
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in v:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row dst += q * row src
        rs, rd = a[src], a[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if track:
            us, ud = u[src], u[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col dst += q * col src
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        if track:
            for r in v:
                if r[src]:
                    r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # smallest leftover in the pivot row/column becomes the new pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if cand:
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    return a, u, v


def smith_normal_form(matrix: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(S, U, V)`` with ``U @ M @ V == S``.

    ``S`` is diagonal with non-negative entries ``d1 | d2 | ...`` and ``U``,
    ``V`` are unimodular.  Pivots are entries of least absolute value,
    ties broken by lowest row and then lowest column.
    """
    m, n = matrix.shape
    s, u, v = _snf_dense(matrix.to_dense(), track=True)
    return (
        IntMatrix.from_dense(s, m, n),
        IntMatrix.from_dense(u, m, m),
        IntMatrix.from_dense(v, n, n),
    )


def smith_diagonal(matrix: IntMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Non-zero diagonal entries of the Smith normal form, in order."""
    dense = matrix.to_dense() if isinstance(matrix, IntMatrix) else [list(r) for r in matrix]
    if not dense or not dense[0]:
        return []
    s, _, _ = _snf_dense(dense, track=False)
    return [s[i][i] for i in range(min(len(s), len(s[0]))) if s[i][i]]


# --------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + Z/d1 + ... + Z/dk``.

    Torsion is kept in invariant-factor form: ``d1 | d2 | ... | dk``, each >= 2.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        for k, d in enumerate(t):
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
            if k and d % t[k - 1]:
                raise ValueError(f"invariant factors {t} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "AbelianGroup":
        """Normalise an arbitrary list of cyclic orders (0 means Z, 1 is dropped)."""
        orders = [abs(int(d)) for d in orders]
        free_rank += sum(1 for d in orders if d == 0)
        finite = [d for d in orders if d > 1]
        diag = [[d if i == j else 0 for j in range(len(finite))] for i, d in enumerate(finite)]
        factors = [d for d in smith_diagonal(diag) if d > 1] if finite else []
        return cls(free_rank, tuple(factors))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_orders(self.free_rank + other.free_rank, self.torsion + other.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Order of the group, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(matrix: IntMatrix) -> AbelianGroup:
    """Cokernel of ``Z^cols -> Z^rows``."""
    diag = smith_diagonal(matrix)
    return AbelianGroup(matrix.rows - len(diag), tuple(d for d in diag if d > 1))


def _rank_f2(rows: Iterable[Mapping[int, int]]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        bits = 0
        for j, v in r.items():
            if v % 2:
                bits |= 1 << j
        while bits:
            top = bits.bit_length() - 1
            if top in pivots:
                bits ^= pivots[top]
            else:
                pivots[top] = bits
                rank += 1
                break
    return rank


def _rank_q(rows: Iterable[Mapping[int, int]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for r in rows:
        row = {j: Fraction(v) for j, v in r.items() if v}
        while row:
            lead = min(row)
            if lead not in pivots:
                c = row[lead]
                pivots[lead] = {j: v / c for j, v in row.items()}
                rank += 1
                break
            c = row[lead]
            for j, v in pivots[lead].items():
                w = row.get(j, 0) - c * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


def field_rank(matrix: IntMatrix, ring: str) -> int:
    """Rank over ``F2`` or ``Q``."""
    if ring == "F2":
        return _rank_f2(matrix.iter_rows())
    if ring == "Q":
        return _rank_q(matrix.iter_rows())
    raise ValueError(f"field_rank needs a field, got {ring!r}")


# --------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class GradedComplex:
    """Free cochain complex with a homological degree ``i`` and quantum degree ``j``.

    ``gradings[i]`` lists the quantum degree of every generator in degree
    ``i``; ``differentials[i]`` has shape ``(dim C_{i+1}, dim C_i)``.  When
    ``quantum_step`` is 0 the differential preserves ``j``; otherwise it
    only preserves ``j`` modulo ``quantum_step`` (a filtered complex).
    """

    ring: str
    gradings: Mapping[int, tuple[int, ...]]
    differentials: Mapping[int, IntMatrix]
    quantum_step: int = 0

    def __post_init__(self):
        _check_ring(self.ring)
        for i, d in self.differentials.items():
            src = len(self.gradings.get(i, ()))
            dst = len(self.gradings.get(i + 1, ()))
            if d.shape != (dst, src):
                raise ValueError(f"differential {i} has shape {d.shape}, expected {(dst, src)}")

    @property
    def degrees(self) -> list[int]:
        return sorted(i for i, g in self.gradings.items() if g)

    @property
    def size(self) -> int:
        return sum(len(g) for g in self.gradings.values())

    def block(self, j: int) -> int:
        return j % self.quantum_step if self.quantum_step else j

    def differential(self, i: int) -> IntMatrix:
        d = self.differentials.get(i)
        if d is None:
            return IntMatrix(len(self.gradings.get(i + 1, ())), len(self.gradings.get(i, ())))
        return d

    def check_d_squared(self) -> None:
        """Raise :class:`ChainComplexError` at the first bidegree where d∘d != 0."""
        for i in self.degrees:
            d0 = self.differential(i)
            d1 = self.differential(i + 1)
            if d0.is_zero() or d1.is_zero():
                continue
            # columns of d1 @ d0: image of each generator x of C_i
            cols1 = d1.transpose()
            cols0 = d0.transpose()
            for x, col in enumerate(cols0.iter_rows()):
                acc: dict[int, int] = {}
                for y, c in col.items():
                    for z, c2 in cols1.row(y).items():
                        acc[z] = acc.get(z, 0) + c * c2
                if any(v % 2 if self.ring == "F2" else v for v in acc.values()):
                    j = self.gradings[i][x]
                    raise ChainComplexError(f"d∘d != 0 at bidegree ({i}, {j})", (i, j))


@dataclass(frozen=True)
class BigradedTable:
    """Homology as ``(i, j) -> AbelianGroup``; only nonzero groups are stored.

    Over a field each group is ``F^dim`` and is stored as a free rank.
    """

    ring: str
    groups: Mapping[tuple[int, int], AbelianGroup]

    def __post_init__(self):
        clean = {k: g for k, g in sorted(self.groups.items()) if g.free_rank or g.torsion}
        object.__setattr__(self, "groups", clean)

    def __getitem__(self, ij: tuple[int, int]) -> AbelianGroup:
        return self.groups.get(ij, AbelianGroup())

    def items(self):
        return self.groups.items()

    def rank(self, i: int, j: int) -> int:
        return self[(i, j)].free_rank

    def total_rank(self) -> int:
        return sum(g.free_rank for g in self.groups.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedTable):
            return NotImplemented
        return self.ring == other.ring and dict(self.groups) == dict(other.groups)

    def to_rows(self) -> list[dict]:
        return [
            {"i": i, "j": j, "free_rank": g.free_rank, "torsion": list(g.torsion)}
            for (i, j), g in sorted(self.groups.items())
        ]


def _cancel(out: dict, inc: dict, order: list, ring: str) -> None:
    """Gaussian elimination of unit entries, in place.

    ``out[x]`` maps generator ``x`` to its image ``{y: c}``; ``inc`` is the
    transpose.  Cancelling a unit entry ``c = <dx, y>`` removes ``x`` and
    ``y`` and replaces ``d(z)`` by ``d(z) - <dz, y> c^-1 d(x)``.
    """
    mod2 = ring == "F2"
    anypivot = ring == "Q"
    progress = True
    while progress:
        progress = False
        for x in order:
            row = out.get(x)
            if not row:
                continue
            best = None
            for y, c in row.items():
                if anypivot or c == 1 or c == -1:
                    key = (0 if abs(c) == 1 else 1, len(inc[y]))
                    if best is None or key < best[0]:
                        best = (key, y, c)
            if best is None:
                continue
            _, y, a = best
            progress = True
            row_x = out.pop(x)
            col_y = inc.pop(y)
            for w in row_x:
                if w != y:
                    del inc[w][x]
            for z in col_y:
                if z != x:
                    del out[z][y]
            for u in inc.pop(x, {}):
                del out[u][x]
            for v in out.pop(y, {}):
                del inc[v][y]
            if len(row_x) == 1:
                continue
            for z, czy in col_y.items():
                if z == x:
                    continue
                f = Fraction(czy) / a if abs(a) != 1 else czy * a
                rz = out[z]
                for w, cxw in row_x.items():
                    if w == y:
                        continue
                    new = rz.get(w, 0) - f * cxw
                    if mod2:
                        new %= 2
                    if new:
                        rz[w] = new
                        inc[w][z] = new
                    else:
                        rz.pop(w, None)
                        inc[w].pop(z, None)


def complex_homology(complex_: GradedComplex, check: bool = True) -> BigradedTable:
    """Homology of a graded complex, one quantum block at a time.

    Over Z each group carries its free rank and torsion invariant factors;
    over a field only the dimension is recorded.  For filtered complexes
    the table is keyed by ``(i, j mod quantum_step)``.
    """
    if check:
        complex_.check_d_squared()
    ring = complex_.ring
    # global generator ids: (i, index)
    blocks: dict[int, list[tuple[int, int]]] = {}
    for i in complex_.degrees:
        for x, j in enumerate(complex_.gradings[i]):
            blocks.setdefault(complex_.block(j), []).append((i, x))
    out: dict[tuple[int, int], dict] = {}
    inc: dict[tuple[int, int], dict] = {}
    for i in complex_.degrees:
        for x in range(len(complex_.gradings[i])):
            out[(i, x)] = {}
        for y in range(len(complex_.gradings.get(i + 1, ()))):
            inc.setdefault((i + 1, y), {})
        for x in range(len(complex_.gradings[i])):
            inc.setdefault((i, x), {})
    for i in complex_.degrees:
        d = complex_.differential(i)
        for y, r in enumerate(d.iter_rows()):
            for x, c in r.items():
                if ring == "F2":
                    c %= 2
                    if not c:
                        continue
                out[(i, x)][(i + 1, y)] = c
                inc[(i + 1, y)][(i, x)] = c
    groups: dict[tuple[int, int], AbelianGroup] = {}
    for key in sorted(blocks):
        gens = blocks[key]
        _cancel(out, inc, gens, ring)
        alive: dict[int, list[tuple[int, int]]] = {}
        for g in gens:
            if g in out:
                alive.setdefault(g[0], []).append(g)
        ranks: dict[int, int] = {}
        factors: dict[int, list[int]] = {}
        for i, src in alive.items():
            dst = alive.get(i + 1, [])
            rows = [r for r in (out[g] for g in src) if r]
            if not rows:
                continue
            if ring != "Z":
                raise AssertionError("field cancellation left a nonzero entry")
            col = {g: k for k, g in enumerate(dst)}
            dense = [[0] * len(dst) for _ in rows]
            for k, r in enumerate(rows):
                for y, c in r.items():
                    dense[k][col[y]] = c
            diag = smith_diagonal(dense)
            ranks[i] = len(diag)
            factors[i + 1] = [abs(d) for d in diag if abs(d) > 1]
        for i, src in alive.items():
            free = len(src) - ranks.get(i, 0) - ranks.get(i - 1, 0)
            torsion = tuple(sorted(factors.get(i, [])))
            if free or torsion:
                groups[(i, key)] = AbelianGroup(free, torsion)
        for g in gens:
            out.pop(g, None)
            inc.pop(g, None)
    return BigradedTable(ring, groups)
