"""Khovanov, reduced Khovanov and Lee complexes from the cube of resolutions.

Conventions
-----------
* The 0-smoothing of ``X(a,b,c,d)`` joins ``a``-``b`` and ``c``-``d``
  (the Kauffman A-smoothing); the 1-smoothing joins ``a``-``d`` and
  ``b``-``c``.
* Each circle carries ``V = <v+, v->`` with ``deg v+ = +1`` and
  ``deg v- = -1``.  A generator in a state with ``r`` one-smoothings sits at
  ``i = r - n_-`` and ``j = (#v+ - #v-) + r + n_+ - 2 n_-``, so the unknot
  is supported at ``(0, +-1)``.
* The cube edge that flips crossing ``k`` carries the sign
  ``(-1)^(number of 1-smoothings at crossings before k)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Sequence

from khdet.diagram import PlanarDiagram
from khdet.homalg import BigradedTable, GradedComplex, IntMatrix, complex_homology

__all__ = [
    "ResourceLimitError",
    "DEFAULT_MAX_GENERATORS",
    "ResolutionState",
    "resolve",
    "khovanov_complex",
    "lee_complex",
    "khovanov_homology",
    "lee_rank",
    "total_rank",
    "poincare_polynomial",
    "BigradedTable",
]

DEFAULT_MAX_GENERATORS = 2**20


class ResourceLimitError(RuntimeError):
    """The requested complex is larger than the configured generator cap."""


def max_generators(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("KHDET_MAX_GENERATORS")
    return int(env) if env else DEFAULT_MAX_GENERATORS


@dataclass(frozen=True)
class ResolutionState:
    """Complete smoothing of a diagram.

    ``circles`` lists each circle as the sorted tuple of edges it runs
    through; zero-crossing circles of the diagram come last as empty tuples.
    """

    bits: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]

    @property
    def n_circles(self) -> int:
        return len(self.circles)


class _Cube:
    """Circle data of every vertex of the cube, computed once per diagram."""

    def __init__(self, diagram: PlanarDiagram):
        self.diagram = diagram
        self.n = diagram.n_crossings
        self.extras = diagram.unknotted_extras
        self.crossings = diagram.crossings
        self._cache: dict[int, tuple[list[int], int]] = {}

    def circles(self, state: int) -> tuple[list[int], int]:
        """``(circle index of every edge, number of circles)`` for a state bitmask."""
        hit = self._cache.get(state)
        if hit is not None:
            return hit
        parent = list(range(2 * self.n + 1))

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for k, (a, b, c, d) in enumerate(self.crossings):
            if state >> k & 1:
                union(a, d)
                union(b, c)
            else:
                union(a, b)
                union(c, d)
        index: dict[int, int] = {}
        label = [0] * (2 * self.n + 1)
        for e in range(1, 2 * self.n + 1):
            root = find(e)
            if root not in index:
                index[root] = len(index)
            label[e] = index[root]
        result = (label, len(index) + self.extras)
        self._cache[state] = result
        return result


def resolve(diagram: PlanarDiagram, state_bits: Sequence[int]) -> ResolutionState:
    """Circles of the complete smoothing selected by ``state_bits`` (one bit per crossing)."""
    if len(state_bits) != diagram.n_crossings:
        raise ValueError(f"expected {diagram.n_crossings} state bits, got {len(state_bits)}")
    state = sum(1 << k for k, b in enumerate(state_bits) if b)
    label, count = _Cube(diagram).circles(state)
    members: list[list[int]] = [[] for _ in range(count)]
    for e in range(1, 2 * diagram.n_crossings + 1):
        members[label[e]].append(e)
    return ResolutionState(tuple(int(bool(b)) for b in state_bits), tuple(tuple(m) for m in members))


def _standard_sign(state: int, k: int) -> int:
    return -1 if bin(state & ((1 << k) - 1)).count("1") % 2 else 1


def _build(
    diagram: PlanarDiagram,
    ring: str,
    reduced: bool,
    lee: bool,
    cap: int | None,
    edge_sign: Callable[[int, int], int] = _standard_sign,
) -> GradedComplex:
    cube = _Cube(diagram)
    n = cube.n
    n_plus, n_minus = diagram.n_plus, diagram.n_minus
    marked_edge = diagram.basepoint_edge
    states_by_r: dict[int, list[int]] = {}
    for s in range(1 << n):
        states_by_r.setdefault(bin(s).count("1"), []).append(s)
    for states in states_by_r.values():
        states.sort(key=lambda s: [s >> k & 1 for k in range(n)])

    def marked(state):
        return cube.circles(state)[0][marked_edge] if reduced else None

    total = 0
    for s in range(1 << n):
        c = cube.circles(s)[1]
        total += 1 << (c - 1 if reduced else c)
    limit = max_generators(cap)
    if total > limit:
        raise ResourceLimitError(f"complex would have {total} generators (cap {limit})")

    offsets: dict[int, int] = {}
    gradings: dict[int, tuple[int, ...]] = {}
    for r, states in states_by_r.items():
        pos = 0
        js: list[int] = []
        for s in states:
            offsets[s] = pos
            c = cube.circles(s)[1]
            p = marked(s)
            shift = r + n_plus - 2 * n_minus + (1 if reduced else 0)
            for lab in range(1 << c):
                if reduced and not lab >> p & 1:
                    continue
                js.append(c - 2 * bin(lab).count("1") + shift)
            pos += 1 << (c - 1 if reduced else c)
        gradings[r - n_minus] = tuple(js)

    def index(state, lab):
        if reduced:
            p = marked(state)
            lab = (lab & ((1 << p) - 1)) | ((lab >> (p + 1)) << p)
        return offsets[state] + lab

    differentials: dict[int, IntMatrix] = {}
    for r in range(n):
        columns: list[dict[int, int]] = []
        for s in states_by_r.get(r, []):
            label_s, c_s = cube.circles(s)
            p = marked(s)
            for lab in range(1 << c_s):
                if reduced and not lab >> p & 1:
                    continue
                columns.append({})
            base = len(columns) - (1 << (c_s - 1 if reduced else c_s))
            for k in range(n):
                if s >> k & 1:
                    continue
                t = s | (1 << k)
                label_t, c_t = cube.circles(t)
                sign = edge_sign(s, k)
                a, b, cc, d = cube.crossings[k]
                # every circle of s that is not touched maps to a circle of t
                image = [None] * c_s
                for e in range(1, 2 * n + 1):
                    image[label_s[e]] = label_t[e]
                for x in range(c_s - cube.extras, c_s):
                    image[x] = x - c_s + c_t
                ca, cc_ = label_s[a], label_s[cc]
                merge = ca != cc_
                if merge:
                    m = label_t[a]
                    others = [(x, image[x]) for x in range(c_s) if x not in (ca, cc_)]
                else:
                    s1, s2 = label_t[a], label_t[b]
                    others = [(x, image[x]) for x in range(c_s) if x != ca]
                col = 0
                for lab in range(1 << c_s):
                    if reduced and not lab >> p & 1:
                        continue
                    target = columns[base + col]
                    col += 1
                    rest = 0
                    for x, y in others:
                        if lab >> x & 1:
                            rest |= 1 << y
                    outs: list[int] = []
                    if merge:
                        x1, x2 = lab >> ca & 1, lab >> cc_ & 1
                        if x1 and x2:
                            if lee:
                                outs.append(rest)
                        else:
                            outs.append(rest | ((x1 | x2) << m))
                    else:
                        if lab >> ca & 1:
                            outs.append(rest | (1 << s1) | (1 << s2))
                            if lee:
                                outs.append(rest)
                        else:
                            outs.append(rest | (1 << s2))
                            outs.append(rest | (1 << s1))
                    for lt in outs:
                        y = index(t, lt)
                        v = target.get(y, 0) + sign
                        if ring == "F2":
                            v %= 2
                        if v:
                            target[y] = v
                        else:
                            target.pop(y, None)
        i = r - n_minus
        rows = len(gradings.get(i + 1, ()))
        differentials[i] = IntMatrix.from_columns(columns, rows)
    return GradedComplex(ring, gradings, differentials, 4 if lee else 0)


def khovanov_complex(
    diagram: PlanarDiagram,
    ring: str = "Z",
    reduced: bool = False,
    max_generators: int | None = None,
    edge_sign: Callable[[int, int], int] | None = None,
) -> GradedComplex:
    """Bigraded Khovanov complex of ``diagram`` over ``ring``.

    The reduced complex (F2 only) is the subcomplex in which the circle
    through the basepoint edge is labelled ``v-``, shifted up by one in
    ``j`` so that the unknot sits at ``(0, 0)``.  ``edge_sign(state, k)``
    replaces the cube-edge sign rule; it exists for fault-injection tests.
    """
    if ring not in ("Z", "F2", "Q"):
        raise ValueError(f"unknown ring {ring!r}")
    if reduced:
        if ring != "F2":
            raise ValueError("reduced Khovanov homology is only provided over F2")
        if diagram.basepoint_edge is None:
            if diagram.n_crossings == 0:
                raise ValueError("reduced homology needs a basepoint on a crossing edge")
            diagram = diagram.with_basepoint(1)
    return _build(diagram, ring, reduced, False, max_generators, edge_sign or _standard_sign)


def lee_complex(diagram: PlanarDiagram, max_generators: int | None = None) -> GradedComplex:
    """Lee's deformation over Q; the differential raises ``j`` by 0 or 4."""
    return _build(diagram, "Q", False, True, max_generators)


def khovanov_homology(
    diagram: PlanarDiagram,
    ring: str = "Z",
    reduced: bool = False,
    max_generators: int | None = None,
    check: bool = True,
) -> BigradedTable:
    return complex_homology(khovanov_complex(diagram, ring, reduced, max_generators), check=check)


def lee_rank(diagram: PlanarDiagram, max_generators: int | None = None, check: bool = True) -> int:
    """Total dimension of Lee homology over Q."""
    return complex_homology(lee_complex(diagram, max_generators), check=check).total_rank()


def total_rank(table: BigradedTable) -> int:
    return table.total_rank()


def poincare_polynomial(table: BigradedTable) -> dict[tuple[int, int], int]:
    """``{(i, j): rank}``, i.e. the coefficients of ``sum rank * t^i q^j``."""
    return {ij: g.free_rank for ij, g in table.items() if g.free_rank}


def format_poincare(poly: dict[tuple[int, int], int]) -> str:
    if not poly:
        return "0"
    terms = []
    for (i, j), c in sorted(poly.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
        parts = []
        if i:
            parts.append("t" if i == 1 else f"t^{i}")
        if j:
            parts.append("q" if j == 1 else f"q^{j}")
        mono = "".join(parts)
        terms.append((f"{c}" if c != 1 or not mono else "") + mono)
    return " + ".join(terms)
