"""Planar diagrams of oriented links.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting
from the incoming under-strand (the KnotTheory ``X[a,b,c,d]`` convention):
the under-strand runs ``a -> c`` and the over-strand joins ``b`` and ``d``.
A crossing is positive when its over-strand runs ``d -> b``.

Unknotted circles that meet no crossing are kept as a counter
(``unknotted_extras``) instead of being encoded with fake crossings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from khdet.homalg import IntMatrix

__all__ = [
    "DiagramError",
    "PDSyntaxError",
    "PlanarDiagram",
    "CheckerboardStructure",
    "parse_pd",
    "serialize_pd",
    "braid_closure",
    "hopf_cable",
    "mirror",
    "disjoint_union",
    "connected_sum",
    "add_r1_kink",
    "connected_pieces",
    "faces",
    "checkerboard",
    "goeritz_matrix",
]

Crossing = tuple[int, int, int, int]
Occurrence = tuple[int, int]  # (crossing index, position 0..3)


class DiagramError(ValueError):
    """Raised for diagrams that violate the planar-diagram invariants."""


class PDSyntaxError(DiagramError):
    """Malformed PD text; ``position`` is the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# --------------------------------------------------------------------------
# orientation and validation


def _occurrences(crossings: Sequence[Crossing]) -> dict[int, list[Occurrence]]:
    occ: dict[int, list[Occurrence]] = {}
    for ci, x in enumerate(crossings):
        if len(x) != 4:
            raise DiagramError(f"crossing {ci} does not have four edges")
        for p, e in enumerate(x):
            occ.setdefault(e, []).append((ci, p))
    for e, where in occ.items():
        if len(where) != 2:
            raise DiagramError(f"edge {e} appears {len(where)} times (expected 2)")
    return occ


def _other(occ: dict[int, list[Occurrence]], e: int, here: Occurrence) -> Occurrence:
    first, second = occ[e]
    return second if first == here else first


def _fallback_forward(x: Crossing) -> bool:
    """Label rule for components that never pass under: d -> b iff b follows d."""
    b, d = x[1], x[3]
    return b - d == 1 or d - b > 1


def _orient(crossings: Sequence[Crossing], signs: Sequence[int] | None = None):
    """Orient every component and derive crossing signs.

    Under-strands fix the direction of the components they belong to; when
    ``signs`` is given, over-strands do too.  Components that are never
    constrained fall back to the consecutive-label rule.

    Returns ``(signs, components, heads)`` where ``heads[e]`` is the
    occurrence at which edge ``e`` ends.
    """
    occ = _occurrences(crossings)
    seen: set[int] = set()
    components: list[tuple[int, ...]] = []
    heads: dict[int, Occurrence] = {}
    for start in sorted(occ):
        if start in seen:
            continue
        # walk the component, entering each edge at occ[start][1]
        edges: list[int] = []
        passages: list[tuple[int, int, int]] = []  # (crossing, in position, out position)
        enter = occ[start][1]
        e = start
        while True:
            edges.append(e)
            seen.add(e)
            ci, p = enter
            q = (p + 2) % 4
            passages.append((ci, p, q))
            e = crossings[ci][q]
            if e == start and (ci, q) == occ[start][0]:
                break
            if e in seen:
                # re-entering a visited edge anywhere but the start is a broken strand
                raise DiagramError(f"edge {e} closes a strand inconsistently")
            enter = _other(occ, e, (ci, q))
        forward = backward = 0
        for ci, p, q in passages:
            if p % 2 == 0:
                if p == 0:
                    forward += 1
                else:
                    backward += 1
            elif signs is not None:
                if (p == 3) == (signs[ci] > 0):
                    forward += 1
                else:
                    backward += 1
        if forward and backward:
            raise DiagramError(f"inconsistent orientation on the component through edge {start}")
        if not forward and not backward:
            ci, p, _ = passages[0]
            reverse = (p == 3) != _fallback_forward(crossings[ci])
        else:
            reverse = backward > 0
        if not reverse:
            comp_passages = passages
            ordered = edges
        else:
            comp_passages = [(ci, q, p) for ci, p, q in reversed(passages)]
            # the reversed walk leaves each crossing along the edge that entered it before
            ordered = [edges[0]] + edges[:0:-1]
        for ci, p, q in comp_passages:
            heads[crossings[ci][p]] = (ci, p)
        components.append(tuple(ordered))
    derived = []
    for ci, x in enumerate(crossings):
        if heads[x[0]] != (ci, 0):
            raise DiagramError(f"crossing {ci}: under-strand does not enter at the first position")
        derived.append(1 if heads[x[3]] == (ci, 3) else -1)
    if signs is not None and list(signs) != derived:
        raise DiagramError("stored crossing signs disagree with the orientation")
    return tuple(derived), tuple(components), heads


def faces(crossings: Sequence[Crossing]) -> list[list[Occurrence]]:
    """Regions of the diagram as cycles of corners.

    Corner ``(c, p)`` is the region between positions ``p`` and ``p+1`` of
    crossing ``c``.  Leaving along position ``p+1`` and arriving at
    ``(c', p')`` keeps the region on the same side, at corner ``(c', p')``.
    """
    occ = _occurrences(crossings)
    visited: set[Occurrence] = set()
    out: list[list[Occurrence]] = []
    for ci in range(len(crossings)):
        for p in range(4):
            if (ci, p) in visited:
                continue
            face = []
            corner = (ci, p)
            while corner not in visited:
                visited.add(corner)
                face.append(corner)
                c, r = corner
                leave = (c, (r + 1) % 4)
                corner = _other(occ, crossings[c][leave[1]], leave)
            out.append(face)
    return out


def _crossing_pieces(crossings: Sequence[Crossing]) -> list[list[int]]:
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e, where in _occurrences(crossings).items():
        a, b = find(where[0][0]), find(where[1][0])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(crossings)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _check_planar(crossings: Sequence[Crossing]) -> None:
    if not crossings:
        return
    n = len(crossings)
    pieces = len(_crossing_pieces(crossings))
    f = len(faces(crossings))
    if n - 2 * n + f != 2 * pieces:
        raise DiagramError(
            f"diagram is not planar: {f} regions for {n} crossings in {pieces} piece(s)"
        )


# --------------------------------------------------------------------------
# the diagram type


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented link diagram.

    Edges are labelled ``1..2n``; ``components`` lists each component's
    edges in the order of its orientation.  Construct through
    :meth:`from_crossings` (or :func:`parse_pd`) so that signs and
    components are derived rather than supplied.
    """

    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    unknotted_extras: int = 0
    basepoint_edge: int | None = None

    def __post_init__(self):
        n = len(self.crossings)
        labels = sorted(e for x in self.crossings for e in x)
        if labels != sorted(list(range(1, 2 * n + 1)) * 2):
            if any(labels.count(e) != 2 for e in set(labels)):
                _occurrences(self.crossings)
            raise DiagramError(f"edge labels must be exactly 1..{2 * n}")
        if self.unknotted_extras < 0:
            raise DiagramError("negative number of unknotted circles")
        if n == 0 and self.unknotted_extras == 0:
            raise DiagramError("empty diagram: a link needs at least one component")
        signs, comps, _ = _orient(self.crossings, self.signs)
        if comps != self.components:
            raise DiagramError("component partition disagrees with crossing incidence")
        _check_planar(self.crossings)
        if self.basepoint_edge is not None and not 1 <= self.basepoint_edge <= 2 * n:
            raise DiagramError(f"basepoint edge {self.basepoint_edge} is not an edge")

    @classmethod
    def from_crossings(
        cls,
        crossings: Iterable[Sequence[int]],
        unknotted_extras: int = 0,
        basepoint_edge: int | None = None,
        signs: Sequence[int] | None = None,
    ) -> "PlanarDiagram":
        xs = tuple(tuple(int(e) for e in x) for x in crossings)
        _occurrences(xs)
        derived, comps, _ = _orient(xs, signs)
        return cls(xs, derived, comps, unknotted_extras, basepoint_edge)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.unknotted_extras

    @property
    def edges(self) -> range:
        return range(1, 2 * len(self.crossings) + 1)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def heads(self) -> dict[int, Occurrence]:
        """Occurrence ``(crossing, position)`` where each edge ends."""
        return _orient(self.crossings, self.signs)[2]

    @cached_property
    def tails(self) -> dict[int, Occurrence]:
        occ = _occurrences(self.crossings)
        return {e: _other(occ, e, h) for e, h in self.heads.items()}

    def with_basepoint(self, edge: int | None) -> "PlanarDiagram":
        return PlanarDiagram(
            self.crossings, self.signs, self.components, self.unknotted_extras, edge
        )

    def __str__(self) -> str:
        return serialize_pd(self)


def _canonical(
    crossings: Sequence[Crossing],
    signs: Sequence[int],
    extras: int = 0,
    basepoint: int | None = None,
) -> PlanarDiagram:
    """Relabel arbitrary positive labels as 1..2n, consecutively along components."""
    xs = [tuple(x) for x in crossings]
    if not xs:
        return PlanarDiagram((), (), (), extras, None)
    _, comps, _ = _orient(xs, signs)
    relabel: dict[int, int] = {}
    for comp in comps:
        for e in comp:
            relabel[e] = len(relabel) + 1
    new = tuple(tuple(relabel[e] for e in x) for x in xs)
    bp = relabel[basepoint] if basepoint is not None else None
    return PlanarDiagram.from_crossings(new, extras, bp, signs)


# --------------------------------------------------------------------------
# PD text


class _PDParser:
    _ws = re.compile(r"\s*")
    _int = re.compile(r"\d+")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        self.pos = self._ws.match(self.text, self.pos).end()

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos : self.pos + 1]

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            raise PDSyntaxError(f"expected {token!r}, found {found!r}", self.pos)
        self.pos += len(token)

    def integer(self) -> int:
        self.skip()
        m = self._int.match(self.text, self.pos)
        if not m:
            raise PDSyntaxError("expected a positive integer", self.pos)
        value = int(m.group())
        if value == 0:
            raise PDSyntaxError("edge labels must be positive", self.pos)
        self.pos = m.end()
        return value

    def parse(self) -> tuple[list[Crossing], int]:
        self.expect("PD")
        self.expect("[")
        crossings = []
        if self.peek() != "]":
            while True:
                self.expect("X")
                close = ")" if self.peek() == "(" else "]"  # KnotTheory writes X[...]
                self.expect("(" if close == ")" else "[")
                labels = [self.integer()]
                for _ in range(3):
                    self.expect(",")
                    labels.append(self.integer())
                self.expect(close)
                crossings.append(tuple(labels))
                if self.peek() != ",":
                    break
                self.expect(",")
        self.expect("]")
        extras = 0
        if self.peek() == "+":
            self.expect("+")
            self.skip()
            m = self._int.match(self.text, self.pos)
            if not m:
                raise PDSyntaxError("expected a circle count", self.pos)
            extras = int(m.group())
            self.pos = m.end()
        self.skip()
        if self.pos != len(self.text):
            raise PDSyntaxError("trailing characters", self.pos)
        return crossings, extras


def parse_pd(text: str) -> PlanarDiagram:
    """Parse ``PD[X(a,b,c,d),...]``, optionally followed by ``+ k`` circles.

    >>> parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").n_components
    1
    """
    crossings, extras = _PDParser(text).parse()
    return PlanarDiagram.from_crossings(crossings, extras)


def serialize_pd(diagram: PlanarDiagram) -> str:
    body = ",".join("X(%d,%d,%d,%d)" % x for x in diagram.crossings)
    text = f"PD[{body}]"
    if diagram.unknotted_extras:
        text += f" + {diagram.unknotted_extras}"
    return text


# --------------------------------------------------------------------------
# constructions


def braid_closure(word: Sequence[int], strands: int) -> PlanarDiagram:
    """Closure of a braid word; generator ``i`` crosses strands ``i`` and ``i+1``.

    Strands run upward and ``+i`` is a positive crossing (the left strand
    passes over).  Strands never touched by a generator close up into
    zero-crossing circles.
    """
    if strands < 1:
        raise ValueError("a braid needs at least one strand")
    bottom = list(range(1, strands + 1))
    current = list(bottom)
    fresh = strands
    crossings: list[list[int]] = []
    signs: list[int] = []
    for g in word:
        i = abs(int(g))
        if i == 0 or i >= strands:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        bl, br = current[i - 1], current[i]
        tl, tr = fresh + 1, fresh + 2
        fresh += 2
        if g > 0:
            crossings.append([br, tr, tl, bl])
            signs.append(1)
        else:
            crossings.append([bl, br, tr, tl])
            signs.append(-1)
        current[i - 1], current[i] = tl, tr
    closing = {top: bot for top, bot in zip(current, bottom) if top != bot}
    extras = sum(1 for top, bot in zip(current, bottom) if top == bot)
    xs = [tuple(closing.get(e, e) for e in x) for x in crossings]
    return _canonical(xs, signs, extras)


def hopf_cable(m: int, n: int) -> PlanarDiagram:
    """The 2-cabled Hopf link ``H_{m,n}`` with twist regions of m and n crossings.

    Built as the closure of the 4-strand braid
    ``(s2 s1 s3 s2)^2 s1^m s3^n``: each strand of the Hopf braid ``s1^2`` is
    doubled, and the twist regions act on the two doubled pairs.  Positive
    twist counts give positive (right-handed) half twists.  The clasp takes
    the handedness of the twists (positive on a tie), so that
    ``hopf_cable(-m, -n)`` is the crossing-change mirror of ``hopf_cable(m, n)``
    as long as ``(m, n) != (0, 0)``.
    """
    clasp = -1 if (m + n < 0 or (m + n == 0 and m < 0)) else 1
    word = [clasp * g for g in (2, 1, 3, 2, 2, 1, 3, 2)]
    word += [1 if m > 0 else -1] * abs(m)
    word += [3 if n > 0 else -3] * abs(n)
    return braid_closure(word, 4)


def mirror(diagram: PlanarDiagram) -> PlanarDiagram:
    """Change every crossing; the tuple is rotated to start at the new under-strand."""
    xs = []
    for (a, b, c, d), s in zip(diagram.crossings, diagram.signs):
        xs.append((d, a, b, c) if s > 0 else (b, c, d, a))
    return PlanarDiagram(
        tuple(xs),
        tuple(-s for s in diagram.signs),
        diagram.components,
        diagram.unknotted_extras,
        diagram.basepoint_edge,
    )


def _shift(diagram: PlanarDiagram, offset: int) -> list[Crossing]:
    return [tuple(e + offset for e in x) for x in diagram.crossings]


def disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    offset = 2 * d1.n_crossings
    xs = list(d1.crossings) + _shift(d2, offset)
    bp = d1.basepoint_edge
    if bp is None and d2.basepoint_edge is not None:
        bp = d2.basepoint_edge + offset
    return PlanarDiagram.from_crossings(
        xs, d1.unknotted_extras + d2.unknotted_extras, bp, d1.signs + d2.signs
    )


def connected_sum(d1: PlanarDiagram, edge1: int, d2: PlanarDiagram, edge2: int) -> PlanarDiagram:
    """Splice ``d2`` into ``d1`` by cutting ``edge1`` and ``edge2``.

    The tail of ``edge1`` is joined to the head of ``edge2`` and the tail
    of ``edge2`` to the head of ``edge1``, which respects orientations.
    """
    if edge1 not in d1.edges:
        raise DiagramError(f"edge {edge1} is not an edge of the first diagram")
    if edge2 not in d2.edges:
        raise DiagramError(f"edge {edge2} is not an edge of the second diagram")
    offset = 2 * d1.n_crossings
    xs = [list(x) for x in d1.crossings] + [list(x) for x in _shift(d2, offset)]
    fresh = offset + 2 * d2.n_crossings + 1
    head1 = d1.heads[edge1]
    c2, p2 = d2.heads[edge2]
    t2c, t2p = d2.tails[edge2]
    xs[head1[0]][head1[1]] = fresh
    xs[c2 + d1.n_crossings][p2] = edge1
    xs[t2c + d1.n_crossings][t2p] = fresh
    return _canonical(
        [tuple(x) for x in xs],
        d1.signs + d2.signs,
        d1.unknotted_extras + d2.unknotted_extras,
        d1.basepoint_edge,
    )


def add_r1_kink(diagram: PlanarDiagram, edge: int | None, sign: int) -> PlanarDiagram:
    """Insert a Reidemeister-I curl of the given sign on ``edge``.

    ``edge=None`` curls one of the zero-crossing circles instead.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    xs = [list(x) for x in diagram.crossings]
    extras = diagram.unknotted_extras
    if edge is None:
        if extras == 0:
            raise DiagramError("no zero-crossing circle to curl")
        extras -= 1
        e = y = 2 * diagram.n_crossings + 1
    else:
        if edge not in diagram.edges:
            raise DiagramError(f"edge {edge} is not an edge of the diagram")
        e = edge
        y = 2 * diagram.n_crossings + 1
        hc, hp = diagram.heads[edge]
        xs[hc][hp] = y
    x = 2 * diagram.n_crossings + 2
    xs.append([e, y, x, x] if sign > 0 else [x, e, y, x])
    return _canonical(
        [tuple(c) for c in xs], diagram.signs + (sign,), extras, diagram.basepoint_edge
    )


def connected_pieces(diagram: PlanarDiagram) -> tuple[list[PlanarDiagram], int]:
    """Split into diagrams whose crossings form connected plane graphs.

    Returns the pieces (each relabelled) and the number of zero-crossing
    circles, which are not included among the pieces.
    """
    pieces = []
    for group in _crossing_pieces(diagram.crossings):
        xs = [diagram.crossings[i] for i in group]
        pieces.append(_canonical(xs, [diagram.signs[i] for i in group]))
    return pieces, diagram.unknotted_extras


# --------------------------------------------------------------------------
# checkerboard colouring and the Goeritz matrix


@dataclass(frozen=True)
class CheckerboardStructure:
    """Two-coloured regions of a connected diagram.

    ``faces[k]`` is ``(corners, shaded)``; ``incidences[c]`` is
    ``(white face, white face, eta)`` for crossing ``c``, where
    ``eta = +1`` when the white corners are the ones reached by turning
    counterclockwise from the under-strand to the over-strand.  Face 0 is
    the white outer region.
    """

    faces: tuple[tuple[tuple[Occurrence, ...], bool], ...]
    incidences: tuple[tuple[int, int, int], ...]
    white: tuple[int, ...] = field(default=())


def checkerboard(diagram: PlanarDiagram) -> CheckerboardStructure:
    if diagram.unknotted_extras or len(_crossing_pieces(diagram.crossings)) != 1:
        raise DiagramError("checkerboard colouring needs a connected diagram")
    regions = faces(diagram.crossings)
    # the largest region plays the unbounded one
    outer = max(range(len(regions)), key=lambda k: (len(regions[k]), -k))
    regions = [regions[outer]] + regions[:outer] + regions[outer + 1 :]
    where = {corner: k for k, face in enumerate(regions) for corner in face}
    colour: dict[int, bool] = {0: False}
    stack = [0]
    adjacency: dict[int, set[int]] = {}
    for ci in range(diagram.n_crossings):
        for p in range(4):
            a, b = where[(ci, p - 1 if p else 3)], where[(ci, p)]
            adjacency.setdefault(a, set()).add(b)
            adjacency.setdefault(b, set()).add(a)
    while stack:
        k = stack.pop()
        for other in adjacency.get(k, ()):
            if other not in colour:
                colour[other] = not colour[k]
                stack.append(other)
            elif colour[other] == colour[k]:
                raise DiagramError("regions do not admit a proper two-colouring")
    incidences = []
    for ci in range(diagram.n_crossings):
        if not colour[where[(ci, 0)]]:
            incidences.append((where[(ci, 0)], where[(ci, 2)], 1))
        else:
            incidences.append((where[(ci, 1)], where[(ci, 3)], -1))
    return CheckerboardStructure(
        faces=tuple((tuple(face), colour[k]) for k, face in enumerate(regions)),
        incidences=tuple(incidences),
        white=tuple(k for k in range(len(regions)) if not colour[k]),
    )


def goeritz_matrix(diagram: PlanarDiagram) -> IntMatrix:
    """Goeritz matrix of a connected diagram, outer white region deleted."""
    board = checkerboard(diagram)
    index = {k: i for i, k in enumerate(board.white)}
    size = len(index)
    g = [[0] * size for _ in range(size)]
    for u, v, eta in board.incidences:
        if u == v:
            continue
        i, j = index[u], index[v]
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return IntMatrix.from_dense([row[1:] for row in g[1:]], size - 1, size - 1)
