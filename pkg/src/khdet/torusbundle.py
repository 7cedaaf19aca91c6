"""SL(2, Z) arithmetic for torus-bundle monodromies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from khdet.homalg import AbelianGroup, IntMatrix, cokernel

__all__ = [
    "SL2ZMatrix",
    "INFINITE",
    "hopf_cable_monodromy",
    "torus_bundle_h1",
    "monodromy_order",
    "enumerate_trace_classes",
    "HopfCableClassification",
    "classify_hopf_cable",
]

INFINITE = "infinite"


@dataclass(frozen=True)
class SL2ZMatrix:
    """``[[a, b], [c, d]]`` with ``ad - bc = 1``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"{self.entries} has determinant {self.a * self.d - self.b * self.c}, not 1")

    @classmethod
    def identity(cls) -> "SL2ZMatrix":
        return cls(1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, o: "SL2ZMatrix") -> "SL2ZMatrix":
        return SL2ZMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SL2ZMatrix":
        return SL2ZMatrix(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "SL2ZMatrix":
        return SL2ZMatrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "SL2ZMatrix":
        base = self if k >= 0 else self.inverse()
        out = SL2ZMatrix.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def conjugate(self, p: "SL2ZMatrix") -> "SL2ZMatrix":
        """``P A P^-1``."""
        return p @ self @ p.inverse()

    def minus_identity(self) -> IntMatrix:
        return IntMatrix.from_dense([[self.a - 1, self.b], [self.c, self.d - 1]])

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def hopf_cable_monodromy(m: int, n: int) -> SL2ZMatrix:
    """Monodromy ``[[mn - 1, n], [-m, -1]]`` of the torus bundle covering ``H_{m,n}``."""
    return SL2ZMatrix(m * n - 1, n, -m, -1)


def torus_bundle_h1(a: SL2ZMatrix) -> AbelianGroup:
    """Mayer-Vietoris: ``H_1 = Z + coker(A - I)``."""
    return AbelianGroup(1) + cokernel(a.minus_identity())


def monodromy_order(a: SL2ZMatrix) -> int | str:
    """Least ``k`` with ``A^k = I``, or ``"infinite"``.

    Elements with ``|trace| >= 2`` other than ``+-I`` have infinite order.
    Elements with ``|trace| < 2`` have order 3, 4 or 6, so twelve powers suffice.
    """
    if a == SL2ZMatrix.identity():
        return 1
    if a == -SL2ZMatrix.identity():
        return 2
    if abs(a.trace) >= 2:
        return INFINITE
    power = a
    for k in range(2, 13):
        power = power @ a
        if power == SL2ZMatrix.identity():
            return k
    raise AssertionError(f"elliptic element {a} without finite order")


def _with_trace(trace: int, bound: int) -> Iterable[SL2ZMatrix]:
    for a in range(-bound, bound + 1):
        d = trace - a
        if abs(d) > bound:
            continue
        bc = a * d - 1
        for b in range(-bound, bound + 1):
            if b == 0:
                if bc == 0:
                    for c in range(-bound, bound + 1):
                        yield SL2ZMatrix(a, 0, c, d)
                continue
            if bc % b == 0 and abs(bc // b) <= bound:
                yield SL2ZMatrix(a, b, bc // b, d)


_GENERATORS = (
    SL2ZMatrix(0, -1, 1, 0),  # S
    SL2ZMatrix(1, 1, 0, 1),  # T
    SL2ZMatrix(1, -1, 0, 1),  # T^-1
)


def enumerate_trace_classes(
    traces: Iterable[int], entry_bound: int = 10, working_bound: int = 50
) -> list[SL2ZMatrix]:
    """Representatives of the conjugacy classes met by a bounded search.

    Every matrix with the given traces and ``|entries| <= entry_bound`` is
    enumerated.  Two matrices are then joined when a chain of conjugations
    by ``S``, ``T`` and ``T^-1`` connects them without any entry exceeding
    ``working_bound``.  Each class is represented by its lexicographically
    least ``(a, b, c, d)`` inside the enumeration box.  The search can
    separate matrices that are really conjugate, so it checks a
    classification and proves nothing.
    """
    if entry_bound < 3:
        raise ValueError("entry_bound must be at least 3 for any orbit to close")
    if working_bound < entry_bound:
        raise ValueError("working_bound must be at least entry_bound")
    boxed = sorted({m for t in set(traces) for m in _with_trace(t, entry_bound)}, key=lambda m: m.entries)
    label: dict[SL2ZMatrix, int] = {}
    reps: list[SL2ZMatrix] = []
    for start in boxed:
        if start in label:
            continue
        cls = len(reps)
        reps.append(start)
        label[start] = cls
        stack = [start]
        while stack:
            cur = stack.pop()
            for g in _GENERATORS:
                nxt = cur.conjugate(g)
                if nxt in label or max(map(abs, nxt.entries)) > working_bound:
                    continue
                label[nxt] = cls
                stack.append(nxt)
    return reps


@dataclass(frozen=True)
class HopfCableClassification:
    m: int
    n: int
    monodromy: SL2ZMatrix
    trace: int
    det_a_minus_i: int
    h1: AbelianGroup
    order: int | str
    trefoil_surgery_type: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "monodromy": [[self.monodromy.a, self.monodromy.b], [self.monodromy.c, self.monodromy.d]],
            "trace": self.trace,
            "det_a_minus_i": self.det_a_minus_i,
            "h1": {"free_rank": self.h1.free_rank, "torsion": list(self.h1.torsion), "display": str(self.h1)},
            "order": self.order,
            "trefoil_surgery_type": self.trefoil_surgery_type,
        }


def classify_hopf_cable(m: int, n: int) -> HopfCableClassification:
    """Trace, ``det(A - I)``, H_1 and order for ``H_{m,n}``.

    The flag is raised exactly when the trace is 1 (``mn = 3``).  That is
    the case where the bundle can be zero surgery on a trefoil: the
    monodromy has order 6 and ``H_1 = Z``.
    """
    a = hopf_cable_monodromy(m, n)
    return HopfCableClassification(
        m=m,
        n=n,
        monodromy=a,
        trace=a.trace,
        det_a_minus_i=a.minus_identity().determinant(),
        h1=torus_bundle_h1(a),
        order=monodromy_order(a),
        trefoil_surgery_type=a.trace == 1,
    )
