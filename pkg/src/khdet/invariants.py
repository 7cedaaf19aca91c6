"""Jones polynomial (state sum and Khovanov Euler characteristic), determinant, H_1 of the branched double cover.

Jones polynomials are stored in ``q`` with the Khovanov normalisation
``q = -t^(1/2)``.  With it, the graded Euler characteristic of Kh is exactly
``(q + q^-1) * J(q)``, and substituting back gives the usual ``V(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from khdet.diagram import PlanarDiagram, connected_pieces, goeritz_matrix
from khdet.homalg import AbelianGroup, BigradedTable, cokernel
from khdet.khovanov import khovanov_homology, max_generators, ResourceLimitError
from khdet.polynomial import LaurentPolynomial, cyclotomic_part, two_term_shape

__all__ = [
    "ConventionError",
    "kauffman_bracket",
    "jones",
    "jones_from_kh",
    "to_t_polynomial",
    "format_jones",
    "determinant",
    "branched_h1",
    "cyclotomic_part",
    "two_term_shape",
    "InvariantReport",
    "invariant_report",
]


class ConventionError(ArithmeticError):
    """Two routes to the same invariant disagree; a sign or grading convention is broken."""


def kauffman_bracket(diagram: PlanarDiagram, max_states: int | None = None) -> LaurentPolynomial:
    """Normalised Kauffman bracket in ``A`` (unknot = 1), by the full state sum."""
    from khdet.khovanov import _Cube

    n = diagram.n_crossings
    if (1 << n) > max_generators(max_states):
        raise ResourceLimitError(f"state sum over 2^{n} states exceeds the cap")
    cube = _Cube(diagram)
    counts: dict[tuple[int, int], int] = {}
    for s in range(1 << n):
        ones = bin(s).count("1")
        key = (n - 2 * ones, cube.circles(s)[1])
        counts[key] = counts.get(key, 0) + 1
    delta = LaurentPolynomial({2: -1, -2: -1}, "A")
    powers = {}
    total = LaurentPolynomial({}, "A")
    for (a_exp, circles), mult in counts.items():
        if circles not in powers:
            powers[circles] = delta ** (circles - 1)
        total = total + powers[circles].shift(a_exp) * mult
    return total


def jones(diagram: PlanarDiagram) -> LaurentPolynomial:
    """Jones polynomial in ``q`` (``q = -t^(1/2)``) from the writhe-normalised bracket.

    >>> from khdet.diagram import braid_closure
    >>> str(jones(braid_closure([1, 1, 1], 2)))
    '-q^8 + q^6 + q^2'
    """
    bracket = kauffman_bracket(diagram)
    w = diagram.writhe
    normalised = bracket.shift(-3 * w) * (-1 if w % 2 else 1)
    out: dict[int, int] = {}
    for e, c in normalised.coeffs.items():
        if e % 2:
            raise ConventionError(f"odd power A^{e} in a normalised bracket")
        k = e // 2  # A^(2k) = (-q^-1)^k
        out[-k] = out.get(-k, 0) + (-c if k % 2 else c)
    return LaurentPolynomial(out, "q")


def jones_from_kh(table: BigradedTable) -> LaurentPolynomial:
    """Divide the graded Euler characteristic of Kh by ``q + q^-1`` (exactly)."""
    chi: dict[int, int] = {}
    for (i, j), g in table.items():
        chi[j] = chi.get(j, 0) + (-1) ** (i % 2) * g.free_rank
    euler = LaurentPolynomial(chi, "q")
    quotient, rest = euler.divmod(LaurentPolynomial({1: 1, -1: 1}, "q"))
    if rest:
        raise ConventionError(f"Euler characteristic {euler} is not divisible by q + q^-1")
    return quotient


def to_t_polynomial(j: LaurentPolynomial) -> LaurentPolynomial:
    """Substitute ``q = -t^(1/2)``; exponent ``k`` of the result means ``t^(k/2)``."""
    return LaurentPolynomial({e: (-c if e % 2 else c) for e, c in j.coeffs.items()}, "t")


def format_jones(j: LaurentPolynomial) -> str:
    return to_t_polynomial(j).format("t", halves=True)


def branched_h1(diagram: PlanarDiagram) -> AbelianGroup:
    """H_1 of the branched double cover.

    Each non-split piece contributes the cokernel of its Goeritz matrix, and
    each extra split piece adds an ``S^1 x S^2`` summand, i.e. a copy of Z.
    """
    pieces, extras = connected_pieces(diagram)
    group = AbelianGroup(len(pieces) + extras - 1)
    for piece in pieces:
        group = group + cokernel(goeritz_matrix(piece))
    return group


def _det_from_jones(j: LaurentPolynomial) -> int:
    re, im = j.eval_at_i()
    if re and im:
        raise ConventionError("Jones polynomial has exponents of mixed parity")
    return abs(re) + abs(im)


def determinant(diagram: PlanarDiagram) -> int:
    """``|V(-1)|``, cross-checked against the order of H_1 of the branched double cover."""
    via_jones = _det_from_jones(jones(diagram))
    order = branched_h1(diagram).order
    via_goeritz = 0 if order is None else order
    if via_jones != via_goeritz:
        raise ConventionError(f"determinant routes disagree: |J(-1)| = {via_jones}, |H_1| = {via_goeritz}")
    return via_jones


@dataclass(frozen=True)
class InvariantReport:
    jones: LaurentPolynomial
    determinant: int
    branched_h1: AbelianGroup
    kh_ranks: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        order = self.branched_h1.order
        if self.determinant != (0 if order is None else order):
            raise ConventionError("determinant does not match |H_1| of the branched double cover")

    def to_dict(self) -> dict:
        return {
            "jones": {
                "q": {str(k): v for k, v in sorted(self.jones.coeffs.items())},
                "display": format_jones(self.jones),
            },
            "determinant": self.determinant,
            "branched_h1": {
                "free_rank": self.branched_h1.free_rank,
                "torsion": list(self.branched_h1.torsion),
                "display": str(self.branched_h1),
            },
            "kh_ranks": dict(sorted(self.kh_ranks.items())),
        }


def invariant_report(
    diagram: PlanarDiagram,
    rings: tuple[str, ...] = ("Z", "F2"),
    max_generators: int | None = None,
) -> InvariantReport:
    ranks = {
        ring: khovanov_homology(diagram, ring, max_generators=max_generators).total_rank()
        for ring in rings
    }
    return InvariantReport(jones(diagram), determinant(diagram), branched_h1(diagram), ranks)
