"""Khovanov homology, Jones polynomials and branched double covers of planar link diagrams."""

from khdet.diagram import (
    DiagramError,
    PDSyntaxError,
    PlanarDiagram,
    add_r1_kink,
    braid_closure,
    checkerboard,
    connected_sum,
    disjoint_union,
    goeritz_matrix,
    hopf_cable,
    mirror,
    parse_pd,
    serialize_pd,
)
from khdet.homalg import (
    AbelianGroup,
    BigradedTable,
    ChainComplexError,
    GradedComplex,
    IntMatrix,
    cokernel,
    complex_homology,
    smith_normal_form,
)
from khdet.invariants import (
    ConventionError,
    branched_h1,
    determinant,
    invariant_report,
    jones,
    jones_from_kh,
)
from khdet.khovanov import (
    ResourceLimitError,
    khovanov_complex,
    khovanov_homology,
    lee_complex,
    lee_rank,
    poincare_polynomial,
)
from khdet.polynomial import LaurentPolynomial, cyclotomic_part, two_term_shape
from khdet.torusbundle import (
    SL2ZMatrix,
    classify_hopf_cable,
    enumerate_trace_classes,
    hopf_cable_monodromy,
    monodromy_order,
    torus_bundle_h1,
)

__version__ = "0.1.0"
