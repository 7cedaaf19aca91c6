"""One line per acceptance criterion: ``CRITERION <n> PASS|FAIL <name> ...``.

All criteria are exact (integer or polynomial equality), so the pinned
tolerance is zero everywhere; the second column of BUDGETS is the
wall-clock bound in seconds.
"""

import time

import pytest

from khdet.verify import (
    PaperConstants,
    Session,
    check_census,
    check_cross_h1,
    check_cyclotomic,
    check_determinant,
    check_euler,
    check_h_jones,
    check_lee,
    check_monodromy,
    check_properties,
    check_reduced,
    check_unknot,
    check_unlink,
    check_witness,
)

TOLERANCE = 0

# criterion -> (check, runtime bound in seconds)
BUDGETS = {
    1: (check_unknot, 1),
    2: (check_unlink, 1),
    3: (check_lee, 120),
    4: (check_reduced, 120),
    5: (check_euler, 120),
    6: (check_monodromy, 1),
    7: (check_cross_h1, 60),
    8: (check_determinant, 60),
    9: (check_witness, 180),
    10: (check_cyclotomic, 1),
    11: (check_h_jones, 60),
    12: (check_census, 30),
    13: (check_properties, 180),
}


@pytest.fixture(scope="module")
def session():
    return Session(PaperConstants(), seed=0)


@pytest.mark.parametrize("criterion", sorted(BUDGETS))
def test_criterion(criterion, session, capsys):
    check, budget = BUDGETS[criterion]
    start = time.perf_counter()
    outcome = check(session)
    elapsed = time.perf_counter() - start
    ok = outcome.passed and elapsed < budget
    with capsys.disabled():
        print(
            f"\nCRITERION {criterion:>2} {'PASS' if ok else 'FAIL'} {outcome.name} "
            f"({elapsed:.2f}s of {budget}s, tolerance {TOLERANCE})"
        )
    assert outcome.passed, outcome.measured
    assert elapsed < budget


def test_fault_injection_corrupt_signs():
    outcome = check_properties(Session(corrupt_signs=True))
    assert not outcome.passed
    assert outcome.measured["d_squared_failures"]


def test_fault_injection_spectral_factor():
    # dim Kh(H_{1,3}; F2) = 16, so a factor of 3 (bound 6) still passes; 9 (bound 18) is the
    # smallest integer factor that trips the check
    assert check_witness(Session(PaperConstants(spectral_factor=3))).passed
    failing = check_witness(Session(PaperConstants(spectral_factor=9)))
    assert not failing.passed and failing.measured["dim_f2"] == 16


def test_constants_are_immutable():
    c = PaperConstants()
    with pytest.raises(TypeError):
        c.hf_ranks["T3"] = 7
    assert dict(c.hf_ranks) == {"S3_0(trefoil)": 2, "S3_0(figure-eight)": 4, "T3": 6}
