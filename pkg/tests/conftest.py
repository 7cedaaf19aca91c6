import pytest

from khdet import braid_closure, hopf_cable, parse_pd

FIGURE_EIGHT = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"
LEFT_TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


@pytest.fixture(scope="session")
def links():
    return {
        "unknot": parse_pd("PD[] + 1"),
        "unlink2": parse_pd("PD[] + 2"),
        "hopf": braid_closure([1, 1], 2),
        "trefoil": braid_closure([1, 1, 1], 2),
        "left-trefoil": parse_pd(LEFT_TREFOIL),
        "figure-eight": parse_pd(FIGURE_EIGHT),
    }


@pytest.fixture(scope="session")
def h13():
    return hopf_cable(1, 3)
