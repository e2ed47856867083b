import pytest

from torsor.chains import parse_signed_chain
from torsor.matroid import RegularMatroid
from torsor.signatures import CircuitSignature, CocircuitSignature, SignaturePair

# the running example: a triangle with a doubled edge, realized by the
# signed incidence matrix of the graph f1: v2->v1, f2: v2->v3,
# f3: v1->v3, f4: v1->v3
FIG1_ROWS = [
    [1, 0, -1, -1],
    [-1, -1, 0, 0],
    [0, 1, 1, 1],
]
FIG1_ELEMENTS = ["f1", "f2", "f3", "f4"]
FIG1_EDGES = [("v2", "v1", "f1"), ("v2", "v3", "f2"), ("v1", "v3", "f3"), ("v1", "v3", "f4")]

SIGMA_CHAINS = ["+f1-f2+f3", "+f1-f2+f4", "-f3+f4"]
SIGMA_STAR_CHAINS = ["-f1+f3+f4", "-f1-f2", "+f2+f3+f4"]

FIG1_EMBEDDING = """
{
  "edges": {"f1": ["v2","v1"], "f2": ["v2","v3"], "f3": ["v1","v3"], "f4": ["v1","v3"]},
  "vertices": {"v1": ["f4","f3","f1"], "v2": ["f1","f2"], "v3": ["f2","f3","f4"]},
  "outer_face": ["f1","f2","f4"],
  "root": "v1"
}
"""


@pytest.fixture(scope="session")
def fig1():
    return RegularMatroid.from_matrix(FIG1_ROWS, elements=FIG1_ELEMENTS)


@pytest.fixture(scope="session")
def fig1_pair(fig1):
    sigma = CircuitSignature.from_chains(
        fig1, [parse_signed_chain(fig1.ground, s) for s in SIGMA_CHAINS]
    )
    sigma_star = CocircuitSignature.from_chains(
        fig1, [parse_signed_chain(fig1.ground, s) for s in SIGMA_STAR_CHAINS]
    )
    return SignaturePair(sigma, sigma_star)


@pytest.fixture(scope="session")
def fig1_instance(fig1, fig1_pair):
    from torsor.bby import BBYInstance

    return BBYInstance(fig1, fig1_pair)
