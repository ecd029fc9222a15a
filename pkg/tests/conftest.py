import pytest

from polyadic.core import derive
from polyadic.groups import (
    automorphism,
    cyclic_group,
    direct_product,
    identity_automorphism,
    inner_automorphism,
    symmetric_group,
)


def build_catalog():
    """Seven instances spanning abelian/nonabelian bases, trivial and
    nontrivial twists, arities 3 and 4."""
    z3 = cyclic_group(3)
    z4 = cyclic_group(4)
    k4 = direct_product(cyclic_group(2), cyclic_group(2), name="K4")
    s3 = symmetric_group(3)
    t = s3.index("102")
    neg4 = automorphism(z4, (0, 3, 2, 1))
    return {
        "p1": derive(z3, identity_automorphism(z3), 0, 3),
        "p2": derive(z3, automorphism(z3, (0, 2, 1)), 0, 3),
        "p3": derive(z4, neg4, 0, 3),
        "p4": derive(z4, neg4, 2, 3),
        "p5": derive(k4, identity_automorphism(k4), k4.index("1_1"), 4),
        "p6": derive(s3, inner_automorphism(s3, t), t, 4),
        "p7": derive(s3, inner_automorphism(s3, t), s3.identity, 3),
    }


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def p1(catalog):
    return catalog["p1"]


@pytest.fixture(scope="session")
def p2(catalog):
    return catalog["p2"]


@pytest.fixture(scope="session")
def p4(catalog):
    return catalog["p4"]


@pytest.fixture(scope="session")
def p7(catalog):
    return catalog["p7"]
