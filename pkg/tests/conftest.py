import os

import pytest

from hopfspecies.structures import (HopfMonoid, hadamard_hopf, make_E, make_Ek,
                                    make_el, make_L, make_Pal, make_Pi,
                                    make_Pi_even, make_PiPrime, make_Sigma,
                                    make_X)

RUN_SLOW = bool(os.environ.get("HOPF_SLOW"))

slow = pytest.mark.skipif(not RUN_SLOW, reason="set HOPF_SLOW=1 to run")


def mutate_product(h, victim_xy, replacement, name="mutant"):
    """Replace the product value at one basis pair; everything else delegates."""
    x0, y0 = victim_xy

    def mu(S, T, x, y):
        if (x, y) == (x0, y0):
            return replacement
        return h.product(S, T, x, y)

    return HopfMonoid(h.species, mu, lambda S, T, s: h.coproduct(S, T, s),
                      name="%s(%s)" % (name, h.name))


def mutate_coproduct(h, victim, split_labels, replacement, name="mutant"):
    """Replace the coproduct value at one (decomposition, basis) entry."""

    def delta(S, T, s):
        if s == victim and S.labels == split_labels:
            return replacement
        return h.coproduct(S, T, s)

    return HopfMonoid(h.species, lambda S, T, x, y: h.product(S, T, x, y),
                      delta, name="%s(%s)" % (name, h.name))


@pytest.fixture(scope="session")
def E():
    return make_E()


@pytest.fixture(scope="session")
def X():
    return make_X()


@pytest.fixture(scope="session")
def L():
    return make_L()


@pytest.fixture(scope="session")
def Pi():
    return make_Pi()


@pytest.fixture(scope="session")
def PiPrime():
    return make_PiPrime()


@pytest.fixture(scope="session")
def PiEven():
    return make_Pi_even()


@pytest.fixture(scope="session")
def Sigma():
    return make_Sigma()


@pytest.fixture(scope="session")
def Pal():
    return make_Pal()


@pytest.fixture(scope="session")
def E2():
    return make_Ek(2)


@pytest.fixture(scope="session")
def E3():
    return make_Ek(3)


@pytest.fixture(scope="session")
def el():
    return make_el()


@pytest.fixture(scope="session")
def LxPi(L, Pi):
    return hadamard_hopf(L, Pi)
