from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import strategies as st

from twistloop.groupwords import AElt, TwistedGroup
from twistloop.loopalg import LoopAlgebra
from twistloop.matrep import build_model
from twistloop.scalars import Laurent
from twistloop.suites.checks import build_case

HALF = Fraction(1, 2)


# --- Cached case objects ---

@lru_cache(maxsize=None)
def loop_algebra(series, rank, r):
    return LoopAlgebra(*build_case(series, rank, r))


@lru_cache(maxsize=None)
def twisted_group(series, rank, r):
    return TwistedGroup(*build_case(series, rank, r))


@lru_cache(maxsize=None)
def matrix_model(kind, series, rank, r):
    return build_model(kind, *build_case(series, rank, r))


@pytest.fixture
def case():
    return build_case


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# --- Strategies ---

small_fractions = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


def laurents(r=2, exps=(-4, 4), max_terms=3):
    return st.dictionaries(st.integers(*exps), nonzero_fractions, max_size=max_terms).map(
        lambda terms: Laurent(r, terms)
    )


def units(r=2, exps=(-4, 4)):
    return st.builds(lambda n, c: Laurent.monomial(r, n, c), st.integers(*exps), nonzero_fractions)


@st.composite
def aelts(draw):
    """(chi1, chi1 sigma'(chi1)/2 + t) with t a sum of odd monomials, so sigma'(t) = -t."""
    chi1 = draw(laurents(2))
    odd = draw(st.dictionaries(st.sampled_from([-3, -1, 1, 3]), nonzero_fractions, max_size=2))
    return AElt(chi1, chi1 * chi1.sigma_prime() * HALF + Laurent(2, odd))
