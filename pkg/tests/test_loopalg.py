import numpy as np
import pytest

from conftest import loop_algebra
from twistloop.errors import OmegaError, RootError
from twistloop.loopalg import H, LieElt, X, affine_cartan_from_form, left_null_vector
from twistloop.scalars import Cyc, Laurent

GCM_CASES = [
    (("A", 2, 2), [[2, -1], [-4, 2]], (2, 1)),
    (("D", 4, 3), [[2, 0, -1], [0, 2, -1], [-1, -3, 2]], (1, 3, 2)),
    (("A", 2, 1), [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], (1, 1, 1)),
]


@pytest.mark.parametrize("key,matrix,null", GCM_CASES)
def test_affine_gcm(key, matrix, null):
    lie = loop_algebra(*key)
    A = lie.chev_generators().matrix
    assert A.tolist() == matrix
    assert np.array_equal(A, affine_cartan_from_form(lie.fs))
    assert left_null_vector(A) == null


@pytest.mark.parametrize("key", [("A", 4, 2), ("A", 5, 2), ("D", 5, 2), ("A", 3, 1)])
def test_gcm_matches_the_form(key):
    lie = loop_algebra(*key)
    A = lie.chev_generators().matrix
    assert np.array_equal(A, affine_cartan_from_form(lie.fs))
    v = np.asarray(left_null_vector(A))
    assert (v > 0).all() and not (v @ A).any()


class _ScaledNorms:
    """A folded system whose squared lengths are off by a factor of 3."""

    def __init__(self, fs):
        self.fs = fs

    def __getattr__(self, name):
        return getattr(self.fs, name)

    def norm_sq(self, a):
        return 3 * self.fs.norm_sq(a)


def test_non_integral_cartan_entries_raise():
    with pytest.raises(RootError, match="not an integer"):
        affine_cartan_from_form(_ScaledNorms(loop_algebra("A", 2, 2).fs))


@pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3), ("A", 3, 2), ("A", 2, 1)])
def test_serre_relations(key):
    report = loop_algebra(*key).verify_serre()
    assert report.ok, report.summary()


def test_serre_bound_skips_long_relations():
    # (A2, 2) has a_{10} = -4, so its Serre relation needs 5 brackets
    report = loop_algebra("A", 2, 2).verify_serre(bound=4)
    assert report.ok
    assert report.skipped == 1


@pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3), ("D", 4, 2), ("A", 3, 1)])
def test_chevalley_pairs(key):
    report = loop_algebra(*key).verify_chevalley_pairs(4)
    assert report.ok, report.summary()


def test_x_tilde_outside_omega():
    lie = loop_algebra("A", 2, 2)
    with pytest.raises(OmegaError):
        lie.x_tilde((2,), 0)
    with pytest.raises(OmegaError):
        lie.chevalley_pair((2,), 2)


def test_x_tilde_is_fixed():
    lie = loop_algebra("A", 2, 2)
    x = lie.x_tilde((1,), 1)
    assert set(x.terms) == {X((1, 0)), X((0, 1))}
    assert x.coeff(X((0, 1))) == Laurent.monomial(2, 1, -1)
    assert lie.is_fixed(x)


def test_central_term_needs_nonzero_degree():
    lie = loop_algebra("A", 2, 1)
    e = LieElt.basis(1, X((1, 0)), Laurent.monomial(1, 2))
    f = LieElt.basis(1, X((-1, 0)), Laurent.monomial(1, -2))
    out = lie.bracket(e, f)
    assert out.c == 2
    assert out.coeff(H(0)) == Laurent.const(1, 1)
    assert lie.bracket(e, LieElt.basis(1, X((-1, 0)))).c == 0


def test_derivation_reads_the_degree():
    lie = loop_algebra("A", 2, 2)
    x = lie.x_tilde((1,), 3)
    out = lie.bracket(LieElt.derivation(2), x)
    assert out == x * 3


def test_scaling_by_a_loop_needs_zero_central_part():
    with pytest.raises(ValueError):
        LieElt.central(2) * Laurent.monomial(2, 1)


def test_h_hat_central_coefficient():
    lie = loop_algebra("A", 4, 2)
    # 2n / (a, a) with (a, a) = 1/2 for the short root (0, 1)
    assert lie.h_hat((0, 1), 1).c == 4
    assert lie.h_hat((0, 2), 1).c == 1


def test_gamma_action_dispatch():
    lie = loop_algebra("D", 4, 3)
    x = LieElt.basis(3, X((1, 0, 0, 0)), Laurent.monomial(3, 1))
    assert lie.gamma_action("sigma", x) == lie.sigma(x)
    assert lie.sigma(lie.sigma(lie.sigma(x))) == x
    assert lie.omega(lie.omega(x)) == x
    with pytest.raises(ValueError):
        lie.gamma_action("tau", x)


@pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3), ("D", 4, 2)])
def test_bracket_laws(key, rng):
    report = loop_algebra(*key).verify_bracket_laws(rng, samples=4)
    assert report.ok, report.summary()


class TestGrading:
    def test_untwisted_components_are_all_of_g(self):
        lie = loop_algebra("A", 3, 1)
        assert all(lie.graded_dim(n) == 15 for n in range(-2, 3))
        assert lie.imaginary_multiplicity(1) == 3

    def test_a4_twisted(self):
        lie = loop_algebra("A", 4, 2)
        assert lie.graded_dim(0) == 10
        assert lie.graded_dim(2) == 10
        assert lie.graded_dim(0) + lie.graded_dim(1) == 24
        assert lie.imaginary_multiplicity(2) == 2
        assert lie.imaginary_multiplicity(1) == 2

    def test_d4_triality(self):
        lie = loop_algebra("D", 4, 3)
        assert lie.imaginary_multiplicity(3) == 2
        assert lie.imaginary_multiplicity(1) == 1
        assert lie.imaginary_multiplicity(-2) == 1
        assert sum(lie.graded_dim(n) for n in range(3)) == 28

    @pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("A", 5, 2), ("D", 4, 3), ("D", 5, 2)])
    def test_split_into_real_and_imaginary(self, key):
        report = loop_algebra(*key).verify_grading()
        assert report.ok, report.summary()


def test_zero_element():
    z = LieElt.zero(3)
    assert not z
    assert z == LieElt(3, {X((1, 0, 0, 0)): Laurent.zero(3)}, c=Cyc(3), d=0)
