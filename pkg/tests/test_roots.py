from fractions import Fraction

import numpy as np
import pytest

from twistloop import roots as rt
from twistloop.errors import RootError, UnsupportedCaseError


@pytest.mark.parametrize(
    "series,rank,count",
    [("A", 2, 6), ("A", 4, 20), ("D", 4, 24), ("D", 5, 40), ("E", 6, 72)],
)
def test_root_counts(series, rank, count):
    rs = rt.build_root_system(series, rank)
    assert len(rs.roots) == count
    assert len(rs.positive) == count // 2
    assert rs.dim == count + rank


def test_highest_roots():
    assert rt.build_root_system("A", 4).highest_root() == (1, 1, 1, 1)
    assert rt.build_root_system("D", 4).highest_root() == (1, 2, 1, 1)
    assert rt.build_root_system("E", 6).highest_root() == (1, 2, 3, 2, 2, 1)


@pytest.mark.parametrize(
    "series,rank,r",
    [("A", 1, 2), ("A", 3, 3), ("D", 5, 3), ("E", 6, 3), ("E", 7, 1), ("B", 3, 1), ("D", 3, 2)],
)
def test_unsupported_cases(series, rank, r):
    with pytest.raises(UnsupportedCaseError):
        rt.diagram_aut(series, rank, r)


def test_lex_order_compares_from_the_last_simple_root():
    assert rt.lex_key((1, 1, 1, 0)) < rt.lex_key((0, 1, 1, 1))


def test_weyl_reflection_and_pairing():
    rs = rt.build_root_system("A", 2)
    a1, a2 = rs.simple(0), rs.simple(1)
    assert rt.pairing(rs, a2, a1) == -1
    assert rt.weyl_reflect(rs, a1, a1) == (-1, 0)
    assert rt.weyl_reflect(rs, a1, a2) == (1, 1)
    with pytest.raises(RootError):
        rs.index((1, -1))


class TestFoldA4:
    @pytest.fixture
    def fs(self, case):
        return case("A", 4, 2)[0]

    def test_label_and_orbits(self, fs):
        assert fs.label == "B2"
        assert fs.case == "A4^(2)"
        assert fs.orbits == ((0, 3), (1, 2))
        assert fs.is_a_even

    @pytest.mark.parametrize(
        "image,tag,alpha",
        [
            ((1, 0), rt.R2, (1, 0, 0, 0)),
            ((0, 1), rt.R3, (0, 1, 0, 0)),
            ((0, 2), rt.R1, (0, 1, 1, 0)),
            ((1, 1), rt.R3, (1, 1, 0, 0)),
            ((1, 2), rt.R2, (1, 1, 1, 0)),
            ((2, 2), rt.R1, (1, 1, 1, 1)),
        ],
    )
    def test_positive_images(self, fs, image, tag, alpha):
        assert fs.tag(image) == tag
        assert rt.correspondent(fs, image) == alpha
        assert fs.project(alpha) == image

    def test_only_six_positive_images(self, fs):
        assert fs.positive_images() == [(1, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)]

    def test_doubled_images_leave_delta_sigma(self, fs):
        assert fs.is_doubled((0, 2)) and fs.is_doubled((2, 2))
        assert not fs.is_doubled((1, 2))
        assert (0, 2) not in fs.delta_sigma and (-2, -2) not in fs.delta_sigma
        assert (1, 2) in fs.delta_sigma

    def test_lengths_and_norms(self, fs):
        assert fs.lengths[(0, 2)] == "extra-long"
        assert fs.lengths[(1, 0)] == "long"
        assert fs.lengths[(0, 1)] == "short"
        assert fs.norm_sq((0, 2)) == 2
        assert fs.norm_sq((1, 0)) == 1
        assert fs.norm_sq((0, 1)) == Fraction(1, 2)

    def test_unknown_image(self, fs):
        with pytest.raises(RootError):
            fs.tag((3, 0))

    def test_folded_cartan(self, fs):
        assert rt.folded_cartan(fs).tolist() == [[2, -1], [-2, 2]]

    def test_reflections_stay_in_the_image(self, fs):
        for a in fs.tags:
            for b in fs.tags:
                assert rt.folded_reflect(fs, a, b) in fs.tags


def test_fold_g2(case):
    fs, _ = case("D", 4, 3)
    assert fs.label == "G2"
    assert fs.orbits == ((1,), (0, 2, 3))
    assert rt.folded_cartan(fs).tolist() == [[2, -1], [-3, 2]]
    assert fs.tag((0, 1)) == rt.R4
    assert rt.correspondent(fs, (0, 1)) == (1, 0, 0, 0)
    assert fs.norm_sq((0, 1)) == Fraction(2, 3)
    assert fs.tag((1, 0)) == rt.R1


@pytest.mark.parametrize(
    "series,rank,r,label",
    [("A", 2, 1, "A2"), ("A", 3, 2, "C2"), ("A", 5, 2, "C3"), ("D", 5, 2, "B4"), ("E", 6, 2, "F4")],
)
def test_folded_labels(case, series, rank, r, label):
    assert case(series, rank, r)[0].label == label


@pytest.mark.parametrize(
    "series,rank,r,matrix",
    [
        ("A", 3, 2, [[2, -2], [-1, 2]]),
        ("A", 5, 2, [[2, -1, 0], [-1, 2, -2], [0, -1, 2]]),
        ("A", 6, 2, [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]),
        ("D", 5, 2, [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -2, 2]]),
        ("E", 6, 2, [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]),
        ("D", 4, 3, [[2, -1], [-3, 2]]),
    ],
)
def test_folded_cartan_is_the_folded_type(case, series, rank, r, matrix):
    fs, _ = case(series, rank, r)
    assert rt.folded_cartan(fs).tolist() == matrix
    assert rt.folded_type_cartan(fs.label).tolist() == matrix


def test_folded_type_cartan_rejects_other_labels():
    with pytest.raises(UnsupportedCaseError):
        rt.folded_type_cartan("E6")


def test_untwisted_fold_is_the_identity(case):
    fs, _ = case("A", 3, 1)
    assert np.array_equal(rt.folded_cartan(fs), rt.cartan_matrix("A", 3))
    assert all(tag == rt.R1 for tag in fs.tags.values())


@pytest.mark.parametrize(
    "series,rank,r,coeffs,alpha,tag",
    [
        ("A", 4, 2, (2, 2), (1, 1, 1, 1), rt.R1),
        ("A", 2, 2, (2,), (1, 1), rt.R1),
        ("A", 5, 2, (1, 2, 1), (1, 1, 1, 1, 0), rt.R2),
        ("D", 4, 3, (1, 2), (1, 1, 1, 0), rt.R4),
        ("A", 3, 1, (1, 1, 1), (1, 1, 1), rt.R1),
    ],
)
def test_highest_a0(case, series, rank, r, coeffs, alpha, tag):
    top = rt.highest_a0(case(series, rank, r)[0])
    assert top.coeffs == coeffs
    assert top.alpha == alpha
    assert top.tag == tag
    assert top.a0 == tuple(-c for c in coeffs)


def test_real_roots_a2_twisted(case):
    fs, _ = case("A", 2, 2)
    real = rt.real_roots(fs, 1)
    assert len(real) == 10
    assert ((2,), 0) not in real
    assert ((2,), 1) in real and ((-2,), -1) in real
    assert rt.in_omega(fs, (2,), 3)
    assert not rt.in_omega(fs, (2,), 2)
    assert not rt.in_omega(fs, (3,), 1)


def test_real_roots_respect_the_order_of_r1_roots(case):
    fs, _ = case("D", 4, 3)
    assert rt.in_omega(fs, (1, 0), 3)
    assert not rt.in_omega(fs, (1, 0), 1)
    assert rt.in_omega(fs, (0, 1), 1)


class TestChevalleyConstants:
    def test_a2_values(self, case):
        _, tbl = case("A", 2, 1)
        assert tbl.n((1, 0), (0, 1)) == 1
        assert tbl.n((0, 1), (1, 0)) == -1
        assert tbl.n((-1, 0), (0, -1)) == -1
        assert tbl.n((1, 0), (1, 0)) == 0

    @pytest.mark.parametrize("series,rank,r", [("A", 2, 2), ("A", 4, 2), ("D", 4, 2), ("D", 4, 3)])
    def test_antisymmetry(self, case, series, rank, r):
        _, tbl = case(series, rank, r)
        for (a, b), v in tbl.N.items():
            assert tbl.n(b, a) == -v
            assert v in (1, -1)

    @pytest.mark.parametrize("series,rank", [("A", 2), ("A", 4), ("D", 4), ("D", 5)])
    def test_extraspecial_pairs_are_positive(self, case, series, rank):
        _, tbl = case(series, rank, 1)
        pairs = rt.extraspecial_pairs(tbl.rs)
        assert len(pairs) == len(tbl.rs.positive) - rank
        for gamma, (alpha, beta) in pairs.items():
            assert rt.add(alpha, beta) == gamma
            assert tbl.n(alpha, beta) == 1

    def test_a3_extraspecial_pairs(self, case):
        pairs = rt.extraspecial_pairs(case("A", 3, 1)[1].rs)
        assert pairs[(1, 1, 0)] == ((1, 0, 0), (0, 1, 0))
        assert pairs[(0, 1, 1)] == ((0, 1, 0), (0, 0, 1))
        assert pairs[(1, 1, 1)] == ((1, 0, 0), (0, 1, 1))

    @pytest.mark.parametrize("series,rank,r", [("A", 2, 2), ("A", 4, 2), ("D", 4, 2), ("D", 4, 3), ("A", 3, 1)])
    def test_negated_pairs_flip_the_sign(self, case, series, rank, r):
        _, tbl = case(series, rank, r)
        for (a, b), v in tbl.N.items():
            assert tbl.n(rt.neg(a), rt.neg(b)) == -v

    @pytest.mark.parametrize("series,rank,r", [("A", 2, 2), ("A", 4, 2), ("A", 5, 2), ("D", 5, 2), ("D", 4, 3)])
    def test_k_is_minus_one_exactly_on_twisted_sums(self, case, series, rank, r):
        _, tbl = case(series, rank, r)
        minus = rt.twisted_sum_roots(tbl.rs, tbl.aut)
        assert {a for a, v in tbl.k.items() if v == -1} == minus
        assert all(v == 1 for v in tbl.k_omega.values())

    def test_a2_twisted_sign(self, case):
        _, tbl = case("A", 2, 2)
        assert tbl.k[(1, 1)] == -1
        assert tbl.k[(-1, -1)] == -1
        assert tbl.k[(1, 0)] == 1

    @pytest.mark.parametrize(
        "series,rank,r",
        [("A", 3, 2), ("A", 4, 2), ("A", 5, 2), ("D", 4, 3), ("D", 5, 2), ("A", 3, 1)],
    )
    def test_sign_identities(self, case, series, rank, r):
        report = rt.verify_sign_identities(case(series, rank, r)[1])
        assert report.ok, report.summary()
        assert report.checked > 0

    @pytest.mark.slow
    def test_sign_identities_e6(self, case):
        assert rt.verify_sign_identities(case("E", 6, 2)[1]).ok

    def test_json_export(self, case):
        data = case("A", 2, 2)[1].to_json()
        assert data["r"] == 2
        assert {"alpha": [1, 1], "value": -1} in data["k"]
