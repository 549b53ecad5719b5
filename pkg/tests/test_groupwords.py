from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import aelts, laurents, twisted_group, units
from twistloop import roots as rt
from twistloop.errors import OmegaError, PayloadError
from twistloop.groupwords import (
    AElt,
    GenAtom,
    KMAtom,
    a_act,
    a_neg,
    a_plus,
    c_of,
    chi_hat,
    h_atom,
    invert_word,
    verify_a_laws,
    verify_gal_act,
    verify_km_action,
    verify_mult_h,
    x_atom,
)
from twistloop.loopalg import affine_cartan_from_form, left_null_vector
from twistloop.scalars import Cyc, Laurent

HALF = Fraction(1, 2)


class TestAElt:
    def test_defining_relation(self):
        assert AElt.of(2, 1, HALF).is_unit()
        with pytest.raises(PayloadError):
            AElt.of(2, 1, 1)

    def test_mismatched_orders(self):
        with pytest.raises(PayloadError):
            AElt.of(2, Laurent.const(3, 1), HALF)

    def test_chi_hat(self):
        e = Laurent.monomial(2, 1, 3)
        chi = chi_hat(e)
        assert chi.chi1 == e
        assert chi.chi2 == Laurent.monomial(2, 2, Fraction(-9, 2))

    def test_c_of_needs_units(self):
        with pytest.raises(PayloadError):
            c_of(AElt.zero(2), AElt.of(2, 1, HALF))
        assert c_of(AElt.of(2, 1, HALF), AElt.of(2, 1, HALF)) == 1

    @given(chi=aelts(), phi=aelts(), psi=aelts())
    @settings(max_examples=60, deadline=None)
    def test_group_laws(self, chi, phi, psi):
        assert a_plus(a_plus(chi, phi), psi) == a_plus(chi, a_plus(phi, psi))
        assert a_plus(chi, AElt.zero(2)) == chi
        assert a_plus(chi, a_neg(chi)).is_zero()
        assert a_plus(a_neg(chi), chi).is_zero()

    @given(chi=aelts(), s=laurents(), t=laurents())
    @settings(max_examples=60, deadline=None)
    def test_action_law(self, chi, s, t):
        assert a_act(s * t, chi) == a_act(s, a_act(t, chi))
        assert a_act(1, chi) == chi

    @given(u=units(), v=units())
    @settings(max_examples=40, deadline=None)
    def test_c_on_chi_hat_payloads(self, u, v):
        assert c_of(chi_hat(u), chi_hat(v)) == u * u.sigma_prime() * (v * v.sigma_prime()).sigma_prime().inv_unit()


class TestPayloads:
    def test_r1_payload_parity(self):
        group = twisted_group("A", 2, 2)
        group.xt((2,), Laurent.monomial(2, 1))
        with pytest.raises(PayloadError):
            group.xt((2,), Laurent.const(2, 1))

    def test_r1_torus_payload_is_only_sigma_fixed(self):
        group = twisted_group("A", 2, 2)
        group.ht((2,), Laurent.const(2, 3))
        with pytest.raises(PayloadError):
            group.ht((2,), Laurent.monomial(2, 1))

    def test_r3_needs_aelt(self):
        group = twisted_group("A", 2, 2)
        with pytest.raises(PayloadError):
            group.xt((1,), Laurent.const(2, 1))
        with pytest.raises(PayloadError):
            group.wt((1,), AElt.of(2, 0, Laurent.monomial(2, 1) + Laurent.monomial(2, -1)))
        with pytest.raises(PayloadError):
            group.ht((1,), AElt.of(2, 1, HALF))

    def test_w_needs_a_unit(self):
        group = twisted_group("A", 3, 2)
        with pytest.raises(PayloadError):
            group.wt((1, 0), Laurent(2, {0: 1, 1: 1}))

    def test_r4_payload_fixed_by_omega(self):
        group = twisted_group("D", 4, 3)
        group.xt((0, 1), Laurent.monomial(3, 2, 5))
        with pytest.raises(PayloadError):
            group.xt((0, 1), Laurent.const(3, Cyc.xi(3)))

    def test_unknown_atom_kind(self):
        with pytest.raises(PayloadError):
            GenAtom.from_json({"kind": "y", "root": [1, 0], "payload": {"laurent": Laurent.z(2).to_json()}})

    def test_atom_json(self):
        group = twisted_group("A", 2, 2)
        atom = group.ht((1,), (AElt.of(2, 1, HALF), chi_hat(Laurent.monomial(2, 1, 2))))
        assert GenAtom.from_json(atom.to_json()) == atom


class TestExpansion:
    def test_r3_letter(self):
        group = twisted_group("A", 2, 2)
        chi = AElt.of(2, 2, 2)
        word = group.expand_twisted(group.xt((1,), chi))
        assert [atom.root for atom in word] == [(1, 0), (0, 1), (1, 1)]
        assert word[0].payload == 2 and word[1].payload == 2
        assert word[2].payload == Laurent.const(2, 2) * group.tbl.n((0, 1), (1, 0))

    def test_r2_letter_follows_the_orbit(self):
        group = twisted_group("A", 3, 2)
        s = Laurent.monomial(2, 1, 3)
        word = group.expand_twisted(group.xt((1, 0), s))
        assert [(atom.root, atom.payload) for atom in word] == [((1, 0, 0), s), ((0, 0, 1), -s)]

    def test_invert_word(self):
        word = [x_atom((1, 0), Laurent.const(2, 1)), x_atom((0, 1), Laurent.z(2))]
        assert invert_word(word) == [x_atom((0, 1), -Laurent.z(2)), x_atom((1, 0), Laurent.const(2, -1))]
        with pytest.raises(PayloadError):
            invert_word([h_atom((1, 0), 2)])


@pytest.mark.parametrize(
    "key,exps",
    [
        (("A", 2, 2), (2, 1)),
        (("A", 4, 2), (2, 2, 1)),
        (("D", 4, 3), (1, 3, 2)),
        (("D", 5, 2), (1, 2, 2, 2, 1)),
        (("A", 3, 2), (1, 1, 2)),
        (("A", 3, 1), (1, 1, 1, 1)),
    ],
)
def test_zk_exponents(key, exps):
    group = twisted_group(*key)
    assert group.zk_exponents() == exps
    assert exps == left_null_vector(affine_cartan_from_form(group.fs))


class TestCenter:
    @pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3), ("A", 5, 2)])
    def test_zk_lies_in_the_kernel(self, key):
        group = twisted_group(*key)
        for tau in (2, Fraction(-1, 3)):
            assert group.kernel_test(group.phi_word(group.zk_element(tau)))
            assert group.is_central([Cyc(group.r, tau) ** v for v in group.zk_exponents()])

    @pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3)])
    def test_perturbed_exponents_leave_the_kernel(self, key):
        group = twisted_group(*key)
        exps = list(group.zk_exponents())
        exps[-1] += 1
        assert not group.kernel_test(group.phi_word(group.zk_element(2, exps)))
        assert not group.is_central([Cyc(group.r, 2) ** v for v in exps])

    def test_phi_outside_omega(self):
        group = twisted_group("A", 2, 2)
        with pytest.raises(OmegaError):
            group.phi(KMAtom("x", (2,), 0, Cyc(2, 1)))

    def test_w_letters_need_nonzero_values(self):
        group = twisted_group("A", 2, 2)
        with pytest.raises(PayloadError):
            group.phi(KMAtom("w", (1,), 0, Cyc(2, 0)))

    def test_torus_of_rejects_x_letters(self):
        group = twisted_group("A", 2, 2)
        with pytest.raises(PayloadError):
            group.torus_of([x_atom((1, 0), 1)])


def test_theta_on_an_r3_root_adds_the_top_letter():
    group = twisted_group("A", 2, 2)
    word = group.theta(KMAtom("x", (1,), 1, Cyc(2, 1)))
    assert [(atom.root, atom.n) for atom in word] == [((1, 0), 1), ((0, 1), 1), ((1, 1), 2)]


def test_psi_sends_h_through_w():
    group = twisted_group("A", 2, 1)
    word = group.psi(KMAtom("h", (1, 0), 2, Cyc(1, 3)))
    assert [atom.kind for atom in word] == ["w", "w"]
    assert word[0].payload == Laurent.monomial(1, 2, 3)


@pytest.mark.parametrize("key", [("A", 2, 2), ("A", 3, 2), ("D", 4, 3), ("D", 4, 2)])
def test_km_action_orders(key, rng):
    report = verify_km_action(twisted_group(*key), rng, samples=6)
    assert report.ok, report.summary()


@pytest.mark.parametrize("key", [("A", 2, 2), ("A", 4, 2), ("D", 4, 3)])
def test_gal_act(key):
    report = verify_gal_act(twisted_group(*key))
    assert report.ok, report.summary()


def test_a_laws(rng):
    report = verify_a_laws(twisted_group("A", 4, 2), rng, samples=50)
    assert report.ok, report.summary()
    assert report.checked == 250


def test_a_laws_need_an_r3_root(rng):
    with pytest.raises(PayloadError):
        verify_a_laws(twisted_group("A", 3, 2), rng, samples=1)
    with pytest.raises(PayloadError):
        verify_mult_h(twisted_group("D", 4, 3))


def test_mult_h():
    report = verify_mult_h(twisted_group("A", 2, 2), limit=30)
    assert report.ok, report.summary()
    assert report.checked == 30 * 31 // 2


def test_r3_roots_only_in_a_even():
    assert rt.R3 in twisted_group("A", 2, 2).fs.tags.values()
    assert rt.R3 not in twisted_group("A", 5, 2).fs.tags.values()
