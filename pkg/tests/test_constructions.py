import sys
import pathlib
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import is_self_injective, path_algebra
from domain.constructions import (
    AlgebraAutomorphism,
    AutomorphismError,
    IsoBudget,
    algebra_isomorphism,
    find_twist_witness,
    invariant_mismatch,
    orbit_algebra,
    period_dimension,
    quiver_automorphisms,
    r_fold_trivial_extension,
    repetitive_truncation,
    socle_equivalent,
    trivial_extension,
    twisted_trivial_extension,
)
from domain.linalg import FieldSpec, Matrix
from domain.status import Verdict
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"
Q = FieldSpec.rationals()


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


def _swap_twist():
    """B = K(1 -> 3 <- 2) et l'échange σ déclaré dans le document, sur la même instance."""
    doc = parse_file(SAMPLES / "kq_1_3_2.alg")
    b = doc.build()
    return b, doc.automorphism("swap", b)


# ------------------------------------------------------------------ #
# Extensions triviales
# ------------------------------------------------------------------ #


class TestTrivialExtension(TestCase):
    def test_r_fold_dimensions_match_repetitive_window(self):
        b = sample("ka2")
        for r in (1, 2, 3):
            with self.subTest(r=r):
                t = r_fold_trivial_extension(b, r)
                self.assertEqual(t.dim, 2 * r * b.dim)
                self.assertEqual(t.dim, period_dimension(b, r))
                self.assertEqual(t.n_vertices, r * b.n_vertices)
                self.assertTrue(t.is_associative())

    def test_trivial_extension_of_ka2_is_cyclic_nakayama(self):
        result = algebra_isomorphism(trivial_extension(sample("ka2")), sample("nakayama_2_3"))
        self.assertEqual(result.verdict, Verdict.YES)
        self.assertTrue(result.witness.verify())

    def test_trivial_extension_of_field_is_dual_numbers(self):
        k = path_algebra(Q, ["1"], [])
        t = trivial_extension(k)
        self.assertEqual(t.dim, 2)
        self.assertEqual(algebra_isomorphism(t, sample("dual_numbers")).verdict, Verdict.YES)

    def test_trivial_extension_differs_from_dual_numbers_by_dimension(self):
        result = algebra_isomorphism(trivial_extension(sample("ka2")), sample("dual_numbers"))
        self.assertEqual(result.verdict, Verdict.NO)
        self.assertEqual(result.invariant, "dimension")
        self.assertIsNone(result.witness)

    def test_constructed_algebras_are_self_injective(self):
        b = sample("ka2")
        for t in (trivial_extension(b), r_fold_trivial_extension(b, 2)):
            self.assertIsNotNone(is_self_injective(t))

    def test_orbit_algebra_defaults_to_trivial_extension(self):
        b = sample("ka2")
        self.assertEqual(orbit_algebra(b).dim, trivial_extension(b).dim)


class TestTwistedTrivialExtension(TestCase):
    def test_swap_twist_rebuilds_the_swap_algebra(self):
        b, sigma = _swap_twist()
        twisted = twisted_trivial_extension(b, sigma)
        self.assertEqual(twisted.dim, 10)
        nakayama = is_self_injective(twisted)
        self.assertIsNotNone(nakayama)
        self.assertEqual(str(nakayama), "(1 2)(3)")
        result = algebra_isomorphism(twisted, sample("swap3"))
        self.assertEqual(result.verdict, Verdict.YES)
        self.assertTrue(result.witness.verify())

    def test_identity_twist_gives_trivial_extension(self):
        b = sample("kq_1_3_2")
        twisted = twisted_trivial_extension(b, AlgebraAutomorphism.identity(b))
        untwisted = trivial_extension(b)
        self.assertEqual(algebra_isomorphism(twisted, untwisted).verdict, Verdict.YES)
        # sans torsion : permutation de Nakayama triviale
        self.assertTrue(is_self_injective(untwisted).is_identity())

    def test_untwisted_extension_is_not_the_swap_algebra(self):
        b = sample("kq_1_3_2")
        result = algebra_isomorphism(trivial_extension(b), sample("swap3"))
        self.assertNotEqual(result.verdict, Verdict.YES)

    def test_twist_witness_is_found_among_quiver_symmetries(self):
        b = sample("kq_1_3_2")
        witness = find_twist_witness(b, sample("swap3"))
        self.assertIsNotNone(witness)
        self.assertFalse(witness.sigma.is_identity)
        self.assertEqual(witness.sigma.vertex_permutation, (1, 0, 2))
        self.assertEqual(witness.to_dict()["isomorphism"]["verdict"], "yes")

    def test_no_twist_for_wrong_dimension(self):
        self.assertIsNone(find_twist_witness(sample("ka2"), sample("swap3")))


# ------------------------------------------------------------------ #
# Automorphismes
# ------------------------------------------------------------------ #


def test_quiver_automorphisms_start_with_identity():
    b = sample("kq_1_3_2")
    autos = list(quiver_automorphisms(b))
    assert autos[0].vertex_permutation == (0, 1, 2)
    assert any(s.vertex_permutation == (1, 0, 2) for s in autos)


def test_singular_matrix_is_not_an_automorphism():
    b = sample("ka2")
    with pytest.raises(AutomorphismError):
        AlgebraAutomorphism(b, Matrix.zeros(Q, b.dim, b.dim))


def test_wrong_shape_is_not_an_automorphism():
    b = sample("ka2")
    with pytest.raises(AutomorphismError):
        AlgebraAutomorphism(b, Matrix.identity(Q, b.dim + 1))


def test_vertex_map_must_be_a_permutation():
    b = sample("kq_1_3_2")
    with pytest.raises(AutomorphismError):
        AlgebraAutomorphism.from_generator_images(b, {0: 0, 1: 0, 2: 2}, {})
    with pytest.raises(AutomorphismError):
        AlgebraAutomorphism.from_generator_images(b, {0: 0, 1: 1, 2: 2}, {7: b.zero()})


def test_swap_automorphism_serialisation():
    _, sigma = _swap_twist()
    payload = sigma.to_dict()
    assert payload["name"] == "swap"
    assert payload["vertices"] == {"1": "2", "2": "1", "3": "3"}
    assert payload["identity"] is False


# ------------------------------------------------------------------ #
# Catégorie répétitive
# ------------------------------------------------------------------ #


def test_repetitive_window_of_two_slabs():
    window = repetitive_truncation(sample("ka2"), 0, 1)
    assert window.width == 2
    assert len(window.objects) == 4
    assert window.to_dict()["dim"] == 9
    assert window.algebra.dim == 9
    assert window.algebra.is_associative()


def test_repetitive_hom_spaces_and_nakayama_shift():
    b = sample("ka2")
    window = repetitive_truncation(b, 0, 2)
    # hom nul au-delà de deux tranches
    assert window.hom_dim((0, 0), (2, 0)) == 0
    assert window.nu((0, 1)) == (1, 1)
    assert window.shifted(1).m_lo == 1
    single = repetitive_truncation(b, 0, 0)
    assert sum(single.hom_table().values()) == b.dim


def test_empty_window_is_rejected():
    with pytest.raises(ValueError):
        repetitive_truncation(sample("ka2"), 2, 1)


# ------------------------------------------------------------------ #
# Équivalence socle
# ------------------------------------------------------------------ #


def test_algebra_is_socle_equivalent_to_itself():
    a = sample("swap3")
    comparison = socle_equivalent(a, a)
    assert comparison.verdict == Verdict.YES
    assert comparison.quotient_dims == (7, 7)
    assert comparison.self_injective == (True, True)
    assert comparison.witness is not None


def test_socle_comparison_reports_invariant():
    comparison = socle_equivalent(sample("swap3"), sample("nakayama_3_4"))
    assert comparison.verdict == Verdict.NO
    assert comparison.invariant is not None
    payload = comparison.to_dict()
    assert payload["socle_quotient_dims"] == [7, 9]


def test_invariant_battery():
    assert invariant_mismatch(sample("swap3"), sample("swap3")) is None
    assert invariant_mismatch(sample("ka2"), sample("dual_numbers")) == "dimension"
    assert invariant_mismatch(sample("ka2"), sample("dual_numbers_gf2")) == "dimension"


def test_tiny_budget_leaves_verdict_undetermined():
    b, sigma = _swap_twist()
    twisted = twisted_trivial_extension(b, sigma)
    result = algebra_isomorphism(twisted, sample("swap3"), IsoBudget(max_dim=4))
    assert result.verdict == Verdict.UNDETERMINED
    assert result.reason
