import sys
import pathlib
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import (
    Ideal,
    ImproperIdealError,
    NonSplitResidueError,
    NotAnIdealError,
    PrimitiveIdempotentError,
    build_algebra,
    build_bound_quiver_algebra,
    cartan_matrix,
    center,
    corner,
    is_acyclic,
    is_nakayama,
    is_self_injective,
    left_annihilator,
    path_algebra,
    presentation_from_terms,
    quotient,
    radical_layers,
    residual_identity,
    right_annihilator,
    socle,
    valued_quiver,
    verify_primitive_idempotents,
)
from domain.algebra.ideals import left_annihilator_space, right_annihilator_space
from domain.algebra.presentation import NotAdmissibleError
from domain.linalg import FieldSpec
from domain.linalg.matrix import vec_add
from domain.modules import projective
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"
SAMPLE_NAMES = sorted(p.stem for p in SAMPLES.glob("*.alg"))
Q = FieldSpec.rationals()


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


def _left_ideal(a, x):
    return a.span([a.mul(a.basis_vector(k), x) for k in range(a.dim)])


def _right_ideal(a, x):
    return a.span([a.mul(x, a.basis_vector(k)) for k in range(a.dim)])


# ------------------------------------------------------------------ #
# Construction KQ/R
# ------------------------------------------------------------------ #


def test_swap_algebra_has_dimension_ten_and_projective_dims():
    a = sample("swap3")
    assert a.dim == 10
    assert a.n_vertices == 3
    assert cartan_matrix(a) == ((1, 1, 1), (1, 1, 1), (1, 1, 2))
    assert a.radical.dim == 7
    assert a.loewy_length == 3
    assert radical_layers(a) == (10, 7, 3, 0)


def test_path_algebra_of_three_vertex_quiver():
    kq = path_algebra(Q, ["1", "2", "3"], [("alpha", "1", "3"), ("sigma", "2", "3")])
    assert kq.dim == 5
    assert is_self_injective(kq) is None
    q = valued_quiver(kq)
    assert {(x.source, x.target) for x in q.arrows} == {(0, 2), (1, 2)}
    assert all(x.valuation == (1, 1) for x in q.arrows)
    assert is_acyclic(q)


def test_dual_numbers_over_two_fields():
    for name in ("dual_numbers", "dual_numbers_gf2"):
        a = sample(name)
        assert a.dim == 2
        assert a.loewy_length == 2
        nakayama = is_self_injective(a)
        assert nakayama is not None and nakayama.is_identity()
    assert str(sample("dual_numbers_gf2").field) == "GF(2)"


def test_cycle_without_relations_is_rejected():
    presentation = presentation_from_terms(Q, ["1"], [("x", "1", "1")], [])
    with pytest.raises(NotAdmissibleError):
        build_bound_quiver_algebra(presentation, length_cap=8)


def test_structure_constants_are_associative():
    for name in ("swap3", "nakayama_3_4", "kq_1_3_2"):
        assert sample(name).is_associative()


# ------------------------------------------------------------------ #
# Radical, socle, auto-injectivité
# ------------------------------------------------------------------ #


class TestSelfInjective(TestCase):
    def test_nakayama_permutation_swaps_first_two_vertices(self):
        nakayama = is_self_injective(sample("swap3"))
        self.assertIsNotNone(nakayama)
        self.assertEqual(str(nakayama), "(1 2)(3)")
        self.assertEqual(nakayama.as_names(), {"1": "2", "2": "1", "3": "3"})
        self.assertEqual(nakayama.order(), 2)

    def test_socle_of_swap_algebra(self):
        a = sample("swap3")
        self.assertEqual(socle(a).dim, 3)
        for x in socle(a).basis:
            for r in a.radical.basis:
                self.assertFalse(any(a.mul(x, r)))
                self.assertFalse(any(a.mul(r, x)))

    def test_cyclic_nakayama_is_self_injective_and_uniserial(self):
        a = sample("nakayama_3_4")
        self.assertEqual(a.dim, 12)
        self.assertTrue(is_nakayama(a))
        nakayama = is_self_injective(a)
        self.assertIsNotNone(nakayama)
        # chemins maximaux de longueur 3 : retour au sommet de départ
        self.assertTrue(nakayama.is_identity())

    def test_hereditary_algebra_is_not_self_injective(self):
        self.assertIsNone(is_self_injective(sample("ka2")))
        self.assertTrue(is_nakayama(sample("ka2")))
        self.assertFalse(is_nakayama(sample("swap3")))

    def test_center_contains_unit_and_socle_loop(self):
        a = sample("swap3")
        z = center(a)
        self.assertTrue(z.contains(a.unit()))
        self.assertGreaterEqual(z.dim, 2)


# ------------------------------------------------------------------ #
# Annulateurs
# ------------------------------------------------------------------ #


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_double_annihilator_of_principal_left_ideals(name):
    # l(r(I)) = I : propre aux algèbres auto-injectives
    a = sample(name)
    if is_self_injective(a) is None:
        pytest.skip(f"{name} n'est pas auto-injective")
    gens = a.generators
    elements = [a.idempotent(v) for v in range(a.n_vertices)] + [g.vector for g in gens]
    if len(gens) > 1:
        elements.append(vec_add(gens[0].vector, gens[-1].vector))
    elements.append(a.unit())
    for x in elements:
        left = _left_ideal(a, x)
        back = left_annihilator_space(a, right_annihilator_space(a, left.basis).basis)
        assert back == left, x


class TestAnnihilators(TestCase):
    def test_double_annihilator_of_principal_right_ideal(self):
        a = sample("swap3")
        for x in [g.vector for g in a.generators] + [a.idempotent(2)]:
            right = _right_ideal(a, x)
            back = right_annihilator_space(a, left_annihilator_space(a, right.basis).basis)
            self.assertEqual(back, right)

    def test_annihilators_of_radical_are_socles(self):
        a = sample("swap3")
        rad = a.radical
        self.assertEqual(left_annihilator(a, rad).space, socle(a).space)
        self.assertEqual(right_annihilator(a, rad).space, socle(a).space)
        self.assertTrue(left_annihilator(a, rad).is_two_sided)

    def test_annihilator_of_zero_is_whole_algebra(self):
        a = sample("swap3")
        self.assertEqual(left_annihilator_space(a, [a.zero()]).dim, a.dim)


# ------------------------------------------------------------------ #
# Idéaux et quotients
# ------------------------------------------------------------------ #


def test_quotient_by_socle():
    a = sample("swap3")
    q = quotient(a, socle(a))
    assert q.target.dim == 7
    assert q.target.n_vertices == 3
    assert q.target.is_associative()
    assert is_self_injective(q.target) is None


def test_quotient_by_radical_is_semisimple():
    a = sample("swap3")
    q = quotient(a, Ideal(a, a.radical))
    assert q.target.dim == 3
    assert q.target.radical.dim == 0


def test_ideal_generated_by_vertex_and_residual_identity():
    a = sample("swap3")
    ideal = Ideal.generated_by(a, [a.idempotent(2)])
    e, survivors = residual_identity(a, ideal)
    assert survivors == [0, 1]
    assert e == a.idempotent_sum([0, 1])
    target = quotient(a, ideal).target
    assert target.dim == 2
    assert target.vertex_names == ("1", "2")


def test_residual_identity_of_whole_algebra_is_rejected():
    a = sample("swap3")
    whole = Ideal.generated_by(a, [a.unit()])
    with pytest.raises(ImproperIdealError):
        residual_identity(a, whole)


def test_non_ideal_subspace_is_rejected():
    a = sample("swap3")
    space = a.span([a.generators[0].vector])
    with pytest.raises(NotAnIdealError):
        Ideal.from_subspace(a, space)


def test_opposite_and_corner():
    a = sample("swap3")
    op = a.opposite
    assert op.dim == a.dim
    assert op.is_associative()
    assert valued_quiver(op).same_shape(valued_quiver(a).opposite())
    assert corner(a, [2]).dim == 2


# ------------------------------------------------------------------ #
# Idempotents primitifs et résidus
# ------------------------------------------------------------------ #


def _one_vertex_algebra(square):
    """Base (1, x) sur un seul sommet, 1 unité, x² donné dans cette base."""

    def product(i, j):
        if i == 0:
            return tuple(Q.element(int(k == j)) for k in range(2))
        if j == 0:
            return tuple(Q.element(int(k == i)) for k in range(2))
        return tuple(Q.element(c) for c in square)

    return build_algebra(Q, ["1", "x"], [(0, 0), (0, 0)], product, [0], ["1"])


class TestPrimitiveIdempotents(TestCase):
    def test_product_of_two_fields_has_non_primitive_unit(self):
        # x² = x : 1 = x + (1 - x) dans K × K
        a = _one_vertex_algebra((0, 1))
        self.assertEqual(a.residue_dims, (2,))
        with self.assertRaises(PrimitiveIdempotentError):
            verify_primitive_idempotents(a)

    def test_quotient_refuses_non_primitive_idempotents(self):
        a = _one_vertex_algebra((0, 1))
        with self.assertRaises(PrimitiveIdempotentError):
            quotient(a, Ideal(a, a.radical))

    def test_gaussian_rationals_are_local_but_not_split(self):
        # x² = -1 : Q(i), corps de dimension 2 sur Q
        a = _one_vertex_algebra((-1, 0))
        self.assertEqual(a.radical.dim, 0)
        self.assertEqual(a.residue_dims, (2,))
        with self.assertRaises(NonSplitResidueError):
            verify_primitive_idempotents(a)
        with self.assertRaises(NonSplitResidueError):
            projective(a, 0)

    def test_dual_numbers_are_local_with_split_residue(self):
        # x² = 0
        a = _one_vertex_algebra((0, 0))
        self.assertEqual(a.residue_dims, (1,))
        verify_primitive_idempotents(a)
        self.assertEqual(projective(a, 0).dim_vector, (2,))

    def test_samples_have_primitive_idempotents(self):
        for name in SAMPLE_NAMES:
            with self.subTest(sample=name):
                verify_primitive_idempotents(sample(name))
                self.assertEqual(set(sample(name).residue_dims), {1})
