import sys
import pathlib
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import path_algebra
from domain.arquiver import knit
from domain.linalg import FieldSpec, Matrix
from domain.modules import (
    decompose,
    direct_sum,
    dual,
    end_algebra,
    ext1_dim,
    hom_basis,
    hom_dim,
    id_le_1,
    injective,
    is_indecomposable,
    is_injective_module,
    is_isomorphic,
    is_projective_module,
    is_tilting,
    minimal_presentation,
    pd_le_1,
    projective,
    simple,
    stable_hom_dim_mod_inj,
    stable_hom_dim_mod_proj,
    tau,
    tau_inverse,
    trace_ideal,
    transpose,
)
from domain.modules.decomposition import DecompositionError
from domain.modules.module import Module, radical_module, socle_module, top
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"
SAMPLE_NAMES = sorted(p.stem for p in SAMPLES.glob("*.alg"))


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


def test_projectives_of_swap_algebra():
    a = sample("swap3")
    assert projective(a, 0).dim_vector == (1, 1, 1)
    assert projective(a, 1).dim_vector == (1, 1, 1)
    assert projective(a, 2).dim_vector == (1, 1, 2)
    assert simple(a, 2).dim_vector == (0, 0, 1)
    for i in range(3):
        assert is_projective_module(projective(a, i))
        assert is_injective_module(projective(a, i))


def test_hom_dimension_is_corner_dimension():
    a = sample("swap3")
    # Hom(e_i A, e_j A) = e_j A e_i
    assert hom_dim(projective(a, 0), projective(a, 2)) == 1
    assert hom_dim(projective(a, 2), projective(a, 2)) == 2
    assert hom_dim(simple(a, 0), simple(a, 1)) == 0
    for f in hom_basis(projective(a, 0), projective(a, 2)):
        assert f.source.dim == 3 and f.target.dim == 4


def test_injectives_follow_nakayama_permutation():
    a = sample("swap3")
    # soc(e1 A) = S2 : P1 est l'enveloppe injective de S2
    assert is_isomorphic(projective(a, 0), injective(a, 1)) is not None
    assert is_isomorphic(projective(a, 1), injective(a, 0)) is not None
    assert is_isomorphic(projective(a, 2), injective(a, 2)) is not None
    assert is_isomorphic(projective(a, 0), injective(a, 0)) is None


def test_radical_socle_and_top_of_projective():
    a = sample("swap3")
    p3 = projective(a, 2)
    rad, inclusion = radical_module(p3)
    assert rad.dim_vector == (1, 1, 1)
    assert inclusion.target.dim == p3.dim == 4
    assert top(p3)[0].dim_vector == (0, 0, 1)
    assert socle_module(p3)[0].dim_vector == (0, 0, 1)
    assert is_indecomposable(rad)


def test_decompose_recovers_multiplicities():
    a = sample("swap3")
    s1, s2 = simple(a, 0), simple(a, 1)
    m, _, _ = direct_sum([s1, s2, s1])
    pieces = decompose(m)
    found = sorted((piece.dim_vector, mult) for piece, mult in pieces)
    assert found == [((0, 1, 0), 1), ((1, 0, 0), 2)]
    assert not is_indecomposable(m)


def test_kronecker_module_with_field_endomorphisms_is_reported():
    # End(M) = Q[J] avec J² = 2 : corps Q(√2), aucun idempotent rationnel
    q = FieldSpec.rationals()
    k = path_algebra(q, ["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    m = Module(k, (2, 2), (Matrix.identity(q, 2), Matrix.from_rows(q, [[0, 2], [1, 0]])), "M")
    with pytest.raises(DecompositionError) as info:
        is_indecomposable(m, attempts=2)
    assert info.value.residue_dim == 2


def test_end_algebra_of_projective_is_local_corner():
    a = sample("swap3")
    h = end_algebra(projective(a, 2)).algebra
    assert h.dim == 2
    assert h.n_vertices == 1
    assert h.radical.dim == 1


def test_trace_of_projective_is_generated_ideal():
    a = sample("swap3")
    assert trace_ideal(a, projective(a, 2)).dim == 8
    assert trace_ideal(a, simple(a, 0)).dim == 1


class TestAuslanderReitenTranslate(TestCase):
    def test_simple_of_dual_numbers_is_tau_periodic(self):
        a = sample("dual_numbers")
        s = simple(a, 0)
        self.assertIsNotNone(is_isomorphic(tau(s), s))
        self.assertIsNotNone(is_isomorphic(tau_inverse(s), s))
        self.assertEqual(transpose(s).dim, 1)

    def test_tau_inverse_undoes_tau(self):
        a = sample("swap3")
        modules = [simple(a, i) for i in range(3)] + [radical_module(projective(a, i))[0] for i in range(3)]
        for m in modules:
            with self.subTest(module=m.dim_vector):
                self.assertIsNotNone(is_isomorphic(tau_inverse(tau(m)), m))

    def test_stable_hom_vanishes_on_projectives(self):
        a = sample("swap3")
        p = projective(a, 0)
        self.assertEqual(stable_hom_dim_mod_proj(p, p), 0)
        self.assertEqual(ext1_dim(p, simple(a, 1)), 0)

    def test_dual_of_simple_is_simple_over_opposite(self):
        a = sample("swap3")
        d = dual(simple(a, 1))
        self.assertIs(d.algebra, a.opposite)
        self.assertEqual(d.dim_vector, (0, 1, 0))


@lru_cache(maxsize=None)
def indecomposables(name: str):
    return tuple(knit(sample(name)).vertices)


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_auslander_reiten_formula_on_every_indecomposable_pair(name):
    # Ext¹(X, Y) ≅ D Hom_bar(Y, τX) ≅ D Hom_underline(τ⁻¹Y, X)
    vertices = indecomposables(name)
    translates = {v.index: tau(v.module) for v in vertices if not v.projective}
    inverse_translates = {v.index: tau_inverse(v.module) for v in vertices if not v.injective}
    for x in vertices:
        for y in vertices:
            ext = ext1_dim(x.module, y.module)
            if x.projective:
                assert ext == 0, (x.name, y.name)
            else:
                assert ext == stable_hom_dim_mod_inj(y.module, translates[x.index]), (x.name, y.name)
            if y.injective:
                assert ext == 0, (x.name, y.name)
            else:
                assert ext == stable_hom_dim_mod_proj(inverse_translates[y.index], x.module), (x.name, y.name)


class TestHomologicalDimensions(TestCase):
    def test_hereditary_modules_have_small_dimensions(self):
        b = sample("ka2")
        for m in (simple(b, 0), simple(b, 1), projective(b, 0)):
            self.assertTrue(pd_le_1(m))
            self.assertTrue(id_le_1(m))

    def test_simple_over_self_injective_has_infinite_dimension(self):
        a = sample("swap3")
        self.assertFalse(pd_le_1(simple(a, 0)))
        self.assertFalse(id_le_1(simple(a, 0)))

    def test_minimal_presentation_of_simple_top(self):
        b = sample("ka2")
        presentation = minimal_presentation(simple(b, 0))
        self.assertEqual(presentation.cover0.vertices, (0,))
        self.assertEqual(presentation.cover1.vertices, (1,))
        self.assertEqual(presentation.kernel.dim_vector, (0, 1))


class TestTilting(TestCase):
    def test_regular_module_is_tilting(self):
        b = sample("ka2")
        m, _, _ = direct_sum([projective(b, 0), projective(b, 1)])
        self.assertTrue(is_tilting(b, m).is_tilting)

    def test_reflection_module_is_tilting(self):
        b = sample("ka2")
        m, _, _ = direct_sum([projective(b, 0), simple(b, 0)])
        report = is_tilting(b, m)
        self.assertTrue(report.is_tilting)
        self.assertEqual(report.summand_count, 2)

    def test_semisimple_module_is_not_tilting(self):
        b = sample("ka2")
        m, _, _ = direct_sum([simple(b, 0), simple(b, 1)])
        report = is_tilting(b, m)
        self.assertFalse(report.ext_vanishes)
        self.assertFalse(report.is_tilting)

    def test_too_few_summands(self):
        b = sample("ka2")
        report = is_tilting(b, simple(b, 0))
        self.assertFalse(report.summands_match)
        self.assertFalse(report.is_tilting)
