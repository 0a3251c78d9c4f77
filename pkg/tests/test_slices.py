import sys
import pathlib
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import path_algebra, valued_quiver
from domain.arquiver import knit
from domain.linalg import FieldSpec
from domain.slices import (
    SelectorError,
    SliceHypothesisError,
    classify_slice,
    classify_slices,
    enumerate_stable_slices,
    is_hereditary_algebra,
    is_stable_slice,
    nakayama_slice,
    select_slice,
    select_vertex,
    slice_end_algebra,
    slice_module,
    split_selectors,
    tau_delta_p,
)
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


@lru_cache(maxsize=None)
def quiver(name: str):
    return knit(sample(name))


def _names(d):
    return set(d.names)


TAU_DELTA_P3 = {"S2", "P3/S3", "S1"}
TAU_DELTA_P1 = {"P1/S2", "S3", "P2/S1"}


# ------------------------------------------------------------------ #
# Axiomes et classification
# ------------------------------------------------------------------ #


class TestSwapAlgebraSlices(TestCase):
    def test_tau_delta_p3_is_hereditary_and_right_regular(self):
        g = quiver("swap3")
        d = select_slice(g, ["S2", "P3/S3", "S1"])
        self.assertTrue(is_stable_slice(g, d).ok)
        report = classify_slice(g, d)
        self.assertTrue(report.right_regular)
        self.assertTrue(report.almost_right_regular)
        self.assertTrue(report.hereditary)
        self.assertEqual(slice_module(d).dim_vector, (2, 2, 1))

    def test_tau_delta_p1_is_hereditary_and_right_regular(self):
        g = quiver("swap3")
        report = classify_slice(g, select_slice(g, ["P1/S2", "S3", "P2/S1"]))
        self.assertTrue(report.is_stable_slice)
        self.assertTrue(report.right_regular)
        self.assertTrue(report.hereditary)

    def test_slices_through_radicals_are_not_hereditary(self):
        g = quiver("swap3")
        for selectors in (["rad P1", "S3", "P2/S1"], ["rad P2", "S3", "P1/S2"]):
            with self.subTest(slice=selectors):
                report = classify_slice(g, select_slice(g, selectors))
                self.assertTrue(report.is_stable_slice)
                self.assertFalse(report.right_regular)
                # rad P1 est une source de la section
                self.assertFalse(report.almost_right_regular)
                self.assertFalse(report.hereditary)
                self.assertFalse(is_hereditary_algebra(report.h_algebra))

    def test_single_vertex_is_not_a_slice(self):
        g = quiver("swap3")
        check = is_stable_slice(g, select_slice(g, ["S3"]))
        self.assertFalse(check.ok)
        self.assertIn(check.violated_condition, (2, 3))
        report = classify_slice(g, select_slice(g, ["S3"]))
        self.assertFalse(report.is_stable_slice)
        self.assertIsNone(report.h_algebra)

    def test_projective_vertex_violates_first_condition(self):
        g = quiver("swap3")
        check = is_stable_slice(g, select_slice(g, ["P1", "P1/S2"]))
        self.assertFalse(check.ok)
        self.assertEqual(check.violated_condition, 1)

    def test_end_algebra_of_tau_delta_p3_is_opposite_path_algebra(self):
        g = quiver("swap3")
        d = select_slice(g, ["S2", "P3/S3", "S1"])
        h = slice_end_algebra(d)
        self.assertEqual(h.dim, 5)
        self.assertTrue(is_hereditary_algebra(h))
        self.assertTrue(valued_quiver(h).same_shape(d.valued_quiver().opposite()))

    def test_report_serialisation(self):
        g = quiver("swap3")
        payload = classify_slice(g, select_slice(g, ["S2", "P3/S3", "S1"])).to_dict()
        self.assertEqual(set(payload["vertices"]), TAU_DELTA_P3)
        self.assertTrue(payload["hereditary"])
        self.assertEqual(payload["h_dim"], 5)


def test_enumeration_contains_the_four_listed_slices():
    g = quiver("swap3")
    found = enumerate_stable_slices(g)
    assert not found.truncated
    names = [_names(d) for d in found.slices]
    for expected in (TAU_DELTA_P3, TAU_DELTA_P1, {"rad P1", "S3", "P2/S1"}, {"rad P2", "S3", "P1/S2"}):
        assert expected in names
    # sections deux à deux distinctes
    assert len({d.vertices for d in found.slices}) == len(found.slices)


def test_exactly_two_hereditary_right_regular_slices():
    g = quiver("swap3")
    reports = classify_slices(g, enumerate_stable_slices(g).slices)
    kept = [set(r.names) for r in reports if r.hereditary and r.right_regular]
    assert len(kept) == 2
    assert TAU_DELTA_P3 in kept and TAU_DELTA_P1 in kept


def test_right_regular_implies_almost_right_regular():
    g = quiver("swap3")
    for report in classify_slices(g, enumerate_stable_slices(g).slices):
        if report.right_regular:
            assert report.almost_right_regular


def test_parallel_classification_keeps_input_order():
    g = quiver("swap3")
    slices = enumerate_stable_slices(g).slices
    sequential = classify_slices(g, slices, threads=1)
    parallel = classify_slices(g, slices, threads=2)
    assert [r.vertices for r in parallel] == [d.vertices for d in slices]
    assert [r.hereditary for r in parallel] == [r.hereditary for r in sequential]


def test_enumeration_cap_sets_truncation_flag():
    g = quiver("swap3")
    found = enumerate_stable_slices(g, cap=1)
    assert found.truncated
    assert all(len(d) == 1 for d in found.slices)


# ------------------------------------------------------------------ #
# Constructions explicites
# ------------------------------------------------------------------ #


def test_tau_delta_p_of_first_two_projectives_coincide():
    g = quiver("swap3")
    _, first = tau_delta_p(g, g.index_of_name("P1"))
    _, second = tau_delta_p(g, g.index_of_name("P2"))
    assert first.same_as(second)
    assert _names(first) == TAU_DELTA_P1
    _, third = tau_delta_p(g, g.index_of_name("P3"))
    assert _names(third) == TAU_DELTA_P3


def test_tau_delta_p_rejects_non_projective():
    g = quiver("swap3")
    with pytest.raises(SliceHypothesisError):
        tau_delta_p(g, g.index_of_name("S1"))


def test_nakayama_slice_of_cyclic_nakayama_algebra():
    g = quiver("nakayama_3_4")
    d = nakayama_slice(g, 0)
    assert len(d) == 3
    assert sorted(sum(v.dim_vector) for v in (g.vertices[i] for i in d.vertices)) == [1, 2, 3]
    report = classify_slice(g, d)
    assert report.is_stable_slice
    assert report.almost_right_regular
    assert not report.right_regular
    assert report.hereditary
    # H(Δ) de type A3
    h = report.h_algebra
    assert h.n_vertices == 3 and h.dim == 6
    assert is_hereditary_algebra(h)


def test_nakayama_slice_requires_nakayama_algebra():
    g = quiver("swap3")
    with pytest.raises(SliceHypothesisError):
        nakayama_slice(g, 0)


def test_dual_numbers_have_a_single_slice():
    g = quiver("dual_numbers")
    found = enumerate_stable_slices(g)
    assert [d.names for d in found.slices] == [["S1"]]
    report = classify_slice(g, found.slices[0])
    assert report.almost_right_regular
    assert not report.right_regular
    assert report.hereditary
    assert report.h_algebra.dim == 1


def test_hereditary_test_on_small_algebras():
    q = FieldSpec.rationals()
    assert is_hereditary_algebra(path_algebra(q, ["1", "2", "3"], [("a", "1", "3"), ("b", "2", "3")]))
    assert not is_hereditary_algebra(sample("dual_numbers"))


# ------------------------------------------------------------------ #
# Sélecteurs
# ------------------------------------------------------------------ #


class TestSelectors(TestCase):
    def test_by_name_and_by_dimension_vector(self):
        g = quiver("swap3")
        s3 = g.index_of_name("S3")
        self.assertEqual(select_vertex(g, "S3"), s3)
        self.assertEqual(select_vertex(g, "[0 0 1]"), s3)
        self.assertEqual(select_vertex(g, "S3 [0,0,1]"), s3)
        self.assertEqual(select_vertex(g, "rad P1"), g.index_of_name("rad P1"))

    def test_ambiguous_dimension_vector(self):
        g = quiver("swap3")
        with self.assertRaises(SelectorError):
            select_vertex(g, "[1 1 1]")
        self.assertEqual(select_vertex(g, "P1 [1 1 1]"), g.index_of_name("P1"))

    def test_unknown_selector(self):
        g = quiver("swap3")
        with self.assertRaises(SelectorError):
            select_vertex(g, "X9")
        with self.assertRaises(SelectorError):
            select_vertex(g, "S3 [1 0 0]")

    def test_split_keeps_brackets_together(self):
        self.assertEqual(split_selectors("S2, [1, 1, 1], rad P1"), ["S2", "[1, 1, 1]", "rad P1"])
        self.assertEqual(split_selectors(" , S1 ,"), ["S1"])
