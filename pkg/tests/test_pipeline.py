import sys
import pathlib
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import (
    BracketPreconditionError,
    Ideal,
    a_bracket_i,
    is_self_injective,
    socle,
    valued_quiver,
)
from domain.arquiver import knit
from domain.constructions import theorem_pipeline
from domain.constructions.pipeline import STAGES
from domain.modules import module_annihilator
from domain.slices import Slice, select_slice, slice_module
from domain.status import Verdict
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


@lru_cache(maxsize=None)
def quiver(name: str):
    return knit(sample(name))


@lru_cache(maxsize=None)
def swap_report(search_twist: bool = False):
    g = quiver("swap3")
    return theorem_pipeline(g.algebra, select_slice(g, ["S2", "P3/S3", "S1"]), search_twist=search_twist)


class TestSwapAlgebraPipeline(TestCase):
    def test_every_stage_passes(self):
        report = swap_report()
        self.assertEqual([s.name for s in report.stages], list(STAGES))
        self.assertTrue(report.ok, report.failed_stage)
        self.assertIsNone(report.failed_stage)
        self.assertFalse(report.contradiction)

    def test_quotient_is_path_algebra_of_opposite_slice(self):
        report = swap_report()
        b = report.b_algebra
        self.assertEqual(b.dim, 5)
        self.assertEqual(report.survivors, ["1", "2", "3"])
        self.assertEqual(report.ideal.dim, 5)
        q = valued_quiver(b)
        # Q_B = Δ^op : S2 -> P3/S3 <- S1 retourné
        self.assertEqual({(q.vertices[x.source], q.vertices[x.target]) for x in q.arrows}, {("3", "1"), ("3", "2")})

    def test_identities_hold(self):
        report = swap_report()
        for name in ("annihilator_identities", "trace_identities"):
            stage = report.stage(name)
            self.assertTrue(stage.ok)
            self.assertTrue(all(stage.details.values()))
        self.assertTrue(report.stage("tilting").ok)
        hom = report.stage("hom_vanishing").details
        self.assertEqual(hom["hom(tau_inv M, M)"], 0)
        self.assertEqual(hom["hom(M, tau M)"], 0)

    def test_bracket_algebra_keeps_nakayama_permutation(self):
        report = swap_report()
        bracket = report.bracket_algebra
        self.assertEqual(bracket.dim, 10)
        self.assertEqual(str(is_self_injective(bracket)), "(1 2)(3)")
        self.assertEqual(report.socle_verdict, Verdict.YES)
        self.assertEqual(report.direct_isomorphism, Verdict.YES)

    def test_report_serialisation(self):
        payload = swap_report().to_dict()
        self.assertEqual(payload["socle_equivalent"], "yes")
        self.assertEqual(payload["b"]["dim"], 5)
        self.assertEqual(payload["a_bracket_i"]["dim"], 10)
        self.assertEqual(set(payload["slice"]), {"S2", "P3/S3", "S1"})
        self.assertEqual(len(payload["stages"]), len(STAGES))

    def test_twist_witness_rebuilds_the_algebra(self):
        report = swap_report(search_twist=True)
        orbit = report.witnesses["orbit_form"]
        self.assertIsNotNone(orbit)
        self.assertEqual(orbit["isomorphism"]["verdict"], "yes")


def test_bracket_on_annihilator_of_slice_module():
    g = quiver("swap3")
    a = g.algebra
    m = slice_module(select_slice(g, ["S2", "P3/S3", "S1"]))
    ideal = Ideal.classified(a, module_annihilator(m))
    bracket = a_bracket_i(a, ideal)
    assert bracket.dim == 10
    assert bracket.is_associative()
    assert str(is_self_injective(bracket)) == "(1 2)(3)"


def test_bracket_rejects_socle_ideal():
    # r_A(soc A) = rad A ≠ soc A = 1·soc A
    a = sample("swap3")
    with pytest.raises(BracketPreconditionError):
        a_bracket_i(a, socle(a))


def test_bracket_requires_self_injective_algebra():
    b = sample("ka2")
    with pytest.raises(BracketPreconditionError):
        a_bracket_i(b, Ideal(b, b.radical))


def test_dual_numbers_give_the_field():
    g = quiver("dual_numbers")
    report = theorem_pipeline(g.algebra, select_slice(g, ["S1"]))
    assert report.ok
    assert report.b_algebra.dim == 1
    assert report.bracket_algebra.dim == 2
    assert report.socle_verdict == Verdict.YES


def test_non_hereditary_slice_stops_the_chain():
    g = quiver("swap3")
    report = theorem_pipeline(g.algebra, select_slice(g, ["rad P1", "S3", "P2/S1"]), search_twist=False)
    assert not report.ok
    assert report.failed_stage == "slice"
    assert report.b_algebra is None
    assert report.to_dict()["failed_stage"] == "slice"


def test_non_self_injective_algebra_stops_first():
    g = quiver("ka2")
    d = Slice.of(g, g.non_projective_indices[:1])
    report = theorem_pipeline(g.algebra, d, search_twist=False)
    assert report.failed_stage == "self_injective"
    assert len(report.stages) == 1
    assert report.socle_verdict == Verdict.UNDETERMINED


def test_slice_of_another_algebra_is_rejected():
    g = quiver("swap3")
    with pytest.raises(ValueError):
        theorem_pipeline(sample("dual_numbers"), select_slice(g, ["S3"]))
