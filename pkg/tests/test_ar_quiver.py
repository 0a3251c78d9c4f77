import sys
import pathlib
from collections import Counter
from functools import lru_cache
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.arquiver import (
    KnittingLimitError,
    KnittingLimits,
    ProjectiveEndError,
    almost_split_sequence,
    canonical_projective_meshes,
    knit,
    mesh_symmetry_violations,
    socle_factor_check,
    stable_quiver,
    tau_orbits,
    to_dot,
    verify_almost_split,
)
from domain.modules import decompose, is_isomorphic, projective, simple
from domain.modules.module import quotient_module, radical_module, socle_spaces
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"
SAMPLE_NAMES = sorted(p.stem for p in SAMPLES.glob("*.alg"))


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


@lru_cache(maxsize=None)
def quiver(name: str):
    return knit(sample(name))


def _shape(g):
    """Classes (vecteur dimension, projectif) et flèches lues sur ces classes."""
    keys = {v.index: (v.dim_vector, v.projective, v.name) for v in g.vertices}
    vertices = Counter(keys.values())
    arrows = Counter((keys[s], keys[t], val) for (s, t), val in g.arrows.items())
    return vertices, arrows


# ------------------------------------------------------------------ #
# Suites presque scindées
# ------------------------------------------------------------------ #


def test_sequence_of_dual_numbers_simple():
    a = sample("dual_numbers")
    seq = almost_split_sequence(simple(a, 0))
    assert seq.is_exact()
    assert not seq.is_split()
    assert seq.middle.dim == 2
    assert is_isomorphic(seq.middle, projective(a, 0)) is not None


def test_sequence_ending_at_projective_is_rejected():
    a = sample("swap3")
    with pytest.raises(ProjectiveEndError):
        almost_split_sequence(projective(a, 0))


def test_canonical_sequence_ending_at_socle_factor():
    # 0 -> rad P -> rad P/soc P ⊕ P -> P/soc P -> 0
    a = sample("swap3")
    p = projective(a, 2)
    factor, _ = quotient_module(p, socle_spaces(p))
    seq = almost_split_sequence(factor)
    rad, _ = radical_module(p)
    assert is_isomorphic(seq.left, rad) is not None
    pieces = decompose(seq.middle)
    assert any(is_isomorphic(piece, p) is not None for piece, _ in pieces)
    assert sum(mult for _, mult in pieces) >= 2


# ------------------------------------------------------------------ #
# Tricotage
# ------------------------------------------------------------------ #


class TestSwapAlgebraQuiver(TestCase):
    def test_twelve_indecomposables_three_projectives(self):
        g = quiver("swap3")
        self.assertTrue(g.complete)
        self.assertEqual(len(g), 12)
        self.assertEqual(len(g.projective_indices), 3)
        self.assertTrue(all(val == (1, 1) for val in g.arrows.values()))

    def test_tau_is_defined_exactly_on_non_projectives(self):
        g = quiver("swap3")
        self.assertEqual(set(g.tau), set(g.non_projective_indices))

    def test_expected_names_are_present(self):
        g = quiver("swap3")
        names = {v.name for v in g.vertices}
        for expected in ("P1", "P2", "P3", "S1", "S2", "S3", "rad P1", "rad P2", "P1/S2", "P2/S1", "P3/S3"):
            self.assertIn(expected, names)

    def test_stable_quiver_and_orbits(self):
        g = quiver("swap3")
        s = stable_quiver(g)
        self.assertEqual(len(s), 9)
        orbits = tau_orbits(s)
        self.assertEqual(sorted(len(o) for o in orbits), [3, 6])

    def test_sequence_ending_at_s3_has_radicals_in_the_middle(self):
        a = sample("swap3")
        g = quiver("swap3")
        s3 = g.index_of_name("S3")
        preds = g.predecessors(s3)
        self.assertEqual(len(preds), 2)
        radicals = [radical_module(projective(a, i))[0] for i in (0, 1)]
        for r in radicals:
            self.assertTrue(any(is_isomorphic(g.module(p), r) is not None for p in preds))
        middle = g.sequences[s3].middle
        self.assertEqual(middle.dim_vector, (1, 1, 2))

    def test_sequence_starting_at_s3(self):
        g = quiver("swap3")
        s3 = g.index_of_name("S3")
        z = g.tau_inverse_of(s3)
        self.assertIsNotNone(z)
        names = {g.vertices[v].name for v in g.predecessors(z)}
        self.assertEqual(names, {"P1/S2", "P2/S1"})

    def test_meshes(self):
        g = quiver("swap3")
        self.assertEqual(mesh_symmetry_violations(g), [])
        self.assertTrue(all(canonical_projective_meshes(g).values()))

    def test_socle_factor_algebra_quiver(self):
        report = socle_factor_check(sample("swap3"), quiver("swap3"))
        self.assertTrue(report.ok)


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_almost_split_property_on_every_sample(name):
    g = quiver(name)
    assert g.complete
    assert sorted(g.tau) == g.non_projective_indices
    failures = [g.vertices[z].name for z in g.tau if not verify_almost_split(g, z)]
    assert failures == []


@pytest.mark.parametrize("order_seed", (1, 7, 42))
@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_knitting_is_order_independent_on_every_sample(name, order_seed):
    shuffled = knit(sample(name), order_seed=order_seed)
    assert _shape(shuffled) == _shape(quiver(name))


def test_dual_numbers_quiver():
    g = quiver("dual_numbers")
    assert len(g) == 2
    p = g.index_of_name("P1")
    s = g.index_of_name("S1")
    assert set(g.arrows) == {(s, p), (p, s)}
    assert g.tau == {s: s}
    stable = stable_quiver(g)
    assert len(stable) == 1 and not stable.arrows
    assert tau_orbits(stable) == [[s]]


def test_cyclic_nakayama_quiver():
    g = quiver("nakayama_3_4")
    assert len(g) == 12
    assert len(g.projective_indices) == 3
    orbits = tau_orbits(stable_quiver(g))
    assert [len(o) for o in orbits] == [3, 3, 3]


def test_hereditary_algebra_quiver():
    g = quiver("ka2")
    assert len(g) == 3
    assert g.complete
    assert len(g.projective_indices) == 2


def test_limits_raise_with_partial_quiver():
    with pytest.raises(KnittingLimitError) as info:
        knit(sample("swap3"), KnittingLimits(max_modules=5, max_dim=256))
    partial = info.value.partial
    assert partial is not None
    assert not partial.complete


def test_dot_export():
    g = quiver("swap3")
    dot = to_dot(g)
    assert dot.lstrip().startswith("digraph") or "digraph" in dot
    assert "rad P1" in dot
    assert "dashed" in dot
