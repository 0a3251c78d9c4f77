import sys
import pathlib
from fractions import Fraction
from functools import lru_cache

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.algebra import NonSplitResidueError, build_algebra, is_self_injective
from domain.constructions import algebra_isomorphism, r_fold_trivial_extension, trivial_extension
from domain.linalg import FieldSpec
from domain.status import Verdict
from infrastructure.document_writer import format_relation, presentation_of, write_document
from infrastructure.parser import parse, parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"
Q = FieldSpec.rationals()


@lru_cache(maxsize=None)
def sample(name: str):
    return parse_file(SAMPLES / f"{name}.alg").build()


def test_format_relation_signs_and_coefficients():
    assert format_relation(Q, [(Fraction(1), ("a", "b")), (Fraction(-1), ("c", "d"))]) == "a*b - c*d"
    assert format_relation(Q, [(Fraction(-1), ("a", "b"))]) == "-a*b"
    assert format_relation(Q, [(Fraction(2), ("a", "b")), (Fraction(1, 3), ("c", "d"))]) == "2*a*b + 1/3*c*d"


def test_format_relation_over_prime_field():
    gf3 = FieldSpec.prime(3)
    # -1 s'écrit 2 dans GF(3)
    assert format_relation(gf3, [(gf3.one, ("a", "b")), (gf3.element(-1), ("c", "d"))]) == "a*b + 2*c*d"


def test_presentation_keeps_document_arrow_names():
    p = presentation_of(sample("swap3"), name="swap3")
    assert p.name == "swap3"
    assert [arrow.name for arrow in p.arrows] == ["alpha", "beta", "gamma", "sigma"]
    assert p.vertices == ("1", "2", "3")


def test_presentation_name_drops_comment_marks():
    # `#` ouvrirait un commentaire dans le document écrit
    p = presentation_of(sample("swap3"), name="swap#3")
    assert p.name == "swap3"
    default = presentation_of(trivial_extension(sample("ka2")))
    assert "#" not in default.name
    assert parse(write_document(sample("swap3"), name="#swap3")).name == "swap3"


def test_division_algebra_has_no_quiver_presentation():
    # Q(i) : base (1, i), i² = -1
    def product(i, j):
        if i == 0 or j == 0:
            return tuple(Q.element(int(k == i + j)) for k in range(2))
        return (Q.element(-1), Q.zero)

    a = build_algebra(Q, ["1", "i"], [(0, 0), (0, 0)], product, [0], ["1"])
    with pytest.raises(NonSplitResidueError):
        presentation_of(a, name="gauss")


def test_swap_algebra_document_round_trip():
    text = write_document(sample("swap3"), name="swap3")
    assert "name swap3" in text
    rebuilt = parse(text).build()
    assert rebuilt.dim == 10
    assert str(is_self_injective(rebuilt)) == "(1 2)(3)"


def test_trivial_extension_document_round_trip():
    t = trivial_extension(sample("ka2"))
    text = write_document(t, name="T(ka2)")
    doc = parse(text)
    assert doc.name == "T(ka2)"
    rebuilt = doc.build()
    assert rebuilt.dim == 6
    assert is_self_injective(rebuilt) is not None
    assert algebra_isomorphism(rebuilt, sample("nakayama_2_3")).verdict == Verdict.YES


def test_r_fold_document_round_trip():
    t = r_fold_trivial_extension(sample("ka2"), 2)
    rebuilt = parse(write_document(t, name="T(ka2)^(2)")).build()
    assert rebuilt.dim == 12
    assert rebuilt.n_vertices == 4


def test_path_algebra_document_has_no_relation():
    text = write_document(sample("ka2"), name="ka2")
    assert "relation" not in text
    assert parse(text).build().dim == 3
