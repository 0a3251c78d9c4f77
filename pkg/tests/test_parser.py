import sys
import pathlib
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.constructions import AutomorphismError
from domain.document import InputDocument
from infrastructure.parser import DocumentParseError, parse, parse_file, parse_terms

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"


SWAP_TEXT = """\
name swap3
field Q
vertices: 1 2 3
arrow alpha: 1 -> 3
arrow beta: 3 -> 1
arrow gamma: 3 -> 2
arrow sigma: 2 -> 3
relation beta*alpha - gamma*sigma
relation alpha*beta
relation sigma*gamma   # commentaire en fin de ligne
automorphism swap {
  vertex 1 -> 2 ; vertex 2 -> 1
  arrow alpha -> sigma ; arrow sigma -> alpha
  arrow beta -> gamma ; arrow gamma -> beta
}
slice tau_delta_p3: S2, P3/S3, S1
"""


def test_parse_three_vertex_document():
    doc = parse(SWAP_TEXT)
    assert isinstance(doc, InputDocument)
    assert doc.name == "swap3"
    assert doc.vertices == ["1", "2", "3"]
    assert [a.name for a in doc.arrows] == ["alpha", "beta", "gamma", "sigma"]
    assert len(doc.relations) == 3
    first = doc.relations[0]
    assert [t.path for t in first.terms] == [["beta", "alpha"], ["gamma", "sigma"]]
    assert [t.coefficient for t in first.terms] == ["1", "-1"]
    assert doc.build().dim == 10


def test_parse_automorphism_block_over_several_lines():
    doc = parse(SWAP_TEXT)
    spec = doc.automorphism_spec("swap")
    assert spec.vertices == {"1": "2", "2": "1"}
    assert [t.path for t in spec.arrows["beta"]] == [["gamma"]]
    a = doc.build()
    sigma = doc.automorphism("swap", a)
    # σ² = id
    for k in range(a.dim):
        assert sigma(sigma(a.basis_vector(k))) == a.basis_vector(k)


def test_parse_slices_keep_selector_order():
    doc = parse(SWAP_TEXT)
    assert doc.slice_spec("tau_delta_p3").selectors == ["S2", "P3/S3", "S1"]
    with pytest.raises(KeyError):
        doc.slice_spec("absente")


def test_unknown_automorphism_name():
    doc = parse(SWAP_TEXT)
    with pytest.raises(AutomorphismError):
        doc.automorphism_spec("rotation")


def test_loop_over_gf2():
    doc = parse("field GF(2)\nvertices: 1\narrow x: 1 -> 1\nrelation x*x\n")
    a = doc.build()
    assert a.dim == 2
    assert str(a.field) == "GF(2)"


def test_parse_file_uses_file_stem_as_default_name(tmp_path):
    path = tmp_path / "petite.alg"
    path.write_text("vertices: 1 2\narrow a: 1 -> 2\n", encoding="utf-8")
    doc = parse_file(path)
    assert doc.name == "petite"
    assert doc.field == "Q"
    assert doc.build().dim == 3


def test_parse_file_missing():
    with pytest.raises(DocumentParseError):
        parse_file(SAMPLES / "inexistant.alg")


def test_all_samples_parse_and_build():
    for path in sorted(SAMPLES.glob("*.alg")):
        doc = parse_file(path)
        assert doc.build().dim > 0, path.name


class TestParseTerms(TestCase):
    def test_coefficients_and_signs(self):
        terms = parse_terms("2*a*b - 1/3*c*d + e*f", 1, 1)
        self.assertEqual([t.coefficient for t in terms], ["2", "-1/3", "1"])
        self.assertEqual([t.path for t in terms], [["a", "b"], ["c", "d"], ["e", "f"]])

    def test_leading_minus(self):
        terms = parse_terms("-a*b", 1, 1)
        self.assertEqual(terms[0].coefficient, "-1")

    def test_missing_operator_between_terms(self):
        with self.assertRaises(DocumentParseError):
            parse_terms("a*b c*d", 4, 1)

    def test_empty_combination(self):
        with self.assertRaises(DocumentParseError):
            parse_terms("   ", 4, 1)


class TestParseErrors(TestCase):
    def _error(self, text: str) -> DocumentParseError:
        with self.assertRaises(DocumentParseError) as ctx:
            parse(text)
        return ctx.exception

    def test_terms_with_different_endpoints_report_their_line(self):
        text = "field Q\nvertices: 1 2\narrow alpha: 1 -> 2\narrow beta: 2 -> 1\nrelation alpha*beta + beta*alpha\n"
        error = self._error(text)
        self.assertEqual(error.line, 5)
        self.assertIn("ligne 5", str(error))

    def test_unknown_keyword(self):
        error = self._error("vertices: 1\nflèche x: 1 -> 1\n")
        self.assertEqual(error.line, 2)

    def test_missing_vertices(self):
        self._error("field Q\n")

    def test_undeclared_vertex(self):
        error = self._error("vertices: 1 2\narrow a: 1 -> 3\n")
        self.assertEqual(error.line, 2)

    def test_duplicate_arrow(self):
        error = self._error("vertices: 1 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n")
        self.assertEqual(error.line, 3)

    def test_relation_of_length_one(self):
        error = self._error("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\nrelation a - b\n")
        self.assertEqual(error.line, 4)

    def test_non_prime_field(self):
        self._error("field GF(4)\nvertices: 1\n")

    def test_second_field_declaration(self):
        error = self._error("field Q\nfield GF(2)\nvertices: 1\n")
        self.assertEqual(error.line, 2)

    def test_unclosed_automorphism_block(self):
        error = self._error("vertices: 1 2\narrow a: 1 -> 2\nautomorphism s {\n  vertex 1 -> 1\n")
        self.assertEqual(error.line, 3)

    def test_unreadable_automorphism_entry(self):
        error = self._error("vertices: 1\nautomorphism s { vertex 1 => 1 }\n")
        self.assertEqual(error.line, 2)
