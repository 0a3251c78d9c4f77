import sys
import pathlib
import random
from fractions import Fraction
from unittest import TestCase

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import pytest

from domain.linalg import FieldSpec, FieldSpecError, Matrix, Subspace, split_semisimple_element
from domain.linalg.field import PrimeFieldElement


Q = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
GF5 = FieldSpec.prime(5)


def test_field_parse_accepts_q_and_prime_fields():
    assert FieldSpec.parse("Q") == Q
    assert FieldSpec.parse(" GF( 7 ) ").characteristic == 7
    assert str(FieldSpec.parse("GF(2)")) == "GF(2)"


@pytest.mark.parametrize("text", ["GF(4)", "GF(1)", "GF(x)", "R"])
def test_field_parse_rejects_non_prime_or_unknown(text):
    with pytest.raises(FieldSpecError):
        FieldSpec.parse(text)


def test_prime_field_arithmetic_wraps_modulo_p():
    two, three = GF5.element(2), GF5.element(3)
    assert two * three == GF5.one
    assert two + three == GF5.zero
    assert GF5.one / two == GF5.element(3)
    assert isinstance(-two, PrimeFieldElement) and int(-two) == 3


def test_rational_fraction_is_reduced_in_prime_field():
    assert GF5.element(Fraction(1, 2)) == GF5.element(3)
    with pytest.raises(ZeroDivisionError):
        GF5.element(Fraction(1, 5))


def test_rref_and_pivots():
    m = Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    reduced, pivots = m.rref()
    assert pivots == [0, 1]
    assert reduced.row(0) == (1, 0, 1)
    assert reduced.row(1) == (0, 1, 1)
    assert reduced.row(2) == (0, 0, 0)
    assert m.rank() == 2


def test_kernel_basis_has_cols_minus_rank_vectors_and_is_killed():
    m = Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 6]])
    kernel = m.kernel_basis()
    assert len(kernel) == 3 - m.rank()
    for x in kernel:
        assert all(c == 0 for c in m.apply(x))


def test_kernel_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert Matrix.from_rows(Q, rows).kernel_basis() == []
    # 1 = -1 dans GF(2)
    assert len(Matrix.from_rows(GF2, rows).kernel_basis()) == 1


def test_solve_returns_solution_or_none():
    m = Matrix.from_rows(Q, [[1, 1], [1, -1]])
    x = m.solve([3, 1])
    assert x == (2, 1)
    singular = Matrix.from_rows(Q, [[1, 1], [1, 1]])
    assert singular.solve([1, 2]) is None


# ------------------------------------------------------------------ #
# Matrices aléatoires à graine fixe
# ------------------------------------------------------------------ #


def _random_matrix(field, rng):
    """Produit de deux facteurs aléatoires : rang souvent déficient."""
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    inner = rng.randint(1, min(rows, cols))
    left = Matrix.from_rows(field, [[field.random_element(rng, 3) for _ in range(inner)] for _ in range(rows)])
    right = Matrix.from_rows(field, [[field.random_element(rng, 3) for _ in range(cols)] for _ in range(inner)])
    return left @ right


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("field", [Q, GF2, GF5], ids=str)
def test_rref_is_idempotent_on_random_matrices(field, seed):
    m = _random_matrix(field, random.Random(seed))
    reduced, pivots = m.rref()
    again, pivots_again = reduced.rref()
    assert again == reduced
    assert pivots_again == pivots
    assert m.rank() == len(pivots)


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("field", [Q, GF2, GF5], ids=str)
def test_rank_equals_rank_of_transpose(field, seed):
    m = _random_matrix(field, random.Random(seed))
    assert m.rank() == m.transpose().rank()
    assert len(m.kernel_basis()) == m.cols - m.rank()


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("field", [Q, GF2, GF5], ids=str)
def test_solve_finds_a_preimage_of_an_image_vector(field, seed):
    rng = random.Random(seed)
    m = _random_matrix(field, rng)
    x = tuple(field.random_element(rng, 3) for _ in range(m.cols))
    b = m.apply(x)
    y = m.solve(b)
    assert y is not None
    assert m.apply(y) == b


def test_inverse_of_invertible_and_singular_matrices():
    m = Matrix.from_rows(Q, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert inv is not None
    assert m @ inv == Matrix.identity(Q, 2)
    assert Matrix.from_rows(Q, [[1, 2], [2, 4]]).inverse() is None


class TestSubspace(TestCase):
    def test_equality_ignores_spanning_set(self):
        u = Subspace.span(Q, 3, [(1, 0, 0), (0, 1, 0)])
        v = Subspace.span(Q, 3, [(1, 1, 0), (1, -1, 0), (2, 0, 0)])
        self.assertEqual(u, v)
        self.assertEqual(u.dim, 2)

    def test_sum_and_intersection(self):
        u = Subspace.span(Q, 3, [(1, 0, 0), (0, 1, 0)])
        w = Subspace.span(Q, 3, [(0, 1, 0), (0, 0, 1)])
        self.assertEqual((u + w).dim, 3)
        inter = u.intersection(w)
        self.assertEqual(inter.dim, 1)
        self.assertTrue(inter.contains((0, 5, 0)))
        self.assertFalse(inter.contains((1, 0, 0)))


class TestSplitSemisimple(TestCase):
    def _check_projectors(self, projectors, n, field):
        identity = Matrix.identity(field, n)
        total = Matrix.zeros(field, n, n)
        for e in projectors:
            self.assertEqual(e @ e, e)
            total = total + e
        for i, e in enumerate(projectors):
            for j, f in enumerate(projectors):
                if i != j:
                    self.assertTrue((e @ f).is_zero())
        self.assertEqual(total, identity)

    def test_distinct_eigenvalues_split_into_orthogonal_idempotents(self):
        m = Matrix.from_rows(Q, [[1, 1, 0], [0, 2, 0], [0, 0, 2]])
        projectors = split_semisimple_element(m)
        self.assertEqual(len(projectors), 2)
        self._check_projectors(projectors, 3, Q)
        self.assertEqual(sorted(p.rank() for p in projectors), [1, 2])

    def test_nilpotent_element_does_not_split(self):
        m = Matrix.from_rows(Q, [[0, 1], [0, 0]])
        self.assertEqual(split_semisimple_element(m), [Matrix.identity(Q, 2)])

    def test_split_over_prime_field(self):
        m = Matrix.diagonal(GF5, [1, 2, 4])
        projectors = split_semisimple_element(m)
        self.assertEqual(len(projectors), 3)
        self._check_projectors(projectors, 3, GF5)

    def test_irreducible_quadratic_does_not_split(self):
        # matrice compagnon de x² + 1
        for field in (Q, GF3):
            with self.subTest(field=str(field)):
                m = Matrix.from_rows(field, [[0, -1], [1, 0]])
                self.assertEqual(split_semisimple_element(m), [Matrix.identity(field, 2)])

    def test_quadratic_with_roots_splits_over_gf5(self):
        # x² + 1 = (x - 2)(x - 3) dans GF(5)
        m = Matrix.from_rows(GF5, [[0, -1], [1, 0]])
        projectors = split_semisimple_element(m)
        self.assertEqual(len(projectors), 2)
        self._check_projectors(projectors, 2, GF5)
