"""
Tests for the max-min scalar and matrix operations
"""
import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from src.algebra import (
    MaxMinMatrix,
    ONE,
    ZERO,
    complement,
    index_set,
    lambda_matrix,
    lambda_w_matrix,
    mat_mul,
    mat_oplus,
    mat_power,
    oplus,
    otimes,
    parse_rendered,
    scalar_parse,
    scalar_render,
    to_scalar,
)
from src.exceptions import IndexRangeError, ScalarParseError, ShapeError
from src.testing_strategies import QUARTERS, matrices, scalars, vectors

F = Fraction

EX1 = MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]])
EX3 = MaxMinMatrix.from_rows([[".1", ".5", ".7"], ["0", ".4", ".8"], [".1", ".1", ".5"]])


class TestScalars(unittest.TestCase):
    """Parsing, rendering and the two scalar operations"""

    def test_parse_decimals(self):
        self.assertEqual(scalar_parse(".7"), F(7, 10))
        self.assertEqual(scalar_parse("0.35"), F(7, 20))
        self.assertEqual(scalar_parse("1"), ONE)
        self.assertEqual(scalar_parse("1.000"), ONE)
        self.assertEqual(scalar_parse(" 0 "), ZERO)

    def test_parse_rejects_bad_tokens(self):
        for token in ["1.5", "abc", "", ".", "-0.1", "0.5.1", "2"]:
            with self.assertRaises(ScalarParseError, msg=token):
                scalar_parse(token)

    def test_floats_are_rejected(self):
        with self.assertRaises(ScalarParseError):
            to_scalar(0.5)
        with self.assertRaises(ScalarParseError):
            to_scalar(True)
        self.assertEqual(to_scalar(F(1, 3)), F(1, 3))

    def test_render_is_exact(self):
        self.assertEqual(scalar_render(F(7, 20)), "0.35")
        self.assertEqual(scalar_render(ZERO), "0")
        self.assertEqual(scalar_render(ONE), "1")
        self.assertEqual(scalar_render(F(1, 8)), "0.125")
        self.assertEqual(scalar_render(F(3, 40)), "0.075")
        self.assertEqual(scalar_render(F(1, 3)), "1/3")

    def test_parse_rendered(self):
        self.assertEqual(parse_rendered("1/3"), F(1, 3))
        self.assertEqual(parse_rendered("0.85"), F(17, 20))
        with self.assertRaises(ScalarParseError):
            parse_rendered("4/3")
        with self.assertRaises(ScalarParseError):
            parse_rendered("1/0")

    @given(st.integers(0, 1000), st.integers(1, 1000))
    def test_render_parse_inverse(self, p, q):
        value = F(min(p, q), q)
        self.assertEqual(parse_rendered(scalar_render(value)), value)

    def test_oplus_otimes(self):
        self.assertEqual(oplus(F(7, 10), F(3, 10)), F(7, 10))
        self.assertEqual(otimes(F(7, 10), F(3, 10)), F(3, 10))
        self.assertEqual(oplus(F(2, 5), ZERO), F(2, 5))

    @given(scalars, scalars, scalars)
    def test_semiring_laws(self, a, b, c):
        self.assertEqual(oplus(a, oplus(b, c)), oplus(oplus(a, b), c))
        self.assertEqual(otimes(a, otimes(b, c)), otimes(otimes(a, b), c))
        self.assertEqual(oplus(a, b), oplus(b, a))
        self.assertEqual(otimes(a, b), otimes(b, a))
        self.assertEqual(oplus(a, a), a)
        self.assertEqual(otimes(a, a), a)
        self.assertEqual(otimes(a, oplus(b, c)), oplus(otimes(a, b), otimes(a, c)))

    def test_index_sets(self):
        self.assertEqual(index_set([2, 0, 2], 3), (0, 2))
        self.assertEqual(complement((0, 2), 4), (1, 3))
        with self.assertRaises(IndexRangeError):
            index_set([3], 3)


class TestMatrices(unittest.TestCase):
    """Max-min products, sums, powers and the structured matrices"""

    def test_product_examples(self):
        self.assertEqual(EX3 @ MaxMinMatrix.vector([".5", ".5", ".5"]), MaxMinMatrix.vector([".5", ".5", ".5"]))
        self.assertEqual(EX1 @ MaxMinMatrix.vector([".35", ".8"]), MaxMinMatrix.vector([".35", ".5"]))
        self.assertEqual(MaxMinMatrix.identity(3) @ EX3, EX3)

    def test_product_shape_mismatch(self):
        with self.assertRaises(ShapeError):
            mat_mul(EX1, EX3)

    def test_empty_inner_dimension_gives_zeros(self):
        left = MaxMinMatrix.zeros(2, 0)
        right = MaxMinMatrix.zeros(0, 3)
        self.assertEqual(mat_mul(left, right), MaxMinMatrix.zeros(2, 3))

    def test_powers_and_sums(self):
        self.assertEqual(mat_power(EX1, 0), MaxMinMatrix.identity(2))
        self.assertEqual(mat_power(EX1, 2), EX1)
        self.assertEqual(mat_oplus(EX3, EX3), EX3)
        with self.assertRaises(ValueError):
            mat_power(EX1, -1)

    def test_lambda_matrix(self):
        self.assertEqual(
            lambda_matrix(F(1, 2), 3, [0, 1]),
            MaxMinMatrix.from_rows([["1", ".5"], [".5", "1"], [".5", ".5"]]),
        )
        self.assertEqual(lambda_matrix(F(1, 2), 3, []).shape, (3, 0))
        self.assertEqual(lambda_matrix(F(3, 5), 3, [2]), MaxMinMatrix.from_rows([[".6"], [".6"], ["1"]]))
        with self.assertRaises(IndexRangeError):
            lambda_matrix(F(1, 2), 3, [3])

    def test_lambda_w_matrix(self):
        self.assertEqual(
            lambda_w_matrix(MaxMinMatrix.vector(["0", "0", ".5"])),
            MaxMinMatrix.from_rows([["1", "0", "0"], ["0", "1", "0"], [".5", ".5", "1"]]),
        )
        self.assertEqual(lambda_w_matrix(MaxMinMatrix.zeros(3)), MaxMinMatrix.identity(3))
        self.assertEqual(
            lambda_w_matrix(MaxMinMatrix.vector([".6", "0", "0"])),
            MaxMinMatrix.from_rows([["1", ".6", ".6"], ["0", "1", "0"], ["0", "0", "1"]]),
        )

    def test_matrix_construction_errors(self):
        with self.assertRaises(ShapeError):
            MaxMinMatrix.from_rows([["0", "1"], ["0"]])
        with self.assertRaises(ScalarParseError):
            MaxMinMatrix.from_rows([["1.2"]])

    def test_submatrix_and_columns(self):
        self.assertEqual(EX3.submatrix([0, 2], [0, 2]), MaxMinMatrix.from_rows([[".1", ".7"], [".1", ".5"]]))
        self.assertEqual(EX3.column(1), MaxMinMatrix.vector([".5", ".4", ".1"]))
        self.assertEqual(EX3.submatrix([], [1]).shape, (0, 1))
        with self.assertRaises(IndexRangeError):
            EX3.submatrix([3], [0])

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_product_is_associative(self, data):
        n = data.draw(st.integers(1, 3))
        values = st.sampled_from(QUARTERS)
        a, b, c = (data.draw(matrices(n, n, values)) for _ in range(3))
        self.assertEqual((a @ b) @ c, a @ (b @ c))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_product_is_monotone(self, data):
        n = data.draw(st.integers(1, 3))
        a, extra = data.draw(matrices(n, n)), data.draw(matrices(n, n))
        x, bump = data.draw(vectors(n)), data.draw(vectors(n))
        bigger_a, bigger_x = a | extra, x | bump
        self.assertTrue((a @ x).leq(bigger_a @ bigger_x))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_product_preserves_values(self, data):
        n = data.draw(st.integers(1, 3))
        a, b = data.draw(matrices(n, n)), data.draw(matrices(n, n))
        inputs = set(a.values()) | set(b.values())
        self.assertTrue(set((a @ b).values()) <= inputs)


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestScalars))
    suite.addTests(loader.loadTestsFromTestCase(TestMatrices))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    exit(0 if success else 1)
