"""
Tests for parametric solution sets
"""
import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from src.algebra import MaxMinMatrix, ZERO
from src.exceptions import ShapeError
from src.parametric_set import ParametricSet, box_bounds, membership, principal_solution, sample
from src.testing_strategies import matrices, vectors

F = Fraction

# Bellman solution set of [[.7,.3],[.2,.5]] with b = (.3,.2)
BELLMAN_SET = ParametricSet(
    offset=MaxMinMatrix.vector([".3", ".2"]),
    generators=MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]]),
)


def vec(*values):
    return MaxMinMatrix.vector(list(values))


class TestParametricSet(unittest.TestCase):
    """Construction, evaluation and bounds"""

    def test_shape_checks(self):
        with self.assertRaises(ShapeError):
            ParametricSet(offset=MaxMinMatrix.zeros(2), generators=MaxMinMatrix.identity(3))
        with self.assertRaises(ShapeError):
            ParametricSet(offset=MaxMinMatrix.zeros(2, 2), generators=MaxMinMatrix.identity(2))
        with self.assertRaises(ShapeError):
            BELLMAN_SET.evaluate(vec(".1"))

    def test_evaluate(self):
        self.assertEqual(BELLMAN_SET.evaluate(vec("0", "0")), vec(".3", ".2"))
        self.assertEqual(BELLMAN_SET.evaluate(vec("1", "0")), vec(".7", ".2"))
        self.assertEqual(BELLMAN_SET.evaluate(vec(".5", "1")), vec(".5", ".5"))
        self.assertEqual(BELLMAN_SET.dim, 2)
        self.assertEqual(BELLMAN_SET.parameter_count, 2)

    def test_box_bounds(self):
        lower, upper = box_bounds(BELLMAN_SET)
        self.assertEqual(lower, vec(".3", ".2"))
        self.assertEqual(upper, vec(".7", ".5"))

    def test_breakpoints(self):
        expected = [F(k, 100) for k in (0, 10, 20, 25, 30, 40, 50, 60, 70, 85, 100)]
        self.assertEqual(BELLMAN_SET.breakpoints(), expected)

    def test_full_box(self):
        box = ParametricSet.full_box(3)
        self.assertTrue(membership(box, vec(".9", "0", ".35")))
        lower, upper = box_bounds(box)
        self.assertEqual(lower, MaxMinMatrix.zeros(3))
        self.assertEqual(upper, MaxMinMatrix.filled(3, 1, "1"))


class TestMembership(unittest.TestCase):
    """Residuation based membership and sampling"""

    def test_principal_solution(self):
        self.assertEqual(principal_solution(BELLMAN_SET.generators, vec(".5", ".5")), vec(".5", "1"))
        self.assertEqual(principal_solution(BELLMAN_SET.generators, vec(".3", ".6")), vec(".3", "1"))
        with self.assertRaises(ShapeError):
            principal_solution(BELLMAN_SET.generators, vec(".5"))

    def test_members(self):
        for x in [vec(".3", ".2"), vec(".7", ".2"), vec(".5", ".5"), vec(".3", ".5")]:
            self.assertTrue(membership(BELLMAN_SET, x), msg=x.values())

    def test_non_members(self):
        # (.3,.6) leaves the box, (.1,.2) is below the offset
        for x in [vec(".3", ".6"), vec(".1", ".2"), vec(".8", ".2")]:
            self.assertFalse(membership(BELLMAN_SET, x), msg=x.values())
        with self.assertRaises(ShapeError):
            membership(BELLMAN_SET, vec(".3"))

    def test_set_without_generators_is_its_offset(self):
        point = ParametricSet(offset=vec(".5", ".2"), generators=MaxMinMatrix.zeros(2, 0))
        self.assertTrue(membership(point, vec(".5", ".2")))
        self.assertFalse(membership(point, vec(".5", ".3")))
        self.assertEqual(sample(point, 3), [vec(".5", ".2")] * 3)

    def test_sample_is_seeded(self):
        self.assertEqual(sample(BELLMAN_SET, 10, seed=7), sample(BELLMAN_SET, 10, seed=7))
        self.assertEqual(sample(BELLMAN_SET, 0), [])
        with self.assertRaises(ValueError):
            sample(BELLMAN_SET, -1)
        for x in sample(BELLMAN_SET, 20, seed=3):
            self.assertTrue(membership(BELLMAN_SET, x))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_principal_solution_is_greatest_below(self, data):
        n = data.draw(st.integers(1, 3))
        k = data.draw(st.integers(0, 3))
        generators = data.draw(matrices(n, k))
        x = data.draw(vectors(n))
        z_hat = principal_solution(generators, x)
        self.assertTrue((generators @ z_hat).leq(x))

        z = data.draw(vectors(k))
        if (generators @ z).leq(x):
            self.assertTrue(z.leq(z_hat))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_evaluated_points_are_members(self, data):
        n = data.draw(st.integers(1, 3))
        k = data.draw(st.integers(0, 3))
        parametric_set = ParametricSet(offset=data.draw(vectors(n)), generators=data.draw(matrices(n, k)))
        x = parametric_set.evaluate(data.draw(vectors(k)))
        self.assertTrue(membership(parametric_set, x))
        lower, upper = box_bounds(parametric_set)
        self.assertTrue(lower.leq(x) and x.leq(upper))
        self.assertTrue(all(v >= ZERO for v in x.values()))


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestParametricSet))
    suite.addTests(loader.loadTestsFromTestCase(TestMembership))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    exit(0 if success else 1)
