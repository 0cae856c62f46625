"""
Tests for the Bellman equation x = A⊗x ⊕ b
"""
import unittest

from hypothesis import given, settings

from src.algebra import MaxMinMatrix, ZERO
from src.bellman import bellman_orbit_limit, bellman_solution_set, is_bellman_solution, least_solution
from src.exceptions import ContractViolation, ShapeError
from src.oracle import breakpoints, grid_bellman_solutions, grid_members
from src.parametric_set import membership
from src.testing_strategies import bellman_instances

EX1 = MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]])
B1 = MaxMinMatrix.vector([".3", ".2"])


def vec(*values):
    return MaxMinMatrix.vector(list(values))


class TestBellmanExamples(unittest.TestCase):
    """Least solution and solution set of the two-by-two instance"""

    def test_least_solution(self):
        self.assertEqual(least_solution(EX1, B1), vec(".3", ".2"))
        self.assertTrue(is_bellman_solution(EX1, B1, vec(".3", ".2")))

    def test_solution_set(self):
        solutions = bellman_solution_set(EX1, B1)
        self.assertEqual(solutions.offset, vec(".3", ".2"))
        self.assertEqual(solutions.generators, MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]]))

        for x in [vec(".3", ".2"), vec(".7", ".2"), vec(".5", ".5"), vec(".4", ".2")]:
            self.assertTrue(membership(solutions, x), msg=x.values())
            self.assertTrue(is_bellman_solution(EX1, B1, x), msg=x.values())
        self.assertFalse(membership(solutions, vec(".3", ".6")))
        self.assertFalse(is_bellman_solution(EX1, B1, vec(".3", ".6")))

    def test_zero_right_hand_side_gives_principal_eigenvectors(self):
        solutions = bellman_solution_set(EX1, MaxMinMatrix.zeros(2))
        self.assertEqual(solutions.offset, MaxMinMatrix.zeros(2))
        self.assertTrue(membership(solutions, vec(".4", ".2")))

    def test_shape_errors(self):
        with self.assertRaises(ShapeError):
            least_solution(EX1, vec(".1"))
        with self.assertRaises(ShapeError):
            least_solution(MaxMinMatrix.from_rows([[".1", ".2"]]), vec(".1"))
        with self.assertRaises(ShapeError):
            is_bellman_solution(EX1, B1, vec(".1"))

    def test_orbit_limit(self):
        self.assertEqual(bellman_orbit_limit(EX1, vec(".4", ".2")), vec(".4", ".2"))
        self.assertEqual(bellman_orbit_limit(EX1, vec(".7", ".6")), vec(".7", ".5"))
        with self.assertRaises(ContractViolation):
            bellman_orbit_limit(EX1, vec("0", "1"))


class TestBellmanProperties(unittest.TestCase):
    """Agreement with brute force on the breakpoint grid"""

    @settings(max_examples=120, deadline=None)
    @given(bellman_instances(max_n=3))
    def test_solution_set_matches_grid(self, instance):
        a, b = instance
        solutions = bellman_solution_set(a, b)
        grid = breakpoints(a, ZERO, b.values())
        expected = grid_bellman_solutions(a, b, grid)
        self.assertEqual(grid_members([solutions], grid), expected)

    @settings(max_examples=120, deadline=None)
    @given(bellman_instances(max_n=3))
    def test_least_solution_is_below_every_solution(self, instance):
        a, b = instance
        least = least_solution(a, b)
        self.assertTrue(is_bellman_solution(a, b, least))
        for x in grid_bellman_solutions(a, b):
            self.assertTrue(least.leq(x))
            limit = bellman_orbit_limit(a, x)
            self.assertEqual(a @ limit, limit)
            self.assertEqual(least | limit, x)


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestBellmanExamples))
    suite.addTests(loader.loadTestsFromTestCase(TestBellmanProperties))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    exit(0 if success else 1)
