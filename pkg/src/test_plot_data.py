"""
Tests for the plot data tables
"""
import os
import tempfile
import unittest

from src.algebra import MaxMinMatrix, scalar_parse
from src.eigenspace import full_eigenspace
from src.exceptions import ShapeError
from src.plot_data import BOX_HEADER, box_rows, plot_tables, point_rows, require_plottable, to_tsv, write_plot_data

HALF = scalar_parse(".5")
EX1 = MaxMinMatrix.from_rows([[".7", ".3"], [".2", ".5"]])
EX3 = MaxMinMatrix.from_rows([[".1", ".5", ".7"], ["0", ".4", ".8"], [".1", ".1", ".5"]])


class TestPlotData(unittest.TestCase):
    """Box and point tables"""

    def test_box_rows(self):
        description = full_eigenspace(EX3, HALF)
        rows = box_rows(description)
        self.assertEqual(len(rows), 3 * len(description.pieces))
        background = [row for row in rows if row[1] == "background"]
        self.assertEqual([(row[4], row[5]) for row in background], [("0.5", "1"), ("0.5", "1"), ("0.5", "0.5")])
        self.assertEqual(background[0][2], "K={} L={1,2,3}")

    def test_point_rows(self):
        description = full_eigenspace(EX1, HALF)
        rows = point_rows(description, 2, seed=1, grid_cap=None)
        self.assertEqual(len(rows), 2 * len(description.pieces))
        self.assertTrue(all(row[0] == "sample" for row in rows))

        with_grid = point_rows(description, 0, grid_cap=10_000)
        self.assertTrue(with_grid)
        self.assertTrue(all(row[0] == "grid" and row[1] == "" for row in with_grid))
        self.assertIn(("grid", "", "pure", "0.4", "0.2"), with_grid)

    def test_dimension_limits(self):
        one = full_eigenspace(MaxMinMatrix.from_rows([[".5"]]), HALF)
        with self.assertRaises(ShapeError):
            box_rows(one)
        with self.assertRaises(ShapeError):
            point_rows(one, 1)
        with self.assertRaises(ShapeError):
            require_plottable(4)

    def test_tables_and_files(self):
        self.assertEqual(to_tsv(("a", "b"), [("1", "2")]), "a\tb\n1\t2\n")
        description = full_eigenspace(EX1, HALF)
        boxes, points = plot_tables(description, 1, grid_cap=None)
        self.assertTrue(boxes.startswith("\t".join(BOX_HEADER) + "\n"))
        self.assertTrue(points.startswith("source\tpiece\tlabel\tx1\tx2\n"))

        with tempfile.TemporaryDirectory() as temp_dir:
            prefix = os.path.join(temp_dir, "ex1")
            paths = write_plot_data(description, prefix, 1, grid_cap=None)
            self.assertEqual(paths, (prefix + ".boxes.tsv", prefix + ".points.tsv"))
            with open(paths[0], encoding="utf-8") as handle:
                self.assertEqual(handle.read(), boxes)


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestPlotData))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_tests()
    exit(0 if success else 1)
