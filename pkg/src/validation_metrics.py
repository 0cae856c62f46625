"""
Validation Metrics Module
Tracks and reports statistics over oracle cross-validation runs
"""
from typing import Dict, List
from datetime import datetime
import logging

from src.algebra import scalar_render
from src.oracle import ValidationReport

logger = logging.getLogger(__name__)


class ValidationTracker:
    """
    Collects validation reports across many instances

    Metrics tracked:
    - Validation latency
    - Grid sizes and eigenvector counts
    - Pieces per description
    - Failures and errors
    """

    def __init__(self, slow_run_ms: float = 5000.0):
        self.runs: List[Dict] = []
        self.errors: List[Dict] = []
        self.slow_run_ms = slow_run_ms

    def track_report(self, name: str, report: ValidationReport):
        """
        Record one cross-validation report

        Args:
            name: Instance label
            report: Report returned by cross_validate
        """
        run = {
            'timestamp': datetime.now().isoformat(),
            'name': name,
            'n': report.n,
            'lambda': scalar_render(report.lam),
            'grid_points': report.grid_points,
            'eigenvectors': report.eigenvector_count,
            'pieces': report.piece_count,
            'uncovered': len(report.uncovered),
            'failing_samples': len(report.failing_samples),
            'passed': report.passed,
            'elapsed_ms': report.elapsed_ms,
        }
        self.runs.append(run)

        if report.elapsed_ms > self.slow_run_ms:
            logger.warning(f"Slow validation for {name}: {report.elapsed_ms:.2f}ms")
        if not report.passed:
            logger.warning(f"Validation failed for {name}")

    def track_error(self, name: str, error: Exception):
        self.errors.append({
            'timestamp': datetime.now().isoformat(),
            'name': name,
            'error_type': type(error).__name__,
            'error_message': str(error),
        })
        logger.error(f"Validation error for {name}: {type(error).__name__} - {error}")

    def get_metrics(self) -> Dict:
        return {
            'summary': self._get_summary(),
            'run_metrics': self._get_run_metrics(),
            'error_metrics': self._get_error_metrics(),
        }

    def _get_summary(self) -> Dict:
        failed = [run['name'] for run in self.runs if not run['passed']]
        return {
            'total_runs': len(self.runs),
            'passed': len(self.runs) - len(failed),
            'failed': failed,
            'total_errors': len(self.errors),
        }

    def _get_run_metrics(self) -> Dict:
        if not self.runs:
            return {
                'count': 0,
                'avg_elapsed_ms': 0,
                'avg_grid_points': 0,
                'avg_eigenvectors': 0,
                'avg_pieces': 0,
            }

        elapsed = [run['elapsed_ms'] for run in self.runs]
        return {
            'count': len(self.runs),
            'avg_elapsed_ms': sum(elapsed) / len(self.runs),
            'avg_grid_points': sum(run['grid_points'] for run in self.runs) / len(self.runs),
            'avg_eigenvectors': sum(run['eigenvectors'] for run in self.runs) / len(self.runs),
            'avg_pieces': sum(run['pieces'] for run in self.runs) / len(self.runs),
            'p50_elapsed_ms': self._percentile(elapsed, 50),
            'p95_elapsed_ms': self._percentile(elapsed, 95),
            'max_elapsed_ms': max(elapsed),
        }

    def _get_error_metrics(self) -> Dict:
        error_counts: Dict[str, int] = {}
        for error in self.errors:
            error_counts[error['error_type']] = error_counts.get(error['error_type'], 0) + 1
        return {
            'count': len(self.errors),
            'by_type': error_counts,
        }

    def _percentile(self, values: List[float], percentile: int) -> float:
        if not values:
            return 0.0
        sorted_values = sorted(values)
        index = min(int(len(sorted_values) * percentile / 100), len(sorted_values) - 1)
        return sorted_values[index]

    def all_passed(self) -> bool:
        return not self.errors and all(run['passed'] for run in self.runs)
