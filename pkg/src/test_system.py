"""
System Test Script for the Max-Min Eigenproblem Solver
Runs every command line subcommand on the worked instances: python -m src.test_system
"""
import io
import json
import os
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout

from src.examples import COVERING_EXAMPLE, EIGEN_INSTANCES, Instance
from src.main import EXIT_INPUT_ERROR, EXIT_OK, main as cli_main
from src.problem_io import Problem, serialize_problem

WORK_DIR = tempfile.mkdtemp(prefix="maxmin-system-")


def print_section(title):
    """Print formatted section header"""
    print("\n" + "="*60)
    print(f"  {title}")
    print("="*60 + "\n")


def _problem_file(instance: Instance) -> str:
    path = os.path.join(WORK_DIR, f"{instance.name}.json")
    problem = Problem(matrix=instance.matrix, b=instance.b, lam=instance.lam)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(serialize_problem(problem), handle)
    return path


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = cli_main(list(argv))
    return status, out.getvalue(), err.getvalue()


def test_cover_example():
    """Minimal coverings of the covering instance"""
    print_section("Testing Cover")

    status, out, err = _run("cover", _problem_file(COVERING_EXAMPLE))
    if status != EXIT_OK:
        print(f"❌ cover exited with {status}: {err.strip()}")
        return False

    result = json.loads(out)
    print(f"✅ Status: {result['status']}")
    print(f"   I0: {result['I0']}")
    for block in result['coverings']:
        print(f"   - W={block['W']}  z={block['z']}")
    return result['status'] == "SOLVED" and len(result['coverings']) == 2


def test_eigen_instances():
    """Eigenspace, star and validation for every eigen instance"""
    print_section("Testing Eigenspaces")

    success_count = 0
    for instance in EIGEN_INSTANCES:
        path = _problem_file(instance)
        statuses = []
        for command in ("star", "eigen", "validate"):
            status, out, _ = _run(command, path, "--samples", "10")
            statuses.append(status)
            if command == "eigen" and status == EXIT_OK:
                pieces = json.loads(out)['pieces']
        if all(status == EXIT_OK for status in statuses):
            success_count += 1
            print(f"✅ {instance.name}: {len(pieces)} pieces, validation passed")
        else:
            print(f"❌ {instance.name}: exit statuses {statuses}")

    print(f"\n✅ {success_count}/{len(EIGEN_INSTANCES)} instances passed")
    return success_count == len(EIGEN_INSTANCES)


def test_error_handling():
    """Missing files and missing lambda are input errors"""
    print_section("Testing Error Handling")

    status, _, err = _run("star", os.path.join(WORK_DIR, "missing.json"))
    missing_ok = status == EXIT_INPUT_ERROR
    print(f"{'✅' if missing_ok else '❌'} Missing file: exit {status} ({err.strip()})")

    bare = os.path.join(WORK_DIR, "bare.json")
    with open(bare, "w", encoding="utf-8") as handle:
        json.dump({"matrix": [["0.5"]]}, handle)
    status, _, err = _run("eigen", bare)
    lambda_ok = status == EXIT_INPUT_ERROR
    print(f"{'✅' if lambda_ok else '❌'} Missing lambda: exit {status} ({err.strip()})")
    return missing_ok and lambda_ok


def main():
    """Run all tests"""
    print("\n" + "Max-Min Solver System Test".center(60))
    print("="*60)

    results = {
        "cover": test_cover_example(),
        "eigen": test_eigen_instances(),
        "errors": test_error_handling(),
    }

    print_section("Test Summary")
    for name, passed in results.items():
        print(f"{'✅' if passed else '❌'} {name}")
    return all(results.values())


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
