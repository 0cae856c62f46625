"""
Max-Min Eigenproblem Solver - Source Package
"""

__version__ = "1.0.0"
