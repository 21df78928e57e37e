"""Maintainability metrics for Java sources and a harness that benchmarks them
as binary classifiers against human maintainability labels."""

__version__ = "0.1.0"
