"""Neural-architecture search spaces as callable multi-objective benchmarks."""

__version__ = "0.1.0"
