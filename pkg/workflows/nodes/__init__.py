"""LangGraph harness pipelines"""

from .benchmark import BenchmarkState, benchmark, create_benchmark_workflow
from .error_study import ErrorStudyState, create_error_study_workflow, resolution_error_study

__all__ = [
    "BenchmarkState",
    "ErrorStudyState",
    "benchmark",
    "create_benchmark_workflow",
    "create_error_study_workflow",
    "resolution_error_study",
]
