"""
Run registry persistence
"""

from .sqlite import RunRecord, RunRegistry, get_run_registry, run_record

__all__ = ["RunRecord", "RunRegistry", "get_run_registry", "run_record"]
