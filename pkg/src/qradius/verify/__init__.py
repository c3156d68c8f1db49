"""Seeded property suites with machine-readable reports."""
from .report import PropertyRecord, PropertySpec, SuiteConfig, SuiteReport, worker_count
from .suites import (SUITES, coverage_manifest, load_claims, replay_trial, run_all,
                     run_axiom_suite, run_block_lemma_suite, run_classical_limit_suite,
                     run_reduction_suite, run_sandwich_suite, run_suite, suite_properties)

__all__ = [
    "PropertyRecord", "PropertySpec", "SUITES", "SuiteConfig", "SuiteReport",
    "coverage_manifest", "load_claims", "replay_trial", "run_all", "run_axiom_suite",
    "run_block_lemma_suite", "run_classical_limit_suite", "run_reduction_suite",
    "run_sandwich_suite", "run_suite", "suite_properties", "worker_count",
]
