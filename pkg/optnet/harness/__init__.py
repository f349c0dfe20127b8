"""Experiments, suites, reports and validation oracles."""

from optnet.harness.experiment import run_experiment
from optnet.harness.oracle import run_oracle
from optnet.harness.report import read_records, report, write_records
from optnet.harness.suites import SCALES, SUITES, median_by_model, run_suite, suite_specs
from optnet.harness.types import OracleResult, RunRecord, Scale

__all__ = [
    "SCALES",
    "SUITES",
    "OracleResult",
    "RunRecord",
    "Scale",
    "median_by_model",
    "read_records",
    "report",
    "run_experiment",
    "run_oracle",
    "run_suite",
    "suite_specs",
    "write_records",
]
