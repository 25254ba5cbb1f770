"""Simulation harness, reproduction of the worked examples and result writers."""

from hypergraph_coding.harness.emit import emit_csv, emit_json, emit_text
from hypergraph_coding.harness.reproduce import (
    REPORT_CSV_COLUMNS,
    ReproductionReport,
    ReproductionRow,
    reproduce_example,
)
from hypergraph_coding.harness.simulate import SIMULATION_CSV_COLUMNS, SimConfig, SimResult, prepare_instance, simulate

__all__ = [
    "REPORT_CSV_COLUMNS",
    "ReproductionReport",
    "ReproductionRow",
    "SIMULATION_CSV_COLUMNS",
    "SimConfig",
    "SimResult",
    "emit_csv",
    "emit_json",
    "emit_text",
    "prepare_instance",
    "reproduce_example",
    "simulate",
]
