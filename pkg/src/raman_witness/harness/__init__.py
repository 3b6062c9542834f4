"""Configuration, scans, oracle comparison, Table-1 report and output."""
from .compare import CompareReport, ErrorFit, compare_report
from .config import (ConfigError, OracleConfig, ParseError, ScanConfig, ValidationError,
                     build_config, load_config, parse_text, preset)
from .emit import CSV_HEADER, EmitError, emit, load_result, to_csv, to_json
from .scan import ScanResult, run_scan
from .table1 import EXPECTED, Status, Table1Cell, format_table, table1

__all__ = [
    "CSV_HEADER", "CompareReport", "ConfigError", "EXPECTED", "EmitError", "ErrorFit",
    "OracleConfig", "ParseError", "ScanConfig", "ScanResult", "Status", "Table1Cell",
    "ValidationError", "build_config", "compare_report", "emit", "format_table", "load_config",
    "load_result", "parse_text", "preset", "run_scan", "table1", "to_csv", "to_json",
]
