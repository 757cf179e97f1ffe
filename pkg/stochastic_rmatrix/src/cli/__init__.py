"""Command-line interface: verify, build and simulate."""

from .main import build_parser, main
from .reports import CheckRecord, RunReport, matrix_payload, write_matrix
