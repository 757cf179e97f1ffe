"""
Machine-readable run reports and exact matrix export

FEATURES:
- CheckRecord / RunReport pydantic models, one record per executed check
- matrix JSON with exact "num/den" entries, CSV via pandas
- rich summary table for the console
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from ..exactnum.report import FAIL, PASS, POLE, VerificationReport
from ..exactnum.scalars import fmt_rat
from ..rmat.operator import Operator

logger = logging.getLogger(__name__)


class CheckRecord(BaseModel):
    """Outcome of one verifier call."""

    id: str
    params: Dict[str, str] = Field(default_factory=dict)
    points_tried: int = 0
    status: str
    poles: int = 0
    witness: Optional[Dict] = None
    notes: Dict[str, str] = Field(default_factory=dict)

    @classmethod
    def from_report(cls, report: VerificationReport, params: Optional[Dict[str, object]] = None) -> "CheckRecord":
        witness = None
        failing = next((o for o in report.outcomes if o.status == FAIL), None)
        if failing is not None and failing.witness is not None:
            witness = failing.witness.to_dict()
            # seed and point together reproduce the failure
            witness["point"] = failing.params
        return cls(
            id=report.identity,
            params={k: str(v) for k, v in (params or {}).items()},
            points_tried=report.points_tried,
            status=report.status,
            poles=sum(1 for o in report.outcomes if o.status == POLE),
            witness=witness,
            notes=dict(report.notes),
        )


class RunReport(BaseModel):
    suite: str
    seed: int
    checks: List[CheckRecord] = Field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def failures(self) -> List[CheckRecord]:
        return [c for c in self.checks if c.status != PASS]

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def save(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.model_dump(), f, indent=2)
        logger.info(f"💾 report saved to {path}")
        return path


def print_summary(report: RunReport, console: Optional[Console] = None) -> None:
    console = console or Console()
    table = Table(title=f"verify {report.suite} (seed {report.seed})")
    table.add_column("check")
    table.add_column("points", justify="right")
    table.add_column("status")
    table.add_column("witness")
    for check in report.checks:
        style = "green" if check.status == PASS else "red"
        witness = ""
        if check.witness:
            witness = f"{check.witness['location']} lhs={check.witness['lhs']} rhs={check.witness['rhs']}"
        table.add_row(check.id, str(check.points_tried), f"[{style}]{check.status}[/{style}]", witness)
    console.print(table)
    console.print(f"📊 {len(report.checks) - len(report.failures)}/{len(report.checks)} passed in {report.elapsed_ms} ms")


# matrices --------------------------------------------------------------------

def state_label(state) -> str:
    return "|".join("".join(map(str, a)) for a in state)


def matrix_payload(op: Operator, header: Dict[str, object], params: Dict[str, object]) -> Dict:
    """{n, I, J, ordering, params, entries} with entries as [row, col, "num/den"]."""
    payload = {k: v for k, v in header.items()}
    payload["ordering"] = "lex"
    payload["dim"] = op.dim
    payload["params"] = {k: fmt_rat(v) for k, v in params.items()}
    payload["basis"] = [state_label(s) for s in op.space.states]
    payload["entries"] = [[r, c, fmt_rat(v)] for r, c, v in sorted(op.entries())]
    return payload


def matrix_frame(op: Operator) -> pd.DataFrame:
    states = op.space.states
    rows = [
        {"row": r, "col": c, "row_state": state_label(states[r]), "col_state": state_label(states[c]), "value": fmt_rat(v)}
        for r, c, v in sorted(op.entries())
    ]
    return pd.DataFrame(rows, columns=["row", "col", "row_state", "col_state", "value"])


def write_matrix(op: Operator, header: Dict[str, object], params: Dict[str, object], path: Path, fmt: str = "json") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as f:
            json.dump(matrix_payload(op, header, params), f, indent=2)
    elif fmt == "csv":
        matrix_frame(op).to_csv(path, index=False)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    logger.info(f"💾 {op.dim}x{op.dim} matrix saved to {path}")
    return path
