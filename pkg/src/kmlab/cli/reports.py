"""Run configuration and report writers shared by the CLI commands."""

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import click
from pydantic import BaseModel, Field, field_validator
from sympy import isprime

from kmlab import __version__


class RunConfig(BaseModel):
    """Validated parameters of one CLI run; echoed in every report header."""

    command: str = Field(description="Subcommand name")
    gcm: str = Field(default="", description="Preset name or GCM file path")
    depth: Optional[int] = Field(default=None, ge=0, description="Depth bound d")
    degree: Optional[int] = Field(default=None, ge=0, description="Degree bound D")
    prime: Optional[int] = Field(default=None, description="Characteristic p")
    weight: Optional[List[int]] = Field(
        default=None, description="Highest weight in fundamental coordinates"
    )
    elements: List[str] = Field(default_factory=list, description="Weyl elements as reduced words")
    max_len: Optional[int] = Field(default=None, ge=0)
    search_len: Optional[int] = Field(default=None, ge=0)
    output_format: Literal["tsv", "json"] = "tsv"
    output: Optional[str] = None

    @field_validator("prime")
    @classmethod
    def _check_prime(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and not isprime(value):
            raise ValueError(f"{value} is not prime")
        return value

    def header(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True, exclude={"output", "output_format"})


@dataclass
class Report:
    """Tabular report with provenance header and optional summary fields."""

    run: RunConfig
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    timestamp: bool = True

    def header(self) -> Dict[str, Any]:
        header: Dict[str, Any] = {"tool": "kmlab", "version": __version__, "run": self.run.header()}
        if self.timestamp:
            header["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return header

    def to_tsv(self) -> str:
        lines = [f"# {key}: {_compact(value)}" for key, value in self.header().items()]
        lines.extend(f"# {key}: {_compact(value)}" for key, value in self.summary.items())
        lines.append("\t".join(self.columns))
        lines.extend("\t".join(_cell(x) for x in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "header": self.header(),
            "summary": self.summary,
            "columns": self.columns,
            "rows": [[_cell(x) for x in row] for row in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"

    def render(self) -> str:
        return self.to_json() if self.run.output_format == "json" else self.to_tsv()


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(x) for x in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, default=str)


def write_report(report: Report) -> None:
    """Write to the configured output path, or stdout."""
    text = report.render()
    if report.run.output:
        Path(report.run.output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
