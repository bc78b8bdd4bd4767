# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, computed_field

from systoleforge.storage.documents import dump_document, format_real

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
WAIVED = "waived"


def _text(value: object) -> str:
    return format_real(value) if isinstance(value, float) else str(value)


class ClauseResult(BaseModel):
    name: str
    anchor: str
    status: str
    witness: str = ""
    values: dict[str, str] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL


class RunReport(BaseModel):
    command: str
    inputs: dict[str, str] = Field(default_factory=dict)
    clauses: list[ClauseResult] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdicts(self) -> dict[str, dict[str, str]]:
        return {
            clause.name: {"status": clause.status, "witness": clause.witness}
            for clause in self.clauses
        }

    def add(
        self,
        name: str,
        anchor: str,
        ok: bool,
        *,
        witness: object = "",
        waived: bool = False,
        **values: object,
    ) -> ClauseResult:
        clause = ClauseResult(
            name=name,
            anchor=anchor,
            status=WAIVED if waived else PASS if ok else FAIL,
            witness=str(witness),
            values={key: _text(value) for key, value in values.items()},
        )
        self.clauses.append(clause)
        if clause.status == FAIL:
            logger.warning("clause %s failed: %s", name, clause.values)
        return clause

    def content_hash(self) -> str:
        payload = self.model_dump(mode="json", exclude={"timings"})
        text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()


def content_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class ReportStore:
    def __init__(self, directory: Path) -> None:
        self.directory = directory
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, report: RunReport) -> Path:
        slug = report.command.replace(" ", "-").replace("/", "-")
        return self.directory / f"{slug}-{report.content_hash()[:12]}.json"

    def save(self, report: RunReport) -> Path:
        path = self.path_for(report)
        path.write_text(dump_document(report) + "\n", encoding="utf-8")
        return path

    def load_all(self) -> list[RunReport]:
        reports: list[RunReport] = []
        skipped: list[str] = []
        for path in sorted(self.directory.glob("*.json")):
            try:
                reports.append(RunReport.model_validate_json(path.read_text(encoding="utf-8")))
            except (OSError, UnicodeDecodeError, ValidationError) as exc:
                skipped.append(f"{path.name}: {exc}")
        if skipped:
            logger.warning(
                "Skipped %d invalid report file(s): %s",
                len(skipped),
                "; ".join(skipped),
            )
        return reports
