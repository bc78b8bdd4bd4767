# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
from __future__ import annotations

import math
from pathlib import Path

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ForgeConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="FORGE_")

    max_cover_size: int = Field(default=1_000_000, gt=0)
    max_girth_cycles_length: int = Field(default=64, gt=0)
    tolerance: float = Field(default=1e-8, gt=0)
    construction_tolerance: float = Field(default=1e-10, gt=0)
    acceptance_margin: float = Field(default=1e-6, gt=0)
    theta: float = Field(default=math.pi / 2, gt=0, lt=math.pi)
    seed: int = 0
    max_tiling_chambers: int = Field(default=200_000, gt=0)
    max_subset_candidates: int = Field(default=200_000, gt=0)
    max_elementary_vertices: int = Field(default=16, gt=0)
    report_directory: Path = Path("reports")

    @classmethod
    def load(cls, path: Path) -> "ForgeConfig":
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ValueError("Config file must contain a YAML mapping at the top level.")
        return cls(**raw)


def default_config_path() -> Path:
    return Path("forge.yml")
