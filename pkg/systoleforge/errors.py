# Copyright 2025 systoleforge
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0

from __future__ import annotations


class ForgeError(RuntimeError):
    """Base class for expected, reportable failures of the toolkit."""


class TooLarge(ForgeError):
    """An input exceeds a configured size cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what} of size {size} exceeds the configured cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap
