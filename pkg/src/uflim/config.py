from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .partitions import DEFAULT_GUARD

FORMATS = ("json", "dot", "text")


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every CLI command.

    ``seed`` only feeds the randomized sweeps in ``scripts/`` and the test
    suite; every CLI command is deterministic regardless of it.
    """

    size_guard: int = DEFAULT_GUARD
    force: bool = False
    seed: int = 0
    output_format: str = "text"

    def __post_init__(self):
        if self.size_guard < 0:
            raise InputError("size guard must be >= 0")
        if self.output_format not in FORMATS:
            raise InputError(f"output format must be one of {FORMATS}")
