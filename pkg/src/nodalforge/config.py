"""Run configuration: tolerances, output formats, and the config-file parser."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

FORMATS = ("json", "csv", "svg", "md", "png")
SEED_MODES = ("lattice+grid", "grid-only")


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances shared by the search and certification stages."""

    newton: float = 1e-10        # stop Newton when the gradient norm drops below this
    dedupe_radius: float = 1e-6  # points closer than this are the same critical point
    value: float = 1e-8          # distance of a critical value from {0, -1, 8}
    residual: float = 1e-8       # scaled residual accepted for certified nodes
    max_newton_iter: int = 50
    degeneracy: float = 1e-8     # |det H| below this (scaled) means a degenerate point
    parallel: float = 1e-9       # line direction cross product below this is parallel
    concurrency: float = 1e-7    # vertices closer than this mean three concurrent lines

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name} must be positive")


@dataclass
class RunConfig:
    """One CLI invocation's worth of settings."""

    degree: int = 9
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_dir: Path = Path("out")
    formats: tuple[str, ...] = FORMATS
    seed_mode: str = "lattice+grid"

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise ValueError(f"unknown formats: {bad}; allowed: {FORMATS}")
        if self.seed_mode not in SEED_MODES:
            raise ValueError(f"seed_mode must be one of {SEED_MODES}")


def load_config_file(path: Path | str) -> dict[str, str]:
    """Parse a ``key = value`` text file; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values
