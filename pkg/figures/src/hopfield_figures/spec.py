"""Figure specifications: which inputs, which family, which columns."""

from __future__ import annotations

from dataclasses import dataclass, field

FAMILIES = ("theory-curve", "distance", "proportion", "energy-profile", "state-strip")

HERTZ_REFERENCE = 0.0036


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: inputs, family, optional hue/facet columns, output path."""

    inputs: tuple[str, ...]
    family: str
    out: str
    hue: str | None = None
    facet: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown figure family {self.family!r}; expected one of {FAMILIES}")
        if not self.inputs:
            raise ValueError("figure spec needs at least one input file")
