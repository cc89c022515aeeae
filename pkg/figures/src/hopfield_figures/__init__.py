"""Figure regeneration for hopfield-prototypes CSV outputs."""

from .render import build_figure, render
from .spec import FAMILIES, HERTZ_REFERENCE, FigureSpec

__version__ = "0.1.0"
