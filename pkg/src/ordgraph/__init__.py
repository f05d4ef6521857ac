"""Exact symbolic toolkit for finitely presented ordinal graphs."""

__version__ = "0.1.0"

from .ordinal import Ordinal, add, cmp, divmod_omega, left_sub, mul, omega_pow, parse
from .ordinal import format as format_ordinal
from .presentation import Presentation, PresentationError, atoms, load, validate
from .patheng import Path, compose, degree, divides, head, normalize, tail
from .boundary import Finite, OmegaTail, is_boundary, star_compose, star_head, star_length, star_tail
