"""Two-colored diagram machinery for planar five-vortex central configurations.

Subpackages cover exact polynomial algebra (`exactpoly`), vorticity
constraint reasoning (`vorticity`), the diagram model and rules
(`diagram`), sub-diagram lemma matchers (`lemmas`), enumeration, catalog
and rendering (`atlas`), the quadrilateral ideal certificate
(`quadrilateral`), numerics for the balance system (`numeric`), and the
command line (`cli`).
"""

from .diagram import Diagram, canonical_key, closeness, stroke_count_C, validate
from .vorticity import ConstraintLedger, Verdict, angular_momentum, decide, gamma_sum

__all__ = [
    "Diagram",
    "ConstraintLedger",
    "Verdict",
    "angular_momentum",
    "canonical_key",
    "closeness",
    "decide",
    "gamma_sum",
    "stroke_count_C",
    "validate",
]

__version__ = "0.1.0"
