"""Colouring circle graphs through pillar assignments."""
from ._errors import (
    CirclePaintError,
    ColourSetTooSmall,
    DegenerateInterval,
    DuplicateEndpoint,
    DuplicatePillarGap,
    GapOutsideArch,
    InvariantViolation,
    NoUncolouredIntervalInArch,
    NTooSmall,
    OmegaTooSmall,
    PillarInsideJ,
    PreconditionViolated,
)
from .core import (
    ChordDiagram,
    GapInterval,
    Graph,
    Interval,
    IntervalSystem,
    canonicalize,
    chords_to_intervals,
    overlap_graph,
    overlaps,
)
from .dominance import omega
from .estimator import CircleGraphColouring, PillarColouring, clique_number
from .lowerbound import generate_D, verify_lower_bound_instance
from .oracle import exact_chi, random_system, verify_colouring
from .pillar import PillarState, build_colouring
from .solver import bound, colour

__version__ = "0.1.0"
