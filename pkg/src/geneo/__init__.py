"""Persistence-based lower bounds for the natural pseudo-distance on the circle.

Functions on S^1 are sampled on a regular grid, compared modulo grid
rotations/reflections, and pushed through families of group-equivariant
non-expansive operators whose persistence diagrams give a computable lower
bound for the natural pseudo-distance.
"""

from .core import (CircularFunction, GroupElement, TransformGroup, act, enumerate_group,
                   make_function, sup_distance)
from .errors import (ConstraintViolation, EmptyInput, EssentialMismatch, GeneoError,
                     InvalidLevelPair, InvalidParameter, IoError, NonFiniteValue, ParseError,
                     SizeMismatch, TooLarge)
from .fileio import (generate_random_function, parse_family_file, parse_function_file,
                     write_function_file)
from .matching import MatchingResult, bottleneck, bottleneck_bruteforce
from .metrics import (VerificationReport, family_matching_distance, natural_pseudo_distance,
                      verify_inequalities)
from .operators import (AxiomReport, Compose, ConstantOffset, ConvexCombination, GridRotation,
                        Identity, OperatorFamily, PointwiseMax, Reflect, TranslateMax,
                        TranslateMin, WeightedShiftSum, apply_operator, validate_geneo)
from .persistence import PersistenceDiagram, persistent_betti, sublevel_diagram
from .plot import render_diagram_svg

__version__ = "0.1.0"
