"""Core entropy of quadratic polynomials from rational external angles."""

from .angles import (Angle, BinaryAngle, OrbitStructure, double_angle, format_angle,
                     orbit_structure, parse_angle, to_binary, tune_angle)
from .entropy import (EntropyReport, core_entropy, dimension_estimate_real,
                      graph_samples)
from .errors import (AngleSyntaxError, ConvergenceError, CoreEntropyError,
                     DomainError)
from .families import (AsymptoticsFit, FamilySpec, family_growth, family_polynomial,
                       fit_asymptotics)
from .galois import RootCloud, complex_roots, enumerate_polynomials, root_cloud
from .kneading import KneadingRoot, KneadingSigns, kneading_lambda, kneading_signs
from .polynomial import IntPolynomial
from .spectral import GrowthResult, char_poly, growth_rate, largest_real_root
from .symbolic import (KneadingSequence, is_real_admissible, is_real_angle, itinerary,
                       kneading_sequence, real_tree_survivors)
from .transition import (PairBasis, PairMatrix, build_pair_matrix, dominant_component,
                         is_separated, postcritical_angles)

__version__ = "0.1.0"
