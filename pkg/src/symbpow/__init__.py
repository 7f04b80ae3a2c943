"""Exact certification of symbolic-vs-ordinary power containments for
point ideals of rational line arrangements.

The pipeline: take a line arrangement over the rationals, collect its
intersection points of multiplicity at least three, form the ideal of
those points, extract minimal generators, and decide - with exact rational
linear algebra and machine-checkable certificates - whether a symbolic
power of the ideal is contained in an ordinary power.
"""

from .catalog import BUILTIN_NAMES, CatalogEntry, builtin, load_arrangement, serialize_arrangement
from .errors import (
    InputDataError,
    InternalCheckError,
    SymbpowError,
    WitnessRejection,
)
from .fatpoints import (
    ContainmentVerdict,
    FatScheme,
    GeneratorSet,
    GradedPiece,
    WitnessCertificate,
    certify_witness,
    check_containment,
    els_spot_check,
    initial_degree,
    minimal_generators,
    ordinary_power_piece,
    reverse_containment_check,
    symbolic_piece,
)
from .linalg import RatMatrix, RrefResult, in_span, kernel_basis, rref, rref_fraction_free
from .polyring import CoeffVector, HomogPoly, parse
from .projgeom import (
    Arrangement,
    Census,
    ProjLine,
    ProjPoint,
    census,
    incident,
    intersect,
    normalize_triple,
    points_of_multiplicity_at_least,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BUILTIN_NAMES",
    "CatalogEntry",
    "Census",
    "CoeffVector",
    "ContainmentVerdict",
    "FatScheme",
    "GeneratorSet",
    "GradedPiece",
    "HomogPoly",
    "InputDataError",
    "InternalCheckError",
    "ProjLine",
    "ProjPoint",
    "RatMatrix",
    "RrefResult",
    "SymbpowError",
    "WitnessCertificate",
    "WitnessRejection",
    "builtin",
    "census",
    "certify_witness",
    "check_containment",
    "els_spot_check",
    "in_span",
    "incident",
    "initial_degree",
    "intersect",
    "kernel_basis",
    "load_arrangement",
    "minimal_generators",
    "normalize_triple",
    "ordinary_power_piece",
    "parse",
    "points_of_multiplicity_at_least",
    "reverse_containment_check",
    "rref",
    "rref_fraction_free",
    "serialize_arrangement",
    "symbolic_piece",
]
