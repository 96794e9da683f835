"""Classification of left braces of size 8p through regular subgroups of holomorphs."""

from .abelian import (
    ORDER_8_GROUPS,
    AbelianGroup,
    AutGroup,
    Automorphism,
    Z2xZ2xZ2,
    Z4xZ2,
    Z8,
    automorphism_group,
    element_order,
    elements,
    parse_group,
)
from .errors import CapacityError, ConsistencyError, UnsupportedPrimeError
from .holomorph import HolElement, HolGroup, holomorph
from .subgroups import (
    ConjClass,
    IsoType,
    Subgroup,
    class_distribution,
    closure,
    conjugacy_classes,
    enumerate_regular_subgroups,
    is_regular,
    iso_type,
    regular_classes,
)
from .tau import (
    BraceTable,
    PairClass,
    ResidueClass,
    TauMap,
    brace_table,
    embed_pair,
    homomorphisms,
    kernel_breakdown,
    kernel_type_breakdown,
    pair_orbits,
)

__version__ = "0.1.0"
