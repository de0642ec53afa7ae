"""Finite semigroups and their extensions to spaces of upfamilies."""

from .enumeration import enumerate_lattices, enumerate_semigroups
from .errors import CapExceededError, ClosureError, InputError, SemiextError
from .extension import (
    ExtensionSemigroup,
    analyze_extension,
    analyze_lattice_extension,
    build_extension,
    extension_nm_clifford,
    is_regular_in_upsilon,
    product,
    product_literal,
    tensor_product,
)
from .semigroup import CayleyTable, canonical_form, classify, parse_carrier
from .upfamily import (
    SpaceKind,
    UpFamily,
    classify_upfamily,
    enumerate_space,
    named_lambda4_elements,
    up_closure,
)

__version__ = "0.1.0"
