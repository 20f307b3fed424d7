"""Computational toolkit for finite hypergroups.

Elements are ``0..n-1`` with the identity at 0; subsets are int bitmasks
(see :mod:`hypergroups.bits`).
"""

from .arith import (
    is_p_hypergroup,
    is_p_subset,
    is_p_valenced,
    is_rt,
    is_solvable,
    o_p,
    rt_chain,
    sylow_p_subsets,
    valency,
)
from .bits import mask_of, members
from .core import (
    Hypergroup,
    build_hypergroup,
    infer_star,
    is_commutative,
    is_thin,
    is_thin_element,
    restrict,
    set_product,
    star_of_set,
    thin_elements,
)
from .enumeration import are_isomorphic, canonical_form, enumerate_hypergroups
from .hgt import format_hgt, parse_hgt, read_hgt, write_hgt
from .quotient import coset, quotient, strongly_normal_correspondence
from .series import (
    center,
    hypercenter,
    is_central_series,
    is_nilpotent_group,
    is_weakly_nilpotent,
    upper_center_series,
)
from .subsets import (
    all_closed_subsets,
    generated_closed,
    is_closed,
    is_normal,
    is_strongly_normal,
    maximal_closed_subsets,
    subnormal_chain,
    thin_residue,
)

__version__ = "0.1.0"
