"""A non-Leighton pair of two-cell complexes, with the tooling to probe it.

Words and presentations, coset enumeration, finite covers, Baumslag-Solitar
normal forms and ball-scale checks of the common-cover isomorphism.
"""

from .bsgroup import BS35, INTEGERS, BsElement, GroupModel, cayley_ball, h_parity, normal_form
from .complex2 import (
    CellMap,
    Complex2,
    build_cover_from_table,
    euler_characteristic,
    export_dot,
    export_json,
    import_json,
    standard_complex,
    verify_covering,
    verify_isomorphism,
)
from .enumeration import (
    CosetTable,
    Homomorphism,
    abelianization,
    enumerate_homs,
    low_index,
    schreier_generators,
    todd_coxeter,
)
from .errors import CapExceeded, CosetOverflow
from .nonleighton import (
    build_cover_ball,
    build_phi,
    phi_check,
    torus_klein_demo,
    verify_partial_cover,
    verify_phi,
)
from .report import Check, Report
from .snf import invariant_factors, smith_normal_form
from .words import H_HAT, ParseError, Presentation, builtin, free_reduce, parse_presentation

__version__ = "0.1.0"
