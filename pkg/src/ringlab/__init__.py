"""ringlab: exact computation with finite unital rings.

Construct rings (residues, finite fields, matrix rings, group rings, ...),
compute their structural invariants, and decide the unit/nilpotent ring
classes, with exhaustive desk-scale verification suites behind the
``ringlab`` command line tool.
"""

from .core import (
    Elem,
    FiniteRing,
    ResourceGuard,
    Verdict,
    characteristic,
    power,
    verify_ring_axioms,
)
from .constructions import (
    IdealSet,
    IntegersOracle,
    ideal_closure,
    integers_oracle,
    make_corner,
    make_formal_triangular,
    make_gf,
    make_groupring,
    make_ks,
    make_matrix,
    make_polyquot,
    make_product,
    make_quotient,
    make_trivial_extension,
    make_triangular,
    make_zmod,
    subring_closure,
)
from .groups import FiniteGroup, cyclic, dihedral, direct_product, from_cayley_json, quaternion8, symmetric
from . import errors, invariants, predicates

pow = power  # noqa: A001 - exported operation name

__all__ = [
    "Elem",
    "FiniteRing",
    "FiniteGroup",
    "IdealSet",
    "IntegersOracle",
    "ResourceGuard",
    "Verdict",
    "characteristic",
    "errors",
    "ideal_closure",
    "integers_oracle",
    "invariants",
    "make_corner",
    "make_formal_triangular",
    "make_gf",
    "make_groupring",
    "make_ks",
    "make_matrix",
    "make_polyquot",
    "make_product",
    "make_quotient",
    "make_trivial_extension",
    "make_triangular",
    "make_zmod",
    "power",
    "pow",
    "predicates",
    "subring_closure",
    "verify_ring_axioms",
    "cyclic",
    "dihedral",
    "direct_product",
    "from_cayley_json",
    "quaternion8",
    "symmetric",
]
