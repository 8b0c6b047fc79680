"""The built-in verification corpus.

Covers commutative and noncommutative rings, characteristics 2, 3 and
composite, and both p-group and non-p-group group rings.  Entries are
built lazily under the active resource guard; entries the guard rejects
are carried as skip markers rather than dropped.
"""

from __future__ import annotations

from typing import Callable, Union

from . import constructions as cons
from . import groups
from .core import FiniteRing, ResourceGuard, DEFAULT_GUARD
from .errors import SizeExceeded
from .invariants import idempotents


def _corner_of_m2z2(guard: ResourceGuard) -> FiniteRing:
    parent = cons.make_matrix(cons.make_zmod(2, guard), 2, guard)
    nontrivial = [e for e in idempotents(parent) if e not in (parent.zero, parent.one)]
    return cons.make_corner(parent, nontrivial[0])


def _builders(guard: ResourceGuard) -> list[Callable[[], FiniteRing]]:
    z = lambda n: (lambda: cons.make_zmod(n, guard))
    gf = lambda q: (lambda: cons.make_gf(q, guard))
    entries: list[Callable[[], FiniteRing]] = []
    entries += [z(n) for n in list(range(2, 14)) + [16, 27]]
    entries += [gf(4), gf(8), gf(9)]
    entries += [
        lambda: cons.make_matrix(cons.make_zmod(2, guard), 2, guard),
        lambda: cons.make_matrix(cons.make_zmod(3, guard), 2, guard),
        lambda: cons.make_matrix(cons.make_gf(4, guard), 2, guard),
        lambda: cons.make_matrix(cons.make_zmod(2, guard), 3, guard),
        lambda: cons.make_triangular(cons.make_zmod(2, guard), 2, guard),
        lambda: cons.make_triangular(cons.make_zmod(2, guard), 3, guard),
        lambda: cons.make_triangular(cons.make_zmod(4, guard), 2, guard),
        lambda: cons.make_ks(cons.make_zmod(4, guard), 2, guard),
        lambda: cons.make_ks(cons.make_zmod(2, guard), 0, guard),
        lambda: cons.make_trivial_extension(cons.make_zmod(2, guard), guard),
        lambda: cons.make_trivial_extension(cons.make_zmod(4, guard), guard),
        lambda: cons.make_polyquot(cons.make_zmod(2, guard), 3, guard),
        lambda: cons.make_polyquot(cons.make_zmod(4, guard), 2, guard),
        lambda: cons.make_product([cons.make_zmod(2, guard), cons.make_zmod(3, guard)], guard),
        lambda: cons.make_product([cons.make_zmod(4, guard), cons.make_zmod(9, guard)], guard),
        lambda: cons.make_groupring(cons.make_zmod(2, guard), groups.cyclic(2), guard),
        lambda: cons.make_groupring(cons.make_zmod(2, guard), groups.cyclic(4), guard),
        lambda: cons.make_groupring(cons.make_zmod(4, guard), groups.cyclic(2), guard),
        lambda: cons.make_groupring(cons.make_zmod(2, guard), groups.quaternion8(), guard),
        lambda: cons.make_groupring(cons.make_zmod(3, guard), groups.cyclic(2), guard),
        lambda: cons.make_groupring(cons.make_zmod(2, guard), groups.cyclic(3), guard),
        lambda: cons.make_formal_triangular(cons.make_zmod(2, guard), cons.make_zmod(2, guard), guard),
        lambda: _corner_of_m2z2(guard),
    ]
    return entries


def build_corpus(guard: ResourceGuard = DEFAULT_GUARD) -> list[Union[FiniteRing, str]]:
    """The standard corpus; guard-rejected entries become skip strings."""
    out: list[Union[FiniteRing, str]] = []
    for builder in _builders(guard):
        try:
            out.append(builder())
        except SizeExceeded as exc:
            out.append(str(exc))
    return out
