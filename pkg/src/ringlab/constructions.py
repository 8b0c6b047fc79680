"""Builders for every supported ring construction.

Most constructions present their elements as tuples of digits over smaller
base rings (matrix entries, polynomial coefficients, group-ring
coefficients, ...).  The shared machinery below writes each multiplication
formula once against an ops adapter, which yields both the scalar
operations and a vectorized table builder from the same code path.
Derived carriers (corners, quotients, subrings) re-index a parent ring
instead.

Element coding is the documented mixed-radix convention: digit i carries
weight prod(sizes[:i]), so digit 0 varies fastest and the zero element is
always code 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .core import DEFAULT_GUARD, FiniteRing, Elem, OpTables, ResourceGuard
from .errors import (
    NotAPrimePower,
    NotAnIdeal,
    NotIdempotent,
    RangeCheckError,
    UnsupportedConstruction,
    UnsupportedPredicate,
)
from .groups import FiniteGroup, factorize

_DT = np.int32


class _Ops(NamedTuple):
    """add/mul/neg working uniformly on int codes or index arrays."""

    add: Callable
    mul: Callable
    neg: Callable


def _scalar_ops(base: FiniteRing) -> _Ops:
    return _Ops(base._add, base._mul, base._neg)


def _vector_ops(tables: OpTables) -> _Ops:
    add_t, mul_t, neg_t = tables
    return _Ops(lambda x, y: add_t[x, y], lambda x, y: mul_t[x, y], lambda x: neg_t[x])


def _weights(sizes: Sequence[int]) -> tuple[list[int], int]:
    weights = []
    total = 1
    for s in sizes:
        weights.append(total)
        total *= s
    return weights, total


def _tuple_ring(
    bases: Sequence[FiniteRing],
    mul_digits: Callable,
    one_digits: Sequence[int],
    *,
    label: str,
    kind: str,
    meta: dict,
    guard: ResourceGuard,
    render_digits: Optional[Callable[[list[int]], str]] = None,
) -> FiniteRing:
    """Assemble a ring whose elements are digit tuples over base rings."""
    sizes = [b.size for b in bases]
    weights, total = _weights(sizes)
    guard.check_ring_size(total, what=kind)
    for b in bases:
        if b.zero != 0:
            raise UnsupportedConstruction("base rings must place zero at code 0")

    width = len(bases)
    scalar_ops = [_scalar_ops(b) for b in bases]

    def decode(code: int) -> list[int]:
        return [(code // weights[t]) % sizes[t] for t in range(width)]

    def encode(digits) -> int:
        return sum(int(d) * w for d, w in zip(digits, weights))

    def add(i: int, j: int) -> int:
        di, dj = decode(i), decode(j)
        return encode(scalar_ops[t].add(di[t], dj[t]) for t in range(width))

    def neg(i: int) -> int:
        di = decode(i)
        return encode(scalar_ops[t].neg(di[t]) for t in range(width))

    def mul(i: int, j: int) -> int:
        return encode(mul_digits(decode(i), decode(j), scalar_ops))

    def vec_builder() -> OpTables:
        tabs = [b.tables() for b in bases]
        vops = [_vector_ops(t) for t in tabs]
        codes = np.arange(total, dtype=np.int64)
        digits = [((codes // weights[t]) % sizes[t]).astype(_DT) for t in range(width)]

        def encode_vec(parts) -> np.ndarray:
            acc = None
            for part, w in zip(parts, weights):
                term = np.asarray(part, dtype=np.int64) * w
                acc = term if acc is None else acc + term
            return acc.astype(_DT)

        neg_t = encode_vec([tabs[t].neg[digits[t]] for t in range(width)])

        chunk = max(1, (1 << 22) // total)
        add_t = np.empty((total, total), dtype=_DT)
        mul_t = np.empty((total, total), dtype=_DT)
        for lo in range(0, total, chunk):
            hi = min(total, lo + chunk)
            xs = [digits[t][lo:hi][:, None] for t in range(width)]
            ys = [digits[t][None, :] for t in range(width)]
            add_t[lo:hi] = encode_vec(
                [tabs[t].add[xs[t], ys[t]] for t in range(width)]
            )
            mul_t[lo:hi] = encode_vec(mul_digits(xs, ys, vops))
        return OpTables(add_t, mul_t, neg_t)

    def render(code: int) -> str:
        digs = decode(code)
        if render_digits is not None:
            return render_digits(digs)
        return "(" + ",".join(bases[t].render(digs[t]) for t in range(width)) + ")"

    meta = dict(meta)
    meta["weights"] = tuple(weights)
    meta["slot_sizes"] = tuple(sizes)
    return FiniteRing(
        total,
        add,
        mul,
        neg,
        one=sum(int(d) * w for d, w in zip(one_digits, weights)),
        label=label,
        kind=kind,
        meta=meta,
        guard=guard,
        render=render,
        vec_builder=vec_builder,
    )


def decode_digits(R: FiniteRing, code: int) -> list[int]:
    """Digit tuple of a code in a tuple-presented ring."""
    weights = R.meta["weights"]
    sizes = R.meta["slot_sizes"]
    return [(code // w) % s for w, s in zip(weights, sizes)]


def encode_digits(R: FiniteRing, digits: Sequence[int]) -> int:
    return sum(int(d) * w for d, w in zip(digits, R.meta["weights"]))


# ---------------------------------------------------------------------------
# residue rings and finite fields
# ---------------------------------------------------------------------------


def make_zmod(n: int, guard: Optional[ResourceGuard] = None, *, label: Optional[str] = None,
              kind: str = "zmod", extra_meta: Optional[dict] = None) -> FiniteRing:
    """The ring of residues modulo n on codes 0..n-1."""
    guard = guard or DEFAULT_GUARD
    if n < 2:
        raise RangeCheckError("modulus must be at least 2")
    guard.check_ring_size(n)

    def vec_builder() -> OpTables:
        codes = np.arange(n, dtype=np.int64)
        add_t = ((codes[:, None] + codes[None, :]) % n).astype(_DT)
        mul_t = ((codes[:, None] * codes[None, :]) % n).astype(_DT)
        neg_t = ((-codes) % n).astype(_DT)
        return OpTables(add_t, mul_t, neg_t)

    meta = {"n": n}
    meta.update(extra_meta or {})
    return FiniteRing(
        n,
        lambda i, j: (i + j) % n,
        lambda i, j: (i * j) % n,
        lambda i: (-i) % n,
        one=1,
        label=label or f"Z({n})",
        kind=kind,
        meta=meta,
        guard=guard,
        vec_builder=vec_builder,
    )


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """(p, e) with q = p**e, or None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return next(iter(fac.items()))


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division of coefficient lists (constant first) over Z_p; den must be monic."""
    num = list(num)
    dlen = len(den)
    quot = [0] * max(1, len(num) - dlen + 1)
    for shift in range(len(num) - dlen, -1, -1):
        coef = num[shift + dlen - 1] % p
        if coef:
            quot[shift] = coef
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - coef * d) % p
    while len(num) > 1 and num[-1] % p == 0:
        num.pop()
    return quot, [c % p for c in num]


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(coeffs) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if rem == [0]:
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree e over Z_p.

    Coefficient order is constant term first; the returned list has length
    e + 1 and ends with the leading 1.
    """
    for tail in itertools.product(range(p), repeat=e):
        coeffs = list(tail) + [1]
        if coeffs[0] == 0:
            continue  # divisible by x
        if _is_irreducible(coeffs, p):
            return coeffs
    raise NotAPrimePower(f"no irreducible polynomial of degree {e} over Z_{p}")  # unreachable


def make_gf(q: int, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """The field with q = p**e elements.

    For e = 1 this is the residue ring mod p.  For e > 1 the elements are
    polynomial residues modulo the lexicographically smallest monic
    irreducible of degree e (constant-first digit coding, base p).
    """
    guard = guard or DEFAULT_GUARD
    pe = prime_power(q)
    if pe is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    p, e = pe
    guard.check_ring_size(q)
    if e == 1:
        return make_zmod(p, guard, label=f"GF({q})", kind="gf",
                         extra_meta={"p": p, "e": 1, "q": q, "modulus": (0, 1)})

    modulus = smallest_irreducible(p, e)
    # x^m reduced mod the modulus, for m = 0 .. 2e-2
    reductions: list[list[int]] = []
    for m in range(2 * e - 1):
        if m < e:
            vec = [0] * e
            vec[m] = 1
        else:
            prev = reductions[m - 1]
            vec = [0] + prev[: e - 1]
            lead = prev[e - 1]
            if lead:
                for d in range(e):
                    vec[d] = (vec[d] - lead * modulus[d]) % p
        reductions.append([c % p for c in vec])

    base = make_zmod(p, guard)

    def mul_digits(X, Y, ops):
        o = ops[0]
        out = [None] * e
        for m in range(2 * e - 1):
            acc = None
            for i in range(max(0, m - e + 1), min(e, m + 1)):
                term = o.mul(X[i], Y[m - i])
                acc = term if acc is None else o.add(acc, term)
            for d in range(e):
                c = reductions[m][d]
                if c == 0:
                    continue
                part = acc if c == 1 else o.mul(c, acc)
                out[d] = part if out[d] is None else o.add(out[d], part)
        return [t if t is not None else 0 for t in out]

    def render_digits(digs: list[int]) -> str:
        terms = []
        for i, c in enumerate(digs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                terms.append(xpow if c == 1 else f"{c}{xpow}")
        return " + ".join(terms) if terms else "0"

    return _tuple_ring(
        [base] * e,
        mul_digits,
        [1] + [0] * (e - 1),
        label=f"GF({q})",
        kind="gf",
        meta={"p": p, "e": e, "q": q, "modulus": tuple(modulus)},
        guard=guard,
        render_digits=render_digits,
    )


# ---------------------------------------------------------------------------
# matrix-shaped constructions
# ---------------------------------------------------------------------------


def make_matrix(R: FiniteRing, k: int, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Full k x k matrix ring over R; digits are row-major entries."""
    guard = guard or R.guard
    if k < 1:
        raise RangeCheckError("matrix size must be >= 1")
    guard.check_ring_size(R.size ** (k * k), what="matrix ring")

    def mul_digits(X, Y, ops):
        o = ops[0]
        out = []
        for r in range(k):
            for c in range(k):
                acc = o.mul(X[r * k], Y[c])
                for t in range(1, k):
                    acc = o.add(acc, o.mul(X[r * k + t], Y[t * k + c]))
                out.append(acc)
        return out

    one_digits = [R.one if r == c else 0 for r in range(k) for c in range(k)]

    def render_digits(digs):
        rows = [
            "[" + ",".join(R.render(digs[r * k + c]) for c in range(k)) + "]"
            for r in range(k)
        ]
        return "[" + ",".join(rows) + "]"

    return _tuple_ring(
        [R] * (k * k),
        mul_digits,
        one_digits,
        label=f"M({k},{R.label})",
        kind="matrix",
        meta={"base": R, "k": k},
        guard=guard,
        render_digits=render_digits,
    )


def make_triangular(R: FiniteRing, k: int, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Upper triangular k x k matrices over R; digits are the upper entries, row-major."""
    guard = guard or R.guard
    if k < 2:
        raise RangeCheckError("triangular size must be >= 2")
    positions = [(r, c) for r in range(k) for c in range(r, k)]
    pos = {rc: i for i, rc in enumerate(positions)}
    guard.check_ring_size(R.size ** len(positions), what="triangular ring")

    def mul_digits(X, Y, ops):
        o = ops[0]
        out = []
        for r, c in positions:
            acc = None
            for t in range(r, c + 1):
                term = o.mul(X[pos[(r, t)]], Y[pos[(t, c)]])
                acc = term if acc is None else o.add(acc, term)
            out.append(acc)
        return out

    one_digits = [R.one if r == c else 0 for r, c in positions]

    def render_digits(digs):
        rows = []
        for r in range(k):
            cells = []
            for c in range(k):
                cells.append(R.render(digs[pos[(r, c)]]) if c >= r else R.render(0))
            rows.append("[" + ",".join(cells) + "]")
        return "[" + ",".join(rows) + "]"

    return _tuple_ring(
        [R] * len(positions),
        mul_digits,
        one_digits,
        label=f"T({k},{R.label})",
        kind="triangular",
        meta={"base": R, "k": k, "positions": tuple(positions)},
        guard=guard,
        render_digits=render_digits,
    )


def make_ks(R: FiniteRing, s: int, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """2x2 generalized matrices over R with cross terms weighted by s*1.

    Digits are (a, x, y, b) for the matrix [[a, x], [y, b]]; the scalar s is
    an integer mapped to s*1_R, which is central by construction.
    """
    guard = guard or R.guard
    guard.check_ring_size(R.size ** 4, what="generalized matrix ring")
    s_code = scalar_code(R, s)

    def mul_digits(X, Y, ops):
        o = ops[0]
        a1, x1, y1, b1 = X
        a2, x2, y2, b2 = Y
        return [
            o.add(o.mul(a1, a2), o.mul(s_code, o.mul(x1, y2))),
            o.add(o.mul(a1, x2), o.mul(x1, b2)),
            o.add(o.mul(y1, a2), o.mul(b1, y2)),
            o.add(o.mul(s_code, o.mul(y1, x2)), o.mul(b1, b2)),
        ]

    def render_digits(digs):
        a, x, y, b = (R.render(d) for d in digs)
        return f"[[{a},{x}],[{y},{b}]]"

    return _tuple_ring(
        [R] * 4,
        mul_digits,
        [R.one, 0, 0, R.one],
        label=f"Ks({R.label},{s})",
        kind="ks",
        meta={"base": R, "s": s, "s_code": s_code},
        guard=guard,
        render_digits=render_digits,
    )


def _additive_order_of_one(R: FiniteRing) -> int:
    x = R.one
    k = 1
    while x != R.zero:
        x = R.add(x, R.one)
        k += 1
    return k


def scalar_code(R: FiniteRing, s: int) -> int:
    """The code of s*1 in R (s-fold sum of one, negatives through neg)."""
    char = _additive_order_of_one(R)
    out = R.zero
    for _ in range(s % char):
        out = R.add(out, R.one)
    return out


def make_trivial_extension(R: FiniteRing, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Pairs (r, n) over the regular bimodule: (r,n)(r',n') = (rr', rn' + nr')."""
    guard = guard or R.guard
    guard.check_ring_size(R.size ** 2, what="trivial extension")

    def mul_digits(X, Y, ops):
        o = ops[0]
        r1, n1 = X
        r2, n2 = Y
        return [o.mul(r1, r2), o.add(o.mul(r1, n2), o.mul(n1, r2))]

    return _tuple_ring(
        [R, R],
        mul_digits,
        [R.one, 0],
        label=f"TrivExt({R.label})",
        kind="trivext",
        meta={"base": R},
        guard=guard,
        render_digits=lambda d: f"({R.render(d[0])},{R.render(d[1])})",
    )


def make_polyquot(R: FiniteRing, k: int, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Truncated polynomials R[x]/(x^k); digits are coefficients, constant first."""
    guard = guard or R.guard
    if k < 1:
        raise RangeCheckError("truncation degree must be >= 1")
    guard.check_ring_size(R.size ** k, what="truncated polynomial ring")

    def mul_digits(X, Y, ops):
        o = ops[0]
        out = []
        for d in range(k):
            acc = None
            for i in range(d + 1):
                term = o.mul(X[i], Y[d - i])
                acc = term if acc is None else o.add(acc, term)
            out.append(acc)
        return out

    def render_digits(digs):
        terms = []
        for i, c in enumerate(digs):
            if c == 0:
                continue
            coef = R.render(c)
            if i == 0:
                terms.append(coef)
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                terms.append(xpow if c == R.one else f"{coef}{xpow}")
        return " + ".join(terms) if terms else "0"

    return _tuple_ring(
        [R] * k,
        mul_digits,
        [R.one] + [0] * (k - 1),
        label=f"Poly({R.label},{k})",
        kind="polyquot",
        meta={"base": R, "k": k},
        guard=guard,
        render_digits=render_digits,
    )


def make_product(components: Sequence[FiniteRing], guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Direct product with componentwise operations."""
    components = list(components)
    if not components:
        raise RangeCheckError("product needs at least one component")
    guard = guard or components[0].guard
    total = 1
    for c in components:
        total *= c.size
    guard.check_ring_size(total, what="product ring")
    width = len(components)

    def mul_digits(X, Y, ops):
        return [ops[t].mul(X[t], Y[t]) for t in range(width)]

    return _tuple_ring(
        components,
        mul_digits,
        [c.one for c in components],
        label="Prod(" + ",".join(c.label for c in components) + ")",
        kind="product",
        meta={"components": tuple(components)},
        guard=guard,
    )


def make_formal_triangular(R: FiniteRing, S: FiniteRing, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """Triangular matrices [[r, m], [0, s]] with m in the bimodule R x R.

    The bimodule must carry unital actions on both sides, which pins the
    two corner rings to the same construction; the diagonal actions
    r*(a,b) = (ra, rb) and (a,b)*s = (as, bs) then make M = R x R a
    nontrivial square-zero part.  Distinct corner rings are rejected
    because no canonical unital bimodule connects them.
    """
    guard = guard or R.guard
    if R.label != S.label or R.size != S.size:
        raise UnsupportedConstruction(
            "formal triangular rings need equal corner rings at desk scale "
            f"(got {R.label} and {S.label})"
        )
    guard.check_ring_size(R.size ** 3 * S.size, what="formal triangular ring")

    def mul_digits(X, Y, ops):
        o = ops[0]
        r1, a1, b1, s1 = X
        r2, a2, b2, s2 = Y
        return [
            o.mul(r1, r2),
            o.add(o.mul(r1, a2), o.mul(a1, s2)),
            o.add(o.mul(r1, b2), o.mul(b1, s2)),
            o.mul(s1, s2),
        ]

    def render_digits(d):
        return f"[[{R.render(d[0])},({R.render(d[1])},{R.render(d[2])})],[0,{R.render(d[3])}]]"

    return _tuple_ring(
        [R, R, R, R],
        mul_digits,
        [R.one, 0, 0, R.one],
        label=f"FT({R.label},{S.label})",
        kind="ft",
        meta={"base": R, "left": R, "right": S},
        guard=guard,
        render_digits=render_digits,
    )


def make_groupring(R: FiniteRing, G: FiniteGroup, guard: Optional[ResourceGuard] = None) -> FiniteRing:
    """The group ring R[G]: functions G -> R under convolution."""
    guard = guard or R.guard
    guard.check_ring_size(R.size ** G.order, what="group ring")
    n = G.order
    pairs = [(g, h, int(G.table[g, h])) for g in range(n) for h in range(n)]

    def mul_digits(X, Y, ops):
        o = ops[0]
        out = [None] * n
        for g, h, target in pairs:
            term = o.mul(X[g], Y[h])
            out[target] = term if out[target] is None else o.add(out[target], term)
        return out

    one_digits = [0] * n
    one_digits[G.identity] = R.one

    def render_digits(digs):
        terms = []
        for g, c in enumerate(digs):
            if c == 0:
                continue
            coef = R.render(c)
            lbl = G.element_label(g)
            terms.append(lbl if c == R.one else f"{coef}*{lbl}")
        return " + ".join(terms) if terms else "0"

    return _tuple_ring(
        [R] * n,
        mul_digits,
        one_digits,
        label=f"GR({R.label},{G.label})",
        kind="groupring",
        meta={"base": R, "group": G},
        guard=guard,
        render_digits=render_digits,
    )


# ---------------------------------------------------------------------------
# derived carriers: corners, ideals, quotients, subrings
# ---------------------------------------------------------------------------


def _mapped_ring(
    parent: FiniteRing,
    carrier: np.ndarray,
    one_parent: int,
    *,
    label: str,
    kind: str,
    meta: dict,
    reduce_code: Optional[Callable[[int], int]] = None,
    reduce_vec: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> FiniteRing:
    """A ring living on a subset of parent codes, densely re-indexed.

    reduce_code maps a raw parent result back into the carrier (identity
    for subsets closed under the operations, coset representative for
    quotients).
    """
    carrier = np.asarray(sorted(int(c) for c in carrier), dtype=np.int64)
    size = carrier.size
    index = {int(c): i for i, c in enumerate(carrier)}
    if reduce_code is None:
        reduce_code = lambda x: x
    if reduce_vec is None:
        reduce_vec = lambda x: x

    p_add, p_mul, p_neg = parent.add, parent.mul, parent.neg

    def add(i, j):
        return index[reduce_code(p_add(int(carrier[i]), int(carrier[j])))]

    def mul(i, j):
        return index[reduce_code(p_mul(int(carrier[i]), int(carrier[j])))]

    def neg(i):
        return index[reduce_code(p_neg(int(carrier[i])))]

    def vec_builder() -> OpTables:
        tabs = parent.tables()
        lookup = np.full(parent.size, -1, dtype=_DT)
        lookup[carrier] = np.arange(size, dtype=_DT)
        grid = np.ix_(carrier, carrier)
        add_t = lookup[reduce_vec(tabs.add[grid])]
        mul_t = lookup[reduce_vec(tabs.mul[grid])]
        neg_t = lookup[reduce_vec(tabs.neg[carrier])]
        return OpTables(add_t, mul_t, neg_t)

    meta = dict(meta)
    meta["parent"] = parent
    meta["carrier"] = carrier

    return FiniteRing(
        size,
        add,
        mul,
        neg,
        one=index[one_parent],
        label=label,
        kind=kind,
        meta=meta,
        guard=parent.guard,
        render=lambda i: parent.render(int(carrier[i])),
        vec_builder=vec_builder,
    )


@dataclass
class IdealSet:
    """A two-sided ideal of a ring, stored as a membership bitset."""

    ring: FiniteRing
    mask: np.ndarray
    generators: list[int] = field(default_factory=list)

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, code: int) -> bool:
        return bool(self.mask[code])

    def verify_ideal(self) -> tuple[bool, Optional[str]]:
        """Closure under add, neg, and two-sided multiplication by the ring."""
        R = self.ring
        mem = self.members()
        if not self.mask[R.zero]:
            return False, "zero missing"
        tabs = R.try_tables()
        if tabs is not None:
            grid = np.ix_(mem, mem)
            if not self.mask[tabs.add[grid]].all():
                return False, "not closed under addition"
            if not self.mask[tabs.neg[mem]].all():
                return False, "not closed under negation"
            if not self.mask[tabs.mul[:, mem]].all():
                return False, "not a left ideal"
            if not self.mask[tabs.mul[mem, :]].all():
                return False, "not a right ideal"
            return True, None
        for a in mem.tolist():
            for b in mem.tolist():
                if not self.mask[R.add(a, b)]:
                    return False, "not closed under addition"
            if not self.mask[R.neg(a)]:
                return False, "not closed under negation"
            for r in range(R.size):
                if not self.mask[R.mul(r, a)] or not self.mask[R.mul(a, r)]:
                    return False, "not a two-sided ideal"
        return True, None

    def is_nil(self) -> bool:
        """Whether some power of the set multiplies to {0} (nilpotent ideal)."""
        R = self.ring
        mem = self.members()
        tabs = R.try_tables()
        current = mem
        for _ in range(R.size + 1):
            if current.size == 1 and int(current[0]) == R.zero:
                return True
            if tabs is not None:
                current = np.unique(tabs.mul[np.ix_(current, mem)])
            else:
                current = np.unique(
                    [R.mul(int(x), int(y)) for x in current for y in mem]
                )
        return False


def ideal_closure(R: FiniteRing, gens: Sequence[int | Elem]) -> IdealSet:
    """Smallest two-sided ideal containing the generators (worklist closure)."""
    codes = [g.code if isinstance(g, Elem) else int(g) for g in gens]
    mask = np.zeros(R.size, dtype=bool)
    mask[R.zero] = True
    mask[codes] = True
    tabs = R.try_tables()
    while True:
        mem = np.flatnonzero(mask)
        if tabs is not None:
            reach = [
                tabs.add[np.ix_(mem, mem)].ravel(),
                tabs.neg[mem],
                tabs.mul[:, mem].ravel(),
                tabs.mul[mem, :].ravel(),
            ]
            new = np.unique(np.concatenate(reach))
        else:
            acc = set(mem.tolist())
            for a in mem.tolist():
                acc.add(R.neg(a))
                for b in mem.tolist():
                    acc.add(R.add(a, b))
                for r in range(R.size):
                    acc.add(R.mul(r, a))
                    acc.add(R.mul(a, r))
            new = np.array(sorted(acc))
        grown = ~mask[new]
        if not grown.any():
            return IdealSet(R, mask, codes)
        mask[new] = True


def make_quotient(R: FiniteRing, I: IdealSet) -> FiniteRing:
    """R/I on canonical coset representatives (minimal code per coset)."""
    ok, why = I.verify_ideal()
    if not ok:
        raise NotAnIdeal(f"{why} in {R.label}")
    mem = I.members()
    tabs = R.try_tables()
    if tabs is not None:
        rep_map = tabs.add[:, mem].min(axis=1).astype(np.int64)
    else:
        rep_map = np.array(
            [min(R.add(a, int(i)) for i in mem) for a in range(R.size)], dtype=np.int64
        )
    reps = np.unique(rep_map)
    if I.generators:
        label = f"Quot({R.label}," + ",".join(f"#{g}" for g in I.generators) + ")"
    else:
        label = f"Quot({R.label},|I|={len(mem)})"
    return _mapped_ring(
        R,
        reps,
        int(rep_map[R.one]),
        label=label,
        kind="quotient",
        meta={"ideal": I},
        reduce_code=lambda x: int(rep_map[x]),
        reduce_vec=lambda arr: rep_map[arr],
    )


def make_corner(R: FiniteRing, e: int | Elem) -> FiniteRing:
    """The corner ring eRe for an idempotent e, with identity e."""
    code = e.code if isinstance(e, Elem) else int(e)
    if R.mul(code, code) != code:
        raise NotIdempotent(f"code {code} is not idempotent in {R.label}")
    if code == R.zero:
        raise NotIdempotent("the corner at zero is not a unital ring")
    tabs = R.try_tables()
    if tabs is not None:
        carrier = np.unique(tabs.mul[tabs.mul[code, :], code])
    else:
        carrier = np.unique([R.mul(R.mul(code, r), code) for r in range(R.size)])
    return _mapped_ring(
        R,
        carrier,
        code,
        label=f"Corner({R.label},#{code})",
        kind="corner",
        meta={"idempotent": code},
    )


def subring_closure(R: FiniteRing, gens: Sequence[int | Elem]) -> FiniteRing:
    """Smallest unital subring containing the generators, densely re-indexed."""
    codes = [g.code if isinstance(g, Elem) else int(g) for g in gens]
    mask = np.zeros(R.size, dtype=bool)
    mask[[R.zero, R.one]] = True
    mask[codes] = True
    tabs = R.try_tables()
    while True:
        mem = np.flatnonzero(mask)
        if tabs is not None:
            grid = np.ix_(mem, mem)
            new = np.unique(
                np.concatenate(
                    [tabs.add[grid].ravel(), tabs.mul[grid].ravel(), tabs.neg[mem]]
                )
            )
        else:
            acc = set(mem.tolist())
            for a in mem.tolist():
                acc.add(R.neg(a))
                for b in mem.tolist():
                    acc.add(R.add(a, b))
                    acc.add(R.mul(a, b))
            new = np.array(sorted(acc))
        grown = ~mask[new]
        if not grown.any():
            break
        mask[new] = True
    carrier = np.flatnonzero(mask)
    return _mapped_ring(
        R,
        carrier,
        R.one,
        label=f"Sub({R.label},{len(codes)} gens)",
        kind="subring",
        meta={"generators": codes},
    )


# ---------------------------------------------------------------------------
# the restricted oracle for the integers
# ---------------------------------------------------------------------------


class IntegersOracle:
    """A non-enumerable handle for the ring of integers.

    Exposes exactly the data the unit/nilpotent predicates need: units
    {1, -1}, nilpotents {0}, characteristic 0.  Any operation that would
    enumerate elements must reject this handle.
    """

    label = "Z"
    kind = "integers"
    size = None
    zero = 0
    one = 1
    units = (1, -1)
    nilpotents = (0,)
    characteristic = 0

    def pow(self, a: int, k: int) -> int:
        return a ** k

    def reject(self, operation: str):
        raise UnsupportedPredicate(
            f"{operation} requires enumerating ring elements; the integers oracle cannot"
        )

    def __repr__(self) -> str:
        return "IntegersOracle()"


_INTEGERS = IntegersOracle()


def integers_oracle() -> IntegersOracle:
    return _INTEGERS
