"""Finite unital rings presented on dense integer element codes.

A ring of size N lives on the codes 0..N-1 with total add/mul/neg
operations and distinguished zero and one.  Every construction documents a
canonical bijection between codes and its structured elements (digit
vectors, matrices, coset representatives, ...), which keeps membership
tests and witness ordering deterministic.

Rings are immutable after construction and safe to share across threads.
When the squared size fits the memo budget, the operations are backed by
numpy tables that the enumeration kernels index in bulk; the tables are
materialized at most once and never change semantics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Optional

import numpy as np

from .errors import AxiomViolation, CrossRingError, SizeExceeded

DEFAULT_MAX_RING_SIZE = 65536
DEFAULT_MEMO_BUDGET_BYTES = 1 << 28
AXIOM_EXHAUSTIVE_LIMIT = 4096
AXIOM_SAMPLE_TRIPLES = 1_000_000

_TABLE_DTYPE = np.int32


@dataclass(frozen=True)
class ResourceGuard:
    """Admission limits checked before any construction allocates."""

    max_ring_size: int = DEFAULT_MAX_RING_SIZE
    mul_memo_budget_bytes: int = DEFAULT_MEMO_BUDGET_BYTES
    thread_count: int = 1

    def check_ring_size(self, projected: int, what: str = "ring") -> None:
        if projected > self.max_ring_size:
            raise SizeExceeded(projected, self.max_ring_size, what)

    def allows_tables(self, size: int) -> bool:
        # one add table and one mul table, int32 entries
        return 2 * size * size * np.dtype(_TABLE_DTYPE).itemsize <= self.mul_memo_budget_bytes


DEFAULT_GUARD = ResourceGuard()


class OpTables(NamedTuple):
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray


@dataclass
class Verdict:
    """Outcome of a predicate or verification pass.

    For a failed universally-quantified check the witness is the first
    violating tuple in ascending code order; for a successful existential
    search it is the found decomposition, re-checkable through ring
    arithmetic.
    """

    holds: bool
    witness: Optional[list[tuple[str, int]]] = None
    exponents: Optional[dict[str, int]] = None
    mode: str = "exhaustive"
    elapsed: float = 0.0
    note: Optional[str] = None

    def witness_codes(self) -> list[int]:
        return [code for _, code in (self.witness or [])]

    def to_json(self) -> dict:
        out = {"holds": self.holds, "mode": self.mode}
        if self.witness is not None:
            out["witness"] = [[role, int(code)] for role, code in self.witness]
        if self.exponents is not None:
            out["exponents"] = {k: int(v) for k, v in self.exponents.items()}
        if self.note is not None:
            out["note"] = self.note
        return out


_ring_counter = [0]


class FiniteRing:
    """A finite unital ring on dense codes with optional numpy tables."""

    __slots__ = (
        "size",
        "zero",
        "one",
        "label",
        "kind",
        "meta",
        "guard",
        "ring_id",
        "_add",
        "_mul",
        "_neg",
        "_render",
        "_vec_builder",
        "_tables",
        "_cache",
    )

    def __init__(
        self,
        size: int,
        add: Callable[[int, int], int],
        mul: Callable[[int, int], int],
        neg: Callable[[int], int],
        *,
        one: int,
        zero: int = 0,
        label: str = "R",
        kind: str = "custom",
        meta: Optional[dict] = None,
        guard: Optional[ResourceGuard] = None,
        render: Optional[Callable[[int], str]] = None,
        vec_builder: Optional[Callable[[], OpTables]] = None,
    ):
        guard = guard or DEFAULT_GUARD
        guard.check_ring_size(size)
        if size < 2:
            raise AxiomViolation("a unital ring needs at least the two elements 0 and 1")
        if zero == one:
            raise AxiomViolation("zero and one must be distinct codes")
        self.size = size
        self.zero = zero
        self.one = one
        self.label = label
        self.kind = kind
        self.meta = meta or {}
        self.guard = guard
        _ring_counter[0] += 1
        self.ring_id = _ring_counter[0]
        self._add = add
        self._mul = mul
        self._neg = neg
        self._render = render
        self._vec_builder = vec_builder
        self._tables: Optional[OpTables] = None
        self._cache = None  # StructureCache, attached lazily by invariants

    # -- scalar arithmetic -------------------------------------------------

    def add(self, i: int, j: int) -> int:
        t = self._tables
        if t is not None:
            return int(t.add[i, j])
        return self._add(i, j)

    def mul(self, i: int, j: int) -> int:
        t = self._tables
        if t is not None:
            return int(t.mul[i, j])
        return self._mul(i, j)

    def neg(self, i: int) -> int:
        t = self._tables
        if t is not None:
            return int(t.neg[i])
        return self._neg(i)

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def pow_code(self, a: int, k: int) -> int:
        """a**k by square-and-multiply; k = 0 gives one."""
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- elements ----------------------------------------------------------

    def elem(self, code: int) -> "Elem":
        return Elem(self, code)

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def render(self, code: int) -> str:
        if self._render is not None:
            return self._render(code)
        return str(code)

    # -- tables ------------------------------------------------------------

    @property
    def table_capable(self) -> bool:
        return self.guard.allows_tables(self.size)

    def try_tables(self) -> Optional[OpTables]:
        """The operation tables, or None when they exceed the memo budget."""
        if self._tables is not None:
            return self._tables
        if not self.table_capable:
            return None
        if self._vec_builder is not None:
            tables = self._vec_builder()
        else:
            tables = self._loop_tables()
        # single idempotent publication; recomputation is deterministic
        self._tables = OpTables(
            np.ascontiguousarray(tables.add, dtype=_TABLE_DTYPE),
            np.ascontiguousarray(tables.mul, dtype=_TABLE_DTYPE),
            np.ascontiguousarray(tables.neg, dtype=_TABLE_DTYPE),
        )
        return self._tables

    def tables(self) -> OpTables:
        t = self.try_tables()
        if t is None:
            raise SizeExceeded(self.size * self.size, self.guard.mul_memo_budget_bytes, "memo table")
        return t

    def _loop_tables(self) -> OpTables:
        n = self.size
        add = self._add
        mul = self._mul
        add_t = np.array([[add(i, j) for j in range(n)] for i in range(n)], dtype=_TABLE_DTYPE)
        mul_t = np.array([[mul(i, j) for j in range(n)] for i in range(n)], dtype=_TABLE_DTYPE)
        neg_t = np.array([self._neg(i) for i in range(n)], dtype=_TABLE_DTYPE)
        return OpTables(add_t, mul_t, neg_t)

    def _scalar_ops(self):
        return self._add, self._mul, self._neg

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, size={self.size})"


@dataclass(frozen=True)
class Elem:
    """An element code tied to its owning ring; cross-ring arithmetic is rejected."""

    ring: FiniteRing
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ring.size:
            raise ValueError(f"code {self.code} outside ring of size {self.ring.size}")

    def _same_ring(self, other: "Elem") -> None:
        if self.ring is not other.ring:
            raise CrossRingError(
                f"elements of {self.ring.label} and {other.ring.label} cannot be combined"
            )

    def __add__(self, other: "Elem") -> "Elem":
        self._same_ring(other)
        return Elem(self.ring, self.ring.add(self.code, other.code))

    def __sub__(self, other: "Elem") -> "Elem":
        self._same_ring(other)
        return Elem(self.ring, self.ring.sub(self.code, other.code))

    def __mul__(self, other: "Elem") -> "Elem":
        self._same_ring(other)
        return Elem(self.ring, self.ring.mul(self.code, other.code))

    def __neg__(self) -> "Elem":
        return Elem(self.ring, self.ring.neg(self.code))

    def __pow__(self, k: int) -> "Elem":
        return Elem(self.ring, self.ring.pow_code(self.code, k))

    def __repr__(self) -> str:
        return f"<{self.ring.label}#{self.code}>"


def power(a: Elem, k: int) -> Elem:
    """a**k in its owning ring; power(a, 0) is one."""
    return Elem(a.ring, a.ring.pow_code(a.code, k))


def characteristic(R: FiniteRing) -> int:
    """Additive order of one; divides every element's additive order."""
    x = R.one
    k = 1
    while x != R.zero:
        x = R.add(x, R.one)
        k += 1
        if k > R.size:
            raise AxiomViolation("one has no finite additive order; broken addition table")
    return k


def _first_bad(mask: np.ndarray) -> Optional[tuple]:
    """Index of the first True entry in C-order, or None."""
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    return np.unravel_index(int(flat[0]), mask.shape)


def verify_ring_axioms(R: FiniteRing, seed: int = 0, sample_triples: int = AXIOM_SAMPLE_TRIPLES) -> Verdict:
    """Check the ring axioms, exhaustively up to the size threshold.

    Above AXIOM_EXHAUSTIVE_LIMIT (or when no tables fit the budget) the
    ternary laws are checked on a seeded deterministic sample of triples and
    the verdict records mode="sampled".  The witness is the first violating
    tuple in scan order.
    """
    start = time.perf_counter()
    n = R.size

    def done(holds, witness=None, note=None, mode="exhaustive"):
        return Verdict(
            holds=holds,
            witness=witness,
            mode=mode,
            elapsed=time.perf_counter() - start,
            note=note,
        )

    if R.zero == R.one:
        return done(False, [("zero", R.zero), ("one", R.one)], "zero equals one")

    tables = R.try_tables() if n <= AXIOM_EXHAUSTIVE_LIMIT else None
    if tables is not None:
        add_t, mul_t, neg_t = tables
        codes = np.arange(n, dtype=_TABLE_DTYPE)

        rng_ok = (add_t >= 0).all() and (add_t < n).all() and (mul_t >= 0).all() and (mul_t < n).all()
        if not rng_ok:
            return done(False, None, "operation result out of code range")

        bad = _first_bad(add_t[R.zero] != codes)
        if bad:
            return done(False, [("x", int(bad[0]))], "zero is not an additive identity")
        bad = _first_bad(add_t[codes, neg_t] != R.zero)
        if bad:
            return done(False, [("x", int(bad[0]))], "neg is not an additive inverse")
        bad = _first_bad(add_t != add_t.T)
        if bad:
            return done(False, [("a", int(bad[0])), ("b", int(bad[1]))], "addition is not commutative")

        bad = _first_bad(mul_t[R.one] != codes)
        if bad:
            return done(False, [("a", R.one), ("b", int(bad[0]))], "one is not a left identity")
        bad = _first_bad(mul_t[:, R.one] != codes)
        if bad:
            return done(False, [("a", int(bad[0])), ("b", R.one)], "one is not a right identity")

        # ternary laws, chunked over the first operand
        chunk = max(1, (1 << 24) // max(1, n * n))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            a = np.arange(lo, hi)
            # (a+b)+c vs a+(b+c)
            left = add_t[add_t[a][:, :, None], codes[None, None, :]]
            right = add_t[a[:, None, None], add_t[None, :, :]]
            bad = _first_bad(left != right)
            if bad:
                return done(
                    False,
                    [("a", lo + int(bad[0])), ("b", int(bad[1])), ("c", int(bad[2]))],
                    "addition is not associative",
                )
            # (a*b)*c vs a*(b*c)
            left = mul_t[mul_t[a][:, :, None], codes[None, None, :]]
            right = mul_t[a[:, None, None], mul_t[None, :, :]]
            bad = _first_bad(left != right)
            if bad:
                return done(
                    False,
                    [("a", lo + int(bad[0])), ("b", int(bad[1])), ("c", int(bad[2]))],
                    "multiplication is not associative",
                )
            # a*(b+c) vs a*b + a*c
            left = mul_t[a[:, None, None], add_t[None, :, :]]
            rows = mul_t[a]
            right = add_t[rows[:, :, None], rows[:, None, :]]
            bad = _first_bad(left != right)
            if bad:
                return done(
                    False,
                    [("a", lo + int(bad[0])), ("b", int(bad[1])), ("c", int(bad[2]))],
                    "left distributivity fails",
                )
            # (b+c)*a vs b*a + c*a
            cols = mul_t[:, a]
            left = mul_t[add_t[:, :, None], a[None, None, :]]
            right = add_t[cols[:, None, :], cols[None, :, :]]
            bad = _first_bad(left != right)
            if bad:
                return done(
                    False,
                    [("a", int(bad[2]) + lo), ("b", int(bad[0])), ("c", int(bad[1]))],
                    "right distributivity fails",
                )
        return done(True)

    # sampled mode: unary/identity laws in full, ternary laws on a seeded sample
    add, mul, neg = R._scalar_ops()
    for x in range(n):
        if add(R.zero, x) != x:
            return done(False, [("x", x)], "zero is not an additive identity", mode="sampled")
        if add(x, neg(x)) != R.zero:
            return done(False, [("x", x)], "neg is not an additive inverse", mode="sampled")
        if mul(R.one, x) != x:
            return done(False, [("a", R.one), ("b", x)], "one is not a left identity", mode="sampled")
        if mul(x, R.one) != x:
            return done(False, [("a", x), ("b", R.one)], "one is not a right identity", mode="sampled")
    rng = np.random.default_rng(seed)
    triples = rng.integers(0, n, size=(sample_triples, 3))
    for a, b, c in triples.tolist():
        if add(a, b) != add(b, a):
            return done(False, [("a", a), ("b", b)], "addition is not commutative", mode="sampled")
        if add(add(a, b), c) != add(a, add(b, c)):
            return done(False, [("a", a), ("b", b), ("c", c)], "addition is not associative", mode="sampled")
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            return done(False, [("a", a), ("b", b), ("c", c)], "multiplication is not associative", mode="sampled")
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return done(False, [("a", a), ("b", b), ("c", c)], "left distributivity fails", mode="sampled")
        if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
            return done(False, [("a", a), ("b", b), ("c", c)], "right distributivity fails", mode="sampled")
    return done(True, mode="sampled")
