"""Which functions Z_q**k -> Z_q are built from ADD and XOR alone.

:func:`decide_algebraic` runs the kappa-step bit-by-bit test.  It takes the
top output bit's ANF, checks it for a free term and for weight above one,
then shifts it down one bit at a time and compares against every lower
output bit.  :func:`closure_oracle` is the independent brute-force check:
it closes the projections under pointwise ``+`` and ``^``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

from .anf import (
    BitPolynomial,
    CanonicalPoly,
    Monomial,
    TruthTable,
    argument_grids,
    bit_polynomial,
    canonical_table,
    monomial_order,
    shift_substitute,
    to_canonical,
)
from .errors import FreeTermPresent, GuardExceeded, ModulusError, TableFormatError, WeightExceeded
from .word import Modulus

#: Default bound on enumerated / closed free-algebra sizes.
ENUMERATION_CAP = 1 << 20

FREE_TERM = "FreeTerm"
WEIGHT_EXCEEDED = "WeightExceeded"
SHIFT_MISMATCH = "ShiftMismatch"


@dataclass(frozen=True)
class Failure:
    kind: str
    bit: int | None = None

    def __str__(self) -> str:
        if self.kind == SHIFT_MISMATCH:
            return f"{self.kind}(bit {self.bit})"
        return self.kind


@dataclass(frozen=True)
class Verdict:
    algebraic: bool
    witness: CanonicalPoly | None = None
    failure: Failure | None = None

    def __post_init__(self) -> None:
        if (self.witness is None) == (self.failure is None):
            raise ValueError("exactly one of witness / failure must be set")

    def __bool__(self) -> bool:
        return self.algebraic


def decide_algebraic(table: TruthTable) -> Verdict:
    kappa = table.modulus.kappa
    top = bit_polynomial(table, kappa - 1)
    try:
        witness = to_canonical(top, kappa - 1)
    except FreeTermPresent:
        return Verdict(False, failure=Failure(FREE_TERM, kappa - 1))
    except WeightExceeded:
        return Verdict(False, failure=Failure(WEIGHT_EXCEEDED, kappa - 1))

    g: BitPolynomial = top
    for i in range(kappa - 2, -1, -1):
        g = shift_substitute(g)
        if g.monomials != bit_polynomial(table, i).monomials:
            return Verdict(False, failure=Failure(SHIFT_MISMATCH, i))
    return Verdict(True, witness=witness)


def count_free_algebra(k: int, modulus: Modulus) -> int:
    """``|F_{k,q}| = 2**(C(q/2 + k, k) - 1)``, exact."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 1 << monomial_count(k, modulus)


def monomial_count(k: int, modulus: Modulus) -> int:
    """Number of monomials of weight <= 1: nonzero k-tuples with sum <= q/2."""
    return comb(modulus.q // 2 + k, k) - 1


def _shifts_of(n: int, kappa: int) -> list[int]:
    # scaled weight n of one variable, read in binary: bit (kappa-1-l) set <=> shift l present
    return [l for l in range(kappa) if (n >> (kappa - 1 - l)) & 1]


def enumerate_monomials(k: int, modulus: Modulus) -> list[Monomial]:
    """Every monomial of weight <= 1 over ``k`` arguments, in canonical order."""
    half = modulus.q // 2
    out = []

    def tuples(prefix: list[int], remaining: int):
        if len(prefix) == k:
            yield prefix
            return
        for n in range(remaining + 1):
            yield from tuples(prefix + [n], remaining - n)

    for ns in tuples([], half):
        if not any(ns):
            continue
        factors = [(v, l) for v, n in enumerate(ns) for l in _shifts_of(n, modulus.kappa)]
        out.append(Monomial(frozenset(factors)))
    out.sort(key=lambda m: monomial_order(m, modulus))
    return out


def enumerate_free_algebra(
    k: int, modulus: Modulus, cap: int = ENUMERATION_CAP
) -> Iterator[tuple[CanonicalPoly, TruthTable]]:
    """Stream every element of ``F_{k,q}`` as (normal form, table).

    Subset ``b`` holds monomial ``j`` iff bit ``j`` of ``b`` is set, so the
    stream order is a binary counter over the canonical monomial order.
    """
    monos = enumerate_monomials(k, modulus)
    total = 1 << len(monos)
    if total > cap:
        raise GuardExceeded(f"|F_{{{k},{modulus.q}}}| = 2**{len(monos)} exceeds the cap {cap}")
    modulus.check_table_size(k)
    tables = [canonical_table(CanonicalPoly(modulus, k, (m,))).values for m in monos]
    for b in range(total):
        chosen = tuple(m for j, m in enumerate(monos) if (b >> j) & 1)
        acc = np.zeros_like(tables[0])
        for j in range(len(monos)):
            if (b >> j) & 1:
                acc ^= tables[j]
        yield CanonicalPoly(modulus, k, chosen), TruthTable(modulus, k, acc)


def closure_oracle(k: int, modulus: Modulus, cap: int = ENUMERATION_CAP) -> set[TruthTable]:
    """Close the projection tables under pointwise ``+`` and ``^`` (BFS fixpoint)."""
    mask = modulus.mask
    seen: dict[bytes, np.ndarray] = {}
    frontier = []
    for g in argument_grids(modulus, k):
        key = g.tobytes()
        if key not in seen:
            seen[key] = g
            frontier.append(g)
    while frontier:
        found: dict[bytes, np.ndarray] = {}
        known = list(seen.values())
        for a in frontier:
            for b in known:
                for c in ((a + b) & mask, a ^ b):
                    key = c.tobytes()
                    if key not in seen and key not in found:
                        found[key] = c
        frontier = [found[key] for key in sorted(found)]
        for key, c in zip(sorted(found), frontier):
            seen[key] = c
        if len(seen) > cap:
            raise GuardExceeded(f"closure exceeded the cap {cap}")
    return {TruthTable(modulus, k, v) for v in seen.values()}


# -- JSON truth-table documents ---------------------------------------------


def table_from_json(text: str) -> TruthTable:
    """Parse ``{"q": Q, "k": K, "values": [...]}``; errors name the bad position."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise TableFormatError("document must be a JSON object")
    for name in ("q", "k", "values"):
        if name not in doc:
            raise TableFormatError(f"missing field {name!r}")
    q, k, values = doc["q"], doc["k"], doc["values"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise TableFormatError("q must be an integer", "field 'q'")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise TableFormatError("k must be a positive integer", "field 'k'")
    if not isinstance(values, list):
        raise TableFormatError("values must be a list", "field 'values'")
    try:
        modulus = Modulus.from_q(q)
    except ModulusError as exc:
        raise TableFormatError(str(exc), "field 'q'") from exc
    size = modulus.check_table_size(k)
    if len(values) != size:
        raise TableFormatError(f"expected {size} values, got {len(values)}", "field 'values'")
    for n, v in enumerate(values):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < q:
            raise TableFormatError(f"value {v!r} is not an integer in [0, {q})", f"values[{n}]")
    return TruthTable(modulus, k, np.array(values, dtype=np.int64))


def table_to_json(table: TruthTable) -> str:
    return json.dumps({"q": table.modulus.q, "k": table.arity, "values": [int(v) for v in table.values]})
