"""Zhegalkin polynomials (algebraic normal form over GF(2)).

Two polynomial flavours live here:

* :class:`BitPolynomial` is the ANF of one output bit of a truth table, in
  the concrete input bits ``(var, j)``.  It may carry a free term.
* :class:`CanonicalPoly` is the index-free form: each factor is a *shifted*
  variable ``(var, l)`` standing for bit ``i - l`` of the argument, for
  every output bit ``i`` at once.  Free terms and monomials of weight
  above one are structurally excluded.

Weights are kept as integers scaled by ``q/2``: a factor with shift ``l``
contributes ``2**(kappa-1-l)``, so a monomial has weight <= 1 exactly when
its scaled weight is <= q/2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import FreeTermPresent, ModulusError, TableFormatError, WeightExceeded
from .word import Modulus, Word

_SHORT_NAMES = "xyz"


def var_names(arity: int) -> list[str]:
    """Default variable names: ``x, y, z`` up to three arguments, else ``a, b, c, ...``."""
    if arity <= len(_SHORT_NAMES):
        return list(_SHORT_NAMES[:arity])
    if arity > 26:
        raise ValueError(f"no default names for arity {arity}")
    return [chr(ord("a") + v) for v in range(arity)]


def argument_grids(modulus: Modulus, arity: int) -> list[np.ndarray]:
    """Per-argument value arrays over all ``q**arity`` inputs in row-major order."""
    size = modulus.check_table_size(arity)
    idx = np.arange(size, dtype=np.int64)
    return [(idx >> (modulus.kappa * (arity - 1 - v))) & modulus.mask for v in range(arity)]


@dataclass(frozen=True, eq=False)
class TruthTable:
    """A total function ``Z_q**arity -> Z_q`` stored densely.

    ``values[n]`` is the value at the tuple whose base-q digits spell ``n``,
    first argument most significant.
    """

    modulus: Modulus
    arity: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        size = self.modulus.check_table_size(self.arity)
        vals = np.asarray(self.values, dtype=np.int64)
        if vals.shape != (size,):
            raise TableFormatError(f"expected {size} values for q={self.modulus.q}, k={self.arity}, got {vals.size}")
        bad = np.flatnonzero((vals < 0) | (vals >= self.modulus.q))
        if bad.size:
            n = int(bad[0])
            raise TableFormatError(f"value {int(vals[n])} out of range [0, {self.modulus.q})", f"index {n}")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, modulus: Modulus, arity: int, fn) -> TruthTable:
        """Tabulate ``fn`` over plain integers, one call per input tuple."""
        modulus.check_table_size(arity)
        rng = range(modulus.q)
        vals = [fn(*args) % modulus.q for args in product(rng, repeat=arity)]
        return cls(modulus, arity, np.array(vals, dtype=np.int64))

    def key(self) -> bytes:
        return self.values.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.modulus == other.modulus and self.arity == other.arity and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.modulus, self.arity, self.key()))

    def __len__(self) -> int:
        return int(self.values.size)

    def __repr__(self) -> str:
        shown = ",".join(str(v) for v in self.values[:16])
        tail = ",..." if self.values.size > 16 else ""
        return f"TruthTable(q={self.modulus.q}, k={self.arity}, [{shown}{tail}])"

    def __call__(self, *args: int | Word) -> int:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        n = 0
        for a in args:
            n = n * self.modulus.q + int(a)
        return int(self.values[n])

    def assignment(self, n: int) -> tuple[int, ...]:
        """The argument tuple at row-major position ``n``."""
        q = self.modulus.q
        out = []
        for _ in range(self.arity):
            n, r = divmod(n, q)
            out.append(r)
        return tuple(reversed(out))


# -- bit polynomials ---------------------------------------------------------

Var = tuple[int, int]  # (argument index, bit or shift)


def _reduce(terms: Iterable[frozenset]) -> frozenset:
    counts = Counter(terms)
    return frozenset(m for m, c in counts.items() if c % 2)


@dataclass(frozen=True)
class BitPolynomial:
    """ANF in concrete bits; each monomial is a frozenset of ``(var, bit)``.

    The empty monomial is the free term.  Construction always cancels
    repeated monomials in pairs.
    """

    modulus: Modulus
    arity: int
    monomials: frozenset

    @classmethod
    def from_terms(cls, modulus: Modulus, arity: int, terms: Iterable[Iterable[Var]]) -> BitPolynomial:
        return cls(modulus, arity, _reduce(frozenset(t) for t in terms))

    @property
    def has_free_term(self) -> bool:
        return frozenset() in self.monomials

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        names = var_names(self.arity)
        parts = []
        for m in sorted(self.monomials, key=lambda m: (-len(m), sorted(m, key=lambda f: (f[0], -f[1])))):
            parts.append("*".join(f"{names[v]}{j}" for v, j in sorted(m, key=lambda f: (f[0], -f[1]))) or "1")
        return " ^ ".join(parts)


def mobius(table: np.ndarray) -> np.ndarray:
    """GF(2) Moebius (butterfly) transform of a length-``2**n`` 0/1 array.

    Maps a truth table to its ANF coefficients and back; it is an involution.
    """
    a = np.array(table, dtype=np.uint8).copy()
    n = a.size.bit_length() - 1
    if a.size != 1 << n:
        raise ValueError("length must be a power of two")
    for p in range(n):
        view = a.reshape(-1, 2, 1 << p)
        view[:, 1, :] ^= view[:, 0, :]
    return a


def bit_polynomial(table: TruthTable, i: int) -> BitPolynomial:
    """ANF of output bit ``i`` in the ``k * kappa`` input bits."""
    m = table.modulus
    if not 0 <= i < m.kappa:
        raise ValueError(f"bit index {i} outside [0, {m.kappa})")
    coeffs = mobius((table.values >> i) & 1)
    kappa, k = m.kappa, table.arity
    monomials = []
    for mask in np.flatnonzero(coeffs):
        mask = int(mask)
        factors = []
        while mask:
            low = mask & -mask
            p = low.bit_length() - 1
            # row-major index: argument v owns bits [(k-1-v)*kappa, (k-v)*kappa)
            factors.append((k - 1 - p // kappa, p % kappa))
            mask ^= low
        monomials.append(frozenset(factors))
    return BitPolynomial(m, k, frozenset(monomials))


def shift_substitute(p: BitPolynomial) -> BitPolynomial:
    """Substitute bit j -> bit j-1 in every variable; bit 0 becomes the constant 0."""
    terms = []
    for mono in p.monomials:
        if any(j == 0 for _, j in mono):
            continue
        terms.append(frozenset((v, j - 1) for v, j in mono))
    return BitPolynomial(p.modulus, p.arity, _reduce(terms))


# -- canonical (index-free) polynomials ---------------------------------------


@dataclass(frozen=True)
class DyadicWeight:
    """Weight ``scaled * 2/q`` of a monomial."""

    scaled: int
    modulus: Modulus

    @property
    def value(self) -> Fraction:
        return Fraction(2 * self.scaled, self.modulus.q)

    def at_most_one(self) -> bool:
        return self.scaled <= self.modulus.q // 2

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Monomial:
    """Product of shifted variables; ``(v, l)`` reads bit ``i - l`` of argument ``v``."""

    factors: frozenset

    def __post_init__(self) -> None:
        fs = frozenset(self.factors)
        if not fs:
            raise ValueError("a monomial needs at least one factor")
        for v, l in fs:
            if v < 0 or l < 0:
                raise ValueError(f"bad factor {(v, l)}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def of(cls, *factors: Var) -> Monomial:
        return cls(frozenset(factors))

    def sorted_factors(self) -> tuple[Var, ...]:
        return tuple(sorted(self.factors))

    def render(self, names: Sequence[str]) -> str:
        return "*".join(f"{names[v]}[{-l}]" if l else f"{names[v]}[0]" for v, l in self.sorted_factors())


def weight(m: Monomial, modulus: Modulus) -> DyadicWeight:
    top = modulus.kappa - 1
    scaled = 0
    for _, l in m.factors:
        if l > top:
            raise ModulusError(f"shift {l} out of range for kappa={modulus.kappa}")
        scaled += 1 << (top - l)
    return DyadicWeight(scaled, modulus)


def monomial_order(m: Monomial, modulus: Modulus) -> tuple:
    """Sort key: heavier monomials first, then lexicographic factor lists."""
    return (-weight(m, modulus).scaled, m.sorted_factors())


@dataclass(frozen=True)
class CanonicalPoly:
    modulus: Modulus
    arity: int
    monomials: tuple[Monomial, ...] = ()

    def __post_init__(self) -> None:
        monos = set(self.monomials)
        if len(monos) != len(self.monomials):
            raise ValueError("duplicate monomials; reduce over GF(2) first")
        for m in monos:
            if any(v >= self.arity for v, _ in m.factors):
                raise ValueError(f"monomial {m} uses a variable outside arity {self.arity}")
            if not weight(m, self.modulus).at_most_one():
                raise WeightExceeded(f"monomial {m.render(var_names(self.arity))} has weight above 1")
        ordered = tuple(sorted(monos, key=lambda m: monomial_order(m, self.modulus)))
        object.__setattr__(self, "monomials", ordered)

    def render(self, names: Sequence[str] | None = None) -> str:
        names = var_names(self.arity) if names is None else names
        if not self.monomials:
            return "0"
        return " ^ ".join(m.render(names) for m in self.monomials)

    def __str__(self) -> str:
        return self.render()


def to_canonical(p: BitPolynomial, i: int) -> CanonicalPoly:
    """Read a bit-``i`` polynomial in shifted variables (bit j becomes shift ``i - j``)."""
    if p.has_free_term:
        raise FreeTermPresent("polynomial has a nonzero free term")
    monos = []
    for mono in p.monomials:
        if any(j > i for _, j in mono):
            raise ValueError(f"polynomial for bit {i} mentions a higher bit")
        monos.append(Monomial(frozenset((v, i - j) for v, j in mono)))
    for m in monos:
        w = weight(m, p.modulus)
        if not w.at_most_one():
            raise WeightExceeded(f"monomial {m.render(var_names(p.arity))} has weight {w} > 1")
    return CanonicalPoly(p.modulus, p.arity, tuple(monos))


def from_canonical(g: CanonicalPoly, i: int) -> BitPolynomial:
    """Concrete bit-``i`` polynomial of ``g``; factors below bit 0 kill their monomial."""
    terms = []
    for m in g.monomials:
        if all(l <= i for _, l in m.factors):
            terms.append(frozenset((v, i - l) for v, l in m.factors))
    return BitPolynomial.from_terms(g.modulus, g.arity, terms)


def eval_canonical(g: CanonicalPoly, inputs: Sequence[Word | int], i: int) -> int:
    """Bit ``i`` of the function described by ``g`` at ``inputs``."""
    if len(inputs) != g.arity:
        raise ValueError(f"expected {g.arity} inputs, got {len(inputs)}")
    vals = [int(x) for x in inputs]
    out = 0
    for m in g.monomials:
        term = 1
        for v, l in m.factors:
            j = i - l
            if j < 0 or j >= g.modulus.kappa or not (vals[v] >> j) & 1:
                term = 0
                break
        out ^= term
    return out


def canonical_table(g: CanonicalPoly) -> TruthTable:
    """Vectorised tabulation of ``g``.

    A monomial's value is the AND of its factors' arguments shifted left by
    their shift (bit i of ``x << l`` is bit ``i - l`` of x), and the
    polynomial XORs its monomials.
    """
    m = g.modulus
    grids = argument_grids(m, g.arity)
    acc = np.zeros_like(grids[0])
    for mono in g.monomials:
        term = np.full_like(acc, m.mask)
        for v, l in mono.factors:
            term &= (grids[v] << l) & m.mask
        acc ^= term
    return TruthTable(m, g.arity, acc)
