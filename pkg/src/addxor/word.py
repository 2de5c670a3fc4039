"""Machine words modulo q = 2**kappa.

Each public operation takes :class:`Word` values and checks that both
operands share a modulus.  The underscore-free ``*_raw`` helpers apply the
same arithmetic to plain integers or numpy arrays and are what the
table-based modules use in their inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardExceeded, ModulusError

#: Largest supported word width.  Raise it at your own risk: dense tables
#: are still bounded separately by :data:`TABLE_GUARD`.
KAPPA_CAP = 16

#: Hard bound on the number of entries in any dense table (q**k).
TABLE_GUARD = 1 << 24


@dataclass(frozen=True, order=True)
class Modulus:
    kappa: int

    def __post_init__(self) -> None:
        if not isinstance(self.kappa, int) or not 1 <= self.kappa <= KAPPA_CAP:
            raise ModulusError(f"kappa must be an integer in [1, {KAPPA_CAP}], got {self.kappa!r}")

    @classmethod
    def from_q(cls, q: int) -> Modulus:
        if not isinstance(q, int) or q < 2 or q & (q - 1):
            raise ModulusError(f"q must be a power of two >= 2, got {q!r}")
        return cls(q.bit_length() - 1)

    @property
    def q(self) -> int:
        return 1 << self.kappa

    @property
    def mask(self) -> int:
        return (1 << self.kappa) - 1

    def word(self, value: int) -> Word:
        return Word(value, self)

    def check_table_size(self, arity: int) -> int:
        """Return q**arity, raising :class:`GuardExceeded` past the guard."""
        if arity < 1:
            raise ValueError(f"arity must be >= 1, got {arity}")
        size = self.q**arity
        if size > TABLE_GUARD:
            raise GuardExceeded(f"q**k = {self.q}**{arity} = {size} exceeds the table guard {TABLE_GUARD}")
        return size

    def __str__(self) -> str:
        return f"q={self.q}"


@dataclass(frozen=True)
class Word:
    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.q:
            raise ModulusError(f"{self.value} is not in [0, {self.modulus.q})")

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Word({self.value}, q={self.modulus.q})"


def add_raw(a, b, mask: int):
    return (a + b) & mask


def xor_raw(a, b, mask: int):
    return a ^ b


def conj_raw(a, b, mask: int):
    return a & b


def mul2k_raw(a, k: int, mask: int):
    return (a << k) & mask


def circ_raw(a, b, mask: int):
    return ((a & b) << 1) & mask


def commutator_raw(a, b, mask: int):
    return a ^ b ^ ((a + b) & mask)


def _common(x: Word, y: Word) -> Modulus:
    if x.modulus != y.modulus:
        raise ModulusError(f"modulus mismatch: {x.modulus} vs {y.modulus}")
    return x.modulus


def add(x: Word, y: Word) -> Word:
    m = _common(x, y)
    return Word(add_raw(x.value, y.value, m.mask), m)


def xor(x: Word, y: Word) -> Word:
    m = _common(x, y)
    return Word(x.value ^ y.value, m)


def conj(x: Word, y: Word) -> Word:
    """Bitwise AND."""
    m = _common(x, y)
    return Word(x.value & y.value, m)


def bit(x: Word, i: int) -> int:
    """Binary digit ``i`` of ``x``; zero for any index outside ``[0, kappa)``."""
    if 0 <= i < x.modulus.kappa:
        return (x.value >> i) & 1
    return 0


def mul2k(x: Word, k: int) -> Word:
    if k < 0:
        raise ValueError(f"shift must be nonnegative, got {k}")
    if k >= x.modulus.kappa:
        return Word(0, x.modulus)
    return Word(mul2k_raw(x.value, k, x.modulus.mask), x.modulus)


def circ(x: Word, y: Word) -> Word:
    """Ring product ``2 (x AND y)``."""
    m = _common(x, y)
    return Word(circ_raw(x.value, y.value, m.mask), m)


def commutator(x: Word, y: Word) -> Word:
    """``x ^ y ^ (x + y)``: bit i is the carry into digit i of ``x + y``."""
    m = _common(x, y)
    return Word(commutator_raw(x.value, y.value, m.mask), m)
