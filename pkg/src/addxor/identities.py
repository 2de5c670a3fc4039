"""Identities of (Z_q, +, ^) and the equivalent ring (Z_q, ^, o).

``x o y = 2 (x AND y)`` makes ``(Z_q, ^, o)`` a commutative, nonassociative,
nilpotent ring.  Each of ``+`` and ``o`` can be written in terms of the
other signature, and the checks here confirm both directions exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .anf import CanonicalPoly, TruthTable, argument_grids, var_names
from .errors import ExprSyntaxError, UnsupportedModulus, VerificationFailed
from .expr import Add, Expr, Xor, render, table_of
from .expressibility import count_free_algebra, decide_algebraic, enumerate_free_algebra
from .grammar import parse, scan_variables
from .synth import synthesize
from .word import Modulus, circ_raw, commutator_raw


@dataclass(frozen=True, eq=False)
class Identity:
    lhs: Expr
    rhs: Expr
    names: tuple[str, ...]
    modulus: Modulus
    text: str = ""

    @property
    def arity(self) -> int:
        return max(len(self.names), 1)

    def __str__(self) -> str:
        if self.text:
            return self.text
        return f"{render(self.lhs, self.names)} = {render(self.rhs, self.names)}"


def parse_identity(text: str, modulus: Modulus, *, reduce_multiples: bool = True) -> Identity:
    """Parse ``"<expr> = <expr>"``; both sides share one sorted variable list."""
    if text.count("=") != 1:
        where = text.find("=", text.find("=") + 1) if text.count("=") > 1 else len(text)
        raise ExprSyntaxError("an identity needs exactly one '='", where)
    left, right = text.split("=")
    names = sorted(set(scan_variables(left)) | set(scan_variables(right)), key=lambda s: (len(s), s))
    if not names:
        raise ExprSyntaxError("an identity needs at least one variable", 0)
    lhs = parse(left, modulus, names, reduce_multiples=reduce_multiples)
    try:
        rhs = parse(right, modulus, names, reduce_multiples=reduce_multiples)
    except ExprSyntaxError as exc:
        raise ExprSyntaxError(str(exc).rsplit(" at offset", 1)[0], exc.offset + len(left) + 1) from exc
    return Identity(lhs, rhs, tuple(names), modulus, text.strip())


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: tuple[int, ...] | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None
    names: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds

    def report(self) -> str:
        if self.holds:
            return "HOLDS"
        assignment = ", ".join(f"{n}={v}" for n, v in zip(self.names, self.counterexample))
        return f"FAILS\ncounterexample: {assignment}\nlhs: {self.lhs_value}\nrhs: {self.rhs_value}"


def _tables(ident: Identity) -> tuple[TruthTable, TruthTable]:
    return table_of(ident.lhs, ident.modulus, ident.arity), table_of(ident.rhs, ident.modulus, ident.arity)


def check_identity(ident: Identity) -> CheckResult:
    """Evaluate both sides everywhere; report the first differing assignment in row-major order."""
    lt, rt = _tables(ident)
    diff = np.flatnonzero(lt.values != rt.values)
    if diff.size == 0:
        return CheckResult(True, names=ident.names)
    n = int(diff[0])
    return CheckResult(False, lt.assignment(n), int(lt.values[n]), int(rt.values[n]), ident.names)


def normal_form(ident_side: Expr, modulus: Modulus, arity: int) -> CanonicalPoly:
    verdict = decide_algebraic(table_of(ident_side, modulus, arity))
    if not verdict.algebraic:
        raise VerificationFailed(f"an ADD/XOR expression was judged non-algebraic ({verdict.failure})")
    return verdict.witness


def check_identity_nf(ident: Identity) -> bool:
    """Decide the identity by comparing the normal forms of both sides."""
    return normal_form(ident.lhs, ident.modulus, ident.arity) == normal_form(ident.rhs, ident.modulus, ident.arity)


# -- ring expressions ---------------------------------------------------------


@dataclass(frozen=True)
class RVar:
    index: int


@dataclass(frozen=True)
class RXor:
    left: RingExpr
    right: RingExpr


@dataclass(frozen=True)
class RCirc:
    left: RingExpr
    right: RingExpr


RingExpr = Union[RVar, RXor, RCirc]


def ring_eval(e: RingExpr, args: Sequence, mask: int):
    """Evaluate over ints or numpy arrays."""
    match e:
        case RVar(i):
            return args[i]
        case RXor(a, b):
            return ring_eval(a, args, mask) ^ ring_eval(b, args, mask)
        case RCirc(a, b):
            return circ_raw(ring_eval(a, args, mask), ring_eval(b, args, mask), mask)
    raise TypeError(e)


def ring_render(e: RingExpr, names: Sequence[str] = ("x", "y")) -> str:
    match e:
        case RVar(i):
            return names[i]
        case RXor(a, b):
            right = ring_render(b, names)
            return f"{ring_render(a, names)} ^ {right if not isinstance(b, RXor) else f'({right})'}"
        case RCirc(a, b):
            left = ring_render(a, names)
            right = ring_render(b, names)
            left = left if not isinstance(a, RXor) else f"({left})"
            right = right if isinstance(b, RVar) else f"({right})"
            return f"{left} o {right}"
    raise TypeError(e)


def left_product(factors: Sequence[RingExpr]) -> RingExpr:
    out = factors[0]
    for f in factors[1:]:
        out = RCirc(out, f)
    return out


X, Y = RVar(0), RVar(1)


def build_fk(k: int) -> RingExpr:
    """``f_1 = x o y``; ``f_{k+1} = f_k ^ (x o y) o (x^y) o ... o (x^y)`` with k trailing factors."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    xy = RCirc(X, Y)
    s = RXor(X, Y)
    out: RingExpr = xy
    for j in range(1, k):
        out = RXor(out, left_product([xy] + [s] * j))
    return out


def _pair_grids(modulus: Modulus) -> list[np.ndarray]:
    return argument_grids(modulus, 2)


def verify_commutator_formula(modulus: Modulus) -> int:
    """Smallest ``k`` with ``[x, y] == f_k(x, y)`` on all pairs; it must be <= kappa."""
    if modulus.q > 1 << 10:
        raise ValueError("exhaustive pair check limited to q <= 2**10")
    x, y = _pair_grids(modulus)
    target = commutator_raw(x, y, modulus.mask)
    for k in range(1, modulus.kappa + 1):
        if np.array_equal(ring_eval(build_fk(k), [x, y], modulus.mask), target):
            return k
    raise VerificationFailed(f"no f_k with k <= {modulus.kappa} reproduces the commutator at q={modulus.q}")


def express_add_in_ring(modulus: Modulus) -> RingExpr:
    """``x ^ y ^ f_k(x, y)``, checked against ``+`` on every pair."""
    e = RXor(RXor(X, Y), build_fk(verify_commutator_formula(modulus)))
    x, y = _pair_grids(modulus)
    if not np.array_equal(ring_eval(e, [x, y], modulus.mask), (x + y) & modulus.mask):
        raise VerificationFailed(f"ring expression for + fails at q={modulus.q}")
    return e


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        wit = f"  witness={self.witness}" if self.witness is not None else ""
        return f"{status}  {self.name}{extra}{wit}"


@dataclass
class RingReport:
    modulus: Modulus
    axioms: list[AxiomResult] = field(default_factory=list)
    left_vanishing_length: int = 0
    nilpotency_index: int = 0

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.axioms)


def _first_failure(ok: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(~ok)
    return None if bad.size == 0 else tuple(int(v) for v in bad[0])


def _products(a: np.ndarray, b: np.ndarray, mask: int) -> np.ndarray:
    """All values ``u o v`` for ``u`` in ``a`` and ``v`` in ``b``."""
    return np.unique(circ_raw(a[:, None], b[None, :], mask))


def verify_ring_axioms(modulus: Modulus) -> RingReport:
    """Exhaustively check the ring laws of ``(Z_q, ^, o)`` and measure nilpotency.

    Product lengths are found by propagating value *sets*: the left-bracketed
    products of length m+1 are exactly ``P_m o Z_q``, and products of length
    m under any bracketing are the union of ``S_a o S_b`` over a + b = m.
    """
    q, mask, kappa = modulus.q, modulus.mask, modulus.kappa
    if q > 1 << 12:
        raise ValueError("exhaustive ring check limited to q <= 2**12")
    report = RingReport(modulus)
    add = report.axioms.append
    v = np.arange(q, dtype=np.int64)
    x2, y2 = v[:, None], v[None, :]

    ok = (x2 ^ y2) == (y2 ^ x2)
    add(AxiomResult("xor commutative", bool(ok.all()), _first_failure(ok)))
    ok = (x2 ^ 0) == np.broadcast_to(x2, (q, q))
    add(AxiomResult("xor identity 0", bool(ok.all()), _first_failure(ok)))
    ok = (x2 ^ x2) == 0
    add(AxiomResult("xor exponent 2 (x ^ x = 0)", bool(ok.all()), _first_failure(ok)))
    ok = circ_raw(x2, y2, mask) == circ_raw(y2, x2, mask)
    add(AxiomResult("o commutative", bool(ok.all()), _first_failure(ok)))

    assoc_ok, dist_ok = True, True
    assoc_w = dist_w = None
    for x in range(q):
        ok = ((x ^ y2) ^ v[:, None]) == (x ^ (y2 ^ v[:, None]))
        if assoc_ok and not ok.all():
            assoc_ok, assoc_w = False, (x,) + _first_failure(ok)
        lhs = circ_raw(x, y2 ^ v[:, None], mask)
        rhs = circ_raw(x, y2, mask) ^ circ_raw(x, v[:, None], mask)
        ok = lhs == rhs
        if dist_ok and not ok.all():
            dist_ok, dist_w = False, (x,) + _first_failure(ok)
    add(AxiomResult("xor associative", assoc_ok, assoc_w))
    add(AxiomResult("o distributes over xor", dist_ok, dist_w))

    # left-bracketed products
    level = v
    length = 1
    while not (level.size == 1 and level[0] == 0):
        level = _products(level, v, mask)
        length += 1
        if length > q + 1:
            break
    report.left_vanishing_length = length
    add(AxiomResult(
        f"left-bracketed products of {kappa + 1} factors vanish",
        length <= kappa + 1,
        detail=f"minimal vanishing length {length}",
    ))

    # any bracketing
    sets = {1: v}
    m = 1
    while not (sets[m].size == 1 and sets[m][0] == 0):
        m += 1
        parts = [_products(sets[a], sets[m - a], mask) for a in range(1, m)]
        sets[m] = np.unique(np.concatenate(parts))
        if m > q:
            break
    report.nilpotency_index = m
    add(AxiomResult(f"all products of {q} factors vanish", m <= q, detail=f"nilpotency index {m}"))
    return report


# -- basis emission -------------------------------------------------------------


def emit_basis(modulus: Modulus) -> list[Identity]:
    """Addition tables of ``F_{q,q}`` for both operations, as identities.

    Each element is named by its synthesized expression.  Only q = 2 is
    feasible; larger q raises with the exact size of ``F_{q,q}``.
    """
    q = modulus.q
    if q != 2:
        size = count_free_algebra(q, modulus)
        raise UnsupportedModulus(
            f"basis emission needs |F_{{{q},{q}}}| = 2**{size.bit_length() - 1} = {size} elements; only q=2 is supported"
        )
    k = q
    names = tuple(var_names(k))
    elements = [(synthesize(g), t) for g, t in enumerate_free_algebra(k, modulus)]
    index = {t.key(): n for n, (_, t) in enumerate(elements)}
    out = []
    for op, node, fn in (("+", Add, lambda a, b: (a + b) & modulus.mask), ("^", Xor, lambda a, b: a ^ b)):
        for ea, ta in elements:
            for eb, tb in elements:
                ec, _ = elements[index[TruthTable(modulus, k, fn(ta.values, tb.values)).key()]]
                text = f"({render(ea, names)}) {op} ({render(eb, names)}) = {render(ec, names)}"
                out.append(Identity(node(ea, eb), ec, names, modulus, text))
    return out
