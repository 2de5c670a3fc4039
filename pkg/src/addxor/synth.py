"""Turn a weight <= 1 normal form into an explicit ADD/XOR expression.

Each monomial ``(v1, l1)...(vp, lp)`` is the bitwise product
``(2**l1 v1) & ... & (2**lp vp)``.  Products are rewritten with

    (2a) & (2b) == [a, b] ^ (2[a, b]) & (2a) ^ (2[a, b]) & (2b)

until one factor is left, which is a doubled multiple commutator and so a
plain ``+``/``^`` expression.  Commutators of ``q`` or more leaves vanish,
which bounds the rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from .anf import CanonicalPoly
from .expr import ZERO, Add, Expr, Var, double, xor_
from .word import Modulus


@dataclass(frozen=True)
class Leaf:
    index: int

    @property
    def complexity(self) -> int:
        return 1

    @property
    def depth(self) -> int:
        return 0

    def key(self) -> tuple:
        return (0, self.index)


@dataclass(frozen=True)
class Node:
    left: CommutatorTree
    right: CommutatorTree
    complexity: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "complexity", self.left.complexity + self.right.complexity)
        object.__setattr__(self, "depth", max(self.left.depth, self.right.depth) + 1)

    def key(self) -> tuple:
        return (1, self.left.key(), self.right.key())


CommutatorTree = Union[Leaf, Node]


def complexity(t: CommutatorTree) -> int:
    """Number of leaves."""
    return t.complexity


def depth(t: CommutatorTree) -> int:
    return t.depth


def render_tree(t: CommutatorTree, names: Sequence[str]) -> str:
    if isinstance(t, Leaf):
        return names[t.index]
    return f"[{render_tree(t.left, names)},{render_tree(t.right, names)}]"


# (shift, tree): the factor 2**shift * tree
Factor = tuple[int, CommutatorTree]


@dataclass(frozen=True)
class ProductTerm:
    """Bitwise product of shifted commutator trees."""

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=_factor_key)))

    def total_weight(self) -> float:
        return sum(2.0**-s for s, _ in self.factors)


def _factor_key(f: Factor) -> tuple:
    return (-f[0], f[1].key())


class Synthesizer:
    """Rewrites products of shifted commutator trees over a fixed list of atoms.

    ``atoms[i]`` is the expression a ``Leaf(i)`` stands for.  Results are
    memoised per factor multiset so repeated sub-products share one DAG.
    """

    def __init__(self, modulus: Modulus, atoms: Sequence[Expr]) -> None:
        self.modulus = modulus
        self.atoms = list(atoms)
        self._tree_memo: dict[CommutatorTree, Expr] = {}
        self._term_memo: dict[tuple, Expr] = {}

    def tree_expr(self, t: CommutatorTree) -> Expr:
        hit = self._tree_memo.get(t)
        if hit is None:
            if isinstance(t, Leaf):
                hit = self.atoms[t.index]
            else:
                a, b = self.tree_expr(t.left), self.tree_expr(t.right)
                hit = xor_(xor_(a, b), Add(a, b))
            self._tree_memo[t] = hit
        return hit

    def expr_of_commutator(self, t: CommutatorTree, shift: int) -> Expr:
        if shift >= self.modulus.kappa:
            return ZERO
        return double(self.tree_expr(t), shift)

    def product(self, factors: Sequence[Factor]) -> Expr:
        fs = tuple(sorted(factors, key=_factor_key))
        if sum(2.0**-s for s, _ in fs) > 1.0:
            raise ValueError("product has total weight above 1")
        return self._product(fs)

    def _product(self, fs: tuple[Factor, ...]) -> Expr:
        hit = self._term_memo.get(fs)
        if hit is not None:
            return hit
        key = fs
        q, kappa = self.modulus.q, self.modulus.kappa
        # complexity >= q, or low bits cleared up to depth + shift >= kappa: identically zero
        if any(t.complexity >= q or t.depth + s >= kappa for s, t in fs):
            out = ZERO
        elif len(fs) == 1:
            out = self.expr_of_commutator(fs[0][1], fs[0][0])
        else:
            top = fs[0][0]
            # pad with copies of the top-shift factor until the weights sum to 1
            deficit = (1 << top) - sum(1 << (top - s) for s, _ in fs)
            if deficit:
                fs = tuple(sorted(fs + (fs[0],) * deficit, key=_factor_key))
            (k, u), (k2, v), rest = fs[0], fs[1], fs[2:]
            assert k == k2 >= 1, fs
            # [u, v] == [v, u]; a fixed child order lets the memo see both
            t = Node(u, v) if u.key() <= v.key() else Node(v, u)
            parts = [
                ((k - 1, t),) + rest,
                ((k, t), (k, u)) + rest,
                ((k, t), (k, v)) + rest,
            ]
            measure = (len(fs), -sum(f[1].complexity for f in fs))
            out = ZERO
            for p in parts:
                p = tuple(sorted(p, key=_factor_key))
                assert (len(p), -sum(f[1].complexity for f in p)) < measure
                out = xor_(out, self._product(p))
        self._term_memo[key] = out
        return out


@lru_cache(maxsize=32)
def _shared(modulus: Modulus, arity: int) -> Synthesizer:
    return Synthesizer(modulus, [Var(v) for v in range(arity)])


def synthesize(g: CanonicalPoly) -> Expr:
    """An ADD/XOR expression whose table is the function described by ``g``."""
    s = _shared(g.modulus, g.arity)
    out: Expr = ZERO
    for mono in g.monomials:
        out = xor_(out, s.product([(l, Leaf(v)) for v, l in mono.sorted_factors()]))
    return out


def synthesize_circ(a: Expr, b: Expr, modulus: Modulus) -> Expr:
    """Expression for ``(2a) & (2b)``, the ring product of ``a`` and ``b``."""
    s = Synthesizer(modulus, [a, b])
    return s.product([(1, Leaf(0)), (1, Leaf(1))])
