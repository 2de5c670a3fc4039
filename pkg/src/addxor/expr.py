"""Expression trees over the signature (+, ^).

Interior nodes compare by identity, so large synthesized expressions can
share subtrees freely.  Every traversal here is iterative and memoised by
node identity, which keeps evaluation linear in the size of the DAG even
when the printed tree is exponentially larger.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .anf import TruthTable, argument_grids, var_names
from .word import Modulus, Word


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True, eq=False)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Xor:
    left: Expr
    right: Expr


Expr = Union[Var, Add, Xor]

ZERO = Xor(Var(0), Var(0))


def is_zero(e: Expr) -> bool:
    """Syntactic zero test: ``a ^ a`` for an identical ``a``."""
    return isinstance(e, Xor) and (e.left is e.right or (isinstance(e.left, Var) and e.left == e.right))


def xor_(a: Expr, b: Expr) -> Expr:
    """XOR with the ``a ^ a -> 0`` and ``0 ^ e -> e`` peepholes."""
    if a is b or (isinstance(a, Var) and a == b):
        return ZERO
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return Xor(a, b)


def double(e: Expr, times: int = 1) -> Expr:
    for _ in range(times):
        if is_zero(e):
            return e
        e = Add(e, e)
    return e


def multiple(n: int, e: Expr, q: int | None = None) -> Expr:
    """``n * e`` as a left-nested chain of additions, ``n`` taken mod q if given."""
    if q is not None:
        n %= q
    if n == 0:
        return Xor(e, e)
    out = e
    for _ in range(n - 1):
        out = Add(out, e)
    return out


def commutator_expr(a: Expr, b: Expr) -> Expr:
    """``[a, b] = (a ^ b) ^ (a + b)``."""
    return Xor(Xor(a, b), Add(a, b))


def _postorder(root: Expr) -> list[Expr]:
    order: list[Expr] = []
    seen: set[int] = set()
    stack: list[tuple[Expr, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded or isinstance(node, Var):
            seen.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))
    return order


def fold(root: Expr, leaf: Callable, add: Callable, xor: Callable):
    memo: dict[int, object] = {}
    for node in _postorder(root):
        if isinstance(node, Var):
            memo[id(node)] = leaf(node.index)
        elif isinstance(node, Add):
            memo[id(node)] = add(memo[id(node.left)], memo[id(node.right)])
        else:
            memo[id(node)] = xor(memo[id(node.left)], memo[id(node.right)])
    return memo[id(root)]


def arity_of(e: Expr) -> int:
    return fold(e, lambda i: i + 1, max, max)


def dag_size(e: Expr) -> int:
    return len(_postorder(e))


def evaluate(e: Expr, inputs: Sequence[Word]) -> Word:
    if not inputs:
        raise ValueError("expressions need at least one argument")
    modulus = inputs[0].modulus
    for w in inputs:
        if w.modulus != modulus:
            raise ValueError("inputs use different moduli")
    if arity_of(e) > len(inputs):
        raise ValueError(f"expression uses {arity_of(e)} variables, got {len(inputs)} inputs")
    mask = modulus.mask
    vals = [w.value for w in inputs]
    out = fold(e, lambda i: vals[i], lambda a, b: (a + b) & mask, lambda a, b: a ^ b)
    return Word(out, modulus)


def eval_arrays(e: Expr, grids: Sequence[np.ndarray], mask: int) -> np.ndarray:
    return fold(e, lambda i: grids[i], lambda a, b: (a + b) & mask, lambda a, b: a ^ b)


def table_of(e: Expr, modulus: Modulus, arity: int | None = None) -> TruthTable:
    need = arity_of(e)
    arity = need if arity is None else arity
    if need > arity:
        raise ValueError(f"expression uses {need} variables but arity is {arity}")
    grids = argument_grids(modulus, arity)
    vals = eval_arrays(e, grids, modulus.mask)
    return TruthTable(modulus, arity, np.broadcast_to(vals, grids[0].shape))


def render(e: Expr, names: Sequence[str] | None = None) -> str:
    """Print ``e`` in the input grammar; ``^`` binds looser than ``+``."""
    names = var_names(arity_of(e)) if names is None else names
    # each memo entry: (text, precedence) with 0 = xor-chain, 1 = add-chain, 2 = atom
    def leaf(i):
        return names[i], 2

    def add(a, b):
        left = a[0] if a[1] >= 1 else f"({a[0]})"
        right = b[0] if b[1] >= 2 else f"({b[0]})"
        return f"{left} + {right}", 1

    def xor(a, b):
        right = b[0] if b[1] >= 1 else f"({b[0]})"
        return f"{a[0]} ^ {right}", 0

    return fold(e, leaf, add, xor)[0]
