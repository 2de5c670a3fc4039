import random
from itertools import product

import numpy as np
import pytest

from addxor.errors import ExprSyntaxError, UnsupportedModulus
from addxor.identities import (
    RCirc,
    RVar,
    RXor,
    build_fk,
    check_identity,
    check_identity_nf,
    emit_basis,
    express_add_in_ring,
    left_product,
    parse_identity,
    ring_eval,
    ring_render,
    verify_commutator_formula,
    verify_ring_axioms,
)
from addxor.word import Modulus, circ_raw, commutator_raw

M2, M4, M8, M16 = (Modulus.from_q(q) for q in (2, 4, 8, 16))
X, Y = RVar(0), RVar(1)


def pairs(m):
    a = np.repeat(np.arange(m.q), m.q)
    b = np.tile(np.arange(m.q), m.q)
    return a, b


def test_check_identity_examples():
    assert check_identity(parse_identity("8*x = x ^ x", M8))
    assert check_identity(parse_identity("4*(x+y) = 4*(x^y)", M8))
    r = check_identity(parse_identity("x + y = x ^ y", M4))
    assert not r
    assert r.counterexample == (1, 1)
    assert (r.lhs_value, r.rhs_value) == (2, 0)
    assert r.report() == "FAILS\ncounterexample: x=1, y=1\nlhs: 2\nrhs: 0"


def test_counterexample_is_first_in_row_major_order():
    r = check_identity(parse_identity("x + y + z = x ^ y ^ z", M8))
    assert r.counterexample == (0, 1, 1)


def test_check_identity_nf_examples():
    assert check_identity_nf(parse_identity("8*x = x ^ x", M8))
    assert check_identity_nf(parse_identity("[x,y] = [y,x]", M8))
    assert check_identity_nf(parse_identity("x + y = y + x", M16))
    assert not check_identity_nf(parse_identity("x + y = x ^ y", M4))


def test_identity_parse_errors():
    with pytest.raises(ExprSyntaxError):
        parse_identity("x + y", M8)
    with pytest.raises(ExprSyntaxError):
        parse_identity("x = y = z", M8)
    with pytest.raises(ExprSyntaxError) as info:
        parse_identity("x = y +", M8)
    assert info.value.offset == 7


def test_one_sided_variables_share_arity():
    ident = parse_identity("x ^ x = y ^ y", M4)
    assert ident.names == ("x", "y")
    assert check_identity(ident)


CROSS = [
    "x + y = y + x",
    "x ^ y = y ^ x",
    "(x + y) + z = x + (y + z)",
    "x + y = x ^ y",
    "[x,y] = x + y",
    "2*x = [x,x]",
    "x ^ [x,y] = y",
    "3*x ^ x = 2*x",
    "circ(x,y) = [x,y] ^ circ([x,y],x) ^ circ([x,y],y)",
    "circ(x,y) = 2*x",
    "x + y ^ z = (x ^ z) + y",
]


@pytest.mark.parametrize("q", [2, 4, 8, 16])
@pytest.mark.parametrize("text", CROSS)
def test_both_methods_agree(q, text):
    ident = parse_identity(text, Modulus.from_q(q))
    assert bool(check_identity(ident)) == check_identity_nf(ident)


def test_build_fk_shapes():
    assert build_fk(1) == RCirc(X, Y)
    assert build_fk(2) == RXor(RCirc(X, Y), RCirc(RCirc(X, Y), RXor(X, Y)))
    s = RXor(X, Y)
    assert build_fk(3) == RXor(build_fk(2), RCirc(RCirc(RCirc(X, Y), s), s))
    assert ring_render(build_fk(2)) == "x o y ^ x o y o (x ^ y)"


@pytest.mark.parametrize("m", [M2, M4, M8, M16])
def test_lemma_identity_with_literal_remainder(m):
    a, b = pairs(m)
    c = commutator_raw(a, b, m.mask)
    s = a ^ b
    for k in range(1, m.kappa + 1):
        remainder = c
        for _ in range(k):
            remainder = circ_raw(remainder, s, m.mask)
        assert np.array_equal(c, ring_eval(build_fk(k), [a, b], m.mask) ^ remainder)


@pytest.mark.parametrize("m, bound", [(M2, 1), (M4, 2), (M8, 3), (M16, 4)])
def test_commutator_formula(m, bound):
    k = verify_commutator_formula(m)
    assert 1 <= k <= bound
    a, b = pairs(m)
    assert np.array_equal(ring_eval(build_fk(k), [a, b], m.mask), commutator_raw(a, b, m.mask))
    if k > 1:
        assert not np.array_equal(ring_eval(build_fk(k - 1), [a, b], m.mask), commutator_raw(a, b, m.mask))


def test_commutator_formula_q2():
    assert verify_commutator_formula(M2) == 1


@pytest.mark.parametrize("m", [M2, M4, M8, M16])
def test_express_add_in_ring(m):
    e = express_add_in_ring(m)
    a, b = pairs(m)
    assert np.array_equal(ring_eval(e, [a, b], m.mask), (a + b) & m.mask)


def test_add_in_ring_q2_is_xor():
    assert ring_render(express_add_in_ring(M2)) == "x ^ y ^ x o y"


@pytest.mark.parametrize("m", [M2, M4, M8, M16])
def test_ring_axioms(m):
    report = verify_ring_axioms(m)
    assert report.passed, [a.line() for a in report.axioms if not a.passed]
    assert report.left_vanishing_length == m.kappa + 1
    assert report.nilpotency_index <= m.q


def test_ring_report_q4_lengths():
    # exhaustive product search: circ(1, 1) = 2 so two factors are not enough
    report = verify_ring_axioms(M4)
    assert report.left_vanishing_length == 3
    assert circ_raw(1, 1, 3) == 2


def test_circ_identically_zero_at_q2():
    assert all(circ_raw(a, b, 1) == 0 for a, b in product(range(2), repeat=2))


@pytest.mark.parametrize("m", [M2, M4, M8])
def test_any_bracketing_of_q_factors_vanishes(m):
    rng = random.Random(m.q)

    def random_bracketing(factors):
        if len(factors) == 1:
            return factors[0]
        cut = rng.randrange(1, len(factors))
        return RCirc(random_bracketing(factors[:cut]), random_bracketing(factors[cut:]))

    grids = [np.arange(m.q)[:, None], np.arange(m.q)[None, :]]
    for _ in range(200):
        factors = [RVar(rng.randrange(2)) for _ in range(m.q)]
        assert not np.any(ring_eval(random_bracketing(factors), grids, m.mask))
    assert not np.any(ring_eval(left_product([X, Y] * (m.q // 2)), grids, m.mask))


def test_emit_basis_q2():
    basis = emit_basis(M2)
    # |F_{2,2}| = 4 by the brute-force closure, so each table has 16 entries
    assert len(basis) == 2 * 4 * 4
    assert all(check_identity(i) for i in basis)
    texts = {str(i) for i in basis}
    assert "(x) ^ (y) = x ^ y" in texts


def test_emit_basis_gated():
    with pytest.raises(UnsupportedModulus, match=r"2\*\*14"):
        emit_basis(M4)
