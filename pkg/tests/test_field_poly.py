"""Field, domain, and polynomial arithmetic unit tests."""

import random

import pytest

from lumen.errors import DomainMismatch, InvalidParams
from lumen.field import GOLDILOCKS, EvaluationDomain, batch_inv
from lumen.poly import (
    Poly,
    from_subgroup_evals,
    lagrange_interpolate,
    mod_cyclotomic,
    ntt,
    poly_from_linear_factors,
    ring_inverse,
    ring_mul,
    subgroup_evals,
    sum_over_subgroup,
)

F = GOLDILOCKS
P = F.modulus


def test_modulus_structure():
    # 2^64 - 2^32 + 1, with a full 32-level power-of-two root tower
    assert P == (1 << 64) - (1 << 32) + 1
    assert (P - 1) % (1 << 32) == 0
    assert pow(F.generator, (P - 1) // 2, P) == P - 1


def test_field_axioms_random():
    rng = random.Random(0x5EED)
    for _ in range(200):
        a, b, c = (rng.randrange(P) for _ in range(3))
        assert F.add(a, b) == (a + b) % P
        assert F.sub(a, b) == (a - b) % P
        assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, 3) == F.mul(a, F.mul(a, a))


def test_inv_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_batch_inv_matches_single():
    rng = random.Random(0xBA7C)
    xs = [rng.randrange(1, P) for _ in range(97)]
    assert batch_inv(F, xs) == [F.inv(x) for x in xs]
    assert batch_inv(F, []) == []


def test_root_of_unity_orders():
    for order in (1, 2, 4, 256, 1 << 16):
        w = F.root_of_unity(order)
        assert pow(w, order, P) == 1
        if order > 1:
            assert pow(w, order // 2, P) != 1


def test_domain_elements_are_roots():
    for size in (1, 2, 8, 32):
        dom = EvaluationDomain(F, size)
        assert len(dom.elements) == size
        for h in dom.elements:
            assert dom.vanishing_eval(h) == 0
        assert len(set(dom.elements)) == size


def test_domain_rejects_non_power_of_two():
    with pytest.raises(InvalidParams):
        EvaluationDomain(F, 3)


def test_lagrange_partition_of_unity():
    rng = random.Random(0x1A6E)
    dom = EvaluationDomain(F, 16)
    for _ in range(25):
        x = rng.randrange(P)
        vals = dom.lagrange_evals_all(x)
        assert sum(vals) % P == 1
        # closed form agrees with the batch form at every node
        for i, h in enumerate(dom.elements):
            assert dom.lagrange_eval(h, x) == vals[i]


def test_lagrange_indicator_on_nodes():
    dom = EvaluationDomain(F, 8)
    for i, h in enumerate(dom.elements):
        vals = dom.lagrange_evals_all(h)
        assert vals == [1 if j == i else 0 for j in range(8)]


def test_lagrange_rejects_foreign_node():
    dom = EvaluationDomain(F, 8)
    with pytest.raises(DomainMismatch):
        dom.lagrange_eval(5, 3)


def test_bivariate_lambda_symmetry_and_diagonal():
    rng = random.Random(0xB1BA)
    dom = EvaluationDomain(F, 8)
    for _ in range(20):
        x, y = rng.randrange(P), rng.randrange(P)
        assert dom.bivariate_lambda(x, y) == dom.bivariate_lambda(y, x)
        lx = dom.lagrange_evals_all(x)
        ly = dom.lagrange_evals_all(y)
        acc = 0
        for a, b in zip(lx, ly):
            acc = F.add(acc, F.mul(a, b))
        assert dom.bivariate_lambda(x, y) == acc
    x = rng.randrange(P)
    lx = dom.lagrange_evals_all(x)
    diag = 0
    for a in lx:
        diag = F.add(diag, F.mul(a, a))
    assert dom.bivariate_lambda(x, x) == diag


def test_ntt_round_trip():
    rng = random.Random(0x17E5)
    for size in (2, 8, 64):
        vals = [rng.randrange(P) for _ in range(size)]
        assert ntt(F, ntt(F, vals), inverse=True) == vals


def test_poly_mul_matches_schoolbook():
    rng = random.Random(0x9011)
    for _ in range(10):
        a = Poly(F, [rng.randrange(P) for _ in range(rng.randrange(1, 90))])
        b = Poly(F, [rng.randrange(P) for _ in range(rng.randrange(1, 90))])
        got = list((a * b).coeffs)
        want = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            for j, cb in enumerate(b.coeffs):
                want[i + j] = (want[i + j] + ca * cb) % P
        while want and want[-1] == 0:
            want.pop()
        assert got == want


def test_div_rem_reconstructs():
    rng = random.Random(0xD1F0)
    for _ in range(40):
        a = Poly(F, [rng.randrange(P) for _ in range(rng.randrange(1, 40))])
        b = Poly(F, [rng.randrange(P) for _ in range(rng.randrange(1, 12))])
        if b.is_zero():
            continue
        q, r = a.div_rem(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()


def test_div_rem_sparse_divisor_exact():
    # x^m - c divides (x^m - c) * g with zero remainder
    rng = random.Random(0x5BA5)
    for m in (4, 16, 64):
        c = rng.randrange(1, P)
        div = Poly(F, [F.neg(c)] + [0] * (m - 1) + [1])
        g = Poly(F, [rng.randrange(P) for _ in range(m + 3)])
        q, r = (div * g).div_rem(div)
        assert r.is_zero()
        assert q == g


def test_eval_horner_agreement():
    rng = random.Random(0xEA11)
    coeffs = [rng.randrange(P) for _ in range(30)]
    poly = Poly(F, coeffs)
    for _ in range(10):
        x = rng.randrange(P)
        want = 0
        for c in reversed(coeffs):
            want = (want * x + c) % P
        assert poly.eval(x) == want


def test_shift_arg_is_composition():
    rng = random.Random(0x5417)
    poly = Poly(F, [rng.randrange(P) for _ in range(50)])
    delta = rng.randrange(P)
    shifted = poly.shift_arg(delta)
    for _ in range(8):
        x = rng.randrange(P)
        assert shifted.eval(x) == poly.eval(F.add(x, delta))


def test_subgroup_evals_round_trip():
    rng = random.Random(0x5B6E)
    for size in (2, 8, 32):
        poly = Poly(F, [rng.randrange(P) for _ in range(size)])
        vals = subgroup_evals(poly, size)
        dom = EvaluationDomain(F, size)
        assert vals == [poly.eval(h) for h in dom.elements]
        assert from_subgroup_evals(F, vals) == poly


def test_sum_over_subgroup_matches_naive():
    rng = random.Random(0x50F7)
    for size in (2, 8, 16):
        poly = Poly(F, [rng.randrange(P) for _ in range(3 * size)])
        dom = EvaluationDomain(F, size)
        want = 0
        for h in dom.elements:
            want = F.add(want, poly.eval(h))
        assert sum_over_subgroup(poly, size) == want


def test_ring_mul_is_cyclic_convolution():
    rng = random.Random(0x41B6)
    d = 16
    a = Poly(F, [rng.randrange(P) for _ in range(d)])
    b = Poly(F, [rng.randrange(P) for _ in range(d)])
    got = list(ring_mul(a, b, d).coeffs) + [0] * d
    want = [0] * d
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            want[(i + j) % d] = (want[(i + j) % d] + ca * cb) % P
    assert got[:d] == want


def test_ring_inverse_round_trip():
    rng = random.Random(0x141F)
    d = 32
    found = 0
    for _ in range(20):
        a = Poly(F, [rng.randrange(P) for _ in range(d)])
        inv = ring_inverse(a, d)
        if inv is None:
            continue
        found += 1
        assert ring_mul(a, inv, d) == Poly.one(F)
    assert found > 0


def test_mod_cyclotomic_folds():
    rng = random.Random(0xF01D)
    d = 8
    poly = Poly(F, [rng.randrange(P) for _ in range(3 * d)])
    folded = mod_cyclotomic(poly, d)
    dom = EvaluationDomain(F, d)
    for h in dom.elements:
        assert folded.eval(h) == poly.eval(h)


def test_poly_from_linear_factors():
    # each (c, e) pair contributes the factor c - e*x
    rng = random.Random(0x9A15)
    pairs = [(rng.randrange(P), rng.randrange(1, P)) for _ in range(17)]
    prod = poly_from_linear_factors(F, pairs)
    want = Poly.one(F)
    for c, e in pairs:
        want = want * Poly(F, [c, F.neg(e)])
    assert prod == want
    assert poly_from_linear_factors(F, []) == Poly.one(F)


def test_lagrange_interpolate_round_trip():
    rng = random.Random(0x7A6A)
    xs = rng.sample(range(1, 10**6), 12)
    ys = [rng.randrange(P) for _ in xs]
    poly = lagrange_interpolate(F, list(zip(xs, ys)))
    assert poly.degree() < 12
    for x, y in zip(xs, ys):
        assert poly.eval(x) == y
