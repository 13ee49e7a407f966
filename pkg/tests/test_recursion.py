"""Aggregation layer unit tests: chain integrity and tamper rejection."""

import dataclasses
import random

import pytest

from lumen.errors import MalformedStep
from lumen.field import GOLDILOCKS
from lumen.poly import Poly
from lumen.recursion import agg_init, agg_step, finalize_verify, make_step
from lumen.transcript import KeccakRng

F = GOLDILOCKS


def build_chain(pp, count, tag=b"chain"):
    rng = KeccakRng(tag, b"recursion-test")
    state = agg_init(pp)
    steps = []
    for i in range(count):
        coeffs = rng.coeffs(F, pp.d - 1)
        f = Poly(F, coeffs if any(coeffs) else [1])
        step = make_step(pp, f, tag + b"-%d" % i, state.k_exp)
        steps.append(step)
        state = agg_step(pp, state, step)
    return state, steps


def test_empty_chain_finalizes(pp_small):
    state = agg_init(pp_small)
    assert finalize_verify(pp_small, state, []) == 1


def test_honest_chains_accept(pp_small):
    for count in (1, 2, 7):
        state, steps = build_chain(pp_small, count, b"ok-%d" % count)
        assert finalize_verify(pp_small, state, steps) == 1


def test_init_is_parameter_bound(pp_small, pp_tiny):
    a = agg_init(pp_small)
    b = agg_init(pp_small)
    c = agg_init(pp_tiny)
    assert (a.digest_chain, a.k_exp, a.prev_digest) == (b.digest_chain, b.k_exp, b.prev_digest)
    assert a.prev_digest != c.prev_digest


def test_step_order_matters(pp_small):
    state, steps = build_chain(pp_small, 3, b"order")
    swapped = [steps[1], steps[0], steps[2]]
    assert finalize_verify(pp_small, state, swapped) == 0


def test_step_count_mismatch_rejected(pp_small):
    state, steps = build_chain(pp_small, 3, b"count")
    assert finalize_verify(pp_small, state, steps[:2]) == 0
    extra_state, extra_steps = build_chain(pp_small, 4, b"count")
    assert finalize_verify(pp_small, state, extra_steps) == 0


def test_tampered_scalar_polys_rejected(pp_small):
    state, steps = build_chain(pp_small, 4, b"tamper")
    rng = random.Random(0x7A3B)
    for vec_name in ("r", "s", "t"):
        idx = rng.randrange(len(steps))
        victim = steps[idx]
        vec = list(getattr(victim, vec_name))
        j = rng.randrange(len(vec))
        vec[j] = vec[j] + Poly.constant(F, 1)
        bad = dataclasses.replace(victim, **{vec_name: tuple(vec)})
        mutated = steps[:idx] + [bad] + steps[idx + 1:]
        assert finalize_verify(pp_small, state, mutated) == 0, vec_name


def test_tampered_commitment_rejected(pp_small):
    state, steps = build_chain(pp_small, 3, b"combody")
    victim = steps[1]
    bad_c = victim.com.c + Poly.constant(F, 1)
    bad_com = dataclasses.replace(victim.com, c=bad_c)
    bad = dataclasses.replace(victim, com=bad_com)
    assert finalize_verify(pp_small, state, steps[:1] + [bad] + steps[2:]) == 0


def test_malformed_width_raises(pp_small):
    state, steps = build_chain(pp_small, 1, b"width")
    bad = dataclasses.replace(steps[0], v=steps[0].v[:-1])
    with pytest.raises(MalformedStep):
        agg_step(pp_small, agg_init(pp_small), bad)
    # finalize converts the structural defect into a clean reject
    assert finalize_verify(pp_small, state, [bad]) == 0


def test_weight_vector_consistency_enforced(pp_small):
    state, steps = build_chain(pp_small, 1, b"weights")
    w = list(steps[0].w)
    w[0] += 1
    bad = dataclasses.replace(steps[0], w=tuple(w))
    with pytest.raises(MalformedStep):
        agg_step(pp_small, agg_init(pp_small), bad)


def test_state_tampering_rejected(pp_small):
    state, steps = build_chain(pp_small, 3, b"state")
    bad1 = dataclasses.replace(state, digest_chain=F.add(state.digest_chain, 1))
    assert finalize_verify(pp_small, bad1, steps) == 0
    bad2 = dataclasses.replace(state, claim_acc=state.claim_acc + Poly.constant(F, 1))
    assert finalize_verify(pp_small, bad2, steps) == 0
    bad3 = dataclasses.replace(state, prev_digest=b"\x00" * 32)
    assert finalize_verify(pp_small, bad3, steps) == 0


def test_cross_parameter_chain_rejected(pp_small, pp_tiny):
    state, steps = build_chain(pp_tiny, 2, b"cross")
    assert finalize_verify(pp_small, state, steps) == 0
