"""Value-level introspection queries for differential testing.

Each query is a small JSON object naming a deterministic computation;
the answer is a JSON object of plain integers, coefficient lists, or
hex strings.  External harnesses drive these through ``lumen probe``
to compare the library's arithmetic against independent
implementations, one value at a time, without linking any code.

Queries never touch the filesystem: serialized inputs (relations)
travel as hex strings inside the query itself.
"""

from __future__ import annotations

from .errors import InvalidParams, MalformedProof
from .field import GOLDILOCKS, EvaluationDomain
from .groups import (
    gmul,
    gpow,
    hash_to_residue,
    rsa_challenge_spec,
    test_known_order_spec,
    transparent_setup,
)
from .keccak import keccak256
from .pcs import commit, setup
from .piop import RelationIndex, index, witness_poly_for_degree
from .poly import (
    Poly,
    from_subgroup_evals,
    lagrange_interpolate,
    mod_cyclotomic,
    poly_from_linear_factors,
    ring_inverse,
    ring_mul,
    subgroup_evals,
    sum_over_subgroup,
)

F = GOLDILOCKS


def _want(query: dict, key: str):
    if key not in query:
        raise InvalidParams(f"probe query is missing {key!r}")
    return query[key]


def _int(query: dict, key: str) -> int:
    v = _want(query, key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidParams(f"{key!r} must be an integer")
    return v


def _element(query: dict, key: str) -> int:
    v = _int(query, key)
    if not (0 <= v < F.modulus):
        raise InvalidParams(f"{key!r} is not a canonical field element")
    return v


def _hex(query: dict, key: str) -> bytes:
    v = _want(query, key)
    try:
        return bytes.fromhex(v)
    except (TypeError, ValueError):
        raise InvalidParams(f"{key!r} must be a hex string") from None


def _coeffs(query: dict, key: str) -> list[int]:
    v = _want(query, key)
    if not isinstance(v, list):
        raise InvalidParams(f"{key!r} must be a list of integers")
    out = []
    for c in v:
        if not isinstance(c, int) or isinstance(c, bool) or not (0 <= c < F.modulus):
            raise InvalidParams(f"{key!r} holds a non-canonical coefficient")
        out.append(c)
    return out


def _group_spec(query: dict):
    backend = query.get("backend", "test")
    if backend == "rsa":
        return rsa_challenge_spec()
    if backend == "test":
        return test_known_order_spec()
    raise InvalidParams(f"unknown backend {backend!r}")


def _kernel(query: dict) -> dict:
    dom = EvaluationDomain(F, _int(query, "domain"))
    return {"value": dom.bivariate_lambda(_element(query, "x"), _element(query, "y"))}


def _poly(query: dict) -> dict:
    op = _want(query, "op")
    if op in ("add", "sub", "mul"):
        a = Poly(F, _coeffs(query, "a"))
        b = Poly(F, _coeffs(query, "b"))
        out = a + b if op == "add" else a - b if op == "sub" else a * b
        return {"coeffs": list(out.coeffs)}
    if op == "divrem":
        a = Poly(F, _coeffs(query, "a"))
        b = Poly(F, _coeffs(query, "b"))
        q, r = a.div_rem(b)
        return {"q": list(q.coeffs), "r": list(r.coeffs)}
    if op == "eval":
        return {"value": Poly(F, _coeffs(query, "a")).eval(_element(query, "x"))}
    if op == "derive":
        return {"coeffs": list(Poly(F, _coeffs(query, "a")).derivative().coeffs)}
    if op == "shift":
        out = Poly(F, _coeffs(query, "a")).shift_arg(_element(query, "delta"))
        return {"coeffs": list(out.coeffs)}
    if op == "modcyc":
        out = mod_cyclotomic(Poly(F, _coeffs(query, "a")), _int(query, "m"))
        return {"coeffs": list(out.coeffs)}
    if op == "ringmul":
        a = Poly(F, _coeffs(query, "a"))
        b = Poly(F, _coeffs(query, "b"))
        return {"coeffs": list(ring_mul(a, b, _int(query, "m")).coeffs)}
    if op == "ringinv":
        inv = ring_inverse(Poly(F, _coeffs(query, "a")), _int(query, "m"))
        return {"coeffs": None if inv is None else list(inv.coeffs)}
    if op == "evals":
        return {"evals": subgroup_evals(Poly(F, _coeffs(query, "a")), _int(query, "m"))}
    if op == "interp":
        return {"coeffs": list(from_subgroup_evals(F, _coeffs(query, "a")).coeffs)}
    if op == "sumsub":
        return {"value": sum_over_subgroup(Poly(F, _coeffs(query, "a")), _int(query, "m"))}
    if op == "factors":
        pairs = _want(query, "pairs")
        out = poly_from_linear_factors(F, [(int(c), int(e)) for c, e in pairs])
        return {"coeffs": list(out.coeffs)}
    if op == "lagrange":
        points = [(int(x), int(y)) for x, y in _want(query, "points")]
        return {"coeffs": list(lagrange_interpolate(F, points).coeffs)}
    raise InvalidParams(f"unknown poly op {op!r}")


def _keccak(query: dict) -> dict:
    return {"digest": keccak256(_hex(query, "hex")).hex()}


def _group(query: dict) -> dict:
    spec = _group_spec(query)
    op = _want(query, "op")
    if op == "pow":
        return {"value": gpow(spec, _int(query, "base"), _int(query, "exp"))}
    if op == "mul":
        return {"value": gmul(spec, _int(query, "a"), _int(query, "b"))}
    if op == "residue":
        return {"value": hash_to_residue(spec, _hex(query, "seed_hex"))}
    if op == "chain":
        g, u = transparent_setup(spec, _hex(query, "seed_hex"), _int(query, "alpha"))
        return {"g": g, "u": list(u)}
    raise InvalidParams(f"unknown group op {op!r}")


def _setup_params(query: dict):
    return setup(
        query.get("security", 128),
        _int(query, "degree"),
        _int(query, "alpha"),
        _want(query, "seed").encode(),
        group=_group_spec(query),
    )


def _setup(query: dict) -> dict:
    return {"pp_hex": _setup_params(query).encode().hex()}


def _commit(query: dict) -> dict:
    pp = _setup_params(query)
    f = Poly(F, _coeffs(query, "poly"))
    com, _ = commit(pp, f, _want(query, "commit_seed").encode())
    return {
        "c": list(com.c.coeffs),
        "q": list(com.q.coeffs),
        "s_u": pp.s_u,
        "x_u": pp.x_u,
        "x_v": pp.x_v,
        "alpha_scalar": pp.alpha_scalar,
    }


def _relation_from_hex(query: dict) -> RelationIndex:
    try:
        return RelationIndex.decode(_hex(query, "relation_hex"))
    except MalformedProof as exc:
        raise InvalidParams(f"undecodable relation: {exc}") from None


def _encode(query: dict) -> dict:
    enc = index(_relation_from_hex(query))
    cells = lambda bp: [[r, c, v] for (r, c), v in sorted(bp.cells.items())]
    return {
        "domain_size": enc.domain.size,
        "support": [list(rc) for rc in enc.support],
        "kappa": list(enc.kappa),
        "alpha_bar": enc.alpha_bar,
        "p1_cells": cells(enc.p1_bi),
        "p2_cells": cells(enc.p2_bi),
        "p4_cells": cells(enc.p4_bi),
        "p3_uni": list(enc.p3_uni.coeffs),
        "q_pairs": [list(p) for p in enc.q_pairs],
        "q_poly": list(enc.q_poly.coeffs),
        "a_poly": list(enc.a_poly.coeffs),
        "b_poly": list(enc.b_poly.coeffs),
        "q1": list(enc.q1.coeffs),
        "q2": list(enc.q2.coeffs),
        "q3": list(enc.q3.coeffs),
        "q4": list(enc.q4.coeffs),
        "dq1": list(enc.dq1.coeffs),
        "dq2": list(enc.dq2.coeffs),
        "dq3": list(enc.dq3.coeffs),
        "dq4": list(enc.dq4.coeffs),
        "k_values": list(enc.k_values),
        "s_h": enc.s_h,
        "w1": enc.w1,
        "w2": enc.w2,
        "sigma_m2": enc.sigma_m2,
        "relation_echo": enc.relation.encode().hex(),
    }


def _witness(query: dict) -> dict:
    enc = index(_relation_from_hex(query))
    w = witness_poly_for_degree(enc, _int(query, "degree"))
    return {"coeffs": list(w.coeffs)}


_HANDLERS = {
    "kernel": _kernel,
    "poly": _poly,
    "keccak": _keccak,
    "group": _group,
    "setup": _setup,
    "commit": _commit,
    "encode": _encode,
    "witness": _witness,
}


def answer(query: dict) -> dict:
    """Resolve one probe query to its answer object."""
    if not isinstance(query, dict):
        raise InvalidParams("probe query must be a JSON object")
    kind = query.get("probe")
    handler = _HANDLERS.get(kind)
    if handler is None:
        raise InvalidParams(f"unknown probe kind {kind!r}")
    return handler(query)
