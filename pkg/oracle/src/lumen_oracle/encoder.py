"""Brute-force re-derivation of the relation encoder's outputs.

The library's offline indexer turns a sparse relation into a bundle of
committed-form polynomials using interpolation tricks and cyclic
convolutions.  This module recomputes the same bundle for tiny
relations with nothing but direct sums: bivariate values are literal
sums over grid cells and every interpolation is the quadratic double
loop.  Matching outputs therefore confirm the fast paths, not the
formulas they share.
"""

from .artifacts import relation_bytes
from .modmath import P, lagrange_basis_at, subgroup_elements
from .polyops import (
    add,
    derive,
    evaluate,
    from_linear_factors,
    inverse_dft,
    mod_cyclotomic,
    mul,
    norm,
    scale,
    shift_arg,
    sub,
)
from .sponge import digest


def _next_pow2_min2(x):
    out = 2
    while out < x:
        out *= 2
    return out


def _grid_cells(support, kappa, shape):
    cells = {}
    for j, (r, c) in enumerate(support):
        v = evaluate(shape, kappa[j])
        if v:
            cells[(r, c)] = v
    return cells


def _eval_grid(cells, elements, x, y):
    """Direct sum of cell value * basis_r(x) * basis_c(y)."""
    bx = lagrange_basis_at(elements, x)
    by = lagrange_basis_at(elements, y)
    acc = 0
    for (r, c), v in cells.items():
        acc = (acc + v * bx[r] % P * by[c]) % P
    return acc


def _fix_second_arg(cells, elements, y):
    """Univariate coefficients of x -> grid(x, y)."""
    by = lagrange_basis_at(elements, y)
    evals = [0] * len(elements)
    for (r, c), v in cells.items():
        evals[r] = (evals[r] + v * by[c]) % P
    return inverse_dft(evals)


def encode_relation(rel):
    """Full encoder output bundle for one small relation dict."""
    n, m = rel["n"], rel["m"]
    m_hat = _next_pow2_min2(max(m, n, 2))
    elements = subgroup_elements(m_hat)
    d1 = {(r, c): v % P for r, c, v in rel["m1"]}
    d2 = {(r, c): v % P for r, c, v in rel["m2"]}
    support = sorted(set(d1) | set(d2))
    kappa = [elements[j % m_hat] for j in range(len(support))]
    alpha_bar = int.from_bytes(digest(b"piop/alpha" + digest(relation_bytes(rel))), "big") % P

    p1_cells = _grid_cells(support, kappa, rel["h2"])
    p2_cells = _grid_cells(support, kappa, rel["h3"])
    p4_cells = _grid_cells(support, kappa, rel["h"])
    sigma_m2 = sum(d2.values()) % P

    p1_at_alpha = _fix_second_arg(p1_cells, elements, alpha_bar)
    p2_at_alpha = _fix_second_arg(p2_cells, elements, alpha_bar)
    p3_uni = sub(mul(rel["h2"], p1_at_alpha), scale(p2_at_alpha, sigma_m2))

    # first factor of each support pair: the first grid's diagonal shifted
    # by one; second factor: the second grid at the doubled node
    diag1_shift = [
        _eval_grid(p1_cells, elements, (w + 1) % P, (w + 1) % P) for w in elements
    ]
    q_pairs = [
        (diag1_shift[j % m_hat], p2_cells.get(((2 * j) % m_hat, (2 * j) % m_hat), 0))
        for j in range(len(support))
    ]
    q_poly = from_linear_factors(q_pairs)

    a_evals = [0] * m_hat
    b_evals = [0] * m_hat
    w1 = w2 = 0
    for (r, c) in support:
        v1 = d1.get((r, c), 0)
        v2 = d2.get((r, c), 0)
        a_evals[r] = (a_evals[r] + v1) % P
        b_evals[r] = (b_evals[r] + v2) % P
        w1 = (w1 + v1) % P
        w2 = (w2 + v2) % P
    a_poly = inverse_dft(a_evals)
    b_poly = inverse_dft(b_evals)

    n_bar = n % P
    p1_at_one = _fix_second_arg(p1_cells, elements, 1)
    p2_at_one = _fix_second_arg(p2_cells, elements, 1)
    q1 = mod_cyclotomic(
        add(add(shift_arg(q_poly, (-alpha_bar) % P), scale(p1_at_one, w1)),
            scale(p3_uni, n_bar)),
        m_hat,
    )
    q2 = mod_cyclotomic(
        add(shift_arg(q_poly, alpha_bar), scale(sub(p2_at_one, q1), w2)), m_hat
    )
    s3 = _eval_grid(p1_cells, elements, alpha_bar, 1)
    s4 = _eval_grid(p2_cells, elements, alpha_bar, 1)
    x_mono = [0, 1]
    q3 = mod_cyclotomic(
        sub(mul(x_mono, p1_at_alpha), mul(a_poly, shift_arg(q1, (-s3) % P))), m_hat
    )
    q4 = mod_cyclotomic(
        sub(mul(x_mono, p2_at_alpha), mul(b_poly, shift_arg(q2, (-s4) % P))), m_hat
    )

    k_values = [evaluate(rel["h3"], i % P) for i in range(1, m + 1)]
    # the bound sum only consumes the first 64 multiset values
    s_h = 0
    for kv in k_values[:64]:
        s_h = (s_h + evaluate(rel["h"], kv)) % P

    cells_list = lambda cells: [[r, c, v] for (r, c), v in sorted(cells.items())]
    return {
        "domain_size": m_hat,
        "support": [list(rc) for rc in support],
        "kappa": kappa,
        "alpha_bar": alpha_bar,
        "p1_cells": cells_list(p1_cells),
        "p2_cells": cells_list(p2_cells),
        "p4_cells": cells_list(p4_cells),
        "p3_uni": p3_uni,
        "q_pairs": [list(pair) for pair in q_pairs],
        "q_poly": q_poly,
        "a_poly": a_poly,
        "b_poly": b_poly,
        "q1": q1,
        "q2": q2,
        "q3": q3,
        "q4": q4,
        "dq1": derive(q1),
        "dq2": derive(q2),
        "dq3": derive(q3),
        "dq4": derive(q4),
        "k_values": k_values,
        "s_h": s_h,
        "w1": w1,
        "w2": w2,
        "sigma_m2": sigma_m2,
        "relation_echo": relation_bytes(rel).hex(),
    }


def witness_coeffs(rel, d):
    """The satisfying assignment: folded support product, shaped tail."""
    enc = encode_relation(rel)
    folded = mod_cyclotomic(enc["q_poly"], d)
    return add(scale(folded, enc["s_h"]), scale(rel["h2"], rel["n"] % P))
