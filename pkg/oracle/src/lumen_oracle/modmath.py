"""Field arithmetic for the 64-bit proof field, derived from scratch.

The modulus is p = 2^64 - 2^32 + 1.  Instead of trusting any constant
beyond p itself, the multiplicative generator is found by trial: p - 1
factors as 2^32 * 3 * 5 * 17 * 257 * 65537 (verified at import time),
and the smallest integer whose power at every cofactor differs from 1
is the canonical generator.  Everything downstream (subgroup roots,
Lagrange bases) hangs off that derivation.
"""

P = (1 << 64) - (1 << 32) + 1

_ODD_PRIMES = [3, 5, 17, 257, 65537]
_check = 1 << 32
for _q in _ODD_PRIMES:
    _check *= _q
assert _check == P - 1, "factorization of p - 1 is wrong"


def _find_generator():
    cofactors = [(P - 1) // 2] + [(P - 1) // q for q in _ODD_PRIMES]
    g = 2
    while True:
        if all(pow(g, e, P) != 1 for e in cofactors):
            return g
        g += 1


GENERATOR = _find_generator()


def norm(x):
    return x % P


def inv(x):
    if x % P == 0:
        raise ZeroDivisionError("no inverse of zero")
    # Fermat: x^(p-2) is the inverse in a prime field
    return pow(x, P - 2, P)


def subgroup_root(n):
    """Generator of the order-n subgroup; n must divide 2^32."""
    if n < 1 or n & (n - 1):
        raise ValueError("subgroup size must be a power of two")
    if (P - 1) % n:
        raise ValueError("subgroup size does not divide p - 1")
    return pow(GENERATOR, (P - 1) // n, P)


def subgroup_elements(n):
    w = subgroup_root(n)
    out = [1]
    for _ in range(n - 1):
        out.append(out[-1] * w % P)
    return out


def lagrange_basis_at(elements, x):
    """Every basis value at x by the plain product formula.

    For node h: prod over other nodes g of (x - g) / (h - g).  Slow and
    direct on purpose; this is the reference the fast forms must match.
    """
    out = []
    for i, h in enumerate(elements):
        num, den = 1, 1
        for j, g in enumerate(elements):
            if i == j:
                continue
            num = num * (x - g) % P
            den = den * (h - g) % P
        out.append(num * inv(den) % P)
    return out


def kernel_value(n, x, y):
    """Sum over the subgroup of basis(x) * basis(y), the two-point kernel."""
    elements = subgroup_elements(n)
    bx = lagrange_basis_at(elements, x)
    by = lagrange_basis_at(elements, y)
    acc = 0
    for a, b in zip(bx, by):
        acc = (acc + a * b) % P
    return acc
