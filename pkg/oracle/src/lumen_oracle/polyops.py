"""Schoolbook polynomial arithmetic on plain coefficient lists.

Ascending order, canonical residues, trailing zeros stripped; the zero
polynomial is the empty list.  Every routine is the direct textbook
loop; no transform fast paths exist anywhere in this package, which is
the point: these are reference values for a library that does use fast
paths.
"""

from .modmath import P, inv, subgroup_elements


def norm(coeffs):
    out = [c % P for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def add(a, b):
    n = max(len(a), len(b))
    return norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return norm([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a, k):
    return norm([c * k for c in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % P
    return norm(out)


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % P
    return acc


def derive(a):
    return norm([i * c for i, c in enumerate(a)][1:])


def shift_arg(a, delta):
    """Coefficients of x -> a(x + delta) by direct binomial expansion."""
    out = [0] * len(a)
    for j, c in enumerate(a):
        # expand c * (x + delta)^j one power at a time
        term = [c]
        for _ in range(j):
            term = add([t * delta % P for t in term] + [0], [0] + term)
        for k, t in enumerate(term):
            out[k] = (out[k] + t) % P
    return norm(out)


def mod_cyclotomic(a, m):
    out = [0] * m
    for i, c in enumerate(a):
        out[i % m] = (out[i % m] + c) % P
    return norm(out)


def ring_mul(a, b, m):
    return mod_cyclotomic(mul(a, b), m)


def dft(a, m):
    """Evaluations on the size-m subgroup, one Horner pass per point."""
    return [evaluate(a, w) for w in subgroup_elements(m)]


def inverse_dft(values):
    """Coefficients from size-m subgroup values, direct double sum."""
    m = len(values)
    if m == 1:
        return norm([values[0]])
    elements = subgroup_elements(m)
    inv_m = inv(m)
    out = []
    for j in range(m):
        acc = 0
        for k, v in enumerate(values):
            acc = (acc + v * inv(pow(elements[k], j, P))) % P
        out.append(acc * inv_m % P)
    return norm(out)


def ring_inverse(a, m):
    """Pointwise inversion on the subgroup; None when any value is zero."""
    vals = dft(a, m)
    if any(v == 0 for v in vals):
        return None
    return inverse_dft([inv(v) for v in vals])


def divrem(a, b):
    """Long division: (quotient, remainder)."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    lead = inv(b[-1])
    while len(r) >= len(b):
        k = r[-1] * lead % P
        d = len(r) - len(b)
        if k:
            q[d] = k
            for i, c in enumerate(b):
                r[d + i] = (r[d + i] - k * c) % P
        r.pop()
    return norm(q), norm(r)


def from_linear_factors(pairs):
    """Product of (c - e x) terms, multiplied out one factor at a time."""
    acc = [1]
    for c, e in pairs:
        acc = mul(acc, norm([c, -e]))
    return acc


def interpolate(points):
    """Lagrange interpolation through distinct (x, y) points."""
    acc = []
    for i, (xi, yi) in enumerate(points):
        num = [1]
        den = 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = mul(num, norm([-xj, 1]))
            den = den * (xi - xj) % P
        acc = add(acc, scale(num, yi * inv(den) % P))
    return acc


def sum_over_subgroup(a, m):
    """Sum of the m evaluations, taken point by point."""
    acc = 0
    for w in subgroup_elements(m):
        acc = (acc + evaluate(a, w)) % P
    return acc


def encode_coeffs(a):
    """Wire form: 4-byte little-endian count, then 8-byte coefficients."""
    out = len(a).to_bytes(4, "little")
    for c in a:
        out += int(c).to_bytes(8, "little")
    return out
