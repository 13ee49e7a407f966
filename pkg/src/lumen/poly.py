"""Dense polynomials over a prime field, with NTT-backed fast paths.

Coefficients are stored ascending with no trailing zeros; the zero
polynomial is the empty list.  Multiplication switches from schoolbook
to a radix-2 NTT once operands pass degree 64.  The cyclotomic helpers
work in F[x]/(x^d - 1) for power-of-two d, where x^(-i) is realized as
x^(d-i).
"""

from __future__ import annotations

from .errors import DivisionByZeroPolynomial, InvalidParams
from .field import Field

SCHOOLBOOK_CUTOFF = 64

# twiddle caches keyed by (modulus, size)
_NTT_ROOTS: dict[tuple[int, int], list[int]] = {}
_NTT_ROOTS_INV: dict[tuple[int, int], list[int]] = {}


def _roots(field: Field, n: int, inverse: bool) -> list[int]:
    key = (field.modulus, n)
    cache = _NTT_ROOTS_INV if inverse else _NTT_ROOTS
    if key not in cache:
        w = field.root_of_unity(n)
        if inverse:
            w = field.inv(w)
        p = field.modulus
        tw = [1] * (n // 2)
        for i in range(1, n // 2):
            tw[i] = (tw[i - 1] * w) % p
        cache[key] = tw
    return cache[key]


def ntt(field: Field, values: list[int], inverse: bool = False) -> list[int]:
    """In-order iterative radix-2 transform; length must be a power of two."""
    n = len(values)
    if n & (n - 1):
        raise InvalidParams("NTT length must be a power of two")
    if n == 1:
        return list(values)
    p = field.modulus
    a = list(values)
    # bit-reversal permutation
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    tw = _roots(field, n, inverse)
    size = 2
    while size <= n:
        half = size >> 1
        step = n // size
        for start in range(0, n, size):
            k = 0
            for i in range(start, start + half):
                u = a[i]
                v = (a[i + half] * tw[k]) % p
                a[i] = (u + v) % p
                a[i + half] = (u - v) % p
                k += step
        size <<= 1
    if inverse:
        inv_n = field.inv(field.reduce(n))
        a = [(x * inv_n) % p for x in a]
    return a


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length() if n > 1 else 1


class Poly:
    """Immutable dense polynomial bound to a field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    # --- constructors -------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, [1])

    @classmethod
    def constant(cls, field: Field, c: int) -> "Poly":
        return cls(field, [field.reduce(c)])

    @classmethod
    def monomial(cls, field: Field, coeff: int, degree: int) -> "Poly":
        c = field.reduce(coeff)
        if c == 0:
            return cls(field, [])
        return cls(field, [0] * degree + [c])

    # --- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field.modulus == other.field.modulus

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.field.modulus
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        p = self.field.modulus
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = (out[i] - c) % p
        return Poly(self.field, out)

    def __neg__(self) -> "Poly":
        p = self.field.modulus
        return Poly(self.field, [(p - c) % p if c else 0 for c in self.coeffs])

    def scale(self, k: int) -> "Poly":
        p = self.field.modulus
        k = k % p
        return Poly(self.field, [(c * k) % p for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        p = self.field.modulus
        if min(len(a), len(b)) <= SCHOOLBOOK_CUTOFF:
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
            return Poly(self.field, out)
        size = _next_pow2(len(a) + len(b) - 1)
        fa = ntt(self.field, list(a) + [0] * (size - len(a)))
        fb = ntt(self.field, list(b) + [0] * (size - len(b)))
        fc = [(x * y) % p for x, y in zip(fa, fb)]
        return Poly(self.field, ntt(self.field, fc, inverse=True))

    def div_rem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Long division; returns (quotient, remainder)."""
        if divisor.is_zero():
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        f = self.field
        p = f.modulus
        r = list(self.coeffs)
        d = list(divisor.coeffs)
        dd = len(d) - 1
        if len(r) - 1 < dd:
            return Poly.zero(f), Poly(f, r)
        inv_lead = f.inv(d[-1])
        # touching only nonzero divisor terms makes division by sparse
        # divisors (x^m - c and friends) linear instead of quadratic
        nz = [(j, dj) for j, dj in enumerate(d) if dj]
        q = [0] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c == 0:
                continue
            k = (c * inv_lead) % p
            q[i - dd] = k
            for j, dj in nz:
                r[i - dd + j] = (r[i - dd + j] - k * dj) % p
        return Poly(f, q), Poly(f, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.div_rem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.div_rem(other)[1]

    def eval(self, x: int) -> int:
        """Horner evaluation."""
        p = self.field.modulus
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def derivative(self) -> "Poly":
        p = self.field.modulus
        return Poly(self.field, [(i * c) % p for i, c in enumerate(self.coeffs)][1:])

    def shift_arg(self, delta: int) -> "Poly":
        """Taylor shift: returns g with g(x) = self(x + delta).

        Convolution form, so large-degree shifts stay O(n log n).
        """
        f = self.field
        p = f.modulus
        n = len(self.coeffs)
        if n == 0 or delta % p == 0:
            return self
        d = delta % p
        # b_k = sum_j a_j * C(j,k) d^(j-k) = (1/k!) sum_j (a_j j!) * d^(j-k)/(j-k)!
        fact = [1] * n
        for i in range(1, n):
            fact[i] = (fact[i - 1] * i) % p
        inv_fact = [1] * n
        inv_fact[n - 1] = f.inv(fact[n - 1])
        for i in range(n - 1, 0, -1):
            inv_fact[i - 1] = (inv_fact[i] * i) % p
        u = [(self.coeffs[j] * fact[j]) % p for j in range(n)]  # reversed below
        v = [0] * n
        dk = 1
        for i in range(n):
            v[i] = (dk * inv_fact[i]) % p
            dk = (dk * d) % p
        u.reverse()
        prod = (Poly(f, u) * Poly(f, v)).coeffs
        out = [0] * n
        for k in range(n):
            idx = n - 1 - k
            c = prod[idx] if idx < len(prod) else 0
            out[k] = (c * inv_fact[k]) % p
        return Poly(f, out)

    # --- serialization ------------------------------------------------
    def to_bytes(self) -> bytes:
        from .encoding import encode_coeffs

        return encode_coeffs(self.coeffs)

    @classmethod
    def from_reader(cls, field: Field, reader) -> "Poly":
        return cls(field, reader.coeffs())


# --- ring F[x]/(x^d - 1), d a power of two -----------------------------

def mod_cyclotomic(poly: Poly, d: int) -> Poly:
    """Fold coefficient i onto i mod d: reduction mod x^d - 1."""
    if d < 1:
        raise InvalidParams("cyclotomic degree must be positive")
    p = poly.field.modulus
    out = [0] * d
    for i, c in enumerate(poly.coeffs):
        j = i % d
        out[j] = (out[j] + c) % p
    return Poly(poly.field, out)


def ring_mul(a: Poly, b: Poly, d: int) -> Poly:
    """Product in F[x]/(x^d - 1); cyclic convolution via size-d NTT."""
    if d & (d - 1):
        raise InvalidParams("ring degree must be a power of two")
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    if d == 1:
        return Poly.constant(a.field, a.field.mul(a.eval(1), b.eval(1)))
    aa = mod_cyclotomic(a, d) if a.degree() >= d else a
    bb = mod_cyclotomic(b, d) if b.degree() >= d else b
    if d <= SCHOOLBOOK_CUTOFF:
        return mod_cyclotomic(aa * bb, d)
    f = a.field
    p = f.modulus
    fa = ntt(f, list(aa.coeffs) + [0] * (d - len(aa.coeffs)))
    fb = ntt(f, list(bb.coeffs) + [0] * (d - len(bb.coeffs)))
    return Poly(f, ntt(f, [(x * y) % p for x, y in zip(fa, fb)], inverse=True))


def ring_inverse(a: Poly, d: int) -> Poly | None:
    """Inverse in F[x]/(x^d - 1), or None when not invertible.

    Since d divides p - 1 here, x^d - 1 splits; invertibility is exactly
    "no zero among the d evaluations on the size-d subgroup".
    """
    if d & (d - 1):
        raise InvalidParams("ring degree must be a power of two")
    f = a.field
    aa = mod_cyclotomic(a, d) if a.degree() >= d else a
    vals = ntt(f, list(aa.coeffs) + [0] * (d - len(aa.coeffs))) if d > 1 else [aa.eval(1)]
    if any(v == 0 for v in vals):
        return None
    inv_vals = [f.inv(v) for v in vals]
    if d == 1:
        return Poly(f, inv_vals)
    return Poly(f, ntt(f, inv_vals, inverse=True))


def subgroup_evals(poly: Poly, d: int) -> list[int]:
    """Evaluations on the size-d subgroup in generator-power order."""
    f = poly.field
    if d == 1:
        return [poly.eval(1)]
    aa = mod_cyclotomic(poly, d) if poly.degree() >= d else poly
    return ntt(f, list(aa.coeffs) + [0] * (d - len(aa.coeffs)))


def from_subgroup_evals(field: Field, values: list[int]) -> Poly:
    """Interpolate degree < d from size-d subgroup evaluations."""
    d = len(values)
    if d == 1:
        return Poly.constant(field, values[0])
    return Poly(field, ntt(field, list(values), inverse=True))


def sum_over_subgroup(poly: Poly, d: int) -> int:
    """Sum of evaluations over the size-d subgroup.

    Equals d * (sum of coefficients at exponents divisible by d).
    """
    p = poly.field.modulus
    acc = 0
    for i in range(0, len(poly.coeffs), d):
        acc = (acc + poly.coeffs[i]) % p
    return (acc * (d % p)) % p


def poly_from_linear_factors(field: Field, pairs: list[tuple[int, int]]) -> Poly:
    """Product of (c_j - e_j x) via a divide-and-conquer tree."""
    if not pairs:
        return Poly.one(field)
    leaves = [Poly(field, [c, field.neg(e)]) for c, e in pairs]
    while len(leaves) > 1:
        nxt = []
        for i in range(0, len(leaves) - 1, 2):
            nxt.append(leaves[i] * leaves[i + 1])
        if len(leaves) % 2:
            nxt.append(leaves[-1])
        leaves = nxt
    return leaves[0]


def lagrange_interpolate(field: Field, points: list[tuple[int, int]]) -> Poly:
    """Generic Lagrange interpolation over distinct points (small sets)."""
    if not points:
        return Poly.zero(field)
    acc = Poly.zero(field)
    for i, (xi, yi) in enumerate(points):
        num = Poly.one(field)
        den = 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * Poly(field, [field.neg(xj), 1])
            den = field.mul(den, field.sub(xi, xj))
        acc = acc + num.scale(field.mul(yi, field.inv(den)))
    return acc
