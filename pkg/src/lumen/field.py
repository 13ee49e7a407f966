"""Prime field arithmetic and power-of-two evaluation domains.

Field elements are plain Python ints kept as canonical residues in
[0, p).  The default modulus is p = 2^64 - 2^32 + 1, which has
two-adicity 32, so every power-of-two subgroup up to 2^32 exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatch, InvalidParams

DEFAULT_MODULUS = (1 << 64) - (1 << 32) + 1
DEFAULT_GENERATOR = 7  # multiplicative generator of the default field
DEFAULT_TWO_ADICITY = 32


@dataclass(frozen=True)
class Field:
    """A prime field; all element operations live here.

    Elements themselves are ints in [0, p); this object is the context
    that interprets them.
    """

    modulus: int = DEFAULT_MODULUS
    generator: int = DEFAULT_GENERATOR
    two_adicity: int = DEFAULT_TWO_ADICITY

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def add(self, a: int, b: int) -> int:
        s = a + b
        p = self.modulus
        return s - p if s >= p else s

    def sub(self, a: int, b: int) -> int:
        d = a - b
        return d + self.modulus if d < 0 else d

    def neg(self, a: int) -> int:
        return self.modulus - a if a else 0

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        return pow(a, -1, self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.modulus)
        return pow(a, e, self.modulus)

    def root_of_unity(self, order: int) -> int:
        """Primitive root of unity of the given power-of-two order."""
        if order < 1 or order & (order - 1):
            raise InvalidParams(f"order {order} is not a power of two")
        if order.bit_length() - 1 > self.two_adicity:
            raise InvalidParams(f"order {order} exceeds two-adicity {self.two_adicity}")
        w = pow(self.generator, (self.modulus - 1) // order, self.modulus)
        return w


GOLDILOCKS = Field()


def batch_inv(field: Field, xs: list[int]) -> list[int]:
    """Invert many nonzero elements with a single exponentiation.

    Prefix-product unwind; any zero input surfaces as the usual
    ZeroDivisionError from the one shared inversion.
    """
    n = len(xs)
    if n == 0:
        return []
    pref = [1] * (n + 1)
    for i, x in enumerate(xs):
        pref[i + 1] = field.mul(pref[i], x)
    run = field.inv(pref[n])
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = field.mul(pref[i], run)
        run = field.mul(run, xs[i])
    return out


class EvaluationDomain:
    """Multiplicative subgroup H of power-of-two size with generator omega.

    Carries the vanishing polynomial z(x) = x^|H| - 1, the concise
    Lagrange evaluator and the bivariate combiner built from it.
    """

    def __init__(self, field: Field, size: int):
        if size < 1 or size & (size - 1):
            raise InvalidParams(f"domain size {size} is not a power of two")
        self.field = field
        self.size = size
        self.omega = field.root_of_unity(size)
        if size > 1 and pow(self.omega, size // 2, field.modulus) == 1:
            raise InvalidParams("generator order too small for domain")
        self._elements: list[int] | None = None
        self._index: dict[int, int] | None = None

    @property
    def elements(self) -> list[int]:
        if self._elements is None:
            p = self.field.modulus
            elems = [1] * self.size
            for i in range(1, self.size):
                elems[i] = (elems[i - 1] * self.omega) % p
            self._elements = elems
        return self._elements

    def element(self, i: int) -> int:
        return self.elements[i % self.size]

    def index_of(self, n: int) -> int:
        if self._index is None:
            self._index = {h: i for i, h in enumerate(self.elements)}
        try:
            return self._index[n]
        except KeyError:
            raise DomainMismatch(f"{n} is not an element of the size-{self.size} domain") from None

    def contains(self, n: int) -> bool:
        return pow(n, self.size, self.field.modulus) == 1 and n != 0

    def vanishing_eval(self, x: int) -> int:
        """z(x) = x^|H| - 1; zero exactly on H."""
        return self.field.sub(pow(x, self.size, self.field.modulus), 1)

    def vanishing_coeffs(self) -> list[int]:
        """Coefficients of x^|H| - 1, ascending."""
        out = [0] * (self.size + 1)
        out[0] = self.field.modulus - 1
        out[-1] = 1
        return out

    def lagrange_eval(self, n: int, x: int) -> int:
        """Lagrange basis polynomial for node n, evaluated at x.

        Concise form (n / |H|) * (x^|H| - 1) / (x - n); the removable
        singularity at x = n evaluates to 1.  Raises DomainMismatch when
        n is not in H.
        """
        f = self.field
        if not self.contains(n):
            raise DomainMismatch(f"Lagrange node {n} outside the domain")
        if x == n:
            return 1
        zx = self.vanishing_eval(x)
        if zx == 0:
            return 0  # x is some other domain element
        scale = f.mul(n, f.inv(f.reduce(self.size)))
        return f.mul(scale, f.mul(zx, f.inv(f.sub(x, n))))

    def lagrange_evals_all(self, x: int) -> list[int]:
        """All |H| basis values at x, batch-inverted in one pass."""
        f = self.field
        zx = self.vanishing_eval(x)
        if zx == 0:
            # x lies on H itself; the basis collapses to an indicator
            return [1 if x == h else 0 for h in self.elements]
        inv_n = f.inv(f.reduce(self.size))
        diffs = [f.sub(x, h) for h in self.elements]
        invs = batch_inv(f, diffs)
        zn = f.mul(zx, inv_n)
        return [f.mul(f.mul(h, zn), iv) for h, iv in zip(self.elements, invs)]

    def bivariate_lambda(self, x: int, y: int) -> int:
        """Symmetric two-point combiner over H.

        Off the diagonal: (z(X)Y - Xz(Y)) / (|H|(X - Y)).  On the
        diagonal the quotient is singular, so the equivalent
        sum-of-products of Lagrange basis values is used; the two forms
        agree everywhere both are defined.
        """
        f = self.field
        if x != y:
            num = f.sub(f.mul(self.vanishing_eval(x), y), f.mul(x, self.vanishing_eval(y)))
            den = f.mul(f.reduce(self.size), f.sub(x, y))
            return f.mul(num, f.inv(den))
        lx = self.lagrange_evals_all(x)
        acc = 0
        for v in lx:
            acc = f.add(acc, f.mul(v, v))
        return acc
