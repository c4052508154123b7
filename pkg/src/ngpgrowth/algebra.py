"""Exact univariate polynomials and rational functions over the integers.

Coefficients are Python ints, stored lowest degree first.  The zero
polynomial is the empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

from .errors import NoSeriesExpansionError, SingularSystemError, ZeroDenominatorError

Scalar = int


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(int(x) for x in coeffs)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, degree: int) -> "Polynomial":
        return cls([0] * degree + [c])

    # -- basic queries --------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no lowest-order term")

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "Polynomial":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return Polynomial(x // c for x in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, n: int) -> "Polynomial":
        """Keep terms of degree < n."""
        return Polynomial(self.coeffs[:n])

    # -- arithmetic -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(c * other for c in self.coeffs) if other else Polynomial()
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def pseudo_divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Return (q, r) with lc(other)**(deg self - deg other + 1) * self = q*other + r."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-division by zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Polynomial(), self
        lb = other.lc
        b = other.coeffs
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            # scale everything accumulated so far by lb, then eliminate r[k+db]
            t = r[k + db]
            q = [x * lb for x in q]
            r = [x * lb for x in r]
            q[k] += t
            for j, y in enumerate(b):
                r[k + j] -= t * y
        return Polynomial(q), Polynomial(r)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Division in Z[z]; raises ArithmeticError unless other divides self."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError("inexact polynomial division")
            return Polynomial()
        lb = b[-1]
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            t, rem = divmod(r[k + db], lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = t
            if t:
                for j, y in enumerate(b):
                    r[k + j] -= t * y
        if any(r):
            raise ArithmeticError("inexact polynomial division")
        return Polynomial(q)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)


PolyLike = Union[Polynomial, int, Sequence[int]]


def _as_poly(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.constant(x)
    return None


def poly(x: PolyLike) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.constant(x)
    return Polynomial(x)


Z = Polynomial((0, 1))
ONE = Polynomial((1,))
ZERO = Polynomial()


def format_poly(p: Polynomial, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(a: PolyLike, b: PolyLike, op: str) -> Polynomial:
    a, b = poly(a), poly(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def _prs_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    # primitive polynomial remainder sequence; inputs primitive
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = a.pseudo_divmod(b)
        a, b = b, r.primitive()
    return a


def _interpolate(h: int, x: int) -> Polynomial:
    """Read h as a number in balanced base x."""
    coeffs = []
    half = x // 2
    while h:
        c = h % x
        if c > half:
            c -= x
        coeffs.append(c)
        h = (h - c) // x
    return Polynomial(coeffs)


def _divides(d: Polynomial, f: Polynomial) -> bool:
    try:
        f.exact_div(d)
    except ArithmeticError:
        return False
    return True


def _heuristic_gcd(a: Polynomial, b: Polynomial) -> Polynomial | None:
    """GCD of primitive polynomials by evaluation at a large integer.

    Any candidate is confirmed by exact division, so a returned value is
    always correct; None means the heuristic gave up.
    """
    na = max(abs(c) for c in a.coeffs)
    nb = max(abs(c) for c in b.coeffs)
    bound = 2 * min(na, nb) + 29
    x = max(min(bound, 99 * isqrt(bound)), 2 * min(na // abs(a.lc), nb // abs(b.lc)) + 2)
    for _ in range(8):
        h = gcd(a(x), b(x))
        if h:
            cand = _interpolate(h, x).primitive()
            if not cand.is_zero() and _divides(cand, a) and _divides(cand, b):
                return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor in Z[z].

    Contents are handled separately; the primitive parts go through a
    heuristic evaluation GCD with a primitive-remainder-sequence fallback.
    The result has a positive leading coefficient; gcd(0, 0) is 0.
    """
    if a.is_zero():
        return b.primitive() * abs(b.content()) if b else ZERO
    if b.is_zero():
        return a.primitive() * abs(a.content())
    c = gcd(a.content(), b.content())
    a, b = a.primitive(), b.primitive()
    if a.degree == 0 or b.degree == 0:
        return Polynomial.constant(c)
    g = _heuristic_gcd(a, b)
    if g is None:
        g = _prs_gcd(a, b)
    return g * c


class RationalFunction:
    """Reduced quotient num/den of integer polynomials.

    Canonical form: gcd(num, den) is a unit of Z[z] and the lowest-order
    nonzero coefficient of den is positive.  Zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: PolyLike = 1, *, _reduced: bool = False):
        num, den = poly(num), poly(den)
        if den.is_zero():
            raise ZeroDenominatorError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den.coeffs[0] == 1

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominatorError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return other / self

    def expand(self, n_max: int) -> "CountTable":
        return expand(self, n_max)

    def __repr__(self):
        return f"RationalFunction({list(self.num.coeffs)}, {list(self.den.coeffs)})"

    def __str__(self):
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def to_json(self) -> dict:
        return {"numerator": list(self.num.coeffs), "denominator": list(self.den.coeffs)}


def _as_rat(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x, ONE, _reduced=True)
    if isinstance(x, int):
        return RationalFunction(Polynomial.constant(x), ONE, _reduced=True)
    return None


def _reduce(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    c = gcd(num.content(), den.content())
    if den.coeffs[den.low_order()] < 0:
        c = -c
    if c != 1:
        num = Polynomial(x // c for x in num.coeffs)
        den = Polynomial(x // c for x in den.coeffs)
    return num, den


def rat_normalize(num: PolyLike, den: PolyLike) -> RationalFunction:
    return RationalFunction(num, den)


class CountTable:
    """Exact counts indexed by word length 0..n_max."""

    __slots__ = ("counts",)

    def __init__(self, counts: Iterable[int]):
        object.__setattr__(self, "counts", tuple(counts))

    def __setattr__(self, name, value):
        raise AttributeError("CountTable is immutable")

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        if isinstance(other, CountTable):
            return self.counts == other.counts
        if isinstance(other, (list, tuple)):
            return self.counts == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.counts)

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def to_csv(self) -> str:
        lines = ["n,count"] + [f"{n},{c}" for n, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"CountTable({list(self.counts)})"


def series_coefficients(num: Polynomial, den: Polynomial, n_max: int) -> list:
    """Taylor coefficients of num/den at 0 up to z**n_max."""
    d0 = den.coeff(0)
    if d0 == 0:
        raise NoSeriesExpansionError("no power-series expansion at origin (den(0) = 0)")
    out: list = []
    dc = den.coeffs
    for i in range(n_max + 1):
        acc = num.coeff(i)
        for j in range(1, min(i, len(dc) - 1) + 1):
            acc -= dc[j] * out[i - j]
        if isinstance(acc, int) and acc % d0 == 0:
            out.append(acc // d0)
        else:
            out.append(Fraction(acc, d0))
    return out


def expand(f: RationalFunction, n_max: int) -> CountTable:
    return CountTable(series_coefficients(f.num, f.den, n_max))


def solve_linear(
    system: Sequence[Sequence[PolyLike]], rhs: Sequence[PolyLike]
) -> list[RationalFunction]:
    """Solve system * x = rhs over Q(z) by fraction-free (Bareiss) elimination.

    Rows are swapped only when the current pivot vanishes; the first row with a
    nonzero entry in the pivot column is taken.  Back-substitution stays in
    Z[z] and yields Cramer numerators over the determinant, which are then
    reduced.
    """
    n = len(system)
    if any(len(row) != n for row in system) or len(rhs) != n:
        raise ValueError("system must be square and match the right-hand side")
    if n == 0:
        return []
    a = [[poly(x) for x in row] + [poly(b)] for row, b in zip(system, rhs)]
    prev = ONE
    for k in range(n):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise SingularSystemError("singular system: zero determinant")
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n + 1):
                t = pivot * row_i[j]
                if f and row_k[j]:
                    t = t - f * row_k[j]
                row_i[j] = t.exact_div(prev) if prev != ONE else t
            row_i[k] = ZERO
        prev = pivot
    det = a[n - 1][n - 1]
    # y_i = det * x_i, all in Z[z]
    y: list[Polynomial] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = det * a[i][n]
        for j in range(i + 1, n):
            if a[i][j]:
                acc = acc - a[i][j] * y[j]
        y[i] = acc.exact_div(a[i][i])
    return [RationalFunction(yi, det) for yi in y]
