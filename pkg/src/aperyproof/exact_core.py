"""Exact arithmetic: dense polynomials, rational functions, partial fractions.

Scalars are :class:`fractions.Fraction`. Polynomials are stored low degree
first, so ``Poly([1, 0, 3])`` is ``1 + 3t^2``. The rational functions that
occur in this package are all products of linear factors, and
:class:`ProductForm` keeps that factorisation around so that partial
fractions and telescoping checks never have to factor anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Iterable, Mapping, Sequence, Union

BigRat = Fraction
Scalar = Union[int, Fraction]

NEG_INF = float("-inf")


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at one of its poles."""

    def __init__(self, pole):
        super().__init__(f"evaluation at pole t = {pole}")
        self.pole = pole


class DecompositionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers (low degree first, no trailing zeros)
# ---------------------------------------------------------------------------

def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _imul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _imul_linear(p: list[int], a: int, b: int) -> list[int]:
    """p * (a t + b)."""
    out = [0] * (len(p) + 1)
    for i, x in enumerate(p):
        out[i] += b * x
        out[i + 1] += a * x
    return out


def _icontent(p: Sequence[int]) -> int:
    g = 0
    for x in p:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _iprimitive(p: list[int]) -> list[int]:
    g = _icontent(p)
    if g > 1:
        p = [x // g for x in p]
    if p and p[-1] < 0:
        p = [-x for x in p]
    return p


def _iprem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    e = len(f) - len(g) + 1
    while r and len(r) - 1 >= dg:
        shift = len(r) - 1 - dg
        top = r[-1]
        r = [x * lc for x in r]
        for i, y in enumerate(g):
            r[i + shift] -= top * y
        _trim(r)
        e -= 1
    if e > 0:
        m = lc ** e
        r = [x * m for x in r]
    return r


def _igcd_poly(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd of two integer polynomials by the subresultant PRS."""
    if not f:
        return _iprimitive(list(g))
    if not g:
        return _iprimitive(list(f))
    if len(f) < len(g):
        f, g = g, f
    f, g = _iprimitive(list(f)), _iprimitive(list(g))
    gl, h = 1, 1
    while True:
        delta = len(f) - len(g)
        r = _iprem(f, g)
        if not r:
            return _iprimitive(g)
        if len(r) == 1:
            return [1]
        div = gl * h ** delta
        f, g = g, [x // div for x in r]
        gl = f[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gl
        else:
            h = gl ** delta // h ** (delta - 1)


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs: tuple[Fraction, ...] = tuple(_trim([Fraction(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = tuple(_trim(coeffs))
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], den: int = 1) -> "Poly":
        return cls._raw([Fraction(c, den) for c in coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_ints(self) -> tuple[list[int], int]:
        """Return (integer coefficients, d) with self = ints / d."""
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return [c.numerator * (d // c.denominator) for c in self.coeffs], d

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*t" if i == 1 else f"*t^{i}"))
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly._raw([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, da = self.to_ints()
        b, db = other.to_ints()
        return Poly.from_ints(_imul(a, b), da * db)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c: Scalar) -> "Poly":
        """Return p(t + c)."""
        c = Fraction(c)
        out: list[Fraction] = []
        for a in reversed(self.coeffs):
            # out = out * (t + c) + a
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, x in enumerate(out):
                nxt[i] += c * x
                nxt[i + 1] += x
            nxt[0] += a
            out = nxt
        return Poly._raw(out)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        dg = len(other.coeffs) - 1
        for s in range(dq, -1, -1):
            top = r[s + dg]
            if top:
                f = top / lc
                q[s] = f
                for i, y in enumerate(other.coeffs):
                    r[i + s] -= f * y
        return Poly._raw(q), Poly._raw(r[:dg])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        return self * (1 / self.lc) if self.coeffs else self

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; subresultant sequence on the integer primitive parts."""
        g = _igcd_poly(self.to_ints()[0], other.to_ints()[0])
        return Poly(g).monic() if g else Poly()


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced quotient num/den with monic den.

    ``factored`` optionally carries the same function as a :class:`ProductForm`.
    """

    __slots__ = ("num", "den", "factored")

    def __init__(self, num, den=None, *, _reduced: bool = False, factored: "ProductForm | None" = None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        elif not _reduced:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num: Poly = num
        self.den: Poly = den
        self.factored = factored

    @classmethod
    def from_product(cls, pf: "ProductForm") -> "RatFunc":
        num, den = pf.expand()
        return cls(num, den, _reduced=True, factored=pf)

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r} / {self.den!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other)

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True,
                       factored=self.factored.scaled(-1) if self.factored else None)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        fac = None
        if self.factored is not None and other.factored is not None:
            fac = self.factored * other.factored
            return RatFunc.from_product(fac)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFunc(other.den, other.num)

    def shift(self, c: int = 1) -> "RatFunc":
        """Return f(t + c)."""
        if self.factored is not None:
            return RatFunc.from_product(self.factored.shift(c))
        return RatFunc(self.num.shift(c), self.den.shift(c), _reduced=True)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def eval(self, t: Scalar) -> Fraction:
        d = self.den(t)
        if d == 0:
            raise PoleError(t)
        return self.num(t) / d

    __call__ = eval

    def eval_derivative(self, t: Scalar) -> Fraction:
        """f'(t) without reducing the derivative."""
        n, d = self.num, self.den
        dv = d(t)
        if dv == 0:
            raise PoleError(t)
        return (n.derivative()(t) * dv - n(t) * d.derivative()(t)) / (dv * dv)


def rf_arithmetic(op: str, *args):
    """Dispatch ``add``, ``mul``, ``shift1``, ``derivative`` or ``eval``."""
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "shift1":
        return args[0].shift(1)
    if op == "derivative":
        return args[0].derivative()
    if op == "eval":
        return args[0].eval(args[1])
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# ProductForm: scalar * cofactor(t) * prod (a t + b)^e
# ---------------------------------------------------------------------------

def linear_key(a: int, b: int) -> tuple[tuple[int, int], int]:
    """Normalise a t + b to (key, unit) with key = (a', b'), a' > 0, gcd 1."""
    if a == 0:
        raise ValueError("not a linear factor")
    g = gcd(a, b)
    if a < 0:
        g = -g
    return (a // g, b // g), g


@dataclass(frozen=True)
class ProductForm:
    """scalar * cofactor(t) * prod over keys (a t + b)^e, e in Z \\ {0}.

    The cofactor never vanishes at a root of a denominator key, so
    :meth:`expand` produces a reduced fraction.
    """

    scalar: Fraction
    cofactor: Poly
    exps: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def build(cls, scalar: Scalar = 1, cofactor: Poly | None = None,
              factors: Iterable[tuple[int, int, int]] = ()) -> "ProductForm":
        """``factors`` holds (a, b, e) meaning (a t + b)^e."""
        scalar = Fraction(scalar)
        ex: dict[tuple[int, int], int] = {}
        for a, b, e in factors:
            key, unit = linear_key(a, b)
            scalar *= Fraction(unit) ** e
            ex[key] = ex.get(key, 0) + e
        return cls._make(scalar, cofactor if cofactor is not None else Poly([1]), ex)

    @classmethod
    def _make(cls, scalar: Fraction, cofactor: Poly, ex: dict) -> "ProductForm":
        if cofactor.is_zero() or scalar == 0:
            return cls(Fraction(0), Poly(), ())
        # absorb the cofactor's content and cancel roots against denominators
        lc = cofactor.lc
        if lc != 1:
            scalar *= lc
            cofactor = cofactor * (1 / lc)
        for key in sorted(ex):
            a, b = key
            while ex.get(key, 0) < 0 and cofactor.degree > 0 and cofactor(Fraction(-b, a)) == 0:
                q, _ = cofactor.divmod(Poly([Fraction(b, a), 1]))
                cofactor = q
                scalar *= Fraction(1, a)
                ex[key] += 1
        return cls(scalar, cofactor, tuple(sorted((k, e) for k, e in ex.items() if e)))

    def is_zero(self) -> bool:
        return self.scalar == 0

    def scaled(self, c: Scalar) -> "ProductForm":
        return ProductForm._make(self.scalar * c, self.cofactor, dict(self.exps))

    def __mul__(self, other: "ProductForm") -> "ProductForm":
        ex = dict(self.exps)
        for k, e in other.exps:
            ex[k] = ex.get(k, 0) + e
        return ProductForm._make(self.scalar * other.scalar, self.cofactor * other.cofactor, ex)

    def shift(self, c: int) -> "ProductForm":
        """Return f(t + c) for an integer c."""
        ex = {}
        scalar = self.scalar
        for (a, b), e in self.exps:
            key, unit = linear_key(a, b + a * c)
            scalar *= Fraction(unit) ** e
            ex[key] = ex.get(key, 0) + e
        return ProductForm._make(scalar, self.cofactor.shift(c), ex)

    def expand(self) -> tuple[Poly, Poly]:
        num = [1]
        den = [1]
        for (a, b), e in self.exps:
            for _ in range(abs(e)):
                if e > 0:
                    num = _imul_linear(num, a, b)
                else:
                    den = _imul_linear(den, a, b)
        n = Poly.from_ints(num) * self.cofactor * self.scalar
        return n, Poly.from_ints(den)

    def eval(self, t: Scalar) -> Fraction:
        t = Fraction(t)
        acc = self.scalar * self.cofactor(t)
        zero = acc == 0
        for (a, b), e in self.exps:
            v = a * t + b
            if v == 0:
                if e < 0:
                    raise PoleError(t)
                zero = True
            elif not zero:
                acc *= v ** e
        return Fraction(0) if zero else acc

    def zero_order(self, t0: Scalar) -> int:
        """Order of vanishing at t0 (negative for a pole)."""
        t0 = Fraction(t0)
        order = 0
        for (a, b), e in self.exps:
            if a * t0 + b == 0:
                order += e
        if order >= 0:
            c = self.cofactor
            while c.degree > 0 and c(t0) == 0:
                c = c // Poly([-t0, 1])
                order += 1
        return order

    def pole_orders(self) -> dict[int, int]:
        """Poles at integer points t = -k, as {k: order}."""
        out = {}
        for (a, b), e in self.exps:
            if e < 0:
                if a != 1:
                    raise DecompositionError(f"non-integral pole of ({a}t + {b})")
                out[b] = -e
        return out

    def taylor_at(self, t0: int, terms: int, skip: tuple[int, int] | None = None) -> list[Fraction]:
        """First ``terms`` Taylor coefficients at t0, omitting the factor ``skip``."""
        num = [1] + [0] * (terms - 1)
        den = [1] + [0] * (terms - 1)
        for key, e in self.exps:
            if key == skip:
                continue
            a, b = key
            c = a * t0 + b
            tgt = num if e > 0 else den
            for _ in range(abs(e)):
                # tgt *= (c + a x) truncated
                for i in range(terms - 1, 0, -1):
                    tgt[i] = tgt[i] * c + tgt[i - 1] * a
                tgt[0] *= c
        if den[0] == 0:
            raise PoleError(t0)
        co = self.cofactor.shift(t0).coeffs[:terms]
        co = list(co) + [Fraction(0)] * (terms - len(co))
        prod = [sum((co[i] * num[j - i] for i in range(j + 1)), Fraction(0)) for j in range(terms)]
        # series division by den
        out: list[Fraction] = []
        d0 = den[0]
        for j in range(terms):
            acc = prod[j] - sum((out[i] * den[j - i] for i in range(j)), Fraction(0))
            out.append(acc / d0)
        return [x * self.scalar for x in out]


# ---------------------------------------------------------------------------
# clearing denominators over a sum of product forms
# ---------------------------------------------------------------------------

def clear_denominators(terms: Sequence[tuple[Scalar, ProductForm]]) -> list[list[int]]:
    """Integer numerators of sum(c_i * f_i) over a shared denominator.

    Every term is multiplied by the same nonzero rational function (the
    lcm of the denominators divided by the common numerator factors and a
    common scalar), so the sum vanishes iff the sum of the returned integer
    polynomials vanishes.
    """
    live = [(Fraction(c) * f.scalar, f) for c, f in terms if c and not f.is_zero()]
    if not live:
        return [[] for _ in terms]
    keys = sorted({k for _, f in live for k, _ in f.exps})
    shift = {}
    for k in keys:
        lo = min(dict(f.exps).get(k, 0) for _, f in live)
        shift[k] = -lo
    ints = [f.cofactor.to_ints() for _, f in live]
    scal_den = 1
    for (s, _), (_, d) in zip(live, ints):
        scal_den = lcm(scal_den, (s / d).denominator)
    out_live = []
    for (s, f), (p, d) in zip(live, ints):
        ex = dict(f.exps)
        m = (s / d * scal_den).numerator
        p = [x * m for x in p]
        for k in keys:
            e = ex.get(k, 0) + shift[k]
            a, b = k
            for _ in range(e):
                p = _imul_linear(p, a, b)
        out_live.append(p)
    it = iter(out_live)
    return [next(it) if (c and not f.is_zero()) else [] for c, f in terms]


def sum_int_polys(polys: Iterable[Sequence[int]]) -> list[int]:
    out: list[int] = []
    for p in polys:
        if len(p) > len(out):
            out.extend([0] * (len(p) - len(out)))
        for i, x in enumerate(p):
            out[i] += x
    return _trim(out)


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartialFraction:
    """sum over (k, j) of terms[(k, j)] / (t + k)^j, plus polynomial_part."""

    terms: Mapping[tuple[int, int], Fraction]
    polynomial_part: Poly = field(default_factory=Poly)

    def coefficient(self, k: int, j: int) -> Fraction:
        return self.terms.get((k, j), Fraction(0))

    def poles(self) -> list[int]:
        return sorted({k for k, _ in self.terms})

    def max_order(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def nonzero(self) -> dict[tuple[int, int], Fraction]:
        return {kj: c for kj, c in self.terms.items() if c}

    def reconstruct(self) -> RatFunc:
        orders: dict[int, int] = {}
        for (k, j) in self.terms:
            orders[k] = max(orders.get(k, 0), j)
        num, den = _reconstruct_ints(self.terms, orders)
        return RatFunc(num, den) + RatFunc(self.polynomial_part)


def _synthetic_div(p: list[int], k: int) -> list[int]:
    """Exact quotient p / (t + k) for integer p divisible by (t + k)."""
    n = len(p) - 1
    q = [0] * n
    carry = 0
    for i in range(n, 0, -1):
        carry = p[i] - k * carry if i < n else p[i]
        q[i - 1] = carry
    return q


def _reconstruct_ints(terms: Mapping[tuple[int, int], Fraction], orders: Mapping[int, int]) -> tuple[Poly, Poly]:
    big = [1]
    for k, m in sorted(orders.items()):
        for _ in range(m):
            big = _imul_linear(big, 1, k)
    d = 1
    for c in terms.values():
        d = lcm(d, c.denominator)
    acc: list[int] = []
    for k, m in sorted(orders.items()):
        part = big
        for j in range(1, m + 1):
            part = _synthetic_div(part, k)
            c = terms.get((k, j), Fraction(0))
            if c:
                ci = c.numerator * (d // c.denominator)
                acc = sum_int_polys([acc, [ci * x for x in part]])
    return Poly.from_ints(acc, d), Poly.from_ints(big)


def _taylor_general(f: RatFunc, k: int, m: int) -> list[Fraction]:
    """Taylor coefficients at t = -k of (t + k)^m f(t), first m of them."""
    den = f.den
    order = 0
    while order < m:
        q, r = den.divmod(Poly([k, 1]))
        if not r.is_zero():
            break
        den, order = q, order + 1
    # a requested order above the actual one pads the expansion with zeros
    num = [Fraction(0)] * (m - order) + list(f.num.shift(-k).coeffs[:m]) + [Fraction(0)] * m
    dd = list(den.shift(-k).coeffs[:m]) + [Fraction(0)] * m
    if dd[0] == 0:
        raise DecompositionError(f"pole at -{k} has order above {m}")
    out: list[Fraction] = []
    for j in range(m):
        acc = num[j] - sum((out[i] * dd[j - i] for i in range(j)), Fraction(0))
        out.append(acc / dd[0])
    return out


def pf_decompose(f: RatFunc, poles: Sequence[tuple[int, int]] | None = None) -> PartialFraction:
    """Partial fractions of f at integer poles t = -k.

    The coefficient of (t + k)^-j is the (m - j)-th Taylor coefficient of
    (t + k)^m f(t) at t = -k. When ``f`` carries a product form the
    expansion is done factor by factor; otherwise the denominator is divided
    by (t + k)^m and the Taylor shift is taken. The reconstruction is always
    checked exactly.
    """
    use_factored = f.factored is not None
    if poles is None:
        if not use_factored:
            raise DecompositionError("pole list required for functions without a product form")
        poles = sorted(f.factored.pole_orders().items())
    poles = [(int(k), int(m)) for k, m in poles]
    requested = dict(poles)
    if use_factored:
        for k, e in f.factored.pole_orders().items():
            if requested.get(k, 0) < e:
                raise DecompositionError(f"pole at -{k} has order {e} above the requested one")
    if not f.is_zero() and f.num.degree >= f.den.degree:
        raise DecompositionError("numerator degree must be below denominator degree")
    terms: dict[tuple[int, int], Fraction] = {}
    for k, m in poles:
        if use_factored:
            e = dict(f.factored.exps).get((1, k), 0)
            lead = m + e
            tc = f.factored.taylor_at(-k, m, skip=(1, k))
            tc = ([Fraction(0)] * lead + tc)[:m]
        else:
            tc = _taylor_general(f, k, m)
        for j in range(1, m + 1):
            terms[(k, j)] = tc[m - j]
    pf = PartialFraction(terms)
    # exact reconstruction: num * (B / den) == sum c_kj * B / (t+k)^j
    orders = {k: m for k, m in poles}
    rec_num, big = _reconstruct_ints(terms, orders)
    cof, rem = big.divmod(f.den)
    if not rem.is_zero():
        raise DecompositionError("denominator does not divide the pole product")
    if f.num * cof != rec_num:
        raise DecompositionError("nonzero polynomial part in reconstruction")
    return pf


# ---------------------------------------------------------------------------
# lcm(1..n) and harmonic sums
# ---------------------------------------------------------------------------

def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@dataclass(frozen=True)
class DenominatorLCM:
    n: int
    value: int

    def __int__(self) -> int:
        return self.value


def lcm_upto(n: int) -> DenominatorLCM:
    """lcm(1, ..., n) as the product of p^floor(log_p n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return DenominatorLCM(n, dn(n))


@lru_cache(maxsize=None)
def dn(n: int) -> int:
    value = 1
    for p in primes_upto(n):
        q = p
        while q * p <= n:
            q *= p
        value *= q
    return value


@lru_cache(maxsize=None)
def harmonic(j: int, k: int) -> Fraction:
    """H_j(k) = sum_{l=1}^k l^-j."""
    if k <= 0:
        return Fraction(0)
    return harmonic(j, k - 1) + Fraction(1, k ** j)


# ---------------------------------------------------------------------------
# exact linear systems
# ---------------------------------------------------------------------------

class InconsistentSystem(ValueError):
    pass


class RankDeficient(ValueError):
    pass


def solve_linear(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Fraction]:
    """Unique solution of an overdetermined exact system, else raise."""
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for col in range(ncols):
        p = next((r for r in range(piv_row, len(m)) if m[r][col]), None)
        if p is None:
            continue
        m[piv_row], m[p] = m[p], m[piv_row]
        pv = m[piv_row][col]
        m[piv_row] = [x / pv for x in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, len(m)):
        if m[r][ncols]:
            raise InconsistentSystem("no solution")
    if len(pivots) < ncols:
        raise RankDeficient(f"rank {len(pivots)} < {ncols} unknowns")
    return [m[i][ncols] for i in range(ncols)]
