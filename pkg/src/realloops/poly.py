"""Exact univariate polynomials over Q.

Coefficients are :class:`fractions.Fraction` stored in ascending order of
power.  Everything here is exact: gcds, square-free structure, Sturm
chains, real root isolation and the Cauchy index over the projective line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]
Endpoint = Union[int, Fraction, float]  # floats only for +/-inf


class RootAtEndpointError(ValueError):
    """A Sturm query endpoint is itself a root; the caller must perturb it."""


class CommonRealRootError(ValueError):
    """Two polynomials share a real root where the operation forbids it."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        if not math.isfinite(c):
            raise ValueError(f"non-finite coefficient {c!r}")
        return Fraction(c)
    return Fraction(c)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -----------------------------------------------------
    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Polynomial":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Polynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Polynomial(c / lc for c in self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divrem(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Polynomial(), self
        lcb = other.coeffs[-1]
        bco = other.coeffs
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            c = c / lcb
            quot[k] = c
            for j in range(db + 1):
                rem[k + j] -= c * bco[j]
        return Polynomial(quot), Polynomial(rem[:db])

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def scale(self, c: Number) -> "Polynomial":
        c = _frac(c)
        return Polynomial(c * a for a in self.coeffs)

    # -- evaluation -------------------------------------------------------
    def __call__(self, x: Number) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def sign_at(self, x: Endpoint) -> int:
        """Sign of p(x), with x allowed to be +/-inf."""
        if not self.coeffs:
            return 0
        if isinstance(x, float) and math.isinf(x):
            s = 1 if self.lc > 0 else -1
            if x < 0 and self.degree % 2:
                s = -s
            return s
        v = self(x)
        return (v > 0) - (v < 0)

    def homogeneous_evalf(self, s: float, c: float, d: int) -> float:
        """Evaluate sum a_k s^k c^(d-k), the degree-d homogenization."""
        acc = 0.0
        for k, a in enumerate(self.coeffs):
            acc += float(a) * s**k * c ** (d - k)
        return acc

    def compose_mobius(self, c: Number, d: int) -> "Polynomial":
        """Return t^d * p(c - 1/t) as a polynomial in t (requires d >= degree)."""
        c = _frac(c)
        lin = Polynomial((-1, c))  # c*t - 1
        out = Polynomial()
        powers = [Polynomial((1,))]
        for _ in range(self.degree):
            powers.append(powers[-1] * lin)
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            term = powers[k] * Polynomial([0] * (d - k) + [1])
            out = out + term.scale(a)
        return out

    # -- display / io -----------------------------------------------------
    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls(Fraction(str(c)) for c in data)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef}{mono}")
            else:
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign}{abs(c)}{'*' + mono if mono else ''}")
        s = "".join(terms).lstrip("+")
        return f"Polynomial({s})"


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial((p,))


X = Polynomial.x()


# -- gcd and square-free structure -------------------------------------------

# Remainder sequences run on integer coefficient lists, each step replaced by
# its primitive part.  Pseudo-division multiplies by |lc|, never by a negative
# number, so every term is a positive multiple of the rational remainder and
# Sturm sign counts are unchanged.  Exact rational Euclid is far slower here
# because of coefficient growth.

def _int_primitive(p: Polynomial) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    return _prim(ints)


def _prim(ints: list[int]) -> list[int]:
    g = 0
    for c in ints:
        g = math.gcd(g, c)
        if g == 1:
            return ints
    return [c // g for c in ints] if g > 1 else ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    alb, sb = abs(lb), (1 if lb > 0 else -1)
    while len(r) - 1 >= db and r:
        c = r[-1] * sb
        k = len(r) - 1 - db
        r = [alb * v for v in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _modp_coprime(a: Polynomial, b: Polynomial) -> bool:
    """True if a gcd over a prime field proves gcd(a, b) = 1; False means unknown."""
    for prime in (2305843009213693951, 4611686018427387847, 9223372036854775783):
        bad = any(c.denominator % prime == 0 for c in a.coeffs + b.coeffs)
        if bad or a.lc.numerator % prime == 0 or b.lc.numerator % prime == 0:
            continue
        u = [c.numerator * pow(c.denominator, -1, prime) % prime for c in a.coeffs]
        v = [c.numerator * pow(c.denominator, -1, prime) % prime for c in b.coeffs]
        while v:
            inv = pow(v[-1], -1, prime)
            while len(u) >= len(v):
                c = u[-1] * inv % prime
                k = len(u) - len(v)
                for j in range(len(v)):
                    u[k + j] = (u[k + j] - c * v[j]) % prime
                while u and u[-1] == 0:
                    u.pop()
            u, v = v, u
        return len(u) == 1
    return False


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of a and b."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero() or b.is_zero():
        return (b if a.is_zero() else a).monic()
    if min(a.degree, b.degree) == 0 or _modp_coprime(a, b):
        return Polynomial((1,))
    u, v = _int_primitive(a), _int_primitive(b)
    if len(u) < len(v):
        u, v = v, u
    while v:
        u, v = v, _prim(_int_prem(u, v))
    return Polynomial(u).monic()


def gcd_many(polys: Sequence[Polynomial]) -> Polynomial:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of zero polynomials is undefined")
    # smallest degree first keeps the remainder sequence short
    polys.sort(key=lambda p: p.degree)
    g = polys[0].monic()
    for p in polys[1:]:
        if g.degree == 0:
            break
        g = gcd(g, p)
    return g


def square_free_part(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's square-free decomposition, factors monic and of positive degree."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    fp = f.derivative()
    a = gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def squarefree(p: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of p."""
    if p.degree <= 0:
        return Polynomial((1,))
    return p.monic() // gcd(p, p.derivative())


# -- Sturm machinery ---------------------------------------------------------

def sturm_chain(p: Polynomial, q: Polynomial | None = None) -> list[Polynomial]:
    """Generalized Sturm sequence p, q, -rem(p, q), ... up to positive factors; q defaults to p'."""
    if q is None:
        q = p.derivative()
    chain = [p]
    if q.is_zero():
        return chain
    chain.append(q)
    u, v = _int_primitive(p), _int_primitive(q)
    while True:
        r = _int_prem(u, v)
        if not r:
            return chain
        u, v = v, _prim([-c for c in r])
        chain.append(Polynomial(v))


def sign_variations(chain: Sequence[Polynomial], x: Endpoint) -> int:
    signs = [s for s in (p.sign_at(x) for p in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _check_endpoint(p: Polynomial, a: Endpoint) -> None:
    if isinstance(a, float) and math.isinf(a):
        return
    if p(a) == 0:
        raise RootAtEndpointError(f"endpoint {a} is a root; perturb it")


def _endpoint(a) -> Endpoint:
    if isinstance(a, float):
        if math.isinf(a):
            return a
        return Fraction(a)
    if a is None:
        raise ValueError("use +/-math.inf for unbounded endpoints")
    return _frac(a)


def sturm_root_count(p: Polynomial, interval: tuple = (-math.inf, math.inf)) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    a, b = (_endpoint(v) for v in interval)
    if not a < b:
        raise ValueError("need a < b")
    _check_endpoint(p, a)
    _check_endpoint(p, b)
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p)
    return sign_variations(chain, a) - sign_variations(chain, b)


@dataclass(frozen=True)
class RootInterval:
    """Closed isolating interval [lo, hi] around one distinct real root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.mid)


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every real root of p lies in (-B, B)."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


_SPLITS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5),
           Fraction(3, 5), Fraction(3, 7), Fraction(4, 7))


def _split_point(sqf: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    for s in _SPLITS:
        m = lo + (hi - lo) * s
        if sqf(m) != 0:
            return m
    # sqf has at most deg roots; this cannot be reached for small degrees
    k = 8
    while True:
        m = lo + (hi - lo) * Fraction(k, 2 * k + 1)
        if sqf(m) != 0:
            return m
        k += 1


def _isolate_squarefree(sqf: Polynomial) -> list[tuple[Fraction, Fraction]]:
    if sqf.degree <= 0:
        return []
    chain = sturm_chain(sqf)
    bound = cauchy_bound(sqf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, sign_variations(chain, -bound), sign_variations(chain, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _split_point(sqf, lo, hi)
        vmid = sign_variations(chain, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort()
    return out


def refine(p: Polynomial, iv: RootInterval, width: Number) -> RootInterval:
    """Bisect an isolating interval of p down to the requested width."""
    width = _frac(width)
    if iv.is_exact() or iv.width <= width:
        return iv
    sqf = squarefree(p)
    lo, hi = iv.lo, iv.hi
    slo = sqf.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sqf.sign_at(mid)
        if sm == 0:
            return RootInterval(mid, mid, iv.multiplicity)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi, iv.multiplicity)


def isolate_real_roots(p: Polynomial) -> list[RootInterval]:
    """Disjoint isolating intervals, ascending, with multiplicities.

    Rational roots hit exactly during bisection are returned as degenerate
    intervals ``lo == hi``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree <= 0:
        return []
    factors = square_free_part(p)
    sqf = Polynomial((1,))
    for f, _ in factors:
        sqf = sqf * f
    out = []
    for lo, hi in _isolate_squarefree(sqf):
        mult = _multiplicity_in(factors, lo, hi)
        out.append(RootInterval(lo, hi, mult))
    return out


def _multiplicity_in(factors, lo: Fraction, hi: Fraction) -> int:
    # each factor is square-free with at most one root here, so it changes sign
    for f, m in factors:
        if f.sign_at(lo) != f.sign_at(hi):
            return m
    raise AssertionError("isolating interval contains no root of any factor")


def real_roots_float(p: Polynomial, tol: float = 1e-15) -> list[tuple[float, int]]:
    """Real roots as floats (refined exactly first) with multiplicities."""
    out = []
    for iv in isolate_real_roots(p):
        w = max(abs(iv.mid), Fraction(1)) * Fraction(tol)
        iv = refine(p, iv, w)
        out.append((float(iv.mid), iv.multiplicity))
    return out


# -- Cauchy index ------------------------------------------------------------

def has_real_root(p: Polynomial) -> bool:
    if p.is_zero():
        return True
    if p.degree <= 0:
        return False
    return sturm_root_count(p) > 0


def cauchy_index(p: Polynomial, q: Polynomial) -> int:
    """Cauchy index of q/p over the whole projective parameter line.

    This is the topological degree of ``x -> [p(x) : q(x)]`` as a self-map of
    RP^1, read in the affine chart p/q, so that ``(p, q) = (x, 1)`` gives +1.
    A pole of q/p at x = infinity is accounted for by moving infinity to a
    finite, orientation-preserving chart ``x = c - 1/t``.
    """
    if p.is_zero() or q.is_zero():
        g = q if p.is_zero() else p
        if has_real_root(g):
            raise CommonRealRootError("constant map data vanishes at a real point")
        return 0
    if has_real_root(gcd(p, q)):
        raise CommonRealRootError("p and q share a real root")
    d = max(p.degree, q.degree)
    c = _nonroot(p)
    pt = p.compose_mobius(c, d)
    qt = q.compose_mobius(c, d)
    chain = sturm_chain(pt, qt)
    return sign_variations(chain, -math.inf) - sign_variations(chain, math.inf)


def _nonroot(p: Polynomial) -> Fraction:
    k = 0
    while True:
        for c in ((k,) if k == 0 else (k, -k)):
            if p(c) != 0:
                return Fraction(c)
        k += 1
