"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n)
reduced modulo the n-th cyclotomic polynomial.  The power basis is an
integral basis, so an element is an algebraic integer iff all of its
coordinates are integers.

Conductors are not minimized on construction; equality and hashing compare
values independently of the conductor they happen to be written in.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import ConductorMismatch, NonCoprimeIndex, NotApplicable, NotInSubfield, NotIntegral


# ---------------------------------------------------------------------------
# integer helpers

@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...) with p increasing."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def canonical_conductor(n: int) -> int:
    """Smallest m with Q(zeta_m) = Q(zeta_n)."""
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Obtained by dividing x^n - 1 exactly by Phi_d for every proper divisor d.
    """
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd] // den[dd]
        q[i] = c
        for j, a in enumerate(den):
            num[i + j] -= c * a
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_n^k for k = 0..n-1."""
    f = phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [1] + [0] * (f - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta and reduce the z^f term with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * poly[i] for i, c in enumerate(cur)]
    return tuple(rows)


@lru_cache(maxsize=None)
def ramanujan_traces(n: int) -> tuple[int, ...]:
    """Tr_{Q(zeta_n)/Q}(zeta_n^k) for k = 0..n-1 (Ramanujan sums)."""
    f = phi(n)
    out = []
    for k in range(n):
        q = n // gcd(n, k)
        out.append(mobius(q) * f // phi(q))
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_traces(n: int) -> tuple[int, ...]:
    """Tr(zeta_n^k) for the power basis exponents k < phi(n)."""
    return ramanujan_traces(n)[: phi(n)]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------

class CycNumber:
    """An element of Q(zeta_n) written in the power basis."""

    __slots__ = ("conductor", "coords", "_key")

    def __init__(self, conductor: int, coords):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != phi(conductor):
            raise ValueError(
                f"expected {phi(conductor)} coordinates for conductor {conductor}, got {len(coords)}")
        self.conductor = conductor
        self.coords = coords
        self._key = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, q, conductor: int = 1) -> "CycNumber":
        return cls(conductor, [_frac(q)] + [0] * (phi(conductor) - 1))

    @classmethod
    def from_exponent_vector(cls, n: int, vec) -> "CycNumber":
        """Reduce sum_k vec[k] * zeta_n^k (k may run past phi(n))."""
        table = _power_table(n)
        acc = [Fraction(0)] * phi(n)
        for k, c in enumerate(vec):
            if c:
                c = _frac(c)
                for i, t in enumerate(table[k % n]):
                    if t:
                        acc[i] += c * t
        return cls(n, acc)

    # -- basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def rational_value(self) -> Fraction:
        m = self.minimal()
        if m.conductor != 1:
            raise NotInSubfield(f"{self} is not rational")
        return m.coords[0]

    # -- field changes ----------------------------------------------------
    def lift(self, m: int) -> "CycNumber":
        n = self.conductor
        if m % n:
            raise ConductorMismatch(f"conductor {n} does not divide {m}")
        if m == n:
            return self
        step = m // n
        table = _power_table(m)
        acc = [Fraction(0)] * phi(m)
        for k, c in enumerate(self.coords):
            if c:
                for i, t in enumerate(table[(k * step) % m]):
                    if t:
                        acc[i] += c * t
        return CycNumber(m, acc)

    def try_descend(self, m: int) -> "CycNumber | None":
        n = self.conductor
        if n % m:
            raise ConductorMismatch(f"{m} does not divide conductor {n}")
        if m == n:
            return self
        pivots, inv = _descent_solver(m, n)
        xs = [self.coords[r] for r in pivots]
        ys = [sum((row[j] * xs[j] for j in range(len(xs)) if row[j]), Fraction(0)) for row in inv]
        cand = CycNumber(m, ys)
        if cand.lift(n).coords != self.coords:
            return None
        return cand

    def descend(self, m: int) -> "CycNumber":
        r = self.try_descend(m)
        if r is None:
            raise NotInSubfield(f"{self} does not lie in Q(zeta_{m})")
        return r

    def minimal(self) -> "CycNumber":
        """The same value written at its least conductor."""
        for m in divisors(self.conductor):
            if m % 4 == 2:
                continue
            r = self.try_descend(m)
            if r is not None:
                return r
        return self

    def at(self, m: int) -> "CycNumber":
        """Rewrite at conductor m, lifting or descending as needed."""
        if m % self.conductor == 0:
            return self.lift(m)
        x = self.minimal()
        if m % x.conductor:
            raise NotInSubfield(f"{self} does not lie in Q(zeta_{m})")
        return x.lift(m)

    # -- Galois action and traces -----------------------------------------
    def galois(self, j: int) -> "CycNumber":
        """Image under zeta_n -> zeta_n^j."""
        n = self.conductor
        if gcd(j, n) != 1:
            raise NonCoprimeIndex(f"gcd({j}, {n}) != 1")
        vec = [Fraction(0)] * n
        for k, c in enumerate(self.coords):
            if c:
                vec[(k * j) % n] += c
        return CycNumber.from_exponent_vector(n, vec)

    def conj(self) -> "CycNumber":
        return self.galois(-1)

    def trace(self) -> Fraction:
        """Tr_{Q(zeta_n)/Q} at the stored conductor n."""
        return sum((c * t for c, t in zip(self.coords, _basis_traces(self.conductor)) if c),
                   Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return CycNumber.rational(other, 1)
        return NotImplemented

    def _common(self, other):
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        return CycNumber(a.conductor, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.conductor, [-x for x in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _frac(other)
            return CycNumber(self.conductor, [x * q for x in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        n = a.conductor
        f = phi(n)
        if f == 1:
            return CycNumber(n, [a.coords[0] * b.coords[0]])
        prod = [Fraction(0)] * (2 * f - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return CycNumber.from_exponent_vector(n, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """1/x as the product of the other Galois conjugates over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        x = self.minimal()
        n = x.conductor
        rest = CycNumber.rational(1, n)
        for j in range(2, n):
            if gcd(j, n) == 1:
                rest = rest * x.galois(j)
        norm = (rest * x).rational_value()
        return CycNumber(n, [c / norm for c in rest.coords])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _frac(other)
            return CycNumber(self.conductor, [x / q for x in self.coords])
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycNumber.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def key(self) -> tuple:
        """Canonical, conductor-independent identity of the value."""
        if self._key is None:
            m = self.minimal()
            self._key = (m.conductor, m.coords)
        return self._key

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coords == other.coords
        a, b = self._common(other)
        return a.coords == b.coords

    def __hash__(self):
        return hash(self.key())

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        """Floating point value with zeta_n = exp(2 pi i / n); never used in exact paths."""
        w = cmath.exp(2j * cmath.pi / self.conductor)
        return complex(sum(float(c) * w ** k for k, c in enumerate(self.coords) if c))

    def __repr__(self):
        return f"CycNumber({self.conductor}, {format_cyc(self)!r})"

    def __str__(self):
        return format_cyc(self)


@lru_cache(maxsize=None)
def _descent_solver(m: int, n: int):
    """Rows of the lift matrix Q(zeta_m) -> Q(zeta_n) forming an invertible block, and its inverse."""
    fm = phi(m)
    cols = [CycNumber.from_exponent_vector(m, [0] * k + [1]).lift(n).coords for k in range(fm)]
    # matrix M[r][k] = coordinate r of lifted basis vector k
    rows = [[cols[k][r] for k in range(fm)] for r in range(phi(n))]
    pivots, chosen = [], []
    basis = []  # reduced copies for independence test
    for r, row in enumerate(rows):
        v = list(row)
        for piv, b in basis:
            if v[piv]:
                c = v[piv]
                v = [x - c * y for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            continue
        v = [x / v[nz] for x in v]
        basis.append((nz, v))
        pivots.append(r)
        chosen.append(row)
        if len(pivots) == fm:
            break
    inv = _invert([list(r) for r in chosen])
    return tuple(pivots), tuple(tuple(r) for r in inv)


def _invert(a):
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# module-level operations

def make_root(n: int, k: int = 1) -> CycNumber:
    if n < 1:
        raise ValueError("n must be positive")
    return CycNumber(n, _power_table(n)[k % n])


def zero(n: int = 1) -> CycNumber:
    return CycNumber.rational(0, n)


def one(n: int = 1) -> CycNumber:
    return CycNumber.rational(1, n)


def galois_apply(x: CycNumber, j: int) -> CycNumber:
    return x.galois(j)


def galois_trace(x: CycNumber) -> Fraction:
    """Trace as the literal sum of all Galois conjugates (slow reference route)."""
    n = x.conductor
    total = zero(n)
    for j in range(1, n + 1):
        if gcd(j, n) == 1:
            total = total + x.galois(j)
    return total.rational_value()


def trace_to_Q(x: CycNumber, d: int = 1) -> Fraction:
    """Tr_{Q(zeta_n^d)/Q}(x) where n is the conductor of x.

    x has to lie in Q(zeta_n^d) = Q(zeta_{n/d}).
    """
    n = x.conductor
    if n % d:
        raise ConductorMismatch(f"{d} does not divide conductor {n}")
    if d == 1:
        return x.trace()
    y = x.try_descend(n // d)
    if y is None:
        raise NotInSubfield(f"{x} does not lie in Q(zeta_{n // d})")
    return y.trace()


def lift_to_conductor(x: CycNumber, m: int) -> CycNumber:
    return x.lift(m)


def try_descend(x: CycNumber, m: int) -> CycNumber | None:
    return x.try_descend(m)


def is_integral(x: CycNumber) -> bool:
    return x.is_integral()


def is_totally_ramified(p: int, n: int) -> bool:
    """Whether p is totally ramified in Z[zeta_n] (residue field of size p)."""
    m = n
    while m % p == 0:
        m //= p
    return phi(m) == 1


def residue_mod_p(x: CycNumber, p: int) -> int:
    """Image of an integral x in O/P = F_p, P the unique prime above p.

    zeta of p-power order maps to 1 and zeta_2 to -1.
    """
    n = x.conductor
    if not is_totally_ramified(p, n):
        raise NotApplicable(f"{p} is not totally ramified in Z[zeta_{n}]")
    if not x.is_integral():
        raise NotIntegral(f"{x} is not integral")
    m = n
    while m % p == 0:
        m //= p
    alternate = m == 2
    total = 0
    for k, c in enumerate(x.coords):
        if c:
            total += -int(c) if alternate and k % 2 else int(c)
    return total % p


# ---------------------------------------------------------------------------
# text encodings

def _coord_json(c: Fraction):
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_json(x: CycNumber) -> dict:
    return {"conductor": x.conductor, "coords": [_coord_json(c) for c in x.coords]}


def from_json(obj) -> CycNumber:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return CycNumber.rational(_frac(obj))
    if not isinstance(obj, dict) or "conductor" not in obj or "coords" not in obj:
        raise ValueError(f"not a CycNumber encoding: {obj!r}")
    n = obj["conductor"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"bad conductor {n!r}")
    coords = obj["coords"]
    for c in coords:
        if isinstance(c, float) or isinstance(c, bool):
            raise ValueError(f"coordinate {c!r} is not an exact rational")
    return CycNumber(n, [_frac(c) for c in coords])


def format_cyc(x: CycNumber) -> str:
    """Human-readable form in GAP notation, e.g. ``-1-2*E(4)``."""
    x = x.minimal()
    n = x.conductor
    terms = []
    for k, c in enumerate(x.coords):
        if not c:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = f"E({n})"
        else:
            mono = f"E({n})^{k}"
        if not mono:
            s = str(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}"
        terms.append(s)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out
