"""Commutative Artinian chain rings and their finite products.

A chain ring is Z/p^m or k[x]/(x^m) with k a prime field or the rationals;
it is local with maximal ideal generated by the uniformizer (p or x) and
every element is a unit times a power of the uniformizer.  Composite Z/n
splits into chain components by the Chinese remainder theorem.

Elements are stored as canonical representatives: integers in [0, p^m) for
the integer kind, coefficient tuples of degree < m for the polynomial kinds.
A product-ring element is a tuple with one representative per component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .smith import IntegerDomain, PolynomialDomain, PrimeField, RationalField

KIND_INT = "Z"    # Z/p^m, uniformizer p
KIND_FP = "F"     # F_p[x]/(x^m), uniformizer x
KIND_RAT = "Q"    # Q[x]/(x^m), uniformizer x


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def crt_split(n: int) -> list[tuple[int, int]]:
    """Prime-power factorization of n >= 2 as (p, m) pairs, p ascending."""
    if n < 2:
        raise ValidationError(f"crt_split needs n >= 2, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            out.append((d, m))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class ChainRing:
    """One chain-ring component: Z/p^m, F_p[x]/(x^m) or Q[x]/(x^m)."""

    kind: str
    p: int | None
    m: int

    def __post_init__(self):
        if self.kind not in (KIND_INT, KIND_FP, KIND_RAT):
            raise ValidationError(f"unknown chain ring kind {self.kind!r}")
        if self.m < 1:
            raise ValidationError("chain ring length m must be >= 1")
        if self.kind in (KIND_INT, KIND_FP):
            if self.p is None or not is_prime(self.p):
                raise ValidationError(f"{self.p} is not prime")
        elif self.p is not None:
            raise ValidationError("rational-coefficient component takes no prime")

    # -- structure ---------------------------------------------------------

    def domain(self):
        """The ambient PID used for lifting (Z or k[x])."""
        if self.kind == KIND_INT:
            return IntegerDomain()
        if self.kind == KIND_FP:
            return PolynomialDomain(PrimeField(self.p))
        return PolynomialDomain(RationalField())

    def descriptor(self) -> str:
        if self.kind == KIND_INT:
            return f"Z/{self.p ** self.m}"
        if self.kind == KIND_FP:
            return f"F{self.p}[x]/(x^{self.m})"
        return f"Q[x]/(x^{self.m})"

    def uniformizer_symbol(self) -> str:
        return str(self.p) if self.kind == KIND_INT else "x"

    def size(self) -> int | None:
        """Number of elements; None for the infinite rational kind."""
        if self.kind == KIND_RAT:
            return None
        return self.p ** self.m

    # -- element arithmetic (canonical representatives) ---------------------

    @property
    def zero(self):
        return 0 if self.kind == KIND_INT else ()

    @property
    def one(self):
        if self.kind == KIND_INT:
            return 1
        return (1,) if self.kind == KIND_FP else (Fraction(1),)

    @property
    def pi(self):
        """The uniformizer as a canonical element (p, or x; zero when m = 1)."""
        return self.pi_pow(1)

    def pi_pow(self, v: int):
        if v >= self.m:
            return self.zero
        if self.kind == KIND_INT:
            return self.p ** v
        one = 1 if self.kind == KIND_FP else Fraction(1)
        zero = 0 if self.kind == KIND_FP else Fraction(0)
        return tuple([zero] * v + [one])

    def reduce(self, a, k: int | None = None):
        """Canonical representative of a modulo pi^k (k defaults to m)."""
        k = self.m if k is None else min(k, self.m)
        if self.kind == KIND_INT:
            return a % (self.p ** k)
        dom = self.domain()
        return dom.trim([dom.field.canon(c) for c in a[:k]])

    def add(self, a, b, k: int | None = None):
        if self.kind == KIND_INT:
            return self.reduce(a + b, k)
        return self.reduce(self.domain().add(a, b), k)

    def sub(self, a, b, k: int | None = None):
        if self.kind == KIND_INT:
            return self.reduce(a - b, k)
        return self.reduce(self.domain().sub(a, b), k)

    def mul(self, a, b, k: int | None = None):
        if self.kind == KIND_INT:
            return self.reduce(a * b, k)
        return self.reduce(self.domain().mul(a, b), k)

    def neg(self, a, k: int | None = None):
        if self.kind == KIND_INT:
            return self.reduce(-a, k)
        return self.reduce(self.domain().neg(a), k)

    def is_zero(self, a) -> bool:
        if self.kind == KIND_INT:
            return a % (self.p ** self.m) == 0
        return len(self.reduce(a)) == 0

    def valuation(self, a) -> int:
        """Largest v with a in (pi^v); the zero element gets valuation m."""
        a = self.reduce(a)
        if self.kind == KIND_INT:
            if a == 0:
                return self.m
            v = 0
            while a % self.p == 0:
                a //= self.p
                v += 1
            return v
        if not a:
            return self.m
        v = 0
        while self.domain().field.is_zero(a[v]):
            v += 1
        return v

    def is_unit(self, a) -> bool:
        return self.valuation(a) == 0

    def unit_inverse(self, a):
        a = self.reduce(a)
        if not self.is_unit(a):
            raise ValidationError("not a unit")
        if self.kind == KIND_INT:
            return pow(a, -1, self.p ** self.m)
        field = self.domain().field
        inv0 = field.inv(a[0])
        out = [inv0]
        for k in range(1, self.m):
            acc = field.zero
            for i in range(1, k + 1):
                if i < len(a) and k - i < len(out):
                    acc = field.add(acc, field.mul(a[i], out[k - i]))
            out.append(field.neg(field.mul(inv0, acc)))
        return self.reduce(tuple(out))

    def divide_by_pi(self, a, v: int):
        """Exact division by pi^v; requires valuation(a) >= v."""
        a = self.reduce(a)
        if v == 0:
            return a
        if self.valuation(a) < v:
            raise ValidationError("inexact division by uniformizer power")
        if self.kind == KIND_INT:
            return a // (self.p ** v)
        return a[v:]

    def elements(self, k: int | None = None):
        """All canonical representatives modulo pi^k (finite kinds only)."""
        k = self.m if k is None else min(k, self.m)
        if self.kind == KIND_RAT:
            raise ValidationError("cannot enumerate a ring with rational coefficients")
        if self.kind == KIND_INT:
            yield from range(self.p ** k)
            return
        def rec(prefix, depth):
            if depth == k:
                yield self.reduce(tuple(prefix))
                return
            for c in range(self.p):
                yield from rec(prefix + [c], depth + 1)
        yield from rec([], 0)

    def random_element(self, rng, k: int | None = None):
        k = self.m if k is None else min(k, self.m)
        if self.kind == KIND_INT:
            return rng.randrange(self.p ** k)
        if self.kind == KIND_FP:
            return self.reduce(tuple(rng.randrange(self.p) for _ in range(k)))
        return self.reduce(tuple(
            Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)))

    # -- element text form ---------------------------------------------------

    def elem_to_str(self, a) -> str:
        a = self.reduce(a)
        if self.kind == KIND_INT:
            return str(a)
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if self.domain().field.is_zero(c):
                continue
            if i == 0:
                parts.append(str(c))
            else:
                coeff = "" if c == 1 else f"{c}"
                power = "x" if i == 1 else f"x^{i}"
                parts.append(f"{coeff}{power}")
        return "+".join(parts).replace("+-", "-")

    def elem_from_str(self, text: str):
        text = text.strip().replace(" ", "")
        if self.kind == KIND_INT:
            try:
                return self.reduce(int(text))
            except ValueError as exc:
                raise ParseError(f"bad integer element {text!r}") from exc
        if text in ("0", ""):
            return self.zero
        coeffs = [Fraction(0)] * self.m
        term_re = re.compile(r"^([+-]?[0-9]*(?:/[0-9]+)?)(x(?:\^([0-9]+))?)?$")
        chunks = re.findall(r"[+-]?[^+-]+", text)
        for chunk in chunks:
            mt = term_re.match(chunk)
            if not mt or (not mt.group(1) and not mt.group(2)):
                raise ParseError(f"bad element term {chunk!r}")
            coeff_s, var, pow_s = mt.group(1), mt.group(2), mt.group(3)
            coeff = Fraction(coeff_s) if coeff_s not in ("", "+", "-") else Fraction(
                -1 if coeff_s == "-" else 1)
            deg = 0 if var is None else (int(pow_s) if pow_s else 1)
            if deg >= self.m:
                continue  # multiples of pi^m vanish
            coeffs[deg] += coeff
        if self.kind == KIND_FP:
            ints = []
            for c in coeffs:
                if c.denominator % self.p == 0:
                    raise ParseError(f"denominator not invertible mod {self.p}")
                ints.append(c.numerator * pow(c.denominator, -1, self.p))
            return self.reduce(tuple(ints))
        return self.reduce(tuple(coeffs))


@dataclass(frozen=True)
class Ring:
    """A finite product of chain rings; elements are per-component tuples."""

    components: tuple[ChainRing, ...]

    def __post_init__(self):
        if not self.components:
            raise ValidationError("a ring needs at least one component")

    @property
    def ncomp(self) -> int:
        return len(self.components)

    def is_local(self) -> bool:
        return self.ncomp == 1

    def descriptor(self) -> str:
        return " x ".join(c.descriptor() for c in self.components)

    def size(self) -> int | None:
        total = 1
        for c in self.components:
            s = c.size()
            if s is None:
                return None
            total *= s
        return total

    @property
    def zero(self):
        return tuple(c.zero for c in self.components)

    @property
    def one(self):
        return tuple(c.one for c in self.components)

    def reduce(self, a):
        return tuple(c.reduce(x) for c, x in zip(self.components, a))

    def add(self, a, b):
        return tuple(c.add(x, y) for c, x, y in zip(self.components, a, b))

    def sub(self, a, b):
        return tuple(c.sub(x, y) for c, x, y in zip(self.components, a, b))

    def mul(self, a, b):
        return tuple(c.mul(x, y) for c, x, y in zip(self.components, a, b))

    def neg(self, a):
        return tuple(c.neg(x) for c, x in zip(self.components, a))

    def valuation(self, a) -> tuple[int, ...]:
        return tuple(c.valuation(x) for c, x in zip(self.components, a))

    def is_unit(self, a) -> bool:
        return all(c.is_unit(x) for c, x in zip(self.components, a))

    def is_zero(self, a) -> bool:
        return all(c.is_zero(x) for c, x in zip(self.components, a))

    def elem_to_str(self, a) -> str:
        return "|".join(c.elem_to_str(x) for c, x in zip(self.components, a))

    def elem_from_str(self, text: str):
        parts = text.split("|")
        if len(parts) != self.ncomp:
            if len(parts) == 1 and self.ncomp > 1:
                raise ParseError(
                    f"element {text!r} needs {self.ncomp} '|'-separated components")
            if len(parts) != self.ncomp:
                raise ParseError(f"element {text!r} has {len(parts)} components, "
                                 f"ring has {self.ncomp}")
        return tuple(c.elem_from_str(p) for c, p in zip(self.components, parts))


_RING_RES = [
    (re.compile(r"^Z/(\d+)$"), KIND_INT),
    (re.compile(r"^F(\d+)\[x\]/\(x\^(\d+)\)$"), KIND_FP),
    (re.compile(r"^F(\d+)\[x\]/\(x\)$"), KIND_FP),
    (re.compile(r"^Q\[x\]/\(x\^(\d+)\)$"), KIND_RAT),
    (re.compile(r"^Q\[x\]/\(x\)$"), KIND_RAT),
]


def ring_make(descriptor: str, allow_composite: bool = True) -> Ring:
    """Parse a ring descriptor: Z/<n>, F<p>[x]/(x^<m>) or Q[x]/(x^<m>).

    Z/n with composite n splits into chain components via the CRT; pass
    allow_composite=False to reject non-prime-power moduli instead.
    """
    text = descriptor.strip().replace(" ", "")
    m = _RING_RES[0][0].match(text)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ParseError(f"Z/{n} is not a chain ring (need n >= 2)")
        factors = crt_split(n)
        if len(factors) > 1 and not allow_composite:
            raise ParseError(f"modulus {n} is not a prime power and CRT splitting "
                             "was disabled")
        return Ring(tuple(ChainRing(KIND_INT, p, e) for p, e in factors))
    m = _RING_RES[1][0].match(text)
    if m:
        return Ring((ChainRing(KIND_FP, int(m.group(1)), int(m.group(2))),))
    m = _RING_RES[2][0].match(text)
    if m:
        return Ring((ChainRing(KIND_FP, int(m.group(1)), 1),))
    m = _RING_RES[3][0].match(text)
    if m:
        return Ring((ChainRing(KIND_RAT, None, int(m.group(1))),))
    m = _RING_RES[4][0].match(text)
    if m:
        return Ring((ChainRing(KIND_RAT, None, 1),))
    raise ParseError(f"unsupported ring descriptor {descriptor!r}")


@dataclass(frozen=True)
class ElemOps:
    """Result bundle of the basic exact operations on a pair of elements."""

    sum: tuple
    product: tuple
    is_unit: bool          # of the first operand
    valuation: tuple       # of the first operand, per component


def elem_ops(ring: Ring, a, b) -> ElemOps:
    a = ring.reduce(a)
    b = ring.reduce(b)
    return ElemOps(sum=ring.add(a, b), product=ring.mul(a, b),
                   is_unit=ring.is_unit(a), valuation=ring.valuation(a))
