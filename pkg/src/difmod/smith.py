"""Exact Smith normal form and linear solving over Euclidean domains.

Everything downstream lifts quotient-ring problems to the ambient principal
ideal domain (the integers, or k[x] for k a prime field or the rationals),
augments with the modulus relations, runs the engine here, and reduces back.
Matrices are plain lists of lists of domain elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# coefficient fields for the polynomial domain
# ---------------------------------------------------------------------------

class PrimeField:
    """GF(p) with canonical representatives in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = p

    zero = 0
    one = 1

    def canon(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class RationalField:
    """The rationals, via fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def canon(self, a):
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


# ---------------------------------------------------------------------------
# Euclidean domains
# ---------------------------------------------------------------------------

class IntegerDomain:
    """The ring of integers with the absolute value as Euclidean norm."""

    zero = 0
    one = 1

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        return divmod(a, b)

    def norm(self, a):
        return abs(a)

    def normalize(self, a):
        """Return (c, u) with c = u*a canonical (nonnegative) and u a unit."""
        if a < 0:
            return -a, -1
        return a, 1

    def unit_inv(self, u):
        return u  # +-1 are self-inverse

    def __eq__(self, other):
        return isinstance(other, IntegerDomain)

    def __hash__(self):
        return hash("IntegerDomain")


class PolynomialDomain:
    """Univariate polynomials over a field, as coefficient tuples (low degree first).

    The zero polynomial is the empty tuple; tuples never carry trailing zeros.
    """

    def __init__(self, field):
        self.field = field
        self.zero = ()
        self.one = (field.one,)

    def trim(self, coeffs):
        c = list(coeffs)
        while c and self.field.is_zero(c[-1]):
            c.pop()
        return tuple(c)

    def make(self, coeffs):
        return self.trim([self.field.canon(x) for x in coeffs])

    def is_zero(self, a):
        return len(a) == 0

    def add(self, a, b):
        f = self.field
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else f.zero
            y = b[i] if i < len(b) else f.zero
            out.append(f.add(x, y))
        return self.trim(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return tuple(self.field.neg(x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        f = self.field
        out = [f.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if f.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(x, y))
        return self.trim(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(a)
        db, lead_inv = len(b) - 1, f.inv(b[-1])
        if len(a) < len(b):
            return (), self.trim(rem)
        quo = [f.zero] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = rem[i]
            if f.is_zero(c):
                continue
            q = f.mul(c, lead_inv)
            quo[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(q, b[j]))
        return self.trim(quo), self.trim(rem)

    def norm(self, a):
        return len(a)  # degree + 1; zero has norm 0

    def normalize(self, a):
        """Return (c, u) with c = u*a monic and u a unit (constant polynomial)."""
        if not a:
            return a, self.one
        u = (self.field.inv(a[-1]),)
        return self.mul(u, a), u

    def unit_inv(self, u):
        return (self.field.inv(u[0]),)

    def __eq__(self, other):
        return isinstance(other, PolynomialDomain) and other.field == self.field

    def __hash__(self):
        return hash(("PolynomialDomain", self.field))


# ---------------------------------------------------------------------------
# matrix helpers (lists of lists of domain elements)
# ---------------------------------------------------------------------------

def mat_identity(dom, n):
    return [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]

def mat_mul(dom, a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if inner else 0
    out = [[dom.zero] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if dom.is_zero(x):
                continue
            bk = b[k]
            for j in range(cols):
                y = bk[j]
                if not dom.is_zero(y):
                    oi[j] = dom.add(oi[j], dom.mul(x, y))
    return out

def mat_vec(dom, a, v):
    out = []
    for row in a:
        acc = dom.zero
        for x, y in zip(row, v):
            if not (dom.is_zero(x) or dom.is_zero(y)):
                acc = dom.add(acc, dom.mul(x, y))
        out.append(acc)
    return out

def mat_eq(dom, a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not dom.is_zero(dom.sub(x, y)):
                return False
    return True


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SmithDecomposition:
    """U * A * V = D with U, V invertible; diag holds the diagonal of D."""

    U: list
    Uinv: list
    V: list
    Vinv: list
    D: list
    diag: list
    rank: int


def smith_normal_form(dom, A) -> SmithDecomposition:
    """Diagonalize A over a Euclidean domain with full transform bookkeeping.

    Returns U, Uinv, V, Vinv and D = U*A*V diagonal, with the divisibility
    chain d_1 | d_2 | ... and each nonzero d_i normalized (positive / monic).
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    D = [[x for x in row] for row in A]
    U = mat_identity(dom, nrows)
    Uinv = mat_identity(dom, nrows)
    V = mat_identity(dom, ncols)
    Vinv = mat_identity(dom, ncols)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(i, j, q):
        # row_i += q * row_j
        Dj, Di = D[j], D[i]
        for c in range(ncols):
            if not dom.is_zero(Dj[c]):
                Di[c] = dom.add(Di[c], dom.mul(q, Dj[c]))
        Uj, Ui = U[j], U[i]
        for c in range(nrows):
            if not dom.is_zero(Uj[c]):
                Ui[c] = dom.add(Ui[c], dom.mul(q, Uj[c]))
        for r in Uinv:  # col_j -= q * col_i
            if not dom.is_zero(r[i]):
                r[j] = dom.sub(r[j], dom.mul(q, r[i]))

    def col_add(j, i, q):
        # col_j += q * col_i
        for r in D:
            if not dom.is_zero(r[i]):
                r[j] = dom.add(r[j], dom.mul(q, r[i]))
        for r in V:
            if not dom.is_zero(r[i]):
                r[j] = dom.add(r[j], dom.mul(q, r[i]))
        Vi, Vj = Vinv[i], Vinv[j]  # row_i -= q * row_j
        for c in range(ncols):
            if not dom.is_zero(Vj[c]):
                Vi[c] = dom.sub(Vi[c], dom.mul(q, Vj[c]))

    def row_scale(i, u, u_inv):
        D[i] = [dom.mul(u, x) for x in D[i]]
        U[i] = [dom.mul(u, x) for x in U[i]]
        for r in Uinv:
            r[i] = dom.mul(r[i], u_inv)

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # pivot: nonzero entry of minimal norm in the trailing submatrix
        piv = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = D[i][j]
                if not dom.is_zero(x):
                    n = dom.norm(x)
                    if best is None or n < best:
                        best, piv = n, (i, j)
        if piv is None:
            break
        if piv != (t, t):
            if piv[0] != t:
                row_swap(t, piv[0])
            if piv[1] != t:
                col_swap(t, piv[1])

        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nrows):
                if dom.is_zero(D[i][t]):
                    continue
                q, r = dom.divmod(D[i][t], D[t][t])
                if not dom.is_zero(q):
                    row_add(i, t, dom.neg(q))
                if not dom.is_zero(D[i][t]):
                    row_swap(t, i)  # strictly smaller pivot norm
                    dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, ncols):
                if dom.is_zero(D[t][j]):
                    continue
                q, r = dom.divmod(D[t][j], D[t][t])
                if not dom.is_zero(q):
                    col_add(j, t, dom.neg(q))
                if not dom.is_zero(D[t][j]):
                    col_swap(t, j)
                    dirty = True
            if dirty:
                continue
            if any(not dom.is_zero(D[i][t]) for i in range(t + 1, nrows)):
                continue
            # divisibility chase: pivot must divide the trailing submatrix
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if dom.is_zero(D[i][j]):
                        continue
                    _, r = dom.divmod(D[i][j], D[t][t])
                    if not dom.is_zero(r):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, dom.one)

        c, u = dom.normalize(D[t][t])
        if not dom.is_zero(dom.sub(u, dom.one)):
            row_scale(t, u, dom.unit_inv(u))
        t += 1

    diag = [D[i][i] for i in range(limit)]
    return SmithDecomposition(U=U, Uinv=Uinv, V=V, Vinv=Vinv, D=D, diag=diag, rank=t)


def solve_linear(dom, A, b, sm: SmithDecomposition | None = None):
    """One solution x of A x = b over the domain, or None when unsolvable."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    if sm is None:
        sm = smith_normal_form(dom, A)
    y = mat_vec(dom, sm.U, b)
    z = [dom.zero] * ncols
    for i in range(min(nrows, ncols)):
        d = sm.D[i][i]
        if dom.is_zero(d):
            if not dom.is_zero(y[i]):
                return None
        else:
            q, r = dom.divmod(y[i], d)
            if not dom.is_zero(r):
                return None
            z[i] = q
    for i in range(min(nrows, ncols), nrows):
        if not dom.is_zero(y[i]):
            return None
    return mat_vec(dom, sm.V, z)


def kernel_columns(dom, A, sm: SmithDecomposition | None = None):
    """Generators (columns) of {x : A x = 0} over the domain."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    if sm is None:
        sm = smith_normal_form(dom, A)
    cols = []
    for j in range(ncols):
        if j >= sm.rank or dom.is_zero(sm.D[j][j]):
            cols.append([sm.V[i][j] for i in range(ncols)])
    return cols
