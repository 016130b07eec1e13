"""Exact scalar, polynomial and rational-function arithmetic, plus
fraction-free linear algebra.

Everything in this module is exact: scalars are Python ints or
``fractions.Fraction``, polynomials are dense ascending coefficient lists,
and elimination is fraction-free (Bareiss) so determinants work over the
integers and over polynomial rings alike.  All values are immutable after
construction and every function is pure, so the module is safe to use from
multiple threads.

Coefficient domains.  A polynomial coefficient may be an int, a Fraction,
or (for bivariate work) another Poly.  Arithmetic stays in the smallest
domain it can: integer data stays integer, which matters for speed.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InexactDivision, ShapeError, ZeroDenominator

# The exact scalar domain.  Fraction already guarantees denominator > 0,
# gcd(|num|, den) = 1 and 0/1 for zero, which is the invariant we need.
Rational = Fraction

NEG_INF = float("-inf")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


class Poly:
    """Dense univariate polynomial, ascending coefficients, no trailing zeros.

    The zero polynomial has an empty coefficient tuple and degree -inf.
    Coefficients may be ints, Fractions, or Polys (one nesting level, used
    for polynomials in t whose coefficients are polynomials in v).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basics ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs == (() if not other else (other,)) or (
                len(self.coeffs) == 1 and self.coeffs[0] == other
            )
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if _is_scalar(other):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if _is_scalar(other):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return Poly()
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- division ---------------------------------------------------------

    def divmod(self, other: "Poly"):
        """Quotient and remainder; coefficient division must be possible
        (ints are promoted to Fraction when they do not divide evenly)."""
        if not isinstance(other, Poly):
            other = Poly((other,))
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return Poly(), Poly()
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        q = [0] * max(0, len(rem) - db)
        for k in range(len(rem) - db - 1, -1, -1):
            top = rem[k + db]
            if not top:
                continue
            c = _coeff_div(top, lead)
            q[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Poly(q), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        """Exact division; raises InexactDivision on a nonzero remainder."""
        q, r = self.divmod(other)
        if r:
            raise InexactDivision(f"{self!r} is not divisible by {other!r}")
        return q

    # -- calculus / evaluation ----------------------------------------------

    def eval(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift(self, k: int) -> "Poly":
        """Multiply by the k-th power of the variable."""
        if not self:
            return self
        return Poly((0,) * k + self.coeffs)

    def truncate(self, n: int) -> "Poly":
        """Keep only coefficients of degree < n."""
        return Poly(self.coeffs[:n])


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Dispatch table over {add, sub, mul, exact_div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown op {op!r}")


def _coeff_div(a, b):
    """Divide coefficients exactly, staying in int when the quotient is."""
    if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
        a = a if isinstance(a, RationalFunction) else RationalFunction._coerce(a)
        b = b if isinstance(b, RationalFunction) else RationalFunction._coerce(b)
        return a / b
    if isinstance(a, Poly) or isinstance(b, Poly):
        if not isinstance(a, Poly):
            a = Poly((a,))
        if not isinstance(b, Poly):
            b = Poly((b,))
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return Fraction(a) / Fraction(b)


def _dom_exact_div(a, b):
    """Exact ring division for Bareiss; raises InexactDivision otherwise."""
    if isinstance(a, Poly) or isinstance(b, Poly):
        if not isinstance(a, Poly):
            a = Poly((a,))
        if not isinstance(b, Poly):
            b = Poly((b,))
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(f"{a} not divisible by {b}")
        return q
    return Fraction(a) / Fraction(b)


# ---------------------------------------------------------------------------
# polynomial gcd
# ---------------------------------------------------------------------------

def _to_int_primitive(p: Poly):
    """Return the primitive integer coefficient list of a Fraction/int poly."""
    if not p:
        return []
    denls = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            denls = denls * c.denominator // math.gcd(denls, c.denominator)
    ints = [int(c * denls) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd of two polynomials.

    Scalar (int/Fraction) coefficients use the primitive pseudo-remainder
    sequence over the integers, which keeps coefficient growth tame.  The
    result is primitive with positive leading coefficient.  Field-valued
    coefficients (RationalFunction) fall back to the Euclidean algorithm.
    """
    if not a:
        return _make_positive(b)
    if not b:
        return _make_positive(a)
    if all(_is_scalar(c) for c in a.coeffs) and all(_is_scalar(c) for c in b.coeffs):
        u = _to_int_primitive(a)
        v = _to_int_primitive(b)
        if len(u) < len(v):
            u, v = v, u
        while v:
            # primitive pseudo-remainder step
            r = u[:]
            dv = len(v) - 1
            lead = v[-1]
            while len(r) - 1 >= dv and r:
                if r[-1] == 0:
                    r.pop()
                    continue
                shift_amt = len(r) - 1 - dv
                top = r[-1]
                r = [c * lead for c in r]
                for j, vc in enumerate(v):
                    r[shift_amt + j] -= top * vc
                while r and r[-1] == 0:
                    r.pop()
            g = 0
            for c in r:
                g = math.gcd(g, c)
            if g > 1:
                r = [c // g for c in r]
            u, v = v, r
        if u[-1] < 0:
            u = [-c for c in u]
        return Poly(u)
    return _euclid_gcd(a, b)


def _euclid_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    # normalize monic so the result is canonical for field coefficients
    lead = a.coeffs[-1]
    if lead != 1:
        inv = _coeff_div(1, lead)
        a = a * inv
    return a


def _make_positive(p: Poly) -> Poly:
    if not p:
        return p
    lead = p.coeffs[-1]
    if _is_scalar(lead) and lead < 0:
        return -p
    return p


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Canonical ratio of two polynomials over the rationals.

    Invariants: den != 0, gcd(num, den) = 1, and den is a primitive integer
    polynomial whose lowest-degree nonzero coefficient is positive.  That
    scaling makes the representative unique, and it reproduces the usual
    "denominator with constant term +1" shape of counting generating
    functions.  Instances are immutable and support field arithmetic, so
    they double as exact field elements (rational functions in one
    variable) for the linear solver.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly((1,)), _canonical=False):
        if not isinstance(num, Poly):
            num = Poly((num,)) if num else Poly()
        if not isinstance(den, Poly):
            den = Poly((den,)) if den else Poly()
        if not den:
            raise ZeroDenominator("denominator is the zero polynomial")
        if not _canonical:
            num, den = _ratfunc_canonicalize(num, den)
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunction({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    # -- field arithmetic ------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x)
        if _is_scalar(x):
            return RationalFunction(Poly((x,)) if x else Poly())
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        """The numerator scaled by the (constant) denominator."""
        if not self.is_polynomial():
            raise InexactDivision("rational function is not a polynomial")
        c = self.den.coeffs[0]
        return self.num * _coeff_div(1, c)


def _ratfunc_canonicalize(num: Poly, den: Poly):
    if not num:
        return Poly(), Poly((1,))
    scalar = all(_is_scalar(c) for c in num.coeffs) and all(
        _is_scalar(c) for c in den.coeffs
    )
    if not scalar:
        # nested coefficients (bivariate results) are normalized by their
        # constructing pipeline; canonical form is guaranteed for scalars
        return num, den
    g = poly_gcd(num, den)
    if g.degree > 0 or (g.coeffs and g.coeffs[0] != 1):
        num = num.exact_div(g)
        den = den.exact_div(g)
    den, scale = _scale_den(den)
    num = num * scale
    return num, den


def _scale_den(den: Poly):
    """Scale so den has primitive integer coefficients and a positive
    lowest-degree nonzero coefficient.  Returns (den, applied scale)."""
    if not all(_is_scalar(c) for c in den.coeffs):
        # nested coefficients: only sign-normalize by the lowest scalar seen
        return den, 1
    denls = 1
    for c in den.coeffs:
        if isinstance(c, Fraction):
            denls = denls * c.denominator // math.gcd(denls, c.denominator)
    ints = [int(c * denls) for c in den.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    low = next(c for c in ints if c)
    sign = -1 if low < 0 else 1
    scale = Fraction(denls, sign * g)
    new = [c * sign // g for c in ints]
    return Poly(new), scale


def ratfunc_normalize(num: Poly, den: Poly) -> RationalFunction:
    """Canonical representative of num/den; ZeroDenominator if den = 0."""
    return RationalFunction(num, den)


def taylor_coeffs(rf: RationalFunction, n: int):
    """First n power-series coefficients of a rational function.

    Requires the denominator to have a nonzero constant term.  Works for
    Fraction coefficients and for RationalFunction-valued ones.
    """
    den = rf.den.coeffs
    num = rf.num.coeffs
    if not den or not den[0]:
        raise ZeroDenominator("series requires a unit constant term")
    d0 = den[0]
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[i] * out[k - i]
        out.append(_coeff_div(acc, d0) if d0 != 1 else acc)
    return out


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense rectangular matrix over an exact domain."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
        else:
            width = 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width if rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]!r})"

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def delete_rows_cols(self, drop) -> "Matrix":
        drop = set(drop)
        keep = [i for i in range(self.nrows) if i not in drop]
        return Matrix(tuple(tuple(self.rows[i][j] for j in keep) for i in keep))

    def is_square(self) -> bool:
        return self.nrows == self.ncols


def bandwidth(m: Matrix) -> int:
    w = 0
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            if x and abs(i - j) > w:
                w = abs(i - j)
    return w


def det_bareiss(m: Matrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Works over any integral domain whose elements support *, -, and exact
    division (ints, Fractions, Polys).  The empty 0x0 matrix has
    determinant 1.  Banded matrices are detected and eliminated inside a
    sliding window, which reduces the work from n^3 to n*w^2 and is what
    makes large grid Laplacians cheap.
    """
    if not isinstance(m, Matrix):
        m = Matrix(m)
    if not m.is_square():
        raise ShapeError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return 1
    w = bandwidth(m)
    if w == 0:
        prod = m.rows[0][0]
        for i in range(1, n):
            prod = prod * m.rows[i][i]
        return prod
    if w + 1 < n and n >= 3 * (w + 1):
        try:
            return _det_banded(m.rows, n, w)
        except _ZeroPivot:
            pass
    return _det_dense(m.rows, n)


class _ZeroPivot(Exception):
    pass


def _det_banded(rows, n: int, w: int):
    """Windowed Bareiss for half-bandwidth w; raises _ZeroPivot when a
    diagonal pivot vanishes (caller falls back to the dense path)."""
    b = [list(r) for r in rows]
    prev = 1
    for r in range(n - 1):
        new = r + w
        if new < n:
            # entries entering the window carry the previous pivot factor
            for i in range(r, new + 1):
                if b[i][new]:
                    b[i][new] = prev * b[i][new]
            for j in range(r, new):
                if b[new][j]:
                    b[new][j] = prev * b[new][j]
        p = b[r][r]
        if not p:
            raise _ZeroPivot
        hi = min(n - 1, r + w)
        row_r = b[r]
        for i in range(r + 1, hi + 1):
            row_i = b[i]
            bir = row_i[r]
            for j in range(r + 1, hi + 1):
                num = p * row_i[j] - bir * row_r[j]
                row_i[j] = _dom_exact_div(num, prev) if prev != 1 else num
        prev = p
    return b[n - 1][n - 1]


def _det_dense(rows, n: int):
    b = [list(r) for r in rows]
    prev = 1
    sign = 1
    for r in range(n - 1):
        if not b[r][r]:
            swap = next((i for i in range(r + 1, n) if b[i][r]), None)
            if swap is None:
                return 0 * _one_like(prev)
            b[r], b[swap] = b[swap], b[r]
            sign = -sign
        p = b[r][r]
        row_r = b[r]
        for i in range(r + 1, n):
            row_i = b[i]
            bir = row_i[r]
            for j in range(r + 1, n):
                num = p * row_i[j] - bir * row_r[j]
                row_i[j] = _dom_exact_div(num, prev) if prev != 1 else num
            row_i[r] = 0
        prev = p
    d = b[n - 1][n - 1]
    return d if sign > 0 else -d


def _one_like(x):
    return Poly((1,)) if isinstance(x, Poly) else 1


# ---------------------------------------------------------------------------
# linear solving
# ---------------------------------------------------------------------------

class LinearSolution:
    """Outcome of solve_linear: status in {unique, underdetermined,
    inconsistent}; solution is a witness vector unless inconsistent."""

    __slots__ = ("status", "solution")

    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"

    def __init__(self, status, solution=None):
        self.status = status
        self.solution = solution

    def __repr__(self):
        return f"LinearSolution({self.status}, {self.solution})"


def solve_linear(a: Matrix, b) -> LinearSolution:
    """Exact Gaussian elimination over a field.

    Field elements can be Fractions or RationalFunctions (the one-variable
    rational function field used by the transfer method).  Returns a
    unique solution, one witness of an underdetermined family (free
    variables set to zero), or inconsistency.
    """
    if not isinstance(a, Matrix):
        a = Matrix(a)
    b = list(b)
    if len(b) != a.nrows:
        raise ShapeError(f"{a.nrows} rows but {len(b)} right-hand sides")
    nrows, ncols = a.nrows, a.ncols
    aug = [list(r) + [b[i]] for i, r in enumerate(a.rows)]
    piv_cols = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        prow = aug[rank]
        pval = prow[col]
        for i in range(nrows):
            if i == rank or not aug[i][col]:
                continue
            factor = aug[i][col] / pval
            row = aug[i]
            for j in range(col, ncols + 1):
                row[j] = row[j] - factor * prow[j]
        piv_cols.append(col)
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if aug[i][ncols]:
            return LinearSolution(LinearSolution.INCONSISTENT)
    zero = b[0] - b[0] if b else 0
    x = [zero] * ncols
    for r, col in enumerate(piv_cols):
        x[col] = aug[r][ncols] / aug[r][col]
    status = LinearSolution.UNIQUE if rank == ncols else LinearSolution.UNDERDETERMINED
    return LinearSolution(status, x)


def solve_fraction_free(rows, rhs) -> LinearSolution:
    """Fraction-free Gauss-Jordan solve over an integral domain.

    Same contract as solve_linear but entries may be ints or Polys and no
    field division ever happens during elimination; the witness comes back
    as (numerator, denominator) pairs per unknown.  Used for recurrence
    guessing over polynomial data, where field gcds would be ruinous.
    """
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ShapeError("ragged rows")
    if len(rhs) != len(rows):
        raise ShapeError("rhs length mismatch")
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [rows[i] + [rhs[i]] for i in range(nrows)]
    prev = 1
    piv_cols = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        prow = aug[rank]
        p = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = aug[i]
            ric = row[col]
            for j in range(ncols + 1):
                if j == col:
                    continue
                num = p * row[j] - ric * prow[j]
                row[j] = _dom_exact_div(num, prev) if prev != 1 else num
            row[col] = 0
        prev = p
        piv_cols.append(col)
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if aug[i][ncols]:
            return LinearSolution(LinearSolution.INCONSISTENT)
    pairs = [(0, 1)] * ncols
    for r, col in enumerate(piv_cols):
        pairs[col] = (aug[r][ncols], aug[r][col])
    status = LinearSolution.UNIQUE if rank == ncols else LinearSolution.UNDERDETERMINED
    return LinearSolution(status, pairs)
