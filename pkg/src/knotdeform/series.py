"""Precision-tracked truncated power series over an exact coefficient ring.

A TruncSeries holds exactly ``precision`` known coefficients; the series
is known modulo var^precision.  Precision propagates pessimistically (the
min rule) through arithmetic and drops by k under exact division by
var^k.  Two variables appear in practice: z = x - 2 and its ramified
square root s with s^2 = z.

The Newton engine lifts a simple residual root of a bivariate polynomial
F(x, u) to a series root u(x) with F(z + 2, u(z)) = 0 to full precision;
over Z/p^M the same iteration also refines the coefficients p-adically,
so a few extra fixed-point rounds follow the precision-doubling phase.
"""

from .errors import (
    IterationLimit,
    NonSimpleRoot,
    NonUnitConstantTerm,
    NoSquareRootOfConstant,
    NotAResidualRoot,
    NotDivisible,
    RingMismatch,
    VarMismatch,
)
from .rings import lift_residue, residue_field, to_residue


class TruncSeries:
    """Coefficients c_0 .. c_{N-1} of a series known modulo var^N."""

    __slots__ = ("ring", "var", "coeffs")

    def __init__(self, ring, var, coeffs):
        coeffs = tuple(ring(c) if not hasattr(c, "ring") else c for c in coeffs)
        if not coeffs:
            raise ValueError("precision must be at least 1")
        for c in coeffs:
            if c.ring != ring:
                raise RingMismatch(f"{c.ring} coefficient in {ring} series")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @property
    def precision(self):
        return len(self.coeffs)

    @classmethod
    def constant(cls, ring, var, value, precision):
        coeffs = [ring(value)] + [ring.zero()] * (precision - 1)
        return cls(ring, var, coeffs)

    @classmethod
    def from_list(cls, ring, var, values, precision):
        """Series with the given leading values, zero-padded to precision."""
        coeffs = [v if hasattr(v, "ring") else ring(v) for v in values[:precision]]
        coeffs += [ring.zero()] * (precision - len(coeffs))
        return cls(ring, var, coeffs)

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.var != other.var:
            raise VarMismatch(f"{self.var} vs {other.var}")

    def truncate(self, precision):
        if precision >= self.precision:
            return self
        return TruncSeries(self.ring, self.var, self.coeffs[:precision])

    def pad(self, precision):
        """Extend with zero coefficients (an ansatz, not knowledge)."""
        if precision <= self.precision:
            return self.truncate(precision)
        extra = (self.ring.zero(),) * (precision - self.precision)
        return TruncSeries(self.ring, self.var, self.coeffs + extra)

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncSeries.constant(self.ring, self.var, other, self.precision)
        self._check(other)
        n = min(self.precision, other.precision)
        return TruncSeries(
            self.ring,
            self.var,
            [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])],
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ring, self.var, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncSeries.constant(self.ring, self.var, other, self.precision)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if hasattr(other, "ring") and not isinstance(other, TruncSeries):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return TruncSeries(self.ring, self.var, [a * other for a in self.coeffs])
        self._check(other)
        n = min(self.precision, other.precision)
        zero = self.ring.zero()
        out = [zero] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ring, self.var, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        """Equality of the jointly known coefficients (same ring and var)."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.ring != other.ring or self.var != other.var:
            return False
        n = min(self.precision, other.precision)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def order(self):
        """Index of the first nonzero known coefficient, or precision."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return self.precision

    def constant_term(self):
        return self.coeffs[0]

    def text(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                if cs == "1":
                    term = mono
                elif cs == "-1":
                    term = f"-{mono}"
                else:
                    term = f"{cs}*{mono}"
                parts.append(term)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O({self.var}^{self.precision})"

    def to_json(self):
        return {
            "ring": self.ring.spec_string(),
            "var": self.var,
            "precision": str(self.precision),
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj):
        from .rings import make_ring

        ring = make_ring(obj["ring"])
        coeffs = [ring.parse_value(s) for s in obj["coeffs"]]
        return cls(ring, obj["var"], coeffs)

    def one_like(self):
        return TruncSeries.constant(self.ring, self.var, 1, self.precision)

    def zero_like(self):
        return TruncSeries.constant(self.ring, self.var, 0, self.precision)

    def inverse(self):
        return series_invert(self)

    def __repr__(self):
        return f"TruncSeries({self.text()!r})"


def series_invert(f):
    """Multiplicative inverse by Newton doubling g <- g(2 - fg)."""
    c0 = f.constant_term()
    if not c0.is_unit():
        raise NonUnitConstantTerm("constant term is not a unit")
    g = TruncSeries(f.ring, f.var, [c0.inverse()])
    n = 1
    while n < f.precision:
        n = min(2 * n, f.precision)
        g = g.pad(n)
        two = TruncSeries.constant(f.ring, f.var, 2, n)
        g = g * (two - f.truncate(n) * g)
    return g


def series_sqrt(f, root_of_constant=None):
    """Square root by Newton g <- (g + f/g) / 2.

    When the constant term is 1 the unique root with constant term 1 is
    returned.  Otherwise an exact square root of the constant term must be
    supplied to select a branch.
    """
    c0 = f.constant_term()
    one = f.ring.one()
    if root_of_constant is None:
        if c0 != one:
            raise NoSquareRootOfConstant(
                "constant term is not 1 and no root was supplied"
            )
        r0 = one
    else:
        r0 = root_of_constant
        if r0.ring != f.ring:
            raise RingMismatch(f"{r0.ring} root for {f.ring} series")
        if r0 * r0 != c0:
            raise NoSquareRootOfConstant("supplied value squared is not c0")
        if not r0.is_unit():
            raise NonUnitConstantTerm("square root of constant is not a unit")
    half = f.ring.from_int(2).inverse()
    g = TruncSeries(f.ring, f.var, [r0])
    n = 1
    while n < f.precision:
        n = min(2 * n, f.precision)
        g = g.pad(n)
        g = (g + f.truncate(n) * series_invert(g)) * half
    return g


def divide_by_var_power(f, k):
    """Exact division by var^k; costs k coefficients of precision."""
    if k == 0:
        return f
    if k < 0 or k >= f.precision:
        raise NotDivisible(f"cannot divide a precision-{f.precision} series by var^{k}")
    for c in f.coeffs[:k]:
        if not c.is_zero():
            raise NotDivisible("a low-order coefficient is nonzero")
    return TruncSeries(f.ring, f.var, f.coeffs[k:])


def shift_up(f, k):
    """Multiply by var^k; gains k coefficients of precision."""
    if k < 0:
        return divide_by_var_power(f, -k)
    zeros = (f.ring.zero(),) * k
    return TruncSeries(f.ring, f.var, zeros + f.coeffs)


def to_ramified(f):
    """Reinterpret a series in z as one in s with s^2 = z.

    Knowing f mod z^N is knowing it mod s^(2N), so the precision doubles.
    """
    if f.var != "z":
        raise VarMismatch(f"expected a z-series, got {f.var}")
    zero = f.ring.zero()
    out = []
    for c in f.coeffs:
        out.append(c)
        out.append(zero)
    return TruncSeries(f.ring, "s", out)


def eval_bipoly(F, assignment):
    """Evaluate an integer BiPoly at series arguments."""
    names = F.varnames
    s1 = assignment[names[0]]
    s2 = assignment[names[1]]
    s1._check(s2)
    n = min(s1.precision, s2.precision)
    ring, var = s1.ring, s1.var
    p1 = [TruncSeries.constant(ring, var, 1, n)]
    for _ in range(max(F.degree(0), 0)):
        p1.append(p1[-1] * s1.truncate(n))
    p2 = [TruncSeries.constant(ring, var, 1, n)]
    for _ in range(max(F.degree(1), 0)):
        p2.append(p2[-1] * s2.truncate(n))
    acc = TruncSeries.constant(ring, var, 0, n)
    for (e1, e2), c in F.terms.items():
        acc = acc + p1[e1] * p2[e2] * ring.from_int(c)
    return acc


def x_series(ring, N, var="z"):
    """The coordinate x = var + 2 (z = x - 2) as a series."""
    return TruncSeries.from_list(ring, var, [2, 1], N)


def newton_root(F, u0, ring, N):
    """Hensel-lift a simple residual root of F(x, u) at x = 2 to precision N.

    u0 lives in the residue field (or in the ring itself); it is lifted by
    the Teichmueller section for Z/p^M, by constant inclusion for h-adic
    rings, and identically over a field.  The result u satisfies
    F(z + 2, u) = 0 modulo (z^N, ring truncation) and is the unique such
    series with the given residual constant term.
    """
    k = residue_field(ring)
    u0_res = to_residue(u0) if u0.ring == ring else u0
    if u0_res.ring != k:
        raise RingMismatch(f"u0 lives in {u0_res.ring}, expected {k} or {ring}")
    Fu = F.derivative(1)
    two = k.from_int(2)
    if not F.evaluate({F.varnames[0]: two, F.varnames[1]: u0_res}).is_zero():
        raise NotAResidualRoot(f"F(2, {u0_res}) != 0 in {k}")
    if Fu.evaluate({F.varnames[0]: two, F.varnames[1]: u0_res}).is_zero():
        raise NonSimpleRoot(f"dF/du vanishes at (2, {u0_res}) in {k}")

    u = TruncSeries(ring, "z", [lift_residue(ring, u0_res)])
    trunc_M = getattr(ring, "M", 1)
    cap = max(1, (N - 1).bit_length()) + trunc_M + 2
    name_x, name_u = F.varnames
    for _ in range(cap):
        n = min(2 * u.precision, N)
        u_try = u.pad(n)
        x = x_series(ring, n)
        val = eval_bipoly(F, {name_x: x, name_u: u_try})
        if val.is_zero():
            if n == N:
                return u_try
            u = u_try
            continue
        der = eval_bipoly(Fu, {name_x: x, name_u: u_try})
        u_new = u_try - val * series_invert(der)
        if n == N and u_new.coeffs == u_try.coeffs:
            return u_new
        u = u_new
    raise IterationLimit("Newton iteration did not stabilize")
