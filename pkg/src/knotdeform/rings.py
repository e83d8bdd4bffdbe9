"""Exact coefficient rings.

Four kinds of ring are supported, all with decidable equality through
canonical representations:

* ``Rationals()``            -- arbitrary-precision fractions,
* ``PrimeField(p)``          -- F_p for an odd prime p,
* ``PadicTruncRing(p, M)``   -- Z/p^M, the finite-precision model of Z_p,
* ``HbarTruncRing(base, M)`` -- base[h]/h^M, the equal-characteristic model
                                of base[[h]].

The two truncated kinds are local; ``residue`` reduces modulo the maximal
ideal (p resp. h) and ``teichmuller_lift`` provides the multiplicative
section F_p -> Z/p^M.  Rationals() is treated as a degenerate local ring
with maximal ideal (0) so that characteristic-zero examples can flow
through the same deformation code paths.

p = 2 is rejected everywhere: 2 must be invertible for the trace identity
machinery and the square roots used by the deformation matrices.
"""

from fractions import Fraction
from itertools import product

from .errors import (
    CharacteristicTwo,
    InfiniteRing,
    InvalidModulus,
    IterationLimit,
    NotLocalRing,
    NotPrime,
    RingMismatch,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RingElement:
    """A value tagged with its ring; arithmetic stays inside that ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.value, other.value))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self.inverse() if k < 0 else self
        result = self.ring.one()
        for _ in range(abs(k)):
            result = result * base
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def inverse(self):
        return RingElement(self.ring, self.ring._inv(self.value))

    def is_unit(self):
        return self.ring._is_unit(self.value)

    def is_zero(self):
        return self.value == self.ring.zero().value

    def residue(self):
        """Image in the residue field; only local rings have one."""
        return self.ring.residue(self)

    def one_like(self):
        return self.ring.one()

    def zero_like(self):
        return self.ring.zero()

    def __repr__(self):
        return f"<{self.ring.format_value(self.value)} in {self.ring}>"

    def __str__(self):
        return self.ring.format_value(self.value)


class Ring:
    """Common interface; subclasses define canonical values and raw ops."""

    char = None
    is_field = False
    is_domain = False
    is_finite = False
    is_local = False

    def __call__(self, value):
        return RingElement(self, self._canonical(value))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def elements(self):
        raise InfiniteRing(f"{self} is not finite")

    def residue(self, a):
        raise NotLocalRing(f"{self} has no residue map")

    def parse_value(self, text):
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


class Rationals(Ring):
    char = 0
    is_field = True
    is_domain = True
    is_local = True  # degenerate: maximal ideal (0)

    def _canonical(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value.value
        return Fraction(value)

    def from_int(self, n):
        return RingElement(self, Fraction(n))

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        return 1 / a

    def _is_unit(self, a):
        return a != 0

    def residue_field(self):
        return self

    def in_maximal_ideal(self, a):
        return a.value == 0

    def spec_string(self):
        return "rational"

    def format_value(self, v):
        return str(v)

    def parse_value(self, text):
        return self(Fraction(text))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")


def _check_odd_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if p == 2:
        raise CharacteristicTwo("p = 2 is not supported")


class PrimeField(Ring):
    is_field = True
    is_domain = True
    is_finite = True

    def __init__(self, p):
        _check_odd_prime(p)
        self.p = p
        self.char = p

    def _canonical(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value.value
        return int(value) % self.p

    def from_int(self, n):
        return RingElement(self, n % self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("0 is not a unit")
        return pow(a, -1, self.p)

    def _is_unit(self, a):
        return a % self.p != 0

    def elements(self):
        return (RingElement(self, v) for v in range(self.p))

    def spec_string(self):
        return f"fp:{self.p}"

    def format_value(self, v):
        return str(v)

    def parse_value(self, text):
        return self(int(text))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


class PadicTruncRing(Ring):
    """Z/p^M with the residue map to F_p and the Teichmueller section."""

    is_finite = True
    is_local = True

    def __init__(self, p, M):
        _check_odd_prime(p)
        if not isinstance(M, int) or M < 1:
            raise InvalidModulus(f"M = {M} must be a positive integer")
        self.p = p
        self.M = M
        self.modulus = p**M
        self.char = self.modulus
        self.is_field = M == 1
        self.is_domain = M == 1

    def _canonical(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value.value
        return int(value) % self.modulus

    def from_int(self, n):
        return RingElement(self, n % self.modulus)

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _neg(self, a):
        return -a % self.modulus

    def _mul(self, a, b):
        return a * b % self.modulus

    def _inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"{a} is not a unit mod {self.p}^{self.M}")
        return pow(a, -1, self.modulus)

    def _is_unit(self, a):
        return a % self.p != 0

    def elements(self):
        return (RingElement(self, v) for v in range(self.modulus))

    def residue_field(self):
        return PrimeField(self.p)

    def residue(self, a):
        return PrimeField(self.p).from_int(a.value)

    def in_maximal_ideal(self, a):
        return a.value % self.p == 0

    def uniformizer(self):
        return self.from_int(self.p)

    def teichmuller(self, a):
        """Lift a in F_p to the unique w = w^p in Z/p^M over a; w(0) = 0."""
        x = int(a.value if isinstance(a, RingElement) else a) % self.modulus
        cap = self.M * max(1, (self.modulus - 1).bit_length())
        for _ in range(cap):
            y = pow(x, self.p, self.modulus)
            if y == x:
                return RingElement(self, x)
            x = y
        raise IterationLimit("Teichmueller iteration failed to stabilize")

    def spec_string(self):
        return f"padic:{self.p}:{self.M}"

    def format_value(self, v):
        return str(v)

    def parse_value(self, text):
        return self(int(text))

    def __eq__(self, other):
        return (
            isinstance(other, PadicTruncRing)
            and other.p == self.p
            and other.M == self.M
        )

    def __hash__(self):
        return hash(("padic", self.p, self.M))


class HbarTruncRing(Ring):
    """base[h]/h^M over a field base; values are coefficient tuples."""

    is_local = True

    def __init__(self, base, M):
        if not isinstance(base, (PrimeField, Rationals)):
            raise NotPrime(f"base of h-truncation must be a field, got {base}")
        if not isinstance(M, int) or M < 1:
            raise InvalidModulus(f"M = {M} must be a positive integer")
        self.base = base
        self.M = M
        self.char = base.char
        self.is_field = M == 1
        self.is_domain = M == 1
        self.is_finite = base.is_finite

    def _canonical(self, value):
        if isinstance(value, RingElement):
            if value.ring == self:
                return value.value
            if value.ring == self.base:
                value = value.value
            else:
                raise RingMismatch(f"{value.ring} vs {self}")
        if isinstance(value, (list, tuple)):
            coeffs = [self.base._canonical(c) for c in value[: self.M]]
            coeffs += [self.base.zero().value] * (self.M - len(coeffs))
            return tuple(coeffs)
        c0 = self.base._canonical(value)
        return (c0,) + (self.base.zero().value,) * (self.M - 1)

    def from_int(self, n):
        return RingElement(self, self._canonical(n))

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        zero = self.base.zero().value
        out = [zero] * self.M
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j in range(self.M - i):
                y = b[j]
                if y == zero:
                    continue
                out[i + j] = self.base._add(out[i + j], self.base._mul(x, y))
        return tuple(out)

    def _inv(self, a):
        zero = self.base.zero().value
        if a[0] == zero:
            raise ZeroDivisionError("constant term is 0, not a unit")
        inv0 = self.base._inv(a[0])
        out = [inv0] + [zero] * (self.M - 1)
        # (sum out_j h^j)(sum a_i h^i) = 1, solved coefficient by coefficient
        for k in range(1, self.M):
            acc = zero
            for i in range(1, k + 1):
                acc = self.base._add(acc, self.base._mul(a[i], out[k - i]))
            out[k] = self.base._neg(self.base._mul(inv0, acc))
        return tuple(out)

    def _is_unit(self, a):
        return a[0] != self.base.zero().value

    def elements(self):
        if not self.base.is_finite:
            raise InfiniteRing(f"{self} is not finite")
        basevals = [e.value for e in self.base.elements()]
        return (
            RingElement(self, tup) for tup in product(basevals, repeat=self.M)
        )

    def residue_field(self):
        return self.base

    def residue(self, a):
        return RingElement(self.base, a.value[0])

    def in_maximal_ideal(self, a):
        return a.value[0] == self.base.zero().value

    def uniformizer(self):
        zero = self.base.zero().value
        one = self.base.one().value
        if self.M == 1:
            return RingElement(self, (zero,))
        return RingElement(self, (zero, one) + (zero,) * (self.M - 2))

    def teichmuller(self, a):
        """The multiplicative section in equal characteristic is constant."""
        val = a.value if isinstance(a, RingElement) else a
        return RingElement(self, self._canonical(self.base._canonical(val)))

    def spec_string(self):
        base = (
            str(self.base.p)
            if isinstance(self.base, PrimeField)
            else "rational"
        )
        return f"hbar:{base}:{self.M}"

    def format_value(self, v):
        parts = []
        for i, c in enumerate(v):
            if c == self.base.zero().value:
                continue
            cs = self.base.format_value(c)
            if i == 0:
                parts.append(cs)
            else:
                mono = "h" if i == 1 else f"h^{i}"
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"

    def parse_value(self, text):
        text = text.strip()
        if text == "0":
            return self.zero()
        coeffs = {}
        for part in text.replace("- ", "+ -").split("+"):
            part = part.strip()
            if not part:
                continue
            if "h" not in part:
                coeffs[0] = self.base.parse_value(part).value
                continue
            cs, _, hs = part.partition("h")
            cs = cs.strip().rstrip("*").strip()
            if cs in ("", "-"):
                cs += "1"
            e = 1 if not hs.strip() else int(hs.strip().lstrip("^"))
            coeffs[e] = self.base.parse_value(cs).value
        vec = [coeffs.get(i, self.base.zero().value) for i in range(self.M)]
        return RingElement(self, tuple(vec))

    def __eq__(self, other):
        return (
            isinstance(other, HbarTruncRing)
            and other.base == self.base
            and other.M == self.M
        )

    def __hash__(self):
        return hash(("hbar", self.base, self.M))


def make_ring(spec):
    """Build a ring from a spec string.

    Grammar: ``rational`` | ``fp:<p>`` | ``padic:<p>:<M>`` | ``hbar:<p>:<M>``
    (``hbar:rational:<M>`` is also accepted).
    """
    if isinstance(spec, Ring):
        return spec
    parts = str(spec).split(":")
    kind = parts[0]
    try:
        if kind == "rational" and len(parts) == 1:
            return Rationals()
        if kind == "fp" and len(parts) == 2:
            return PrimeField(int(parts[1]))
        if kind == "padic" and len(parts) == 3:
            return PadicTruncRing(int(parts[1]), int(parts[2]))
        if kind == "hbar" and len(parts) == 3:
            base = (
                Rationals() if parts[1] == "rational" else PrimeField(int(parts[1]))
            )
            return HbarTruncRing(base, int(parts[2]))
    except ValueError as exc:
        raise InvalidModulus(f"bad ring spec {spec!r}: {exc}") from None
    raise InvalidModulus(f"unrecognized ring spec {spec!r}")


def residue_field(ring):
    """The residue field of a local ring; fields are their own."""
    if ring.is_field:
        return ring
    if hasattr(ring, "residue_field"):
        return ring.residue_field()
    raise NotLocalRing(f"{ring} has no residue field")


def to_residue(a):
    """Reduce modulo the maximal ideal; identity on fields."""
    if a.ring.is_field:
        return a
    return a.residue()


def lift_residue(ring, a):
    """Section of the residue map used to seed Hensel iterations.

    Teichmueller lift into Z/p^M, constant inclusion into base[h]/h^M,
    identity on fields.
    """
    if a.ring == ring:
        return a
    if isinstance(ring, (PadicTruncRing, HbarTruncRing)):
        if a.ring != residue_field(ring):
            raise RingMismatch(f"{a.ring} is not the residue field of {ring}")
        return ring.teichmuller(a)
    if ring.is_field and a.ring == ring:
        return a
    raise RingMismatch(f"cannot lift {a.ring} element into {ring}")


def teichmuller_lift(a, M):
    """The Teichmueller lift F_p -> Z/p^M: w = a mod p with w^p = w."""
    if not isinstance(a.ring, PrimeField):
        raise RingMismatch(f"expected a prime-field element, got {a.ring}")
    return PadicTruncRing(a.ring.p, M).teichmuller(a)
