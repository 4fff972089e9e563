"""Exact base fields: the rationals and prime fields F_p.

Scalars are plain Python values (Fraction over Q, int residues over F_p);
all arithmetic is routed through a field object so that generic code works
over either field.  Rationals serialize as "num/den" (denominator omitted
when 1), prime-field elements as decimal residues.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class RationalField:
    """The field Q with exact Fraction arithmetic."""

    name = "Q"
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def from_int(self, k):
        return Fraction(k)

    def parse(self, s):
        try:
            return Fraction(str(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {s!r}") from exc

    def show(self, a):
        return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)

    def random_scalar(self, rng, span=3):
        return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2)))

    def random_nonzero(self, rng, span=3):
        while True:
            a = self.random_scalar(rng, span)
            if a != 0:
                return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p, p an odd prime below 2**31; elements are residues."""

    char = None

    def __init__(self, p):
        if not isinstance(p, int) or not 2 < p < 2**31 or not _is_prime(p):
            raise FieldError(f"not an odd prime below 2**31: {p}")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, k):
        return k % self.p

    def parse(self, s):
        try:
            if "/" in str(s):
                num, den = str(s).split("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(s) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad residue literal {s!r}") from exc

    def show(self, a):
        return str(a % self.p)

    def random_scalar(self, rng, span=None):
        return rng.randrange(self.p)

    def random_nonzero(self, rng, span=None):
        return rng.randrange(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_spec(spec):
    """Build a field from its JSON form: "Q" or {"Fp": p} (or "fp:p")."""
    if spec == "Q" or spec == "q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(int(spec["Fp"]))
    if isinstance(spec, str) and spec.lower().startswith("fp:"):
        return PrimeField(int(spec.split(":", 1)[1]))
    raise FieldError(f"unrecognized field spec {spec!r}")


def field_to_spec(field):
    if isinstance(field, RationalField):
        return "Q"
    return {"Fp": field.p}
