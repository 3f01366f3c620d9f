"""Exact coefficient fields: the rationals and prime fields GF(p).

Field elements are plain Python values (`fractions.Fraction` over the
rationals, `int` in ``[0, p)`` over GF(p)); a :class:`Field` object only
bundles the arithmetic.  Keeping elements unboxed keeps the inner loops of
the linear algebra and polynomial kernels cheap.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The rationals (``p is None``) or GF(p) for an odd prime p.

    Characteristic 2 is rejected globally: strict graded commutativity
    degenerates there and every downstream module assumes it.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not is_prime(p):
                raise FieldError(f"{p} is not prime")
            if p == 2:
                raise FieldError("characteristic 2 is not supported")
        self.p = p

    # -- classification ------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- arithmetic ----------------------------------------------------

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def of_int(self, n: int):
        return Fraction(n) if self.p is None else n % self.p

    def of_fraction(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if self.p is None:
            return Fraction(num, den)
        d = den % self.p
        if d == 0:
            raise FieldError(f"denominator {den} vanishes mod {self.p}")
        return (num * pow(d, self.p - 2, self.p)) % self.p

    def add(self, a, b):
        return (a + b) if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return (a - b) if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return (a * b) if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    # -- text ------------------------------------------------------------

    def to_str(self, a) -> str:
        return str(a)

    def parse_scalar(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.of_fraction(int(num), int(den))
        return self.of_int(int(text))

    @staticmethod
    def parse(text: str) -> "Field":
        """Parse a field spec such as ``Q``, ``QQ``, ``F7`` or ``Fp 7``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Fp"):
            return Field(int(text[2:].strip()))
        if text.startswith("F") or text.startswith("GF"):
            digits = text.lstrip("GF").strip("() ")
            return Field(int(digits))
        raise FieldError(f"unrecognised field spec {text!r}")

    def spec_str(self) -> str:
        return "Q" if self.p is None else f"Fp {self.p}"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)
