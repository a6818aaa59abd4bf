"""The differential base field K = Q(t) with derivation d/dt.

Constants are plain :class:`flint.fmpq` values; only genuinely
t-dependent elements are wrapped in :class:`RatFunc`.  Every arithmetic
operation collapses a constant result back to ``fmpq``, so code that never
touches ``t`` stays on the fast rational path.
"""
from __future__ import annotations

import re

from flint import fmpq, fmpq_poly

Rational = fmpq

_ZERO = fmpq(0)
_ONE = fmpq(1)


def _poly(x) -> fmpq_poly:
    return fmpq_poly([x])


class RatFunc:
    """A non-constant element num/den of Q(t), den monic and coprime to num."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: fmpq_poly, den: fmpq_poly):
        # callers go through make(); the invariants are assumed here
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(num, den=None):
        """Normalize num/den; returns an ``fmpq`` when the quotient is constant."""
        if not isinstance(num, fmpq_poly):
            num = _poly(num)
        if den is None:
            den = _poly(1)
        elif not isinstance(den, fmpq_poly):
            den = _poly(den)
        if den.degree() < 0:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if num.degree() < 0:
            return _ZERO
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den[den.degree()]
        if lc != 1:
            num = num / lc
            den = den / lc
        if num.degree() <= 0 and den.degree() == 0:
            return fmpq(num[0])
        return RatFunc(num, den)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        n2, d2 = _pair(other)
        if n2 is None:
            return NotImplemented
        if self.den == d2:
            return RatFunc.make(self.num + n2, d2)
        return RatFunc.make(self.num * d2 + n2 * self.den, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        n2, d2 = _pair(other)
        if n2 is None:
            return NotImplemented
        return self + RatFunc.make(-n2, d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (fmpq, int)):
            if not other:
                return _ZERO
            return RatFunc(self.num * other, self.den)
        n2, d2 = _pair(other)
        if n2 is None:
            return NotImplemented
        return RatFunc.make(self.num * n2, self.den * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        n2, d2 = _pair(other)
        if n2 is None:
            return NotImplemented
        return RatFunc.make(self.num * d2, self.den * n2)

    def __rtruediv__(self, other):
        n2, d2 = _pair(other)
        if n2 is None:
            return NotImplemented
        return RatFunc.make(n2 * self.den, d2 * self.num)

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc.make(self.num ** k, self.den ** k)
        return RatFunc.make(self.den ** (-k), self.num ** (-k))

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def __repr__(self):
        return f"RatFunc({format_kelem(self)})"

    __str__ = lambda self: format_kelem(self)


def _pair(x):
    if isinstance(x, RatFunc):
        return x.num, x.den
    if isinstance(x, (fmpq, int)):
        return _poly(x), _poly(1)
    return None, None


t = RatFunc(fmpq_poly([0, 1]), fmpq_poly([1]))


def K(x):
    """Coerce an int, fraction-like, or Q(t) element into K."""
    if isinstance(x, (fmpq, RatFunc)):
        return x
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, str):
        return parse_kelem(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot coerce {x!r} into Q(t)")


def is_constant(x) -> bool:
    return not isinstance(x, RatFunc)


def field_derive(f):
    """d/dt of an element of Q(t); rationals are constants."""
    if not isinstance(f, RatFunc):
        return _ZERO
    n, d = f.num, f.den
    return RatFunc.make(n.derivative() * d - n * d.derivative(), d * d)


def numer_denom(f):
    """(num, den) as fmpq_poly with den monic."""
    if isinstance(f, RatFunc):
        return f.num, f.den
    return _poly(f), _poly(1)


# -- text form --------------------------------------------------------------
def format_tpoly(p: fmpq_poly) -> str:
    """'3/2*t^2 - t + 1' style text; decimal free."""
    if p.degree() < 0:
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = fmpq(p[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = str(a)
        else:
            mon = "t" if k == 1 else f"t^{k}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(t(?:\^(\d+))?)?$")


def parse_tpoly(s: str) -> fmpq_poly:
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, fmpq] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM_RE.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term {body!r} in {s!r}")
        c = fmpq(1)
        if m.group(1):
            num, _, den = m.group(1).partition("/")
            c = fmpq(int(num), int(den) if den else 1)
        k = 0
        if m.group(2):
            k = int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, _ZERO) + c
    top = max(coeffs)
    return fmpq_poly([coeffs.get(i, _ZERO) for i in range(top + 1)])


def format_kelem(f) -> str:
    n, d = numer_denom(f)
    if d.degree() == 0:
        return format_tpoly(n)
    return f"({format_tpoly(n)})/({format_tpoly(d)})"


def parse_kelem(s: str):
    s = s.strip()
    if ")/(" in s:
        a, b = s[1:-1].split(")/(")
        return RatFunc.make(parse_tpoly(a), parse_tpoly(b))
    return RatFunc.make(parse_tpoly(s))


def kelem_to_json(f) -> dict:
    n, d = numer_denom(f)
    return {"num": format_tpoly(n), "den": format_tpoly(d)}


def kelem_from_json(obj: dict):
    return RatFunc.make(parse_tpoly(obj["num"]), parse_tpoly(obj["den"]))
