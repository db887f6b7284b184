"""Exact scalar arithmetic over the supported coefficient fields.

Three fields are available:

* ``Rationals()``            -- QQ, backed by ``fractions.Fraction``;
* ``PrimeField(p)``          -- F_p, residues stored in ``[0, p)``;
* ``RationalFunctions()``    -- QQ(q), reduced fractions of integer
                                polynomials in one indeterminate ``q``.

A :class:`Scalar` is a thin immutable wrapper ``(field, payload)`` with the
usual operator overloads.  Canonical forms are unique, so ``==`` on scalars
is representation equality and scalars are hashable.

QQ(q) canonical form: ``num/den`` with ``num, den`` integer polynomials,
``gcd(num, den) = 1`` in ZZ[q] (both polynomial part and integer content),
and the leading coefficient of ``den`` positive.  In particular the
denominator of ``1/(q-1)`` is stored as the monic polynomial ``q - 1``.

>>> Q = Rationals()
>>> (Q.from_int(1) / 2 + Q.parse("1/3")).format()
'5/6'
>>> Qq = RationalFunctions()
>>> q = Qq.generator()
>>> ((q**2 - 1) / (q - 1)).format()
'q+1'
"""

from fractions import Fraction
from math import gcd as int_gcd

from .errors import DivisionByZero, FieldMismatch, ParseError, ZeroInput


# ---------------------------------------------------------------------------
# Integer polynomials as tuples of coefficients, lowest degree first.
# () is the zero polynomial; the last entry of a nonzero tuple is nonzero.


def pnormalize(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return pnormalize(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return pnormalize(out)


def pscale(k, a):
    if k == 0:
        return ()
    return tuple(k * c for c in a)


def pcontent(a):
    g = 0
    for c in a:
        g = int_gcd(g, c)
    return g


def pprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def pexactdiv(a, b):
    """Quotient a/b assuming b divides a in ZZ[q]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + db]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        c //= lb
        out[shift] = c
        if c:
            for i, cb in enumerate(b):
                rem[shift + i] -= c * cb
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return pnormalize(out)


def _prem(a, b):
    """Remainder of (a scaled by a power of lc(b)) under division by b.

    Scaling by the leading coefficient at every step keeps the arithmetic
    in ZZ[q]; the scale factor is irrelevant because callers take the
    primitive part afterwards.
    """
    lb = b[-1]
    db = len(b) - 1
    rem = a
    while rem and len(rem) - 1 >= db:
        shift = len(rem) - 1 - db
        rem = psub(pscale(lb, rem), pscale(rem[-1], (0,) * shift + b))
    return rem


def pgcd(a, b):
    """Gcd in ZZ[q] (content times primitive part), positive leading coeff.

    Uses the primitive polynomial remainder sequence, which keeps
    intermediate coefficients small enough for our matrix workloads.
    """
    if not a:
        return _possign(b)
    if not b:
        return _possign(a)
    ca, cb = abs(pcontent(a)), abs(pcontent(b))
    x, y = pprimitive(a), pprimitive(b)
    while y:
        x, y = y, pprimitive(_prem(x, y))
    return pscale(int_gcd(ca, cb), x)


def _possign(a):
    """a scaled by +-1 so the leading coefficient is positive."""
    if a and a[-1] < 0:
        return pneg(a)
    return a


def pformat(a, var="q"):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            term = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
        parts.append(sign + term)
    return "".join(parts)


# ---------------------------------------------------------------------------


class Scalar:
    """Immutable field element; arithmetic delegates to the owning field."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.payload, other.payload))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(other.payload, self.payload))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.payload))

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        base = self
        if n < 0:
            base, n = base.inv(), -n
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return Scalar(self.field, self.field._inv(self.payload))

    def is_zero(self):
        return self.field._is_zero(self.payload)

    def is_one(self):
        return self.payload == self.field.one.payload

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.payload == other.payload

    def __hash__(self):
        return hash((self.field, self.payload))

    def format(self):
        return self.field.format_payload(self.payload)

    def __repr__(self):
        return f"Scalar({self.format()!r})"


class Field:
    """Common interface; concrete fields fill in the payload operations."""

    def scalar(self, payload):
        return Scalar(self, payload)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def sum(self, scalars):
        total = self.zero
        for s in scalars:
            total = total + s
        return total

    def __ne__(self, other):
        return not self.__eq__(other)

    def characteristic(self):
        return 0

    def roots_of_unity(self, n):
        """All field elements x with x**n == 1."""
        raise NotImplementedError

    def primitive_root_of_unity(self, n):
        """An element of multiplicative order exactly n, or None."""
        for x in self.roots_of_unity(n):
            if multiplicative_order(x, n) == n:
                return x
        return None


class Rationals(Field):
    kind = "Q"

    def from_int(self, n):
        return Scalar(self, Fraction(n))

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def format_payload(self, a):
        return str(a)

    def parse(self, text):
        try:
            return Scalar(self, Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from None

    def roots_of_unity(self, n):
        return [self.one, -self.one] if n % 2 == 0 else [self.one]

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def characteristic(self):
        return self.p

    def from_int(self, n):
        return Scalar(self, n % self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def format_payload(self, a):
        return str(a)

    def parse(self, text):
        try:
            return self.from_int(int(text.strip()))
        except ValueError as exc:
            raise ParseError(f"bad residue {text!r}: {exc}") from None

    def multiplicative_generator(self):
        # F_p^* is cyclic of order p-1; brute-force search is fine at our sizes.
        for g in range(2, self.p):
            if multiplicative_order(self.from_int(g), self.p - 1) == self.p - 1:
                return self.from_int(g)
        return self.one  # p == 2

    def roots_of_unity(self, n):
        d = int_gcd(n, self.p - 1)
        g = self.multiplicative_generator()
        step = g ** ((self.p - 1) // d)
        roots, x = [], self.one
        for _ in range(d):
            roots.append(x)
            x = x * step
        return roots

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalFunctions(Field):
    """QQ(q): fractions of integer polynomials in canonical form."""

    kind = "Qq"
    var = "q"

    def generator(self):
        return Scalar(self, ((0, 1), (1,)))

    def from_int(self, n):
        return Scalar(self, (pnormalize([n]), (1,)))

    def from_fraction(self, fr):
        return Scalar(self, self._make(pnormalize([fr.numerator]), pnormalize([fr.denominator])))

    def _make(self, num, den):
        if not den:
            raise DivisionByZero("zero denominator in QQ(q)")
        if not num:
            return ((), (1,))
        g = pgcd(num, den)
        if g != (1,):
            num = pexactdiv(num, g)
            den = pexactdiv(den, g)
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return (num, den)

    def _add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        return self._make(padd(pmul(n1, d2), pmul(n2, d1)), pmul(d1, d2))

    def _sub(self, a, b):
        (n1, d1), (n2, d2) = a, b
        return self._make(psub(pmul(n1, d2), pmul(n2, d1)), pmul(d1, d2))

    def _mul(self, a, b):
        (n1, d1), (n2, d2) = a, b
        # cross-reduce first to keep the product small
        g1 = pgcd(n1, d2)
        if g1 != (1,):
            n1, d2 = pexactdiv(n1, g1), pexactdiv(d2, g1)
        g2 = pgcd(n2, d1)
        if g2 != (1,):
            n2, d1 = pexactdiv(n2, g2), pexactdiv(d1, g2)
        num, den = pmul(n1, n2), pmul(d1, d2)
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return (num, den)

    def _neg(self, a):
        return (pneg(a[0]), a[1])

    def _inv(self, a):
        num, den = a[1], a[0]
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return (num, den)

    def _is_zero(self, a):
        return not a[0]

    def format_payload(self, a):
        num, den = a
        if den == (1,):
            return pformat(num, self.var)
        return f"({pformat(num, self.var)})/({pformat(den, self.var)})"

    def parse(self, text):
        return _parse_rational_function(self, text)

    def is_constant(self, s):
        num, den = s.payload
        return len(num) <= 1 and len(den) <= 1

    def roots_of_unity(self, n):
        # the only torsion units of QQ(q)^* are +-1
        return [self.one, -self.one] if n % 2 == 0 else [self.one]

    def __eq__(self, other):
        return isinstance(other, RationalFunctions)

    def __hash__(self):
        return hash("Qq")

    def __repr__(self):
        return "Q(q)"


# ---------------------------------------------------------------------------
# Small recursive-descent parser for QQ(q) expressions like "(q^2-1)/(2q)".


def _tokenize(text):
    tokens, i = [], 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif c == "q":
            tokens.append(("q", None))
            i += 1
        elif c in "+-*/^()":
            tokens.append((c, None))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r} in scalar expression")
    return tokens


def _parse_rational_function(field, text):
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(tokens) or (kind is not None and tokens[pos][0] != kind):
            raise ParseError(f"malformed scalar expression {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr():
        if peek() in ("+", "-"):
            sign = take()[0]
            value = parse_term()
            if sign == "-":
                value = -value
        else:
            value = parse_term()
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term():
        value = parse_factor()
        while True:
            nxt = peek()
            if nxt in ("*", "/"):
                op = take()[0]
                rhs = parse_factor()
                value = value * rhs if op == "*" else value / rhs
            elif nxt in ("int", "q", "("):
                value = value * parse_factor()  # juxtaposition means product
            else:
                return value

    def parse_factor():
        base = parse_atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            exp = take("int")[1]
            base = base ** (-exp if neg else exp)
        return base

    def parse_atom():
        kind, value = take()
        if kind == "int":
            return field.from_int(value)
        if kind == "q":
            return field.generator()
        if kind == "(":
            inner = parse_expr()
            take(")")
            return inner
        raise ParseError(f"malformed scalar expression {text!r}")

    value = parse_expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in scalar expression {text!r}")
    return value


# ---------------------------------------------------------------------------


def field_from_name(name):
    """Resolve CLI names: "Q", "Qq", "Fp:7" (also accepts "F7")."""
    name = name.strip()
    if name == "Q":
        return Rationals()
    if name == "Qq":
        return RationalFunctions()
    if name.startswith("Fp:"):
        return PrimeField(int(name[3:]))
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ParseError(f"unknown field {name!r}")


def scalar_arith(op, *operands):
    """Dispatch basic arithmetic by name; mainly a convenience for job files."""
    if not operands:
        raise ValueError("no operands")
    first = operands[0]
    for s in operands[1:]:
        if isinstance(s, Scalar) and s.field != first.field:
            raise FieldMismatch(f"{first.field} vs {s.field}")
    if op == "add":
        return first + operands[1]
    if op == "sub":
        return first - operands[1]
    if op == "mul":
        return first * operands[1]
    if op == "div":
        return first / operands[1]
    if op == "neg":
        return -first
    if op == "inv":
        return first.inv()
    if op == "pow":
        return first ** operands[1]
    raise ValueError(f"unknown operation {op!r}")


def multiplicative_order(s, bound):
    """Least n <= bound with s**n == 1, or None.

    Over QQ(q) any nonconstant scalar has infinite order, so the power
    ladder is skipped entirely.
    """
    if s.is_zero():
        raise ZeroInput("multiplicative order of zero")
    field = s.field
    if isinstance(field, RationalFunctions) and not field.is_constant(s):
        return None
    power = s
    for n in range(1, bound + 1):
        if power.is_one():
            return n
        power = power * s
    return None
