"""Exact arithmetic in the coefficient field K = Frac(Q[v, v^-1]), with q = v^2.

Scalars are fractions of Laurent polynomials in v over the rationals, kept in
canonical form at all times: numerator and denominator share no polynomial
factor, the denominator is a true polynomial in v (constant term nonzero)
with leading coefficient 1, and zero is 0/1.  Equality of scalars is plain
equality of representations, so dict comparison decides field equality.

The base variable is v = q^(1/2); q is the synonym v^2.  Everything in scope
is rational in v, so coefficients are Fractions.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class ScalarDivisionError(ZeroDivisionError):
    """Division of a scalar by zero."""


class PoleAtOneError(ArithmeticError):
    """classical_limit was asked for a scalar with a pole at v = 1."""


# ---------------------------------------------------------------------------
# Laurent polynomials as sparse dicts {exponent: Fraction}, no zero values.

def _lp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _lp_neg(a):
    return {e: -c for e, c in a.items()}


def _lp_mul(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def _poly_divmod(a, b):
    """Division with remainder of polynomial dicts (exponents >= 0), b != 0."""
    rem = dict(a)
    quo = {}
    db = max(b)
    lb = b[db]
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] / lb
        e0 = dr - db
        quo[e0] = quo.get(e0, _F0) + c
        for eb, cb in b.items():
            e = eb + e0
            s = rem.get(e, _F0) - c * cb
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return {e: c for e, c in quo.items() if c}, rem


def _poly_gcd(a, b):
    """Monic gcd of polynomial dicts; at least one argument nonzero."""
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    lc = a[max(a)]
    if lc != 1:
        return {e: c / lc for e, c in a.items()}
    return a


_DEN_ONE = {0: _F1}


def _canonize(num, den):
    num = {e: c for e, c in num.items() if c}
    den = {e: c for e, c in den.items() if c}
    if not den:
        raise ScalarDivisionError("zero denominator")
    if not num:
        return {}, dict(_DEN_ONE)
    if len(den) == 1:
        # monomial denominator c*v^e divides through exactly
        ((e, c),) = den.items()
        if e or c != 1:
            num = {en - e: cn / c for en, cn in num.items()}
        return num, dict(_DEN_ONE)
    na, da = min(num), min(den)
    n0 = {e - na: c for e, c in num.items()}
    d0 = {e - da: c for e, c in den.items()}
    g = _poly_gcd(n0, d0)
    if max(g) > 0:
        n0 = _poly_divmod(n0, g)[0]
        d0 = _poly_divmod(d0, g)[0]
    if len(d0) == 1:
        ((e, c),) = d0.items()
        return {en + na - da - e: cn / c for en, cn in n0.items()}, dict(_DEN_ONE)
    lc = d0[max(d0)]
    if lc != 1:
        d0 = {e: c / lc for e, c in d0.items()}
        n0 = {e: c / lc for e, c in n0.items()}
    shift = na - da
    if shift:
        n0 = {e + shift: c for e, c in n0.items()}
    return n0, d0


class Scalar:
    """An element of K = Frac(Q[v, v^-1]) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, (int, Fraction)):
            num = {0: Fraction(num)} if num else {}
        if den is None:
            den = dict(_DEN_ONE)
        elif isinstance(den, (int, Fraction)):
            if not den:
                raise ScalarDivisionError("zero denominator")
            den = {0: Fraction(den)}
        self.num, self.den = _canonize(num, den)
        self._hash = None

    @staticmethod
    def _raw(num, den):
        """Build from already-canonical parts (internal fast path)."""
        s = object.__new__(Scalar)
        s.num = num
        s.den = den
        s._hash = None
        return s

    # -- ring structure ----------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _DEN_ONE and self.den == _DEN_ONE

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((frozenset(self.num.items()), frozenset(self.den.items())))
            self._hash = h
        return h

    def __neg__(self):
        return Scalar._raw(_lp_neg(self.num), self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if self.den == _DEN_ONE and other.den == _DEN_ONE:
            return Scalar._raw(_lp_add(self.num, other.num), dict(_DEN_ONE))
        return Scalar(
            _lp_add(_lp_mul(self.num, other.den), _lp_mul(other.num, self.den)),
            _lp_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if self.den == _DEN_ONE and other.den == _DEN_ONE:
            return Scalar._raw(_lp_mul(self.num, other.num), dict(_DEN_ONE))
        return Scalar(_lp_mul(self.num, other.num), _lp_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ScalarDivisionError("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not other.num:
            raise ScalarDivisionError("division by zero")
        return Scalar(_lp_mul(self.num, other.den), _lp_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return Scalar(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation ----------------------------------------------------------

    def classical_limit(self):
        """Exact value at v = 1 (q -> 1); raises PoleAtOneError on a pole."""
        dv = sum(self.den.values(), _F0)
        if dv == 0:
            # canonical form has gcd(num, den) = 1, so this is a true pole
            raise PoleAtOneError(f"pole at v = 1 in {self}")
        return sum(self.num.values(), _F0) / dv

    # -- printing / parsing ---------------------------------------------------

    def __str__(self):
        even = all(e % 2 == 0 for e in self.num) and all(e % 2 == 0 for e in self.den)
        var, unit = ("q", 2) if even else ("v", 1)
        ns = _poly_str(self.num, var, unit)
        if self.den == _DEN_ONE:
            return ns
        return "(%s)/(%s)" % (ns, _poly_str(self.den, var, unit))

    def __repr__(self):
        return "Scalar(%s)" % self


def _poly_str(p, var, unit):
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        k = e // unit
        if k == 0:
            body = str(abs(c))
        else:
            pw = var if k == 1 else "%s^%d" % (var, k)
            ac = abs(c)
            body = pw if ac == 1 else "%s*%s" % (ac, pw)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# constants and named elements

ZERO = Scalar(0)
ONE = Scalar(1)


def v_pow(k):
    """v^k."""
    return Scalar({k: _F1})


def q_pow(k):
    """q^k = v^(2k)."""
    return Scalar({2 * k: _F1})


Q = q_pow(1)
V = v_pow(1)


def gauss_int(n, step=2):
    """Quantum integer [n] in q_i = v^step: v^(step(n-1)) + v^(step(n-3)) + ...

    step=2 gives the usual [n]_q, step=1 gives [n]_v, step=4 gives [n]_{q^2}.
    """
    if n < 0:
        return -gauss_int(-n, step)
    return Scalar({step * (n - 1 - 2 * j): _F1 for j in range(n)})


def q_int(n):
    """[n]_q = (q^n - q^-n)/(q - q^-1)."""
    return gauss_int(n, 2)


def gauss_binom(n, k, step=2):
    """Quantum binomial coefficient [n choose k] in v^step, exact."""
    if k < 0 or k > n:
        return ZERO
    out = ONE
    for t in range(1, k + 1):
        out = out * gauss_int(n - k + t, step) / gauss_int(t, step)
    return out


def scalar_arith(a, b, op):
    """Dispatch form of the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def classical_limit(a):
    """Module-level alias for Scalar.classical_limit."""
    return a.classical_limit()


# ---------------------------------------------------------------------------
# parsing (round-trips the printed form)

class _Tok:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def next_int(self):
        ch = self.peek()
        sign = 1
        if ch == "-":
            self.pos += 1
            sign = -1
            ch = self.peek()
        if ch is None or not ch.isdigit():
            raise ValueError("expected integer at %r" % self.text[self.pos:])
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return sign * int(self.text[start:self.pos])


def parse_scalar(text):
    """Parse expressions like 'q^2 - 2 + q^-2' or '(q+q^-1)/(q^2-1)'."""
    tk = _Tok(text)
    val = _parse_expr(tk)
    if tk.peek() is not None:
        raise ValueError("trailing input in scalar: %r" % text[tk.pos:])
    return val


def _parse_expr(tk):
    val = _parse_term(tk)
    while True:
        ch = tk.peek()
        if ch == "+":
            tk.pos += 1
            val = val + _parse_term(tk)
        elif ch == "-":
            tk.pos += 1
            val = val - _parse_term(tk)
        else:
            return val


def _parse_term(tk):
    val = _parse_atom(tk)
    while True:
        ch = tk.peek()
        if ch == "*":
            tk.pos += 1
            val = val * _parse_atom(tk)
        elif ch == "/":
            tk.pos += 1
            val = val / _parse_atom(tk)
        else:
            return val


def _parse_atom(tk):
    ch = tk.peek()
    if ch is None:
        raise ValueError("unexpected end of scalar text")
    if ch == "-":
        tk.pos += 1
        return -_parse_atom(tk)
    if ch == "(":
        tk.pos += 1
        val = _parse_expr(tk)
        if tk.peek() != ")":
            raise ValueError("missing ')'")
        tk.pos += 1
        return val
    if ch in ("q", "v"):
        tk.pos += 1
        k = 1
        if tk.peek() == "^":
            tk.pos += 1
            k = tk.next_int()
        return q_pow(k) if ch == "q" else v_pow(k)
    if ch.isdigit():
        return Scalar(tk.next_int())
    raise ValueError("unexpected character %r in scalar" % ch)
