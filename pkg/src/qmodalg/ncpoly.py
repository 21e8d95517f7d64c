"""Words, noncommutative polynomials, and the straightening engine.

A Letter is a plain tuple (kind, factor, label) with kind 0 for X/v letters
and 1 for Y letters, so tuple comparison is exactly the monomial letter order
(X before Y, then factor slot, then label).  A Word is a tuple of Letters and
an ordered word is one with no adjacent pair matching a rewrite pattern.

Rewriting is leftmost reduction of two-letter redexes with memoised word
normal forms; every rule strictly decreases the degree-lexicographic order,
which makes the reduction terminating regardless of strategy, and fuel bounds
the number of expansions as a safety valve.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product

from .scalar import ONE


def letter(kind, factor, label):
    return (kind, factor, label)


def x_(i, a):
    return (0, i, a)


def y_(beta, b):
    return (1, beta, b)


class FuelExhausted(RuntimeError):
    """Straightening ran out of fuel; carries the partially reduced polynomial."""

    def __init__(self, partial):
        super().__init__("straightening fuel exhausted")
        self.partial = partial


class NCPolynomial:
    """Finite coefficient table Word -> Scalar; no zero coefficients stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @staticmethod
    def zero():
        return NCPolynomial()

    @staticmethod
    def one():
        return NCPolynomial({(): ONE})

    @staticmethod
    def from_word(word, coeff=ONE):
        return NCPolynomial({tuple(word): coeff})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NCPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        if not c:
            return NCPolynomial()
        return NCPolynomial({w: c * x for w, x in self.coeffs.items()})

    def concat(self, other):
        """Free (tensor-algebra) product, no straightening."""
        out = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                w = w1 + w2
                s = out.get(w)
                t = c1 * c2
                if s is None:
                    out[w] = t
                else:
                    s = s + t
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return NCPolynomial(out)

    def terms(self):
        """(word, coeff) pairs in deterministic (sorted) order."""
        return sorted(self.coeffs.items())

    def render(self, letter_str=None):
        if not self.coeffs:
            return "0"
        letter_str = letter_str or default_letter_str
        parts = []
        for w, c in self.terms():
            mono = "".join(letter_str(l) for l in w) or "1"
            cs = str(c)
            if w == ():
                body = "(%s)" % cs if " " in cs else cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            elif " " in cs:
                body = "(%s)*%s" % (cs, mono)
            else:
                body = "%s*%s" % (cs, mono)
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


def default_letter_str(l):
    kind, i, a = l
    if kind == 1:
        return "Y[%d,%d]" % (i, a)
    return "X[%d,%d]" % (i, a)


def terms_json(poly, letter_str=None):
    """Scalar-word term list [[coeff, word], ...] in report format."""
    letter_str = letter_str or default_letter_str
    return [
        [str(c), "".join(letter_str(l) for l in w) or "1"]
        for w, c in poly.terms()
    ]


def sq_letter_str(l):
    return "v[%d]" % l[2]


class RuleValidationError(ValueError):
    pass


class RewriteSystem:
    """Two-letter patterns with polynomial replacements, plus a memoised
    leftmost reduction to ordered-word normal form."""

    def __init__(self, rules, order_descriptor="deglex", fuel_default=10 ** 6):
        self.rules = {}
        self.order_descriptor = order_descriptor
        self.fuel_default = fuel_default
        self._memo = {}
        for pat, repl in rules.items():
            self.add_rule(pat, repl)

    def add_rule(self, pattern, replacement):
        pattern = tuple(pattern)
        if len(pattern) != 2:
            raise RuleValidationError("patterns are two-letter words")
        for w in replacement.coeffs:
            if len(w) != 2:
                raise RuleValidationError("replacements must be degree-homogeneous")
            if not w < pattern:
                raise RuleValidationError(
                    f"replacement word {w} not below pattern {pattern}"
                )
        self.rules[pattern] = replacement
        self._memo.clear()

    def is_normal_word(self, word):
        rules = self.rules
        return not any(
            (word[i], word[i + 1]) in rules for i in range(len(word) - 1)
        )

    def _nf_word(self, word, budget):
        """Normal form of a single word; memoised; budget is a 1-element list."""
        memo = self._memo
        cached = memo.get(word)
        if cached is not None:
            return cached
        rules = self.rules
        stack = [word]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            redex = -1
            for i in range(len(top) - 1):
                if (top[i], top[i + 1]) in rules:
                    redex = i
                    break
            if redex < 0:
                memo[top] = {top: ONE}
                stack.pop()
                continue
            if budget[0] <= 0:
                raise FuelExhausted(NCPolynomial({top: ONE}))
            repl = rules[(top[redex], top[redex + 1])]
            pre, post = top[:redex], top[redex + 2:]
            deps = {}
            for w, c in repl.coeffs.items():
                dep = pre + w + post
                s = deps.get(dep)
                deps[dep] = c if s is None else s + c
            missing = [d for d in deps if d not in memo]
            if missing:
                stack.extend(missing)
                continue
            budget[0] -= 1
            out = {}
            for dep, c in deps.items():
                if not c:
                    continue
                for w, x in memo[dep].items():
                    s = out.get(w)
                    t = c * x
                    if s is None:
                        out[w] = t
                    else:
                        s = s + t
                        if s:
                            out[w] = s
                        else:
                            del out[w]
            memo[top] = out
            stack.pop()
        return memo[word]

    def normal_form(self, poly, fuel=None):
        """Deterministic normal form, linear in the input polynomial."""
        budget = [self.fuel_default if fuel is None else fuel]
        if budget[0] <= 0:
            raise ValueError("fuel must be positive")
        out = {}
        try:
            for word, coeff in poly.terms():
                for w, x in self._nf_word(word, budget).items():
                    s = out.get(w)
                    t = coeff * x
                    if s is None:
                        out[w] = t
                    else:
                        s = s + t
                        if s:
                            out[w] = s
                        else:
                            del out[w]
        except FuelExhausted as exc:
            raise FuelExhausted(NCPolynomial(out) + exc.partial) from None
        return NCPolynomial(out)

    def multiply(self, p, r, fuel=None):
        """Normal form of the concatenation product; bilinear."""
        return self.normal_form(p.concat(r), fuel)


def graded_words(slot_letters, degree, strict=False):
    """All ordered words of the given multidegree, lexicographically.

    slot_letters: per-slot letter lists (each already sorted); degree: the
    per-slot word lengths.  strict=True enumerates square-free strictly
    increasing picks (exterior-algebra normal form).
    """
    if len(degree) != len(slot_letters):
        raise ValueError("degree length must match the slot count")
    chooser = combinations if strict else combinations_with_replacement
    blocks = [sorted(chooser(block, d)) for block, d in zip(slot_letters, degree)]
    return [sum(parts, ()) for parts in product(*blocks)]
