"""Exact sparse linear operators over the scalar field.

Operators store a coefficient table {(row_label, col_label): Scalar} together
with ordered domain/codomain label lists.  Labels are ints for V itself and
tuples of ints for tensor powers.  No zero entries are ever stored, so
equality of operators is equality of tables.
"""

from __future__ import annotations

from itertools import product

from .scalar import ONE


class LinearOperator:
    __slots__ = ("domain", "codomain", "entries", "_by_col")

    def __init__(self, domain, codomain, entries):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.entries = {k: v for k, v in entries.items() if v}
        self._by_col = None

    @staticmethod
    def identity(labels):
        return LinearOperator(labels, labels, {(a, a): ONE for a in labels})

    @staticmethod
    def zero(domain, codomain=None):
        return LinearOperator(domain, codomain if codomain is not None else domain, {})

    def by_col(self):
        if self._by_col is None:
            cols = {}
            for (r, c), val in self.entries.items():
                cols.setdefault(c, []).append((r, val))
            self._by_col = cols
        return self._by_col

    def column(self, c):
        """Image of the basis vector c, as a dict {row: Scalar}."""
        return {r: val for r, val in self.by_col().get(c, [])}

    def apply(self, vec):
        out = {}
        cols = self.by_col()
        for c, coeff in vec.items():
            for r, val in cols.get(c, []):
                s = out.get(r)
                t = coeff * val
                if s is None:
                    out[r] = t
                else:
                    s = s + t
                    if s:
                        out[r] = s
                    else:
                        del out[r]
        return out

    def compose(self, other):
        """self o other (other applied first)."""
        if other.codomain != self.domain:
            raise ValueError("composition dimension mismatch")
        cols = self.by_col()
        out = {}
        for (r2, c2), v2 in other.entries.items():
            for r1, v1 in cols.get(r2, []):
                key = (r1, c2)
                s = out.get(key)
                t = v1 * v2
                if s is None:
                    out[key] = t
                else:
                    s = s + t
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return LinearOperator(other.domain, self.codomain, out)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("addition dimension mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LinearOperator(self.domain, self.codomain, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        if not c:
            return LinearOperator.zero(self.domain, self.codomain)
        return LinearOperator(
            self.domain, self.codomain, {k: c * v for k, v in self.entries.items()}
        )

    def __neg__(self):
        return self.scale(-ONE)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.entries == other.entries
        )

    def commutes_with(self, other):
        return (self @ other) == (other @ self)

    def to_json_triplets(self):
        """Sorted (row, col, scalar-string) triplets for cross-implementation diffs."""
        def norm(label):
            return list(label) if isinstance(label, tuple) else label

        items = sorted(self.entries.items())
        return [[norm(r), norm(c), str(v)] for (r, c), v in items]


def kron(ops):
    """Tensor product of operators on V; labels become tuples of V-labels."""
    domain = [tuple(w) for w in product(*[op.domain for op in ops])]
    codomain = [tuple(w) for w in product(*[op.codomain for op in ops])]
    entries = {}
    for pairs in product(*[list(op.entries.items()) for op in ops]):
        row = tuple(p[0][0] for p in pairs)
        col = tuple(p[0][1] for p in pairs)
        val = pairs[0][1]
        for p in pairs[1:]:
            val = val * p[1]
        key = (row, col)
        s = entries.get(key)
        entries[key] = val if s is None else s + val
    entries = {k: v for k, v in entries.items() if v}
    return LinearOperator(domain, codomain, entries)


def lift_block_op(op, labels, r, start, width):
    """Embed an operator on V^(x)width at slots start..start+width-1 of V^(x)r."""
    words = [tuple(w) for w in product(labels, repeat=r)]
    entries = {}
    for ctx in product(labels, repeat=r - width):
        pre, post = ctx[: start - 1], ctx[start - 1:]
        for (rw, cw), val in op.entries.items():
            entries[(pre + rw + post, pre + cw + post)] = val
    return LinearOperator(words, words, entries)


def lift_pair_op(op2, labels, r, i):
    """id^(i-1) (x) op2 (x) id^(r-i-1) on V^(x)r, for op2 acting on V(x)V."""
    return lift_block_op(op2, labels, r, i, 2)
