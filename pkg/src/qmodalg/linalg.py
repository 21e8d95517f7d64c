"""Exact sparse linear algebra over the scalar field.

Vectors are dicts {key: Scalar} over any totally ordered key set (ints,
label tuples, words).  Everything here is deterministic: pivots are always
chosen as the smallest key, rows are processed in the order given, so
repeated runs produce identical bases.
"""

from __future__ import annotations

from .scalar import ONE


def vec_add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_scale(a, c):
    if not c:
        return {}
    return {k: c * x for k, x in a.items()}


def vec_axpy(a, c, b):
    """a + c*b, in a fresh dict."""
    if not c:
        return dict(a)
    out = dict(a)
    for k, x in b.items():
        s = out.get(k)
        cx = c * x
        if s is None:
            out[k] = cx
        else:
            s = s + cx
            if s:
                out[k] = s
            else:
                del out[k]
    return out


class EchelonBasis:
    """Incrementally maintained echelon basis; pivot = smallest key."""

    def __init__(self):
        self.pivots = {}  # pivot key -> vector with that pivot scaled to 1

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Residual of vec after subtracting pivot rows; fresh dict."""
        out = dict(vec)
        while out:
            hits = [k for k in out if k in self.pivots]
            if not hits:
                return out
            for k in sorted(hits):
                c = out.get(k)
                if c:
                    out = vec_axpy(out, -c, self.pivots[k])
        return out

    def add(self, vec):
        """Insert vec; returns True if it enlarged the span."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res.keys())
        inv = res[p].inverse()
        self.pivots[p] = {k: inv * c for k, c in res.items()}
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def rank(self):
        return len(self.pivots)


def rank(vectors):
    eb = EchelonBasis()
    for v in vectors:
        eb.add(v)
    return eb.rank()


class Expresser:
    """Writes target vectors as exact combinations of a fixed column list."""

    def __init__(self, columns):
        self.ncols = len(columns)
        # rows: (reduced vector, coordinate vector over original columns)
        self.rows = {}  # pivot key -> (vec, coords dict col_index -> Scalar)
        for idx, col in enumerate(columns):
            vec, coords = self._reduce(col, {idx: ONE})
            if vec:
                p = min(vec.keys())
                inv = vec[p].inverse()
                self.rows[p] = (
                    {k: inv * c for k, c in vec.items()},
                    {j: inv * c for j, c in coords.items()},
                )

    def _reduce(self, vec, coords):
        vec = dict(vec)
        coords = dict(coords)
        while vec:
            hits = sorted(k for k in vec if k in self.rows)
            if not hits:
                break
            for k in hits:
                c = vec.get(k)
                if c:
                    rv, rc = self.rows[k]
                    vec = vec_axpy(vec, -c, rv)
                    coords = vec_axpy(coords, -c, rc)
        return vec, coords

    def rank(self):
        return len(self.rows)

    def express(self, target):
        """Coordinates of target over the columns, or None if outside span."""
        vec, coords = self._reduce(target, {})
        if vec:
            return None
        return {j: -c for j, c in coords.items()}


def nullspace(rows, col_keys):
    """Basis of the right nullspace of the matrix with the given rows.

    rows: list of dicts {col_key: Scalar}; col_keys: ordered column list.
    Returns vectors as dicts over col_keys, deterministically ordered by
    their free column.
    """
    work = [dict(r) for r in rows if r]
    pivots = {}  # col key -> row dict (pivot scaled to 1, fully reduced)
    for key in col_keys:
        pivot_row = None
        for i, r in enumerate(work):
            if key in r:
                pivot_row = work.pop(i)
                break
        if pivot_row is None:
            continue
        inv = pivot_row[key].inverse()
        pivot_row = {k: inv * c for k, c in pivot_row.items()}
        for other_key, other in list(pivots.items()):
            c = other.get(key)
            if c:
                pivots[other_key] = vec_axpy(other, -c, pivot_row)
        nxt = []
        for r in work:
            c = r.get(key)
            r2 = vec_axpy(r, -c, pivot_row) if c else r
            if r2:
                nxt.append(r2)
        work = nxt
        pivots[key] = pivot_row
    free = [k for k in col_keys if k not in pivots]
    basis = []
    for f in free:
        vec = {f: ONE}
        for pk, row in pivots.items():
            c = row.get(f)
            if c:
                vec[pk] = -c
        basis.append(vec)
    return basis
