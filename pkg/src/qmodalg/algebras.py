"""Construction of the presented algebras as rewrite systems.

Each handle owns an alphabet, a per-slot grading, and a straightening rewrite
system.  Shipped rule sets are derived from the braiding itself: same-slot
rules are solved exactly from the degree-2 relation subspace of V (x) V, and
cross-slot rules read off the entries of R-check (block exchange).  The
transcribed textbook presentation variants are available behind strict=True
and compared rule-by-rule by the oracle-diff machinery; the independent
tensor-route product (lift, braid blocks with cabled R-checks, re-straighten
slotwise) lives in tensor_oracle_product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .braiding import (
    rcheck,
    rcheck_cabled,
    rmatrix_natural_gl_inverse,
    spectral_data,
)
from .linalg import Expresser
from .ncpoly import (
    NCPolynomial,
    RewriteSystem,
    default_letter_str,
    graded_words,
    sq_letter_str,
    x_,
    y_,
)
from .rootdata import LieTypeSpec, natural_rep, sigma_candidate
from .scalar import ONE, q_pow


class PresentationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorRef:
    kind: str          # e | f | k | sigma
    index: int = 0
    group: str = "g"   # 'm' / 'n' select the factor group on the exterior algebra

    def __str__(self):
        tag = "" if self.group == "g" else self.group
        return f"{self.kind}{tag}{self.index}" if self.kind != "sigma" else "sigma"


class AlgebraHandle:
    """A presented algebra: alphabet, grading, rewrite system, letter actions."""

    def __init__(self, kind, spec, params, slots, rs, manifest, strict=False):
        self.kind = kind          # Sq | Am | Akl | Exterior
        self.spec = spec          # LieTypeSpec (None for Exterior)
        self.params = params      # {'m': ...} | {'k':..,'l':..,'n':..} | {'m':..,'n':..}
        self.slots = slots        # list of (slot_name, tuple of letters)
        self.rs = rs
        self.manifest = manifest  # list of {pattern, replacement, provenance}
        self.strict = strict
        self.alphabet = tuple(l for _, block in slots for l in block)
        self._slot_index = {}
        for idx, (_, block) in enumerate(slots):
            for l in block:
                self._slot_index[l] = idx
        self._action_cache = {}
        self._validate()

    # -- structure ---------------------------------------------------------

    def _validate(self):
        rules = self.rs.rules
        for l1 in self.alphabet:
            for l2 in self.alphabet:
                pat = (l1, l2)
                if pat in rules:
                    repl = rules[pat]
                    pd = self.grading(pat)
                    for w in repl.coeffs:
                        if self.grading(w) != pd:
                            raise PresentationError(
                                f"rule {pat} is not degree-homogeneous"
                            )
                else:
                    if l1 > l2 or (l1 == l2 and self.kind == "Exterior"):
                        raise PresentationError(
                            f"non-normal pair {pat} has no straightening rule"
                        )

    def grading(self, word):
        d = [0] * len(self.slots)
        for l in word:
            d[self._slot_index[l]] += 1
        return tuple(d)

    def graded_words(self, degree):
        strict = self.kind == "Exterior"
        return graded_words([blk for _, blk in self.slots], degree, strict=strict)

    def graded_dimension(self, degree):
        return len(self.graded_words(degree))

    def degree_compositions(self, total):
        """All multidegrees with the given total, in lexicographic order."""
        nslots = len(self.slots)

        def rec(rem, parts):
            if len(parts) == nslots - 1:
                yield tuple(parts + [rem])
                return
            for d in range(rem + 1):
                yield from rec(rem - d, parts + [d])

        return list(rec(total, []))

    # -- algebra operations --------------------------------------------------

    def normal_form(self, p, fuel=None):
        return self.rs.normal_form(p, fuel)

    def multiply(self, p, r, fuel=None):
        return self.rs.multiply(p, r, fuel)

    def one(self):
        return NCPolynomial.one()

    def letter_poly(self, l):
        return NCPolynomial.from_word((l,))

    def word_poly(self, letters):
        return NCPolynomial.from_word(tuple(letters))

    def render(self, p):
        style = sq_letter_str if self.kind == "Sq" else default_letter_str
        return p.render(style)

    # -- quantum group action ------------------------------------------------

    def reps(self):
        if self.kind == "Exterior":
            return {
                "m": natural_rep(LieTypeSpec("GL", self.params["m"])),
                "n": natural_rep(LieTypeSpec("GL", self.params["n"])),
            }
        return {"g": natural_rep(self.spec)}

    def invariance_generators(self, include_sigma=False):
        out = []
        for grp, rep in sorted(self.reps().items()):
            for i in rep.chevalley_indices():
                out.append(GeneratorRef("e", i, grp))
                out.append(GeneratorRef("f", i, grp))
            for b in rep.cartan_indices():
                out.append(GeneratorRef("k", b, grp))
        if include_sigma and self.spec is not None and self.spec.family in ("B", "D"):
            out.append(GeneratorRef("sigma"))
        return out

    def letter_weight(self, l):
        """Weight in the epsilon basis (concatenated over groups for Exterior)."""
        if self.kind == "Exterior":
            reps = self.reps()
            wm = reps["m"].weights[l[1] - 1]
            wn = reps["n"].weights[l[2] - 1]
            return wm + wn
        rep = natural_rep(self.spec)
        w = rep.weights[l[2] - 1]
        if l[0] == 1:
            w = tuple(-x for x in w)
        return w

    def weight(self, word):
        dim = len(self.letter_weight(self.alphabet[0]))
        acc = [0] * dim
        for l in word:
            for i, x in enumerate(self.letter_weight(l)):
                acc[i] += x
        return tuple(acc)

    def generator_action(self, g):
        """subst/cok tables for the Leibniz evaluation of a generator."""
        if g not in self._action_cache:
            self._action_cache[g] = self._build_action(g)
        return self._action_cache[g]

    def _build_action(self, g):
        subst = {}
        cok = {}
        if g.kind == "sigma":
            op = sigma_candidate(self.spec)
            cols = {c: list(rows) for c, rows in op.by_col().items()}
            for l in self.alphabet:
                subst[l] = tuple(
                    ((l[0], l[1], r), v) for r, v in cols.get(l[2], [])
                )
            return subst, None
        rep = self.reps()["g"]
        for l in self.alphabet:
            dual = l[0] == 1
            label = l[2]
            if g.kind in ("k", "k_inv"):
                ev = rep.k_diag(g.index, label)
                if dual:
                    ev = ev.inverse()
                if g.kind == "k_inv":
                    ev = ev.inverse()
                subst[l] = ((l, ev),)
                continue
            mat = self._pi_matrix(rep, g, dual)
            images = tuple(
                ((l[0], l[1], r), v)
                for (r, c), v in mat.items()
                if c == label
            )
            subst[l] = images
            kv = rep.coproduct_k(g.index)[label]
            cok[l] = kv.inverse() if dual else kv
        return subst, cok

    def _pi_matrix(self, rep, g, dual):
        from .rootdata import mat_inv_diag, mat_mul

        base = rep.e_mats[g.index] if g.kind == "e" else rep.f_mats[g.index]
        if not dual:
            return base
        # dual coefficient action: pi'(x) = pi(S(x))^T
        kdiag = {(a, a): v for a, v in rep.coproduct_k(g.index).items()}
        if g.kind == "e":
            m = mat_mul(base, mat_inv_diag(kdiag, rep.labels))
        else:
            m = mat_mul(kdiag, base)
        return {(c, r): -v for (r, c), v in m.items()}


class ExteriorHandle(AlgebraHandle):
    """Letters (0, i, j) = row i of gl_m, column j of gl_n."""

    def letter_weight(self, l):
        reps = self.reps()
        return reps["m"].weights[l[1] - 1] + reps["n"].weights[l[2] - 1]

    def _build_action(self, g):
        reps = self.reps()
        rep = reps[g.group]
        subst = {}
        cok = {}
        pos = 1 if g.group == "m" else 2
        for l in self.alphabet:
            label = l[pos]
            if g.kind in ("k", "k_inv"):
                ev = rep.k_diag(g.index, label)
                subst[l] = ((l, ev.inverse() if g.kind == "k_inv" else ev),)
                continue
            mat = rep.e_mats[g.index] if g.kind == "e" else rep.f_mats[g.index]
            images = []
            for (r, c), v in mat.items():
                if c == label:
                    nl = (0, r, l[2]) if pos == 1 else (0, l[1], r)
                    images.append((nl, v))
            subst[l] = tuple(images)
            cok[l] = rep.coproduct_k(g.index)[label]
        return subst, cok


# ---------------------------------------------------------------------------
# same-slot straightening rules, solved from the degree-2 relation subspace

@lru_cache(maxsize=None)
def _pair_rules_solved(spec):
    """labels (b, a) with b > a mapped to {(c, d) c<=d: Scalar}, exactly."""
    rep = natural_rep(spec)
    sd = spectral_data(spec)
    ideal = list(sd.summand("anti")[1])
    if spec.family == "C":
        ideal.extend(sd.summand("triv")[1])
    labels = rep.labels
    normal = [(a, b) for a in labels for b in labels if a <= b]
    columns = ideal + [{p: ONE} for p in normal]
    expr = Expresser(columns)
    if expr.rank() != rep.dim_v ** 2 or len(columns) != rep.dim_v ** 2:
        raise PresentationError(f"degree-2 solve is not determined for {spec}")
    rules = {}
    for b in labels:
        for a in labels:
            if b <= a:
                continue
            coords = expr.express({(b, a): ONE})
            if coords is None:
                raise PresentationError(f"pair ({b},{a}) not expressible for {spec}")
            repl = {}
            for j, c in coords.items():
                if j >= len(ideal) and c:
                    repl[normal[j - len(ideal)]] = c
            rules[(b, a)] = repl
    return rules


@lru_cache(maxsize=None)
def _pair_rules_dual_row(n):
    """Same-row straightening for the dual quantum matrix rows."""
    rinv = rmatrix_natural_gl_inverse(n)
    labels = tuple(range(1, n + 1))
    relations = []
    for a in labels:
        for b in labels:
            rel = {(b, a): q_pow(-1)}
            for ((r1, r2), (c1, c2)), v in rinv.entries.items():
                if (r1, r2) == (a, b):
                    key = (c1, c2)
                    s = rel.get(key)
                    t = -v
                    rel[key] = t if s is None else s + t
            rel = {k: v for k, v in rel.items() if v}
            if rel:
                relations.append(rel)
    normal = [(a, b) for a in labels for b in labels if a <= b]
    from .linalg import EchelonBasis

    eb = EchelonBasis()
    ideal = []
    for rel in relations:
        if eb.add(rel):
            ideal.append(rel)
    columns = ideal + [{p: ONE} for p in normal]
    expr = Expresser(columns)
    if expr.rank() != n * n:
        raise PresentationError("dual row solve is not determined")
    rules = {}
    for b in labels:
        for a in labels:
            if b <= a:
                continue
            coords = expr.express({(b, a): ONE})
            if coords is None:
                raise PresentationError(f"dual pair ({b},{a}) not expressible")
            repl = {}
            for j, c in coords.items():
                if j >= len(ideal) and c:
                    repl[normal[j - len(ideal)]] = c
            rules[(b, a)] = repl
    return rules


@lru_cache(maxsize=None)
def _pair_rules_exterior(m, n):
    """Straightening of weakly decreasing letter pairs of the exterior algebra."""
    rep_m = natural_rep(LieTypeSpec("GL", m))
    rep_n = natural_rep(LieTypeSpec("GL", n))
    sd_m = spectral_data(LieTypeSpec("GL", m))
    sd_n = spectral_data(LieTypeSpec("GL", n))
    ideal = []
    for part_m, part_n in (("sym", "sym"), ("anti", "anti")):
        for u in sd_m.summand(part_m)[1]:
            for w in sd_n.summand(part_n)[1]:
                vec = {}
                for (i, s), cu in u.items():
                    for (j, t), cw in w.items():
                        vec[((i, j), (s, t))] = cu * cw
                ideal.append(vec)
    letters = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    normal = [(p, r) for p in letters for r in letters if p < r]
    columns = ideal + [{pr: ONE} for pr in normal]
    expr = Expresser(columns)
    if expr.rank() != (m * n) ** 2 or len(columns) != (m * n) ** 2:
        raise PresentationError("exterior degree-2 solve is not determined")
    rules = {}
    for p in letters:
        for r in letters:
            if p < r:
                continue
            coords = expr.express({(p, r): ONE})
            if coords is None:
                raise PresentationError(f"exterior pair ({p},{r}) not expressible")
            repl = {}
            for j, c in coords.items():
                if j >= len(ideal) and c:
                    repl[normal[j - len(ideal)]] = c
            rules[(p, r)] = repl
    return rules


# ---------------------------------------------------------------------------
# cross-slot rules from R-check entries

def _rcheck_columns(spec):
    rc = rcheck(spec)
    return {c: list(rows) for c, rows in rc.by_col().items()}


def _rinv_rows(n):
    rows = {}
    for (r, c), v in rmatrix_natural_gl_inverse(n).entries.items():
        rows.setdefault(r, []).append((c, v))
    return rows


# ---------------------------------------------------------------------------
# handle builders

def _add_rules(rs, manifest, rules, provenance, render=default_letter_str):
    for pat, repl in sorted(rules.items()):
        poly = repl if isinstance(repl, NCPolynomial) else NCPolynomial(repl)
        rs.add_rule(pat, poly)
        manifest.append(
            {
                "pattern": "".join(render(l) for l in pat),
                "replacement": poly.render(render),
                "provenance": provenance,
            }
        )


def _family_pair_provenance(spec):
    return {
        "D": "even orthogonal degree-2 ideal solve (antisymmetric summand)",
        "B": "odd orthogonal degree-2 ideal solve (antisymmetric summand)",
        "C": "symplectic degree-2 ideal solve (antisymmetric + invariant line)",
        "GL": "quantum matrix row relations (antisymmetric summand solve)",
    }[spec.family]


@lru_cache(maxsize=None)
def build_sq(spec):
    """The braided symmetric algebra of the natural module, one slot."""
    if spec.family == "GL":
        raise ValueError("the GL quantum affine space arises inside build_akl")
    return _build_am(spec, 1, kind="Sq")


@lru_cache(maxsize=None)
def build_am(spec, m, strict=False):
    if m < 1:
        raise ValueError("m must be positive")
    return _build_am(spec, m, kind="Am", strict=strict)


def _build_am(spec, m, kind, strict=False):
    rep = natural_rep(spec)
    labels = rep.labels
    slots = [
        (f"slot{i}", tuple(x_(i, a) for a in labels)) for i in range(1, m + 1)
    ]
    rs = RewriteSystem({})
    manifest = []
    render = sq_letter_str if kind == "Sq" else default_letter_str

    pair = _pair_rules_solved(spec)
    for i in range(1, m + 1):
        rules = {
            (x_(i, b), x_(i, a)): NCPolynomial(
                {(x_(i, c), x_(i, d)): v for (c, d), v in repl.items()}
            )
            for (b, a), repl in pair.items()
        }
        _add_rules(rs, manifest, rules, _family_pair_provenance(spec), render)

    if m > 1:
        if strict and spec.family in ("B", "C", "D"):
            cross, prov = _printed_cross_rules(spec, m)
            _add_rules(rs, manifest, cross, prov, render)
        else:
            cols = _rcheck_columns(spec)
            cross = {}
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    for b in labels:
                        for a in labels:
                            repl = {
                                (x_(i, u), x_(j, w)): v
                                for (u, w), v in cols.get((b, a), [])
                            }
                            cross[(x_(j, b), x_(i, a))] = NCPolynomial(repl)
            _add_rules(
                rs, manifest, cross, "cross-slot exchange from R-check entries", render
            )

    handle = AlgebraHandle(
        kind=kind,
        spec=spec,
        params={"m": m},
        slots=slots,
        rs=rs,
        manifest=manifest,
        strict=strict,
    )
    return handle


@lru_cache(maxsize=None)
def build_akl(n, k, l):
    """Quantum matrix rows tensor dual rows: k X-rows and l Y-rows over gl_n."""
    if min(n, k, l) < 1:
        raise ValueError("n, k, l must be positive")
    spec = LieTypeSpec("GL", n)
    labels = natural_rep(spec).labels
    slots = [(f"x{i}", tuple(x_(i, a) for a in labels)) for i in range(1, k + 1)]
    slots += [(f"y{b}", tuple(y_(b, a) for a in labels)) for b in range(1, l + 1)]
    rs = RewriteSystem({})
    manifest = []

    pair = _pair_rules_solved(spec)
    for i in range(1, k + 1):
        rules = {
            (x_(i, b), x_(i, a)): NCPolynomial(
                {(x_(i, c), x_(i, d)): v for (c, d), v in repl.items()}
            )
            for (b, a), repl in pair.items()
        }
        _add_rules(rs, manifest, rules, "quantum matrix row relations")

    cols = _rcheck_columns(spec)
    cross = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for b in labels:
                for a in labels:
                    repl = {
                        (x_(i, u), x_(j, w)): v for (u, w), v in cols.get((b, a), [])
                    }
                    cross[(x_(j, b), x_(i, a))] = NCPolynomial(repl)
    _add_rules(rs, manifest, cross, "cross-row exchange from R-check entries")

    dual_pair = _pair_rules_dual_row(n)
    for b in range(1, l + 1):
        rules = {
            (y_(b, v1), y_(b, v2)): NCPolynomial(
                {(y_(b, c), y_(b, d)): v for (c, d), v in repl.items()}
            )
            for (v1, v2), repl in dual_pair.items()
        }
        _add_rules(rs, manifest, rules, "dual quantum matrix row relations")

    rrows = _rinv_rows(n)
    ycross = {}
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            for b in labels:
                for a in labels:
                    repl = {
                        (y_(i, c), y_(j, d)): v
                        for (c, d), v in rrows.get((a, b), [])
                    }
                    ycross[(y_(j, b), y_(i, a))] = NCPolynomial(repl)
    _add_rules(rs, manifest, ycross, "dual cross-row exchange from inverse R entries")

    # mixed rules: Y past X via inverse-R coefficient pairing
    mixed = {}
    buckets = {}
    for ((r1, r2), (c1, c2)), v in rmatrix_natural_gl_inverse(n).entries.items():
        buckets.setdefault((r1, c2), []).append(((r2, c1), v))
    for i in range(1, k + 1):
        for beta in range(1, l + 1):
            for b in labels:
                for a in labels:
                    repl = {
                        (x_(i, c), y_(beta, d)): v
                        for (c, d), v in buckets.get((b, a), [])
                    }
                    mixed[(y_(beta, b), x_(i, a))] = NCPolynomial(repl)
    _add_rules(rs, manifest, mixed, "mixed exchange from inverse R pairing")

    return AlgebraHandle(
        kind="Akl",
        spec=spec,
        params={"n": n, "k": k, "l": l},
        slots=slots,
        rs=rs,
        manifest=manifest,
    )


@lru_cache(maxsize=None)
def build_exterior(m, n):
    """The braided exterior algebra of (natural gl_m) (x) (natural gl_n)."""
    if min(m, n) < 1:
        raise ValueError("m, n must be positive")
    slots = [
        (f"row{i}", tuple((0, i, j) for j in range(1, n + 1)))
        for i in range(1, m + 1)
    ]
    rs = RewriteSystem({})
    manifest = []
    rules = {
        ((0,) + p, (0,) + r): NCPolynomial(
            {((0,) + c, (0,) + d): v for (c, d), v in repl.items()}
        )
        for (p, r), repl in _pair_rules_exterior(m, n).items()
    }
    _add_rules(rs, manifest, rules, "exterior degree-2 ideal solve (symmetric part)")
    return ExteriorHandle(
        kind="Exterior",
        spec=None,
        params={"m": m, "n": n},
        slots=slots,
        rs=rs,
        manifest=manifest,
    )


def graded_dimension(handle, degree):
    return handle.graded_dimension(degree)


def presentation_manifest(handle):
    """The audited rule manifest for dump-presentation."""
    return {
        "kind": handle.kind,
        "spec": str(handle.spec) if handle.spec else None,
        "params": dict(handle.params),
        "strict": handle.strict,
        "rules": list(handle.manifest),
    }


# ---------------------------------------------------------------------------
# transcribed textbook presentation variants (strict mode)

def _psi_terms(spec, i, j, t, barred):
    """Partial sums psi_t / bar-psi_t of the cross rules, as letter dicts."""
    n = spec.rank
    out = {}
    if spec.family == "D":
        pairsum = 2 * n + 1
        for s in range(1, t + 1):
            if barred:
                out[(x_(i, s), x_(j, pairsum - s))] = q_pow(n - s)
            else:
                out[(x_(i, pairsum - s), x_(j, s))] = q_pow(s - n)
    elif spec.family == "B":
        pairsum = 2 * n + 2
        for s in range(1, t + 1):
            if barred:
                out[(x_(i, s), x_(j, pairsum - s))] = q_pow(n - s)
            else:
                out[(x_(i, pairsum - s), x_(j, s))] = q_pow(s - n - 1)
    elif spec.family == "C":
        pairsum = 2 * n + 1
        for s in range(1, t + 1):
            if barred:
                out[(x_(i, s), x_(j, pairsum - s))] = q_pow(n + 1 - s)
            else:
                out[(x_(i, pairsum - s), x_(j, s))] = q_pow(s - n - 1)
    return out


def psi_pair_poly(spec, i, j):
    """The quadratic pairing element Psi^(i,j) before normalisation."""
    n = spec.rank
    if spec.family == "D":
        terms = _psi_terms(spec, i, j, n, False)
        terms.update(_psi_terms(spec, i, j, n, True))
    elif spec.family == "B":
        terms = _psi_terms(spec, i, j, n, False)
        terms.update(_psi_terms(spec, i, j, n, True))
        terms[(x_(i, n + 1), x_(j, n + 1))] = ONE
    elif spec.family == "C":
        terms = {}
        for (w, c) in _psi_terms(spec, i, j, n, True).items():
            terms[w] = c
        for (w, c) in _psi_terms(spec, i, j, n, False).items():
            terms[w] = -c
    else:
        raise ValueError("GL pairing uses psi_gl_poly")
    return NCPolynomial(terms)


def psi_gl_poly(n, i, beta):
    return NCPolynomial({(x_(i, a), y_(beta, a)): ONE for a in range(1, n + 1)})


def _printed_cross_rules(spec, m):
    """Cross rules exactly as the source presentation prints them."""
    n = spec.rank
    qq = q_pow(1) - q_pow(-1)
    rules = {}
    if spec.family == "D":
        pairsum = 2 * n + 1
        dim = 2 * n
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                psi_full = psi_pair_poly(spec, i, j)
                for a in range(1, dim + 1):
                    rules[(x_(j, a), x_(i, a))] = NCPolynomial(
                        {(x_(i, a), x_(j, a)): q_pow(1)}
                    )
                for a in range(1, dim + 1):
                    for b in range(a + 1, dim + 1):
                        if a + b == pairsum:
                            continue
                        rules[(x_(j, b), x_(i, a))] = NCPolynomial(
                            {(x_(i, a), x_(j, b)): ONE, (x_(i, b), x_(j, a)): qq}
                        )
                        rules[(x_(j, a), x_(i, b))] = NCPolynomial(
                            {(x_(i, b), x_(j, a)): ONE}
                        )
                for t in range(1, n + 1):
                    psi_t = NCPolynomial(_psi_terms(spec, i, j, t, False))
                    rules[(x_(j, t), x_(i, pairsum - t))] = (
                        NCPolynomial({(x_(i, pairsum - t), x_(j, t)): q_pow(1)})
                        - psi_t.scale(qq * q_pow(n - t))
                    )
                    bar_next = NCPolynomial(_psi_terms(spec, i, j, t + 1, True))
                    rules[(x_(j, pairsum - t), x_(i, t))] = (
                        NCPolynomial(
                            {
                                (x_(i, t), x_(j, pairsum - t)): q_pow(1),
                                (x_(i, pairsum - t), x_(j, t)): -qq,
                            }
                        )
                        + (bar_next - psi_full).scale(qq * q_pow(t - n))
                    )
        return rules, "printed presentation: even orthogonal cross rules"
    if spec.family == "B":
        pairsum = 2 * n + 2
        dim = 2 * n + 1
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                psi_full = psi_pair_poly(spec, i, j)
                for a in range(1, dim + 1):
                    if a != n + 1:
                        rules[(x_(j, a), x_(i, a))] = NCPolynomial(
                            {(x_(i, a), x_(j, a)): q_pow(1)}
                        )
                psi_n = NCPolynomial(_psi_terms(spec, i, j, n, False))
                rules[(x_(j, n + 1), x_(i, n + 1))] = (
                    NCPolynomial({(x_(i, n + 1), x_(j, n + 1)): ONE})
                    - psi_n.scale(qq)
                )
                for a in range(1, dim + 1):
                    for b in range(a + 1, dim + 1):
                        if a + b == pairsum:
                            continue
                        rules[(x_(j, b), x_(i, a))] = NCPolynomial(
                            {(x_(i, a), x_(j, b)): ONE, (x_(i, b), x_(j, a)): qq}
                        )
                        rules[(x_(j, a), x_(i, b))] = NCPolynomial(
                            {(x_(i, b), x_(j, a)): ONE}
                        )
                for t in range(1, n + 1):
                    psi_t = NCPolynomial(_psi_terms(spec, i, j, t, False))
                    rules[(x_(j, t), x_(i, pairsum - t))] = (
                        NCPolynomial({(x_(i, pairsum - t), x_(j, t)): q_pow(1)})
                        - psi_t.scale(qq * q_pow(n - t + 1))
                    )
                    bar_t = NCPolynomial(_psi_terms(spec, i, j, t, True))
                    rules[(x_(j, pairsum - t), x_(i, t))] = (
                        NCPolynomial(
                            {
                                (x_(i, t), x_(j, pairsum - t)): q_pow(-1),
                                (x_(i, pairsum - t), x_(j, t)): -qq,
                            }
                        )
                        + (bar_t - psi_full).scale(qq * q_pow(t - n))
                    )
        return rules, "printed presentation: odd orthogonal cross rules"
    if spec.family == "C":
        pairsum = 2 * n + 1
        dim = 2 * n
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                psi_full = psi_pair_poly(spec, i, j)
                for a in range(1, dim + 1):
                    rules[(x_(j, a), x_(i, a))] = NCPolynomial(
                        {(x_(i, a), x_(j, a)): q_pow(1)}
                    )
                for a in range(1, dim + 1):
                    for b in range(a + 1, dim + 1):
                        if a + b == pairsum:
                            continue
                        rules[(x_(j, a), x_(i, b))] = NCPolynomial(
                            {(x_(i, b), x_(j, a)): ONE}
                        )
                        rules[(x_(j, b), x_(i, a))] = NCPolynomial(
                            {(x_(i, a), x_(j, b)): ONE, (x_(i, b), x_(j, a)): qq}
                        )
                for t in range(1, n + 1):
                    rules[(x_(j, t), x_(i, pairsum - t))] = NCPolynomial(
                        {(x_(i, pairsum - t), x_(j, t)): q_pow(-1)}
                    )
                    bar_next = NCPolynomial(_psi_terms(spec, i, j, t + 1, True))
                    rules[(x_(j, pairsum - t), x_(i, t))] = (
                        NCPolynomial(
                            {
                                (x_(i, t), x_(j, pairsum - t)): q_pow(1),
                                (x_(i, pairsum - t), x_(j, t)): qq,
                            }
                        )
                        + (bar_next - psi_full).scale(qq * q_pow(t - n - 1))
                    )
        return rules, "printed presentation: symplectic cross rules"
    raise ValueError("printed cross rules exist for B, C, D only")


def printed_rule_diffs(spec, m=2):
    """Compare printed cross rules against the R-check-derived ones.

    Returns entries citing each differing pattern with both replacements
    reduced against the shipped system.
    """
    shipped = build_am(spec, m)
    printed, prov = _printed_cross_rules(spec, m)
    entries = []
    for pat, repl in sorted(printed.items()):
        lhs = shipped.normal_form(NCPolynomial.from_word(pat))
        rhs = shipped.normal_form(repl)
        diff = lhs - rhs
        entries.append(
            {
                "provenance": prov,
                "pattern": "".join(default_letter_str(l) for l in pat),
                "printed": repl.render(default_letter_str),
                "agrees": diff.is_zero(),
                "residual": None if diff.is_zero() else shipped.render(diff),
            }
        )
    return entries


# ---------------------------------------------------------------------------
# the independent tensor-route product

def _slot_blocks(word, m):
    blocks = []
    for l in word:
        slot = l[1]
        if blocks and blocks[-1][0] == slot:
            blocks[-1] = (slot, blocks[-1][1] + (l[2],))
        else:
            blocks.append((slot, (l[2],)))
    return blocks


@lru_cache(maxsize=None)
def _slot_only_system(spec, m):
    """Rewrite system with only the per-slot straightening rules."""
    pair = _pair_rules_solved(spec)
    rs = RewriteSystem({})
    for i in range(1, m + 1):
        for (b, a), repl in pair.items():
            rs.add_rule(
                (x_(i, b), x_(i, a)),
                NCPolynomial(
                    {(x_(i, c), x_(i, d)): v for (c, d), v in repl.items()}
                ),
            )
    return rs


def tensor_oracle_product(spec, m, x, y, fuel=None):
    """Product computed without cross-slot rewrite rules: lift each slot
    monomial to its tensor word, braid whole blocks past each other with
    cabled R-checks, then re-straighten every slot with the one-slot rules."""
    rs = _slot_only_system(spec, m)
    out = NCPolynomial()
    for wx, cx in x.terms():
        for wy, cy in y.terms():
            prod = _oracle_word_product(spec, m, wx, wy, rs, fuel)
            out = out + prod.scale(cx * cy)
    return out


def _oracle_word_product(spec, m, wx, wy, slot_rs, fuel):
    blocks = _slot_blocks(wx, m) + _slot_blocks(wy, m)
    slots = [b[0] for b in blocks]
    sizes = [len(b[1]) for b in blocks]
    states = {tuple(b[1] for b in blocks): ONE}
    while True:
        pos = next(
            (t for t in range(len(slots) - 1) if slots[t] > slots[t + 1]), None
        )
        if pos is None:
            break
        kk, ll = sizes[pos], sizes[pos + 1]
        cab = rcheck_cabled(spec, kk, ll)
        nxt = {}
        for labels, coeff in states.items():
            col = cab.column(labels[pos] + labels[pos + 1])
            for outword, val in col.items():
                ns = (
                    labels[:pos]
                    + (outword[:ll], outword[ll:])
                    + labels[pos + 2:]
                )
                s = nxt.get(ns)
                t = coeff * val
                if s is None:
                    nxt[ns] = t
                else:
                    s = s + t
                    if s:
                        nxt[ns] = s
                    else:
                        del nxt[ns]
        states = nxt
        slots[pos], slots[pos + 1] = slots[pos + 1], slots[pos]
        sizes[pos], sizes[pos + 1] = sizes[pos + 1], sizes[pos]
    out = NCPolynomial()
    for labels, coeff in states.items():
        word = []
        for slot, block in zip(slots, labels):
            word.extend(x_(slot, a) for a in block)
        out = out + slot_rs.normal_form(
            NCPolynomial.from_word(tuple(word)), fuel
        ).scale(coeff)
    return out
