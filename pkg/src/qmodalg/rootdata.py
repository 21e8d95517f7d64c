"""Static data of each quantum group in scope.

For each family (GL, B, C, D) and rank this module builds the natural module:
basis labels in the 1..dimV relabeling, weights in the epsilon basis, sparse
matrices of the Chevalley generators, the quantum dimension and the pairings
(2rho, lambda_a).  All defining relations are checked exactly by validate().

Conventions: basis positions a in [1, dimV].  For D and C, position a <= n is
v_a and position a > n is v_{a-2n-1} (so position 2n+1-t is v_{-t}).  For B,
position n+1 is v_0 and position 2n+2-t is v_{-t}.  GL positions are v_a.
The B family uses the rescaled short-root raising generator e_n = e'_n/(v+v^-1),
so [e_i, f_i] = (k_i - k_i^-1)/(q - q^-1) holds for every i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linop import LinearOperator
from .scalar import ONE, ZERO, gauss_binom, q_pow

FAMILIES = ("GL", "B", "C", "D")


@dataclass(frozen=True)
class LieTypeSpec:
    family: str  # GL | B | C | D
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "D" and self.rank < 2:
            raise ValueError("D requires rank >= 2")
        if self.rank < 1:
            raise ValueError("rank must be positive")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _mat(entries):
    return {k: v for k, v in entries.items() if v}


@dataclass(frozen=True)
class RepData:
    spec: LieTypeSpec
    dim_v: int
    signed_labels: tuple  # position a (1-based) -> i, -i, or 0
    weights: tuple        # position a -> tuple of ints (epsilon coords)
    e_mats: dict          # chevalley index -> {(row, col): Scalar}
    f_mats: dict
    k_mats: dict          # B/C/D: k_i;  GL: K_b for b in 1..n
    simple_roots: tuple   # chevalley index -> epsilon-coordinate tuple
    rho2: tuple           # 2*rho in epsilon coordinates
    qdim: Scalar
    rho_pairings: tuple   # position a -> (2rho, lambda_a), an int

    @property
    def labels(self):
        return tuple(range(1, self.dim_v + 1))

    def position(self, signed):
        """Position in [1, dimV] of the signed label i, -i or 0."""
        return self.signed_labels.index(signed) + 1

    def chevalley_indices(self):
        n = self.spec.rank
        return range(1, n) if self.spec.family == "GL" else range(1, n + 1)

    def cartan_indices(self):
        # K_b for GL, k_i otherwise; these are the group-likes whose
        # (k - 1)-residuals characterise weight zero.
        return range(1, self.spec.rank + 1)

    def k_diag(self, b, label):
        """Eigenvalue of k_b (GL: K_b) on basis vector at a position label."""
        return self.k_mats[b].get((label, label), ONE)

    def coproduct_k(self, i):
        """Diagonal of the group-like paired with e_i in Delta(e_i)=e_i(x)k+1(x)e_i."""
        if self.spec.family != "GL":
            return {a: self.k_diag(i, a) for a in self.labels}
        return {
            a: self.k_diag(i, a) / self.k_diag(i + 1, a) for a in self.labels
        }


@lru_cache(maxsize=None)
def natural_rep(spec: LieTypeSpec) -> RepData:
    fam, n = spec.family, spec.rank
    if fam == "GL":
        return _natural_gl(spec, n)
    if fam == "D":
        return _natural_d(spec, n)
    if fam == "B":
        return _natural_b(spec, n)
    return _natural_c(spec, n)


def _evec(n, entries):
    w = [0] * n
    for i, c in entries:
        w[i - 1] += c
    return tuple(w)


def positive_roots(spec):
    n = spec.rank
    roots = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            roots.append(_evec(n, [(i, 1), (j, -1)]))
            if spec.family in ("B", "C", "D"):
                roots.append(_evec(n, [(i, 1), (j, 1)]))
    if spec.family == "B":
        roots.extend(_evec(n, [(i, 1)]) for i in range(1, n + 1))
    if spec.family == "C":
        roots.extend(_evec(n, [(i, 2)]) for i in range(1, n + 1))
    return tuple(roots)


def _rho2(spec):
    n = spec.rank
    acc = [0] * n
    for r in positive_roots(spec):
        for i, c in enumerate(r):
            acc[i] += c
    return tuple(acc)


def _finish(spec, signed, weights, e, f, k, simple):
    n = spec.rank
    rho2 = _rho2(spec)
    pair = tuple(sum(r * w for r, w in zip(rho2, wt)) for wt in weights)
    qdim = ZERO
    for p in pair:
        qdim = qdim + q_pow(-p)
    return RepData(
        spec=spec,
        dim_v=len(signed),
        signed_labels=tuple(signed),
        weights=tuple(weights),
        e_mats={i: _mat(m) for i, m in e.items()},
        f_mats={i: _mat(m) for i, m in f.items()},
        k_mats={i: _mat(m) for i, m in k.items()},
        simple_roots=tuple(simple),
        rho2=rho2,
        qdim=qdim,
        rho_pairings=pair,
    )


def _natural_gl(spec, n):
    signed = list(range(1, n + 1))
    weights = [_evec(n, [(a, 1)]) for a in signed]
    e = {a: {(a, a + 1): ONE} for a in range(1, n)}
    f = {a: {(a + 1, a): ONE} for a in range(1, n)}
    k = {}
    for b in range(1, n + 1):
        m = {(a, a): ONE for a in range(1, n + 1)}
        m[(b, b)] = q_pow(1)
        k[b] = m
    simple = [_evec(n, [(a, 1), (a + 1, -1)]) for a in range(1, n)]
    return _finish(spec, signed, weights, e, f, k, simple)


def _bcd_signed(n, with_zero):
    signed = list(range(1, n + 1))
    if with_zero:
        signed.append(0)
    signed.extend(range(-n, 0))  # -n, -(n-1), ..., -1
    return signed


def _bcd_weights(n, signed):
    out = []
    for s in signed:
        if s == 0:
            out.append(_evec(n, []))
        else:
            out.append(_evec(n, [(abs(s), 1 if s > 0 else -1)]))
    return out


def _sl_block(pos, i, qv=None):
    """Common type-A part: e_i = E_{i,i+1} - E_{-i-1,-i}, etc., via positions."""
    e = {(pos(i), pos(i + 1)): ONE, (pos(-i - 1), pos(-i)): -ONE}
    f = {(pos(i + 1), pos(i)): ONE, (pos(-i), pos(-i - 1)): -ONE}
    return e, f


def _k_from_weight(signed, weights, alpha):
    """Diagonal k with eigenvalue q^{(alpha, wt)} on each basis vector."""
    m = {}
    for a, wt in enumerate(weights, start=1):
        exp = sum(x * y for x, y in zip(alpha, wt))
        m[(a, a)] = q_pow(exp)
    return m


def _natural_d(spec, n):
    signed = _bcd_signed(n, with_zero=False)
    weights = _bcd_weights(n, signed)
    pos = lambda s: signed.index(s) + 1
    e, f, k, simple = {}, {}, {}, []
    for i in range(1, n):
        e[i], f[i] = _sl_block(pos, i)
        simple.append(_evec(n, [(i, 1), (i + 1, -1)]))
    e[n] = {(pos(n - 1), pos(-n)): ONE, (pos(n), pos(-n + 1)): -ONE}
    f[n] = {(pos(-n), pos(n - 1)): ONE, (pos(-n + 1), pos(n)): -ONE}
    simple.append(_evec(n, [(n - 1, 1), (n, 1)]))
    for i in range(1, n + 1):
        k[i] = _k_from_weight(signed, weights, simple[i - 1])
    return _finish(spec, signed, weights, e, f, k, simple)


def _natural_b(spec, n):
    signed = _bcd_signed(n, with_zero=True)
    weights = _bcd_weights(n, signed)
    pos = lambda s: signed.index(s) + 1
    e, f, k, simple = {}, {}, {}, []
    for i in range(1, n):
        e[i], f[i] = _sl_block(pos, i)
        simple.append(_evec(n, [(i, 1), (i + 1, -1)]))
    e[n] = {(pos(n), pos(0)): ONE, (pos(0), pos(-n)): -ONE}
    f[n] = {(pos(0), pos(n)): ONE, (pos(-n), pos(0)): -ONE}
    simple.append(_evec(n, [(n, 1)]))
    for i in range(1, n + 1):
        k[i] = _k_from_weight(signed, weights, simple[i - 1])
    return _finish(spec, signed, weights, e, f, k, simple)


def _natural_c(spec, n):
    signed = _bcd_signed(n, with_zero=False)
    weights = _bcd_weights(n, signed)
    pos = lambda s: signed.index(s) + 1
    e, f, k, simple = {}, {}, {}, []
    for i in range(1, n):
        e[i], f[i] = _sl_block(pos, i)
        simple.append(_evec(n, [(i, 1), (i + 1, -1)]))
    e[n] = {(pos(n), pos(-n)): ONE}
    f[n] = {(pos(-n), pos(n)): ONE}
    simple.append(_evec(n, [(n, 2)]))
    for i in range(1, n + 1):
        k[i] = _k_from_weight(signed, weights, simple[i - 1])
    return _finish(spec, signed, weights, e, f, k, simple)


# ---------------------------------------------------------------------------
# named quantities

def quantum_dimension(spec):
    """dim_q V = sum_a q^{-(2rho, lambda_a)}."""
    return natural_rep(spec).qdim


def rho_pairing(spec, label):
    """(2rho, lambda_label); label is a position in [1, dimV]."""
    rep = natural_rep(spec)
    if not 1 <= label <= rep.dim_v:
        raise ValueError(f"label {label} out of range")
    return rep.rho_pairings[label - 1]


def irrep_dim_gl(k, lam):
    """Dimension of the irreducible gl_k module with partition highest weight."""
    lam = tuple(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(
        x < 0 for x in lam
    ):
        raise ValueError("not a partition")
    if len(lam) > k:
        raise ValueError("partition longer than the rank")
    lam = lam + (0,) * (k - len(lam))
    num = 1
    den = 1
    for i in range(k):
        for j in range(i + 1, k):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    d, r = divmod(num, den)
    assert r == 0
    return d


# ---------------------------------------------------------------------------
# matrix helpers and validation

def mat_mul(a, b):
    bc = {}
    for (r, c), v in b.items():
        bc.setdefault(r, []).append((c, v))
    out = {}
    for (r, c), v in a.items():
        for c2, v2 in bc.get(c, []):
            key = (r, c2)
            s = out.get(key)
            t = v * v2
            if s is None:
                out[key] = t
            else:
                s = s + t
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def mat_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = v
        else:
            s = s + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def mat_scale(a, c):
    return {} if not c else {k: c * v for k, v in a.items()}


def mat_sub(a, b):
    return mat_add(a, mat_scale(b, -ONE))


def mat_inv_diag(a, labels):
    return {(x, x): a[(x, x)].inverse() for x in labels if (x, x) in a}


def _commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def _cartan_pairing(spec, ai, aj):
    return sum(x * y for x, y in zip(ai, aj))


def _ef_denominator(spec, i):
    """The (k_i - k_i^-1) divisor in [e_i, f_i]; family-dependent."""
    if spec.family == "C" and i == spec.rank:
        return q_pow(2) - q_pow(-2)
    return q_pow(1) - q_pow(-1)


def validate_rep(rep):
    """Check all defining U_q relations as exact matrix identities on V."""
    spec = rep.spec
    labels = rep.labels
    problems = []

    def check(name, mat):
        if mat:
            problems.append(name)

    # weights: e_i raises by alpha_i, f_i lowers
    for i in rep.chevalley_indices():
        ai = rep.simple_roots[i - 1]
        for (r, c), val in rep.e_mats[i].items():
            wr, wc = rep.weights[r - 1], rep.weights[c - 1]
            if tuple(x - y for x, y in zip(wr, wc)) != ai:
                problems.append(f"e_{i} not raising by alpha_{i}")
        for (r, c), val in rep.f_mats[i].items():
            wr, wc = rep.weights[r - 1], rep.weights[c - 1]
            if tuple(y - x for x, y in zip(wr, wc)) != ai:
                problems.append(f"f_{i} not lowering by alpha_{i}")

    # k/K relations and [e, f]
    if spec.family == "GL":
        for i in rep.chevalley_indices():
            ka = rep.k_mats[i]
            kb_inv = mat_inv_diag(rep.k_mats[i + 1], labels)
            kk = mat_mul(ka, kb_inv)
            kk_inv = mat_inv_diag(kk, labels)
            lhs = _commutator(rep.e_mats[i], rep.f_mats[i])
            rhs = mat_scale(mat_sub(kk, kk_inv), (q_pow(1) - q_pow(-1)).inverse())
            check(f"[e,f]_{i}", mat_sub(lhs, rhs))
        for i in rep.chevalley_indices():
            for j in rep.chevalley_indices():
                if i != j:
                    check(f"[e_{i},f_{j}]", _commutator(rep.e_mats[i], rep.f_mats[j]))
    else:
        for i in rep.chevalley_indices():
            ki = rep.k_mats[i]
            ki_inv = mat_inv_diag(ki, labels)
            lhs = _commutator(rep.e_mats[i], rep.f_mats[i])
            rhs = mat_scale(mat_sub(ki, ki_inv), _ef_denominator(spec, i).inverse())
            check(f"[e,f]_{i}", mat_sub(lhs, rhs))
            for j in rep.chevalley_indices():
                if i != j:
                    check(f"[e_{i},f_{j}]", _commutator(rep.e_mats[i], rep.f_mats[j]))

    # k e k^-1 scaling (k diagonal with weight eigenvalues)
    grading = rep.simple_roots if spec.family != "GL" else tuple(
        _evec(spec.rank, [(b, 1)]) for b in rep.cartan_indices()
    )
    for b in rep.cartan_indices():
        kb = rep.k_mats[b]
        kb_inv = mat_inv_diag(kb, labels)
        for j in rep.chevalley_indices():
            lhs = mat_mul(kb, mat_mul(rep.e_mats[j], kb_inv))
            exp = _cartan_pairing(spec, grading[b - 1], rep.simple_roots[j - 1])
            rhs = mat_scale(rep.e_mats[j], q_pow(exp))
            check(f"k_{b} e_{j} scaling", mat_sub(lhs, rhs))

    # Serre relations, with q_i = v^{(alpha_i, alpha_i)}
    idx = list(rep.chevalley_indices())
    for i in idx:
        for j in idx:
            if i == j:
                continue
            ai, aj = rep.simple_roots[i - 1], rep.simple_roots[j - 1]
            aii = _cartan_pairing(spec, ai, ai)
            aij = 2 * _cartan_pairing(spec, ai, aj)
            if aij % aii:
                problems.append(f"cartan pairing ({i},{j}) not integral")
                continue
            nrel = 1 - aij // aii
            step = aii  # (alpha_i, alpha_i) in v-units: q_i = v^step
            for mats, nm in ((rep.e_mats, "e"), (rep.f_mats, "f")):
                acc = {}
                for s in range(nrel + 1):
                    coeff = gauss_binom(nrel, s, step)
                    if s % 2:
                        coeff = -coeff
                    term = {(a, a): ONE for a in labels}
                    for _ in range(nrel - s):
                        term = mat_mul(term, mats[i])
                    term = mat_mul(term, mats[j])
                    for _ in range(s):
                        term = mat_mul(term, mats[i])
                    acc = mat_add(acc, mat_scale(term, coeff))
                check(f"serre {nm} ({i},{j})", acc)
    return problems


# ---------------------------------------------------------------------------
# the sigma extension for orthogonal types

class SigmaValidationError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def sigma_candidate(spec, sign_on_hwv=None):
    """The extra generator of U_q(o_N) acting on V; involutive by construction.

    For D it swaps v_n and v_{-n} (fixing everything else) scaled by the sign
    on the highest weight vector; for B it is a global +-1.  The candidate is
    validated against sigma e_{n-1} sigma^-1 = e_n (etc.) for D and against
    centrality for B.
    """
    if spec.family not in ("B", "D"):
        raise ValueError("sigma exists for the orthogonal families only")
    rep = natural_rep(spec)
    n = spec.rank
    if sign_on_hwv is None:
        sign_on_hwv = -1 if n % 2 else 1  # default keyed to rank parity
    s = ONE if sign_on_hwv == 1 else -ONE
    labels = rep.labels
    if spec.family == "B":
        op = LinearOperator(labels, labels, {(a, a): s for a in labels})
        mapping = {i: i for i in rep.chevalley_indices()}
    else:
        pn, pm = rep.position(n), rep.position(-n)
        entries = {}
        for a in labels:
            if a == pn:
                entries[(pm, a)] = s
            elif a == pm:
                entries[(pn, a)] = s
            else:
                entries[(a, a)] = s
        op = LinearOperator(labels, labels, entries)
        mapping = {i: i for i in rep.chevalley_indices()}
        mapping[n - 1], mapping[n] = n, n - 1

    sq = (op @ op).entries
    if sq != LinearOperator.identity(labels).entries:
        raise SigmaValidationError("sigma is not an involution")
    inv = op  # involution
    for mats in (rep.e_mats, rep.f_mats, rep.k_mats):
        for i in rep.chevalley_indices():
            lhs = op @ LinearOperator(labels, labels, mats[i]) @ inv
            rhs = LinearOperator(labels, labels, mats[mapping[i]])
            if lhs != rhs:
                raise SigmaValidationError(
                    f"sigma conjugation failed on generator index {i}"
                )
    return op
