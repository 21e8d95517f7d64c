"""The exit-criteria suite.

Each test prints one pass/fail line for its criterion.  All arithmetic is
exact: tolerance everywhere is literal equality of canonical scalars.
The expected dimensions are frozen from independent oracles (binomial
counting, classical monomial counting, the Weyl dimension formula).
"""

import json
from math import comb

from qmodalg.algebras import (
    build_akl,
    build_am,
    build_exterior,
    build_sq,
    printed_rule_diffs,
    tensor_oracle_product,
)
from qmodalg.braiding import spectral_data, verify_braid_and_skein
from qmodalg.cli import _compositions, run, suite_classical
from qmodalg.invariants import fft_verify, psi, skew_duality_check, verify_relation_suite
from qmodalg.ncpoly import NCPolynomial
from qmodalg.rootdata import LieTypeSpec, natural_rep, quantum_dimension
from qmodalg.scalar import q_pow
from qmodalg.uqaction import invariant_pair_vector, is_invariant

GRID_SPECS = [
    ("D", 2),
    ("D", 3),
    ("B", 1),
    ("B", 2),
    ("C", 2),
    ("C", 3),
    ("GL", 2),
    ("GL", 3),
]


def _line(num, name, ok):
    print(f"[{num}] {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} failed"


def test_criterion_1_braiding_suite():
    ok = True
    for fam, r in GRID_SPECS:
        spec = LieTypeSpec(fam, r)
        report = verify_braid_and_skein(spec)
        ok = ok and report["pass"]
    ok = ok and spectral_data(LieTypeSpec("D", 2)).ranks() == (9, 6, 1)
    # kappa eigenvalues as stated, per family
    from qmodalg.braiding import pair_eigenvalue_p0

    for fam, r, kappa in [
        ("D", 2, q_pow(-3)),
        ("D", 3, q_pow(-5)),
        ("B", 1, q_pow(-2)),
        ("B", 2, q_pow(-4)),
        ("C", 2, -q_pow(-5)),
        ("C", 3, -q_pow(-7)),
    ]:
        ok = ok and pair_eigenvalue_p0(LieTypeSpec(fam, r)) == kappa
    _line(1, "braiding: braid identity, skein polynomial, ranks, T twist", ok)


def test_criterion_2_flatness_tables():
    ok = True
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        spec = LieTypeSpec(fam, r)
        dim_v = natural_rep(spec).dim_v
        for m in (1, 2):
            h = build_am(spec, m)
            for k in range(5):
                got = sum(
                    h.graded_dimension(d) for d in h.degree_compositions(k)
                )
                ok = ok and got == comb(m * dim_v + k - 1, k)
    h = build_am(LieTypeSpec("GL", 2), 2)
    for k in range(5):
        got = sum(h.graded_dimension(d) for d in h.degree_compositions(k))
        ok = ok and got == comb(2 * 2 + k - 1, k)
    ha = build_akl(2, 2, 2)
    for dx in range(5):
        for dy in range(5 - dx):
            got = 0
            for cx in _compositions(dx, 2):
                for cy in _compositions(dy, 2):
                    got += ha.graded_dimension(tuple(cx) + tuple(cy))
            ok = ok and got == comb(dx + 3, dx) * comb(dy + 3, dy)
    for m, n in [(2, 2), (2, 3)]:
        he = build_exterior(m, n)
        total = sum(
            he.graded_dimension(d)
            for k in range(m * n + 1)
            for d in he.degree_compositions(k)
        )
        ok = ok and total == 2 ** (m * n)
    _line(2, "flatness tables match the binomial and 2^(mn) counts", ok)


def test_criterion_3_oracle_equivalence():
    ok = True
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        spec = LieTypeSpec(fam, r)
        h = build_am(spec, 2)
        words = []
        for k in range(4):
            for d in h.degree_compositions(k):
                words.extend(h.graded_words(d))
        for w1 in words:
            p1 = NCPolynomial.from_word(w1)
            for w2 in words:
                if len(w1) + len(w2) > 3:
                    continue
                p2 = NCPolynomial.from_word(w2)
                if h.multiply(p1, p2) != tensor_oracle_product(spec, 2, p1, p2):
                    ok = False
    # the odd-family printed/derived discrepancy must be surfaced
    b_diffs = [
        e for e in printed_rule_diffs(LieTypeSpec("B", 1), 2) if not e["agrees"]
    ]
    ok = ok and len(b_diffs) > 0
    _line(3, "presented = tensor-route product on all pairs of degree <= 3", ok)


def test_criterion_4_invariance():
    ok = True
    for fam, r in [("D", 2), ("B", 1)]:
        spec = LieTypeSpec(fam, r)
        hs = build_sq(spec)
        phi = psi(hs, (1, 1))
        ok = ok and is_invariant(hs, phi).verdict
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        spec = LieTypeSpec(fam, r)
        h = build_am(spec, 2)
        for i in (1, 2):
            for j in (1, 2):
                if fam == "C" and i == j:
                    continue
                ok = ok and is_invariant(h, psi(h, (i, j))).verdict
        tvec, report = invariant_pair_vector(spec)
        ok = ok and report["pass"]
    hg = build_akl(2, 2, 2)
    for i in (1, 2):
        for b in (1, 2):
            ok = ok and is_invariant(hg, psi(hg, (i, b))).verdict
    # the normalisation constant is 1 when zero is a weight
    _, rb = invariant_pair_vector(LieTypeSpec("B", 1))
    ok = ok and all(e["pass"] for e in rb["entries"])
    _line(4, "invariance of the pairings and the T vectors, with constants", ok)


def test_criterion_5_relation_suites():
    ok = True
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        rep = verify_relation_suite(build_am(LieTypeSpec(fam, r), 4))
        ok = ok and rep["pass"]
    rep = verify_relation_suite(build_akl(2, 2, 2))
    ok = ok and rep["pass"]
    # centrality of the one-slot invariant in the braided symmetric algebra
    for fam, r in [("D", 2), ("B", 1)]:
        spec = LieTypeSpec(fam, r)
        hs = build_sq(spec)
        phi = psi(hs, (1, 1))
        for l in hs.alphabet:
            letter = NCPolynomial.from_word((l,))
            comm = hs.multiply(phi, letter) - hs.multiply(letter, phi)
            ok = ok and comm.is_zero()
    _line(5, "relation suites reduce to zero residual (m = 4 and k = l = 2)", ok)


# expected invariant dimensions, frozen from the classical monomial counts
def _orthogonal_count(d1, d2):
    if (d1 + d2) % 2:
        return 0
    return sum(
        1 for b in range(0, min(d1, d2) + 1) if (d1 - b) % 2 == 0 and (d2 - b) % 2 == 0
    )


def test_criterion_6_fft_desk_grid():
    ok = True
    for fam, r in [("D", 2), ("B", 1)]:
        h = build_am(LieTypeSpec(fam, r), 2)
        for k in range(5):
            for d in h.degree_compositions(k):
                e = fft_verify(h, d)
                ok = ok and e["pass"] and e["invariant_dim"] == _orthogonal_count(*d)
    h = build_am(LieTypeSpec("C", 2), 2)
    for k in range(5):
        for d in h.degree_compositions(k):
            e = fft_verify(h, d)
            want = 1 if d[0] == d[1] else 0
            ok = ok and e["pass"] and e["invariant_dim"] == want
    hg = build_akl(2, 2, 2)
    for dx in range(5):
        for dy in range(5 - dx):
            for cx in _compositions(dx, 2):
                for cy in _compositions(dy, 2):
                    e = fft_verify(hg, tuple(cx) + tuple(cy))
                    ok = ok and e["pass"]
    # frozen named values: (1,1) -> 1, (2,0) -> 1, (2,2) -> 2, odd -> 0
    h = build_am(LieTypeSpec("D", 2), 2)
    named = {
        (1, 1): 1,
        (2, 0): 1,
        (2, 2): 2,
        (1, 0): 0,
        (2, 1): 0,
        (3, 0): 0,
    }
    for d, want in named.items():
        ok = ok and fft_verify(h, d)["invariant_dim"] == want
    _line(6, "invariant dimension equals the pairing-span dimension (|d| <= 4)", ok)


def test_criterion_7_skew_duality():
    ok = skew_duality_check(2, 2)["pass"] and skew_duality_check(2, 3)["pass"]
    _line(7, "skew duality dimension identity and highest weight vectors", ok)


def test_criterion_8_classical_limit():
    suite = suite_classical()
    ok = all(e["pass"] for e in suite["entries"])
    for fam, r in GRID_SPECS:
        spec = LieTypeSpec(fam, r)
        ok = ok and quantum_dimension(spec).classical_limit() == natural_rep(spec).dim_v
    _line(8, "classical-limit degeneration of every rule and dimension", ok)


def test_criterion_9_determinism(tmp_path):
    a, b = tmp_path / "grid1.json", tmp_path / "grid2.json"
    assert run(["grid", "--output", str(a)]) == 0
    assert run(["grid", "--output", str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    ok = ok and report["summary"]["all_pass"]
    _line(9, "grid reports are byte-identical across runs", ok)
