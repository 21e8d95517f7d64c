import pytest

from qmodalg.algebras import build_am, build_exterior, build_sq
from qmodalg.ncpoly import (
    FuelExhausted,
    NCPolynomial,
    RewriteSystem,
    RuleValidationError,
    graded_words,
    x_,
)
from qmodalg.rootdata import LieTypeSpec
from qmodalg.scalar import ONE, q_pow


def test_straightening_example_even_family():
    h = build_sq(LieTypeSpec("D", 2))
    # v_{-1} v_1  ->  v_1 v_{-1} - (q - q^-1) v_2 v_{-2}
    p = h.normal_form(NCPolynomial.from_word((x_(1, 4), x_(1, 1))))
    want = NCPolynomial(
        {
            (x_(1, 1), x_(1, 4)): ONE,
            (x_(1, 2), x_(1, 3)): -(q_pow(1) - q_pow(-1)),
        }
    )
    assert p == want


def test_square_free_rule():
    h = build_exterior(2, 2)
    assert h.normal_form(NCPolynomial.from_word(((0, 1, 1), (0, 1, 1)))).is_zero()


def test_ordered_word_unchanged():
    h = build_sq(LieTypeSpec("D", 2))
    w = (x_(1, 1), x_(1, 2), x_(1, 4))
    assert h.rs.is_normal_word(w)
    assert h.normal_form(NCPolynomial.from_word(w)) == NCPolynomial.from_word(w)


def test_normal_form_idempotent_and_linear():
    h = build_am(LieTypeSpec("D", 2), 2)
    p = NCPolynomial.from_word((x_(2, 3), x_(1, 2), x_(2, 1)))
    r = NCPolynomial.from_word((x_(1, 4), x_(1, 1)))
    np_ = h.normal_form(p)
    nr = h.normal_form(r)
    assert h.normal_form(np_) == np_
    a, b = q_pow(2), -q_pow(-1) - 1
    combo = p.scale(a) + r.scale(b)
    assert h.normal_form(combo) == np_.scale(a) + nr.scale(b)


def test_multiply_identity_and_examples():
    d2 = LieTypeSpec("D", 2)
    h = build_am(d2, 2)
    one = NCPolynomial.one()
    p = NCPolynomial.from_word((x_(1, 2), x_(2, 3)))
    assert h.multiply(one, p) == p
    assert h.multiply(p, one) == p
    # X_{21} X_{11} = q X_{11} X_{21}
    got = h.multiply(
        NCPolynomial.from_word((x_(2, 1),)), NCPolynomial.from_word((x_(1, 1),))
    )
    assert got == NCPolynomial({(x_(1, 1), x_(2, 1)): q_pow(1)})
    # quantum matrix rows: t_22 t_11 = t_11 t_22 + (q - q^-1) t_12 t_21
    hm = build_am(LieTypeSpec("GL", 2), 2)
    got = hm.multiply(
        NCPolynomial.from_word((x_(2, 2),)), NCPolynomial.from_word((x_(1, 1),))
    )
    want = NCPolynomial(
        {
            (x_(1, 1), x_(2, 2)): ONE,
            (x_(1, 2), x_(2, 1)): q_pow(1) - q_pow(-1),
        }
    )
    assert got == want


def test_graded_words_counts():
    h = build_sq(LieTypeSpec("D", 2))
    assert len(h.graded_words((2,))) == 10
    ext = build_exterior(2, 2)
    assert len(ext.graded_words((2, 2))) == 1  # all four letters
    assert ext.graded_words((0, 0)) == [()]
    h2 = build_am(LieTypeSpec("D", 2), 2)
    assert len(h2.graded_words((1, 1))) == 16
    # lexicographic order
    ws = h.graded_words((2,))
    assert ws == sorted(ws)


def test_graded_words_validates_length():
    h = build_sq(LieTypeSpec("D", 2))
    with pytest.raises(ValueError):
        graded_words([tuple(h.alphabet)], (1, 2))


def test_fuel_exhaustion_carries_partial():
    h = build_am(LieTypeSpec("D", 2), 2)
    hard = NCPolynomial.from_word((x_(2, 4), x_(2, 3), x_(1, 2), x_(1, 1)))
    with pytest.raises(FuelExhausted) as info:
        h.normal_form(hard, fuel=1)
    assert isinstance(info.value.partial, NCPolynomial)
    full = h.normal_form(hard)
    assert h.rs.is_normal_word(next(iter(full.coeffs)))


def test_rule_validation_rejects_nondecreasing():
    rs = RewriteSystem({})
    good = NCPolynomial({(x_(1, 1), x_(1, 2)): ONE})
    with pytest.raises(RuleValidationError):
        rs.add_rule((x_(1, 1), x_(1, 2)), good)  # pattern not above replacement
    with pytest.raises(RuleValidationError):
        rs.add_rule((x_(1, 2), x_(1, 1)), NCPolynomial({(x_(1, 2), x_(1, 3), x_(1, 1)): ONE}))


@pytest.mark.parametrize(
    "family,rank,m",
    [("D", 2, 2), ("B", 1, 2), ("C", 2, 2), ("GL", 2, 2)],
)
def test_associativity_on_letter_triples(family, rank, m):
    h = build_am(LieTypeSpec(family, rank), m)
    letters = list(h.alphabet)
    for l1 in letters:
        p1 = NCPolynomial.from_word((l1,))
        for l2 in letters:
            p2 = NCPolynomial.from_word((l2,))
            left = h.multiply(p1, p2)
            for l3 in letters:
                p3 = NCPolynomial.from_word((l3,))
                assert h.multiply(left, p3) == h.multiply(p1, h.multiply(p2, p3))


def test_associativity_exterior_triples():
    h = build_exterior(2, 2)
    letters = list(h.alphabet)
    for l1 in letters:
        p1 = NCPolynomial.from_word((l1,))
        for l2 in letters:
            p2 = NCPolynomial.from_word((l2,))
            left = h.multiply(p1, p2)
            for l3 in letters:
                p3 = NCPolynomial.from_word((l3,))
                assert h.multiply(left, p3) == h.multiply(p1, h.multiply(p2, p3))


def test_associativity_degree_two_sample():
    h = build_am(LieTypeSpec("B", 1), 2)
    words2 = []
    for d in h.degree_compositions(2):
        words2.extend(h.graded_words(d))
    letters = [NCPolynomial.from_word((l,)) for l in h.alphabet]
    for w in words2[::3]:
        p = NCPolynomial.from_word(w)
        for a in letters:
            for b in letters:
                assert h.multiply(h.multiply(a, p), b) == h.multiply(
                    a, h.multiply(p, b)
                )


def test_determinism_of_normal_form():
    h1 = build_am(LieTypeSpec("C", 2), 2)
    p = NCPolynomial.from_word((x_(2, 4), x_(2, 3), x_(1, 2), x_(1, 1)))
    first = h1.normal_form(p)
    # a fresh handle with a fresh memo must give the identical table
    from qmodalg.algebras import _build_am

    h2 = _build_am(LieTypeSpec("C", 2), 2, kind="Am")
    assert h2.normal_form(p) == first


def test_rendering():
    h = build_sq(LieTypeSpec("D", 2))
    p = h.normal_form(NCPolynomial.from_word((x_(1, 4), x_(1, 1))))
    assert h.render(p) == "v[1]v[4] + (-q + q^-1)*v[2]v[3]"
    hm = build_am(LieTypeSpec("GL", 2), 2)
    q = NCPolynomial({(x_(1, 1), x_(2, 2)): ONE})
    assert hm.render(q) == "X[1,1]X[2,2]"
    assert NCPolynomial.zero().render() == "0"
