import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfcond.gf2 import Gf2Matrix
from surfcond.steenrod import (
    SqModule,
    SteenrodMonomial,
    SteenrodWord,
    adem_normalize,
    binom_mod2,
    compose,
    excess,
    margolis_homology,
    parse_word,
)

# ---------------------------------------------------------------------------
# Independent oracle: the action on F2[x, y] determines words of low degree
# faithfully enough to cross-check Adem normalization.  Monomials are
# (a, b) -> x^a y^b exponent dicts with F2 coefficients.


def _sq_poly(i, poly):
    out = {}
    for (a, b), c in poly.items():
        for j in range(i + 1):
            if binom_mod2(a, j) and binom_mod2(b, i - j):
                key = (a + j, b + i - j)
                out[key] = out.get(key, 0) ^ c
    return {k: v for k, v in out.items() if v}


def _act(word: SteenrodWord, poly):
    total = {}
    for mono in word.monomials:
        term = poly
        for i in reversed(mono.squares):
            term = _sq_poly(i, term)
        for k, v in term.items():
            total[k] = total.get(k, 0) ^ v
    return {k: v for k, v in total.items() if v}


def _words_agree(u: SteenrodWord, v: SteenrodWord) -> bool:
    for a in range(6):
        for b in range(6):
            if _act(u, {(a, b): 1}) != _act(v, {(a, b): 1}):
                return False
    return True


class TestAdem:
    @pytest.mark.parametrize(
        "word,expected",
        [
            ("Sq1 Sq1", "0"),
            ("Sq1 Sq2", "Sq3"),
            ("Sq2 Sq2", "Sq3 Sq1"),
            ("Sq3 Sq2", "0"),
            ("Sq2 Sq3", "Sq4 Sq1 + Sq5"),
            ("Sq1 Sq3", "0"),
            ("Sq3 Sq3", "Sq5 Sq1"),
        ],
    )
    def test_known_relations(self, word, expected):
        assert str(adem_normalize(parse_word(word))) == expected

    @given(st.integers(min_value=1, max_value=13), st.integers(min_value=1, max_value=10))
    @settings(max_examples=120)
    def test_normalization_properties(self, a, b):
        word = SteenrodWord.sq(a, b)
        normal = adem_normalize(word)
        assert all(m.is_admissible for m in normal.monomials)
        assert normal.is_zero or normal.degree == a + b
        assert adem_normalize(normal) == normal
        assert _words_agree(word, normal)

    def test_compose_renormalizes(self):
        assert compose(SteenrodWord.sq(2), SteenrodWord.sq(2)) == parse_word("Sq3 Sq1")
        assert compose(SteenrodWord.sq(1), SteenrodWord.sq(1)).is_zero
        assert compose(SteenrodWord.sq(1), parse_word("Sq2 Sq1")) == parse_word("Sq3 Sq1")


class TestBocksteinMarkers:
    def test_sq1_kills_marked_words(self):
        marked = SteenrodWord.of(SteenrodMonomial((), bockstein=2))
        assert compose(SteenrodWord.sq(1), marked).is_zero
        assert not compose(SteenrodWord.sq(2), marked).is_zero

    def test_marker_is_innermost_in_syntax(self):
        word = parse_word("Sq2 b_3")
        (mono,) = word.monomials
        assert mono.squares == (3,) or mono.squares == (2,)
        assert mono.bockstein == 3
        with pytest.raises(ValueError):
            parse_word("b_2 Sq2")

    def test_b1_is_sq1(self):
        assert parse_word("Sq2 b_1") == parse_word("Sq2 Sq1")

    def test_marker_counts_as_trailing_one_for_admissibility(self):
        assert SteenrodMonomial((2,), bockstein=2).is_admissible
        assert not SteenrodMonomial((1,), bockstein=2).is_admissible
        assert excess(SteenrodMonomial((3,), bockstein=2)) == 2


class TestExcess:
    def test_examples(self):
        assert excess(SteenrodMonomial((2, 1))) == 1
        assert excess(SteenrodMonomial((4, 2, 1))) == 1
        assert excess(SteenrodMonomial((5,))) == 5
        assert excess(SteenrodMonomial()) == 0

    def test_inadmissible_rejected(self):
        with pytest.raises(ValueError):
            excess(SteenrodMonomial((1, 2)))


class TestParse:
    def test_sum_and_case_insensitivity(self):
        assert parse_word("sq2 sq1 + SQ3") == parse_word("Sq3 + Sq2 Sq1")

    def test_duplicate_terms_cancel(self):
        assert parse_word("Sq2 + Sq2").is_zero

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_word("Sq2 Qx1")


class TestMargolis:
    def test_zero_module(self):
        m = SqModule(dims={4: 2, 5: 2, 6: 1}, sq1={}, sq2={})
        assert margolis_homology(m, "Q0") == {4: 2, 5: 2}

    def test_exact_two_step_complex(self):
        # 0 -> F2 -> F2 -> 0 with the identity Sq1: acyclic for Q0
        m = SqModule(
            dims={0: 1, 1: 1},
            sq1={0: Gf2Matrix.from_rows([1], 1)},
            sq2={},
        )
        assert margolis_homology(m, "Q0") == {0: 0}

    def test_q0_squared_nonzero_raises(self):
        ident = Gf2Matrix.from_rows([1], 1)
        m = SqModule(dims={0: 1, 1: 1, 2: 1}, sq1={0: ident, 1: ident}, sq2={})
        with pytest.raises(ValueError):
            margolis_homology(m, "Q0")

    def test_unknown_differential_rejected(self):
        with pytest.raises(ValueError):
            margolis_homology(SqModule({0: 1}, {}, {}), "Q2")
