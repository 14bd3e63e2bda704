"""Literal parser: grammar coverage, positioned diagnostics, round trips."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3linsys.classify import normalize
from k3linsys.lattice import intersect
from k3linsys.literals import LiteralSyntaxError, SystemLiteral, parse_literal


class TestParse:
    def test_run_expansion(self):
        lit = parse_literal("L2(3;2^4,1)")
        assert (lit.n, lit.d) == (2, 3)
        assert lit.runs == ((2, 4), (1, 1))
        assert lit.multiplicities() == (2, 2, 2, 2, 1)

    def test_whitespace_insignificant(self):
        lit = parse_literal("  L4 ( 1 ; 2 )  ")
        assert (lit.n, lit.d, lit.multiplicities()) == (4, 1, (2,))
        assert parse_literal("L2(3;1 , 1^2)").multiplicities() == (1, 1, 1)

    def test_no_mults(self):
        assert parse_literal("L2(3)").multiplicities() == ()

    def test_zero_values_kept_positionally(self):
        lit = parse_literal("L2(1;0,0,1,1)")
        assert lit.multiplicities() == (0, 0, 1, 1)
        assert lit.to_spec().mults == (1, 1)

    def test_zero_repeat_count(self):
        assert parse_literal("L2(1;1^0)").multiplicities() == ()

    def test_unsorted_input_normalizes(self):
        lit = parse_literal("L2(3;1,2,0,2)")
        assert lit.to_spec() == normalize(2, 3, (2, 2, 1))
        assert lit.canonical() == "L2(3;2^2,1)"

    def test_degree_zero(self):
        assert parse_literal("L2(0)").d == 0


class TestDiagnostics:
    @pytest.mark.parametrize(
        "text,position,fragment",
        [
            ("", 0, "expected 'L'"),
            ("X2(1)", 0, "expected 'L'"),
            ("L(1)", 1, "expected integer"),
            ("L3(1;1)", 1, "n must be even (n = 2g-2)"),
            ("L0(1)", 1, "n must be at least 2"),
            ("L2", 2, "expected '('"),
            ("L2)", 2, "expected '('"),
            ("L2(", 3, "expected integer"),
            ("L2(;1)", 3, "expected integer"),
            ("L2(1", 4, "expected ')'"),
            ("L2(1;", 5, "expected integer"),
            ("L2(1;)", 5, "expected integer"),
            ("L2(1;1,)", 7, "expected integer"),
            ("L2(1;1^)", 7, "expected integer"),
            ("L2(1;1^2^2)", 8, "expected ')'"),
            ("L2(1;1)x", 7, "unexpected trailing input"),
            ("L-2(1)", 1, "expected integer"),
            ("L2(1;-1)", 5, "expected integer"),
            ("L2(1;1;1)", 6, "expected ')'"),
        ],
    )
    def test_position_and_message(self, text, position, fragment):
        with pytest.raises(LiteralSyntaxError) as exc:
            parse_literal(text)
        assert exc.value.position == position, str(exc.value)
        assert fragment in exc.value.message

    def test_str_includes_offset(self):
        with pytest.raises(LiteralSyntaxError, match=r"\(byte 1\)"):
            parse_literal("L3(1)")


class TestPositionalUse:
    def test_disjoint_point_placement(self):
        # frozen: two curves through two points each, all four points distinct
        a = parse_literal("L2(1;1,1)").divisor_class()
        b = parse_literal("L2(1;0,0,1,1)").divisor_class()
        assert intersect(a, b) == 2

    def test_aligned_placement(self):
        a = parse_literal("L2(1;1,1)").divisor_class()
        assert intersect(a, a) == 0


class TestCanonicalForm:
    @pytest.mark.parametrize(
        "text,canonical",
        [
            ("L2(3;2^4,1)", "L2(3;2^4,1)"),
            ("L2(3;1,2,2,2,2)", "L2(3;2^4,1)"),
            ("L2( 3 ; 2^2, 2 , 2,1)", "L2(3;2^4,1)"),
            ("L4(1;2)", "L4(1;2)"),
            ("L2(3;0^5)", "L2(3)"),
            ("L10(2;6)", "L10(2;6)"),
            ("L2(1;1,1)", "L2(1;1^2)"),
        ],
    )
    def test_examples(self, text, canonical):
        assert parse_literal(text).canonical() == canonical

    def test_print_is_valid_input(self):
        for text in ["L2(3;1,2,0,2)", "L4(7)", "L8(2;3^3,1^4)"]:
            printed = parse_literal(text).canonical()
            again = parse_literal(printed)
            assert again.to_spec() == parse_literal(text).to_spec()
            assert again.canonical() == printed


@st.composite
def canonical_specs(draw):
    n = 2 * draw(st.integers(1, 20))
    d = draw(st.integers(0, 30))
    mults = draw(st.lists(st.integers(1, 12), max_size=8))
    return normalize(n, d, mults)


@given(canonical_specs())
def test_round_trip_parse_print_parse(spec):
    printed = spec.literal()
    lit = parse_literal(printed)
    assert lit.to_spec() == spec
    assert lit.canonical() == printed


@given(canonical_specs())
def test_literal_identifies_class(spec):
    assert parse_literal(spec.literal()).divisor_class() == spec.divisor_class()


def test_source_preserved():
    assert parse_literal(" L2(1;1 )").source == " L2(1;1 )"


def test_literal_value_semantics():
    assert parse_literal("L2(1;1,1)") == SystemLiteral("L2(1;1,1)", 2, 1, ((1, 1), (1, 1)))
