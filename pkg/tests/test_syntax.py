import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from s3wgdm.linguistic import DHHFLE, DHLT, DHLTScale, ScaleRangeError
from s3wgdm.syntax import TermSyntaxError, format_dhhfle, format_subscript, parse_dhhfle

S33 = DHLTScale(3, 3)


class TestParse:
    def test_two_term_cell(self):
        h = parse_dhhfle("{s_2<o_0>,s_2<o_1>}", S33)
        assert h == DHHFLE([DHLT(2, 0), DHLT(2, 1)])

    def test_singleton(self):
        assert parse_dhhfle("{s_0<o_0>}", S33) == DHHFLE([DHLT(0, 0)])

    def test_signs_and_decimals(self):
        h = parse_dhhfle("{s_-1.5<o_+2.25>}", S33)
        assert h == DHHFLE([DHLT(-1.5, 2.25)])

    def test_whitespace_tolerated(self):
        h = parse_dhhfle(" { s_1<o_0> ,\n s_2<o_-1> } ", S33)
        assert h == DHHFLE([DHLT(1, 0), DHLT(2, -1)])

    def test_syntax_error_carries_position(self):
        with pytest.raises(TermSyntaxError) as err:
            parse_dhhfle("{s_1<o_0>", S33)
        assert err.value.line == 1
        assert err.value.column == 10

        with pytest.raises(TermSyntaxError) as err:
            parse_dhhfle("{x_1<o_0>}", S33)
        assert err.value.column == 2

    def test_multiline_position(self):
        with pytest.raises(TermSyntaxError) as err:
            parse_dhhfle("{s_1<o_0>,\n?}", S33)
        assert err.value.line == 2
        assert err.value.column == 1

    def test_range_violation_is_domain_error(self):
        with pytest.raises(ScaleRangeError, match="4"):
            parse_dhhfle("{s_4<o_0>}", S33)

    def test_trailing_garbage(self):
        with pytest.raises(TermSyntaxError):
            parse_dhhfle("{s_1<o_0>} tail", S33)

    def test_empty_braces(self):
        with pytest.raises(TermSyntaxError):
            parse_dhhfle("{}", S33)


class TestFormat:
    def test_minimal_decimals(self):
        assert format_subscript(2.0) == "2"
        assert format_subscript(-1.5) == "-1.5"
        assert format_subscript(0.9) == "0.9"

    def test_format_example(self):
        h = DHHFLE([DHLT(0.9, 0.6)])
        assert format_dhhfle(h, S33) == "{s_0.9<o_0.6>}"

    def test_corpus_roundtrip(self):
        import random

        rng = random.Random(7)
        for _ in range(100):
            terms = [DHLT(round(rng.uniform(-3, 3), 3), round(rng.uniform(-3, 3), 3))
                     for _ in range(rng.randint(1, 4))]
            h = DHHFLE(terms)
            text = format_dhhfle(h, S33)
            assert format_dhhfle(parse_dhhfle(text, S33), S33) == text

    @given(st.lists(
        st.tuples(st.floats(min_value=-3, max_value=3, allow_nan=False),
                  st.floats(min_value=-3, max_value=3, allow_nan=False)),
        min_size=1, max_size=4))
    @settings(max_examples=200)
    def test_parse_format_inverse(self, raw):
        h = DHHFLE([DHLT(p, v) for p, v in raw])
        text = format_dhhfle(h, S33)
        assert parse_dhhfle(text, S33) == h
