import random

import pytest

from chain_codes.algebra import (
    MultiPoly,
    ParseException,
    Poly,
    RingFamily,
    format_element,
    format_poly,
    parse_dims,
    parse_element,
    parse_poly,
    parse_poly_list,
    parse_ring_spec,
    read_generators,
)

from conftest import random_poly


class TestRingSpecText:
    @pytest.mark.parametrize(
        "text,family,p,r,nu",
        [
            ("Z/25", RingFamily.INTEGER_MODULAR, 5, 1, 2),
            ("Z/(9)", RingFamily.INTEGER_MODULAR, 3, 1, 2),
            ("Z/4", RingFamily.INTEGER_MODULAR, 2, 1, 2),
            ("F4[g]/(g^2)", RingFamily.GAMMA_EXTENSION, 2, 2, 2),
            ("F13[g]/(g^2)", RingFamily.GAMMA_EXTENSION, 13, 1, 2),
            ("F4", RingFamily.GAMMA_EXTENSION, 2, 2, 1),
            ("F8[g]/(g)", RingFamily.GAMMA_EXTENSION, 2, 3, 1),
        ],
    )
    def test_parse(self, text, family, p, r, nu):
        spec = parse_ring_spec(text)
        assert (spec.family, spec.p, spec.r, spec.nu) == (family, p, r, nu)

    def test_str_reparses(self):
        for text in ("Z/27", "F4[g]/(g^3)", "F5"):
            spec = parse_ring_spec(text)
            assert parse_ring_spec(str(spec)) == spec

    @pytest.mark.parametrize("text", ["Z/6", "Z/1", "Q/5", "F6[g]/(g^2)", "F4[g]/(g^0)", ""])
    def test_invalid(self, text):
        with pytest.raises(ParseException):
            parse_ring_spec(text)


class TestDims:
    def test_parse(self):
        assert parse_dims("10,4") == (10, 4)
        assert parse_dims(" 8 ") == (8,)

    @pytest.mark.parametrize("text", ["0,3", "a", "3,,2", "-1"])
    def test_invalid(self, text):
        with pytest.raises(ParseException):
            parse_dims(text)


class TestPolynomialText:
    def test_implicit_multiplication(self, z9):
        f = parse_poly("2x^3 + x", z9, (4,))
        assert f == MultiPoly.from_terms(z9, (4,), {(3,): 2, (1,): 1})

    def test_negative_coefficients_reduce(self, z9):
        assert parse_poly("x - 1", z9, (3,)) == MultiPoly.from_terms(
            z9, (3,), {(1,): 1, (0,): 8}
        )

    def test_unicode_minus(self, z9):
        assert parse_poly("x − 1", z9, (3,)) == parse_poly("x - 1", z9, (3,))

    def test_gamma_name(self, z9, f4g):
        assert parse_poly("g", z9, (2,)) == MultiPoly.constant(z9, (2,), 3)
        assert parse_poly("g*a + 1", f4g, (2,)) == MultiPoly.constant(
            f4g, (2,), f4g.element((1, 2))
        )

    def test_many_variables(self, z4):
        f = parse_poly("x1*x2 + x3^2", z4, (2, 2, 3))
        assert f.coeff((1, 1, 0)) == z4.element(1)
        assert f.coeff((0, 0, 2)) == z4.element(1)

    def test_list_with_comments_and_newlines(self, z9):
        gens = parse_poly_list("x + 1  # first\n\n2*x, x^2\n", z9, (3,))
        assert len(gens) == 3
        assert gens[1] == MultiPoly.monomial(z9, (3,), (1,), 2)

    def test_empty_list(self, z9):
        assert parse_poly_list("", z9, (3,)) == []
        assert parse_poly_list("  # nothing\n", z9, (3,)) == []

    def test_single_polynomial_required(self, z9):
        with pytest.raises(ParseException):
            parse_poly("x, x^2", z9, (3,))
        with pytest.raises(ParseException):
            parse_poly("", z9, (3,))

    def test_unknown_name_position(self, z9):
        with pytest.raises(ParseException) as info:
            parse_poly("x + z", z9, (3,))
        assert (info.value.line, info.value.column) == (1, 5)

    def test_syntax_error_position(self, z9):
        with pytest.raises(ParseException) as info:
            parse_poly_list("x\ny +* 1", z9, (3, 2))
        assert (info.value.line, info.value.column) == (2, 4)

    def test_field_generator_undefined_for_prime_field(self, z9):
        with pytest.raises(ParseException):
            parse_poly("a*x", z9, (3,))

    def test_unbalanced_parenthesis(self, z9):
        with pytest.raises(ParseException):
            parse_poly("(x + 1", z9, (3,))

    def test_parse_element(self, z25, f4g):
        assert parse_element("7", z25) == z25.element(7)
        assert parse_element("-1", z25) == z25.element(24)
        assert parse_element("a + g", f4g) == f4g.element((2, 1))


class TestFormatting:
    def test_format_element(self, z25, f4g):
        assert format_element(z25, 7) == "7"
        assert format_element(f4g, (2, 1)) == "a + g"
        assert format_element(f4g, (0, 3)) == "(a + 1)*g"
        assert format_element(f4g, (3, 2)) == "a + 1 + a*g"
        assert format_element(f4g, f4g.zero()) == "0"

    def test_format_univariate(self, z9):
        f = Poly(z9, (1, 1)) * Poly(z9, (2, 1))
        assert format_poly(f) == "x^2 + 3*x + 2"

    def test_format_bivariate_last_variable_major(self, z9):
        f = parse_poly("x + y", z9, (3, 2)) * parse_poly("x^2 + y", z9, (3, 2))
        assert format_poly(f) == "x^2*y + x*y + 2"

    def test_format_compound_coefficient(self, f4g):
        f = parse_poly("(a + 1)*x + g", f4g, (2,))
        assert format_poly(f) == "(a + 1)*x + g"

    def test_format_names_override(self, z25):
        f = parse_poly("x^2 + 1", z25, (3,))
        assert format_poly(f, names=("y",)) == "y^2 + 1"

    def test_zero(self, z9):
        assert format_poly(MultiPoly.zero(z9, (3, 2))) == "0"

    def test_printed_text_reparses(self, z9, f4g):
        rng = random.Random(7)
        for spec, dims in ((z9, (3, 2)), (f4g, (2, 2)), (z9, (2, 2, 2))):
            for _ in range(10):
                f = random_poly(rng, spec, dims)
                assert parse_poly(format_poly(f), spec, dims) == f


class TestReadGenerators:
    def test_inline(self, z9):
        assert len(read_generators("x, 1", z9, (3,))) == 2

    def test_from_file(self, tmp_path, z9):
        path = tmp_path / "gens.txt"
        path.write_text("# code\nx + 1\n3*x\n", encoding="utf-8")
        gens = read_generators(f"@{path}", z9, (3,))
        assert gens == [parse_poly("x + 1", z9, (3,)), parse_poly("3*x", z9, (3,))]

    def test_missing_file(self, tmp_path, z9):
        with pytest.raises(ParseException):
            read_generators(f"@{tmp_path / 'missing.txt'}", z9, (3,))
