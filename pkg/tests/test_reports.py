import pytest

from chain_codes.algebra import GenerationMethod, LevelKind, Poly, ValidationException
from chain_codes.codes import (
    CanonicalEntry,
    CanonicalGenSet,
    Generator,
    GeneratorReport,
    nd_generators,
)

from conftest import poly, polys


class TestCanonicalGenSet:
    def test_entry_text(self, z25):
        entry = CanonicalEntry(1, Poly(z25, (1, 1)))
        assert str(entry) == "g*(x + 1)"
        assert str(CanonicalEntry(1, Poly(z25, (1,)))) == "g"
        assert str(CanonicalEntry(0, Poly(z25, (24, 1)))) == "x + 24"

    def test_staircase_check(self, z9):
        good = CanonicalGenSet(z9, 3, (CanonicalEntry(1, Poly(z9, (1,))), CanonicalEntry(0, Poly(z9, (2, 1)))))
        assert good.check_staircase()
        assert good.bound() == 2
        not_monic = CanonicalGenSet(z9, 3, (CanonicalEntry(0, Poly(z9, (1, 2))),))
        assert not not_monic.check_staircase()
        wrong_order = CanonicalGenSet(z9, 3, tuple(reversed(good.entries)))
        assert not wrong_order.check_staircase()

    def test_zero(self, z9):
        empty = CanonicalGenSet(z9, 3)
        assert empty.is_zero()
        assert empty.bound() == 0
        assert str(empty) == "0"

    def test_dict_round_trip(self, f4g):
        gen_set = CanonicalGenSet(
            f4g, 4, (CanonicalEntry(1, Poly(f4g, (1,))), CanonicalEntry(0, Poly(f4g, (1, 1))))
        )
        data = gen_set.to_dict()
        assert data == {
            "m": 4,
            "entries": [{"gamma_exponent": 1, "q": "1"}, {"gamma_exponent": 0, "q": "x + 1"}],
        }
        assert CanonicalGenSet.from_dict(data, f4g) == gen_set

    def test_from_dict_invalid(self, f4g):
        with pytest.raises(ValidationException):
            CanonicalGenSet.from_dict({"entries": []}, f4g)


class TestGenerator:
    def test_separable_with_factors(self, z9):
        x = poly("x + 2", z9, (3, 2))
        y = poly("3*y + 1", z9, (3, 2))
        assert Generator(x * y, (x, y)).separable

    def test_factors_must_multiply_out(self, z9):
        x = poly("x + 2", z9, (3, 2))
        y = poly("3*y + 1", z9, (3, 2))
        assert not Generator(x * y + x, (x, y)).separable

    def test_without_factors(self, z9):
        assert Generator(poly("x^2 + 1", z9, (3, 2))).separable
        assert not Generator(poly("x*y + 1", z9, (3, 2))).separable


class TestGeneratorReport:
    def test_to_dict(self, z9):
        report = nd_generators(z9, (3, 2), polys("x*y + 1", z9, (3, 2)))
        data = report.to_dict()
        assert data["ring"] == "Z/9"
        assert data["dims"] == [3, 2]
        assert data["method"] == "method2"
        assert data["certified"] is True
        assert len(data["factors"]) == len(data["generators"])
        assert {level["kind"] for level in data["levels"]} == {LevelKind.COMPONENT.value}

    def test_from_dict(self, z9):
        report = nd_generators(z9, (3, 2), polys("x*y + 1, 3*x", z9, (3, 2)))
        restored = GeneratorReport.from_dict(report.to_dict())
        assert restored.ring == z9
        assert restored.method is GenerationMethod.METHOD2
        assert restored.polys() == report.polys()
        assert restored.separable_flags == report.separable_flags
        assert [level.label for level in restored.levels] == [level.label for level in report.levels]

    def test_from_dict_invalid(self):
        with pytest.raises(ValidationException):
            GeneratorReport.from_dict({"ring": "Z/9", "dims": [3]})
        with pytest.raises(ValidationException):
            GeneratorReport.from_dict({"ring": "Z/6", "dims": [3], "method": "method1", "generators": []})
