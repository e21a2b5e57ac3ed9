import pytest

from kummerbreak import Field, FieldSpecError, load_fieldspec, parse_fieldspec
from kummerbreak.fieldspec import format_fieldspec

from conftest import FIELDS, STD_SPEC


def test_shipped_files():
    std = load_fieldspec(FIELDS / "std.field")
    assert (std.p, std.f, std.residue_poly, std.eisenstein_poly, std.precision) == \
        (3, 2, (2, 2, 1), (3, 3, 1), 10)
    K = Field(load_fieldspec(FIELDS / "q9z9.field"))
    assert (K.e, K.d) == (6, 9)


def test_roundtrip():
    assert parse_fieldspec(format_fieldspec(STD_SPEC)) == STD_SPEC


def test_comments_and_defaults():
    s = parse_fieldspec("# Q_3\np = 3  # prime\nf = 1\neisenstein_poly = [-3, 1]\nprecision = 6\n")
    assert s.residue_poly == (0, 1) and s.name == "K"


def test_k0_coefficients():
    s = parse_fieldspec("p=3\nf=2\nresidue_poly=[2,2,1]\neisenstein_poly=[3,[0,3],1]\n"
                        "precision=10")
    assert s.eisenstein_poly == (3, (0, 3), 1)
    assert Field(s).e == 2


@pytest.mark.parametrize("text, msg", [
    ("p=3\nf=2\neisenstein_poly=[3,3,1]\nprecision=10", "residue_poly"),
    ("p=3\nf=2\nresidue_poly=[2,2,1]\nprecision=10", "missing"),
    ("p=3\np=3\nf=1\neisenstein_poly=[3,1]\nprecision=10", "duplicate"),
    ("p=3\nf=1\neisenstein_poly=[3,1]\nprecision=10\ncolor=red", "unknown"),
    ("p=3\nf=1\neisenstein_poly=[3,1\nprecision=10", "parse"),
    ("p=3\nf=1\neisenstein_poly=[3,true]\nprecision=10", "boolean"),
    ("p=3\nf=1\neisenstein_poly=[3,1]\nprecision=ten", "parse"),
    ("p 3", "key = value"),
])
def test_errors(text, msg):
    with pytest.raises(FieldSpecError, match=msg):
        parse_fieldspec(text)


def test_missing_file(tmp_path):
    with pytest.raises(FieldSpecError, match="cannot read"):
        load_fieldspec(tmp_path / "nope.field")
