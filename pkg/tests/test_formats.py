from __future__ import annotations

from importlib import resources

import numpy as np
import pytest

from semiring_dh.formats import (FormatError, load_matrix, parse_matrix, parse_semiring, serialize_matrix,
                                 serialize_semiring)
from semiring_dh.semiring import builtin

DATA = resources.files("semiring_dh").joinpath("data")


def _strip_comments(text: str) -> str:
    return "\n".join(ln for ln in text.splitlines() if not ln.startswith("#")) + "\n"


@pytest.mark.parametrize("name", ["s6", "s20"])
def test_semiring_fixture_round_trip(name):
    text = DATA.joinpath(f"{name}.semiring").read_text()
    table = parse_semiring(text)
    assert table == builtin(name)
    assert serialize_semiring(table) == _strip_comments(text)
    assert parse_semiring(serialize_semiring(table)) == table


def test_reference_m1_fixture():
    m = parse_matrix(DATA.joinpath("paper_M1.matrix").read_text())
    assert m.n == 20 and m.semiring.name == "s6"
    assert set(np.unique(m.entries)) <= set(range(6))


@pytest.mark.parametrize("name", ["paper_M1", "paper_M2", "paper_S", "paper_A"])
def test_matrix_fixture_round_trip(name):
    text = DATA.joinpath(f"{name}.matrix").read_text()
    m = parse_matrix(text)
    assert serialize_matrix(m) == _strip_comments(text)


def test_bad_row_length_names_line():
    text = "matrix\nsemiring s6\nn 2\n0 1\n0 1 2\n"
    with pytest.raises(FormatError) as exc:
        parse_matrix(text)
    assert exc.value.line == 5
    assert "line 5" in str(exc.value)


@pytest.mark.parametrize("text,line", [
    ("matrix\nsemiring s6\nn 2\n0 1\n0 9\n", 5),
    ("matrix\nsemiring s6\nn 2\n0 1\n", 5),
    ("matrix\nsemiring nope\nn 1\n0\n", 2),
    ("matrix\nsemiring s6\nn x\n0\n", 3),
    ("matrix\nsemiring s6\nn 1\n\n0\n", 4),
    ("matrix\nsemiring s6\nn 1\n0\nextra\n", 5),
    ("matrx\nsemiring s6\nn 1\n0\n", 1),
])
def test_matrix_errors(text, line):
    with pytest.raises(FormatError) as exc:
        parse_matrix(text)
    assert exc.value.line == line


def test_semiring_structural_error_is_not_axiom_error():
    # parses fine but violates the laws: that is validate_axioms' business, not the parser's
    text = "semiring weird\norder 2\nzero none\none none\nadd\n0 0\n1 1\nmul\n0 0\n0 0\n"
    table = parse_semiring(text)
    from semiring_dh.semiring import validate_axioms

    assert validate_axioms(table)
    with pytest.raises(FormatError):
        parse_semiring(text.replace("order 2", "order 3"))
    with pytest.raises(FormatError):
        parse_semiring(text.replace("zero none", "zero 7"))


def test_comments_are_ignored():
    text = "# header\nmatrix\n# inside\nsemiring boolean_b2\nn 1\n1\n"
    assert parse_matrix(text).tolist() == [[1]]


def test_matrix_with_explicit_table(tmp_path, s6):
    path = tmp_path / "m.matrix"
    path.write_text("matrix\nsemiring s6\nn 1\n3\n")
    assert load_matrix(path, s6).tolist() == [[3]]
    with pytest.raises(FormatError):
        load_matrix(path, builtin("s20"))
