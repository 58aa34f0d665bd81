import pytest

from aontkit import (
    APPLY_INVERSE,
    DifferenceMatrix,
    GFArray,
    from_linear,
    oa_rs,
)
from aontkit.errors import FormatError, NotBijective
from aontkit.formats import (
    load,
    read_array,
    read_dm,
    read_matrix,
    save,
    sniff_kind,
    write_array,
    write_dm,
    write_matrix,
)


def test_matrix_round_trip_prime_field(gf3, range3):
    text = write_matrix(range3)
    assert text == "GF 3 1\nMAT 2 2\n1 1\n1 2\n"
    assert read_matrix(text) == range3
    assert write_matrix(read_matrix(text)) == text


def test_matrix_round_trip_extension_field(gf9, range9):
    text = write_matrix(range9)
    assert text.startswith("GF 3 2 1 0 1\nMAT 6 6\n")
    assert read_matrix(text) == range9
    assert write_matrix(read_matrix(text)) == text


def test_array_round_trip(gf3):
    a = oa_rs(gf3, 2, 4)
    text = write_array(a)
    assert text.splitlines()[0] == "GF 3 1"
    assert text.splitlines()[1] == "ARRAY 3 2 2"
    b = read_array(text)
    assert b == a
    assert write_array(b) == text


def test_transform_array_file_round_trip(gf3, range3):
    a = from_linear(range3, APPLY_INVERSE)
    text = write_array(a)
    back = read_array(text)
    assert back.as_transform() is not None
    assert write_array(back) == text


def test_array_file_bijection_checked_not_assumed(gf3):
    raw = GFArray(gf3, 1, 1, [[0, 0], [0, 1], [1, 2]])
    back = read_array(write_array(raw))
    with pytest.raises(NotBijective):
        back.as_transform()


def test_dm_round_trip():
    d = DifferenceMatrix(3, 3, 1, [[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    text = write_dm(d)
    assert text == "DM 3 3 1\n0 0 0\n0 1 2\n0 2 1\n"
    assert read_dm(text) == d
    assert write_dm(read_dm(text)) == text


def test_sniff_kind(gf3, range3):
    assert sniff_kind(write_matrix(range3)) == "matrix"
    assert sniff_kind(write_array(oa_rs(gf3, 2, 4))) == "array"
    assert sniff_kind("DM 2 2 1\n0 0\n0 1\n") == "dm"
    with pytest.raises(FormatError):
        sniff_kind("")
    with pytest.raises(FormatError):
        sniff_kind("HELLO 1 2\n")


def test_load_save(tmp_path, gf5, range5):
    p = tmp_path / "m.mat"
    save(p, range5)
    assert load(p) == range5
    a = from_linear(range5, APPLY_INVERSE)
    pa = tmp_path / "a.arr"
    save(pa, a)
    assert load(pa) == GFArray(gf5, 3, 3, a.data)
    d = DifferenceMatrix(2, 2, 2, [[0, 0, 1, 1], [0, 1, 0, 1]])
    pd = tmp_path / "d.dm"
    save(pd, d)
    assert load(pd) == d


def test_read_matrix_errors():
    with pytest.raises(FormatError):
        read_matrix("GF 3 1\nMAT 2 2\n1 1\n")  # missing a row
    with pytest.raises(FormatError):
        read_matrix("GF 3 1\nMAT 1 2\n1 5\n")  # entry out of range
    with pytest.raises(FormatError):
        read_matrix("GF 4 1\nMAT 1 1\n0\n")  # 4 is not prime
    with pytest.raises(FormatError):
        read_matrix("GF 3 1\nARRAY 1 1 1\n0\n")
    with pytest.raises(FormatError):
        read_matrix("GF 3 1\nMAT x 2\n1 1\n")


def test_read_array_errors(gf3):
    with pytest.raises(FormatError):
        read_array("GF 3 1\nARRAY 2 1 1\n0 0\n1 1\n")  # v != field order
    with pytest.raises(FormatError):
        read_array("GF 3 1\nARRAY 3 1 1\n0 0\n1 1\n")  # wrong row count
    with pytest.raises(FormatError):
        read_array("GF 3 1\nMAT 1 1\n0\n")


def test_read_dm_errors():
    with pytest.raises(FormatError):
        read_dm("DM 3 2\n0 0 0\n")
    with pytest.raises(FormatError):
        read_dm("DM 3 2 1\n0 0 0\n")  # missing a row
    with pytest.raises(FormatError):
        read_dm("MAT 3 2 1\n0 0 0\n")


def test_reader_tolerates_extra_whitespace(gf3, range3):
    text = "GF 3 1\n\nMAT 2 2\n 1  1 \n1 2\n\n"
    assert read_matrix(text) == range3
