import numpy as np
import pytest

from ldpclab.alist import read_alist, write_alist
from ldpclab.gf2 import SparseBinaryMatrix


def test_roundtrip_random(tmp_path):
    rng = np.random.default_rng(4)
    m = SparseBinaryMatrix.from_dense(rng.integers(0, 2, (6, 11)))
    path = tmp_path / "m.alist"
    write_alist(m, path)
    back = read_alist(path)
    assert back.rows == m.rows
    assert (back.n_rows, back.n_cols) == (m.n_rows, m.n_cols)


def test_roundtrip_wimax(tmp_path, wimax576):
    path = tmp_path / "h576.alist"
    write_alist(wimax576, path)
    assert read_alist(path).rows == wimax576.rows


def test_padded_layout_written(tmp_path):
    m = SparseBinaryMatrix.from_rows(4, [[0, 1, 2, 3], [1]])
    path = tmp_path / "p.alist"
    write_alist(m, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "4 2"
    assert lines[1] == "2 4"    # max column degree, max row degree
    # row section lines are zero-padded to the max row degree
    assert lines[-1].split() == ["2", "0", "0", "0"]
    assert read_alist(path).rows == m.rows


def test_tight_layout_accepted(tmp_path):
    # same matrix, unpadded body
    content = "\n".join([
        "4 2", "2 4",
        "1 2 1 1",
        "4 1",
        "1 2", "1", "1", "1",
        "1 2 3 4", "2",
    ])
    path = tmp_path / "tight.alist"
    path.write_text(content + "\n")
    m = read_alist(path)
    assert m.rows == ((0, 1, 2, 3), (1,))


def test_inconsistent_column_section_rejected(tmp_path):
    # row section says columns 1 and 2 are used, column section says 1 and 3
    content = "\n".join([
        "3 1", "1 2",
        "1 1 0",
        "2",
        "1", "0", "1",
        "1 2",
    ])
    path = tmp_path / "bad.alist"
    path.write_text(content + "\n")
    with pytest.raises(ValueError):
        read_alist(path)
