"""Reader/writer for the alist sparse-matrix interchange format.

Layout: line 1 holds `n m` (columns, rows), line 2 the maximum column and
row degrees, then the n column degrees, the m row degrees, one line of
1-based row indices per column, and one line of 1-based column indices per
row. Entries may be zero-padded up to the maximum degree (the common
variant, also what the writer emits) or written tightly with exactly
`degree` entries per line; zeros are ignored on read.
"""

from __future__ import annotations

from .gf2 import SparseBinaryMatrix


def write_alist(m: SparseBinaryMatrix, path) -> None:
    cols = m.col_supports()
    col_deg = [len(c) for c in cols]
    row_deg = m.row_weights()
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)

    def padded(indices, width):
        entries = [str(i + 1) for i in indices] + ["0"] * (width - len(indices))
        return " ".join(entries)

    lines = [
        f"{m.n_cols} {m.n_rows}",
        f"{max_col} {max_row}",
        " ".join(str(d) for d in col_deg),
        " ".join(str(d) for d in row_deg),
    ]
    lines += [padded(c, max_col) for c in cols]
    lines += [padded(r, max_row) for r in m.rows]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> SparseBinaryMatrix:
    with open(path) as fh:
        tokens = [int(t) for line in fh for t in line.split()]
    if len(tokens) < 4:
        raise ValueError("alist header truncated")
    n, m = tokens[0], tokens[1]
    pos = 4  # skip the max-degree pair; degrees are read explicitly
    col_deg = tokens[pos : pos + n]
    pos += n
    row_deg = tokens[pos : pos + m]
    pos += m
    body = tokens[pos:]

    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)
    if len(body) == n * max_col + m * max_row:
        col_widths = [max_col] * n
        row_widths = [max_row] * m
    elif len(body) == sum(col_deg) + sum(row_deg):
        col_widths = col_deg
        row_widths = row_deg
    else:
        raise ValueError("alist body matches neither padded nor tight layout")

    def consume(widths):
        nonlocal body
        lists = []
        at = 0
        for w in widths:
            lists.append([v - 1 for v in body[at : at + w] if v > 0])
            at += w
        body = body[at:]
        return lists

    cols = consume(col_widths)
    rows = consume(row_widths)

    mat = SparseBinaryMatrix.from_rows(n, [sorted(r) for r in rows])
    if mat.n_rows != m:
        raise ValueError(f"alist declared {m} rows, parsed {mat.n_rows}")
    derived = mat.col_supports()
    for j in range(n):
        if sorted(cols[j]) != derived[j]:
            raise ValueError(f"alist column {j} inconsistent with row entries")
    if [len(c) for c in derived] != col_deg:
        raise ValueError("alist column degrees inconsistent")
    return mat
