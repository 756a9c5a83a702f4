"""Independent slow reference implementations used to pin the fast paths.

Everything here is deliberately written in the most naive way possible and
shares no code with the package internals.
"""

from fractions import Fraction


def dense_rank(rows):
    """Gaussian elimination on a dense list-of-lists copy, first-nonzero pivot."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, nrows):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pv = m[rk][col]
        for i in range(rk + 1, nrows):
            if m[i][col] != 0:
                f = m[i][col] / pv
                for j in range(col, ncols):
                    m[i][j] -= f * m[rk][j]
        rk += 1
    return rk


def dense_nullity(rows):
    if not rows:
        return 0
    return len(rows[0]) - dense_rank(rows)


def sparse_to_dense(M):
    rows = [[Fraction(0)] * M.ncols for _ in range(M.nrows)]
    for (i, j), v in M.entries.items():
        rows[i][j] = Fraction(v)
    return rows


def dense_homology_dim(d_out_rows, d_in_rows, dim_here):
    """dim ker(d_out) - rank(d_in) for dense matrices given as row lists.

    d_out maps this degree forward, d_in maps into it; dim_here is the
    dimension of the middle space (needed when d_out has no rows).
    """
    rank_out = dense_rank(d_out_rows) if d_out_rows else 0
    rank_in = dense_rank(d_in_rows) if d_in_rows else 0
    return dim_here - rank_out - rank_in
