"""Exact sparse linear algebra over the rationals and optional prime fields.

Everything downstream (complexes, homology, deformation solving) reduces to
rank / solve / certificate questions about sparse matrices with exact field
entries.  No floating point exists anywhere in this package.
"""

from fractions import Fraction


class FpElement:
    """Residue in F_p with field operations."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return FpElement(self.p, self.v + _fp_val(other, self.p))

    __radd__ = __add__

    def __neg__(self):
        return FpElement(self.p, -self.v)

    def __sub__(self, other):
        return FpElement(self.p, self.v - _fp_val(other, self.p))

    def __rsub__(self, other):
        return FpElement(self.p, _fp_val(other, self.p) - self.v)

    def __mul__(self, other):
        return FpElement(self.p, self.v * _fp_val(other, self.p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        ov = _fp_val(other, self.p)
        if ov == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElement(self.p, self.v * pow(ov, self.p - 2, self.p))

    def __rtruediv__(self, other):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElement(self.p, _fp_val(other, self.p) * pow(self.v, self.p - 2, self.p))

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d (mod %d)" % (self.v, self.p)


def _fp_val(x, p):
    if isinstance(x, FpElement):
        if x.p != p:
            raise ValueError("mixed prime fields %d and %d" % (x.p, p))
        return x.v
    if isinstance(x, int):
        return x % p
    if isinstance(x, Fraction):
        den = x.denominator % p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by %d" % p)
        return x.numerator * pow(den, p - 2, p)
    raise TypeError("cannot coerce %r into F_%d" % (x, p))


class RationalField:
    name = "Q"

    def scalar(self, x):
        return Fraction(x)

    def parse(self, text):
        return Fraction(text)

    zero = Fraction(0)
    one = Fraction(1)


class PrimeField:
    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.name = "Fp:%d" % p
        self.zero = FpElement(p, 0)
        self.one = FpElement(p, 1)

    def scalar(self, x):
        return FpElement(self.p, _fp_val(x, self.p))

    def parse(self, text):
        return self.scalar(Fraction(text))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


def field_from_name(name):
    """Resolve a field selector: "Q" or "Fp:<p>" (case-insensitive "q"/"fp:<p>")."""
    norm = name.strip()
    if norm.lower() in ("q", "qq"):
        return QQ
    low = norm.lower()
    if low.startswith("fp:"):
        return PrimeField(int(norm[3:]))
    raise ValueError("unknown field %r (expected 'Q' or 'Fp:<p>')" % name)


def scalar_to_str(x):
    if isinstance(x, FpElement):
        return str(x.v)
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


class DimensionMismatch(ValueError):
    pass


class SparseMatrix:
    """Immutable-shape sparse matrix; stored entries are always nonzero."""

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, self.nrows, self.ncols))
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build from a list of sparse column vectors (dicts row -> scalar)."""
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m[i, j] = v
        return m

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def rows(self):
        rows = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        t = SparseMatrix(self.ncols, self.nrows)
        for (i, j), v in self.entries.items():
            t[j, i] = v
        return t

    def mat_vec(self, x):
        """M @ x for x a length-ncols list or sparse dict; returns a dense list."""
        if isinstance(x, dict):
            xs = x
        else:
            if len(x) != self.ncols:
                raise DimensionMismatch("vector length %d != %d columns" % (len(x), self.ncols))
            xs = {j: v for j, v in enumerate(x) if v}
        out = [Fraction(0)] * self.nrows
        for (i, j), v in self.entries.items():
            if j in xs:
                out[i] = out[i] + v * xs[j]
        return out

    def vec_mat(self, f):
        """f @ M for a row functional f (dict or list over rows)."""
        if not isinstance(f, dict):
            f = {i: v for i, v in enumerate(f) if v}
        out = {}
        for (i, j), v in self.entries.items():
            if i in f:
                out[j] = out.get(j, Fraction(0)) + f[i] * v
        return {j: v for j, v in out.items() if v}

    def __repr__(self):
        return "SparseMatrix(%dx%d, %d nonzero)" % (self.nrows, self.ncols, len(self.entries))


def _normalize_row(row):
    """Scale a sparse row to a primitive integer vector (rational case only).

    Keeps elimination division-minimizing: entries stay integral whenever the
    input was, which controls rational blow-up.
    """
    vals = list(row.values())
    if not vals or not isinstance(vals[0], Fraction):
        return row
    from math import gcd
    denl = 1
    for v in vals:
        denl = denl * v.denominator // gcd(denl, v.denominator)
    nums = [v.numerator * (denl // v.denominator) for v in vals]
    g = 0
    for n in nums:
        g = gcd(g, n)
    if g == 0:
        return row
    lead_key = min(row)
    lead = row[lead_key]
    sign = -1 if lead < 0 else 1
    scale = Fraction(sign * denl, g)
    return {j: v * scale for j, v in row.items()}


def _eliminate(rows, track=False):
    """Forward elimination with sparsity pivoting.

    rows: list of sparse row dicts, mutated order preserved externally.
    Returns (pivots, reduced_rows, transforms) where pivots is a list of
    (row_index_in_reduced, col), reduced_rows are the surviving echelon rows
    and transforms[i] expresses reduced_rows[i] as a combination of the input
    rows (only when track=True).

    Pivot choice: among candidate rows, fewest nonzeros first, then lowest
    original row index; columns are processed left to right.  This order is
    deterministic, so every report built on top is byte-stable.
    """
    work = [dict(r) for r in rows]
    trans = [{i: Fraction(1)} for i in range(len(rows))] if track else None
    active = list(range(len(work)))
    pivots = []
    ncols = 0
    for r in work:
        if r:
            ncols = max(ncols, max(r) + 1)
    for col in range(ncols):
        cand = [ri for ri in active if col in work[ri]]
        if not cand:
            continue
        cand.sort(key=lambda ri: (len(work[ri]), ri))
        piv = cand[0]
        active.remove(piv)
        pval = work[piv][col]
        for ri in cand[1:]:
            factor = work[ri][col] / pval
            target = work[ri]
            for j, v in work[piv].items():
                nv = target.get(j, None)
                nv = (nv - factor * v) if nv is not None else -factor * v
                if nv:
                    target[j] = nv
                else:
                    target.pop(j, None)
            if track:
                tt = trans[ri]
                for j, v in trans[piv].items():
                    nv = tt.get(j, None)
                    nv = (nv - factor * v) if nv is not None else -factor * v
                    if nv:
                        tt[j] = nv
                    else:
                        tt.pop(j, None)
            elif target and isinstance(pval, Fraction):
                work[ri] = _normalize_row(target)
        pivots.append((piv, col))
    return pivots, work, trans


def rank(M):
    """Rank over the coefficient field, by exact sparse elimination."""
    pivots, _, _ = _eliminate(M.rows())
    return len(pivots)


def solve(M, v):
    """Some x with M @ x == v, or None when v is outside the image.

    Free variables are set to zero and pivots are chosen deterministically,
    so repeated calls return the identical solution.
    """
    x = _solve_impl(M, v)
    return x if not isinstance(x, _Certificate) else None


class _Certificate:
    def __init__(self, functional):
        self.functional = functional


def _solve_impl(M, v):
    if len(v) != M.nrows:
        raise DimensionMismatch("rhs length %d != %d rows" % (len(v), M.nrows))
    # Eliminate the augmented rows [M | v] while tracking row operations.
    rows = M.rows()
    aug = []
    for i, r in enumerate(rows):
        rr = dict(r)
        if v[i]:
            rr[M.ncols] = v[i]
        aug.append(rr)
    pivots, work, trans = _eliminate(aug, track=True)
    piv_rows = {ri for ri, col in pivots if col < M.ncols}
    # Inconsistency: a surviving row supported only on the rhs column.
    for ri, r in enumerate(work):
        if r and set(r) == {M.ncols}:
            return _Certificate(trans[ri])
    for ri, col in pivots:
        if col == M.ncols:
            return _Certificate(trans[ri])
    # Back substitution over pivot columns, free variables zero.
    sol = [Fraction(0)] * M.ncols
    for ri, col in sorted(pivots, key=lambda t: -t[1]):
        r = work[ri]
        s = r.get(M.ncols, Fraction(0))
        for j, coef in r.items():
            if j != col and j != M.ncols:
                s = s - coef * sol[j]
        sol[col] = s / r[col]
    return sol


def cobound_certificate(M, v):
    """Either ('solution', x) with M @ x == v, or ('certificate', f) with
    f @ M == 0 and f(v) != 0.  Exactly one branch is returned and both sides
    are re-verified by direct multiplication before returning."""
    res = _solve_impl(M, v)
    if isinstance(res, _Certificate):
        f = res.functional
        fM = M.vec_mat(f)
        if fM:
            raise AssertionError("internal: certificate functional does not annihilate M")
        fv = sum((f[i] * v[i] for i in f), Fraction(0))
        if not fv:
            raise AssertionError("internal: certificate functional vanishes on v")
        return ("certificate", f)
    Mx = M.mat_vec(res)
    if any(Mx[i] != v[i] for i in range(M.nrows)):
        raise AssertionError("internal: claimed solution fails M @ x == v")
    return ("solution", res)


def nullspace(M):
    """Basis of ker(M) as sparse column dicts, one per free column."""
    rows = M.rows()
    pivots, work, _ = _eliminate(rows)
    pivot_cols = {col: ri for ri, col in pivots}
    free_cols = [j for j in range(M.ncols) if j not in pivot_cols]
    basis = []
    ordered = sorted(pivots, key=lambda t: -t[1])
    for fc in free_cols:
        vec = {fc: Fraction(1)}
        for ri, col in ordered:
            r = work[ri]
            s = Fraction(0)
            for j, coef in r.items():
                if j != col and j in vec:
                    s = s - coef * vec[j]
            if s:
                vec[col] = s / r[col]
        basis.append(vec)
    return basis


def column_space_pivots(columns):
    """Indices of a deterministic maximal independent subset of the columns."""
    if not columns:
        return []
    nrows = 0
    for c in columns:
        if c:
            nrows = max(nrows, max(c) + 1)
    chosen = []
    rows = []
    for j, col in enumerate(columns):
        cand = dict(col)
        # reduce cand against the accumulated echelon rows
        for lead, r in rows:
            if lead in cand:
                factor = cand[lead] / r[lead]
                for jj, vv in r.items():
                    nv = cand.get(jj, Fraction(0)) - factor * vv
                    if nv:
                        cand[jj] = nv
                    else:
                        cand.pop(jj, None)
        if cand:
            lead = min(cand)
            rows.append((lead, cand))
            rows.sort(key=lambda t: t[0])
            chosen.append(j)
    return chosen


def quotient_pivots(sub_columns, columns):
    """Deterministic representatives of span(columns) modulo span(sub_columns).

    Returns indices into `columns` whose classes form a basis of the quotient;
    used to pick cohomology representatives (lexicographically first pivots).
    """
    picked = column_space_pivots(list(sub_columns) + list(columns))
    k = len(sub_columns)
    return [j - k for j in picked if j >= k]
