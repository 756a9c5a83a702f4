"""Finite-dimensional Z/2-graded unital cyclic A-infinity algebras.

Structure constants come from a JSON description (see `parse_algebra`).  The
classical operations m_k are stored as given; alongside them we keep the
suspended operations

    b_k(x_1, ..., x_k) = (-1)^{sum_j (k-j) p(x_j)} m_k(x_1, ..., x_k),

where p(x) = |x| + 1 is the parity of x after the shift.  All Hochschild-level
sign conventions in this package are the Koszul signs of the shifted world
applied to the b_k, which keeps every operator formula uniform; see
`hochschild` for the conventions the identity test suite pins down.
"""

import json
from fractions import Fraction

from .exactla import QQ, SparseMatrix, field_from_name, rank, scalar_to_str


class AlgebraError(ValueError):
    pass


class SuperBasis:
    """Ordered basis with Z/2 parities; names are unique and nonempty."""

    def __init__(self, names, parities):
        if not names:
            raise AlgebraError("empty basis")
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise AlgebraError("duplicated basis name(s): %s" % ", ".join(dup))
        if len(parities) != len(names):
            raise AlgebraError("parity list length mismatch")
        for q in parities:
            if q not in (0, 1):
                raise AlgebraError("parity must be 0 or 1, got %r" % (q,))
        self.names = list(names)
        self.parities = list(parities)
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)


class AInftyAlgebra:
    """In-memory algebra: basis, unit, structure tensors, cyclic pairing.

    Tensors are sparse tables  tuple(indices) -> {out_index: scalar}.
    `mk[k]` holds the classical m_k, `bk[k]` the suspended version.  Both are
    total over all basis tuples that appear in the file; missing tuples are
    zero.
    """

    def __init__(self, name, field, basis, unit_index, pairing, pairing_parity,
                 mk, k_max, annotations=None):
        self.name = name
        self.field = field
        self.basis = basis
        self.unit = unit_index
        self.pairing = dict(pairing)
        self.pairing_parity = pairing_parity
        self.mk = {k: dict(t) for k, t in mk.items()}
        self.k_max = k_max
        self.annotations = dict(annotations or {})
        self.dim = len(basis)
        self.abar = tuple(i for i in range(self.dim) if i != unit_index)
        self.bk = {k: self._suspend(k, t) for k, t in self.mk.items()}
        self._pairing_inverse = None

    # -- gradings ---------------------------------------------------------

    def parity(self, i):
        return self.basis.parities[i]

    def p_shift(self, i):
        """Parity of the i-th basis vector after suspension."""
        return (self.basis.parities[i] + 1) % 2

    def vec_parity(self, vec):
        """Parity of a homogeneous coefficient vector, or None for 0/mixed."""
        seen = {self.parity(i) for i, c in vec.items() if c}
        if not seen:
            return None
        if len(seen) > 1:
            raise AlgebraError("inhomogeneous vector %r" % (vec,))
        return seen.pop()

    # -- structure tensors --------------------------------------------------

    def _suspend(self, k, table):
        out = {}
        for tup, val in table.items():
            sgn = sum((k - j - 1) * self.p_shift(tup[j]) for j in range(k)) % 2
            out[tup] = {o: (-c if sgn else c) for o, c in val.items()}
        return out

    def m_value(self, tup):
        """Classical m_k on a basis tuple, as a coefficient vector."""
        return dict(self.mk.get(len(tup), {}).get(tuple(tup), {}))

    def b_value(self, tup):
        """Suspended b_k on a basis tuple, as a coefficient vector."""
        return dict(self.bk.get(len(tup), {}).get(tuple(tup), {}))

    def b_eval(self, vecs):
        """Suspended b_k evaluated multilinearly on coefficient vectors."""
        k = len(vecs)
        table = self.bk.get(k)
        out = {}
        if not table:
            return out
        def rec(pos, idxs, coef):
            if pos == k:
                val = table.get(tuple(idxs))
                if val:
                    for o, c in val.items():
                        nv = out.get(o, 0) + coef * c
                        if nv:
                            out[o] = nv
                        else:
                            out.pop(o, None)
                return
            for i, c in vecs[pos].items():
                if c:
                    rec(pos + 1, idxs + [i], coef * c)
        rec(0, [], self.field.one)
        return out

    def project_abar(self, vec):
        """Kill the unit coordinate (reduction A -> Abar)."""
        return {i: c for i, c in vec.items() if i != self.unit and c}

    # -- pairing ------------------------------------------------------------

    def pair(self, u, v):
        """<u, v> extended bilinearly to coefficient vectors."""
        s = self.field.zero
        for i, a in u.items():
            for j, b in v.items():
                w = self.pairing.get((i, j))
                if w:
                    s = s + a * b * w
        return s

    def pairing_matrix(self):
        m = SparseMatrix(self.dim, self.dim)
        for (i, j), v in self.pairing.items():
            m[i, j] = v
        return m

    def pairing_inverse(self):
        """Dense inverse Gram matrix; entries inv[i][j] with sum_j P[i,j] inv[j][l] = delta_il."""
        if self._pairing_inverse is None:
            n = self.dim
            dense = [[self.pairing.get((i, j), self.field.zero) for j in range(n)] for i in range(n)]
            inv = _invert_dense(dense, self.field)
            if inv is None:
                raise AlgebraError("pairing of %s is degenerate" % self.name)
            self._pairing_inverse = inv
        return self._pairing_inverse

    def __repr__(self):
        return "AInftyAlgebra(%s, dim %d, K_max %d)" % (self.name, self.dim, self.k_max)


def _invert_dense(rows, field):
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


# -- parsing ----------------------------------------------------------------


def parse_algebra(source):
    """Parse an algebra description (path, JSON text, or dict) into memory.

    No mathematical validation happens here; `validate` checks the axioms.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = None
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, TypeError):
            text = source
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraError("algebra file is not valid JSON: %s" % exc) from exc

    try:
        name = data["name"]
        field = field_from_name(data.get("field", "Q"))
        basis_items = data["basis"]
        unit_name = data["unit"]
    except KeyError as exc:
        raise AlgebraError("missing required key %s" % exc) from exc

    basis = SuperBasis([b["name"] for b in basis_items],
                       [b["parity"] for b in basis_items])
    if unit_name not in basis.index:
        raise AlgebraError("unit %r is not a basis name" % unit_name)
    unit = basis.index[unit_name]

    def look(nm):
        if nm not in basis.index:
            raise AlgebraError("unknown basis name %r" % nm)
        return basis.index[nm]

    def scal(s):
        try:
            return field.parse(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraError("bad scalar %r: %s" % (s, exc)) from exc

    pairing = {}
    for a, b, s in data.get("pairing", []):
        v = scal(s)
        if v:
            pairing[(look(a), look(b))] = v

    mk = {}
    k_max = int(data.get("k_max", 0))
    for prod in data.get("products", []):
        k = int(prod["arity"])
        ins = tuple(look(n) for n in prod["inputs"])
        if len(ins) != k:
            raise AlgebraError("product inputs %r do not match arity %d" % (prod["inputs"], k))
        out = {}
        for nm, s in prod["output"]:
            v = scal(s)
            if v:
                out[look(nm)] = v
        if out:
            mk.setdefault(k, {})[ins] = out
            k_max = max(k_max, k)
    k_max = max(k_max, 2)

    return AInftyAlgebra(name, field, basis, unit, pairing,
                         int(data.get("pairing_parity", 0)) % 2,
                         mk, k_max, data.get("annotations"))


# -- validation ---------------------------------------------------------------


class CheckResult:
    def __init__(self, name, passed, witness=None):
        self.name = name
        self.passed = passed
        self.witness = witness

    def __repr__(self):
        flag = "pass" if self.passed else "FAIL"
        extra = "" if self.witness is None else " witness=%r" % (self.witness,)
        return "[%s] %s%s" % (flag, self.name, extra)


class ValidationReport:
    def __init__(self, algebra_name, checks):
        self.algebra = algebra_name
        self.checks = checks

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def to_jsonable(self):
        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 "witness": _witness_json(c.witness)}
                for c in self.checks
            ],
        }


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, (list, tuple)):
        return [_witness_json(x) for x in w]
    if isinstance(w, Fraction):
        return scalar_to_str(w)
    return str(w) if not isinstance(w, (str, int, bool)) else w


def _tuples(indices, n):
    if n == 0:
        yield ()
        return
    for t in _tuples(indices, n - 1):
        for i in indices:
            yield t + (i,)


def validate(A, arity_bound=4):
    """Check every finitely checkable hypothesis on A; failures carry witnesses.

    The checks: parity homogeneity of each m_k, strict unitality, the
    A-infinity relations through total arity `arity_bound` (on all basis
    tuples; unit slots are covered by strict unitality but checked anyway),
    pairing parity homogeneity / graded symmetry / nondegeneracy, and
    cyclic invariance of every m_k under the shifted-Koszul rotation.
    """
    checks = []
    names = A.basis.names
    unit = A.unit

    bad = [i for i in (unit,) if A.parity(i) != 0]
    checks.append(CheckResult("unit_is_even", not bad,
                              None if not bad else names[unit]))

    # parity homogeneity of m_k: |m_k(x)| = k + sum |x_i| (mod 2)
    wit = None
    for k, table in sorted(A.mk.items()):
        for tup, out in table.items():
            want = (k + sum(A.parity(i) for i in tup)) % 2
            for o in out:
                if A.parity(o) != want:
                    wit = (k, tuple(names[i] for i in tup), names[o])
                    break
            if wit:
                break
        if wit:
            break
    checks.append(CheckResult("mk_parity_homogeneous", wit is None, wit))

    # strict unitality
    wit = None
    for a in range(A.dim):
        left = A.m_value((unit, a))
        right = A.m_value((a, unit))
        ea = {a: A.field.one}
        if left != ea or right != ea:
            wit = (names[a],)
            break
    if wit is None:
        for k, table in sorted(A.mk.items()):
            if k == 2:
                continue
            for tup in table:
                if unit in tup:
                    wit = (k, tuple(names[i] for i in tup))
                    break
            if wit:
                break
    checks.append(CheckResult("strict_unitality", wit is None, wit))

    # A-infinity relations, suspended form: for each total arity n,
    #   sum_{i+j=n+1} sum_a (-1)^{p(x_1)+...+p(x_a)} b_i(x.., b_j(..), ..x) = 0
    for n in range(1, arity_bound + 1):
        wit = None
        for tup in _tuples(range(A.dim), n):
            acc = {}
            for j in sorted(A.bk):
                if j > n:
                    continue
                i_ar = n - j + 1
                if i_ar < 1 or i_ar not in A.bk:
                    continue
                for a in range(0, n - j + 1):
                    sgn = sum(A.p_shift(x) for x in tup[:a]) % 2
                    inner = A.b_value(tup[a:a + j])
                    if not inner:
                        continue
                    vecs = ([{x: A.field.one} for x in tup[:a]] + [inner]
                            + [{x: A.field.one} for x in tup[a + j:]])
                    val = A.b_eval(vecs)
                    for o, c in val.items():
                        c2 = -c if sgn else c
                        nv = acc.get(o, 0) + c2
                        if nv:
                            acc[o] = nv
                        else:
                            acc.pop(o, None)
            if acc:
                wit = tuple(names[i] for i in tup)
                break
        checks.append(CheckResult("ainfty_arity_%d" % n, wit is None, wit))

    # pairing parity homogeneity
    wit = None
    for (i, j), v in sorted(A.pairing.items()):
        if (A.parity(i) + A.parity(j)) % 2 != A.pairing_parity:
            wit = (names[i], names[j])
            break
    checks.append(CheckResult("pairing_parity_homogeneous", wit is None, wit))

    # graded symmetry <a,b> = (-1)^{|a||b|} <b,a>
    wit = None
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.pairing.get((i, j), A.field.zero)
            rhs = A.pairing.get((j, i), A.field.zero)
            if A.parity(i) * A.parity(j) % 2:
                rhs = -rhs
            if lhs != rhs:
                wit = (names[i], names[j])
                break
        if wit:
            break
    checks.append(CheckResult("pairing_graded_symmetric", wit is None, wit))

    # nondegeneracy
    gram_rank = rank(A.pairing_matrix())
    wit = None
    if gram_rank != A.dim:
        for vec in _kernel_witness(A):
            wit = vec
            break
    checks.append(CheckResult("pairing_nondegenerate", gram_rank == A.dim, wit))

    # cyclicity of each m_k:  <b_k(x_1..x_k), x_0> must be invariant under the
    # shifted-Koszul rotation that carries x_k to the front:
    #   <b_k(x_1..x_k), x_0> = (-1)^{p(x_k)(p(x_0)+...+p(x_{k-1}))} <b_k(x_0..x_{k-1}), x_k>
    for k in sorted(A.bk):
        wit = None
        for tup in _tuples(range(A.dim), k + 1):
            x0, rest = tup[0], tup[1:]
            lhs = A.pair(A.b_value(rest), {x0: A.field.one})
            sgn = (A.p_shift(tup[-1]) * sum(A.p_shift(x) for x in tup[:-1])) % 2
            rhs = A.pair(A.b_value(tup[:-1]), {tup[-1]: A.field.one})
            if lhs != (-rhs if sgn else rhs):
                wit = tuple(names[i] for i in tup)
                break
        checks.append(CheckResult("cyclic_m_%d" % k, wit is None, wit))

    return ValidationReport(A.name, checks)


def _kernel_witness(A):
    from .exactla import nullspace
    for vec in nullspace(A.pairing_matrix().transpose()):
        yield {A.basis.names[i]: scalar_to_str(v) for i, v in vec.items()}
