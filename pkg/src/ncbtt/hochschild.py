"""Reduced Hochschild chains and cochains with the full operator zoo.

Sign regime
-----------

One convention rules everything here: the shifted (suspended) Koszul rule.
Each basis element x carries the shifted parity p(x) = |x| + 1, the structure
operations are stored in suspended form b_k (see `algebra`), and every
operator formula below picks up exactly the Koszul signs of the shifted
world.  A cochain's `parity` is its parity as an element of the shifted
complex, so for every stored entry (x_1..x_n) -> o,

    p(o) + p(x_1) + ... + p(x_n)  ==  parity  (mod 2).

The structure cochain m = sum_k m_k is odd in this grading, the differential
is delta(phi) = [m, phi], and the whole identity suite (delta^2 = 0, b^2 = 0,
B^2 = 0, adjunctions, Jacobi, homotopy commutativity of the cup, the brace
pre-Jacobi relation) holds exactly; the test suite is the convention's pin.

The cup product is the exception: it is returned in the classical
normalization, where weight-zero cochains multiply by m_2 on the nose and the
unit cochain is a strict two-sided unit.  Chains are tensors in
A (x) Abar^(x)n; the "strict" variant that quotients slot zero to Abar lives
in `homology`.
"""

from fractions import Fraction

from .algebra import AInftyAlgebra


class HochschildError(ValueError):
    pass


def _vec_add(acc, vec, coef):
    for o, c in vec.items():
        v = coef * c
        nv = acc.get(o, 0) + v
        if nv:
            acc[o] = nv
        else:
            acc.pop(o, None)


class Cochain:
    """Weight-graded reduced Hochschild cochain, stored in suspended form.

    weights: {n: {input tuple over Abar indices: {output index: scalar}}}
    """

    def __init__(self, A, parity, weights=None, check=True):
        self.A = A
        self.parity = parity % 2 if parity is not None else None
        self.weights = {}
        for n, table in (weights or {}).items():
            clean = {}
            for tup, vec in table.items():
                v = {o: c for o, c in vec.items() if c}
                if v:
                    clean[tuple(tup)] = v
            if clean:
                self.weights[n] = clean
        if check:
            self._check()

    def _check(self):
        A = self.A
        for n, table in self.weights.items():
            for tup, vec in table.items():
                if len(tup) != n:
                    raise HochschildError("tuple %r in weight %d" % (tup, n))
                for i in tup:
                    if i == A.unit:
                        raise HochschildError("reduced cochain with a unit slot")
                psum = sum(A.p_shift(i) for i in tup) % 2
                for o in vec:
                    if self.parity is None:
                        self.parity = (A.p_shift(o) + psum) % 2
                    elif (A.p_shift(o) + psum) % 2 != self.parity:
                        raise HochschildError(
                            "entry %r -> %s breaks parity %d" %
                            (tup, A.basis.names[o], self.parity))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, A, parity=None):
        return cls(A, parity if parity is not None else 0, {})

    @classmethod
    def from_classical(cls, A, weights, parity=None):
        """Build from a table in the classical (unsuspended) convention."""
        conv = {}
        for n, table in weights.items():
            conv[n] = {}
            for tup, vec in table.items():
                tup = tuple(tup)
                sgn = sum((n - j - 1) * A.p_shift(tup[j]) for j in range(n)) % 2
                conv[n][tup] = {o: (-c if sgn else c) for o, c in vec.items()}
        return cls(A, parity, conv)

    def classical_value(self, tup):
        """Value on a basis tuple in the classical convention."""
        n = len(tup)
        vec = self.value(tup)
        sgn = sum((n - j - 1) * self.A.p_shift(tup[j]) for j in range(n)) % 2
        return {o: (-c if sgn else c) for o, c in vec.items()} if sgn else dict(vec)

    # -- access ------------------------------------------------------------

    def value(self, tup):
        return dict(self.weights.get(len(tup), {}).get(tuple(tup), {}))

    def support_weights(self):
        return sorted(self.weights)

    def is_zero(self):
        return not self.weights

    def component(self, n):
        return Cochain(self.A, self.parity, {n: self.weights.get(n, {})}, check=False)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        if other.A is not self.A:
            raise HochschildError("algebra mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.parity != other.parity:
            raise HochschildError("adding cochains of different parity")
        out = {}
        for src in (self.weights, other.weights):
            for n, table in src.items():
                tgt = out.setdefault(n, {})
                for tup, vec in table.items():
                    acc = tgt.setdefault(tup, {})
                    _vec_add(acc, vec, 1)
        return Cochain(self.A, self.parity, out, check=False)._prune()

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        if not scalar:
            return Cochain.zero(self.A, self.parity)
        out = {n: {tup: {o: scalar * c for o, c in vec.items()}
                   for tup, vec in table.items()}
               for n, table in self.weights.items()}
        return Cochain(self.A, self.parity, out, check=False)

    def _prune(self):
        self.weights = {
            n: {tup: vec for tup, vec in table.items() if vec}
            for n, table in self.weights.items()
        }
        self.weights = {n: t for n, t in self.weights.items() if t}
        return self

    def __eq__(self, other):
        if not isinstance(other, Cochain) or other.A is not self.A:
            return NotImplemented
        try:
            return (self - other).is_zero()
        except HochschildError:
            return False

    def __hash__(self):
        raise TypeError("cochains are not hashable")

    def to_jsonable(self):
        from .exactla import scalar_to_str
        names = self.A.basis.names
        out = {"parity": self.parity, "weights": {}}
        for n in sorted(self.weights):
            rows = []
            for tup in sorted(self.weights[n]):
                for o in sorted(self.weights[n][tup]):
                    rows.append([[names[i] for i in tup], names[o],
                                 scalar_to_str(self.weights[n][tup][o])])
            out["weights"][str(n)] = rows
        return out

    def __repr__(self):
        return "Cochain(%s, parity %s, weights %s)" % (
            self.A.name, self.parity, self.support_weights())


class StructureCochain(Cochain):
    """The structure cochain m viewed as a cochain, with its unit extension.

    As a reduced cochain it is b_k restricted to Abar-tuples; brace insertion
    into it and the cyclicity test additionally use the full unit-accepting
    tensors, which is what makes `is_cyclic` on m the algebra-level condition.
    """

    def __init__(self, A):
        weights = {}
        for k, table in A.bk.items():
            w = {}
            for tup, vec in table.items():
                if A.unit not in tup:
                    w[tup] = dict(vec)
            if w:
                weights[k] = w
        super().__init__(A, 1, weights)


def structure_cochain(A):
    return StructureCochain(A)


def unit_cochain(A):
    return element_cochain(A, {A.unit: A.field.one})


def element_cochain(A, vec):
    """Weight-zero cochain with the given value in A."""
    vec = {o: c for o, c in vec.items() if c}
    if not vec:
        return Cochain.zero(A)
    return Cochain(A, None, {0: {(): vec}})


# -- braces -------------------------------------------------------------------


def _insertion_terms(A, n, ytup, out_vec, base_coef, args):
    """Common engine for brace-style insertion sums.

    Yields (input_tuple, out_vec, coefficient) for one receiving component
    with input slots `ytup` (length n).  `args` is the list of inserted
    cochains; slots are chosen order-preserving.  The receiving slots live on
    Abar, so the inserted value is projected by simply reading its Abar
    coordinate out of the sparse entry table.

    Sign: each inserted psi_j contributes (-1)^{parity(psi_j) * P_j} where
    P_j is the total shifted parity of every original input standing to the
    left of psi_j's block.
    """
    k = len(args)
    if k > n:
        return
    from itertools import combinations
    arg_systems = []
    for psi in args:
        comps = []
        for w, table in psi.weights.items():
            for btup, bvec in table.items():
                comps.append((w, btup, bvec))
        arg_systems.append(comps)

    for slots in combinations(range(n), k):
        slot_set = set(slots)

        def rec(j, chosen):
            if j == k:
                yield chosen
                return
            for comp in arg_systems[j]:
                yield from rec(j + 1, chosen + [comp])

        for choice in rec(0, []):
            coef = base_coef
            input_tuple = []
            sign = 0
            ok = True
            for t in range(n):
                if t in slot_set:
                    j = slots.index(t)
                    w, btup, bvec = choice[j]
                    pj = args[j].parity or 0
                    if pj:
                        sign = (sign + sum(A.p_shift(i) for i in input_tuple)) % 2
                    c = bvec.get(ytup[t])
                    if not c:
                        ok = False
                        break
                    coef = coef * c
                    input_tuple.extend(btup)
                else:
                    input_tuple.append(ytup[t])
            if not ok:
                continue
            yield tuple(input_tuple), out_vec, (-coef if sign else coef)


def brace(A, phi, args):
    """phi{psi_1, ..., psi_k}: the suspended brace (insertion sum).

    Empty `args` returns phi itself.  All cochains must live over A.  Inner
    outputs are fed to phi's reduced slots, so their unit components drop;
    when phi is the structure cochain its slots are unit-extended instead
    (that extension is what makes [m, m]_G = 0 the A-infinity relations).
    """
    for psi in list(args) + [phi]:
        if psi.A is not A:
            raise HochschildError("algebra mismatch in brace")
    if not args:
        return phi
    if isinstance(phi, StructureCochain):
        return structure_brace(A, args)
    k = len(args)
    par = (phi.parity or 0) + sum((psi.parity or 0) for psi in args)
    out_weights = {}
    for n, table in phi.weights.items():
        if k > n:
            continue
        for ytup, yvec in table.items():
            for itup, ovec, coef in _insertion_terms(A, n, ytup, yvec, A.field.one, args):
                N = len(itup)
                tgt = out_weights.setdefault(N, {}).setdefault(itup, {})
                _vec_add(tgt, ovec, coef)
    result = Cochain(A, par % 2, out_weights, check=False)._prune()
    return result


def structure_brace(A, args, arities=None):
    """m{psi_1, ..., psi_k}: insertion into the full structure operations.

    The receiving slots accept all of A (strict unitality extends them), so
    unit components of the inserted values act through b_2.  `arities`
    optionally restricts which b_k receive insertions.
    """
    for psi in args:
        if psi.A is not A:
            raise HochschildError("algebra mismatch in structure brace")
    k = len(args)
    par = 1 + sum((psi.parity or 0) for psi in args)
    arg_comps = []
    for psi in args:
        comps = []
        for w, table in psi.weights.items():
            for btup, bvec in table.items():
                comps.append((w, btup, bvec))
        arg_comps.append(comps)
    from itertools import combinations
    out_weights = {}
    for karity in sorted(A.bk):
        if k > karity or (arities is not None and karity not in arities):
            continue
        for slots in combinations(range(karity), k):
            slot_set = set(slots)

            def rec(j, chosen):
                if j == k:
                    yield chosen
                    return
                for comp in arg_comps[j]:
                    yield from rec(j + 1, chosen + [comp])

            for choice in rec(0, []):
                # free slots run over Abar basis elements
                free = [t for t in range(karity) if t not in slot_set]

                def fill(fpos, assign):
                    if fpos == len(free):
                        yield dict(assign)
                        return
                    for i in A.abar:
                        assign[free[fpos]] = i
                        yield from fill(fpos + 1, assign)
                    assign.pop(free[fpos], None)

                for assign in fill(0, {}):
                    vecs = []
                    input_tuple = []
                    sign = 0
                    coef = A.field.one
                    for t in range(karity):
                        if t in slot_set:
                            j = slots.index(t)
                            w, btup, bvec = choice[j]
                            pj = args[j].parity or 0
                            if pj:
                                sign = (sign + sum(A.p_shift(i) for i in input_tuple)) % 2
                            vecs.append(bvec)
                            input_tuple.extend(btup)
                        else:
                            vecs.append({assign[t]: A.field.one})
                            input_tuple.append(assign[t])
                    val = A.b_eval(vecs)
                    if not val:
                        continue
                    N = len(input_tuple)
                    tgt = out_weights.setdefault(N, {}).setdefault(tuple(input_tuple), {})
                    _vec_add(tgt, val, -coef if sign else coef)
    return Cochain(A, par % 2, out_weights, check=False)._prune()


def cup(A, phi, psi):
    """Cup product, classical normalization.

    On an associative algebra this is
        (phi u psi)(x_1..x_{p+q})
            = (-1)^{map(psi)(|x_1|+...+|x_p|)} m_2(phi(x..), psi(x..)),
    which has the unit cochain as a strict two-sided unit and multiplies
    weight-zero cochains by m_2 on the nose.  For K_max > 2 the higher
    structure maps contribute through the suspended brace m{phi, psi}; that
    part keeps the suspended normalization (documented deviation, the corpus
    is associative).
    """
    if phi.A is not A or psi.A is not A:
        raise HochschildError("algebra mismatch in cup")
    out = {}
    for p, ptable in phi.weights.items():
        for ptup, pvec in ptable.items():
            pcl = phi.classical_value(ptup)
            for q, qtable in psi.weights.items():
                map_psi = ((psi.parity or 0) + q + 1) % 2
                for qtup, qvec in qtable.items():
                    qcl = psi.classical_value(qtup)
                    sgn = (map_psi * sum(A.parity(i) for i in ptup)) % 2
                    val = _m2_classical(A, pcl, qcl)
                    if not val:
                        continue
                    tup = ptup + qtup
                    n = p + q
                    conv = sum((n - j - 1) * A.p_shift(tup[j]) for j in range(n)) % 2
                    tgt = out.setdefault(n, {}).setdefault(tup, {})
                    _vec_add(tgt, val, A.field.one if (sgn + conv) % 2 == 0 else -A.field.one)
    par = ((phi.parity or 0) + (psi.parity or 0) + 1) % 2
    result = Cochain(A, par, out, check=False)._prune()
    if any(k > 2 for k in A.bk):
        higher = _higher_cup_terms(A, phi, psi)
        if not higher.is_zero():
            result = result + higher
    return result


def _m2_classical(A, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            val = A.m_value((i, j))
            if val:
                _vec_add(out, val, a * b)
    return out


def _higher_cup_terms(A, phi, psi):
    """m_k contributions (k >= 3) to the A-infinity cup, suspended signs."""
    higher = [k for k in A.bk if k >= 3]
    if not higher:
        return Cochain.zero(A)
    return structure_brace(A, [phi, psi], arities=higher)


def gerstenhaber(A, phi, psi):
    """[phi, psi]_G = phi{psi} - (-1)^{parity(phi) parity(psi)} psi{phi}."""
    left = brace(A, phi, [psi])
    right = brace(A, psi, [phi])
    sgn = (phi.parity or 0) * (psi.parity or 0) % 2
    return left - right if not sgn else left + right


def hoch_diff(A, phi):
    """delta(phi) = [m, phi]_G = m{phi} - (-1)^{parity(phi)} phi{m}."""
    if phi.is_zero():
        return Cochain.zero(A, ((phi.parity or 0) + 1) % 2)
    mphi = structure_brace(A, [phi])
    phim = brace(A, phi, [structure_cochain(A)])
    return mphi - phim if (phi.parity or 0) % 2 == 0 else mphi + phim


# -- chains -------------------------------------------------------------------


class Chain:
    """Element of the normalized chain complex: slot 0 in A, others in Abar.

    weights: {n: {tuple of n+1 indices: scalar}}; the parity of an entry is
    the sum of the shifted parities of all slots.
    """

    def __init__(self, A, parity, weights=None, check=True):
        self.A = A
        self.parity = parity % 2 if parity is not None else None
        self.weights = {}
        for n, table in (weights or {}).items():
            clean = {tuple(t): c for t, c in table.items() if c}
            if clean:
                self.weights[n] = clean
        if check:
            self._check()

    def _check(self):
        A = self.A
        for n, table in self.weights.items():
            for tup in table:
                if len(tup) != n + 1:
                    raise HochschildError("chain tuple %r at weight %d" % (tup, n))
                for i in tup[1:]:
                    if i == A.unit:
                        raise HochschildError("normalized chain with unit in a positive slot")
                par = sum(A.p_shift(i) for i in tup) % 2
                if self.parity is None:
                    self.parity = par
                elif par != self.parity:
                    raise HochschildError("chain entry %r breaks parity" % (tup,))

    @classmethod
    def zero(cls, A, parity=None):
        return cls(A, parity if parity is not None else 0, {})

    @classmethod
    def from_terms(cls, A, terms):
        """terms: iterable of (tuple_of_indices, scalar); weight inferred."""
        weights = {}
        for tup, c in terms:
            weights.setdefault(len(tup) - 1, {})
            prev = weights[len(tup) - 1].get(tuple(tup), 0)
            nv = prev + c
            if nv:
                weights[len(tup) - 1][tuple(tup)] = nv
            else:
                weights[len(tup) - 1].pop(tuple(tup), None)
        return cls(A, None, weights)

    def is_zero(self):
        return all(not t for t in self.weights.values())

    def __add__(self, other):
        if other.A is not self.A:
            raise HochschildError("algebra mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.parity != other.parity:
            raise HochschildError("adding chains of different parity")
        out = {}
        for src in (self.weights, other.weights):
            for n, table in src.items():
                tgt = out.setdefault(n, {})
                for tup, c in table.items():
                    nv = tgt.get(tup, 0) + c
                    if nv:
                        tgt[tup] = nv
                    else:
                        tgt.pop(tup, None)
        return Chain(self.A, self.parity, out, check=False)

    def __rmul__(self, scalar):
        if not scalar:
            return Chain.zero(self.A, self.parity)
        return Chain(self.A, self.parity,
                     {n: {t: scalar * c for t, c in tab.items()}
                      for n, tab in self.weights.items()}, check=False)

    def __sub__(self, other):
        return self + (-1) * other

    def __eq__(self, other):
        if not isinstance(other, Chain) or other.A is not self.A:
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return "Chain(%s, parity %s, weights %s)" % (
            self.A.name, self.parity, sorted(self.weights))


def hoch_boundary(A, chain, strict=False):
    """The Hochschild boundary b on normalized chains.

    Built from the same suspended operations and Koszul rule as delta: a
    block of k cyclically consecutive slots is contracted by b_k.  Blocks not
    touching slot 0 come with the parity of the slots they jump over; blocks
    wrapping through slot 0 come with the Koszul sign of the cyclic rotation
    that brings them to the front.  With strict=True the slot-0 output is
    reduced to Abar (quotient by the ground field subcomplex).
    """
    if chain.A is not A:
        raise HochschildError("algebra mismatch")
    out_terms = {}

    def add(tup, coef):
        if not coef:
            return
        n = len(tup) - 1
        tgt = out_terms.setdefault(n, {})
        nv = tgt.get(tup, 0) + coef
        if nv:
            tgt[tup] = nv
        else:
            tgt.pop(tup, None)

    for n, table in chain.weights.items():
        for tup, coef in table.items():
            ps = [A.p_shift(i) for i in tup]
            for k in sorted(A.bk):
                if k > n + 1:
                    continue
                # inner blocks: slots i..i+k-1 with i >= 1
                for i in range(1, n - k + 2):
                    val = A.b_value(tup[i:i + k])
                    if not val:
                        continue
                    sgn = sum(ps[:i]) % 2
                    for o, c in val.items():
                        if o == A.unit:
                            continue    # positive slots live in Abar
                        new = tup[:i] + (o,) + tup[i + k:]
                        add(new, (-coef if sgn else coef) * c)
                # wrapping blocks: j slots from the tail, k - j from the head
                for j in range(0, k):
                    head = k - j            # includes slot 0
                    if j > n or head - 1 > n - j:
                        continue
                    block = tup[n + 1 - j:] + tup[:head]
                    rest = tup[head:n + 1 - j]
                    val = A.b_value(block)
                    if not val:
                        continue
                    sgn = (sum(ps[n + 1 - j:]) * sum(ps[:n + 1 - j])) % 2
                    for o, c in val.items():
                        # the quotient by the ground-field subcomplex only
                        # touches weight zero: kill unit outputs there
                        if strict and o == A.unit and not rest:
                            continue
                        new = (o,) + rest
                        add(new, (-coef if sgn else coef) * c)
    par = None if chain.parity is None else (chain.parity + 1) % 2
    return Chain(A, par, out_terms, check=False)


def connes_B(A, chain):
    """Normalized Connes operator.

    B(x_0 (x) ... (x) x_n) = sum_i (-1)^{(p(x_0)+..+p(x_{i-1}))(p(x_i)+..+p(x_n))}
                              1 (x) x_i (x) ... (x) x_n (x) x_0 (x) ... (x) x_{i-1},
    with the old slot-0 entry reduced to Abar when it lands in a positive
    slot (terms with unit x_0 die, so B(1 (x) ...) = 0 and B.B = 0).
    """
    if chain.A is not A:
        raise HochschildError("algebra mismatch")
    out_terms = {}
    for n, table in chain.weights.items():
        for tup, coef in table.items():
            if tup[0] == A.unit:
                continue
            ps = [A.p_shift(i) for i in tup]
            total = sum(ps) % 2
            for i in range(n + 1):
                front = sum(ps[:i]) % 2
                sgn = (front * ((total - front) % 2)) % 2
                new = (A.unit,) + tup[i:] + tup[:i]
                tgt = out_terms.setdefault(n + 1, {})
                c = -coef if sgn else coef
                nv = tgt.get(new, 0) + c
                if nv:
                    tgt[new] = nv
                else:
                    tgt.pop(new, None)
    par = None if chain.parity is None else (chain.parity + 1) % 2
    return Chain(A, par, out_terms, check=False)


def chain_cochain_pairing(A, phi, chain):
    """<phi, x_0 (x) x_1 (x) ... (x) x_n> = <phi(x_1..x_n), x_0>, bilinear.

    Weight mismatches contribute zero; nondegenerate weight by weight for a
    nondegenerate algebra pairing.
    """
    if phi.A is not A or chain.A is not A:
        raise HochschildError("algebra mismatch")
    s = A.field.zero
    for n, table in chain.weights.items():
        ptable = phi.weights.get(n)
        if not ptable:
            continue
        for tup, coef in table.items():
            vec = ptable.get(tup[1:])
            if vec:
                s = s + coef * A.pair(vec, {tup[0]: A.field.one})
    return s


def delta(A, phi):
    """Pairing dual of the Connes operator: <delta(phi), c> = <phi, B c>.

    Computed weight by weight through the inverse Gram matrix of the algebra
    pairing; lowers weight by one, kills weight zero, and squares to zero
    because B does.
    """
    if phi.A is not A:
        raise HochschildError("algebra mismatch")
    inv = A.pairing_inverse()
    out = {}
    for n in phi.support_weights():
        if n == 0:
            continue
        m = n - 1
        seen = set()
        for tup in phi.weights[n]:
            # <delta(phi)(j), x0> pairs phi against rotations of (x0, j), so
            # the candidate output tuples are rotations of phi's entry tuples
            # with the leading slot removed.
            for i in range(n):
                rot = tup[i:] + tup[:i]
                seen.add(rot[1:])
        for jtup in sorted(seen):
            gvals = []
            for x0 in range(A.dim):
                if x0 == A.unit:
                    gvals.append(A.field.zero)
                    continue
                c = Chain(A, None, {m: {(x0,) + jtup: A.field.one}}, check=False)
                gvals.append(chain_cochain_pairing(A, phi, connes_B(A, c)))
            # c with unit slot 0: B(1 (x) ...) = 0, so g(unit) = 0 as set above
            vec = {}
            for l in range(A.dim):
                v = A.field.zero
                for i in range(A.dim):
                    if gvals[i]:
                        v = v + inv[i][l] * gvals[i]
                if v:
                    vec[l] = v
            if vec:
                tgt = out.setdefault(m, {})
                tgt[jtup] = vec
    par = None if phi.parity is None else (phi.parity + 1) % 2
    return Cochain(A, par, out, check=False)._prune()


# -- cyclic cochains ----------------------------------------------------------


def rotate(A, phi):
    """The signed cyclic rotation t on reduced cochains.

    <(t phi)(x_1..x_n), x_0> =
        (-1)^{p(x_n)(p(x_0)+...+p(x_{n-1}))} <phi(x_0..x_{n-1}), x_n>
    for x_0 in the full basis, with phi(unit, ...) = 0.  Weight-zero cochains
    are fixed.  t^{n+1} = id on weight n, and the fixed points form the
    cyclic subcomplex C^lambda.
    """
    if phi.A is not A:
        raise HochschildError("algebra mismatch")
    inv = A.pairing_inverse()
    out = {}
    for n, table in phi.weights.items():
        if n == 0:
            out[0] = {tup: dict(vec) for tup, vec in table.items()}
            continue
        cands = set()
        for tup in table:
            # (t phi)(x1..xn) involves phi(x0, x1..x_{n-1}); entries of phi at
            # (y1..yn) feed outputs (y2..yn, anything)
            for xn in A.abar:
                cands.add(tup[1:] + (xn,))
        for xtup in sorted(cands):
            xn = xtup[-1]
            gvals = [A.field.zero] * A.dim
            for x0 in range(A.dim):
                if x0 == A.unit:
                    continue
                vec = table.get((x0,) + xtup[:-1])
                if not vec:
                    continue
                sgn = (A.p_shift(xn) *
                       (A.p_shift(x0) + sum(A.p_shift(i) for i in xtup[:-1]))) % 2
                val = A.pair(vec, {xn: A.field.one})
                gvals[x0] = -val if sgn else val
            if not any(gvals):
                continue
            vec = {}
            for l in range(A.dim):
                v = A.field.zero
                for i in range(A.dim):
                    if gvals[i]:
                        v = v + inv[i][l] * gvals[i]
                if v:
                    vec[l] = v
            if vec:
                out.setdefault(n, {})[xtup] = vec
    return Cochain(A, phi.parity, out, check=False)._prune()


def is_cyclic(A, phi):
    """Whether phi lies in C^lambda (or, for the structure cochain, whether
    the algebra's operations are cyclic for the pairing).

    For a reduced cochain this tests invariance under `rotate`, which
    includes the unit-slot condition <phi(x_1..x_n), 1> = 0; for the
    structure cochain the unit slots are filled by the algebra's own tensors
    and the test is the cyclicity of each m_k.
    """
    if isinstance(phi, StructureCochain):
        from .algebra import validate
        rep = validate(A, arity_bound=0)
        return all(c.passed for c in rep.checks if c.name.startswith("cyclic_m_"))
    return (rotate(A, phi) - phi).is_zero()


def cyclic_project(A, phi):
    """Average (1/(n+1)) sum_{i=1}^{n+1} t^i: the projection onto C^lambda.

    The rotation t is not invertible on the whole complex (it kills the
    pairing against the unit), but its image V_0 = {<phi(..), 1> = 0} is
    t-stable with t^{n+1} = id there, so averaging the orbit of t(phi) gives
    an idempotent projector with image exactly the cyclic cochains.  Refused
    over prime fields whose characteristic divides some n + 1 in the support.
    """
    from .exactla import PrimeField
    out = Cochain.zero(A, phi.parity)
    for n in phi.support_weights():
        comp = phi.component(n)
        if isinstance(A.field, PrimeField) and (n + 1) % A.field.p == 0:
            raise HochschildError(
                "cyclic projection needs 1/%d, unavailable in F_%d" % (n + 1, A.field.p))
        cur = rotate(A, comp)
        acc = cur
        for _ in range(n):
            cur = rotate(A, cur)
            acc = acc + cur
        scale = Fraction(1, n + 1) if not isinstance(A.field, PrimeField) \
            else A.field.one / A.field.scalar(n + 1)
        out = out + scale * acc
    return out
