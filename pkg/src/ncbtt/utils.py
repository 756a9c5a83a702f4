"""Seeded random element generators shared by tests and the CLI checks."""

from fractions import Fraction

from .hochschild import Chain, Cochain

DEFAULT_SEED = 20240801


def random_cochain(A, rng, max_weight, parity=None, terms=4, span=3,
                   min_weight=0):
    """Parity-homogeneous random reduced cochain with small support."""
    if parity is None:
        parity = rng.randint(0, 1)
    weights = {}
    made = 0
    attempts = 0
    while made < terms and attempts < 60 * terms:
        attempts += 1
        n = rng.randint(min_weight, max_weight)
        if n > 0 and not A.abar:
            continue
        tup = tuple(rng.choice(A.abar) for _ in range(n))
        psum = sum(A.p_shift(i) for i in tup) % 2
        want = (parity + psum) % 2
        outs = [o for o in range(A.dim) if A.p_shift(o) == want]
        if not outs:
            continue
        o = rng.choice(outs)
        c = Fraction(rng.randint(-span, span))
        if not c:
            continue
        c = A.field.scalar(c)
        vec = weights.setdefault(n, {}).setdefault(tup, {})
        vec[o] = vec.get(o, A.field.zero) + c
        made += 1
    cleaned = {}
    for n, table in weights.items():
        t = {tup: {o: c for o, c in vec.items() if c} for tup, vec in table.items()}
        t = {tup: vec for tup, vec in t.items() if vec}
        if t:
            cleaned[n] = t
    if not cleaned:
        return Cochain.zero(A, parity)
    return Cochain(A, parity, cleaned)


def random_chain(A, rng, max_weight, parity=None, terms=4, span=3):
    """Parity-homogeneous random normalized chain (slot 0 in full A)."""
    if parity is None:
        parity = rng.randint(0, 1)
    weights = {}
    made = 0
    attempts = 0
    while made < terms and attempts < 60 * terms:
        attempts += 1
        n = rng.randint(0, max_weight)
        if n > 0 and not A.abar:
            continue
        rest = tuple(rng.choice(A.abar) for _ in range(n))
        psum = sum(A.p_shift(i) for i in rest) % 2
        want = (parity + psum) % 2
        outs = [o for o in range(A.dim) if A.p_shift(o) == want]
        if not outs:
            continue
        x0 = rng.choice(outs)
        c = A.field.scalar(Fraction(rng.randint(-span, span)))
        if not c:
            continue
        tup = (x0,) + rest
        tab = weights.setdefault(n, {})
        nv = tab.get(tup, A.field.zero) + c
        if nv:
            tab[tup] = nv
        else:
            tab.pop(tup, None)
        made += 1
    weights = {n: t for n, t in weights.items() if t}
    if not weights:
        return Chain.zero(A, parity)
    return Chain(A, parity, weights)


def random_cyclic_cochain(A, rng, max_weight, parity=None, terms=4):
    """Random element of C^lambda, by projecting a random cochain."""
    from .hochschild import cyclic_project
    return cyclic_project(A, random_cochain(A, rng, max_weight, parity, terms))
