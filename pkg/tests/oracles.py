"""Brute-force oracles for the tests.

Only Fraction arithmetic and plain dicts here; nothing from the package
beyond reading polynomial terms.
"""
from fractions import Fraction
from itertools import product


def as_dict(p):
    """Poly -> {exponent tuple: Fraction} (prime-field coefficients as ints)."""
    out = {}
    for m, c in p.terms_dict.items():
        if hasattr(c, "numerator") and hasattr(c, "denominator"):
            out[m] = Fraction(int(c.numerator), int(c.denominator))
        else:
            out[m] = Fraction(int(c.v) if hasattr(c, "v") else int(c))
    return out


def monomials(n, d, homogeneous=False):
    out = []
    for e in product(range(d + 1), repeat=n):
        s = sum(e)
        if (s == d) if homogeneous else (s <= d):
            out.append(e)
    return sorted(out)


def mul(a, b, mod=None):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return _clean(out, mod)


def add(a, b, s=1, mod=None):
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + s * c
    return _clean(out, mod)


def _clean(d, mod):
    if mod:
        d = {m: Fraction(int(c) % mod) for m, c in d.items()}
    return {m: c for m, c in d.items() if c}


def power(a, k, n, mod=None):
    out = {(0,) * n: Fraction(1)}
    for _ in range(k):
        out = mul(out, a, mod)
    return out


class Echelon:
    """Incremental row reduction over Q (or Z/p when ``mod`` is set)."""

    def __init__(self, mod=None):
        self.rows = {}
        self.mod = mod

    def _inv(self, c):
        if self.mod:
            return Fraction(pow(int(c), -1, self.mod))
        return 1 / c

    def reduce(self, v):
        v = _clean(dict(v), self.mod)
        while True:
            piv = [k for k in v if k in self.rows]
            if not piv:
                return v
            k = max(piv)
            c = v[k]
            for kk, x in self.rows[k].items():
                v[kk] = v.get(kk, 0) - c * x
            v = _clean(v, self.mod)

    def add(self, v):
        v = self.reduce(v)
        if not v:
            return False
        k = max(v)
        inv = self._inv(v[k])
        self.rows[k] = _clean({kk: x * inv for kk, x in v.items()}, self.mod)
        return True

    def contains(self, v):
        return not self.reduce(v)

    @property
    def rank(self):
        return len(self.rows)


def nullspace(vectors, mod=None):
    """Basis (list of coefficient lists) of {lam : sum lam_i v_i = 0}."""
    n = len(vectors)
    # eliminate on [v_i | e_i]; rows whose v-part vanishes are kernel vectors
    rows = []
    for i, v in enumerate(vectors):
        row = {("v", k): c for k, c in v.items()}
        row[("id", i)] = Fraction(1)
        rows.append(row)
    ech = Echelon(mod)
    out = []
    for row in rows:
        r = ech.reduce(row)
        if all(k[0] == "id" for k in r):
            out.append([r.get(("id", i), Fraction(0)) for i in range(n)])
        else:
            # pivot must be a "v" key so identity parts stay free
            k = max(kk for kk in r if kk[0] == "v")
            inv = ech._inv(r[k])
            ech.rows[k] = _clean({kk: x * inv for kk, x in r.items()}, mod)
    return out


def in_ideal_bruteforce(p, gens, n, degree, mod=None):
    """p in the ideal, decided inside the span of m*g with deg(m*g) <= degree."""
    ech = Echelon(mod)
    for g in gens:
        dg = max(sum(m) for m in g)
        for m in monomials(n, degree - dg):
            ech.add(mul({m: Fraction(1)}, g, mod))
    return ech.contains(p)


def algebra_span(gens, n, degree, mod=None):
    """Echelon of all products of generators of total degree <= degree."""
    ech = Echelon(mod)
    ech.add({(0,) * n: Fraction(1)})
    degs = [max(sum(m) for m in g) for g in gens]
    frontier = [((0,) * len(gens), {(0,) * n: Fraction(1)}, 0)]
    seen = {frontier[0][0]}
    while frontier:
        nxt = []
        for e, val, d in frontier:
            for i, g in enumerate(gens):
                if d + degs[i] > degree:
                    continue
                e2 = tuple(x + (j == i) for j, x in enumerate(e))
                if e2 in seen:
                    continue
                seen.add(e2)
                v2 = mul(val, g, mod)
                ech.add(v2)
                nxt.append((e2, v2, d + degs[i]))
        frontier = nxt
    return ech


def derivation_kernel(D, n, degree):
    """Basis of the polynomials of degree <= degree killed by the derivation D.

    D maps a variable index to the dict of D(x_i).
    """
    mons = monomials(n, degree)
    images = []
    for m in mons:
        img = {}
        for i, e in enumerate(m):
            if not e or i not in D:
                continue
            rest = tuple(x - (j == i) for j, x in enumerate(m))
            term = mul({rest: Fraction(e)}, D[i])
            img = add(img, term)
        images.append(img)
    basis = []
    for lam in nullspace(images):
        poly = {m: c for m, c in zip(mons, lam) if c}
        if poly:
            basis.append(poly)
    return basis


def derivation_from_action(images, n, param_index):
    """t-linear part of an action: x_i -> coefficient of t in mu(x_i).

    ``images`` are dicts over exponent tuples of length n + #params.
    """
    D = {}
    for i, img in images.items():
        lin = {}
        for m, c in img.items():
            tpart = m[n:]
            if sum(tpart) == 1 and tpart[param_index] == 1:
                lin[m[:n]] = lin.get(m[:n], 0) + c
        lin = {m: c for m, c in lin.items() if c}
        if lin:
            D[i] = lin
    return D
