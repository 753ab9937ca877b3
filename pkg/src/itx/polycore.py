"""Exact sparse multivariate polynomials.

Coefficient fields are the rationals (backed by ``gmpy2.mpq``), prime fields
and fraction fields of presented domains.  A polynomial is a dict mapping
exponent tuples to nonzero coefficients; the ring carries the monomial order
used for leading terms and printing.
"""
from __future__ import annotations

import re
from itertools import combinations_with_replacement

import gmpy2

__all__ = [
    "QQ", "RationalField", "PrimeField", "FracField", "Frac",
    "MonomialOrder", "ModuleOrder", "lex", "grevlex", "block", "weighted",
    "PolyRing", "Poly", "Vector", "ParseError", "RingMismatch",
]


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0, line=None):
        self.msg = msg
        self.text = text
        self.pos = pos
        self.line = line
        if pos is None:
            super().__init__(msg)
            return
        where = f"line {line}, column {pos + 1}" if line is not None else f"column {pos + 1}"
        super().__init__(f"{msg} at {where}")


# ---------------------------------------------------------------------------
# coefficient fields

class RationalField:
    characteristic = 0
    name = "rational"

    def __call__(self, x):
        return gmpy2.mpq(x)

    @property
    def zero(self):
        return gmpy2.mpq(0)

    @property
    def one(self):
        return gmpy2.mpq(1)

    def inv(self, a):
        return 1 / a

    def from_fraction(self, num, den):
        return gmpy2.mpq(num, den)

    def format(self, a):
        return str(a)

    def is_unit_scalar(self, a):
        return True

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class _Mod:
    __slots__ = ("v",)
    p = 2

    def __init__(self, v):
        self.v = int(v) % self.p

    def _c(self, o):
        if isinstance(o, _Mod):
            return o.v
        return int(o) % self.p

    def __add__(self, o):
        return type(self)(self.v + self._c(o))

    __radd__ = __add__

    def __sub__(self, o):
        return type(self)(self.v - self._c(o))

    def __rsub__(self, o):
        return type(self)(self._c(o) - self.v)

    def __mul__(self, o):
        return type(self)(self.v * self._c(o))

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.v)

    def __truediv__(self, o):
        return self * pow(self._c(o), -1, self.p)

    def __rtruediv__(self, o):
        return type(self)(self._c(o) * pow(self.v, -1, self.p))

    def __pow__(self, k):
        return type(self)(pow(self.v, k, self.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, (_Mod, int)):
            return self.v == self._c(o)
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField:
    name = "prime"

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.characteristic = p
        self._cls = type(f"GF{p}", (_Mod,), {"p": p, "__slots__": ()})

    def __call__(self, x):
        if isinstance(x, _Mod):
            return self._cls(x.v)
        if isinstance(x, int) or type(x).__name__ == "mpz":
            return self._cls(int(x))
        x = gmpy2.mpq(x)
        return self._cls(int(x.numerator)) / int(x.denominator)

    @property
    def zero(self):
        return self._cls(0)

    @property
    def one(self):
        return self._cls(1)

    def inv(self, a):
        return 1 / a

    def from_fraction(self, num, den):
        if den % self.characteristic == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {self.characteristic}")
        return self._cls(num) / den

    def format(self, a):
        return str(a.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


class Frac:
    """Element of the fraction field of K[y]/J, stored as a pair of normal forms."""

    __slots__ = ("num", "den", "field")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _lift(self, o):
        if isinstance(o, Frac):
            return o
        return self.field(o)

    def __add__(self, o):
        o = self._lift(o)
        return self.field.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return self.field.make(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return self.field.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __neg__(self):
        return Frac(self.field, -self.num, self.den)

    def __truediv__(self, o):
        return self * self.field.inv(self._lift(o))

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, o):
        if isinstance(o, (int, Frac)) or type(o).__name__ == "mpq":
            o = self._lift(o)
            return self.field.reduce(self.num * o.den - o.num * self.den).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return self.field.format(self)


class FracField:
    """Fraction field Q(R) of R = K[y]/J for a prime ideal J (primality is trusted).

    Elements are pairs of J-normal forms; zero test is the normal form of the
    numerator, equality the normal form of the cross difference.
    """

    name = "fraction"

    def __init__(self, tag_ring, kernel_gens):
        from .groebner import groebner_basis

        self.ring = tag_ring
        self.base = tag_ring.field
        self.characteristic = self.base.characteristic
        self.gb = groebner_basis([g for g in kernel_gens if not g.is_zero()], ring=tag_ring)

    def reduce(self, p):
        return self.gb.reduce(p)

    def make(self, num, den):
        num = self.reduce(num)
        if num.is_zero():
            return Frac(self, self.ring.zero, self.ring.one)
        den = self.reduce(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator lies in the defining ideal")
        lc = den.lc()
        if lc != 1:
            inv = self.base.inv(lc)
            num, den = num * inv, den * inv
        if not den.is_constant():
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, self.ring.one
        return Frac(self, num, den)

    def __call__(self, x):
        if isinstance(x, Frac):
            return x
        if isinstance(x, Poly):
            return self.make(x.to_ring(self.ring), self.ring.one)
        return self.make(self.ring.const(x), self.ring.one)

    @property
    def zero(self):
        return Frac(self, self.ring.zero, self.ring.one)

    @property
    def one(self):
        return Frac(self, self.ring.one, self.ring.one)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in fraction field")
        return self.make(a.den, a.num)

    def simplify(self, a):
        """Rewrite a as a polynomial class when num lies in (den) + J."""
        if a.den.is_constant():
            return a
        from .groebner import groebner_basis

        gens = list(self.gb.gens) + [a.den]
        gb = groebner_basis(gens, ring=self.ring, track=[len(gens) - 1])
        cof, rem = gb.cofactors(a.num)
        if not rem.is_zero():
            return a
        return Frac(self, self.reduce(cof[-1]), self.ring.one)

    def from_fraction(self, num, den):
        return self(self.base.from_fraction(num, den))

    def format(self, a):
        if a.den.is_one():
            return f"({a.num})"
        return f"({a.num})/({a.den})"

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Frac({self.ring.names})"


# ---------------------------------------------------------------------------
# monomial orders

def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _neg(k):
    if isinstance(k, tuple):
        return tuple(_neg(x) for x in k)
    return -k


class _KeyCache:
    """Memoized sort key and its negation (the latter feeds min-heaps)."""

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            k = self._raw(e)
            if len(self._cache) < 200000:
                self._cache[e] = k
        return k

    def nkey(self, e):
        k = self._ncache.get(e)
        if k is None:
            k = _neg(self.key(e))
            if len(self._ncache) < 200000:
                self._ncache[e] = k
        return k


class MonomialOrder(_KeyCache):
    """Total, multiplicative order on exponent tuples, exposed as a sort key."""

    def __init__(self, kind, nvars, blocks=None, weights=None):
        self.kind = kind
        self.nvars = nvars
        self.blocks = [tuple(b) for b in blocks] if blocks else None
        self.weights = tuple(weights) if weights else None
        self._cache = {}
        self._ncache = {}
        if kind == "lex":
            self._raw = tuple
        elif kind == "grevlex":
            self._raw = _grevlex_key
        elif kind == "block":
            covered = sorted(i for b in self.blocks for i in b)
            if covered != list(range(nvars)):
                raise ValueError("blocks must partition the variables")
            bl = self.blocks
            self._raw = lambda e: tuple(_grevlex_key(tuple(e[i] for i in b)) for b in bl)
        elif kind == "weighted":
            w = self.weights
            if len(w) != nvars or any(x <= 0 for x in w):
                raise ValueError("weights must be positive, one per variable")
            self._raw = lambda e: (sum(a * b for a, b in zip(w, e)), _grevlex_key(e))
        else:
            raise ValueError(f"unknown order {kind!r}")

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.nvars == other.nvars and self.blocks == other.blocks
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.kind, self.nvars, self.blocks, self.weights))

    def __repr__(self):
        if self.kind == "block":
            return f"block{self.blocks}"
        return self.kind


def lex(n):
    return MonomialOrder("lex", n)


def grevlex(n):
    return MonomialOrder("grevlex", n)


def block(n, *blocks):
    return MonomialOrder("block", n, blocks=blocks)


def weighted(weights):
    return MonomialOrder("weighted", len(weights), weights=weights)


class ModuleOrder(_KeyCache):
    """Extension of a ring order to free-module monomials ``(component,) + exps``.

    ``pot``: position over term, ``top``: term over position, ``xdominant``:
    every monomial involving one of ``xvars`` beats every pure-y monomial in
    any component.
    """

    def __init__(self, base, kind="pot", xvars=None):
        self.base = base
        self.kind = kind
        self.nvars = base.nvars
        self._cache = {}
        self._ncache = {}
        self.xvars = None
        if kind == "xdominant":
            xs = tuple(sorted(xvars))
            ys = tuple(i for i in range(base.nvars) if i not in set(xs))
            self.xvars = xs
            self._raw = lambda m: (_grevlex_key(tuple(m[1 + i] for i in xs)), -m[0],
                                   _grevlex_key(tuple(m[1 + i] for i in ys)))
        elif kind == "pot":
            self._raw = lambda m: (-m[0], base.key(m[1:]))
        elif kind == "top":
            self._raw = lambda m: (base.key(m[1:]), -m[0])
        else:
            raise ValueError(f"unknown module order {kind!r}")

    def __repr__(self):
        return f"{self.kind}({self.base!r})"


def _make_order(order, n):
    if isinstance(order, MonomialOrder):
        if order.nvars != n:
            raise ValueError("order arity does not match ring")
        return order
    if order in ("lex", "grevlex"):
        return MonomialOrder(order, n)
    raise ValueError(f"unknown order {order!r}")


# ---------------------------------------------------------------------------
# rings and polynomials

class PolyRing:
    def __init__(self, names, field=QQ, order="grevlex"):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.nvars = len(self.names)
        self.order = _make_order(order, self.nvars)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._zero_exp = (0,) * self.nvars

    def same_vars(self, other):
        return self.names == other.names and self.field == other.field

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.same_vars(other) and self.order == other.order

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r}; {self.order!r})"

    def with_order(self, order):
        return PolyRing(self.names, self.field, order)

    def extend(self, names, order="grevlex"):
        return PolyRing(self.names + tuple(names), self.field, order)

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def __call__(self, x):
        if isinstance(x, Poly):
            return x.to_ring(self)
        if isinstance(x, str):
            return parse_poly(x, self)
        return self.const(x)

    def parse(self, text):
        return parse_poly(text, self)

    def fresh_name(self, base):
        if base not in self.index:
            return base
        i = 1
        while f"{base}{i}" in self.index:
            i += 1
        return f"{base}{i}"

    def monomials_upto(self, degree):
        """All exponent tuples of total degree <= degree, increasing degree."""
        out = []
        for d in range(degree + 1):
            for combo in combinations_with_replacement(range(self.nvars), d):
                e = [0] * self.nvars
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
        return out


def _add_into(acc, other, sign=1):
    for m, c in other.items():
        v = acc.get(m)
        if v is None:
            acc[m] = c if sign == 1 else -c
        else:
            v = v + c if sign == 1 else v - c
            if v:
                acc[m] = v
            else:
                del acc[m]
    return acc


class Poly:
    __slots__ = ("ring", "_t")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms

    # -- construction helpers
    def _coerce(self, o):
        if isinstance(o, Poly):
            if o.ring is not self.ring and not o.ring.same_vars(self.ring):
                raise RingMismatch(f"{o.ring!r} vs {self.ring!r}")
            return o
        return self.ring.const(o)

    @property
    def terms_dict(self):
        return self._t

    def copy(self):
        return Poly(self.ring, dict(self._t))

    # -- arithmetic
    def __add__(self, o):
        o = self._coerce(o)
        return Poly(self.ring, _add_into(dict(self._t), o._t))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return Poly(self.ring, _add_into(dict(self._t), o._t, -1))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self._t.items()})

    def __mul__(self, o):
        if not isinstance(o, Poly):
            c = self.ring.field(o)
            if not c:
                return self.ring.zero
            return Poly(self.ring, {m: v * c for m, v in self._t.items()})
        o = self._coerce(o)
        if len(self._t) > len(o._t):
            a, b = self._t, o._t
        else:
            a, b = o._t, self._t
        acc = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = acc.get(m)
                if v is None:
                    acc[m] = ca * cb
                else:
                    acc[m] = v + ca * cb
        return Poly(self.ring, {m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Poly):
            q = self.divide_exact(c)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            return q
        return self * self.ring.field.inv(self.ring.field(c))

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.ring.same_vars(o.ring) and self._t == o._t
        try:
            return self._t == self.ring.const(o)._t
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self._t.items())))

    def __bool__(self):
        return bool(self._t)

    # -- inspection
    def is_zero(self):
        return not self._t

    def is_one(self):
        return len(self._t) == 1 and self._t.get(self.ring._zero_exp) == 1

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and self.ring._zero_exp in self._t)

    def constant_coeff(self):
        return self._t.get(self.ring._zero_exp, self.ring.field.zero)

    def __len__(self):
        return len(self._t)

    def lm(self, order=None):
        key = (order or self.ring.order).key
        return max(self._t, key=key)

    def lc(self, order=None):
        return self._t[self.lm(order)]

    def terms(self, order=None):
        """(coefficient, exponents) pairs in strictly decreasing order."""
        key = (order or self.ring.order).key
        return [(self._t[m], m) for m in sorted(self._t, key=key, reverse=True)]

    def monomials(self):
        return list(self._t)

    def coeff(self, exps):
        return self._t.get(tuple(exps), self.ring.field.zero)

    def total_degree(self):
        return max((sum(m) for m in self._t), default=-1)

    def degree(self, var):
        i = self.ring.index[var]
        return max((m[i] for m in self._t), default=-1)

    def variables(self):
        used = set()
        for m in self._t:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return [self.ring.names[i] for i in sorted(used)]

    def monic(self, order=None):
        if not self._t:
            return self
        return self * self.ring.field.inv(self.lc(order))

    def primitive(self):
        """Canonical scalar multiple: integer coprime coefficients, positive lead (char 0); monic otherwise."""
        if not self._t:
            return self
        if self.ring.field is not QQ:
            return self.monic()
        den = 1
        num = 0
        for c in self._t.values():
            den = gmpy2.lcm(den, c.denominator)
        for c in self._t.values():
            num = gmpy2.gcd(num, (c * den).numerator)
        scale = gmpy2.mpq(den, num)
        if self.lc() < 0:
            scale = -scale
        return self * scale

    # -- ring maps
    def to_ring(self, ring):
        """Reinterpret in a ring that has (at least) the variables occurring here."""
        if ring is self.ring:
            return self
        if ring.same_vars(self.ring):
            return Poly(ring, self._t)
        idx = []
        for i, n in enumerate(self.ring.names):
            idx.append(ring.index.get(n))
        out = {}
        conv = ring.field if ring.field != self.ring.field else None
        for m, c in self._t.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    j = idx[i]
                    if j is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} not in target ring")
                    e[j] = x
            c = conv(c) if conv else c
            if c:
                out[tuple(e)] = c
        return Poly(ring, out)

    def substitute(self, images, ring=None):
        """Ring homomorphism sending variable names to polynomials of ``ring``.

        Variables without an image map to themselves when ``ring`` contains
        them; otherwise a missing image is an error.
        """
        if ring is None:
            ring = next(iter(images.values())).ring if images else self.ring
        imgs = []
        for n in self.ring.names:
            if n in images:
                v = images[n]
                imgs.append(v if isinstance(v, Poly) else ring.const(v))
            elif n in ring.index:
                imgs.append(ring.var(n))
            else:
                imgs.append(None)
        powers = [dict() for _ in imgs]
        acc = {}
        conv = ring.field if ring.field != self.ring.field else None
        for m, c in self._t.items():
            term = ring.const(conv(c) if conv else c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if imgs[i] is None:
                    raise RingMismatch(f"no image for variable {self.ring.names[i]}")
                pw = powers[i].get(e)
                if pw is None:
                    pw = imgs[i] ** e
                    powers[i][e] = pw
                term = term * pw
                if not term:
                    break
            _add_into(acc, term._t)
        return Poly(ring, acc)

    def coefficients_wrt(self, params):
        """Split along monomials in ``params``: {param exponents: coefficient poly}.

        The coefficient polynomials live in the same ring and do not involve
        any of ``params``.
        """
        pidx = [self.ring.index[p] for p in params]
        pset = set(pidx)
        out = {}
        for m, c in self._t.items():
            k = tuple(m[i] for i in pidx)
            rest = tuple(0 if i in pset else x for i, x in enumerate(m))
            out.setdefault(k, {})[rest] = c
        return {k: Poly(self.ring, v) for k, v in sorted(out.items())}

    def coefficient_list(self, var):
        """Coefficients of increasing powers of a single variable."""
        d = self.coefficients_wrt([var])
        top = max((k[0] for k in d), default=-1)
        return [d.get((i,), self.ring.zero) for i in range(top + 1)]

    def diff(self, var):
        i = self.ring.index[var]
        out = {}
        for m, c in self._t.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    def divide_exact(self, d):
        """Quotient q with self = q*d if it exists (division by a single polynomial)."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        key = self.ring.order.key
        dl = d.lm()
        dinv = self.ring.field.inv(d._t[dl])
        rem = dict(self._t)
        q = {}
        while rem:
            m = max(rem, key=key)
            if any(a < b for a, b in zip(m, dl)):
                return None
            s = tuple(a - b for a, b in zip(m, dl))
            c = rem[m] * dinv
            q[s] = c
            for dm, dc in d._t.items():
                mm = tuple(a + b for a, b in zip(dm, s))
                v = rem.get(mm)
                v = -c * dc if v is None else v - c * dc
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Poly(self.ring, q)

    # -- printing
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _format_monomial(names, m):
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(p, order=None):
    if p.is_zero():
        return "0"
    field = p.ring.field
    out = []
    for c, m in p.terms(order):
        mono = _format_monomial(p.ring.names, m)
        if isinstance(field, FracField):
            s = field.format(c)
            piece = (mono if s == "(1)" else f"{s}*{mono}") if mono else s
            out.append((" + " if out else "") + piece)
            continue
        s = field.format(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if mono:
            piece = mono if s == "1" else f"{s}*{mono}"
        else:
            piece = s
        if out:
            out.append((" - " if neg else " + ") + piece)
        else:
            out.append(("-" if neg else "") + piece)
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'?)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring, line=None):
        self.text = text
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text) if line is None else self._tok_line(text)
        self.i = 0

    def _tok_line(self, text):
        try:
            return _tokenize(text)
        except ParseError as e:
            raise ParseError(str(e).split(" at ")[0], text, e.pos, self.line) from None

    def err(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.text, tok[2], self.line)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.err("empty polynomial")
        p = self.poly()
        if self.peek()[0] != "end":
            self.err(f"unexpected token {self.peek()[1]!r}")
        return p

    def poly(self):
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek()[:2] == ("op", "+"):
            self.take()
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            if op == "*":
                acc = acc * self.factor()
                continue
            d = self.take()
            if d[0] != "int":
                self.err("division only by an integer constant", d)
            if int(d[1]) == 0:
                self.err("zero denominator", d)
            try:
                acc = acc * self.ring.field.from_fraction(1, int(d[1]))
            except ZeroDivisionError:
                self.err("denominator not invertible in field", d)
        return acc

    def factor(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            num = int(tok[1])
            if self.peek()[:2] == ("op", "/"):
                self.take()
                d = self.take()
                if d[0] != "int":
                    self.err("expected integer denominator", d)
                den = int(d[1])
                if den == 0:
                    self.err("zero denominator", d)
                try:
                    return self.ring.const(self.ring.field.from_fraction(num, den))
                except ZeroDivisionError:
                    self.err("denominator not invertible in field", d)
            return self.ring.const(num)
        if tok[0] == "id":
            self.take()
            if tok[1] not in self.ring.index:
                self.err(f"undeclared identifier {tok[1]!r}", tok)
            base = self.ring.var(tok[1])
            return self._power(base)
        if tok[:2] == ("op", "("):
            self.take()
            inner = self.poly()
            if self.peek()[:2] != ("op", ")"):
                self.err("expected ')'")
            self.take()
            return self._power(inner)
        self.err(f"unexpected token {tok[1]!r}" if tok[0] != "end" else "unexpected end of input")

    def _power(self, base):
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = self.take()
            if e[0] != "int":
                self.err("expected nonnegative integer exponent", e)
            return base ** int(e[1])
        return base


def parse_poly(text, ring, line=None):
    """Parse ``text`` under the grammar poly := term (('+'|'-') term)* ..."""
    return _Parser(text, ring, line).parse()


# ---------------------------------------------------------------------------
# free-module elements

class Vector:
    """Element of a free module ring^rank; terms keyed by (component,) + exponents."""

    __slots__ = ("ring", "rank", "_t")

    def __init__(self, ring, rank, terms):
        self.ring = ring
        self.rank = rank
        self._t = terms

    @classmethod
    def from_components(cls, ring, comps):
        t = {}
        for k, p in enumerate(comps):
            if not isinstance(p, Poly):
                p = ring.const(p)
            for m, c in p.to_ring(ring)._t.items():
                t[(k,) + m] = c
        return cls(ring, len(comps), t)

    @classmethod
    def unit(cls, ring, rank, k, coeff=None):
        comps = [ring.zero] * rank
        comps[k] = coeff if coeff is not None else ring.one
        return cls.from_components(ring, comps)

    def components(self):
        out = [dict() for _ in range(self.rank)]
        for m, c in self._t.items():
            out[m[0]][m[1:]] = c
        return [Poly(self.ring, d) for d in out]

    def __getitem__(self, k):
        return self.components()[k]

    def _check(self, o):
        if not isinstance(o, Vector) or o.rank != self.rank:
            raise RingMismatch("vector rank mismatch")
        return o

    def __add__(self, o):
        o = self._check(o)
        return Vector(self.ring, self.rank, _add_into(dict(self._t), o._t))

    def __sub__(self, o):
        o = self._check(o)
        return Vector(self.ring, self.rank, _add_into(dict(self._t), o._t, -1))

    def __neg__(self):
        return Vector(self.ring, self.rank, {m: -c for m, c in self._t.items()})

    def __mul__(self, s):
        if not isinstance(s, Poly):
            s = self.ring.const(s)
        acc = {}
        for ms, cs in s._t.items():
            for m, c in self._t.items():
                mm = (m[0],) + tuple(a + b for a, b in zip(m[1:], ms))
                acc[mm] = acc.get(mm, 0) + c * cs
        return Vector(self.ring, self.rank, {m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, Vector) and o.rank == self.rank and self._t == o._t

    __hash__ = None

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def map(self, fn):
        return Vector.from_components(self.ring, [fn(c) for c in self.components()]) \
            if self.rank else self

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components()) + ")"

    __repr__ = __str__
