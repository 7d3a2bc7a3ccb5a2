"""Finite commutative rings backed by operation tables.

Elements are plain ints (indices into the carrier); equality is index
equality.  Multiplication tables may contain ``-1`` for products that are
undefined, which is how the degree-bounded polynomial fragments in
:mod:`factorlab.axb` plug into the generic deciders.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_SIZE_LIMIT = 64

UNDEFINED = -1


class RingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Ring:
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    construction: dict
    labels: tuple = ()
    partial: bool = False

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))

    def __repr__(self):
        return f"Ring({describe_construction(self.construction)}, size={self.size})"

    @property
    def size(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def neg(self) -> np.ndarray:
        neg = np.empty(self.size, dtype=np.int64)
        rows, cols = np.nonzero(self.add == self.zero)
        neg[rows] = cols
        return neg

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    @cached_property
    def units(self) -> frozenset:
        return frozenset(int(u) for u in np.nonzero((self.mul == self.one).any(axis=1))[0])

    def is_unit(self, a: int) -> bool:
        return a in self.units

    @cached_property
    def inverse(self) -> dict:
        return {u: int(np.nonzero(self.mul[u] == self.one)[0][0]) for u in self.units}

    @cached_property
    def divides_matrix(self) -> np.ndarray:
        """``D[a, b]`` is true iff ``a | b``, i.e. ``b = a*c`` for some ``c``."""
        n = self.size
        D = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(n), n)
        vals = self.mul.reshape(-1)
        ok = vals >= 0
        D[rows[ok], vals[ok]] = True
        return D

    @cached_property
    def is_domain(self) -> bool:
        nz = np.arange(self.size) != self.zero
        block = self.mul[np.ix_(nz, nz)]
        return not bool((block == self.zero).any())

    def power(self, a: int, k: int) -> int:
        x = self.one
        for _ in range(k):
            x = int(self.mul[x, a])
            if x < 0:
                return UNDEFINED
        return x

    def product(self, factors) -> int:
        x = self.one
        for f in factors:
            x = int(self.mul[x, f])
            if x < 0:
                return UNDEFINED
        return x

    def to_json(self) -> dict:
        return self.construction


def units(R: Ring) -> frozenset:
    return R.units


def divides(R: Ring, a: int, b: int, witness: bool = False):
    """Decide ``a | b``; with ``witness=True`` return ``(flag, c)`` with ``b = a*c``."""
    cs = np.nonzero(R.mul[a] == b)[0]
    if witness:
        return (len(cs) > 0, int(cs[0]) if len(cs) else None)
    return len(cs) > 0


def describe_construction(c: dict) -> str:
    kind = c.get("kind")
    if kind == "zmod":
        return f"Z/{c['n']}"
    if kind == "product":
        return " x ".join(_paren(describe_construction(f)) for f in c["factors"])
    if kind == "gfquot":
        return f"GF({c['p']})[x]/({poly_str(c['f'])})"
    if kind == "localized":
        return f"({describe_construction(c['base'])})_S"
    if kind == "axb":
        return f"A+XB[X](A={c['A']},B={c['B']},deg<={c['deg']})"
    if kind == "laurent":
        return f"B[X,1/X](B={c['B']},span<={c['deg']})"
    return kind or "table"


def _paren(s: str) -> str:
    return f"({s})" if " " in s else s


def poly_str(coeffs, var: str = "x", fmt=str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = fmt(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        else:
            terms.append(f"{cs}{mono}")
    return "+".join(reversed(terms)) if terms else "0"


# -- validation ---------------------------------------------------------------

def validate_tables(add, mul, zero, one, exhaustive=True, samples=256, partial=False):
    """Check the commutative ring axioms; raise :class:`RingError` on failure."""
    n = len(add)
    if n < 2:
        raise RingError("rings must be nonzero (one != zero)")
    if zero == one:
        raise RingError("one == zero")
    idx = np.arange(n)
    if not (add[zero] == idx).all():
        raise RingError("zero is not an additive identity")
    if not (add == add.T).all():
        raise RingError("addition is not commutative")
    if not ((add == zero).sum(axis=1) == 1).all():
        raise RingError("missing additive inverses")
    if not partial and not (mul[one] == idx).all():
        raise RingError("one is not a multiplicative identity")
    if not (mul == mul.T).all():
        raise RingError("multiplication is not commutative")
    if exhaustive:
        triples = None
    else:
        rng = np.random.default_rng(0)
        triples = rng.integers(0, n, size=(samples, 3))
    _check_assoc(add, add, triples, "addition")
    if not partial:
        _check_assoc(mul, mul, triples, "multiplication")
        _check_distrib(add, mul, triples)


def _check_assoc(op, _, triples, name):
    n = len(op)
    if triples is None:
        a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    else:
        a, b, c = triples.T
    if not (op[op[a, b], c] == op[a, op[b, c]]).all():
        raise RingError(f"{name} is not associative")


def _check_distrib(add, mul, triples):
    n = len(add)
    if triples is None:
        a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    else:
        a, b, c = triples.T
    if not (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all():
        raise RingError("multiplication does not distribute over addition")


def ring_from_tables(add, mul, zero=0, one=1, construction=None, labels=(),
                     validate="exhaustive", size_limit=DEFAULT_SIZE_LIMIT, partial=False):
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    if size_limit is not None and len(add) > size_limit:
        raise RingError(f"carrier size {len(add)} exceeds limit {size_limit}")
    if validate:
        validate_tables(add, mul, zero, one, exhaustive=(validate == "exhaustive"), partial=partial)
    return Ring(add, mul, int(zero), int(one), construction or {"kind": "table"},
                tuple(labels), partial)


# -- constructions ------------------------------------------------------------

def build_zmod(n: int, size_limit=DEFAULT_SIZE_LIMIT) -> Ring:
    if n < 2:
        raise RingError("Z/n needs n >= 2")
    a = np.arange(n)
    add = (a[:, None] + a[None, :]) % n
    mul = (a[:, None] * a[None, :]) % n
    return ring_from_tables(add, mul, 0, 1, {"kind": "zmod", "n": n},
                            validate="spot", size_limit=size_limit)


def build_product(R1: Ring, R2: Ring, size_limit=DEFAULT_SIZE_LIMIT) -> Ring:
    n1, n2 = R1.size, R2.size
    i = np.arange(n1 * n2)
    x, y = i // n2, i % n2
    add = R1.add[x[:, None], x[None, :]] * n2 + R2.add[y[:, None], y[None, :]]
    mul = R1.mul[x[:, None], x[None, :]] * n2 + R2.mul[y[:, None], y[None, :]]
    labels = tuple(f"({R1.labels[a]},{R2.labels[b]})" for a, b in zip(x, y))
    c = {"kind": "product", "factors": [R1.construction, R2.construction]}
    return ring_from_tables(add, mul, R1.zero * n2 + R2.zero, R1.one * n2 + R2.one,
                            c, labels, size_limit=size_limit)


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _polymulmod(a, b, f, p):
    d = len(f) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = (prod[k - d + j] - c * f[j]) % p
    return prod[:d]


def build_gf_quotient(p: int, f, size_limit=DEFAULT_SIZE_LIMIT) -> Ring:
    """``GF(p)[x]/(f)`` for monic ``f`` (coefficients listed constant first)."""
    f = [int(c) % p for c in f]
    if not is_prime(p):
        raise RingError(f"{p} is not prime")
    if len(f) < 2 or f[-1] != 1:
        raise RingError("f must be monic of degree >= 1")
    d = len(f) - 1
    n = p ** d
    if size_limit is not None and n > size_limit:
        raise RingError(f"carrier size {n} exceeds limit {size_limit}")
    vecs = [[(i // p ** k) % p for k in range(d)] for i in range(n)]

    def enc(v):
        return sum(c * p ** k for k, c in enumerate(v))

    add = np.array([[enc([(x + y) % p for x, y in zip(u, v)]) for v in vecs] for u in vecs])
    mul = np.array([[enc(_polymulmod(u, v, f, p)) for v in vecs] for u in vecs])
    labels = tuple(poly_str(v) for v in vecs)
    one = 1
    return ring_from_tables(add, mul, 0, one, {"kind": "gfquot", "p": p, "f": f},
                            labels, size_limit=size_limit)


def irreducible_poly(p: int, k: int):
    """Lexicographically first monic irreducible of degree ``k`` over GF(p)."""
    if k == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        if not any(_has_factor(f, g, p) for g in _monics(p, k // 2)):
            return f
    raise RingError("no irreducible polynomial found")


def _monics(p, maxdeg):
    for d in range(1, maxdeg + 1):
        for tail in itertools.product(range(p), repeat=d):
            yield list(tail) + [1]


def _has_factor(f, g, p):
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return not any(r[:dg])


def build_gf(q: int, size_limit=DEFAULT_SIZE_LIMIT) -> Ring:
    for p in range(2, q + 1):
        if is_prime(p):
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r == 1 and k >= 1:
                if k == 1:
                    return build_zmod(p, size_limit=size_limit)
                return build_gf_quotient(p, irreducible_poly(p, k), size_limit=size_limit)
            if q % p == 0:
                break
    raise RingError(f"{q} is not a prime power")


def ring_from_json(desc: dict, size_limit=DEFAULT_SIZE_LIMIT) -> Ring:
    kind = desc.get("kind")
    if kind == "zmod":
        return build_zmod(int(desc["n"]), size_limit)
    if kind == "product":
        fs = [ring_from_json(f, size_limit) for f in desc["factors"]]
        R = fs[0]
        for F in fs[1:]:
            R = build_product(R, F, size_limit)
        return R
    if kind == "gfquot":
        return build_gf_quotient(int(desc["p"]), desc["f"], size_limit)
    if kind == "gf":
        return build_gf(int(desc["q"]), size_limit)
    if kind == "localized":
        from .localization import localize_ring
        from .satsets import SatSet
        base = ring_from_json(desc["base"], size_limit)
        return localize_ring(base, SatSet.from_members(base, desc["S"])).ring
    if kind == "axb":
        from .axb import axb_fragment
        return axb_fragment(int(desc["A"]["q"]), int(desc["B"]["q"]), int(desc["deg"])).ring
    if kind == "laurent":
        from .axb import laurent_fragment
        return laurent_fragment(int(desc["B"]["q"]), int(desc["deg"])).ring
    raise RingError(f"unsupported ring description {desc!r}")


# -- isomorphism search -------------------------------------------------------

def find_isomorphism(R1: Ring, R2: Ring):
    """Return a list ``phi`` with ``phi[a]`` the image of ``a``, or None."""
    n = R1.size
    if n != R2.size or len(R1.units) != len(R2.units):
        return None
    order = _bfs_order(R1)
    inv1 = _invariants(R1)
    inv2 = _invariants(R2)
    cands = {a: [b for b in R2.elements if inv2[b] == inv1[a]] for a in R1.elements}
    phi = {R1.zero: R2.zero, R1.one: R2.one}
    used = {R2.zero, R2.one}

    def consistent(a):
        for b, fb in phi.items():
            for op1, op2 in ((R1.add, R2.add), (R1.mul, R2.mul)):
                c = int(op1[a, b])
                if c in phi and phi[c] != op2[phi[a], fb]:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return True
        a = order[i]
        if a in phi:
            return extend(i + 1)
        for b in cands[a]:
            if b in used:
                continue
            phi[a] = b
            used.add(b)
            if consistent(a) and extend(i + 1):
                return True
            del phi[a]
            used.discard(b)
        return False

    if not (consistent(R1.zero) and consistent(R1.one)):
        return None
    if extend(0):
        return [int(phi[a]) for a in R1.elements]
    return None


def _bfs_order(R):
    return sorted(R.elements, key=lambda a: (a in R.units, a))


def _invariants(R):
    out = []
    for a in R.elements:
        add_order, x = 1, a
        while x != R.zero:
            x = int(R.add[x, a])
            add_order += 1
        out.append((a in R.units, add_order if a != R.zero else 0,
                    int((R.mul[a] == R.zero).sum()), int((R.mul[a] == a).sum())))
    return out
