"""Finite unitary modules over a :class:`~factorlab.rings.Ring`."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .rings import Ring, RingError


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Module:
    ring: Ring
    add: np.ndarray
    act: np.ndarray  # act[r, m] = r*m
    zero: int
    construction: dict
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))

    def __repr__(self):
        return f"Module({self.construction.get('kind')}, size={self.size}, over {self.ring!r})"

    @property
    def size(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def nonzero(self) -> list:
        return [m for m in self.elements if m != self.zero]

    @cached_property
    def neg(self) -> np.ndarray:
        neg = np.empty(self.size, dtype=np.int64)
        rows, cols = np.nonzero(self.add == self.zero)
        neg[rows] = cols
        return neg

    @cached_property
    def annihilator(self) -> frozenset:
        return ann_of_subset(self, self.elements)

    @cached_property
    def zero_divisor_set(self) -> frozenset:
        return zero_divisors(self)

    def to_json(self) -> dict:
        return self.construction


def validate_module(ring: Ring, add, act, zero):
    k = len(add)
    if k < 2:
        raise ModuleError("modules must be nonzero")
    idx = np.arange(k)
    if not (add[zero] == idx).all() or not (add == add.T).all():
        raise ModuleError("(M, +) is not an abelian group with the given zero")
    if not ((add == zero).sum(axis=1) == 1).all():
        raise ModuleError("missing additive inverses")
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    if not (add[add[a, b], c] == add[a, add[b, c]]).all():
        raise ModuleError("addition is not associative")
    if not (act[ring.one] == idx).all():
        raise ModuleError("module is not unitary")
    if ring.partial:
        return
    n = ring.size
    r, s, m = np.meshgrid(np.arange(n), np.arange(n), idx, indexing="ij")
    if not (act[r, act[s, m]] == act[ring.mul[r, s], m]).all():
        raise ModuleError("action is not associative")
    if not (act[ring.add[r, s], m] == add[act[r, m], act[s, m]]).all():
        raise ModuleError("action does not distribute over ring addition")
    r, m, m2 = np.meshgrid(np.arange(n), idx, idx, indexing="ij")
    if not (act[r, add[m, m2]] == add[act[r, m], act[r, m2]]).all():
        raise ModuleError("action does not distribute over module addition")


def module_from_tables(ring, add, act, zero, construction, labels=(), validate=True):
    add = np.asarray(add, dtype=np.int64)
    act = np.asarray(act, dtype=np.int64)
    if validate:
        validate_module(ring, add, act, zero)
    return Module(ring, add, act, int(zero), construction, tuple(labels))


@lru_cache(maxsize=None)
def regular_module(R: Ring) -> Module:
    return Module(R, R.add, R.mul, R.zero, {"kind": "regular"}, R.labels)


def zmod_over(R: Ring, m: int) -> Module:
    """Z/m as a module over R = Z/n (m | n)."""
    if R.construction.get("kind") != "zmod":
        raise ModuleError("zmod_over needs a ring Z/n")
    n = R.construction["n"]
    if m < 2 or n % m:
        raise ModuleError(f"need m >= 2 dividing n (m={m}, n={n})")
    a = np.arange(m)
    add = (a[:, None] + a[None, :]) % m
    act = (np.arange(n)[:, None] * a[None, :]) % m
    return module_from_tables(R, add, act, 0, {"kind": "zmod_over", "m": m, "n": n})


def is_submodule(M: Module, subset) -> bool:
    sub = set(subset)
    if M.zero not in sub:
        return False
    idx = sorted(sub)
    if not all(int(M.add[a, b]) in sub for a in idx for b in idx):
        return False
    return all(int(M.act[r, a]) in sub for r in M.ring.elements for a in idx)


def quotient_module(M: Module, submodule) -> Module:
    sub = sorted(set(int(x) for x in submodule))
    if not is_submodule(M, sub):
        raise ModuleError("not a submodule")
    rep = {}
    reps = []
    for m in M.elements:
        if m in rep:
            continue
        coset = {int(M.add[m, x]) for x in sub}
        reps.append(min(coset))
        for y in coset:
            rep[y] = len(reps) - 1
    to_cls = np.array([rep[m] for m in M.elements])
    r = np.array(reps)
    add = to_cls[M.add[r[:, None], r[None, :]]]
    act = to_cls[M.act[:, r]]
    c = {"kind": "quotient", "of": M.construction, "by": sub}
    labels = tuple(f"[{M.labels[x]}]" for x in reps)
    return module_from_tables(M.ring, add, act, rep[M.zero], c, labels)


def product_module(M1: Module, M2: Module) -> Module:
    if M1.ring is not M2.ring:
        raise ModuleError("factors must share the same ring object")
    k1, k2 = M1.size, M2.size
    i = np.arange(k1 * k2)
    x, y = i // k2, i % k2
    add = M1.add[x[:, None], x[None, :]] * k2 + M2.add[y[:, None], y[None, :]]
    act = M1.act[:, x] * k2 + M2.act[:, y]
    labels = tuple(f"({M1.labels[a]},{M2.labels[b]})" for a, b in zip(x, y))
    c = {"kind": "product", "factors": [M1.construction, M2.construction]}
    return module_from_tables(M1.ring, add, act, M1.zero * k2 + M2.zero, c, labels)


def ideal_generated(R: Ring, gens) -> frozenset:
    """Smallest ideal containing ``gens``."""
    I = {R.zero}
    frontier = set(int(g) for g in gens)
    while frontier:
        I |= frontier
        new = set()
        for a in I:
            for b in I:
                new.add(int(R.add[a, b]))
            for r in R.elements:
                new.add(int(R.mul[r, a]))
        frontier = new - I
    return frozenset(I)


def submodule_generated(M: Module, gens) -> frozenset:
    """Smallest submodule containing ``gens``."""
    N = {M.zero}
    frontier = set(int(g) for g in gens)
    while frontier:
        N |= frontier
        new = {int(M.add[a, b]) for a in N for b in N}
        new |= {int(M.act[r, a]) for r in M.ring.elements for a in N}
        frontier = new - N
    return frozenset(N)


def all_ideals(R: Ring) -> list:
    # every ideal is a finite sum of principal ones
    found = {ideal_generated(R, [a]) for a in R.elements}
    while True:
        sums = {ideal_generated(R, I | J) for I in found for J in found} - found
        if not sums:
            break
        found |= sums
    return sorted(found, key=lambda I: (len(I), sorted(I)))


def module_from_json(R: Ring, desc: dict) -> Module:
    kind = desc.get("kind")
    if kind == "regular":
        return regular_module(R)
    if kind == "zmod_over":
        if "n" in desc and R.construction != {"kind": "zmod", "n": desc["n"]}:
            raise ModuleError("zmod_over: ring mismatch")
        return zmod_over(R, int(desc["m"]))
    if kind == "quotient":
        base = module_from_json(R, desc.get("of", {"kind": "regular"}))
        return quotient_module(base, desc["by"])
    if kind == "product":
        fs = [module_from_json(R, f) for f in desc["factors"]]
        M = fs[0]
        for F in fs[1:]:
            M = product_module(M, F)
        return M
    raise ModuleError(f"unsupported module description {desc!r}")


# -- annihilators and zero divisors ------------------------------------------

def ann_of_subset(M: Module, subset) -> frozenset:
    idx = np.array(sorted(set(int(x) for x in subset)), dtype=np.int64)
    if len(idx) == 0:
        raise ModuleError("subset must be nonempty")
    ok = (M.act[:, idx] == M.zero).all(axis=1)
    return frozenset(int(r) for r in np.nonzero(ok)[0])


def ann_of_scalar(M: Module, r: int) -> frozenset:
    return frozenset(int(m) for m in np.nonzero(M.act[r] == M.zero)[0])


def zero_divisors(M: Module, subset=None) -> frozenset:
    """``{r : r*m = 0 for some nonzero m in subset}`` (subset defaults to M)."""
    idx = [int(x) for x in (M.elements if subset is None else subset) if int(x) != M.zero]
    if not idx:
        return frozenset()
    hit = (M.act[:, idx] == M.zero).any(axis=1)
    return frozenset(int(r) for r in np.nonzero(hit)[0])
