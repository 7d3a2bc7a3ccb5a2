"""Explicit localizations R_S, M_S and the induced set T = S^{-1}S'."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modules import Module, module_from_tables
from .rings import Ring, ring_from_tables
from .satsets import SatSet, satset_violation


class LocalizationError(ValueError):
    pass


class CollapsedToZero(LocalizationError):
    """0 lies in S, so the localization is the zero ring."""


class NotNested(LocalizationError):
    pass


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _classes(n_pairs, equiv):
    """Partition pair indices by the transitive closure of ``equiv``."""
    uf = _UnionFind(n_pairs)
    ii, jj = np.nonzero(equiv)
    for i, j in zip(ii.tolist(), jj.tolist()):
        if i < j:
            uf.union(i, j)
    roots = [uf.find(i) for i in range(n_pairs)]
    # roots are the least pair index, i.e. the lexicographically least (x, s)
    order = sorted(set(roots))
    pos = {r: c for c, r in enumerate(order)}
    return np.array([pos[r] for r in roots]), order


@dataclass(eq=False)
class LocalizedRing:
    base: Ring
    S: SatSet
    ring: Ring
    pair_class: np.ndarray  # pair_class[r, j] for the pair (r, s_j)
    scalars: list  # sorted members of S
    reps: list  # canonical (r, s) per class

    def frac(self, r: int, s: int) -> int:
        return int(self.pair_class[r, self.scalars.index(s)])

    def map_to(self, r: int) -> int:
        return self.frac(r, self.base.one)

    @property
    def map_table(self) -> list:
        return [self.map_to(r) for r in self.base.elements]

    def is_injective(self) -> bool:
        return len(set(self.map_table)) == self.base.size

    def to_json(self) -> dict:
        return {"base": self.base.construction, "S": sorted(self.S.members),
                "classes": [list(p) for p in self.reps], "map_to": self.map_table}


@lru_cache(maxsize=None)
def localize_ring(R: Ring, S: SatSet) -> LocalizedRing:
    if R.zero in S.members:
        raise CollapsedToZero("0 in S: the localization is the zero ring")
    sc = sorted(S.members)
    k = len(sc)
    n = R.size
    pr = np.repeat(np.arange(n), k)
    ps = np.tile(np.array(sc), n)
    sc_arr = np.array(sc)
    killed = (R.mul[sc_arr] == R.zero).any(axis=0)  # t*x = 0 for some t in S
    # (r, s) ~ (r', s')  iff  t (r s' - r' s) = 0 for some t in S
    left = R.mul[pr[:, None], ps[None, :]]
    right = R.mul[pr[None, :], ps[:, None]]
    diff = R.add[left, R.neg[right]]
    cls, roots = _classes(n * k, killed[diff])
    reps = [(int(pr[r]), int(ps[r])) for r in roots]
    m = len(reps)
    pair_index = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(pr, ps))}

    def cls_of(r, s):
        return cls[pair_index[(r, s)]]

    add = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    for i, (r1, s1) in enumerate(reps):
        for j, (r2, s2) in enumerate(reps):
            ss = int(R.mul[s1, s2])
            num = int(R.add[R.mul[r1, s2], R.mul[r2, s1]])
            add[i, j] = cls_of(num, ss)
            mul[i, j] = cls_of(int(R.mul[r1, r2]), ss)
    zero = cls_of(R.zero, R.one)
    one = cls_of(R.one, R.one)
    labels = tuple(R.labels[r] if s == R.one else f"{R.labels[r]}/{R.labels[s]}" for r, s in reps)
    construction = {"kind": "localized", "base": R.construction, "S": sc}
    ring = ring_from_tables(add, mul, zero, one, construction, labels, size_limit=None)
    return LocalizedRing(R, S, ring, cls.reshape(n, k), sc, reps)


@dataclass(eq=False)
class LocalizedModule:
    base: Module
    S: SatSet
    loc_ring: LocalizedRing
    module: Module
    pair_class: np.ndarray
    reps: list

    def frac(self, m: int, s: int) -> int:
        return int(self.pair_class[m, self.loc_ring.scalars.index(s)])

    def map_to(self, m: int) -> int:
        return self.frac(m, self.base.ring.one)

    @property
    def map_table(self) -> list:
        return [self.map_to(m) for m in self.base.elements]

    def is_injective(self) -> bool:
        return len(set(self.map_table)) == self.base.size

    def to_json(self) -> dict:
        return {"base": self.base.construction, "S": sorted(self.S.members),
                "classes": [list(p) for p in self.reps], "map_to": self.map_table}


@lru_cache(maxsize=None)
def localize_module(M: Module, S: SatSet) -> LocalizedModule:
    R = M.ring
    LR = localize_ring(R, S)
    sc = LR.scalars
    k = len(sc)
    n = M.size
    pm = np.repeat(np.arange(n), k)
    ps = np.tile(np.array(sc), n)
    killed = (M.act[np.array(sc)] == M.zero).any(axis=0)
    # (m, s) ~ (m', s')  iff  t (s' m - s m') = 0 for some t in S
    left = M.act[ps[None, :], pm[:, None]]
    right = M.act[ps[:, None], pm[None, :]]
    diff = M.add[left, M.neg[right]]
    cls, roots = _classes(n * k, killed[diff])
    reps = [(int(pm[r]), int(ps[r])) for r in roots]
    q = len(reps)
    pair_index = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(pm, ps))}

    def cls_of(m, s):
        return cls[pair_index[(m, s)]]

    add = np.empty((q, q), dtype=np.int64)
    for i, (m1, s1) in enumerate(reps):
        for j, (m2, s2) in enumerate(reps):
            num = int(M.add[M.act[s2, m1], M.act[s1, m2]])
            add[i, j] = cls_of(num, int(R.mul[s1, s2]))
    act = np.empty((LR.ring.size, q), dtype=np.int64)
    for a, (r, s) in enumerate(LR.reps):
        for j, (m, t) in enumerate(reps):
            act[a, j] = cls_of(int(M.act[r, m]), int(R.mul[s, t]))
    labels = tuple(M.labels[m] if s == R.one else f"{M.labels[m]}/{R.labels[s]}" for m, s in reps)
    construction = {"kind": "localized", "base": M.construction, "S": sc}
    if q < 2:
        raise CollapsedToZero("M_S is the zero module")
    mod = module_from_tables(LR.ring, add, act, cls_of(M.zero, R.one), construction, labels)
    return LocalizedModule(M, S, LR, mod, cls.reshape(n, k), reps)


def induce_T(LR: LocalizedRing, S: SatSet, S_prime: SatSet) -> SatSet:
    """``T = {s'/s : s' in S', s in S}`` as a saturated subset of R_S."""
    if not S.members <= S_prime.members:
        raise NotNested("S is not contained in S'")
    members = {LR.frac(sp, s) for sp in S_prime.members for s in S.members}
    bad = satset_violation(LR.ring, members)
    if bad is not None:
        raise LocalizationError(f"T failed the saturation check: {bad}")
    return SatSet.from_members(LR.ring, members, check=False)
