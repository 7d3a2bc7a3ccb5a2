"""Saturated multiplicatively closed subsets of a finite ring."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .rings import Ring


class SatSetError(ValueError):
    pass


@dataclass(frozen=True)
class SatSet:
    ring: Ring = field(compare=False, hash=False)
    members: frozenset
    generators: tuple = field(default=(), compare=False, hash=False)
    ring_id: int = field(default=0, repr=False)

    @classmethod
    def from_members(cls, R: Ring, members, generators=(), check=True) -> "SatSet":
        members = frozenset(int(x) for x in members)
        if R.zero in members:
            members = frozenset(R.elements)
        if check:
            bad = satset_violation(R, members)
            if bad is not None:
                raise SatSetError(f"not saturated multiplicatively closed: {bad}")
        return cls(R, members, tuple(generators), id(R))

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self):
        return f"SatSet({sorted(self.members)})"

    @property
    def is_whole_ring(self) -> bool:
        return len(self.members) == self.ring.size

    @property
    def nonunits(self) -> list:
        return [s for s in sorted(self.members) if s not in self.ring.units]

    def to_json(self) -> dict:
        if self.generators:
            return {"gens": list(self.generators), "members": sorted(self.members)}
        return {"members": sorted(self.members)}


def satset_violation(R: Ring, subset):
    """Return None if ``subset`` is a saturated multiplicatively closed set,
    else a dict describing the first violation found."""
    S = set(int(x) for x in subset)
    if not S:
        return {"rule": "nonempty"}
    missing = R.units - S
    if missing:
        return {"rule": "units", "element": min(missing)}
    if R.zero in S and len(S) != R.size:
        return {"rule": "zero_means_whole_ring", "element": R.zero}
    for s in sorted(S):
        for t in sorted(S):
            st = int(R.mul[s, t])
            if st >= 0 and st not in S:
                return {"rule": "closed", "pair": [s, t], "product": st}
    # saturation: x*y in S forces x in S
    for x in R.elements:
        if x in S:
            continue
        for y in R.elements:
            xy = int(R.mul[x, y])
            if xy in S:
                return {"rule": "saturated", "pair": [x, y], "product": xy}
    return None


def is_satset(R: Ring, subset) -> bool:
    return satset_violation(R, subset) is None


def saturate(R: Ring, gens=()) -> SatSet:
    """Least saturated multiplicatively closed set containing ``gens``."""
    gens = [int(g) for g in gens]
    S = set(R.units) | set(gens)
    D = R.divides_matrix
    while True:
        if R.zero in S:
            return SatSet.from_members(R, R.elements, gens, check=False)
        idx = np.array(sorted(S))
        prods = R.mul[np.ix_(idx, idx)].reshape(-1)
        new = set(int(p) for p in prods if p >= 0)
        new |= set(int(x) for x in np.nonzero(D[:, idx].any(axis=1))[0])
        if new <= S:
            break
        S |= new
    return SatSet.from_members(R, S, gens, check=False)


def units_satset(R: Ring) -> SatSet:
    return SatSet.from_members(R, R.units, check=False)


def whole_ring(R: Ring) -> SatSet:
    return SatSet.from_members(R, R.elements, check=False)


def all_satsets(R: Ring, size_limit: int = 64) -> list:
    """Every saturated multiplicatively closed subset, smallest first.

    Walks the lattice upward from U(R): any saturated S is reached by adding
    its elements one at a time and re-saturating.
    """
    return list(_all_satsets(R, size_limit))


@lru_cache(maxsize=None)
def _all_satsets(R: Ring, size_limit: int) -> tuple:
    if R.size > size_limit:
        raise SatSetError(f"carrier size {R.size} exceeds enumeration bound {size_limit}")
    start = saturate(R)
    seen = {start.members: start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in R.elements:
                if x in S.members:
                    continue
                T = saturate(R, sorted(S.members | {x}))
                if T.members not in seen:
                    seen[T.members] = SatSet.from_members(R, T.members, check=False)
                    nxt.append(T)
        frontier = nxt
    return tuple(sorted(seen.values(), key=lambda S: (len(S), sorted(S.members))))


def satset_from_json(R: Ring, desc) -> SatSet:
    if desc == "units":
        return units_satset(R)
    if desc == "all":
        return whole_ring(R)
    if "members" in desc:
        return SatSet.from_members(R, desc["members"], desc.get("gens", ()))
    if "gens" in desc:
        return saturate(R, desc["gens"])
    raise SatSetError(f"unsupported set description {desc!r}")
