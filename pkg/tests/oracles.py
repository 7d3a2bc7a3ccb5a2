"""Definitional oracles that use only the ring and module tables.

Nothing here touches the factor graph, the cached relation matrices, or the
classification DP.  Everything is a direct quantifier scan, with recursion
for factorizations.  Lengths are explored to depth |M|: a factorization of a
nonzero element with at least |M| scalars revisits some element, and the loop
can be repeated, so lengths are unbounded exactly when such a factorization
exists.
"""
from __future__ import annotations

from functools import lru_cache


class Oracle:
    def __init__(self, M, S):
        self.M, self.S = M, S
        self.R = R = M.ring
        self.S_list = sorted(S.members)
        self.units = frozenset(u for u in R.elements
                               if any(int(R.mul[u, v]) == R.one for v in R.elements))
        self.nonunits = [s for s in self.S_list if s not in self.units]
        self.n = M.size
        self.act = [[int(M.act[r, m]) for m in M.elements] for r in R.elements]
        self.ring_mul = [[int(R.mul[a, b]) for b in R.elements] for a in R.elements]
        self.depth = M.size
        self._lengths = lru_cache(maxsize=None)(self._lengths_uncached)
        self._keys = lru_cache(maxsize=None)(self._keys_uncached)

    # -- relations ------------------------------------------------------------

    def writings(self, m):
        """All (s, n) with s in S and m = s*n."""
        return [(s, x) for s in self.S_list for x in self.M.elements if self.act[s][x] == m]

    def assoc(self, m, n) -> bool:
        return (any(self.act[s][n] == m for s in self.S_list)
                and any(self.act[s][m] == n for s in self.S_list))

    def strong(self, m, n) -> bool:
        return any(self.act[u][n] == m for u in self.S_list if u in self.units)

    def very_strong(self, m, n) -> bool:
        if not self.assoc(m, n):
            return False
        if m == self.M.zero and n == self.M.zero:
            return True
        return all(s in self.units for s in self.S_list if self.act[s][n] == m)

    def rel(self, level: int):
        return (self.assoc, self.strong, self.very_strong)[level]

    def primitive(self, m, level: int = 0) -> bool:
        r = self.rel(level)
        return all(r(x, m) for _, x in self.writings(m))

    def presimplifiable(self) -> bool:
        z = self.M.zero
        return not any(self.act[s][m] == m for s in self.nonunits
                       for m in self.M.elements if m != z)

    # -- factorizations -------------------------------------------------------

    def factorizations(self, m, irr=None, prim_level=None, max_len=None):
        """Explicit list of (scalars, tail); irr is a predicate on scalars, prim
        restricts tails.  Only call on elements with bounded lengths."""
        max_len = self.depth if max_len is None else max_len
        out = []

        def rec(x, prefix):
            if prim_level is None or self.primitive(x, prim_level):
                out.append((tuple(prefix), x))
            if len(prefix) == max_len:
                return
            for s in self.nonunits:
                if irr is not None and not irr(s):
                    continue
                for y in self.M.elements:
                    if self.act[s][y] == x:
                        rec(y, prefix + [s])

        rec(m, [])
        return out

    def _lengths_uncached(self, m, depth, irr_level, prim_level):
        """Lengths <= depth of (possibly atomic) factorizations of m."""
        out = set()
        if irr_level is None or self.primitive(m, prim_level):
            out.add(0)
        if depth == 0:
            return frozenset(out)
        for s in self.nonunits:
            if irr_level is not None and not self.ring_oracle().irreducible(s, irr_level):
                continue
            for y in self.M.elements:
                if self.act[s][y] == m:
                    out |= {1 + k for k in self._lengths(y, depth - 1, irr_level, prim_level)}
        return frozenset(out)

    def lengths(self, m, irr_level=None, prim_level=None):
        """Length set, or None when unbounded."""
        ls = self._lengths(m, self.depth, irr_level, prim_level)
        if ls and max(ls) >= self.depth:
            return None
        return ls

    def _keys_uncached(self, m, depth):
        """Isomorphism keys of atomic(irreducible, primitive) factorizations."""
        ro = self.ring_oracle()
        out = set()
        if self.primitive(m):
            out.add((0, self.assoc_rep(m), ()))
        if depth == 0:
            return frozenset(out)
        for s in self.nonunits:
            if not ro.irreducible(s, 0):
                continue
            cs = ro.assoc_rep(s)
            for y in self.M.elements:
                if self.act[s][y] == m:
                    for k, tail, scal in self._keys(y, depth - 1):
                        out.add((k + 1, tail, tuple(sorted(scal + (cs,)))))
        return frozenset(out)

    def iso_count(self, m):
        if self.lengths(m, 0, 0) is None:
            return None
        return len(self._keys(m, self.depth))

    def assoc_rep(self, m) -> int:
        return min(x for x in self.M.elements if self.assoc(m, x))

    def ring_oracle(self) -> "RingOracle":
        if not hasattr(self, "_ro"):
            self._ro = RingOracle(self.R)
        return self._ro

    # -- properties -----------------------------------------------------------

    def nonzero(self):
        return [m for m in self.M.elements if m != self.M.zero]

    def atomic(self, irr_level=0, prim_level=0) -> bool:
        return all(self._lengths(m, self.depth, irr_level, prim_level) for m in self.nonzero())

    def flags(self) -> dict:
        nz = self.nonzero()
        atomic = self.atomic()
        bfm = all(self.lengths(m) is not None for m in nz)
        hfm = atomic and all(self.lengths(m, 0, 0) is not None and len(self.lengths(m, 0, 0)) == 1
                             for m in nz)
        counts = {m: self.iso_count(m) for m in nz} if atomic else {}
        ffm = atomic and all(c is not None for c in counts.values())
        ufm = atomic and all(c == 1 for c in counts.values())
        return {"presimplifiable": self.presimplifiable(), "atomic": atomic, "BFM": bfm,
                "HFM": hfm, "FFM": ffm, "UFM": ufm}

    def pair_flags(self) -> dict:
        return {(a, b): self.atomic(a, b) for a in range(3) for b in range(3)}

    # -- compact factorizations -----------------------------------------------

    def compact(self, m):
        return [(s, x) for s, x in self.writings(m) if self.primitive(x)]

    def subset_flags(self) -> dict:
        ro = self.ring_oracle()
        compact = semi = fact = True
        for m in self.nonzero():
            cf = self.compact(m)
            if not cf:
                compact = semi = fact = False
                continue
            s0, n0 = cf[0]
            if not all(ro.assoc(s, s0) for s, _ in cf):
                semi = fact = False
            if not all(self.assoc(x, n0) for _, x in cf):
                fact = False
        R = self.R
        reg = Oracle(_regular(R), self.S)
        prim_r = [r for r in R.elements if r != R.zero and reg.primitive(r)]
        prim_m = [m for m in self.nonzero() if self.primitive(m)]
        cond2 = all(self.primitive(self.act[r][m]) for r in prim_r for m in prim_m
                    if self.act[r][m] != self.M.zero)
        return {"compactly_atomic": compact, "semi_factorable": semi, "factorable": fact,
                "splits": semi and cond2}


class RingOracle:
    """Relations of R as a module over itself with S = R."""

    def __init__(self, R):
        self.R = R
        self.mul = [[int(R.mul[a, b]) for b in R.elements] for a in R.elements]
        self.units = frozenset(u for u in R.elements
                               if any(self.mul[u][v] == R.one for v in R.elements))
        self._irr = {}

    def assoc(self, a, b) -> bool:
        E = self.R.elements
        return any(self.mul[s][b] == a for s in E) and any(self.mul[s][a] == b for s in E)

    def strong(self, a, b) -> bool:
        return any(self.mul[u][b] == a for u in self.units)

    def very_strong(self, a, b) -> bool:
        if not self.assoc(a, b):
            return False
        if a == self.R.zero and b == self.R.zero:
            return True
        return all(s in self.units for s in self.R.elements if self.mul[s][b] == a)

    def irreducible(self, a, level: int = 0) -> bool:
        key = (a, level)
        if key not in self._irr:
            r = (self.assoc, self.strong, self.very_strong)[level]
            E = self.R.elements
            self._irr[key] = a not in self.units and all(
                r(a, b) or r(a, c) for b in E for c in E if self.mul[b][c] == a)
        return self._irr[key]

    def assoc_rep(self, a) -> int:
        return min(x for x in self.R.elements if self.assoc(a, x))


def _regular(R):
    from factorlab.modules import regular_module
    return regular_module(R)
