"""Deterministic catalogs of rings, modules, saturated sets and instances."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .modules import (Module, all_ideals, module_from_json, product_module, quotient_module,
                      regular_module)
from .report import content_id
from .rings import Ring, build_gf, build_gf_quotient, build_product, build_zmod, ring_from_json
from .satsets import SatSet, all_satsets


# one object per construction, so the per-object caches downstream are shared
_RINGS: dict = {}
_MODULES: dict = {}


def _intern_ring(R: Ring) -> Ring:
    return _RINGS.setdefault(_key(R), R)


def _intern_module(M: Module) -> Module:
    from .report import canonical_json
    return _MODULES.setdefault((id(M.ring), canonical_json(M.construction)), M)


def ring_catalog(max_size: int = 8) -> list:
    """Z/n, GF(q), a few GF(p)[x]/(f), and binary products, deduplicated by
    construction (not by isomorphism type)."""
    base = [build_zmod(n) for n in range(2, max_size + 1)]
    for q in (4, 8, 9, 16):
        if q <= max_size:
            base.append(build_gf(q))
    for f in ([0, 0, 1], [0, 0, 0, 1]):
        if 2 ** (len(f) - 1) <= max_size:
            base.append(build_gf_quotient(2, f))
    small = [R for R in base if R.size <= max_size // 2]
    prods = []
    for R1, R2 in itertools.combinations_with_replacement(small, 2):
        if R1.size * R2.size <= max_size:
            prods.append(build_product(R1, R2))
    for P in list(prods):
        for R3 in small:
            if P.size * R3.size <= max_size and R3.size == 2 and P.construction["factors"][0] == R3.construction:
                prods.append(build_product(P, R3))
    out = [_intern_ring(R) for R in base + prods]
    return sorted(out, key=lambda R: (R.size, _key(R)))


def _key(R: Ring) -> str:
    from .report import canonical_json
    return canonical_json(R.construction)


@lru_cache(maxsize=None)
def _ring_by_json(text: str) -> Ring:
    import json
    return _intern_ring(ring_from_json(json.loads(text)))


def module_catalog(R: Ring, max_size: int = 8) -> list:
    """Cyclic modules R/I and binary products of them."""
    reg = regular_module(R)
    cyclic = []
    for I in all_ideals(R):
        if len(I) == R.size:
            continue
        M = reg if len(I) == 1 else quotient_module(reg, sorted(I))
        if M.size <= max_size:
            cyclic.append(M)
    prods = []
    for A, B in itertools.combinations_with_replacement(cyclic, 2):
        if A.size * B.size <= max_size:
            prods.append(product_module(A, B))
    return [_intern_module(M) for M in cyclic + prods]


@dataclass(eq=False)
class Instance:
    ring: Ring
    module: Module
    S: SatSet
    S_prime: SatSet | None = None

    def to_json(self) -> dict:
        d = {"ring": self.ring.construction, "module": self.module.construction,
             "S": sorted(self.S.members)}
        if self.S_prime is not None:
            d["S_prime"] = sorted(self.S_prime.members)
        return d

    @cached_property
    def id(self) -> str:
        return content_id(self.to_json())

    # -- hypothesis predicates ------------------------------------------------

    @cached_property
    def S_misses_ZM(self) -> bool:
        return not (self.S.members & self.module.zero_divisor_set)

    @cached_property
    def S_misses_ZR(self) -> bool:
        return not (self.S.members & regular_module(self.ring).zero_divisor_set)

    @cached_property
    def verdict(self):
        from .split import analyze_subset
        return analyze_subset(self.module, self.S)

    @property
    def semi_factorable(self) -> bool:
        return self.verdict.semi_factorable

    @property
    def factorable(self) -> bool:
        return self.verdict.factorable

    @property
    def splits(self) -> bool:
        return self.verdict.splits

    @cached_property
    def E_prime(self) -> frozenset:
        """S' minus Ann(M), as a subset of R."""
        return frozenset(self.S_prime.members - self.module.annihilator)

    @cached_property
    def E_prime_verdict(self):
        from .split import analyze_subset
        return analyze_subset(regular_module(self.ring), self.S, self.E_prime)

    @property
    def Sp_compactly_S_atomic(self) -> bool:
        return self.E_prime_verdict.compactly_atomic

    @cached_property
    def localized(self):
        from .localization import induce_T, localize_module
        LM = localize_module(self.module, self.S)
        T = induce_T(LM.loc_ring, self.S, self.S_prime)
        return LM, T


def iter_instances(max_ring=8, max_module=8, with_prime=True, rings=None):
    """Yield instances in a fixed order: ring, module, S (and S' with S <= S')."""
    for R in (rings if rings is not None else ring_catalog(max_ring)):
        sats = all_satsets(R)
        for M in module_catalog(R, max_module):
            for S in sats:
                if not with_prime:
                    yield Instance(R, M, S)
                    continue
                for Sp in sats:
                    if S.members <= Sp.members:
                        yield Instance(R, M, S, Sp)


def instance_from_json(desc: dict) -> Instance:
    from .report import canonical_json
    R = _ring_by_json(canonical_json(desc["ring"]))
    M = _module_by_json(R, canonical_json(desc["module"]))
    S = _satset(R, tuple(desc["S"]))
    Sp = _satset(R, tuple(desc["S_prime"])) if "S_prime" in desc else None
    return Instance(R, M, S, Sp)


@lru_cache(maxsize=None)
def _module_by_json(R, text):
    import json
    return _intern_module(module_from_json(R, json.loads(text)))


@lru_cache(maxsize=None)
def _satset(R, members):
    return SatSet.from_members(R, members, check=False)


def sample(items, k, seed):
    """Seeded sample preserving the original relative order."""
    items = list(items)
    if k is None or k >= len(items):
        return items
    idx = sorted(random.Random(seed).sample(range(len(items)), k))
    return [items[i] for i in idx]
