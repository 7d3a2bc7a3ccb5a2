"""Compact S-atomic factorizations, (semi-)S-factorable subsets, M-splitting
sets, and checkers for the statements built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .factor import (classify, compact_factorizations, is_presimplifiable,
                     relations, ring_relations)
from .modules import Module, quotient_module, regular_module
from .report import implies, judge
from .rings import Ring
from .satsets import SatSet, whole_ring


class NotDomain(ValueError):
    pass


@dataclass
class SplitVerdict:
    subset: frozenset
    compactly_atomic: bool
    semi_factorable: bool
    factorable: bool
    splits: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict:
        return {"compactly_atomic": self.compactly_atomic, "semi_factorable": self.semi_factorable,
                "factorable": self.factorable, "splits": self.splits}

    def to_json(self) -> dict:
        return {"subset": sorted(self.subset), "flags": self.flags,
                "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)}}


def analyze_subset(M: Module, S: SatSet, E=None) -> SplitVerdict:
    """Decide the compact-factorization flags of ``E`` (default: all of M)."""
    E = frozenset(M.elements) if E is None else frozenset(int(x) for x in E)
    return _analyze(M, S, E)


@lru_cache(maxsize=None)
def _analyze(M: Module, S: SatSet, E: frozenset) -> SplitVerdict:
    rel = relations(M, S)
    ring_cls = ring_relations(M.ring).assoc_class
    wit = {}
    compact = semi = fact = True
    for m in sorted(E - {M.zero}):
        cf = compact_factorizations(M, S, m)
        if not cf:
            if compact:
                wit["compactly_atomic"] = {"m": m}
            compact = semi = fact = False
            continue
        s0, n0 = cf[0]
        for s, n in cf[1:]:
            if semi and ring_cls[s] != ring_cls[s0]:
                semi = fact = False
                wit["semi_factorable"] = {"m": m, "pairs": [[s0, n0], [s, n]]}
            if fact and rel.assoc_class[n] != rel.assoc_class[n0]:
                fact = False
                wit["factorable"] = {"m": m, "pairs": [[s0, n0], [s, n]]}
    for key in ("semi_factorable", "factorable"):
        if key not in wit and "compactly_atomic" in wit:
            wit[key] = wit["compactly_atomic"]
    cond2, w2 = _products_stay_primitive(M, S, E)
    if not cond2:
        wit["splits"] = w2
    elif not semi:
        wit["splits"] = wit["semi_factorable"]
    return SplitVerdict(E, compact, semi, fact, semi and cond2, wit)


def _products_stay_primitive(M: Module, S: SatSet, E: frozenset):
    """For S-primitive r in R and m in M with 0 != r*m in E, r*m is S-primitive."""
    R = M.ring
    ring_prim = relations(regular_module(R), S).prim[0]
    prim = relations(M, S).prim[0]
    rs = [r for r in R.elements if ring_prim[r] and r != R.zero]
    ms = [m for m in M.nonzero if prim[m]]
    for r in rs:
        for m in ms:
            x = int(M.act[r, m])
            if x >= 0 and x != M.zero and x in E and not prim[x]:
                return False, {"r": r, "m": m, "product": x}
    return True, None


def splits(M: Module, S: SatSet, E=None) -> bool:
    return analyze_subset(M, S, E).splits


# -- "R has P in E" -----------------------------------------------------------

def ring_has_in(R: Ring, E, prop: str):
    """``(flag, witness)`` for R having ``prop`` at every nonzero nonunit of E,
    with respect to S = R.  For présimplifiability every nonzero a in E is
    tested: a = r*a forces r to be a unit."""
    reg = regular_module(R)
    profiles = classify(reg, whole_ring(R)).profiles
    for a in sorted(E):
        if a == R.zero:
            continue
        if prop == "presimplifiable":
            if not profiles[a].presimplifiable:
                return False, {"a": a}
            continue
        if a in R.units:
            continue
        if not profiles[a].has(prop):
            return False, {"a": a}
    return True, None


def ring_presimplifiable_in(R: Ring, E) -> bool:
    return ring_has_in(R, E, "presimplifiable")[0]


def module_has(M: Module, S: SatSet, prop: str) -> bool:
    return bool(classify(M, S).flags[prop])


# -- checkers -----------------------------------------------------------------

SX_PROPERTIES = ("presimplifiable", "UFM", "FFM", "HFM", "BFM", "atomic")
_RING_PROP = {"presimplifiable": "presimplifiable", "UFM": "UF", "FFM": "FF",
              "HFM": "HF", "BFM": "BF", "atomic": "atomic"}


def check_prop_semi_elem(inst) -> list:
    """Parts 1-3 on E = M and on each singleton {m}."""
    M, S = inst.module, inst.S
    R = M.ring
    rel = relations(M, S)
    out = []
    subsets = [("M", frozenset(M.elements))] + [(f"{{{m}}}", frozenset([m])) for m in M.nonzero]
    for name, E in subsets:
        v = analyze_subset(M, S, E)

        def part1(E=E):
            bad = [m for m in sorted(E) if rel.prim[0][m]
                   and not (rel.rel[2][m, m] and rel.prim_by_definition[2][m] and rel.prim[2][m])]
            return {"very_strong_self_assoc": not bad}, [{"m": bad[0]}] if bad else []

        out.append(judge("prop_semi_elem", f"1:E={name}", inst.id,
                         {"E_semi_factorable": v.semi_factorable}, part1))
        out.append(judge("prop_semi_elem", f"2:E={name}", inst.id,
                         {"E_semi_factorable": v.semi_factorable, "S_misses_ZM": inst.S_misses_ZM},
                         lambda v=v: ({"E_factorable": v.factorable},
                                      [v.witnesses["factorable"]] if not v.factorable else [])))

    def part3():
        ZM = M.zero_divisor_set
        E = sorted(S.members - ZM)
        rr = ring_relations(R)
        ok_pre, w = ring_has_in(R, E, "presimplifiable")
        wit = [w] if w else []
        nonunits = [a for a in E if a not in R.units]
        irr_ok = all(len({bool(rr.irr[i][a]) for i in range(3)}) == 1 for a in nonunits)
        assoc_ok = all(len({bool(rr.rel[i][a, b]) for i in range(3)}) == 1 for a in E for b in E)
        return {"ring_presimplifiable_in_S_minus_ZM": ok_pre, "irreducibility_kinds_agree": irr_ok,
                "associate_kinds_agree": assoc_ok}, wit

    out.append(judge("prop_semi_elem", "3", inst.id, {"M_semi_factorable": inst.semi_factorable},
                     part3))
    return out


def _sx_pair(inst, prop):
    M, S = inst.module, inst.S
    E = S.members - M.annihilator
    mod = module_has(M, S, prop)
    ring, w = ring_has_in(M.ring, E, _RING_PROP[prop])
    return mod, ring, w


def check_thm_SX(inst) -> list:
    M, S = inst.module, inst.S
    out = []
    E = S.members - M.annihilator
    for prop in SX_PROPERTIES:
        def both(prop=prop):
            mod, ring, w = _sx_pair(inst, prop)
            return {"module_iff_ring": mod == ring}, [{"module": mod, "ring": ring, "ring_witness": w}]

        def fwd(prop=prop):
            mod, ring, w = _sx_pair(inst, prop)
            return {"module_implies_ring": implies(mod, ring)}, [{"module": mod, "ring": ring}]

        def back(prop=prop):
            mod, ring, w = _sx_pair(inst, prop)
            return {"ring_implies_module": implies(ring, mod)}, [{"module": mod, "ring": ring}]

        out.append(judge("thm_SX", prop, inst.id,
                         {"M_semi_factorable": inst.semi_factorable, "S_misses_ZM": inst.S_misses_ZM},
                         both))
        if prop in ("BFM", "presimplifiable"):
            out.append(judge("rem_SX", f"forward:{prop}", inst.id, {}, fwd))
        else:
            out.append(judge("rem_SX", f"forward:{prop}", inst.id,
                             {"M_semi_factorable": inst.semi_factorable,
                              "ring_presimplifiable_in_S_minus_AnnM":
                                  lambda: ring_presimplifiable_in(M.ring, E)},
                             fwd))
        if prop in ("presimplifiable", "atomic", "HFM", "BFM"):
            out.append(judge("rem_SX", f"backward:{prop}", inst.id,
                             {"M_semi_factorable": inst.semi_factorable}, back))
        else:
            out.append(judge("rem_SX", f"backward:{prop}", inst.id,
                             {"M_factorable": inst.factorable}, back))
    return out


def check_cor_split_pre(inst) -> list:
    M, S = inst.module, inst.S

    def concl():
        ok, w = is_presimplifiable(M, S)
        return {"M_presimplifiable": ok}, ([{"s": w[0], "m": w[1]}] if w else [])

    return [judge("cor_split_pre", "", inst.id,
                  {"M_semi_factorable": inst.semi_factorable, "S_misses_ZM": inst.S_misses_ZM},
                  concl)]


def check_prop_M_split(inst) -> list:
    M, S, R = inst.module, inst.S, inst.ring
    hyps = {"S_splits_M": inst.splits,
            "Sp_minus_AnnM_compactly_S_atomic": lambda: inst.Sp_compactly_S_atomic}

    def concl():
        v = inst.E_prime_verdict
        flags = {"S_splits_Sp_minus_AnnM": v.splits}
        wit = [v.witnesses.get("splits")] if not v.splits else []
        if inst.S_prime.is_whole_ring:
            N = quotient_module(regular_module(R), sorted(M.annihilator))
            vq = analyze_subset(N, S)
            flags["S_splits_R_mod_AnnM"] = vq.splits
            if not vq.splits:
                wit.append(vq.witnesses.get("splits"))
        return flags, wit

    return [judge("prop_M_split", "", inst.id, hyps, concl)]


# -- splitting multiplicative sets of domains ---------------------------------

def star_condition(R: Ring, S: SatSet, r: int):
    """``Rr ∩ Rt = Rtr`` for all t in S; returns ``(flag, failing t, x)``.

    On a partial (degree-bounded) ring the ideals are intersected with the
    carrier; when ``t*r`` leaves the carrier, ``Rtr`` meets it only in 0.
    """
    D = R.divides_matrix
    for t in sorted(S.members):
        tr = int(R.mul[t, r])
        both = D[r] & D[t]
        target = D[tr] if tr >= 0 else (np.arange(R.size) == R.zero)
        bad = np.nonzero(both & ~target)[0]
        if len(bad):
            return False, t, int(bad[0])
    return True, None, None


def anderson_splitting(R: Ring, S: SatSet):
    """Every x is a*s with s in S and a satisfying the star condition."""
    star = [star_condition(R, S, a)[0] for a in R.elements]
    for x in R.elements:
        if not any(star[a] and int(R.mul[a, s]) == x for s in S.members for a in R.elements):
            return False, {"x": x}
    return True, None


def check_splitting_equiv_domain(R: Ring, S: SatSet, instance_id: str = "") -> list:
    if not R.is_domain:
        raise NotDomain("the ring has zero divisors")
    reg = regular_module(R)
    prim = relations(reg, S).prim[0]

    def star_iff_primitive():
        bad = []
        for r in R.elements:
            if r == R.zero:
                continue
            ok = star_condition(R, S, r)[0]
            if ok != bool(prim[r]):
                bad.append({"r": r, "star": ok, "primitive": bool(prim[r])})
        return {"star_iff_primitive": not bad}, bad[:1]

    def equivalence():
        a, w = anderson_splitting(R, S)
        b = analyze_subset(reg, S).splits
        return {"splitting_set_iff_S_splits_R": a == b}, [{"anderson": a, "splits": b, "witness": w}]

    return [judge("thm_R_split_splitting", "star", instance_id, {"domain": True}, star_iff_primitive),
            judge("thm_R_split_splitting", "", instance_id, {"domain": True}, equivalence)]


def split_checks(inst) -> list:
    out = check_prop_semi_elem(inst) + check_thm_SX(inst) + check_cor_split_pre(inst)
    if inst.S_prime is not None:
        out += check_prop_M_split(inst)
    return out

