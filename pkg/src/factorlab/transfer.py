"""Checkers comparing factorization in M with respect to S' against M with
respect to S and the localization M_S with respect to T = S^-1 S'."""
from __future__ import annotations

from .factor import (IRR_KINDS, PAIRS, PRIM_KINDS, PrimKind, classify, compact_factorizations,
                     pair_name, relations, ring_relations)
from .modules import regular_module
from .report import implies, judge
from .split import analyze_subset, ring_has_in
from .catalog import Instance

TRANSFER_PROPERTIES = ("UFM", "FFM", "HFM", "BFM")
_RING_PROP = {"presimplifiable": "presimplifiable", "UFM": "UF", "FFM": "FF",
              "HFM": "HF", "BFM": "BF", "atomic": "atomic"}


def _E_prime(inst: Instance) -> list:
    return sorted(inst.S_prime.members - inst.module.annihilator)


def _outside_S(inst: Instance) -> list:
    """Elements of S' minus (S union Ann(M))."""
    return [y for y in _E_prime(inst) if y not in inst.S.members]


def _strict_hyps(inst: Instance) -> dict:
    return {"S_splits_M": inst.splits, "S_misses_ZM": inst.S_misses_ZM,
            "S_misses_ZR": inst.S_misses_ZR}


def check_prop_irr(inst: Instance) -> list:
    R, S = inst.ring, inst.S
    hyps = {"S_splits_Sp_minus_AnnM": lambda: inst.E_prime_verdict.splits,
            "S_misses_ZM": inst.S_misses_ZM, "S_misses_ZR": inst.S_misses_ZR}
    reg = regular_module(R)

    def concl():
        LM, _ = inst.localized
        LR = LM.loc_ring
        irr_R = ring_relations(R).irr
        irr_L = ring_relations(LR.ring).irr
        flags = {k.value: True for k in IRR_KINDS}
        wit = []
        for r in _E_prime(inst):
            if r in S.members:
                continue
            for s, a in compact_factorizations(reg, S, r):
                for i, kind in enumerate(IRR_KINDS):
                    lhs, rhs = bool(irr_L[i][LR.map_to(r)]), bool(irr_R[i][a])
                    if lhs != rhs:
                        flags[kind.value] = False
                        wit.append({"r": r, "s": s, "a": a, "kind": kind.value,
                                    "localized": lhs, "base": rhs})
        return flags, wit[:3]

    return [judge("prop_irr", "", inst.id, hyps, concl)]


def check_prop_prim(inst: Instance) -> list:
    M, S, Sp = inst.module, inst.S, inst.S_prime
    hyps = {"S_splits_M": inst.splits, "S_misses_ZM": inst.S_misses_ZM,
            "Sp_minus_AnnM_compactly_S_atomic": lambda: inst.Sp_compactly_S_atomic}

    def concl():
        LM, T = inst.localized
        prim_T = relations(LM.module, T).prim
        prim_Sp = relations(M, Sp).prim
        flags = {k.value: True for k in PRIM_KINDS}
        wit = []
        for m in M.nonzero:
            for s, n in compact_factorizations(M, S, m):
                for i, kind in enumerate(PRIM_KINDS):
                    lhs, rhs = bool(prim_T[i][LM.map_to(m)]), bool(prim_Sp[i][n])
                    if lhs != rhs:
                        flags[kind.value] = False
                        wit.append({"m": m, "s": s, "n": n, "kind": kind.value,
                                    "localized": lhs, "base": rhs})
        return flags, wit[:3]

    return [judge("prop_prim", "", inst.id, hyps, concl)]


def check_lemmas(inst: Instance) -> list:
    M, S, Sp, R = inst.module, inst.S, inst.S_prime, inst.ring
    out = []
    rel_S = relations(M, S)
    rel_Sp = relations(M, Sp)
    ring_prim_S = relations(regular_module(R), S).prim[0]
    irr = ring_relations(R).irr
    ys = _outside_S(inst)

    def prim_part():
        # the lemma assumes some alpha-irreducible s' outside S; its conclusion on m does not use it
        bad = [m for m in M.nonzero for j in range(3) if rel_Sp.prim[j][m] and not rel_S.prim[0][m]]
        return {"m_S_primitive": not bad}, [{"m": bad[0]}] if bad else []

    has_irr = any(irr[i][y] for y in ys for i in range(3))
    out.append(judge("lemma_prim", "1", inst.id,
                     {"M_semi_factorable": inst.semi_factorable, "irreducible_in_Sp_minus_S": has_irr},
                     prim_part))

    def scalar_part():
        bad = [y for y in ys if any(irr[i][y] for i in range(3)) and not ring_prim_S[y]]
        return {"s_prime_S_primitive": not bad}, [{"s_prime": bad[0]}] if bad else []

    has_m = any(rel_Sp.prim[j][m] for m in M.nonzero for j in range(3))
    out.append(judge("lemma_prim", "2", inst.id,
                     {"S_splits_M": inst.splits,
                      "Sp_minus_AnnM_compactly_S_atomic": lambda: inst.Sp_compactly_S_atomic,
                      "Sp_primitive_element": has_m},
                     scalar_part))

    bf_hyps = {"M_semi_factorable": inst.semi_factorable, "S_misses_ZM": inst.S_misses_ZM}

    def bf_part1():
        c = classify(M, Sp).flags
        ante = c["UFM"] or c["HFM"] or c["FFM"]
        return {"Sp_UF_HF_FF_implies_S_BFM": implies(ante, classify(M, S).flags["BFM"])}

    out.append(judge("lemma_bf", "1", inst.id, bf_hyps, bf_part1))

    def bf_part2():
        E = set(R.elements) - M.annihilator
        ca = analyze_subset(regular_module(R), S, E).compactly_atomic
        return {"S_BFM_implies_R_minus_AnnM_compactly_atomic":
                implies(classify(M, S).flags["BFM"], ca)}

    out.append(judge("lemma_bf", "2", inst.id, bf_hyps, bf_part2))

    def iso_part():
        LM, T = inst.localized
        LR = LM.loc_ring
        rr, rl = ring_relations(R), ring_relations(LR.ring)
        y_irr = [y for y in ys if irr[0][y]]
        bad = []
        for a in y_irr:
            for b in y_irr:
                if bool(rl.rel[0][LR.map_to(a), LR.map_to(b)]) != bool(rr.rel[0][a, b]):
                    bad.append({"y1": a, "y2": b})
        module_ok = True
        relT = relations(LM.module, T)
        ms = [m for m in M.nonzero if rel_Sp.prim[0][m]]
        for a in ms:
            for b in ms:
                if bool(relT.rel[0][LM.map_to(a), LM.map_to(b)]) != bool(rel_Sp.rel[0][a, b]):
                    module_ok = False
                    bad.append({"m1": a, "m2": b})
        return {"ring_associates_preserved": not [w for w in bad if "y1" in w],
                "module_associates_preserved": module_ok}, bad[:2]

    out.append(judge("lemma_iso", "", inst.id,
                     {**_strict_hyps(inst),
                      "Sp_minus_AnnM_compactly_S_atomic": lambda: inst.Sp_compactly_S_atomic},
                     iso_part))
    return out


def check_thm_atomic(inst: Instance) -> list:
    M, S, Sp = inst.module, inst.S, inst.S_prime
    base = {"S_splits_M": inst.splits,
            "Sp_minus_AnnM_compactly_S_atomic": lambda: inst.Sp_compactly_S_atomic}
    out = []

    def part1():
        flags = {}
        cSp, cS = classify(M, Sp).flags, classify(M, S).flags
        for a, b in PAIRS:
            flags[pair_name(a, b)] = implies(cSp[pair_name(a, b)],
                                             cS[pair_name(a, PrimKind.VERY_STRONGLY)])
        return flags

    out.append(judge("thm_atomic", "1", inst.id, base, part1))

    def part3():
        LM, T = inst.localized
        cSp, cS, cT = classify(M, Sp).flags, classify(M, S).flags, classify(LM.module, T).flags
        flags = {}
        for a, b in PAIRS:
            rhs = cS[pair_name(a, PrimKind.PRIMITIVE)] and cT[pair_name(a, b)]
            flags[pair_name(a, b)] = cSp[pair_name(a, b)] == rhs
        return flags

    out.append(judge("thm_atomic", "3", inst.id,
                     {**base, "S_misses_ZM": inst.S_misses_ZM, "S_misses_ZR": inst.S_misses_ZR},
                     part3))
    return out


def check_transfer(inst: Instance) -> list:
    M, S, Sp = inst.module, inst.S, inst.S_prime
    out = []
    for prop in ("presimplifiable",) + TRANSFER_PROPERTIES:
        def down(prop=prop):
            return {f"Sp_{prop}_implies_S_{prop}":
                    implies(classify(M, Sp).flags[prop], classify(M, S).flags[prop])}

        out.append(judge("thm_Sp_to_S", prop, inst.id,
                         {"M_semi_factorable": inst.semi_factorable, "S_misses_ZM": inst.S_misses_ZM},
                         down))

    for prop in TRANSFER_PROPERTIES + ("presimplifiable",):
        hyps = _strict_hyps(inst)
        if prop == "presimplifiable":
            hyps["Sp_minus_AnnM_compactly_S_atomic"] = lambda: inst.Sp_compactly_S_atomic

        def local(prop=prop):
            one, two, _ = _three_way(inst, prop)
            return {"Sp_iff_S_and_localized": one == two}, [{"Sp": one, "S_and_T": two}]

        out.append(judge("thm_S_and_localized", prop, inst.id, hyps, local))

    for prop in TRANSFER_PROPERTIES + ("presimplifiable", "atomic"):
        hyps = _strict_hyps(inst)
        if prop in ("presimplifiable", "atomic"):
            hyps["Sp_minus_AnnM_compactly_S_atomic"] = lambda: inst.Sp_compactly_S_atomic

        def three(prop=prop):
            one, two, three_ = _three_way(inst, prop)
            return ({"1_iff_2": one == two, "1_iff_3": one == three_},
                    [{"1": one, "2": two, "3": three_}])

        out.append(judge("cor_main", prop, inst.id, hyps, three))
    return out


def _three_way(inst: Instance, prop: str):
    M, S, Sp = inst.module, inst.S, inst.S_prime
    LM, T = inst.localized
    loc = classify(LM.module, T).flags[prop]
    one = classify(M, Sp).flags[prop]
    two = classify(M, S).flags[prop] and loc
    ring, _ = ring_has_in(inst.ring, S.members - M.annihilator, _RING_PROP[prop])
    return one, two, ring and loc


def transfer_checks(inst: Instance) -> list:
    return (check_prop_irr(inst) + check_prop_prim(inst) + check_lemmas(inst)
            + check_thm_atomic(inst) + check_transfer(inst))

