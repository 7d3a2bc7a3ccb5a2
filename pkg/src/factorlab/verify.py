"""Catalog-wide theorem verification with deterministic NDJSON output."""
from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter, defaultdict
from multiprocessing import get_context
from pathlib import Path

from .axb import axb_checks
from .catalog import Instance, instance_from_json, iter_instances, sample
from .config import RunConfig, resolve_checkpoint
from .factor import classify, relations
from .modules import regular_module
from .report import HOLDS, SCHEMA_VERSION, VACUOUS, VIOLATION, canonical_json, implies, judge
from .split import check_cor_split_pre, check_prop_M_split, check_prop_semi_elem, check_thm_SX
from .transfer import (check_lemmas, check_prop_irr, check_prop_prim, check_thm_atomic,
                       check_transfer)

log = logging.getLogger(__name__)


class CheckpointError(RuntimeError):
    pass


def check_lattice(inst: Instance) -> list:
    """Implications that hold on every instance without hypotheses."""
    M, S = inst.module, inst.S
    R = M.ring
    f = classify(M, S).flags
    rel = relations(M, S)
    out = [judge("remark_lattice", "properties", inst.id, {}, {
        "UFM_implies_FFM": implies(f["UFM"], f["FFM"]),
        "UFM_implies_HFM": implies(f["UFM"], f["HFM"]),
        "BFM_implies_presimplifiable": implies(f["BFM"], f["presimplifiable"]),
    })]

    def relations_coincide():
        same_rel = all((rel.rel[0] == r).all() for r in rel.rel[1:])
        same_prim = all((rel.prim[0] == p).all() for p in rel.prim[1:])
        return {"associate_kinds_coincide": same_rel, "primitivity_kinds_coincide": same_prim}

    out.append(judge("remark_lattice", "presimplifiable", inst.id,
                     {"M_presimplifiable": f["presimplifiable"]}, relations_coincide))

    def flavour_order():
        rel_ok = bool((rel.rel[2] <= rel.rel[1]).all() and (rel.rel[1] <= rel.rel[0]).all())
        prim_ok = bool((rel.prim[2] <= rel.prim[1]).all() and (rel.prim[1] <= rel.prim[0]).all())
        return {"associate_kinds_nested": rel_ok, "primitivity_kinds_nested": prim_ok}

    out.append(judge("remark_lattice", "flavours", inst.id, {}, flavour_order))

    def scalars_primitive():
        ring_rel = relations(regular_module(R), S)
        bad = [int(s) for s in S.members for i in range(3)
               if bool(ring_rel.prim[i][s]) != (s in R.units)]
        return {"scalar_primitive_iff_unit": not bad}, [{"s": bad[0]}] if bad else []

    out.append(judge("remark_lattice", "scalars", inst.id, {}, scalars_primitive))
    return out


# group name -> (checker, needs S' distinct from S)
THEOREMS = {
    "lattice": (check_lattice, False),
    "semi_elem": (check_prop_semi_elem, False),
    "SX": (check_thm_SX, False),
    "split_pre": (check_cor_split_pre, False),
    "M_split": (check_prop_M_split, True),
    "irr": (check_prop_irr, True),
    "prim": (check_prop_prim, True),
    "lemmas": (check_lemmas, True),
    "atomic": (check_thm_atomic, True),
    "transfer": (check_transfer, True),
}

# report names per group; a coverage warning fires for any with no non-vacuous instance
COVERAGE = {"lattice": ("remark_lattice",), "semi_elem": ("prop_semi_elem",),
            "SX": ("thm_SX", "rem_SX"), "split_pre": ("cor_split_pre",),
            "M_split": ("prop_M_split",), "irr": ("prop_irr",), "prim": ("prop_prim",),
            "lemmas": ("lemma_prim", "lemma_bf", "lemma_iso"), "atomic": ("thm_atomic",),
            "transfer": ("thm_Sp_to_S", "thm_S_and_localized", "cor_main"),
            "axb": ("thm_ex_splits", "thm_ex_main", "axb_compact", "axb_invariants", "cor_laurent")}


# groups checked once per run rather than per instance
GLOBAL = {"axb": lambda cfg: axb_checks(cfg.deg)}


def selected(theorems) -> list:
    if "all" in theorems:
        return list(THEOREMS) + list(GLOBAL)
    bad = [t for t in theorems if t not in THEOREMS and t not in GLOBAL]
    if bad:
        raise KeyError(f"unknown theorem group(s): {', '.join(bad)}")
    return list(theorems)


def run_instance(desc: dict, groups: list) -> list:
    """All records for one instance, as canonical JSON lines."""
    inst = instance_from_json(desc)
    first_for_S = inst.S_prime.members == inst.S.members
    lines = [canonical_json({"schema": SCHEMA_VERSION, "kind": "instance", "id": inst.id,
                             "desc": desc})]
    for g in groups:
        if g in GLOBAL:
            continue
        fn, needs_prime = THEOREMS[g]
        if not needs_prime and not first_for_S:
            continue
        lines.extend(canonical_json(rep.to_json()) for rep in fn(inst))
    return lines


def _worker(args):
    return run_instance(*args)


def catalog_descs(cfg: RunConfig) -> list:
    descs = [inst.to_json() for inst in iter_instances(cfg.max_ring, cfg.max_module)]
    return sample(descs, cfg.sample, cfg.seed)


def _ckpt_digest(state: dict) -> str:
    body = {k: v for k, v in state.items() if k != "checksum"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def load_checkpoint(path: Path, fingerprint: dict):
    if not path.exists():
        return None
    try:
        state = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(f"unreadable checkpoint {path}: {e}") from e
    if state.get("checksum") != _ckpt_digest(state):
        raise CheckpointError(f"checkpoint {path} failed its checksum; refusing to resume")
    if state.get("config") != fingerprint:
        raise CheckpointError(f"checkpoint {path} was written for a different configuration")
    return state


def save_checkpoint(path: Path, state: dict):
    state = dict(state)
    state["checksum"] = _ckpt_digest(state)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(canonical_json(state))
    tmp.replace(path)


class Summary:
    def __init__(self):
        self.counts = defaultdict(Counter)
        self.instances = 0
        self.violations = []

    def add(self, line: str):
        d = json.loads(line)
        if d["kind"] == "instance":
            self.instances += 1
            return
        key = d["theorem"]
        self.counts[key][d["status"]] += 1
        if d["status"] == VIOLATION:
            self.violations.append(d)

    def warnings(self, groups) -> list:
        wanted = set()
        for g in groups:
            wanted.update(COVERAGE[g])
        return [f"coverage: every instance is vacuous for {t}" for t in sorted(wanted)
                if self.counts[t][HOLDS] + self.counts[t][VIOLATION] == 0]

    def to_json(self, groups) -> dict:
        return {"schema": SCHEMA_VERSION, "kind": "summary", "instances": self.instances,
                "theorems": {t: {s: c[s] for s in (HOLDS, VACUOUS, VIOLATION)}
                             for t, c in sorted(self.counts.items())},
                "violations": len(self.violations), "warnings": self.warnings(groups)}

    def table(self) -> str:
        rows = [f"{'theorem':24} {'holds':>7} {'vacuous':>8} {'violations':>10}"]
        for t, c in sorted(self.counts.items()):
            rows.append(f"{t:24} {c[HOLDS]:7d} {c[VACUOUS]:8d} {c[VIOLATION]:10d}")
        return "\n".join(rows)


def run_verify(cfg: RunConfig, sink=None, progress=None) -> Summary:
    """Run the selected checkers over the catalog.

    Records go to ``sink`` (a writable text stream) in catalog order whatever
    the worker count.  With a checkpoint, completed instances are skipped on
    resume and their records are not re-emitted.
    """
    groups = selected(cfg.theorems)
    descs = catalog_descs(cfg)
    ckpt = resolve_checkpoint(cfg.checkpoint)
    summary = Summary()
    start = 0
    if ckpt is not None:
        state = load_checkpoint(ckpt, cfg.fingerprint())
        if state is not None:
            start = state["cursor"]
            summary.instances = state["instances"]
            for t, c in state["counts"].items():
                summary.counts[t].update(c)
            summary.violations = state["violations"]
            log.info("resuming at instance %d of %d", start, len(descs))
    todo = [(d, groups) for d in descs[start:]]
    if start == 0:
        for g in groups:
            if g in GLOBAL:
                lines = []
                for rep in GLOBAL[g](cfg):
                    lines.append(canonical_json(rep.to_json()))
                for line in lines:
                    summary.add(line)
                    if sink is not None:
                        sink.write(line + "\n")

    def consume(i, lines):
        for line in lines:
            summary.add(line)
            if sink is not None:
                sink.write(line + "\n")
        if ckpt is not None and (i + 1) % 50 == 0:
            save_checkpoint(ckpt, _state(cfg, start + i + 1, summary))
        if progress is not None:
            progress(start + i + 1, len(descs))

    if cfg.workers > 1 and len(todo) > 1:
        with get_context("spawn").Pool(cfg.workers) as pool:
            for i, lines in enumerate(pool.imap(_worker, todo, chunksize=4)):
                consume(i, lines)
    else:
        for i, args in enumerate(todo):
            consume(i, _worker(args))
    if ckpt is not None:
        save_checkpoint(ckpt, _state(cfg, len(descs), summary))
    return summary


def _state(cfg, cursor, summary) -> dict:
    return {"schema": SCHEMA_VERSION, "config": cfg.fingerprint(), "cursor": cursor,
            "instances": summary.instances,
            "counts": {t: dict(c) for t, c in summary.counts.items()},
            "violations": summary.violations}
