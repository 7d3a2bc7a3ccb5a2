"""Check reports, certificates and JSON helpers shared by the verifiers."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = "factorlab-report/1"

HOLDS, VACUOUS, VIOLATION = "holds", "vacuous", "VIOLATION"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "value"):
        return o.value
    raise TypeError(f"not serializable: {o!r}")


def content_id(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


@dataclass
class CheckReport:
    theorem: str
    part: str
    instance: str
    hypothesis_flags: dict
    conclusion_flags: dict
    witnesses: list = field(default_factory=list)
    status: str = VACUOUS

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "kind": "check", "theorem": self.theorem, "part": self.part,
                "instance": self.instance,
                "hypothesis_flags": dict(sorted(self.hypothesis_flags.items())),
                "conclusion_flags": dict(sorted(self.conclusion_flags.items())),
                "witnesses": self.witnesses, "status": self.status}


def judge(theorem, part, instance, hyps: dict, concl, witnesses=None) -> CheckReport:
    """Build a report.

    Hypothesis values may be callables; all are evaluated so vacuous cases are
    recorded.  ``concl`` may be a dict or a zero-argument callable returning a
    dict or ``(dict, witnesses)``; it is only evaluated when every hypothesis
    holds."""
    hyps = {k: bool(v() if callable(v) else v) for k, v in hyps.items()}
    if not all(hyps.values()):
        return CheckReport(theorem, part, instance, hyps, {}, [], VACUOUS)
    if callable(concl):
        concl = concl()
        if isinstance(concl, tuple):
            concl, witnesses = concl
    concl = {k: bool(v) for k, v in concl.items()}
    status = HOLDS if all(concl.values()) else VIOLATION
    return CheckReport(theorem, part, instance, hyps, concl, list(witnesses or []), status)


def implies(a: bool, b: bool) -> bool:
    return (not a) or b
