"""Bounded exhaustive search for instances satisfying a boolean predicate.

Predicates combine named deciders with ``!``, ``&&``, ``||`` and parentheses
(``not``/``and``/``or`` also work).  A trailing ``'`` evaluates a module
property with respect to S' instead of S; ``loc_`` prefixes evaluate it on
M_S with respect to T.  "Not found" only ever means "not found within the
logged bounds".
"""
from __future__ import annotations

import re
from dataclasses import asdict, dataclass

from .catalog import Instance, iter_instances
from .config import resolve_checkpoint
from .factor import PAIRS, classify, pair_name
from .localization import CollapsedToZero
from .report import SCHEMA_VERSION, canonical_json
from .verify import load_checkpoint, save_checkpoint

MODULE_PROPS = ("presimplifiable", "atomic", "BFM", "FFM", "HFM", "UFM")
SUBSET_PROPS = ("compactly_atomic", "semi_factorable", "factorable", "splits")
SET_PROPS = ("S_meets_ZM", "S_meets_ZR", "S_is_units", "S_is_R", "Sp_minus_AnnM_compactly_S_atomic")
PAIR_PROPS = tuple(pair_name(a, b).replace("(", "_").replace(",", "_").rstrip(")") for a, b in PAIRS)

NEGATIVE_CONTROLS = ("BFM && !presimplifiable", "UFM && !FFM", "UFM && !HFM",
                     "factorable && !semi_factorable", "splits && !semi_factorable")


class PredicateError(ValueError):
    def __init__(self, message, offset=0):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


# -- predicate AST ------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str
    primed: bool = False
    localized: bool = False

    def render(self) -> str:
        return ("loc_" if self.localized else "") + self.name + ("'" if self.primed else "")


@dataclass(frozen=True)
class Not:
    arg: object

    def render(self) -> str:
        return "!" + _wrap(self.arg)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def render(self) -> str:
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


def _wrap(node) -> str:
    return node.render() if isinstance(node, (Atom, Not)) else f"({node.render()})"


_TOK = re.compile(r"\s*(&&|\|\||!|\(|\)|[A-Za-z_][A-Za-z_0-9]*'?)")
_WORDS = {"and": "&&", "or": "||", "not": "!"}


def _lex(text: str):
    text = text.replace("∧", "&&").replace("∨", "||").replace("¬", "!")
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOK.match(text, pos)
        if m is None:
            raise PredicateError(f"unexpected {text[pos:].strip()[:1]!r}", pos)
        tok = m.group(1)
        out.append((_WORDS.get(tok, tok), m.start(1)))
        pos = m.end()
    out.append(("", len(text)))
    return out


def parse_predicate(text: str):
    toks = _lex(text)
    i = 0

    def peek():
        return toks[i][0]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def disj():
        node = conj()
        while peek() == "||":
            take()
            node = BinOp("||", node, conj())
        return node

    def conj():
        node = unary()
        while peek() == "&&":
            take()
            node = BinOp("&&", node, unary())
        return node

    def unary():
        if peek() == "!":
            take()
            return Not(unary())
        if peek() == "(":
            take()
            node = disj()
            if peek() != ")":
                raise PredicateError("expected ')'", toks[i][1])
            take()
            return node
        tok, off = take()
        if not tok or tok in ("&&", "||", ")"):
            raise PredicateError("expected a property name", off)
        return _atom(tok, off)

    node = disj()
    if peek():
        raise PredicateError(f"unexpected {peek()!r}", toks[i][1])
    return node


def _atom(tok: str, off: int) -> Atom:
    primed = tok.endswith("'")
    name = tok.rstrip("'")
    localized = name.startswith("loc_")
    if localized:
        name = name[4:]
    if name in MODULE_PROPS or name in PAIR_PROPS:
        if primed and localized:
            raise PredicateError("a property is primed or localized, not both", off)
        return Atom(name, primed, localized)
    if name in SUBSET_PROPS or name in SET_PROPS:
        if primed or localized:
            raise PredicateError(f"{name} takes no ' or loc_ modifier", off)
        return Atom(name)
    known = ", ".join(MODULE_PROPS + SUBSET_PROPS + SET_PROPS)
    raise PredicateError(f"unknown property {name!r} (known: {known}, atomic_<irr>_<prim>)", off)


def atoms(node) -> set:
    if isinstance(node, Atom):
        return {node}
    if isinstance(node, Not):
        return atoms(node.arg)
    return atoms(node.left) | atoms(node.right)


def needs_prime(node) -> bool:
    return any(a.primed or a.localized or a.name == "Sp_minus_AnnM_compactly_S_atomic"
               for a in atoms(node))


# -- evaluation ---------------------------------------------------------------

def _flag_key(name: str) -> str:
    if name in MODULE_PROPS:
        return name
    _, irr, prim = name.split("_", 2)
    return f"atomic({irr},{prim})"


def atom_value(inst: Instance, a: Atom) -> bool:
    M, S, R = inst.module, inst.S, inst.ring
    if a.name in MODULE_PROPS or a.name in PAIR_PROPS:
        key = _flag_key(a.name)
        if a.localized:
            LM, T = inst.localized
            return bool(classify(LM.module, T).flags[key])
        return bool(classify(M, inst.S_prime if a.primed else S).flags[key])
    if a.name in SUBSET_PROPS:
        return bool(inst.verdict.flags[a.name])
    if a.name == "S_meets_ZM":
        return not inst.S_misses_ZM
    if a.name == "S_meets_ZR":
        return not inst.S_misses_ZR
    if a.name == "S_is_units":
        return S.members == R.units
    if a.name == "S_is_R":
        return S.is_whole_ring
    return inst.Sp_compactly_S_atomic


def evaluate(node, inst: Instance) -> bool:
    if isinstance(node, Atom):
        return atom_value(inst, node)
    if isinstance(node, Not):
        return not evaluate(node.arg, inst)
    if node.op == "&&":
        return evaluate(node.left, inst) and evaluate(node.right, inst)
    return evaluate(node.left, inst) or evaluate(node.right, inst)


# -- search -------------------------------------------------------------------

@dataclass(frozen=True)
class HuntSpec:
    predicate: str
    max_ring: int = 8
    max_module: int = 8
    limit: int | None = None  # stop after this many witnesses

    def __post_init__(self):
        if self.max_ring < 1 or self.max_module < 1:
            raise ValueError("bounds must be positive")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive")
        parse_predicate(self.predicate)

    @property
    def ast(self):
        return parse_predicate(self.predicate)

    def fingerprint(self) -> dict:
        d = asdict(self)
        d["predicate"] = self.ast.render()
        return d


@dataclass
class HuntResult:
    spec: HuntSpec
    searched: int
    witnesses: list
    stopped_early: bool
    skipped: int = 0  # instances whose localization collapses to zero

    def summary(self) -> dict:
        return {"schema": SCHEMA_VERSION, "kind": "hunt_summary",
                "predicate": self.spec.ast.render(),
                "bounds": {"max_ring": self.spec.max_ring, "max_module": self.spec.max_module},
                "searched": self.searched, "skipped": self.skipped,
                "found": len(self.witnesses),
                "exhaustive": not self.stopped_early,
                "statement": self.statement()}

    def statement(self) -> str:
        b = f"rings of size <= {self.spec.max_ring}, modules of size <= {self.spec.max_module}"
        if self.skipped:
            b += f"; {self.skipped} instances with a zero localization skipped"
        if self.witnesses:
            return f"{len(self.witnesses)} witness(es) among {self.searched} instances ({b})"
        return f"no witness among {self.searched} instances ({b}); bounded search only"


def witness_record(inst: Instance, node) -> dict:
    return {"schema": SCHEMA_VERSION, "kind": "witness", "id": inst.id, "desc": inst.to_json(),
            "ring_size": inst.ring.size, "module_size": inst.module.size,
            "atoms": {a.render(): atom_value(inst, a) for a in sorted(atoms(node), key=Atom.render)}}


def hunt(spec: HuntSpec, sink=None, checkpoint: str | None = None) -> HuntResult:
    """Scan the catalog in its fixed order, streaming witness records to ``sink``."""
    node = spec.ast
    ckpt = resolve_checkpoint(checkpoint)
    start, found, skipped = 0, [], 0
    if ckpt is not None:
        state = load_checkpoint(ckpt, spec.fingerprint())
        if state is not None:
            start, found, skipped = state["cursor"], state["witnesses"], state["skipped"]
    searched = start
    stopped = False
    for i, inst in enumerate(iter_instances(spec.max_ring, spec.max_module,
                                            with_prime=needs_prime(node))):
        if i < start:
            continue
        searched = i + 1
        try:
            hit = evaluate(node, inst)
        except CollapsedToZero:
            skipped += 1
            continue
        if hit:
            rec = witness_record(inst, node)
            found.append(rec)
            if sink is not None:
                sink.write(canonical_json(rec) + "\n")
        if ckpt is not None and searched % 200 == 0:
            save_checkpoint(ckpt, _state(spec, searched, found, skipped))
        if spec.limit is not None and len(found) >= spec.limit:
            stopped = True
            break
    if ckpt is not None:
        save_checkpoint(ckpt, _state(spec, searched, found, skipped))
    return HuntResult(spec, searched, found, stopped, skipped)


def _state(spec, cursor, found, skipped) -> dict:
    return {"schema": SCHEMA_VERSION, "config": spec.fingerprint(), "cursor": cursor,
            "witnesses": found, "skipped": skipped}
