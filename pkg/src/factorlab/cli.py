"""Command-line workbench.

Exit codes: 0 clean, 1 usage error, 2 evaluation error, 3 theorem violation.
"""
from __future__ import annotations

import argparse
import contextlib
import logging
import sys

from . import dsl
from .axb import HeightOverflow, axb_nonbfd_witness, ex_splits_report, zq_factorization_valid
from .catalog import Instance
from .config import RunConfig
from .factor import (ASSOC_KINDS, IRR_KINDS, PRIM_KINDS, classify, enumerate_factorizations,
                     factorizations_up_to_iso, relations)
from .hunt import HuntSpec, PredicateError, hunt
from .localization import LocalizationError, induce_T, localize_module, localize_ring
from .report import SCHEMA_VERSION, VIOLATION, canonical_json
from .satsets import is_satset
from .split import analyze_subset, split_checks
from .verify import CheckpointError, run_verify, selected

log = logging.getLogger("factorlab")

EXIT_OK, EXIT_USAGE, EXIT_EVAL, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _record(kind: str, **fields) -> dict:
    return {"schema": SCHEMA_VERSION, "kind": kind, **fields}


class Output:
    """Single funnel for everything the CLI writes."""

    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.path = getattr(args, "out", None)
        self._file = None

    def __enter__(self):
        if self.path:
            self._file = open(self.path, "w", encoding="utf-8")
        return self

    def __exit__(self, *exc):
        if self._file:
            self._file.close()

    @property
    def stream(self):
        """Where streamed NDJSON records go, or None."""
        if self._file:
            return self._file
        return sys.stdout if self.json else None

    def emit(self, record: dict, text: str = ""):
        line = canonical_json(record)
        if self._file:
            self._file.write(line + "\n")
        if self.json:
            print(line)
        elif text:
            print(text)


# -- argument helpers ---------------------------------------------------------

def _ring(args, text):
    return dsl.eval_ring(dsl.parse(text), getattr(args, "deg", None))


def _finite(R):
    if isinstance(R, dsl.ZQRing):
        raise dsl.EvaluationError("axb(Z, Q) supports witness checking only; "
                                  "use split-check or factor with [0, 1]")
    return R


def _rms(args):
    R = _finite(_ring(args, args.ring))
    M = dsl.eval_module(dsl.parse(args.module), R)
    S = dsl.eval_set(dsl.parse(args.set), R)
    return R, M, S


def _element(text, R, M):
    # coefficient lists only make sense when module elements are ring elements
    return dsl.parse_element(text, R if M.construction.get("kind") == "regular" else M)


def _flag_table(flags: dict) -> str:
    w = max(len(k) for k in flags)
    return "\n".join(f"  {k:<{w}}  {'yes' if v else 'no'}" for k, v in sorted(flags.items()))


# -- subcommands --------------------------------------------------------------

def cmd_parse(args, out):
    node = dsl.parse(args.expr)
    kind = dsl.infer(node)
    out.emit(_record("parse", input=args.expr, rendered=dsl.render(node), type=kind,
                     ast=dsl.to_json(node)),
             f"{dsl.render(node)}  : {kind}")
    return EXIT_OK


def cmd_describe(args, out):
    node = dsl.parse(args.expr)
    kind = dsl.infer(node)
    val = dsl.evaluate(node, args.deg)
    rec = _record("describe", expr=dsl.render(node), type=kind)
    if isinstance(val, dsl.ZQRing):
        rec.update(size=None, construction=val.to_json(),
                   summary=f"Z + XQ[X] with height bound {val.height}; witness checking only")
    elif kind == "ring":
        rec.update(size=val.size, construction=val.construction, units=sorted(val.units),
                   zero_divisors=sorted(_ring_zd(val)), is_domain=val.is_domain,
                   summary=f"ring of size {val.size} with {len(val.units)} units")
    elif kind == "module":
        rec.update(size=val.size, construction=val.construction,
                   annihilator=sorted(val.annihilator),
                   zero_divisors=sorted(val.zero_divisor_set),
                   summary=f"module of size {val.size} over a ring of size {val.ring.size}")
    else:
        rec.update(size=len(val), members=sorted(val.members), nonunits=val.nonunits,
                   summary=f"saturated set with {len(val)} members, {len(val.nonunits)} nonunits")
    text = [rec["summary"]]
    for k in ("units", "zero_divisors", "annihilator", "members"):
        if k in rec:
            text.append(f"  {k}: {rec[k]}")
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def _ring_zd(R):
    from .modules import regular_module
    return regular_module(R).zero_divisor_set


def cmd_classify(args, out):
    R, M, S = _rms(args)
    rep = classify(M, S)
    verdict = analyze_subset(M, S)
    rec = _record("classify", ring=R.construction, module=M.construction, S=sorted(S.members),
                  **rep.to_json(), split=verdict.to_json())
    text = ["properties:", _flag_table(rep.flags), "subset flags:", _flag_table(verdict.flags)]
    for k, w in sorted(rep.witnesses.items()):
        text.append(f"  witness {k}: {w}")
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def cmd_factor(args, out):
    R = _ring(args, args.ring)
    if isinstance(R, dsl.ZQRing):
        return _factor_zq(args, R, out)
    R, M, S = _rms(args)
    m = _element(args.element, R, M)
    alpha = IRR_KINDS[[k.value for k in IRR_KINDS].index(args.alpha)]
    beta = PRIM_KINDS[[k.value for k in PRIM_KINDS].index(args.beta)]
    enum = enumerate_factorizations(M, S, m, args.mode, alpha, beta, args.max_len)
    iso = None
    if args.mode == "atomic" and enum.status == "complete":
        iso = len(factorizations_up_to_iso(enum.factorizations, M, S))
    rec = _record("factor", element=m, mode=args.mode, alpha=alpha.value, beta=beta.value,
                  iso_classes=iso, **enum.to_json())
    lab_r, lab_m = R.labels, M.labels
    text = [f"{lab_m[m]}: {len(enum.factorizations)} factorization(s), {enum.status}"]
    for f in enum.factorizations:
        parts = [lab_r[s] for s in f.scalars] + [lab_m[f.tail]]
        text.append("  " + " * ".join(parts))
    if enum.cycle:
        text.append(f"  cycle: {' -> '.join(str(x) for x in enum.cycle)}")
    if iso is not None:
        text.append(f"  isomorphism classes: {iso}")
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def _factor_zq(args, R, out):
    target = dsl.parse_element(args.element, R)
    if [str(c) for c in target] != ["0", "1"]:
        raise dsl.EvaluationError("on axb(Z, Q) only the element X = [0, 1] has built-in witnesses")
    facs = []
    for k in range(1, (args.max_len or 10) + 1):
        try:
            fac = axb_nonbfd_witness(k, R.height)
        except HeightOverflow:
            break
        if not zq_factorization_valid(fac):
            raise dsl.EvaluationError(f"witness for k={k} failed to recompute")
        facs.append(fac)
    rec = _record("factor", element=[0, 1], mode="all", status="truncated", iso_classes=None,
                  factorizations=[f.to_json() for f in facs])
    text = [f"X: {len(facs)} verified factorization(s) within height {R.height}"]
    text += [f"  2^{f.length} * ({f.tail[1]})X" for f in facs]
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def cmd_assoc(args, out):
    R, M, S = _rms(args)
    m, n = (_element(x, R, M) for x in (args.m, args.n))
    rel = relations(M, S)
    flags = {k.value: bool(rel.rel[i][m, n]) for i, k in enumerate(ASSOC_KINDS)}
    out.emit(_record("assoc", m=m, n=n, relations=flags),
             f"{M.labels[m]} vs {M.labels[n]}\n" + _flag_table(flags))
    return EXIT_OK


def cmd_localize(args, out):
    R = _finite(_ring(args, args.ring))
    S = dsl.eval_set(dsl.parse(args.set), R)
    LR = localize_ring(R, S)
    rec = _record("localize", S=sorted(S.members), ring=LR.to_json(), size=LR.ring.size,
                  injective=LR.is_injective())
    text = [f"R_S has {LR.ring.size} elements; R -> R_S is "
            f"{'injective' if LR.is_injective() else 'not injective'}",
            f"  map: {LR.map_table}"]
    if args.module:
        M = dsl.eval_module(dsl.parse(args.module), R)
        LM = localize_module(M, S)
        rec["module"] = {**LM.to_json(), "size": LM.module.size, "injective": LM.is_injective()}
        text.append(f"M_S has {LM.module.size} elements; map: {LM.map_table}")
    if args.prime:
        Sp = dsl.eval_set(dsl.parse(args.prime), R)
        T = induce_T(LR, S, Sp)
        rec["T"] = sorted(T.members)
        rec["T_is_satset"] = is_satset(LR.ring, T.members)
        text.append(f"T = {sorted(T.members)} (saturated: {rec['T_is_satset']})")
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def cmd_split_check(args, out):
    R = _ring(args, args.ring)
    if isinstance(R, dsl.ZQRing):
        checks = ex_splits_report(("Z", "Q"))
        verdict = None
    else:
        R, M, S = _rms(args)
        Sp = dsl.eval_set(dsl.parse(args.prime), R) if args.prime else S
        if not S.members <= Sp.members:
            raise UsageError("--prime must contain S")
        inst = Instance(R, M, S, Sp)
        checks = split_checks(inst)
        if R.construction.get("kind") == "axb" and args.set == "satX":
            c = R.construction
            checks += ex_splits_report((c["A"]["q"], c["B"]["q"]), c["deg"], inst.id)
        verdict = inst.verdict.to_json()
    rec = _record("split_check", verdict=verdict, checks=[c.to_json() for c in checks])
    text = []
    if verdict:
        text += ["subset flags:", _flag_table(verdict["flags"])]
    for c in checks:
        text.append(f"  {c.theorem:16} {c.part:14} {c.status}")
    out.emit(rec, "\n".join(text))
    bad = [c for c in checks if c.status == VIOLATION]
    if bad:
        _certificate([c.to_json() for c in bad])
        return EXIT_VIOLATION
    return EXIT_OK


def _certificate(records):
    for r in records:
        print("VIOLATION " + canonical_json(r), file=sys.stderr)


def _bounds(args):
    if args.catalog:
        parts = [int(x) for x in args.catalog.split(",")]
        if len(parts) not in (1, 2):
            raise UsageError("--catalog takes RING or RING,MODULE")
        return parts[0], parts[-1]
    return args.max_ring, args.max_module


def cmd_verify(args, out):
    max_ring, max_module = _bounds(args)
    try:
        cfg = RunConfig(max_ring=max_ring, max_module=max_module, deg=args.deg or 4,
                        workers=args.workers, seed=args.seed, sample=args.sample,
                        theorems=tuple(t.strip() for t in args.theorems.split(",")),
                        out=args.out, checkpoint=args.checkpoint)
        groups = selected(cfg.theorems)
    except (ValueError, KeyError) as e:
        raise UsageError(str(e).strip("'")) from e
    summary = run_verify(cfg, sink=out.stream)
    rec = summary.to_json(groups)
    out.emit(rec, summary.table())
    for w in rec["warnings"]:
        log.warning(w)
    if summary.violations:
        _certificate(summary.violations)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_hunt(args, out):
    try:
        spec = HuntSpec(args.spec, args.max_ring, args.max_module, args.limit)
    except (PredicateError, ValueError) as e:
        raise UsageError(str(e)) from e
    res = hunt(spec, sink=out.stream, checkpoint=args.checkpoint)
    rec = res.summary()
    text = [rec["statement"]]
    if not out.json and not out.path:
        for w in res.witnesses[:20]:
            text.append(f"  {w['id']}  {canonical_json(w['desc'])}")
    out.emit(rec, "\n".join(text))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--out", help="also write JSON records to this file")
    common.add_argument("--deg", type=int, help="default degree bound for axb/laurent fragments")

    p = _Parser(prog="factorlab", description="Factorization workbench for finite modules")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="parse and type-check an expression")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("describe", parents=[common], help="summarize a ring, module@ring or set@ring")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_describe)

    def rms(s):
        s.add_argument("ring")
        s.add_argument("module")
        s.add_argument("set")

    s = sub.add_parser("classify", parents=[common], help="decide every factorization property")
    rms(s)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("factor", parents=[common], help="enumerate S-factorizations of an element")
    rms(s)
    s.add_argument("element", help="element id, or coefficient list on axb rings")
    s.add_argument("--mode", choices=["all", "atomic", "compact"], default="atomic")
    s.add_argument("--alpha", choices=[k.value for k in IRR_KINDS], default="irreducible")
    s.add_argument("--beta", choices=[k.value for k in PRIM_KINDS], default="primitive")
    s.add_argument("--max-len", type=int)
    s.set_defaults(fn=cmd_factor)

    s = sub.add_parser("assoc", parents=[common], help="compare two elements under the associate relations")
    rms(s)
    s.add_argument("m")
    s.add_argument("n")
    s.set_defaults(fn=cmd_assoc)

    s = sub.add_parser("localize", parents=[common], help="localize a ring (and module) at a set")
    s.add_argument("ring")
    s.add_argument("set")
    s.add_argument("--module")
    s.add_argument("--prime", help="a larger saturated set S'; reports the induced T")
    s.set_defaults(fn=cmd_localize)

    s = sub.add_parser("split-check", parents=[common], help="splitting verdict and its checks")
    rms(s)
    s.add_argument("--prime", help="a larger saturated set S' (default: S)")
    s.set_defaults(fn=cmd_split_check)

    def bounds(s, default):
        s.add_argument("--max-ring", type=int, default=default)
        s.add_argument("--max-module", type=int, default=default)
        s.add_argument("--checkpoint", help="resume file; relative paths go under FACTORLAB_CACHE_DIR")

    s = sub.add_parser("verify", parents=[common], help="run theorem checks over the catalog")
    bounds(s, 8)
    s.add_argument("--catalog", help="bounds as RING[,MODULE]; overrides --max-ring/--max-module")
    s.add_argument("--theorems", default="all")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sample", type=int, help="check a seeded sample of this many instances")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("hunt", parents=[common], help="search the catalog for a predicate")
    bounds(s, 8)
    s.add_argument("--spec", required=True, help="e.g. \"HFM && !FFM\"")
    s.add_argument("--limit", type=int, help="stop after this many witnesses")
    s.add_argument("--workers", type=int, default=1, help="accepted for symmetry; the scan is sequential")
    s.add_argument("--seed", type=int, default=0, help="unused; enumeration is deterministic")
    s.set_defaults(fn=cmd_hunt)
    return p


def _fail(args, code: int, err: Exception):
    if isinstance(err, dsl.DslError):
        rec = _record("error", **err.to_json(), exit_code=code)
    else:
        rec = _record("error", error=type(err).__name__, message=str(err), exit_code=code)
    if getattr(args, "json", False):
        print(canonical_json(rec))
    print(f"error: {err}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with Output(args) as out:
            return args.fn(args, out)
    except (UsageError, dsl.DslError) as e:
        return _fail(args, EXIT_USAGE, e)
    except (dsl.EvaluationError, CheckpointError, LocalizationError, ValueError, OSError) as e:
        return _fail(args, EXIT_EVAL, e)


if __name__ == "__main__":
    with contextlib.suppress(BrokenPipeError):
        sys.exit(main())
