"""Associates, primitivity, irreducibility and S-factorizations.

Everything is decided by exhaustive scans over the operation tables.  The
factor graph has an edge ``m -> n`` labelled ``s`` whenever ``m = s*n`` with
``s`` a nonunit of ``S``; walks from ``m`` are exactly the S-factorizations
of ``m`` (the label sequence plus the end node as tail).  An edge out of a
nonzero node never reaches 0, so nonzero targets only see nonzero nodes.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import networkx as nx
import numpy as np

from .modules import Module, regular_module
from .rings import Ring
from .satsets import SatSet, whole_ring


class AssocKind(str, Enum):
    ASSOC = "assoc"
    STRONG = "strong"
    VERY_STRONG = "very_strong"


class PrimKind(str, Enum):
    PRIMITIVE = "primitive"
    STRONGLY = "strongly_primitive"
    VERY_STRONGLY = "very_strongly_primitive"


class IrrKind(str, Enum):
    IRREDUCIBLE = "irreducible"
    STRONGLY = "strongly_irreducible"
    VERY_STRONGLY = "very_strongly_irreducible"


ASSOC_KINDS = list(AssocKind)
PRIM_KINDS = list(PrimKind)
IRR_KINDS = list(IrrKind)
PAIRS = [(a, b) for a in IRR_KINDS for b in PRIM_KINDS]
ATOMIC = (IrrKind.IRREDUCIBLE, PrimKind.PRIMITIVE)


def _level(kind) -> int:
    for kinds in (ASSOC_KINDS, PRIM_KINDS, IRR_KINDS):
        if kind in kinds:
            return kinds.index(kind)
    return ASSOC_KINDS.index(AssocKind(kind))


class UnitInput(ValueError):
    """Irreducibility is only defined for nonunits."""


class Relations:
    """The three S-associate relations and S-primitivity flavours on M."""

    def __init__(self, M: Module, S: SatSet):
        self.M, self.S = M, S
        R = M.ring
        k = M.size
        idx = np.arange(k)
        self.scalars = np.array(sorted(S.members), dtype=np.int64)
        self.unit_scalars = [s for s in self.scalars if s in R.units]
        self.nonunit_scalars = [int(s) for s in self.scalars if s not in R.units]
        O = np.zeros((k, k), dtype=bool)
        OU = np.zeros((k, k), dtype=bool)
        NU = np.zeros((k, k), dtype=bool)
        for s in self.scalars:
            col = M.act[s]
            ok = col >= 0
            O[col[ok], idx[ok]] = True
            (OU if s in R.units else NU)[col[ok], idx[ok]] = True
        self.reach = O  # reach[m, n]: m = s*n for some s in S
        self.nonunit_reach = NU
        assoc = O & O.T
        both_zero = np.zeros((k, k), dtype=bool)
        both_zero[M.zero, M.zero] = True
        self.rel = [assoc, OU, assoc & (~NU | both_zero)]
        prim = []
        for rel in self.rel:
            p = np.ones(k, dtype=bool)
            for s in self.scalars:
                col = M.act[s]
                ok = col >= 0
                bad = ok.copy()
                bad[ok] = ~rel[idx[ok], col[ok]]  # need n ~ m for m = s*n
                p[col[bad]] = False
            prim.append(p)
        self.prim_by_definition = prim
        # very strong primitivity of a nonzero m: no writing m = s*m' with s a nonunit
        vs = ~NU.any(axis=1)
        vs[M.zero] = prim[2][M.zero]
        self.prim = [prim[0], prim[1], vs]
        self.assoc_class = np.argmax(assoc, axis=1)  # least index in the class

    def associates(self, m: int, n: int, kind=AssocKind.ASSOC) -> bool:
        return bool(self.rel[_level(kind)][m, n])

    def is_primitive(self, m: int, kind=PrimKind.PRIMITIVE) -> bool:
        return bool(self.prim[_level(kind)][m])


class RingRelations(Relations):
    """Full-ring (S = R) relations on R as a module over itself, plus irreducibility."""

    def __init__(self, R: Ring):
        super().__init__(regular_module(R), whole_ring(R))
        n = R.size
        idx = np.arange(n)
        nonunit = np.array([a not in R.units for a in R.elements])
        self.irr = []
        for rel in self.rel:
            irr = nonunit.copy()
            for b in R.elements:
                col = R.mul[b]
                ok = col >= 0
                a, c = col[ok], idx[ok]
                good = rel[a, b] | rel[a, c]
                irr[a[~good]] = False
            self.irr.append(irr)

    def is_irreducible(self, a: int, kind=IrrKind.IRREDUCIBLE) -> bool:
        if a in self.M.ring.units:
            raise UnitInput(f"{a} is a unit")
        return bool(self.irr[_level(kind)][a])


@lru_cache(maxsize=None)
def relations(M: Module, S: SatSet) -> Relations:
    return Relations(M, S)


@lru_cache(maxsize=None)
def ring_relations(R: Ring) -> RingRelations:
    return RingRelations(R)


def associates(M, S, m, n, kind=AssocKind.ASSOC) -> bool:
    return relations(M, S).associates(m, n, kind)


def is_primitive(M, S, m, kind=PrimKind.PRIMITIVE) -> bool:
    return relations(M, S).is_primitive(m, kind)


def is_irreducible(R, a, kind=IrrKind.IRREDUCIBLE) -> bool:
    return ring_relations(R).is_irreducible(a, kind)


def ring_associates(R, a, b, kind=AssocKind.ASSOC) -> bool:
    return ring_relations(R).associates(a, b, kind)


def is_presimplifiable(M: Module, S: SatSet):
    """Return ``(flag, witness)``; the witness is ``(s, m)`` with ``s*m = m``,
    ``s`` a nonunit of S and ``m`` nonzero."""
    for s in sorted(S.members):
        if s in M.ring.units:
            continue
        fixed = np.nonzero(M.act[s] == np.arange(M.size))[0]
        for m in fixed:
            if m != M.zero:
                return False, (int(s), int(m))
    return True, None


# -- factorizations -----------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    target: int
    scalars: tuple
    tail: int
    kind: str = "all"

    @property
    def length(self) -> int:
        return len(self.scalars)

    def recompute(self, M: Module) -> int:
        x = self.tail
        for s in reversed(self.scalars):
            x = int(M.act[s, x])
            if x < 0:
                return -1
        return x

    def to_json(self) -> dict:
        return {"target": self.target, "scalars": list(self.scalars), "tail": self.tail,
                "kind": self.kind}


@dataclass
class Enumeration:
    status: str  # complete | unbounded | truncated
    factorizations: list = field(default_factory=list)
    cycle: list = field(default_factory=list)
    cycle_labels: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = {"status": self.status, "factorizations": [f.to_json() for f in self.factorizations]}
        if self.cycle:
            d["cycle"] = self.cycle
            d["cycle_labels"] = self.cycle_labels
        return d


class FactorGraph:
    """Labelled factor graph of (M, S), optionally restricted to atomic walks."""

    def __init__(self, M: Module, S: SatSet):
        self.M, self.S = M, S
        self.rel = relations(M, S)
        k = M.size
        labels = np.array(self.rel.nonunit_scalars, dtype=np.int64)
        if len(labels):
            acts = M.act[labels]  # (L, k)
            ss = np.repeat(labels, k)
            ns = np.tile(np.arange(k), len(labels))
            ms = acts.reshape(-1)
            ok = ms >= 0
            ss, ns, ms = ss[ok], ns[ok], ms[ok]
            order = np.lexsort((ss, ns, ms))
            ss, ns, ms = ss[order], ns[order], ms[order]
        else:
            ss = ns = ms = np.zeros(0, dtype=np.int64)
        self.edges = [[] for _ in range(k)]
        for s, n, m in zip(ss.tolist(), ns.tolist(), ms.tolist()):
            self.edges[m].append((s, n))
        self._views = {}

    def view(self, alpha=None, beta=None) -> "GraphView":
        key = (alpha, beta)
        if key not in self._views:
            self._views[key] = GraphView(self, alpha, beta)
        return self._views[key]


class GraphView:
    """Edges restricted to ``alpha``-irreducible labels, walks ending in
    S-``beta``-primitive tails (no restriction when ``alpha`` is None)."""

    def __init__(self, G: FactorGraph, alpha, beta):
        self.G = G
        M = G.M
        k = M.size
        if alpha is None:
            self.tail_ok = np.ones(k, dtype=bool)
            self.edges = G.edges
        else:
            irr = ring_relations(M.ring).irr[_level(alpha)]
            self.tail_ok = G.rel.prim[_level(beta)].copy()
            self.edges = [[(s, n) for s, n in es if irr[s]] for es in G.edges]
        # nodes from which some walk reaches an admissible tail
        alive = self.tail_ok.copy()
        rev = [[] for _ in range(k)]
        for m, es in enumerate(self.edges):
            for _, n in es:
                rev[n].append(m)
        queue = deque(np.nonzero(alive)[0].tolist())
        while queue:
            n = queue.popleft()
            for m in rev[n]:
                if not alive[m]:
                    alive[m] = True
                    queue.append(m)
        self.alive = alive
        self.edges = [[(s, n) for s, n in es if alive[n]] if alive[m] else []
                      for m, es in enumerate(self.edges)]
        self._analyse_cycles()

    def _analyse_cycles(self):
        k = self.G.M.size
        g = nx.DiGraph()
        g.add_nodes_from(range(k))
        for m, es in enumerate(self.edges):
            g.add_edges_from((m, n) for _, n in es)
        self.digraph = g
        cond = nx.condensation(g)
        members = nx.get_node_attributes(cond, "members")
        looping = {c: len(ms) > 1 or any(g.has_edge(x, x) for x in ms) for c, ms in members.items()}
        unb = {}
        self.topo = []  # successors before predecessors
        for c in reversed(list(nx.topological_sort(cond))):
            unb[c] = looping[c] or any(unb[d] for d in cond.successors(c))
            self.topo.extend(sorted(members[c]))
        self.unbounded = np.zeros(k, dtype=bool)
        self.on_cycle = np.zeros(k, dtype=bool)
        self.component = np.zeros(k, dtype=np.int64)
        for c, ms in members.items():
            for x in ms:
                self.unbounded[x] = unb[c]
                self.on_cycle[x] = looping[c]
                self.component[x] = c

    def cycle_from(self, m: int):
        """A cycle reachable from ``m`` as (walk nodes, labels), prefix included."""
        if not self.unbounded[m]:
            return None
        prev = {m: None}
        queue = deque([m])
        while queue:
            x = queue.popleft()
            if self.on_cycle[x]:
                break
            for _, n in self.edges[x]:
                if n not in prev:
                    prev[n] = x
                    queue.append(n)
        path = []
        y = x
        while y is not None:
            path.append(y)
            y = prev[y]
        path.reverse()
        comp = self.component[x]
        cyc = [x, x]
        for _, n in self.edges[x]:
            if n != x and self.component[n] == comp:
                cyc = [x] + nx.shortest_path(self.digraph, n, x)
                break
        walk = path + cyc[1:]
        labels = [self.label(a, b) for a, b in zip(walk, walk[1:])]
        return walk, labels

    def label(self, m, n):
        for s, x in self.edges[m]:
            if x == n:
                return s
        return None

    def walks(self, m: int, max_len=None, tails_only=True):
        """Yield (scalars, tail) for every admissible walk from ``m``; sets
        ``self.truncated`` when ``max_len`` cut a walk short."""
        self.truncated = False
        stack = [(m, ())]
        while stack:
            x, labels = stack.pop()
            if self.tail_ok[x] or not tails_only:
                yield labels, x
            if max_len is not None and len(labels) >= max_len:
                if self.edges[x]:
                    self.truncated = True
                continue
            for s, n in reversed(self.edges[x]):
                stack.append((n, labels + (s,)))


@lru_cache(maxsize=None)
def factor_graph(M: Module, S: SatSet) -> FactorGraph:
    return FactorGraph(M, S)


def compact_factorizations(M: Module, S: SatSet, m: int, beta=PrimKind.PRIMITIVE) -> list:
    """All ``(s, n)`` with ``s`` in S (units allowed), ``n`` S-primitive and ``m = s*n``."""
    prim = relations(M, S).prim[_level(beta)]
    out = []
    for s in sorted(S.members):
        for n in np.nonzero(M.act[s] == m)[0]:
            if prim[n]:
                out.append((int(s), int(n)))
    return out


def enumerate_factorizations(M: Module, S: SatSet, m: int, mode="all",
                             alpha=IrrKind.IRREDUCIBLE, beta=PrimKind.PRIMITIVE,
                             max_len=None) -> Enumeration:
    if mode == "compact":
        return Enumeration("complete", [Factorization(m, (s,), n, "compact")
                                        for s, n in compact_factorizations(M, S, m)])
    G = factor_graph(M, S)
    view = G.view() if mode == "all" else G.view(IrrKind(alpha), PrimKind(beta))
    kind = "all" if mode == "all" else "atomic"
    if view.unbounded[m]:
        walk, labels = view.cycle_from(m)
        return Enumeration("unbounded", cycle=walk, cycle_labels=labels)
    facs = [Factorization(m, labels, tail, kind) for labels, tail in view.walks(m, max_len)]
    return Enumeration("truncated" if view.truncated else "complete", facs)


def iso_key(M: Module, S: SatSet, f: Factorization):
    ring_cls = ring_relations(M.ring).assoc_class
    mod_cls = relations(M, S).assoc_class
    return (f.length, int(mod_cls[f.tail]), tuple(sorted(int(ring_cls[s]) for s in f.scalars)))


def factorizations_up_to_iso(facs, M: Module, S: SatSet) -> list:
    """Group atomic factorizations of one element into isomorphism classes."""
    groups = {}
    for f in facs:
        groups.setdefault(iso_key(M, S, f), []).append(f)
    return list(groups.values())


# -- classification -----------------------------------------------------------

PROPERTIES = ("presimplifiable", "atomic", "BFM", "FFM", "HFM", "UFM")


def pair_name(alpha, beta) -> str:
    return f"atomic({IrrKind(alpha).value},{PrimKind(beta).value})"


@dataclass
class ElementProfile:
    element: int
    presimplifiable: bool
    bounded: bool
    max_length: int | None
    atomic: dict
    lengths: frozenset | None  # None: unbounded atomic lengths
    iso_count: int | None  # None: infinitely many classes

    @property
    def is_atomic(self) -> bool:
        return self.atomic[ATOMIC]

    def has(self, prop: str) -> bool:
        if prop == "presimplifiable":
            return self.presimplifiable
        if prop in ("BF", "BFM"):
            return self.bounded
        if prop == "atomic":
            return self.is_atomic
        if prop in ("HF", "HFM"):
            return self.is_atomic and self.lengths is not None and len(self.lengths) == 1
        if prop in ("FF", "FFM"):
            return self.is_atomic and self.iso_count is not None
        if prop in ("UF", "UFM"):
            return self.is_atomic and self.iso_count == 1
        raise KeyError(prop)


@dataclass
class ClassReport:
    flags: dict
    witnesses: dict
    profiles: dict = field(repr=False, default_factory=dict)

    def __getitem__(self, key):
        return self.flags[key]

    def to_json(self) -> dict:
        return {"flags": dict(sorted(self.flags.items())),
                "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)},
                "bounds": {str(m): p.max_length for m, p in sorted(self.profiles.items())}}


def _element_profiles(M: Module, S: SatSet) -> dict:
    G = factor_graph(M, S)
    full = G.view()
    views = {pair: G.view(*pair) for pair in PAIRS}
    atom = views[ATOMIC]
    ring_cls = ring_relations(M.ring).assoc_class
    mod_cls = G.rel.assoc_class

    longest = {}
    keys = {}
    for x in full.topo:
        if not full.unbounded[x]:
            longest[x] = max([0] + [1 + longest[n] for _, n in full.edges[x]])
    for x in atom.topo:
        if atom.unbounded[x] or not atom.alive[x]:
            continue
        ks = set()
        if atom.tail_ok[x]:
            ks.add(((), int(mod_cls[x])))
        for s, n in atom.edges[x]:
            c = int(ring_cls[s])
            for scal, t in keys[n]:
                ks.add((tuple(sorted(scal + (c,))), t))
        keys[x] = ks

    pre_bad = set()
    for s in G.rel.nonunit_scalars:
        pre_bad.update(int(m) for m in np.nonzero(M.act[s] == np.arange(M.size))[0])

    profiles = {}
    for m in M.nonzero:
        if atom.unbounded[m]:
            lengths = count = None
        elif atom.alive[m]:
            lengths = frozenset(len(sc) for sc, _ in keys[m])
            count = len(keys[m])
        else:
            lengths, count = frozenset(), 0
        profiles[m] = ElementProfile(
            element=m,
            presimplifiable=m not in pre_bad,
            bounded=not full.unbounded[m],
            max_length=longest.get(m),
            atomic={pair: bool(v.alive[m]) for pair, v in views.items()},
            lengths=lengths,
            iso_count=count,
        )
    return profiles


@lru_cache(maxsize=None)
def classify(M: Module, S: SatSet) -> ClassReport:
    profiles = _element_profiles(M, S)
    flags, wit = {}, {}
    G = factor_graph(M, S)

    ok, w = is_presimplifiable(M, S)
    flags["presimplifiable"] = ok
    if not ok:
        wit["presimplifiable"] = {"s": w[0], "m": w[1]}

    for pair in PAIRS:
        bad = [m for m, p in profiles.items() if not p.atomic[pair]]
        flags[pair_name(*pair)] = not bad
        if bad:
            wit[pair_name(*pair)] = {"m": bad[0]}
    flags["atomic"] = flags[pair_name(*ATOMIC)]
    if not flags["atomic"]:
        wit["atomic"] = wit[pair_name(*ATOMIC)]

    bad = [m for m, p in profiles.items() if not p.bounded]
    flags["BFM"] = not bad
    if bad:
        walk, labels = G.view().cycle_from(bad[0])
        wit["BFM"] = {"m": bad[0], "cycle": walk, "labels": labels}

    for prop in ("HFM", "FFM", "UFM"):
        bad = [m for m, p in profiles.items() if not p.has(prop)]
        flags[prop] = not bad
        if bad:
            wit[prop] = _property_witness(M, S, profiles[bad[0]], prop)
    return ClassReport(flags, wit, profiles)


def _property_witness(M, S, prof: ElementProfile, prop) -> dict:
    m = prof.element
    if not prof.is_atomic:
        return {"m": m, "reason": "no atomic factorization"}
    if prof.iso_count is None:
        walk, labels = factor_graph(M, S).view(*ATOMIC).cycle_from(m)
        return {"m": m, "reason": "unbounded atomic lengths", "cycle": walk, "labels": labels}
    classes = factorizations_up_to_iso(
        enumerate_factorizations(M, S, m, "atomic").factorizations, M, S)
    if prop == "HFM":
        by_len = {}
        for cls in classes:
            by_len.setdefault(cls[0].length, cls[0])
        fs = list(by_len.values())[:2]
    else:
        fs = [cls[0] for cls in classes[:2]]
    return {"m": m, "reason": f"{len(classes)} isomorphism classes",
            "factorizations": [f.to_json() for f in fs]}


def element_has(M: Module, S: SatSet, m: int, prop: str) -> bool:
    return classify(M, S).profiles[m].has(prop)
