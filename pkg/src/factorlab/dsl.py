"""Expression language for rings, modules and saturated sets.

    zmod(6)                      ring
    sat(2) @ zmod(6)             saturated set bound to a ring
    quotient(regular, [3]) @ zmod(6)   Z/6 modulo the submodule generated by 3
    axb(gf(2), gf(4), deg=4)     degree-bounded fragment of A + X B[X]

Whitespace is insignificant.  Diagnostics carry byte offsets into the UTF-8
encoding of the input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .modules import (Module, product_module, quotient_module, regular_module,
                      submodule_generated, zmod_over)
from .rings import Ring, build_gf, build_gf_quotient, build_product, build_zmod
from .satsets import SatSet, saturate, units_satset, whole_ring


class DslError(ValueError):
    def __init__(self, message: str, span=(0, 0), expected=()):
        super().__init__(message)
        self.message = message
        self.span = tuple(span)
        self.expected = tuple(expected)

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": self.message,
                "span": list(self.span), "expected": list(self.expected)}

    def __str__(self):
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        return f"{self.message} at bytes {self.span[0]}-{self.span[1]}{exp}"


class DslSyntaxError(DslError):
    pass


class DslTypeError(DslError):
    pass


class EvaluationError(ValueError):
    pass


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    value: int
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ListExpr:
    items: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()
    kwargs: tuple = ()  # ((key, node), ...) in source order
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Bind:
    target: object
    ring: object
    span: tuple = field(default=(0, 0), compare=False)


def render(node) -> str:
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, ListExpr):
        return "[" + ", ".join(render(x) for x in node.items) + "]"
    if isinstance(node, Bind):
        return f"{render(node.target)} @ {render(node.ring)}"
    parts = [render(a) for a in node.args] + [f"{k}={render(v)}" for k, v in node.kwargs]
    return f"{node.name}({', '.join(parts)})" if parts else node.name


def to_json(node) -> dict:
    if isinstance(node, Int):
        return {"int": node.value}
    if isinstance(node, ListExpr):
        return {"list": [to_json(x) for x in node.items]}
    if isinstance(node, Bind):
        return {"bind": {"target": to_json(node.target), "ring": to_json(node.ring)}}
    return {"call": node.name, "args": [to_json(a) for a in node.args],
            "kwargs": {k: to_json(v) for k, v in node.kwargs}}


# -- lexer and parser ---------------------------------------------------------

_TOKEN = re.compile(rb"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[()\[\],=@-]))")
_WS = re.compile(rb"\s*")


def _tokens(data: bytes):
    pos = 0
    while True:
        pos = _WS.match(data, pos).end()
        if pos == len(data):
            yield ("eof", b"", pos, pos)
            return
        m = _TOKEN.match(data, pos)
        if m is None:
            ch = data[pos:pos + 4].decode("utf-8", errors="ignore")[:1] or "?"
            width = max(1, len(ch.encode("utf-8")))
            raise DslSyntaxError(f"unexpected character {ch!r}", (pos, pos + width))
        kind = m.lastgroup
        start = m.start(kind)
        yield (kind, m.group(kind), start, m.end())
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text.encode("utf-8")))
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: bytes):
        t = self.peek()
        if t[0] != "punct" or t[1] != value:
            raise self.error(f"'{value.decode()}'")
        return self.take()

    def error(self, *expected):
        kind, val, s, e = self.peek()
        what = "end of input" if kind == "eof" else repr(val.decode())
        return DslSyntaxError(f"unexpected {what}", (s, e), expected)

    def top(self):
        node = self.expr()
        if self.peek()[:2] == ("punct", b"@"):
            self.take()
            ring = self.expr()
            node = Bind(node, ring, (node.span[0], ring.span[1]))
        if self.peek()[0] != "eof":
            raise self.error("'@'", "end of input")
        return node

    def expr(self):
        kind, val, s, e = self.peek()
        if kind == "int":
            self.take()
            return Int(int(val), (s, e))
        if kind == "punct" and val == b"-":
            self.take()
            k2, v2, _, e2 = self.peek()
            if k2 != "int":
                raise self.error("integer")
            self.take()
            return Int(-int(v2), (s, e2))
        if kind == "punct" and val == b"[":
            self.take()
            items = self.seq(b"]", self.expr)
            end = self.expect(b"]")[3]
            return ListExpr(tuple(items), (s, end))
        if kind == "name":
            self.take()
            name = val.decode()
            if self.peek()[:2] != ("punct", b"("):
                return Call(name, span=(s, e))
            self.take()
            items = self.seq(b")", self.arg)
            end = self.expect(b")")[3]
            args = tuple(x for x in items if not isinstance(x, tuple))
            kwargs = tuple(x for x in items if isinstance(x, tuple))
            seen_kw = False
            for x in items:
                if isinstance(x, tuple):
                    seen_kw = True
                elif seen_kw:
                    raise DslSyntaxError("positional argument after keyword argument", x.span)
            return Call(name, args, kwargs, (s, end))
        raise self.error("integer", "name", "'['", "'-'")

    def arg(self):
        if self.peek()[0] == "name" and self.peek(1)[:2] == ("punct", b"="):
            key = self.take()[1].decode()
            self.take()
            return (key, self.expr())
        return self.expr()

    def seq(self, close: bytes, item):
        out = []
        if self.peek()[:2] == ("punct", close):
            return out
        out.append(item())
        while self.peek()[:2] == ("punct", b","):
            self.take()
            out.append(item())
        if self.peek()[:2] != ("punct", close):
            raise self.error("','", f"'{close.decode()}'")
        return out


def parse(text: str):
    """Parse ``text`` into an AST and type-check it."""
    node = _Parser(text).top()
    infer(node)
    return node


# -- typing -------------------------------------------------------------------

RING, MODULE, SET, COEFF, INT, LIST = "ring", "module", "set", "coefficient", "int", "list"

_RING_HEADS = {"zmod", "gf", "gfquot", "axb", "laurent", "localize"}
_MODULE_HEADS = {"regular", "zmod_over", "quotient"}
_SET_HEADS = {"units", "all", "sat", "members", "satX"}
_KWARGS = {"axb": {"deg", "height"}, "laurent": {"deg"}}


def _arity(node: Call, lo: int, hi: int | None = None):
    hi = lo if hi is None else hi
    if not lo <= len(node.args) <= hi:
        want = str(lo) if lo == hi else f"{lo}-{hi}"
        raise DslTypeError(f"{node.name} takes {want} positional argument(s)", node.span)
    allowed = _KWARGS.get(node.name, set())
    for k, v in node.kwargs:
        if k not in allowed:
            raise DslTypeError(f"{node.name} has no keyword '{k}'", v.span)
        _need(v, INT)


def _need(node, *kinds):
    k = infer(node)
    if k not in kinds:
        raise DslTypeError(f"expected {' or '.join(kinds)}, got {k}", node.span, kinds)
    return k


def _int_list(node: ListExpr):
    for x in node.items:
        _need(x, INT)


def infer(node) -> str:
    """Kind of a node: ring, module, set, coefficient, int or list."""
    if isinstance(node, Int):
        return INT
    if isinstance(node, ListExpr):
        for x in node.items:
            _need(x, INT, LIST)
        return LIST
    if isinstance(node, Bind):
        kind = _need(node.target, MODULE, SET)
        _need(node.ring, RING)
        return kind
    name = node.name
    if name in ("Z", "Q"):
        _arity(node, 0)
        return COEFF
    if name in ("zmod", "gf"):
        _arity(node, 1)
        _need(node.args[0], INT)
        return RING
    if name == "gfquot":
        _arity(node, 2)
        _need(node.args[0], INT)
        _need(node.args[1], LIST)
        _int_list(node.args[1])
        return RING
    if name == "axb":
        _arity(node, 2)
        kinds = [_need(a, RING, COEFF) for a in node.args]
        keys = {k for k, _ in node.kwargs}
        if COEFF in kinds:
            if [render(a) for a in node.args] != ["Z", "Q"]:
                raise DslTypeError("the only infinite pair is axb(Z, Q)", node.span)
            if "deg" in keys:
                raise DslTypeError("axb(Z, Q) takes height=, not deg=", node.span)
        else:
            for a in node.args:
                if not (isinstance(a, Call) and a.name == "gf"):
                    raise DslTypeError("axb coefficients must be gf(q) or Z, Q", a.span)
            if "height" in keys:
                raise DslTypeError("finite axb takes deg=, not height=", node.span)
        return RING
    if name == "laurent":
        _arity(node, 1)
        a = node.args[0]
        if not (isinstance(a, Call) and a.name == "gf"):
            raise DslTypeError("laurent coefficients must be gf(q)", a.span)
        infer(a)
        return RING
    if name == "localize":
        _arity(node, 2)
        _need(node.args[0], RING)
        _need(node.args[1], SET)
        return RING
    if name == "product":
        if len(node.args) < 2 or node.kwargs:
            raise DslTypeError("product takes at least two factors", node.span)
        kinds = {_need(a, RING, MODULE) for a in node.args}
        if len(kinds) > 1:
            raise DslTypeError("product mixes rings and modules", node.span)
        return kinds.pop()
    if name == "regular":
        _arity(node, 0)
        return MODULE
    if name == "zmod_over":
        _arity(node, 1)
        _need(node.args[0], INT)
        return MODULE
    if name == "quotient":
        _arity(node, 2)
        _need(node.args[0], MODULE)
        _need(node.args[1], LIST)
        _int_list(node.args[1])
        return MODULE
    if name in ("units", "all", "satX"):
        _arity(node, 0)
        return SET
    if name in ("sat", "members"):
        if node.kwargs:
            raise DslTypeError(f"{name} takes no keywords", node.span)
        for a in node.args:
            if _need(a, INT, LIST) == LIST:
                _int_list(a)
        return SET
    raise DslTypeError(f"unknown name '{name}'", node.span,
                       tuple(sorted(_RING_HEADS | _MODULE_HEADS | _SET_HEADS | {"product"})))


# -- evaluation ---------------------------------------------------------------

@dataclass(frozen=True)
class ZQRing:
    """Z + X Q[X]; witness checking only."""
    height: int = 64

    def to_json(self) -> dict:
        return {"kind": "axb", "A": "Z", "B": "Q", "height": self.height}


def _ints(nodes) -> list:
    out = []
    for n in nodes:
        if isinstance(n, ListExpr):
            out.extend(_ints(n.items))
        else:
            out.append(n.value)
    return out


def _kw(node: Call, key, default):
    for k, v in node.kwargs:
        if k == key:
            return v.value
    return default


def eval_ring(node, deg: int | None = None):
    """Evaluate a ring expression; ``deg`` is the default degree bound for
    fragments written without ``deg=``."""
    if isinstance(node, str):
        node = parse(node)
    if infer(node) != RING:
        raise DslTypeError("expected a ring expression", node.span)
    try:
        return _eval_ring(node, deg)
    except (DslError, EvaluationError):
        raise
    except ValueError as e:
        raise EvaluationError(f"{render(node)}: {e}") from e


def _eval_ring(node: Call, deg=None):
    n = node.name
    if n == "zmod":
        return build_zmod(node.args[0].value)
    if n == "gf":
        return build_gf(node.args[0].value)
    if n == "gfquot":
        return build_gf_quotient(node.args[0].value, _ints(node.args[1].items))
    if n == "product":
        rs = [_eval_ring(a, deg) for a in node.args]
        R = rs[0]
        for F in rs[1:]:
            R = build_product(R, F)
        return R
    if n == "axb":
        if node.args[0].name == "Z":
            return ZQRing(_kw(node, "height", 64))
        from .axb import axb_fragment
        A, B = (a.args[0].value for a in node.args)
        return axb_fragment(A, B, _kw(node, "deg", deg or 4)).ring
    if n == "laurent":
        from .axb import laurent_fragment
        return laurent_fragment(node.args[0].args[0].value, _kw(node, "deg", deg or 3)).ring
    if n == "localize":
        from .localization import localize_ring
        R = _finite(_eval_ring(node.args[0], deg), node)
        return localize_ring(R, eval_set(node.args[1], R)).ring
    raise DslTypeError(f"not a ring: {n}", node.span)


def _finite(R, node) -> Ring:
    if isinstance(R, ZQRing):
        raise EvaluationError("axb(Z, Q) supports witness checking only, not exhaustive evaluation")
    return R


def eval_module(node, R) -> Module:
    if isinstance(node, str):
        node = parse(node)
    R = _finite(R, node)
    if isinstance(node, Bind):
        raise DslTypeError("module is already bound; pass the bare module expression", node.span)
    if infer(node) != MODULE:
        raise DslTypeError("expected a module expression", node.span)
    try:
        return _eval_module(node, R)
    except DslError:
        raise
    except ValueError as e:
        raise EvaluationError(f"{render(node)}: {e}") from e


def _eval_module(node: Call, R: Ring) -> Module:
    n = node.name
    if n == "regular":
        return regular_module(R)
    if n == "zmod_over":
        return zmod_over(R, node.args[0].value)
    if n == "quotient":
        M = _eval_module(node.args[0], R)
        sub = _ints(node.args[1].items)
        bad = [x for x in sub if not 0 <= x < M.size]
        if bad:
            raise DslTypeError(f"element {bad[0]} is not in a module of size {M.size}",
                               node.args[1].span)
        return quotient_module(M, submodule_generated(M, sub))
    if n == "product":
        ms = [_eval_module(a, R) for a in node.args]
        M = ms[0]
        for N in ms[1:]:
            M = product_module(M, N)
        return M
    raise DslTypeError(f"not a module: {n}", node.span)


def eval_set(node, R) -> SatSet:
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Bind):
        raise DslTypeError("set is already bound; pass the bare set expression", node.span)
    if infer(node) != SET:
        raise DslTypeError("expected a set expression", node.span)
    R = _finite(R, node)
    n = node.name
    if n == "units":
        return units_satset(R)
    if n == "all":
        return whole_ring(R)
    if n == "satX":
        kind = R.construction.get("kind")
        if kind != "axb":
            raise DslTypeError("satX binds only to an axb ring", node.span)
        from .axb import axb_fragment
        c = R.construction
        return axb_fragment(c["A"]["q"], c["B"]["q"], c["deg"]).satX
    elems = _ints(node.args)
    bad = [x for x in elems if not 0 <= x < R.size]
    if bad:
        raise DslTypeError(f"element {bad[0]} is not in a ring of size {R.size}", node.span)
    try:
        if n == "sat":
            return saturate(R, elems)
        return SatSet.from_members(R, elems)
    except ValueError as e:
        raise EvaluationError(f"{render(node)}: {e}") from e


def evaluate(text_or_node, deg: int | None = None):
    """Evaluate a ring expression or a bound module or set."""
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    if isinstance(node, Bind):
        R = eval_ring(node.ring, deg)
        if infer(node.target) == MODULE:
            return eval_module(node.target, R)
        return eval_set(node.target, R)
    return eval_ring(node, deg)


def parse_element(text: str, R):
    """An element id, or a coefficient list (constant term first) on an axb ring."""
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "eof":
        raise p.error("end of input")
    if isinstance(R, ZQRing):
        if not isinstance(node, ListExpr):
            raise DslTypeError("elements of axb(Z, Q) are coefficient lists", node.span)
        return tuple(_ints(node.items))
    if isinstance(node, Int):
        if not 0 <= node.value < R.size:
            raise DslTypeError(f"element {node.value} is not in a carrier of size {R.size}",
                               node.span)
        return node.value
    if isinstance(node, ListExpr):
        c = getattr(R, "construction", {})
        if c.get("kind") != "axb":
            raise DslTypeError("coefficient lists are only accepted on axb rings", node.span)
        from .axb import axb_fragment
        F = axb_fragment(c["A"]["q"], c["B"]["q"], c["deg"])
        try:
            return F.encode(_ints(node.items))
        except ValueError as e:
            raise DslTypeError(str(e), node.span) from e
    raise DslTypeError("expected an element id or coefficient list", node.span)
