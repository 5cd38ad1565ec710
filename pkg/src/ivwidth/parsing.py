"""Recursive-descent parser for the textual function, order and tuple forms.

Grammar (whitespace is ignored)::

    number := decimal ['/' decimal]
    expr   := 'Kalpha' ':' number
            | 'dual' '(' expr [',' NEGATION] ')'
            | 'compose' '(' expr ',' expr ',' expr ')'
            | 'convex' '(' number ',' expr ',' expr ')'
            | 'pow' '(' expr ',' number ')'
            | NAME                                  (catalog entry)
    ivfn   := 'bestrep' '(' expr [',' expr] ')'
            | ('c1' | 'c2' | 'c3') '(' expr ',' expr ',' number [',' number] ')'
            | 'ao' '(' expr ',' number [',' number] ')'
            | 'klambda' '(' expr ',' expr ',' number [',' number] ')'
            | 'ivcompose' '(' ivfn ',' ivfn ',' ivfn ')'
    order  := 'pr' | 'incl' | 'ab' ':' number (':' | ',') number
            | 'pair' ':' expr ',' expr
    tuple  := order ',' order ',' expr
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import constructions as C
from . import scalar as S
from .interval import Interval, IntervalError
from .orders import AlphaBetaOrder, GeneratedPairOrder, InclusionOrder, Order, ProductOrder


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: str, found: str):
        self.text, self.pos, self.expected, self.found = text, pos, expected, found
        caret = " " * pos + "^"
        super().__init__(
            f"parse error at position {pos}: expected {expected}, found {found}\n  {text}\n  {caret}"
        )


_TOKEN = re.compile(
    r"\s*(?:(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),:/]))"
)


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise ParseError(text, i, "a name, number or one of ( ) , : /", repr(text[i]))
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.value)
        raise ParseError(self.text, t.pos, expected, found)

    def eat(self, value: str) -> None:
        if self.tok.value != value or self.tok.kind == "end":
            self.fail(repr(value))
        self.i += 1

    def peek(self, value: str) -> bool:
        return self.tok.kind == "punct" and self.tok.value == value

    def name(self) -> str:
        if self.tok.kind != "name":
            self.fail("a name")
        v = self.tok.value
        self.i += 1
        return v

    def number(self) -> float:
        if self.tok.kind != "num":
            self.fail("a number")
        v = float(self.tok.value)
        self.i += 1
        if self.peek("/"):
            self.i += 1
            if self.tok.kind != "num":
                self.fail("a denominator")
            den = float(self.tok.value)
            if den == 0:
                self.fail("a non-zero denominator")
            self.i += 1
            v = v / den
        return v

    def done(self) -> None:
        if self.tok.kind != "end":
            self.fail("end of input")

    # expressions

    def expr(self) -> S.ScalarFn:
        start = self.tok
        nm = self.name()
        low = nm.lower()
        if low == "kalpha":
            self.eat(":")
            return S.KAlpha(self.number())
        if low == "dual":
            self.eat("(")
            f = self.expr()
            neg = S.ZADEH
            if self.peek(","):
                self.eat(",")
                pos = self.tok.pos
                nname = self.name()
                if nname not in S.NEGATIONS:
                    raise ParseError(self.text, pos, "a registered negation", repr(nname))
                neg = S.NEGATIONS[nname]
            self.eat(")")
            return S.dual(f, neg)
        if low == "compose":
            self.eat("(")
            o = self.expr()
            self.eat(",")
            a = self.expr()
            self.eat(",")
            b = self.expr()
            self.eat(")")
            return S.compose3(o, a, b)
        if low == "convex":
            self.eat("(")
            w = self.number()
            self.eat(",")
            a = self.expr()
            self.eat(",")
            b = self.expr()
            self.eat(")")
            return S.convex_sum(w, a, b)
        if low == "pow":
            self.eat("(")
            f = self.expr()
            self.eat(",")
            k = self.number()
            self.eat(")")
            return S.Power(f, k)
        try:
            return S.lookup(nm)
        except KeyError:
            names = ", ".join(sorted(S.CATALOG))
            raise ParseError(self.text, start.pos, f"a function ({names}, Kalpha, dual, compose, convex, pow)",
                             repr(nm)) from None

    # interval-valued functions

    def _params(self, n_required: int, n_optional: int) -> list[float]:
        vals = []
        for k in range(n_required + n_optional):
            if k >= n_required and not self.peek(","):
                break
            self.eat(",")
            vals.append(self.number())
        return vals

    def ivfn(self) -> C.IvFn:
        nm = self.name().lower()
        self.eat("(")
        if nm == "bestrep":
            F = self.expr()
            G = None
            if self.peek(","):
                self.eat(",")
                G = self.expr()
            self.eat(")")
            return C.BestRep(F, G)
        if nm in ("c1", "c2", "c3", "klambda"):
            O = self.expr()
            self.eat(",")
            B = self.expr()
            p = self._params(1, 1)
            self.eat(")")
            alpha, beta = p[0], (p[1] if len(p) > 1 else 0.0)
            cls = {"c1": C.Construct1, "c2": C.Construct2, "c3": C.Construct3,
                   "klambda": C.KLambdaAggregation}[nm]
            return cls(O, B, alpha, beta)
        if nm == "ao":
            O = self.expr()
            p = self._params(1, 1)
            self.eat(")")
            return C.AOAlpha(O, p[0], p[1] if len(p) > 1 else 0.0)
        if nm == "ivcompose":
            g = self.ivfn()
            self.eat(",")
            a = self.ivfn()
            self.eat(",")
            b = self.ivfn()
            self.eat(")")
            return C.IvCompose(g, a, b)
        self.i -= 2
        self.fail("bestrep, c1, c2, c3, ao, klambda or ivcompose")

    # orders

    def order(self) -> Order:
        nm = self.name().lower()
        if nm == "pr":
            return ProductOrder()
        if nm == "incl":
            return InclusionOrder()
        if nm == "ab":
            self.eat(":")
            a = self.number()
            if self.peek(":") or self.peek(","):
                self.i += 1
            else:
                self.fail("':' or ','")
            return AlphaBetaOrder(a, self.number())
        if nm == "pair":
            self.eat(":")
            a1 = self.expr()
            self.eat(",")
            return GeneratedPairOrder(a1, self.expr())
        self.i -= 1
        self.fail("an order (pr, incl, ab:a,b, pair:f,g)")


def parse_expr(text: str) -> S.ScalarFn:
    p = _Parser(text)
    f = p.expr()
    p.done()
    return f


def parse_ivfn(text: str) -> C.IvFn:
    p = _Parser(text)
    f = p.ivfn()
    p.done()
    return f


def parse_order(text: str) -> Order:
    p = _Parser(text)
    o = p.order()
    p.done()
    return o


def parse_tuple(text: str) -> tuple[Order, Order, S.ScalarFn]:
    p = _Parser(text)
    o1 = p.order()
    p.eat(",")
    o2 = p.order()
    p.eat(",")
    B = p.expr()
    p.done()
    return o1, o2, B


def parse_interval_text(text: str) -> Interval:
    p = _Parser(text.strip().strip("[]"))
    lo = p.number()
    p.eat(",")
    hi = p.number()
    p.done()
    return Interval(lo, hi)


__all__ = [
    "ParseError", "IntervalError", "parse_expr", "parse_ivfn", "parse_order",
    "parse_tuple", "parse_interval_text", "tokenize",
]
