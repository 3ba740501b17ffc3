"""A small declarative language for set scenes and layer queries.

A program declares one universe, binds named sets built from primitives
(intervals, disks, divisibility classes) and the union/inter/not algebra,
and lists queries.  The recursive-descent parser is single-token-lookahead;
every error carries a byte span into the source.

    universe plane;
    set S1 = disk(1, 0, 1.5);
    set S2 = disk(-1, 0, 2);
    query count(S1, S2);
    query exactly(2; S1, S2);

Interval endpoints use bracket shape for openness: interval[0, 1) is
closed-left, open-right.  Omitting the member list of union/count/exactly/
atmost/morethan applies the query to every set declared so far.  `#`
starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Optional, Tuple

from . import tomography
from .bcore import ZERO, ONE
from .indicator import (CLOSED, NATURALS, OPEN, PLANE, REALS, UNIVERSE_KINDS,
                        Disk, Indicator, Interval, complement, disk_set,
                        intersect, interval_set)
from .numtheory import divides
from .tomography import SetCollection
from .whitney import DEFAULT_CAP, whitney_union

KEYWORDS = frozenset(
    "universe set query union inter not exactly atmost morethan count "
    "open closed interval disk divides".split()
)
PUNCT = "()[],;="

TOMOGRAPHY = "tomography"
WHITNEY = "whitney"
BACKENDS = (TOMOGRAPHY, WHITNEY)


@dataclass(frozen=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


EMPTY_SPAN = Span(0, 0)


class SetlError(Exception):
    """Parse or compile error with a byte span into the source text."""

    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        return f"{self.message} (at offset {self.span.start}..{self.span.end})"


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "number", "kw", one of PUNCT, or "eof"
    text: str
    span: Span


def tokenize(source: str) -> list[Token]:
    """Scan source into tokens; unknown characters are reported with position."""
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch in PUNCT:
            tokens.append(Token(ch, ch, Span(i, i + 1)))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = "kw" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, Span(i, j)))
            i = j
            continue
        if ch.isdigit() or ch == "." or (ch in "+-" and i + 1 < n and (source[i + 1].isdigit() or source[i + 1] == ".")):
            j = i + 1 if ch in "+-" else i
            seen_digit = False
            seen_dot = False
            while j < n:
                c = source[j]
                if c.isdigit():
                    seen_digit = True
                elif c == "." and not seen_dot:
                    seen_dot = True
                else:
                    break
                j += 1
            if not seen_digit:
                raise SetlError(f"malformed number {source[i:j]!r}", Span(i, j))
            tokens.append(Token("number", source[i:j], Span(i, j)))
            i = j
            continue
        raise SetlError(f"unexpected character {ch!r}", Span(i, i + 1))
    tokens.append(Token("eof", "", Span(n, n)))
    return tokens


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class IntervalExpr:
    a: Fraction
    b: Fraction
    left: str
    right: str
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class DiskExpr:
    cx: Fraction
    cy: Fraction
    r: Fraction
    boundary: str
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class DividesExpr:
    j: int
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class NameExpr:
    name: str
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class UnionExpr:
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class InterExpr:
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class NotExpr:
    inner: "SetExpr"
    span: Span = field(default=EMPTY_SPAN, compare=False)


SetExpr = (IntervalExpr, DiskExpr, DividesExpr, NameExpr, UnionExpr, InterExpr, NotExpr)


@dataclass(frozen=True)
class CountQuery:
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class ExactlyQuery:
    m: int
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class AtMostQuery:
    m: int
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class MoreThanQuery:
    m: int
    members: Tuple["SetExpr", ...]
    span: Span = field(default=EMPTY_SPAN, compare=False)


@dataclass(frozen=True)
class ExprQuery:
    expr: "SetExpr"
    span: Span = field(default=EMPTY_SPAN, compare=False)


Query = (CountQuery, ExactlyQuery, AtMostQuery, MoreThanQuery, ExprQuery)

_SLICE_QUERIES = {"exactly": ExactlyQuery, "atmost": AtMostQuery, "morethan": MoreThanQuery}


@dataclass(frozen=True)
class Program:
    universe_kind: str
    bindings: Tuple[Tuple[str, "SetExpr"], ...]
    queries: Tuple["Query", ...]

    def binding(self, name: str):
        for bound_name, expr in self.bindings:
            if bound_name == name:
                return expr
        raise KeyError(name)


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.pos = 0
        self.source = source
        self.universe_kind: Optional[str] = None
        self.bindings: list[tuple[str, object]] = []
        self.names: dict[str, object] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, span: Span):
        raise SetlError(message, span)

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.error(f"expected {what or kind!r}, found {tok.text or 'end of input'!r}", tok.span)
        return self.next()

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "kw" or tok.text != word:
            self.error(f"expected {word!r}, found {tok.text or 'end of input'!r}", tok.span)
        return self.next()

    def at_kw(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "kw" and tok.text in words

    def number(self) -> tuple[Fraction, Span]:
        tok = self.expect("number", "a number")
        return Fraction(tok.text), tok.span

    def integer(self, minimum: int, what: str) -> tuple[int, Span]:
        value, span = self.number()
        if value.denominator != 1 or value < minimum:
            self.error(f"{what} must be an integer >= {minimum}, got {value}", span)
        return int(value), span

    # -- program structure ---------------------------------------------------

    def program(self) -> Program:
        self.expect_kw("universe")
        tok = self.expect("ident", "a universe name")
        if tok.text not in UNIVERSE_KINDS:
            self.error(f"unknown universe {tok.text!r}; expected one of {', '.join(UNIVERSE_KINDS)}", tok.span)
        self.universe_kind = tok.text
        self.expect(";")
        queries = []
        while self.peek().kind != "eof":
            if self.at_kw("set"):
                self.set_decl()
            elif self.at_kw("query"):
                self.next()
                queries.append(self.query_expr())
                self.expect(";")
            else:
                tok = self.peek()
                self.error(f"expected 'set' or 'query', found {tok.text or 'end of input'!r}", tok.span)
        return Program(self.universe_kind, tuple(self.bindings), tuple(queries))

    def set_decl(self) -> None:
        self.expect_kw("set")
        name_tok = self.expect("ident", "a set name")
        if name_tok.text in self.names:
            self.error(f"set {name_tok.text!r} is already defined", name_tok.span)
        self.expect("=")
        expr = self.set_expr()
        self.expect(";")
        self.bindings.append((name_tok.text, expr))
        self.names[name_tok.text] = expr

    # -- expressions ----------------------------------------------------------

    def set_list(self, closer: str = ")") -> tuple:
        members = [self.set_expr()]
        while self.peek().kind == ",":
            self.next()
            members.append(self.set_expr())
        return tuple(members)

    def all_declared(self, span: Span) -> tuple:
        return tuple(NameExpr(name, span) for name, _ in self.bindings)

    def member_list_or_all(self, open_span: Span) -> tuple:
        if self.peek().kind == ")":
            return self.all_declared(open_span)
        return self.set_list()

    def set_expr(self):
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            if tok.text not in self.names:
                self.error(f"unknown set name {tok.text!r}", tok.span)
            return NameExpr(tok.text, tok.span)
        if tok.kind != "kw":
            self.error(f"expected a set expression, found {tok.text or 'end of input'!r}", tok.span)
        if tok.text == "union":
            self.next()
            self.expect("(")
            members = () if self.peek().kind == ")" else self.set_list()
            end = self.expect(")")
            return UnionExpr(members, Span(tok.span.start, end.span.end))
        if tok.text == "inter":
            self.next()
            self.expect("(")
            if self.peek().kind == ")":
                self.error("inter() requires at least one member", self.peek().span)
            members = self.set_list()
            end = self.expect(")")
            return InterExpr(members, Span(tok.span.start, end.span.end))
        if tok.text == "not":
            self.next()
            self.expect("(")
            inner = self.set_expr()
            end = self.expect(")")
            return NotExpr(inner, Span(tok.span.start, end.span.end))
        if tok.text == "interval":
            return self.interval_expr()
        if tok.text == "disk":
            return self.disk_expr()
        if tok.text == "divides":
            return self.divides_expr()
        self.error(f"expected a set expression, found {tok.text!r}", tok.span)

    def _require_universe(self, required: str, what: str, span: Span) -> None:
        if self.universe_kind != required:
            self.error(
                f"{what} requires a {required} universe; this program declares {self.universe_kind}",
                span)

    def interval_expr(self):
        start = self.expect_kw("interval")
        opener = self.peek()
        if opener.kind not in ("(", "["):
            self.error(f"expected '(' or '[' after interval, found {opener.text!r}", opener.span)
        self.next()
        left = CLOSED if opener.kind == "[" else OPEN
        a, a_span = self.number()
        self.expect(",")
        b, b_span = self.number()
        closer = self.peek()
        if closer.kind not in (")", "]"):
            self.error(f"expected ')' or ']' closing interval, found {closer.text!r}", closer.span)
        self.next()
        right = CLOSED if closer.kind == "]" else OPEN
        span = Span(start.span.start, closer.span.end)
        self._require_universe(REALS, "interval", span)
        if not a < b:
            self.error(f"interval requires a < b, got {a} and {b}", Span(a_span.start, b_span.end))
        return IntervalExpr(a, b, left, right, span)

    def disk_expr(self):
        start = self.expect_kw("disk")
        self.expect("(")
        cx, _ = self.number()
        self.expect(",")
        cy, _ = self.number()
        self.expect(",")
        r, r_span = self.number()
        boundary = OPEN
        if self.peek().kind == ",":
            self.next()
            tok = self.peek()
            if not self.at_kw(OPEN, CLOSED):
                self.error(f"expected 'open' or 'closed', found {tok.text!r}", tok.span)
            boundary = self.next().text
        end = self.expect(")")
        span = Span(start.span.start, end.span.end)
        self._require_universe(PLANE, "disk", span)
        if not r > 0:
            self.error(f"disk requires a positive radius, got {r}", r_span)
        return DiskExpr(cx, cy, r, boundary, span)

    def divides_expr(self):
        start = self.expect_kw("divides")
        self.expect("(")
        j, _ = self.integer(1, "divisor")
        end = self.expect(")")
        span = Span(start.span.start, end.span.end)
        self._require_universe(NATURALS, "divides", span)
        return DividesExpr(j, span)

    # -- queries ----------------------------------------------------------------

    def query_expr(self):
        tok = self.peek()
        if tok.kind == "kw" and tok.text == "count":
            self.next()
            opener = self.expect("(")
            members = self.member_list_or_all(opener.span)
            end = self.expect(")")
            return CountQuery(members, Span(tok.span.start, end.span.end))
        if tok.kind == "kw" and tok.text in _SLICE_QUERIES:
            self.next()
            opener = self.expect("(")
            m, m_span = self.integer(0, "m")
            if self.peek().kind == ";":
                self.next()
                members = self.set_list()
            else:
                members = self.all_declared(opener.span)
            end = self.expect(")")
            span = Span(tok.span.start, end.span.end)
            n = len(members)
            low = 1 if tok.text == "atmost" else 0
            if not low <= m <= n:
                self.error(f"{tok.text} requires {low} <= m <= n={n}, got m={m}", m_span)
            return _SLICE_QUERIES[tok.text](m, members, span)
        expr = self.set_expr()
        return ExprQuery(expr, expr.span)


def parse(source: str) -> Program:
    """Parse a full program: universe declaration, set bindings, queries."""
    return _Parser(tokenize(source), source).program()


def parse_query(text: str, program: Program) -> "Query":
    """Parse a standalone query expression in the scope of a parsed program."""
    parser = _Parser(tokenize(text), text)
    parser.universe_kind = program.universe_kind
    parser.bindings = list(program.bindings)
    parser.names = dict(program.bindings)
    query = parser.query_expr()
    if parser.peek().kind == ";":
        parser.next()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.error(f"unexpected trailing input {tok.text!r}", tok.span)
    return query


# ---------------------------------------------------------------------------
# pretty printer

def format_number(q: Fraction) -> str:
    """Exact decimal form; raises if the denominator is not 2^a * 5^b."""
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    k2 = k5 = 0
    while d % 2 == 0:
        d //= 2
        k2 += 1
    while d % 5 == 0:
        d //= 5
        k5 += 1
    if d != 1:
        raise ValueError(f"{q} has no finite decimal representation")
    digits = max(k2, k5)
    scaled = abs(q.numerator) * 10 ** digits // q.denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{'-' if q < 0 else ''}{text[:-digits]}.{text[-digits:]}"


def pretty_expr(expr) -> str:
    if isinstance(expr, IntervalExpr):
        lo = "[" if expr.left == CLOSED else "("
        hi = "]" if expr.right == CLOSED else ")"
        return f"interval{lo}{format_number(expr.a)}, {format_number(expr.b)}{hi}"
    if isinstance(expr, DiskExpr):
        suffix = ", closed" if expr.boundary == CLOSED else ""
        return f"disk({format_number(expr.cx)}, {format_number(expr.cy)}, {format_number(expr.r)}{suffix})"
    if isinstance(expr, DividesExpr):
        return f"divides({expr.j})"
    if isinstance(expr, NameExpr):
        return expr.name
    if isinstance(expr, UnionExpr):
        return f"union({', '.join(pretty_expr(e) for e in expr.members)})"
    if isinstance(expr, InterExpr):
        return f"inter({', '.join(pretty_expr(e) for e in expr.members)})"
    if isinstance(expr, NotExpr):
        return f"not({pretty_expr(expr.inner)})"
    raise TypeError(f"not a set expression: {expr!r}")


def pretty_query(query) -> str:
    if isinstance(query, CountQuery):
        return f"count({', '.join(pretty_expr(e) for e in query.members)})"
    for word, cls in _SLICE_QUERIES.items():
        if isinstance(query, cls):
            return f"{word}({query.m}; {', '.join(pretty_expr(e) for e in query.members)})"
    if isinstance(query, ExprQuery):
        return pretty_expr(query.expr)
    raise TypeError(f"not a query: {query!r}")


def pretty_program(program: Program) -> str:
    lines = [f"universe {program.universe_kind};"]
    for name, expr in program.bindings:
        lines.append(f"set {name} = {pretty_expr(expr)};")
    for query in program.queries:
        lines.append(f"query {pretty_query(query)};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# compiler

@dataclass(frozen=True)
class CompiledQuery:
    """A query closed over its compiled member indicators.

    kind is "count" for integer-valued count queries and "mask" for 0/1
    queries; n is the member-collection size (0 for bare expressions).
    """

    pretty: str
    kind: str
    n: int
    evaluate: Callable = field(compare=False)
    ast: object = field(compare=False)


def _check_backend(backend: str) -> None:
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")


def compile_set_expr(expr, program: Program, backend: str = TOMOGRAPHY,
                     _cache: dict | None = None) -> Indicator:
    """Compile a set expression to an evaluable indicator."""
    _check_backend(backend)
    cache = _cache if _cache is not None else {}
    if isinstance(expr, IntervalExpr):
        return interval_set(Interval(expr.a, expr.b, expr.left, expr.right))
    if isinstance(expr, DiskExpr):
        return disk_set(Disk(expr.cx, expr.cy, expr.r, expr.boundary))
    if isinstance(expr, DividesExpr):
        j = expr.j
        return Indicator(lambda x: divides(j, x), f"divides({j})", NATURALS)
    if isinstance(expr, NameExpr):
        if expr.name not in cache:
            cache[expr.name] = compile_set_expr(program.binding(expr.name), program, backend, cache)
        return cache[expr.name]
    if isinstance(expr, InterExpr):
        return reduce(intersect, (compile_set_expr(e, program, backend, cache) for e in expr.members))
    if isinstance(expr, NotExpr):
        return complement(compile_set_expr(expr.inner, program, backend, cache))
    if isinstance(expr, UnionExpr):
        collection = SetCollection(
            compile_set_expr(e, program, backend, cache) for e in expr.members)
        label = pretty_expr(expr)
        if backend == WHITNEY:
            if collection.n > DEFAULT_CAP:
                raise SetlError(
                    f"whitney backend caps unions at {DEFAULT_CAP} members, got {collection.n}",
                    expr.span)
            return Indicator(lambda x: whitney_union(collection, x), label, program.universe_kind)
        return Indicator(lambda x: tomography.union(collection, x), label, program.universe_kind)
    raise TypeError(f"not a set expression: {expr!r}")


def compile_query(query, program: Program, backend: str = TOMOGRAPHY) -> CompiledQuery:
    """Compile a query; the whitney backend answers slice queries by direct counting."""
    _check_backend(backend)
    cache: dict = {}
    text = pretty_query(query)
    if isinstance(query, ExprQuery):
        ind = compile_set_expr(query.expr, program, backend, cache)
        return CompiledQuery(text, "mask", 0, lambda x: ind.fn(x).as_bit(), query)
    members = tuple(compile_set_expr(e, program, backend, cache) for e in query.members)
    collection = SetCollection(members)
    if isinstance(query, CountQuery):
        return CompiledQuery(text, "count", collection.n,
                             lambda x: tomography.count(collection, x), query)
    m = query.m
    if backend == WHITNEY:
        if isinstance(query, ExactlyQuery):
            fn = lambda x: int(tomography.count(collection, x) == m)
        elif isinstance(query, AtMostQuery):
            fn = lambda x: int(1 <= tomography.count(collection, x) <= m)
        else:
            fn = lambda x: int(tomography.count(collection, x) > m)
    else:
        if isinstance(query, ExactlyQuery):
            fn = lambda x: int(tomography.exactly_m(collection, m, x))
        elif isinstance(query, AtMostQuery):
            fn = lambda x: int(tomography.at_most_m(collection, m, x))
        else:
            fn = lambda x: int(tomography.more_than_m(collection, m, x))
    return CompiledQuery(text, "mask", collection.n, fn, query)


def compile_program(program: Program, backend: str = TOMOGRAPHY) -> list[CompiledQuery]:
    return [compile_query(q, program, backend) for q in program.queries]
