"""Line-oriented definition language and expression notation.

One declaration per line, ``#`` comments, bracketed lists for compound
fields.  The parser tracks line/column for every diagnostic and the printer
emits a canonical reformatting such that parse(print(ast)) == ast.

Statement forms::

    constraint <id> negatable? "<name>" "<statement>"?
    mark <id> positive|negative <shape>
    radical <id> "<name>"? family=<f> from=<radical-id>? strokes=[ ... ]
        regions=[ ... ] baseline=[ <c>+ ... ]? limitfile=<group>? catalog=<key>?
    rule <id> "<name>"? from=<radical-id|family> requires=[ ... ]?
        edits=[ ... ] adds=[ <c>+|- ... ] concept=<concept-id>?
    concept <id> "<name>" aliases=[ ... ]? area=<tag> crypto=<group-id>?
    bind <glyph-literal> -> <concept-id> precedence?
    expr "<expression text>"

Glyph literals: ``<radical>( region=<mark|_> region=( <sub-literal> ) ... ;
rules: <rule-id> ... ; abbreviated )``.  Expressions: arrows are
``[ objects -> morphisms ]``, dualities join two sides with ``~~``,
relations are ``left <sym> right under <glyph>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import model
from .model import (
    Concept,
    DerivationRule,
    Glyph,
    Literal,
    LiteralConjunction,
    Mark,
    NotationError,
    Polarity,
    PropertyConstraint,
    Radical,
    Region,
    RegionSchema,
    Registry,
    Stroke,
    StrokeEdit,
    WidthClass,
    canonical_form,
    canonical_key,
    new_registry,
    validate_glyph,
)

__all__ = [
    "DefinitionSource",
    "Document",
    "ParseError",
    "CompileError",
    "parse",
    "print_document",
    "parse_expression",
    "print_expression",
    "parse_glyph_literal",
    "print_glyph_literal",
    "compile_document",
    "GlyphRef",
    "Standalone",
    "Arrow",
    "Relation",
    "Duality",
]


class ParseError(NotationError):
    def __init__(self, message: str, path: str = "<string>",
                 line: int = 0, col: int = 0):
        self.message = message
        self.path = path
        self.line = line
        self.col = col
        super().__init__(f"{path}:{line}:{col}: {message}")


class CompileError(NotationError):
    def __init__(self, message: str, path: str = "<string>",
                 line: int = 0, col: int = 0):
        self.message = message
        self.path = path
        self.line = line
        self.col = col
        super().__init__(f"{path}:{line}:{col}: {message}")


@dataclass(frozen=True)
class DefinitionSource:
    text: str
    path: str = "<string>"


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

_SPECIALS = '"[]();#'


@dataclass(frozen=True)
class Token:
    kind: str  # word | string | [ | ] | ( | ) | ;
    text: str
    line: int
    col: int


def _tokenize_line(text: str, line_no: int, path: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", path, line_no, col)
            tokens.append(Token("string", text[i + 1:j], line_no, col))
            i = j + 1
        elif c in "[]();":
            tokens.append(Token(c, c, line_no, col))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in _SPECIALS:
                j += 1
            tokens.append(Token("word", text[i:j], line_no, col))
            i = j
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], path: str, line: int):
        self.tokens = tokens
        self.path = path
        self.line = line
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, expected: str) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            col = (last.col + len(last.text)) if last else 1
            raise ParseError(f"expected {expected}, found end of line",
                             self.path, self.line, col)
        self.i += 1
        return tok

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.next(expected)
        if tok.kind != kind:
            raise ParseError(f"expected {expected}, found {tok.text!r}",
                             self.path, tok.line, tok.col)
        return tok

    def take_word(self, expected: str) -> Token:
        return self.expect("word", expected)

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing {tok.text!r}",
                             self.path, tok.line, tok.col)

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        col = tok.col if tok else 1
        return ParseError(message, self.path, self.line, col)


# ---------------------------------------------------------------------------
# Statement AST
# ---------------------------------------------------------------------------

Pos = tuple[int, int]
_NOPOS: Pos = (0, 0)


@dataclass(frozen=True)
class ConstraintStmt:
    id: str
    negatable: bool
    name: str
    statement: str = ""
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class MarkStmt:
    id: str
    polarity: str
    shape: str
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class RadicalStmt:
    id: str
    family: str
    strokes: tuple[Stroke, ...]
    regions: tuple[Region, ...]
    name: Optional[str] = None
    derives_from: Optional[str] = None
    baseline: LiteralConjunction = model.EMPTY_CONJUNCTION
    limit_file: Optional[str] = None
    catalog: Optional[str] = None
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class RuleStmt:
    id: str
    source: str
    edits: tuple[StrokeEdit, ...]
    adds: LiteralConjunction
    name: Optional[str] = None
    requires: tuple[str, ...] = ()
    concept: Optional[str] = None
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class ConceptStmt:
    id: str
    name: str
    area: str
    aliases: tuple[str, ...] = ()
    crypto: Optional[str] = None
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class BindStmt:
    glyph: Glyph
    concept: str
    precedence: bool = False
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class ExprStmt:
    expression: "ExpressionNode"
    pos: Pos = field(default=_NOPOS, compare=False)


Statement = Union[ConstraintStmt, MarkStmt, RadicalStmt, RuleStmt,
                  ConceptStmt, BindStmt, ExprStmt]


@dataclass(frozen=True)
class Document:
    statements: tuple[Statement, ...] = ()
    path: str = field(default="<string>", compare=False)


# ---------------------------------------------------------------------------
# Expression AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GlyphRef:
    """A glyph named by registry id or written inline as a literal."""

    name: Optional[str] = None
    literal: Optional[Glyph] = None


@dataclass(frozen=True)
class Standalone:
    ref: GlyphRef


@dataclass(frozen=True)
class Arrow:
    objects: GlyphRef
    morphisms: Optional[GlyphRef] = None
    head: str = "plain"


@dataclass(frozen=True)
class Relation:
    left: GlyphRef
    right: GlyphRef
    symbol: str
    annotation: Optional[GlyphRef] = None


@dataclass(frozen=True)
class Duality:
    left: Union[Arrow, Standalone, Relation]
    right: Union[Arrow, Standalone, Relation]


ExpressionNode = Union[Standalone, Arrow, Relation, Duality]

RELATION_SYMBOLS = ("=", "<", ">", "<=", ">=", "~")
DUALITY_SYMBOLS = ("~~", "≈")


# ---------------------------------------------------------------------------
# Number and atom helpers
# ---------------------------------------------------------------------------

def _fnum(x: float) -> str:
    return repr(float(x))


def _parse_float(text: str, cur: _Cursor) -> float:
    try:
        return float(text)
    except ValueError:
        raise cur.fail(f"expected a number, found {text!r}") from None


def _parse_point(text: str, cur: _Cursor) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise cur.fail(f"expected x,y point, found {text!r}")
    return (_parse_float(parts[0], cur), _parse_float(parts[1], cur))


def _parse_stroke_atom(text: str, cur: _Cursor) -> Stroke:
    head, at, rest = text.partition("@")
    if not at:
        raise cur.fail(f"stroke atom {text!r} lacks '@group'")
    parts = rest.split(":")
    if len(parts) < 2:
        raise cur.fail(f"stroke atom {text!r} lacks ':payload'")
    group = parts[0]
    heavy = False
    if parts[-1] == "heavy":
        heavy = True
        parts = parts[:-1]
    if len(parts) != 2:
        raise cur.fail(f"malformed stroke atom {text!r}")
    payload = parts[1].split("|")
    width = WidthClass.HEAVY if heavy else WidthClass.REGULAR
    if head == "line":
        points = tuple(_parse_point(p, cur) for p in payload)
        return Stroke(kind="line", group=group, points=points, width=width)
    if head in ("dot", "circle"):
        if len(payload) != 2:
            raise cur.fail(f"{head} stroke takes center|radius: {text!r}")
        return Stroke(kind=head, group=group,
                      points=(_parse_point(payload[0], cur),),
                      radius=_parse_float(payload[1], cur), width=width)
    if head == "arc":
        if len(payload) != 4:
            raise cur.fail(f"arc stroke takes center|r|a0|a1: {text!r}")
        return Stroke(kind="arc", group=group,
                      points=(_parse_point(payload[0], cur),),
                      radius=_parse_float(payload[1], cur),
                      start_angle=_parse_float(payload[2], cur),
                      end_angle=_parse_float(payload[3], cur), width=width)
    raise cur.fail(f"unknown stroke kind {head!r}")


def _fmt_point(p: tuple[float, float]) -> str:
    return f"{_fnum(p[0])},{_fnum(p[1])}"


def _fmt_stroke(s: Stroke) -> str:
    if s.kind == "line":
        payload = "|".join(_fmt_point(p) for p in s.points)
    elif s.kind in ("dot", "circle"):
        payload = f"{_fmt_point(s.points[0])}|{_fnum(s.radius)}"
    else:
        payload = (f"{_fmt_point(s.points[0])}|{_fnum(s.radius)}"
                   f"|{_fnum(s.start_angle)}|{_fnum(s.end_angle)}")
    suffix = ":heavy" if s.width is WidthClass.HEAVY else ""
    return f"{s.kind}@{s.group}:{payload}{suffix}"


def _parse_edit_atom(text: str, cur: _Cursor) -> StrokeEdit:
    head, colon, rest = text.partition(":")
    if not colon:
        raise cur.fail(f"malformed edit atom {text!r}")
    if head == "add":
        return StrokeEdit(kind="add-stroke",
                          strokes=(_parse_stroke_atom(rest, cur),))
    if head == "extend":
        group, colon2, delta = rest.partition(":")
        if not colon2:
            raise cur.fail(f"extend edit takes group:dx,dy: {text!r}")
        return StrokeEdit(kind="extend-stroke", group=group,
                          delta=_parse_point(delta, cur))
    if head == "replace":
        group, colon2, strokes = rest.partition(":")
        if not colon2:
            raise cur.fail(f"replace edit takes group:strokes: {text!r}")
        return StrokeEdit(
            kind="replace-strokes", group=group,
            strokes=tuple(_parse_stroke_atom(s, cur)
                          for s in strokes.split("/")),
        )
    if head == "circle":
        center, bar, radius = rest.partition("|")
        if not bar:
            raise cur.fail(f"circle edit takes cx,cy|r: {text!r}")
        return StrokeEdit(kind="add-center-circle",
                          center=_parse_point(center, cur),
                          radius=_parse_float(radius, cur))
    if head == "cross":
        group, colon2, arm = rest.partition(":")
        edit = StrokeEdit(kind="cross-transform", group=group)
        if colon2:
            edit = StrokeEdit(kind="cross-transform", group=group,
                              radius=_parse_float(arm, cur))
        return edit
    raise cur.fail(f"unknown edit kind {head!r}")


def _fmt_edit(e: StrokeEdit) -> str:
    if e.kind == "add-stroke":
        return f"add:{_fmt_stroke(e.strokes[0])}"
    if e.kind == "extend-stroke":
        return f"extend:{e.group}:{_fmt_point(e.delta)}"
    if e.kind == "replace-strokes":
        return f"replace:{e.group}:" + "/".join(_fmt_stroke(s) for s in e.strokes)
    if e.kind == "add-center-circle":
        return f"circle:{_fmt_point(e.center)}|{_fnum(e.radius)}"
    return f"cross:{e.group}:{_fnum(e.radius)}"


def _parse_region_atom(text: str, cur: _Cursor) -> Region:
    left, at, right = text.partition("@")
    if not at:
        raise cur.fail(f"region atom {text!r} lacks '@anchor'")
    name, colon, constraint = left.partition(":")
    if not colon or not constraint:
        raise cur.fail(f"region atom {text!r} lacks ':constraint'")
    anchor_text, colon2, extent_text = right.partition(":")
    if not colon2:
        raise cur.fail(f"region atom {text!r} lacks ':WxH' extent")
    w_text, x, h_text = extent_text.partition("x")
    if not x:
        raise cur.fail(f"region extent {extent_text!r} lacks 'x'")
    return Region(
        name=name,
        constraint=constraint,
        anchor=_parse_point(anchor_text, cur),
        extent=(_parse_float(w_text, cur), _parse_float(h_text, cur)),
    )


def _fmt_region(r: Region) -> str:
    base = (f"{r.name}:{r.constraint}@{_fmt_point(r.anchor)}"
            f":{_fnum(r.extent[0])}x{_fnum(r.extent[1])}")
    return base + (" expandable" if r.expandable else "")


def _parse_literal_atom(text: str, cur: _Cursor) -> Literal:
    if len(text) < 2 or text[-1] not in "+-":
        raise cur.fail(f"literal atom {text!r} must end with + or -")
    return Literal(text[:-1], Polarity.from_sign(text[-1]))


def _parse_literal_list(words: list[Token], cur: _Cursor) -> LiteralConjunction:
    try:
        return LiteralConjunction.of(
            _parse_literal_atom(w.text, cur) for w in words
        )
    except model.LiteralConflictError as err:
        pos = words[0] if words else None
        raise ParseError(str(err), cur.path,
                         pos.line if pos else cur.line,
                         pos.col if pos else 1) from err


def _fmt_literal(lit: Literal) -> str:
    return f"{lit.constraint}{lit.polarity.sign}"


# ---------------------------------------------------------------------------
# Glyph literals
# ---------------------------------------------------------------------------

def _parse_glyph_body(cur: _Cursor, radical: str) -> Glyph:
    """Parse after the opening paren, through the matching close paren."""
    marks: list[tuple[str, Optional[str]]] = []
    embeds: list[tuple[str, Glyph]] = []
    rules: list[str] = []
    abbreviated = False
    section = "marks"
    while True:
        tok = cur.next("')'")
        if tok.kind == ")":
            break
        if tok.kind == ";":
            section = "next"
            continue
        if tok.kind != "word":
            raise ParseError(f"unexpected {tok.text!r} in glyph literal",
                             cur.path, tok.line, tok.col)
        if section == "rules":
            rules.append(tok.text)
            continue
        if tok.text == "rules:":
            section = "rules"
            continue
        if tok.text == "abbreviated":
            abbreviated = True
            continue
        name, eq, value = tok.text.partition("=")
        if not eq:
            raise ParseError(
                f"expected region=mark, found {tok.text!r}",
                cur.path, tok.line, tok.col,
            )
        if value == "":
            cur.expect("(", "a parenthesized sub-glyph")
            head = cur.take_word("a radical id")
            cur.expect("(", "'('")
            sub = _parse_glyph_body(cur, head.text)
            cur.expect(")", "')'")
            embeds.append((name, sub))
        elif value == "_":
            marks.append((name, None))
        else:
            marks.append((name, value))
    return Glyph(radical=radical, marks=tuple(marks),
                 derivations=tuple(rules), embeds=tuple(embeds),
                 abbreviated=abbreviated)


def _parse_glyph_literal(cur: _Cursor) -> Glyph:
    head = cur.take_word("a radical id")
    cur.expect("(", "'('")
    return _parse_glyph_body(cur, head.text)


def parse_glyph_literal(text: str, path: str = "<glyph>") -> Glyph:
    """Parse a standalone glyph literal like ``set( ; rules: group )``."""
    tokens = _tokenize_line(text, 1, path)
    cur = _Cursor(tokens, path, 1)
    g = _parse_glyph_literal(cur)
    cur.done()
    return g


def print_glyph_literal(g: Glyph) -> str:
    parts = []
    for region, mark in g.marks:
        parts.append(f"{region}={mark if mark is not None else '_'}")
    for region, sub in g.embeds:
        parts.append(f"{region}=( {print_glyph_literal(sub)} )")
    if g.derivations:
        parts.append(";")
        parts.append("rules:")
        parts.extend(g.derivations)
    if g.abbreviated:
        parts.append(";")
        parts.append("abbreviated")
    inner = " ".join(parts)
    return f"{g.radical}( {inner} )" if inner else f"{g.radical}( )"


# ---------------------------------------------------------------------------
# Statement parsing
# ---------------------------------------------------------------------------

def _take_bracket_words(cur: _Cursor, what: str) -> list[Token]:
    cur.expect("[", f"'[' opening {what}")
    words = []
    while True:
        tok = cur.next(f"']' closing {what}")
        if tok.kind == "]":
            return words
        if tok.kind != "word":
            raise ParseError(f"unexpected {tok.text!r} in {what}",
                             cur.path, tok.line, tok.col)
        words.append(tok)


def _split_keyed(tok: Token, cur: _Cursor) -> tuple[str, str]:
    key, eq, value = tok.text.partition("=")
    if not eq:
        raise ParseError(f"expected key=value, found {tok.text!r}",
                         cur.path, tok.line, tok.col)
    return key, value


def _parse_constraint(cur: _Cursor, pos: Pos) -> ConstraintStmt:
    ident = cur.take_word("a constraint id").text
    negatable = False
    tok = cur.peek()
    if tok is not None and tok.kind == "word" and tok.text == "negatable":
        negatable = True
        cur.next("")
    name = cur.expect("string", "a quoted name").text
    statement = ""
    tok = cur.peek()
    if tok is not None and tok.kind == "string":
        statement = tok.text
        cur.next("")
    cur.done()
    return ConstraintStmt(ident, negatable, name, statement, pos)


def _parse_mark(cur: _Cursor, pos: Pos) -> MarkStmt:
    ident = cur.take_word("a mark id").text
    polarity = cur.take_word("positive or negative")
    if polarity.text not in ("positive", "negative"):
        raise ParseError(f"expected positive or negative, found {polarity.text!r}",
                         cur.path, polarity.line, polarity.col)
    shape = cur.take_word("a shape tag").text
    cur.done()
    return MarkStmt(ident, polarity.text, shape, pos)


def _parse_radical(cur: _Cursor, pos: Pos) -> RadicalStmt:
    ident = cur.take_word("a radical id").text
    name = None
    tok = cur.peek()
    if tok is not None and tok.kind == "string":
        name = tok.text
        cur.next("")
    family = None
    derives_from = None
    strokes: Optional[tuple[Stroke, ...]] = None
    regions: Optional[tuple[Region, ...]] = None
    baseline = model.EMPTY_CONJUNCTION
    limit_file = None
    catalog = None
    while cur.peek() is not None:
        tok = cur.take_word("a key=value item")
        key, value = _split_keyed(tok, cur)
        if key == "family":
            family = value
        elif key == "from":
            derives_from = value
        elif key == "limitfile":
            limit_file = value
        elif key == "catalog":
            catalog = value
        elif key == "strokes":
            words = _take_bracket_words(cur, "strokes")
            strokes = tuple(_parse_stroke_atom(w.text, cur) for w in words)
        elif key == "regions":
            words = _take_bracket_words(cur, "regions")
            parsed: list[Region] = []
            for w in words:
                if w.text == "expandable":
                    if not parsed:
                        raise ParseError("'expandable' must follow a region",
                                         cur.path, w.line, w.col)
                    parsed[-1] = model.Region(
                        name=parsed[-1].name, constraint=parsed[-1].constraint,
                        anchor=parsed[-1].anchor, extent=parsed[-1].extent,
                        expandable=True,
                    )
                else:
                    parsed.append(_parse_region_atom(w.text, cur))
            regions = tuple(parsed)
        elif key == "baseline":
            words = _take_bracket_words(cur, "baseline")
            baseline = _parse_literal_list(words, cur)
        else:
            raise ParseError(f"unknown radical key {key!r}",
                             cur.path, tok.line, tok.col)
    if family is None:
        raise cur.fail(f"radical {ident!r} lacks family=")
    if strokes is None:
        raise cur.fail(f"radical {ident!r} lacks strokes=[ ... ]")
    if regions is None:
        raise cur.fail(f"radical {ident!r} lacks regions=[ ... ]")
    return RadicalStmt(ident, family, strokes, regions, name, derives_from,
                       baseline, limit_file, catalog, pos)


def _parse_rule(cur: _Cursor, pos: Pos) -> RuleStmt:
    ident = cur.take_word("a rule id").text
    name = None
    tok = cur.peek()
    if tok is not None and tok.kind == "string":
        name = tok.text
        cur.next("")
    source = None
    requires: tuple[str, ...] = ()
    edits: tuple[StrokeEdit, ...] = ()
    adds = model.EMPTY_CONJUNCTION
    concept = None
    while cur.peek() is not None:
        tok = cur.take_word("a key=value item")
        key, value = _split_keyed(tok, cur)
        if key == "from":
            source = value
        elif key == "concept":
            concept = value
        elif key == "requires":
            words = _take_bracket_words(cur, "requires")
            requires = tuple(w.text for w in words)
        elif key == "edits":
            words = _take_bracket_words(cur, "edits")
            edits = tuple(_parse_edit_atom(w.text, cur) for w in words)
        elif key == "adds":
            words = _take_bracket_words(cur, "adds")
            adds = _parse_literal_list(words, cur)
        else:
            raise ParseError(f"unknown rule key {key!r}",
                             cur.path, tok.line, tok.col)
    if source is None:
        raise cur.fail(f"rule {ident!r} lacks from=")
    return RuleStmt(ident, source, edits, adds, name, requires, concept, pos)


def _parse_concept(cur: _Cursor, pos: Pos) -> ConceptStmt:
    ident = cur.take_word("a concept id").text
    name = cur.expect("string", "a quoted name").text
    area = ""
    aliases: tuple[str, ...] = ()
    crypto = None
    while cur.peek() is not None:
        tok = cur.take_word("a key=value item")
        key, value = _split_keyed(tok, cur)
        if key == "area":
            area = value
        elif key == "crypto":
            crypto = value
        elif key == "aliases":
            words = _take_bracket_words(cur, "aliases")
            aliases = tuple(w.text for w in words)
        else:
            raise ParseError(f"unknown concept key {key!r}",
                             cur.path, tok.line, tok.col)
    return ConceptStmt(ident, name, area, aliases, crypto, pos)


def _parse_bind(cur: _Cursor, pos: Pos) -> BindStmt:
    g = _parse_glyph_literal(cur)
    arrow = cur.take_word("'->'")
    if arrow.text != "->":
        raise ParseError(f"expected '->', found {arrow.text!r}",
                         cur.path, arrow.line, arrow.col)
    concept = cur.take_word("a concept id").text
    precedence = False
    tok = cur.peek()
    if tok is not None and tok.kind == "word" and tok.text == "precedence":
        precedence = True
        cur.next("")
    cur.done()
    return BindStmt(g, concept, precedence, pos)


def _parse_expr_stmt(cur: _Cursor, pos: Pos) -> ExprStmt:
    text_tok = cur.expect("string", "a quoted expression")
    cur.done()
    expression = parse_expression(text_tok.text, cur.path,
                                  text_tok.line, text_tok.col)
    return ExprStmt(expression, pos)


_STATEMENT_PARSERS = {
    "constraint": _parse_constraint,
    "mark": _parse_mark,
    "radical": _parse_radical,
    "rule": _parse_rule,
    "concept": _parse_concept,
    "bind": _parse_bind,
    "expr": _parse_expr_stmt,
}

_DECL_KINDS = {
    ConstraintStmt: "constraint",
    MarkStmt: "mark",
    RadicalStmt: "radical",
    RuleStmt: "rule",
    ConceptStmt: "concept",
}


def parse(source: Union[str, DefinitionSource],
          path: str = "<string>") -> Document:
    """Parse a definition document; diagnostics carry line and column."""
    if isinstance(source, DefinitionSource):
        text, path = source.text, source.path
    else:
        text = source
    statements: list[Statement] = []
    declared: set[tuple[str, str]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(raw, line_no, path)
        if not tokens:
            continue
        head = tokens[0]
        parser = _STATEMENT_PARSERS.get(head.text)
        if head.kind != "word" or parser is None:
            raise ParseError(f"unknown statement {head.text!r}",
                             path, head.line, head.col)
        cur = _Cursor(tokens[1:], path, line_no)
        stmt = parser(cur, (line_no, head.col))
        kind = _DECL_KINDS.get(type(stmt))
        if kind is not None:
            key = (kind, stmt.id)  # type: ignore[union-attr]
            if key in declared:
                raise ParseError(
                    f"duplicate {kind} declaration {stmt.id!r}",  # type: ignore[union-attr]
                    path, line_no, head.col,
                )
            declared.add(key)
        statements.append(stmt)
    return Document(tuple(statements), path)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _print_stmt(stmt: Statement) -> str:
    if isinstance(stmt, ConstraintStmt):
        parts = ["constraint", stmt.id]
        if stmt.negatable:
            parts.append("negatable")
        parts.append(f'"{stmt.name}"')
        if stmt.statement:
            parts.append(f'"{stmt.statement}"')
        return " ".join(parts)
    if isinstance(stmt, MarkStmt):
        return f"mark {stmt.id} {stmt.polarity} {stmt.shape}"
    if isinstance(stmt, RadicalStmt):
        parts = ["radical", stmt.id]
        if stmt.name is not None:
            parts.append(f'"{stmt.name}"')
        parts.append(f"family={stmt.family}")
        if stmt.derives_from is not None:
            parts.append(f"from={stmt.derives_from}")
        parts.append("strokes=[ " + " ".join(_fmt_stroke(s) for s in stmt.strokes) + " ]")
        parts.append("regions=[ " + " ".join(_fmt_region(r) for r in stmt.regions) + " ]")
        if len(stmt.baseline):
            parts.append("baseline=[ " + " ".join(_fmt_literal(l) for l in stmt.baseline) + " ]")
        if stmt.limit_file is not None:
            parts.append(f"limitfile={stmt.limit_file}")
        if stmt.catalog is not None:
            parts.append(f"catalog={stmt.catalog}")
        return " ".join(parts)
    if isinstance(stmt, RuleStmt):
        parts = ["rule", stmt.id]
        if stmt.name is not None:
            parts.append(f'"{stmt.name}"')
        parts.append(f"from={stmt.source}")
        if stmt.requires:
            parts.append("requires=[ " + " ".join(stmt.requires) + " ]")
        if stmt.edits:
            parts.append("edits=[ " + " ".join(_fmt_edit(e) for e in stmt.edits) + " ]")
        if len(stmt.adds):
            parts.append("adds=[ " + " ".join(_fmt_literal(l) for l in stmt.adds) + " ]")
        if stmt.concept is not None:
            parts.append(f"concept={stmt.concept}")
        return " ".join(parts)
    if isinstance(stmt, ConceptStmt):
        parts = ["concept", stmt.id, f'"{stmt.name}"']
        if stmt.aliases:
            parts.append("aliases=[ " + " ".join(stmt.aliases) + " ]")
        if stmt.area:
            parts.append(f"area={stmt.area}")
        if stmt.crypto is not None:
            parts.append(f"crypto={stmt.crypto}")
        return " ".join(parts)
    if isinstance(stmt, BindStmt):
        suffix = " precedence" if stmt.precedence else ""
        return f"bind {print_glyph_literal(stmt.glyph)} -> {stmt.concept}{suffix}"
    if isinstance(stmt, ExprStmt):
        return f'expr "{print_expression(stmt.expression)}"'
    raise TypeError(f"not a statement: {stmt!r}")


def print_document(doc: Document) -> str:
    """Canonical text of a document; parse(print_document(d)) == d."""
    if not doc.statements:
        return ""
    return "\n".join(_print_stmt(s) for s in doc.statements) + "\n"


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

def parse_expression(text: str, path: str = "<expr>",
                     line: int = 1, col_offset: int = 0) -> ExpressionNode:
    """Parse arrow/relation/duality notation over glyph references."""
    tokens = _tokenize_line(text, line, path)
    if col_offset:
        tokens = [Token(t.kind, t.text, t.line, t.col + col_offset)
                  for t in tokens]
    cur = _Cursor(tokens, path, line)
    node = _parse_expr_side(cur)
    tok = cur.peek()
    if tok is not None and tok.kind == "word" and tok.text in DUALITY_SYMBOLS:
        cur.next("")
        right = _parse_expr_side(cur)
        node = Duality(node, right)
    cur.done()
    return node


def _parse_expr_side(cur: _Cursor) -> Union[Arrow, Standalone, Relation]:
    tok = cur.peek()
    if tok is None:
        raise cur.fail("expected an expression")
    if tok.kind == "[":
        cur.next("")
        objects = _parse_expr_atom(cur)
        arrow = cur.take_word("'->'")
        if arrow.text != "->":
            raise ParseError(f"expected '->', found {arrow.text!r}",
                             cur.path, arrow.line, arrow.col)
        morphisms = None
        nxt = cur.peek()
        if nxt is not None and nxt.kind != "]":
            morphisms = _parse_expr_atom(cur)
        cur.expect("]", "']'")
        return Arrow(objects, morphisms)
    left = _parse_expr_atom(cur)
    nxt = cur.peek()
    if nxt is not None and nxt.kind == "word" and nxt.text in RELATION_SYMBOLS:
        symbol = cur.next("").text
        right = _parse_expr_atom(cur)
        annotation = None
        under = cur.peek()
        if under is not None and under.kind == "word" and under.text == "under":
            cur.next("")
            annotation = _parse_expr_atom(cur)
        return Relation(left, right, symbol, annotation)
    return Standalone(left)


def _parse_expr_atom(cur: _Cursor) -> GlyphRef:
    tok = cur.take_word("a glyph reference")
    if tok.text in RELATION_SYMBOLS or tok.text in DUALITY_SYMBOLS or tok.text == "->":
        raise ParseError(f"expected a glyph reference, found {tok.text!r}",
                         cur.path, tok.line, tok.col)
    nxt = cur.peek()
    if nxt is not None and nxt.kind == "(":
        cur.next("")
        literal = _parse_glyph_body(cur, tok.text)
        return GlyphRef(name=None, literal=literal)
    return GlyphRef(name=tok.text, literal=None)


def print_expression(node: ExpressionNode) -> str:
    if isinstance(node, Duality):
        return f"{print_expression(node.left)} ~~ {print_expression(node.right)}"
    if isinstance(node, Arrow):
        objects = _fmt_ref(node.objects)
        if node.morphisms is None:
            return f"[ {objects} -> ]"
        return f"[ {objects} -> {_fmt_ref(node.morphisms)} ]"
    if isinstance(node, Relation):
        base = f"{_fmt_ref(node.left)} {node.symbol} {_fmt_ref(node.right)}"
        if node.annotation is not None:
            base += f" under {_fmt_ref(node.annotation)}"
        return base
    if isinstance(node, Standalone):
        return _fmt_ref(node.ref)
    raise TypeError(f"not an expression node: {node!r}")


def _fmt_ref(ref: GlyphRef) -> str:
    if ref.literal is not None:
        return print_glyph_literal(ref.literal)
    return ref.name or ""


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------

def expressions(doc: Document) -> tuple[ExpressionNode, ...]:
    return tuple(s.expression for s in doc.statements if isinstance(s, ExprStmt))


def compile_document(doc: Document,
                     base: Optional[Registry] = None) -> Registry:
    """Compile a parsed document into a Registry.

    Definitions extend ``base`` when given.  Construction errors are
    re-raised as CompileError with the position of the offending statement.
    """
    constraints = list(base.constraints) if base else []
    marks = list(base.marks) if base else []
    radicals = list(base.radicals) if base else []
    rules = list(base.rules) if base else []
    concepts = list(base.concepts) if base else []
    positions: dict[tuple[str, str], Pos] = {}

    for stmt in doc.statements:
        if isinstance(stmt, ConstraintStmt):
            constraints.append(PropertyConstraint(
                id=stmt.id, name=stmt.name, statement=stmt.statement,
                negatable=stmt.negatable,
            ))
            positions[("constraint", stmt.id)] = stmt.pos
        elif isinstance(stmt, MarkStmt):
            marks.append(Mark(id=stmt.id, polarity=Polarity(stmt.polarity),
                              printable=stmt.shape))
            positions[("mark", stmt.id)] = stmt.pos
        elif isinstance(stmt, RadicalStmt):
            try:
                family = model.Family(stmt.family)
            except ValueError:
                raise CompileError(f"unknown family {stmt.family!r}",
                                   doc.path, *stmt.pos) from None
            radicals.append(Radical(
                id=stmt.id, name=stmt.name if stmt.name is not None else stmt.id,
                family=family, strokes=stmt.strokes,
                schema=RegionSchema(stmt.regions),
                derives_from=stmt.derives_from, baseline=stmt.baseline,
                limit_file=stmt.limit_file, catalog_key=stmt.catalog,
            ))
            positions[("radical", stmt.id)] = stmt.pos
        elif isinstance(stmt, RuleStmt):
            rules.append(DerivationRule(
                id=stmt.id, name=stmt.name if stmt.name is not None else stmt.id,
                source=stmt.source, stroke_edits=stmt.edits,
                literals_added=stmt.adds, target_concept=stmt.concept,
                requires=stmt.requires,
            ))
            positions[("rule", stmt.id)] = stmt.pos
        elif isinstance(stmt, ConceptStmt):
            concepts.append(Concept(
                id=stmt.id, name=stmt.name, aliases=stmt.aliases,
                area=stmt.area, cryptomorphism_group=stmt.crypto,
            ))
            positions[("concept", stmt.id)] = stmt.pos

    try:
        registry = new_registry(constraints=constraints, marks=marks,
                                radicals=radicals, rules=rules,
                                concepts=concepts, bindings=())
    except NotationError as err:
        pos = _NOPOS
        if isinstance(err, model.DanglingReferenceError) and err.referrer:
            for kind in model.ENTITY_KINDS:
                if (kind, err.referrer) in positions:
                    pos = positions[(kind, err.referrer)]
                    break
        raise CompileError(str(err), doc.path, *pos) from err

    bindings: list[model.Binding] = []
    seen: dict[str, str] = {}
    for stmt in doc.statements:
        if not isinstance(stmt, BindStmt):
            continue
        try:
            if registry.find("concept", stmt.concept) is None:
                raise model.DanglingReferenceError("concept", stmt.concept, "bind")
            validate_glyph(stmt.glyph, registry)
            cglyph = canonical_form(stmt.glyph, registry)
            key = canonical_key(cglyph, registry)
            if key in seen and seen[key] != stmt.concept:
                raise model.InvalidDefinitionError(
                    f"glyph {key} bound to both {seen[key]!r} and "
                    f"{stmt.concept!r}"
                )
            seen[key] = stmt.concept
        except NotationError as err:
            raise CompileError(str(err), doc.path, *stmt.pos) from err
        bindings.append(model.Binding(glyph=cglyph, concept=stmt.concept,
                                      precedence=stmt.precedence))

    base_bindings = list(base.bindings) if base else []
    return new_registry(constraints=constraints, marks=marks,
                        radicals=radicals, rules=rules, concepts=concepts,
                        bindings=(*base_bindings, *bindings))
