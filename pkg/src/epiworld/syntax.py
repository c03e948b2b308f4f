"""Surface language for epistemic logic programs.

Hand-written lexer and recursive-descent parser for clingo-style rules
extended with subjective atoms `&k{...}` (and the `&m{...}` shorthand),
plus the AST dataclasses and a printer whose output parses back to the
same AST.

Grammar (informal):

    program   : statement*
    statement : rule | "#show" ["-"] NAME "/" NUM "." | "#const" NAME "=" term "."
    rule      : "{" atom "}" "."                      (choice; head only)
              | head "."  |  head ":-" body "."  |  ":-" body "."  |  ":- ."
    head      : hatom (("," | ";") hatom)*            (disjunction)
    hatom     : ["-"] atom
    body      : literal ("," literal)*
    literal   : ["not" ["not"]] ["-"] atom            (objective)
              | ["not"] ("&k" | "&m") "{" ["~"] ["-"] atom "}"
    atom      : NAME ["(" term ("," term)* ")"]
    term      : NAME ["(" term ("," term)* ")"] | VARIABLE | NUM

`~` is default negation inside a subjective atom, `-` is explicit
negation and binds tighter than `~`.  `&m{l}` is sugar for
`not &k{~l}` and is desugared during parsing.  `%` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

# Atom names a user program may not introduce; the translation owns them.
RESERVED_PREFIXES = ("aux_", "naux_", "k15aux_")


class SourceError(Exception):
    """Problem in an input program, with a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class LexError(SourceError):
    pass


class ParseError(SourceError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Compound:
    functor: str
    args: "tuple[Term, ...]"


Term = Const | Num | Var | Compound


@dataclass(frozen=True)
class Atom:
    """Predicate atom.  An explicitly negated atom -p is a distinct atom."""

    name: str
    args: tuple[Term, ...] = ()
    strong_neg: bool = False


@dataclass(frozen=True)
class ObjLiteral:
    """Objective literal: an atom under 0..2 default negations."""

    atom: Atom
    negs: int = 0


@dataclass(frozen=True)
class KAtom:
    """Subjective atom K l; the inner literal carries at most one `~`."""

    inner: ObjLiteral


@dataclass(frozen=True)
class SubjLiteral:
    katom: KAtom
    negated: bool = False  # at most one outer `not`


BodyLiteral = ObjLiteral | SubjLiteral


@dataclass(frozen=True)
class Rule:
    """head is a disjunction; empty head is a constraint.

    A choice rule has exactly one head atom and an empty body.
    """

    head: tuple[Atom, ...] = ()
    body: tuple[BodyLiteral, ...] = ()
    is_choice: bool = False


@dataclass(frozen=True)
class ShowDirective:
    name: str
    arity: int
    strong_neg: bool = False


@dataclass(frozen=True)
class ConstDirective:
    name: str
    value: Term


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    shows: tuple[ShowDirective, ...] = ()
    consts: tuple[ConstDirective, ...] = ()


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_PUNCT = {",": ",", ".": ".", "(": "(", ")": ")", "{": "{", "}": "}",
          "~": "~", ";": ";", "/": "/", "=": "=", "-": "-"}


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def push(kind: str, text: str, ln: int, cl: int) -> None:
        tokens.append(Token(kind, text, ln, cl))

    while i < n:
        c = source[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue
        ln, cl = line, col
        if c == ":":
            if source[i:i + 2] == ":-":
                push(":-", ":-", ln, cl)
                i += 2
                col += 2
                continue
            raise LexError("expected ':-'", ln, cl)
        if c in _PUNCT:
            push(_PUNCT[c], c, ln, cl)
            i += 1
            col += 1
            continue
        if c in "&#":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i + 1:j]
            if c == "&" and word in ("k", "m"):
                push("&" + word, source[i:j], ln, cl)
            elif c == "#" and word in ("show", "const"):
                push("#" + word, source[i:j], ln, cl)
            else:
                raise LexError(f"unknown token {source[i:j]!r}", ln, cl)
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            push("num", source[i:j], ln, cl)
            col += j - i
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            if word == "not":
                push("not", word, ln, cl)
            elif word[0].isupper():
                push("var", word, ln, cl)
            else:
                push("ident", word, ln, cl)
            col += j - i
            i = j
            continue
        raise LexError(f"unrecognized character {c!r}", ln, cl)
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[Token], allow_reserved: bool = False):
        self.tokens = tokens
        self.pos = 0
        self.allow_reserved = allow_reserved

    # -- token helpers

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: str) -> bool:
        return self.tokens[self.pos].kind == kind

    def take(self, kind: str) -> Token | None:
        if self.at(kind):
            tok = self.tokens[self.pos]
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str) -> Token:
        tok = self.take(kind)
        if tok is None:
            got = self.peek()
            shown = got.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", got.line, got.col)
        return tok

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    # -- grammar

    def program(self) -> Program:
        rules: list[Rule] = []
        shows: list[ShowDirective] = []
        consts: list[tuple[ConstDirective, Token]] = []
        while not self.at("eof"):
            if self.at("#show"):
                shows.append(self.show_directive())
            elif self.at("#const"):
                consts.append(self.const_directive())
            else:
                rules.append(self.rule())
        mapping: dict[str, Term] = {}
        for directive, tok in consts:
            if directive.name in mapping:
                raise ParseError(f"constant {directive.name!r} defined twice", tok.line, tok.col)
            mapping[directive.name] = directive.value
        if mapping:
            rules = [_substitute_consts_rule(r, mapping) for r in rules]
        return Program(tuple(rules), tuple(shows), tuple(d for d, _ in consts))

    def show_directive(self) -> ShowDirective:
        self.expect("#show")
        strong = self.take("-") is not None
        name = self.expect("ident").text
        self.expect("/")
        arity = int(self.expect("num").text)
        self.expect(".")
        return ShowDirective(name, arity, strong)

    def const_directive(self) -> tuple[ConstDirective, Token]:
        tok = self.expect("#const")
        name = self.expect("ident").text
        self.expect("=")
        value = self.term()
        if _term_has_var(value):
            raise ParseError("constant definitions must be ground", tok.line, tok.col)
        self.expect(".")
        return ConstDirective(name, value), tok

    def rule(self) -> Rule:
        if self.take("{"):
            atom = self.atom()
            self.expect("}")
            self.expect(".")
            return Rule((atom,), (), is_choice=True)
        head: tuple[Atom, ...] = ()
        if not self.at(":-"):
            head = self.head()
        body: tuple[BodyLiteral, ...] = ()
        if self.take(":-") and not self.at("."):
            body = self.body()
        self.expect(".")
        return Rule(head, body)

    def head(self) -> tuple[Atom, ...]:
        atoms = [self.head_atom()]
        while self.take(",") or self.take(";"):
            atoms.append(self.head_atom())
        return tuple(atoms)

    def head_atom(self) -> Atom:
        strong = self.take("-") is not None
        atom = self.atom()
        return Atom(atom.name, atom.args, strong)

    def body(self) -> tuple[BodyLiteral, ...]:
        literals = [self.body_literal()]
        while self.take(","):
            literals.append(self.body_literal())
        return tuple(literals)

    def body_literal(self) -> BodyLiteral:
        negs = 0
        while self.at("not"):
            if negs == 2:
                raise self.error("at most two 'not' may stack on a literal")
            self.take("not")
            negs += 1
        if self.at("&k") or self.at("&m"):
            if negs > 1:
                raise self.error("at most one 'not' may precede a subjective atom")
            sugar = self.at("&m")
            self.pos += 1
            inner = self.subjective_inner()
            negated = negs == 1
            if sugar:
                # &m{l} abbreviates not &k{~l}
                inner = ObjLiteral(inner.atom, 1 - inner.negs)
                negated = not negated
            return SubjLiteral(KAtom(inner), negated)
        strong = self.take("-") is not None
        atom = self.atom()
        return ObjLiteral(Atom(atom.name, atom.args, strong), negs)

    def subjective_inner(self) -> ObjLiteral:
        self.expect("{")
        if self.at("not"):
            raise self.error("default negation inside a subjective atom is written '~'")
        negs = 1 if self.take("~") else 0
        if self.at("~"):
            raise self.error("at most one '~' may occur inside a subjective atom")
        if self.at("&k") or self.at("&m"):
            raise self.error("subjective atoms cannot be nested")
        strong = self.take("-") is not None
        atom = self.atom()
        self.expect("}")
        return ObjLiteral(Atom(atom.name, atom.args, strong), negs)

    def atom(self) -> Atom:
        tok = self.expect("ident")
        if not self.allow_reserved and tok.text.startswith(RESERVED_PREFIXES):
            raise ParseError(f"atom name {tok.text!r} uses a reserved prefix", tok.line, tok.col)
        args: tuple[Term, ...] = ()
        if self.take("("):
            parts = [self.term()]
            while self.take(","):
                parts.append(self.term())
            self.expect(")")
            args = tuple(parts)
        return Atom(tok.text, args)

    def term(self) -> Term:
        if self.at("ident"):
            name = self.take("ident").text
            if self.take("("):
                parts = [self.term()]
                while self.take(","):
                    parts.append(self.term())
                self.expect(")")
                return Compound(name, tuple(parts))
            return Const(name)
        if self.at("var"):
            return Var(self.take("var").text)
        if self.at("num"):
            return Num(int(self.take("num").text))
        raise self.error(f"expected a term, found {self.peek().text!r}")


def _term_has_var(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Compound):
        return any(_term_has_var(a) for a in t.args)
    return False


def _substitute_consts_term(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Const) and t.name in mapping:
        return mapping[t.name]
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_substitute_consts_term(a, mapping) for a in t.args))
    return t


def _substitute_consts_atom(a: Atom, mapping: dict[str, Term]) -> Atom:
    return Atom(a.name, tuple(_substitute_consts_term(t, mapping) for t in a.args), a.strong_neg)


def _substitute_consts_rule(r: Rule, mapping: dict[str, Term]) -> Rule:
    head = tuple(_substitute_consts_atom(a, mapping) for a in r.head)
    body = []
    for lit in r.body:
        if isinstance(lit, ObjLiteral):
            body.append(ObjLiteral(_substitute_consts_atom(lit.atom, mapping), lit.negs))
        else:
            inner = lit.katom.inner
            body.append(SubjLiteral(
                KAtom(ObjLiteral(_substitute_consts_atom(inner.atom, mapping), inner.negs)),
                lit.negated))
    return Rule(head, tuple(body), r.is_choice)


def parse_program(tokens: list[Token], allow_reserved: bool = False) -> Program:
    return _Parser(tokens, allow_reserved).program()


def parse_text(source: str, allow_reserved: bool = False) -> Program:
    return parse_program(tokenize(source), allow_reserved)


# ---------------------------------------------------------------------------
# Printer


def print_term(t: Term) -> str:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    return f"{t.functor}({','.join(print_term(a) for a in t.args)})"


def print_atom(a: Atom) -> str:
    sign = "-" if a.strong_neg else ""
    if not a.args:
        return sign + a.name
    return f"{sign}{a.name}({','.join(print_term(t) for t in a.args)})"


def print_objective(lit: ObjLiteral) -> str:
    return "not " * lit.negs + print_atom(lit.atom)


def print_subjective(k: KAtom) -> str:
    inner = ("~" if k.inner.negs else "") + print_atom(k.inner.atom)
    return "&k{ " + inner + " }"


def print_body_literal(lit: BodyLiteral) -> str:
    if isinstance(lit, ObjLiteral):
        return print_objective(lit)
    return ("not " if lit.negated else "") + print_subjective(lit.katom)


def print_rule(r: Rule) -> str:
    if r.is_choice:
        return "{" + print_atom(r.head[0]) + "}."
    head = ", ".join(print_atom(a) for a in r.head)
    body = ", ".join(print_body_literal(l) for l in r.body)
    if head and body:
        return f"{head} :- {body}."
    if head:
        return head + "."
    if body:
        return f":- {body}."
    return ":- ."


def print_show(d: ShowDirective) -> str:
    return f"#show {'-' if d.strong_neg else ''}{d.name}/{d.arity}."


def print_const(d: ConstDirective) -> str:
    return f"#const {d.name} = {print_term(d.value)}."


def print_program(p: Program) -> str:
    lines = [print_rule(r) for r in p.rules]
    lines += [print_show(d) for d in p.shows]
    lines += [print_const(d) for d in p.consts]
    return "\n".join(lines) + ("\n" if lines else "")
