"""Expression language for q-series: lexer, recursive-descent parser and printer.

Grammar (whitespace is insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' signed-int)?
    atom   := rational | 'q' ['^' exponent] | 'i' | 'w'
            | name '(' expr {(','|';') expr} ')' | '@' name '(' ... ')'
            | '(' expr ')' | '-' atom

A rational literal is ``a`` or ``a/b`` written without spaces.  A q exponent
is a rational literal, a signed one, or a parenthesized signed rational.
Unary minus binds tighter than ``*`` and ``^``: ``-x^2`` means ``(-x)^2``.
Mock theta names may be used bare (``f3``) or with one monomial argument.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import ParseError

# name -> allowed argument counts
BUILTINS: dict[str, tuple[int, ...]] = {
    "j": (2,),
    "m": (3,),
    "JJ": (2,),
    "JB": (2,),
    "Ja": (1,),
    "eta": (1,),
    "poch": (3,),
    "pochinf": (2,),
    "theta": (4,),
    "f3": (0, 1),
    "omega3": (0, 1),
    "f0": (0, 1),
    "f1": (0, 1),
    "g": (2,),
    "phi10": (0, 1),
    "psi10": (0, 1),
    "X10": (0, 1),
    "chi10": (0, 1),
    "bsum": (2,),
}

UNITS = ("i", "w")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class QPow:
    exp: Fraction
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Unit:
    name: str
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    builder: bool = False
    span: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)


Node = Union[Num, QPow, Unit, Neg, BinOp, Pow, Call]


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),;@])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos,
                             frozenset({"number", "name", "operator"}))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, text: str, builders: Mapping[str, tuple[int, ...]] | None = None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.builders = builders or {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _fail(self, expected: set[str], tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"syntax error: found {found}, expected one of {sorted(expected)}", tok.pos,
                         frozenset(expected))

    def _expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            self._fail({text})
        return self._advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self._fail({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Node:
        start = self.tok.pos
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            right = self.term()
            node = BinOp(op, node, right, (start, self.tok.pos))
        return node

    def term(self) -> Node:
        start = self.tok.pos
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance().text
            right = self.factor()
            node = BinOp(op, node, right, (start, self.tok.pos))
        return node

    def factor(self) -> Node:
        start = self.tok.pos
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            k = self._signed_int()
            node = Pow(node, k, (start, self.tok.pos))
        return node

    def _signed_int(self) -> int:
        paren = False
        if self.tok.text == "(":
            self._advance()
            paren = True
        sign = 1
        if self.tok.text in ("-", "+") and self.tok.kind == "op":
            sign = -1 if self._advance().text == "-" else 1
        if self.tok.kind != "num" or "/" in self.tok.text:
            self._fail({"integer exponent"})
        k = sign * int(self._advance().text)
        if paren:
            self._expect(")")
        return k

    def _rational_exponent(self) -> Fraction:
        paren = False
        if self.tok.text == "(":
            self._advance()
            paren = True
        sign = 1
        if self.tok.kind == "op" and self.tok.text in ("-", "+"):
            sign = -1 if self._advance().text == "-" else 1
        if self.tok.kind != "num":
            self._fail({"rational exponent"})
        value = sign * Fraction(self._advance().text)
        if paren:
            self._expect(")")
        return value

    def atom(self) -> Node:
        tok = self.tok
        start = tok.pos
        if tok.kind == "num":
            self._advance()
            return Num(Fraction(tok.text), (start, start + len(tok.text)))
        if tok.kind == "op" and tok.text == "-":
            self._advance()
            arg = self.atom()
            return Neg(arg, (start, self.tok.pos))
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if tok.kind == "op" and tok.text == "@":
            self._advance()
            name_tok = self.tok
            if name_tok.kind != "name":
                self._fail({"builder name"})
            self._advance()
            if name_tok.text not in self.builders:
                raise ParseError(f"unknown builder @{name_tok.text}", name_tok.pos, frozenset(self.builders))
            args = self._call_args(name_tok, required=True)
            self._check_arity(name_tok, args, self.builders[name_tok.text])
            return Call(name_tok.text, args, True, (start, self.tok.pos))
        if tok.kind == "name":
            self._advance()
            name = tok.text
            if name == "q":
                if self.tok.kind == "op" and self.tok.text == "^":
                    # q^k is a single atom; a following '^' would be a power of it
                    self._advance()
                    e = self._rational_exponent()
                    return QPow(e, (start, self.tok.pos))
                return QPow(Fraction(1), (start, self.tok.pos))
            if name in UNITS:
                return Unit(name, (start, self.tok.pos))
            if name not in BUILTINS:
                raise ParseError(f"unknown name {name!r}", start, frozenset(BUILTINS) | {"q", "i", "w"})
            arities = BUILTINS[name]
            args = self._call_args(tok, required=0 not in arities)
            self._check_arity(tok, args, arities)
            return Call(name, args, False, (start, self.tok.pos))
        self._fail({"number", "q", "name", "(", "-"})

    def _call_args(self, name_tok: Token, required: bool) -> tuple:
        if self.tok.text != "(" or self.tok.kind != "op":
            if required:
                self._fail({"("})
            return ()
        self._advance()
        args = [self.expr()]
        while self.tok.kind == "op" and self.tok.text in (",", ";"):
            self._advance()
            args.append(self.expr())
        self._expect(")")
        return tuple(args)

    def _check_arity(self, name_tok: Token, args: tuple, arities: tuple[int, ...]) -> None:
        if len(args) not in arities:
            want = " or ".join(str(a) for a in arities)
            raise ParseError(f"{name_tok.text} takes {want} argument(s), got {len(args)}", name_tok.pos,
                             frozenset())


def parse(text: str, builders: Mapping[str, tuple[int, ...]] | None = None) -> Node:
    """Parse expression text into an AST."""
    if builders is None:
        from .builders import BUILDER_ARITY
        builders = BUILDER_ARITY
    return Parser(text, builders).parse()


# ---------------------------------------------------------------------------
# printer


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _is_plain_atom(node: Node) -> bool:
    return isinstance(node, (Num, QPow, Unit, Call))


def to_text(node: Node) -> str:
    """Render an AST so that parsing the text gives back an equal AST."""
    if isinstance(node, Num):
        if node.value < 0:
            raise ValueError("numeric literals are non-negative; use Neg")
        return _fmt_rational(node.value)
    if isinstance(node, QPow):
        e = node.exp
        if e == 1:
            return "q"
        if e.denominator == 1 and e >= 0:
            return f"q^{e}"
        return f"q^({_fmt_rational(e)})"
    if isinstance(node, Unit):
        return node.name
    if isinstance(node, Call):
        prefix = "@" if node.builder else ""
        if not node.args:
            return prefix + node.name
        return f"{prefix}{node.name}(" + ", ".join(to_text(a) for a in node.args) + ")"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        if _is_plain_atom(node.arg) or isinstance(node.arg, Neg):
            return "-" + inner
        return f"-({inner})"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not (isinstance(node.base, (Num, Unit, Call))):
            base = f"({base})"
        k = f"{node.exp}" if node.exp >= 0 else f"(-{-node.exp})"
        return f"{base}^{k}"
    if isinstance(node, BinOp):
        left = to_text(node.left)
        right = to_text(node.right)
        if node.op in "+-":
            if isinstance(node.right, BinOp) and node.right.op in "+-":
                right = f"({right})"
        else:
            if isinstance(node.left, BinOp) and node.left.op in "+-":
                left = f"({left})"
            if isinstance(node.right, BinOp):
                right = f"({right})"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")
