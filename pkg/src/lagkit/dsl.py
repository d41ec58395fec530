"""Tiny expression language for parameterized immersions into C^n.

Grammar (UTF-8 text, `#` starts a comment running to end of line):

    spec      := "params" param ("," param)* ";"
                 "signature" INT INT ";"
                 "map" expr ("," expr)* [";"]
    param     := NAME ":" "[" number "," number "]"
    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/") unary)*
    unary     := "-" unary | power
    power     := atom ["^" ["-"] INT]
    atom      := NUMBER | "i" | NAME | NAME "(" expr ")" | "(" expr ")"

`i` is the imaginary unit.  Functions: exp, sin, cos, sinh, cosh, sqrt (sqrt
only for positive real subexpressions).  Powers take integer exponents only,
which keeps evaluation total and differentiable on the domain box.

serialize() emits canonical text; parse(serialize(spec)) reproduces the
params/signature/components structure exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .ambient import Signature
from .errors import (
    ArityError,
    DomainError,
    DslSyntaxError,
    UndeclaredParameterError,
    UnknownFunctionError,
)
from . import jets
from .jets import ComplexJet, Jet

__all__ = [
    "Num",
    "Imag",
    "Ref",
    "Neg",
    "Bin",
    "Pow",
    "Call",
    "Param",
    "ImmersionSpec",
    "parse",
    "serialize",
    "serialize_expr",
    "eval_expr",
    "evaluate_map_jets",
    "FUNCTION_NAMES",
]

FUNCTION_NAMES = ("exp", "sin", "cos", "sinh", "cosh", "sqrt")
_KEYWORDS = ("params", "signature", "map")


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Num | Imag | Ref | Neg | Bin | Pow | Call


@dataclass(frozen=True)
class Param:
    name: str
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"parameter {self.name}: need lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class ImmersionSpec:
    """Parsed immersion: parameter box, ambient signature, component map."""

    params: tuple[Param, ...]
    signature: Signature
    components: tuple[Expr, ...]
    name: str = "unnamed"
    expected_index: int | None = None

    def __post_init__(self):
        if len(self.components) != self.signature.n:
            raise ValueError(
                f"{self.signature.n} components required, got {len(self.components)}"
            )
        if not self.params:
            raise ValueError("at least one parameter required")

    @property
    def num_params(self) -> int:
        return len(self.params)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def same_structure(self, other: "ImmersionSpec") -> bool:
        """Structural equality ignoring metadata (name, expected_index)."""
        return (
            self.params == other.params
            and self.signature == other.signature
            and self.components == other.components
        )

    def with_metadata(self, name=None, expected_index=None) -> "ImmersionSpec":
        out = self
        if name is not None:
            out = replace(out, name=name)
        if expected_index is not None:
            out = replace(out, expected_index=expected_index)
        return out


# -- tokenizer ----------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | eof
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<op>[-+*/^(),:;\[\]])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            col = pos - line_start + 1
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.param_names: tuple[str, ...] = ()

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def _fail(self, message, tok=None):
        tok = tok or self.cur
        raise DslSyntaxError(message, tok.line, tok.column)

    def _expect_op(self, text) -> _Token:
        tok = self.cur
        if tok.kind != "op" or tok.text != text:
            self._fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self._advance()

    def _expect_keyword(self, word):
        tok = self.cur
        if tok.kind != "name" or tok.text != word:
            self._fail(f"expected keyword {word!r}, found {tok.text or 'end of input'!r}")
        self._advance()

    def _signed_number(self) -> float:
        negative = False
        if self.cur.kind == "op" and self.cur.text == "-":
            self._advance()
            negative = True
        tok = self.cur
        if tok.kind != "num":
            self._fail(f"expected a number, found {tok.text or 'end of input'!r}")
        self._advance()
        value = float(tok.text)
        return -value if negative else value

    def _integer(self) -> int:
        tok = self.cur
        if tok.kind != "num" or any(ch in tok.text for ch in ".eE"):
            self._fail(f"expected an integer, found {tok.text or 'end of input'!r}")
        self._advance()
        return int(tok.text)

    def parse_spec(self) -> ImmersionSpec:
        self._expect_keyword("params")
        params = [self._param()]
        while self.cur.kind == "op" and self.cur.text == ",":
            self._advance()
            params.append(self._param())
        self._expect_op(";")

        self._expect_keyword("signature")
        n = self._integer()
        s = self._integer()
        self._expect_op(";")
        try:
            signature = Signature(n, s)
        except ValueError as exc:
            self._fail(str(exc))

        self.param_names = tuple(p.name for p in params)
        seen = set()
        for p in params:
            if p.name in seen:
                self._fail(f"duplicate parameter name {p.name!r}")
            seen.add(p.name)

        self._expect_keyword("map")
        components = [self._expr()]
        while self.cur.kind == "op" and self.cur.text == ",":
            self._advance()
            components.append(self._expr())
        if self.cur.kind == "op" and self.cur.text == ";":
            self._advance()
        if self.cur.kind != "eof":
            self._fail(f"trailing input {self.cur.text!r}")

        if len(components) != n:
            self._fail(f"signature declares n={n} but map has {len(components)} components")
        return ImmersionSpec(tuple(params), signature, tuple(components))

    def _param(self) -> Param:
        tok = self.cur
        if tok.kind != "name":
            self._fail(f"expected a parameter name, found {tok.text or 'end of input'!r}")
        name = tok.text
        if name == "i" or name in FUNCTION_NAMES or name in _KEYWORDS:
            self._fail(f"{name!r} is reserved and cannot name a parameter", tok)
        self._advance()
        self._expect_op(":")
        self._expect_op("[")
        lo = self._signed_number()
        self._expect_op(",")
        hi = self._signed_number()
        self._expect_op("]")
        if not lo < hi:
            self._fail(f"parameter {name!r}: need lo < hi, got [{lo}, {hi}]", tok)
        return Param(name, lo, hi)

    # expression grammar ------------------------------------------------

    def _expr(self) -> Expr:
        node = self._term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self._advance().text
            node = Bin(op, node, self._term())
        return node

    def _term(self) -> Expr:
        node = self._unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self._advance().text
            node = Bin(op, node, self._unary())
        return node

    def _unary(self) -> Expr:
        if self.cur.kind == "op" and self.cur.text == "-":
            self._advance()
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        node = self._atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            self._advance()
            negative = False
            if self.cur.kind == "op" and self.cur.text == "-":
                self._advance()
                negative = True
            k = self._integer()
            node = Pow(node, -k if negative else k)
        return node

    def _atom(self) -> Expr:
        tok = self.cur
        if tok.kind == "num":
            self._advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self._advance()
            if tok.text == "i":
                return Imag()
            if self.cur.kind == "op" and self.cur.text == "(":
                if tok.text not in FUNCTION_NAMES:
                    raise UnknownFunctionError(
                        f"unknown function {tok.text!r}", tok.line, tok.column
                    )
                self._advance()
                arg = self._expr()
                if self.cur.kind == "op" and self.cur.text == ",":
                    raise ArityError(
                        f"{tok.text} takes exactly one argument",
                        self.cur.line,
                        self.cur.column,
                    )
                self._expect_op(")")
                return Call(tok.text, arg)
            if tok.text not in self.param_names:
                raise UndeclaredParameterError(
                    f"undeclared parameter {tok.text!r}", tok.line, tok.column
                )
            return Ref(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            node = self._expr()
            self._expect_op(")")
            return node
        self._fail(f"expected an expression, found {tok.text or 'end of input'!r}")


def parse(text: str) -> ImmersionSpec:
    """Parse DSL text into an ImmersionSpec (positions reported on errors)."""
    return _Parser(text).parse_spec()


# -- serializer ----------------------------------------------------------------

_PREC_ADD = 10
_PREC_MUL = 20
_PREC_NEG = 25
_PREC_POW = 30
_PREC_ATOM = 40


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _prec(e: Expr) -> int:
    if isinstance(e, Bin):
        return _PREC_ADD if e.op in "+-" else _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _emit(e: Expr) -> str:
    if isinstance(e, Num):
        return _fmt_number(e.value)
    if isinstance(e, Imag):
        return "i"
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({_emit(e.arg)})"
    if isinstance(e, Neg):
        inner = _emit(e.arg)
        if _prec(e.arg) < _PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Pow):
        base = _emit(e.base)
        if _prec(e.base) < _PREC_ATOM:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Bin):
        mine = _prec(e)
        left = _emit(e.left)
        if _prec(e.left) < mine:
            left = f"({left})"
        right = _emit(e.right)
        if _prec(e.right) <= mine:
            right = f"({right})"
        return f"{left}{e.op}{right}"
    raise TypeError(f"not an expression node: {e!r}")


def serialize_expr(e: Expr) -> str:
    return _emit(e)


def serialize(spec: ImmersionSpec) -> str:
    """Canonical text for a spec; parse() of the result restores the structure."""
    params = ", ".join(
        f"{p.name}:[{_fmt_number(p.lo)},{_fmt_number(p.hi)}]" for p in spec.params
    )
    comps = ", ".join(_emit(c) for c in spec.components)
    return (
        f"params {params};\n"
        f"signature {spec.signature.n} {spec.signature.s};\n"
        f"map {comps};\n"
    )


# -- evaluation ----------------------------------------------------------------

def eval_expr(e: Expr, env: dict[str, Jet], num_vars: int, order: int) -> ComplexJet:
    """Evaluate an expression over a jet environment; result is a complex jet."""
    if isinstance(e, Num):
        return ComplexJet.constant(e.value, num_vars, order)
    if isinstance(e, Imag):
        return ComplexJet.constant(1j, num_vars, order)
    if isinstance(e, Ref):
        return ComplexJet.from_real(env[e.name])
    if isinstance(e, Neg):
        return -eval_expr(e.arg, env, num_vars, order)
    if isinstance(e, Bin):
        left = eval_expr(e.left, env, num_vars, order)
        right = eval_expr(e.right, env, num_vars, order)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        return left / right
    if isinstance(e, Pow):
        return jets.cipow(eval_expr(e.base, env, num_vars, order), e.exponent)
    if isinstance(e, Call):
        arg = eval_expr(e.arg, env, num_vars, order)
        fn = {
            "exp": jets.cexp,
            "sin": jets.csin,
            "cos": jets.ccos,
            "sinh": jets.csinh,
            "cosh": jets.ccosh,
            "sqrt": jets.csqrt,
        }[e.fn]
        return fn(arg)
    raise TypeError(f"not an expression node: {e!r}")


def check_point_in_domain(spec: ImmersionSpec, point, slack: float = 1e-12):
    """Raise DomainError unless the point sits in the (closed) domain box."""
    if len(point) != spec.num_params:
        raise DomainError(
            f"point has {len(point)} coordinates, spec has {spec.num_params} parameters"
        )
    for p, x in zip(spec.params, point):
        if not (p.lo - slack <= x <= p.hi + slack):
            raise DomainError(
                f"coordinate {p.name}={x!r} outside [{p.lo}, {p.hi}]"
            )


def evaluate_map_jets(spec: ImmersionSpec, point, order: int) -> list[ComplexJet]:
    """Jets of every component of the immersion at an interior point."""
    check_point_in_domain(spec, point)
    m = spec.num_params
    env = {
        p.name: Jet.seed(k, point[k], m, order) for k, p in enumerate(spec.params)
    }
    return [eval_expr(c, env, m, order) for c in spec.components]
