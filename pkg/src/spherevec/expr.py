"""Text grammar for ring elements, vector fields and A_(z) (x) U elements.

Ring expressions use x, y, z, integer literals, + - * / ^ and parentheses;
``/`` only divides by monomials.  Field expressions add the symbols D12,
D23, D31 (and their reversals); element expressions add ``(x)`` or ``⊗``
followed by a basis symbol ``v0``, ``v1``, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ring import LocalizedFun, SphereFun

Laurent = dict  # {(a, b, c): Fraction}, exponents may be negative


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<tensor>\(x\)(?=\s*v\d)|⊗)
  | (?P<basis>v(?P<bidx>\d+))
  | (?P<delta>D(?P<didx>[123]{2}))
  | (?P<num>\d+)
  | (?P<var>[xyz])
  | (?P<op>[-+*/^()])
  """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "bidx":
            kind = "basis"
        if kind == "didx":
            kind = "delta"
        if kind == "tensor":
            tokens.append(Token("tensor", None, pos))
        elif kind == "basis":
            tokens.append(Token("basis", int(m.group("bidx")), pos))
        elif kind == "delta":
            tokens.append(Token("delta", m.group("didx"), pos))
        elif kind == "num":
            tokens.append(Token("num", int(m.group("num")), pos))
        elif kind == "var":
            tokens.append(Token("var", m.group("var"), pos))
        elif kind == "op":
            tokens.append(Token(m.group("op"), None, pos))
        pos = m.end()
    tokens.append(Token("eof", None, len(text)))
    return tokens


def _add(p: Laurent, q: Laurent, sign: int = 1) -> Laurent:
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for (a1, b1, c1), v1 in p.items():
        for (a2, b2, c2), v2 in q.items():
            k = (a1 + a2, b1 + b2, c1 + c2)
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}, found {self._describe(self.tok)}")
        return self.advance()

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.tok.pos if pos is None else pos, self.text)

    @staticmethod
    def _describe(t: Token) -> str:
        if t.kind == "eof":
            return "end of input"
        return repr(t.value if t.value is not None else t.kind)

    # ring grammar -------------------------------------------------------

    def sum(self) -> Laurent:
        acc = self.product()
        while self.tok.kind in "+-":
            sign = 1 if self.advance().kind == "+" else -1
            acc = _add(acc, self.product(), sign)
        return acc

    def product(self) -> Laurent:
        acc = self.unary()
        while self.tok.kind in "*/":
            if self.tok.kind == "*" and self.peek().kind in ("delta", "basis"):
                break
            op = self.advance()
            rhs = self.unary()
            if op.kind == "*":
                acc = _mul(acc, rhs)
            else:
                if len(rhs) != 1:
                    self.error("division is only allowed by monomials", op.pos)
                (k, v), = rhs.items()
                acc = _mul(acc, {(-k[0], -k[1], -k[2]): 1 / v})
        return acc

    def unary(self) -> Laurent:
        if self.tok.kind == "-":
            self.advance()
            return {k: -v for k, v in self.unary().items()}
        if self.tok.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Laurent:
        base = self.atom()
        if self.tok.kind == "^":
            op = self.advance()
            neg = False
            if self.tok.kind == "-":
                self.advance()
                neg = True
            n = self.expect("num").value
            if neg:
                if len(base) != 1:
                    self.error("negative powers are only allowed for monomials", op.pos)
                (k, v), = base.items()
                base = {(-k[0], -k[1], -k[2]): 1 / v}
            result: Laurent = {(0, 0, 0): Fraction(1)}
            for _ in range(n):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> Laurent:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return {(0, 0, 0): Fraction(t.value)} if t.value else {}
        if t.kind == "var":
            self.advance()
            exps = [0, 0, 0]
            exps["xyz".index(t.value)] = 1
            return {tuple(exps): Fraction(1)}
        if t.kind == "(":
            self.advance()
            inner = self.sum()
            self.expect(")")
            return inner
        self.error(f"unexpected {self._describe(t)}")

    def done(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self._describe(self.tok)}")


def parse_laurent(text: str) -> Laurent:
    p = _Parser(text)
    out = p.sum()
    p.done()
    return out


def parse_localized(text: str) -> LocalizedFun:
    """Parse a ring expression into canonical A-localized form."""
    return LocalizedFun.from_laurent(parse_laurent(text))


def parse_sphere(text: str) -> SphereFun:
    f = parse_localized(text)
    if any(f.denom):
        raise ParseError(f"{f} is not an element of A (it has a denominator)", 0, text)
    return f.num


# generator sums -----------------------------------------------------------


def _generator_sum(text: str, kind: str) -> dict:
    """Parse ``c1 <sep> g1 +- c2 <sep> g2 ...`` into {generator: coefficient}.

    For fields the separator is ``*`` (optional) and generators are D-symbols;
    for elements it is the tensor sign and generators are basis symbols.
    """
    p = _Parser(text)
    out: dict = {}
    if p.tok.kind == "num" and p.tok.value == 0 and p.peek().kind == "eof":
        return out
    sign = 1
    first = True
    while True:
        if not first or p.tok.kind in "+-":
            if p.tok.kind not in "+-":
                p.error(f"expected '+' or '-', found {p._describe(p.tok)}")
            sign = 1 if p.advance().kind == "+" else -1
        first = False
        if kind == "delta" and p.tok.kind == "delta":
            coeff: Laurent = {(0, 0, 0): Fraction(1)}
        else:
            coeff = p.product()
            if kind == "delta":
                if p.tok.kind == "*":
                    p.advance()
            else:
                p.expect("tensor")
        gen = p.expect(kind).value
        coeff = {k: sign * v for k, v in coeff.items()}
        out[gen] = _add(out.get(gen, {}), coeff)
        if p.tok.kind == "eof":
            break
    return out


def parse_field_terms(text: str) -> dict[str, LocalizedFun]:
    """``a*D23 + b*D31 + c*D12`` -> {"23": a, "31": b, "12": c}, reversed symbols folded in."""
    raw = _generator_sum(text, "delta")
    out: dict[str, Laurent] = {}
    for sym, coeff in raw.items():
        i, j = sym
        if i == j:
            raise ParseError(f"D{sym} is not a generator (indices must differ)", text.find("D" + sym), text)
        key = sym if sym in ("12", "23", "31") else j + i
        sign = 1 if key == sym else -1
        out[key] = _add(out.get(key, {}), coeff, sign)
    return {k: LocalizedFun.from_laurent(v) for k, v in out.items()}


def parse_element_terms(text: str) -> dict[int, LocalizedFun]:
    """``g0 (x) v0 + g1 (x) v1`` -> {0: g0, 1: g1}."""
    raw = _generator_sum(text, "basis")
    return {i: LocalizedFun.from_laurent(v) for i, v in raw.items()}
