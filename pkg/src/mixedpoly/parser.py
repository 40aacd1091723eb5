"""Text syntax for mixed polynomials.

Grammar (``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := primary ("^" INT)*
    primary := NUMBER | NUMBER "i" | "i" | "z"k | "zb"k
             | "conj" "(" expr ")" | "(" expr ")"

Juxtaposition is never multiplication: ``2z1`` and ``2 z1`` are errors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .polynomial import MixedPolynomial

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VAR = re.compile(r"z(b?)([0-9]+)\Z")


class ParseError(ValueError):
    def __init__(self, offset: int, message: str, expected: str = ""):
        self.offset = offset
        self.message = message
        self.expected = expected
        text = f"{message} at offset {offset}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


@dataclass(frozen=True)
class SourceExpr:
    text: str
    declared_n: Optional[int] = None


@dataclass
class _Token:
    kind: str  # num, imag, var, conj, op, end
    text: str
    pos: int  # byte offset
    value: object = None


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    byte = lambda k: len(text[:k].encode("utf-8"))  # noqa: E731
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            j = m.end()
            value = float(m.group())
            if j < len(text) and text[j] == "i" and not (
                j + 1 < len(text) and (text[j + 1].isalnum() or text[j + 1] == "_")
            ):
                tokens.append(_Token("imag", text[i : j + 1], byte(i), complex(0.0, value)))
                i = j + 1
            else:
                tokens.append(_Token("num", m.group(), byte(i), value))
                i = j
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            if word == "i":
                tokens.append(_Token("imag", word, byte(i), 1j))
            elif word == "conj":
                tokens.append(_Token("conj", word, byte(i)))
            else:
                v = _VAR.match(word)
                if not v:
                    raise ParseError(byte(i), f"unknown identifier {word!r}", "z<k>, zb<k>, conj, i")
                index = int(v.group(2))
                if index < 1:
                    raise ParseError(byte(i), f"variable index must be >= 1 in {word!r}")
                tokens.append(_Token("var", word, byte(i), (index, bool(v.group(1)))))
            i = m.end()
            continue
        if ch in "+-*^()":
            tokens.append(_Token("op", ch, byte(i)))
            i += 1
            continue
        raise ParseError(byte(i), f"unexpected character {ch!r}")
    tokens.append(_Token("end", "", byte(len(text))))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], n: int):
        self.tokens = tokens
        self.k = 0
        self.n = n

    @property
    def tok(self) -> _Token:
        return self.tokens[self.k]

    def _is_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def _expect_op(self, ch: str) -> None:
        if not self._is_op(ch):
            raise ParseError(self.tok.pos, f"unexpected {self._describe()}", repr(ch))
        self.k += 1

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> MixedPolynomial:
        result = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, f"unexpected {self._describe()}", "operator or end of input")
        return result

    def expr(self) -> MixedPolynomial:
        result = self.term()
        while self._is_op("+") or self._is_op("-"):
            op = self.tok.text
            self.k += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> MixedPolynomial:
        result = self.unary()
        while self._is_op("*"):
            self.k += 1
            result = result * self.unary()
        return result

    def unary(self) -> MixedPolynomial:
        if self._is_op("-"):
            self.k += 1
            return -self.unary()
        if self._is_op("+"):
            self.k += 1
            return self.unary()
        return self.power()

    def power(self) -> MixedPolynomial:
        base = self.primary()
        while self._is_op("^"):
            self.k += 1
            tok = self.tok
            if tok.kind == "op" and tok.text == "-":
                raise ParseError(tok.pos, "negative exponent", "non-negative integer")
            if tok.kind != "num" or not tok.text.isdigit():
                raise ParseError(tok.pos, f"unexpected {self._describe()}", "non-negative integer exponent")
            self.k += 1
            base = base ** int(tok.text)
        return base

    def primary(self) -> MixedPolynomial:
        tok = self.tok
        if tok.kind in ("num", "imag"):
            self.k += 1
            return MixedPolynomial.constant(tok.value, self.n)
        if tok.kind == "var":
            self.k += 1
            index, conjugated = tok.value
            if index > self.n:
                raise ParseError(tok.pos, f"variable index {index} exceeds n = {self.n}")
            return MixedPolynomial.variable(index, self.n, conjugated)
        if tok.kind == "conj":
            self.k += 1
            self._expect_op("(")
            inner = self.expr()
            self._expect_op(")")
            return inner.conjugate()
        if self._is_op("("):
            self.k += 1
            inner = self.expr()
            self._expect_op(")")
            return inner
        raise ParseError(tok.pos, f"unexpected {self._describe()}", "number, variable, conj( or (")


def parse(src: SourceExpr | str, declared_n: Optional[int] = None) -> MixedPolynomial:
    """Parse an expression into its expanded (nu, mu) term map.

    n is ``declared_n`` when given, otherwise the largest variable index used
    (1 for constant expressions).
    """
    if isinstance(src, SourceExpr):
        text, declared_n = src.text, src.declared_n if declared_n is None else declared_n
    else:
        text = src
    if not text or not text.strip():
        raise ParseError(0, "empty expression", "an expression")
    if declared_n is not None and declared_n < 1:
        raise ValueError("declared_n must be a positive integer")
    tokens = _tokenize(text)
    used = [t.value[0] for t in tokens if t.kind == "var"]
    n = declared_n if declared_n is not None else max(used, default=1)
    return _Parser(tokens, n).parse()


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _monomial(nu, mu) -> str:
    parts = []
    for prefix, exps in (("z", nu), ("zb", mu)):
        for j, e in enumerate(exps):
            if e == 1:
                parts.append(f"{prefix}{j + 1}")
            elif e > 1:
                parts.append(f"{prefix}{j + 1}^{e}")
    return "*".join(parts)


def _term_key(item):
    (nu, mu), _ = item
    return (sum(nu) + sum(mu), tuple(-e for e in nu + mu))


def format_polynomial(f: MixedPolynomial) -> str:
    """Canonical text, graded by total degree then lexicographic (z before zb)."""
    if f.is_zero:
        return "0"
    pieces = []
    for (nu, mu), c in sorted(f.terms.items(), key=_term_key):
        mono = _monomial(nu, mu)
        a, b = c.real, c.imag
        if b == 0:
            negative, mag = a < 0, abs(a)
            coeff = "" if (mag == 1 and mono) else _num(mag)
        elif a == 0:
            negative, mag = b < 0, abs(b)
            coeff = "i" if mag == 1 else f"{_num(mag)}i"
        else:
            negative = False
            sign = "-" if b < 0 else "+"
            coeff = f"({_num(a)}{sign}{_num(abs(b))}i)"
        body = "*".join(p for p in (coeff, mono) if p)
        pieces.append((negative, body))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


format = format_polynomial  # noqa: A001
