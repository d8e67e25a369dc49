"""Tokenizer and recursive-descent parser for the rule language.

    program  := rule+
    rule     := IDENT "@" heads ("\\" heads)? ("<=>" | "==>") (expr "|")? bodylist? "."
    heads    := pattern ("," pattern)*
    pattern  := INT | VAR | SYM | "(" pattern ("," pattern)+ ")"
    bodylist := expr ("," expr)*

Expression precedence, loosest first: ``||``, ``&&``, comparisons
(non-associative), ``+ -``, ``* / mod``, prefix ``! -``.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from ..errors import DslDuplicateRuleError, DslEmptyHeadError, DslSyntaxError, UnboundVariableError
from ..values import INT_MAX, INT_MIN, Sym
from .syntax import (PROPAGATION, SIMPAGATION, SIMPLIFICATION, BinOp, Lit, PLit, PTup, PVar,
                     RuleSyntax, TupleExpr, UnOp, Var, expr_vars, pattern_vars)

KEYWORDS = {"mod", "true", "false"}

# unicode spellings map onto the ASCII operators
_ALIASES = {"=": "==", "≠": "!=", "≤": "<=", "≥": ">=", "∧": "&&", "∨": "||", "¬": "!",
            "⟺": "<=>", "⇔": "<=>", "⟹": "==>", "⇒": "==>"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=>|==>|==|!=|<=|>=|&&|\|\||[@\\,().|<>=!+\-*/≠≤≥∧∨¬⟺⇔⟹⇒])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str  # INT VAR SYM KW OP EOF
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tok = m.group()
        if kind == "int":
            tokens.append(Token("INT", tok, pos))
        elif kind == "ident":
            if tok in KEYWORDS:
                tokens.append(Token("KW", tok, pos))
            elif tok[0].isupper():
                tokens.append(Token("VAR", tok, pos))
            elif tok[0].islower():
                tokens.append(Token("SYM", tok, pos))
            else:
                raise DslSyntaxError(f"invalid identifier {tok!r}", text, pos)
        elif kind == "op":
            tokens.append(Token("OP", _ALIASES.get(tok, tok), pos))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=DslSyntaxError):
        tok = tok or self.tok
        return cls(msg, self.text, tok.pos)

    def at(self, *ops) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, op) -> Token:
        if not self.at(op):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return self.advance()

    def _int(self, tok, negative=False) -> int:
        n = -int(tok.text) if negative else int(tok.text)
        if not INT_MIN <= n <= INT_MAX:
            raise self.error(f"integer literal out of range: {n}", tok)
        return n

    # rules

    def program(self) -> list[RuleSyntax]:
        rules = []
        names = set()
        while self.tok.kind != "EOF":
            r = self.rule()
            if r.name in names:
                raise DslDuplicateRuleError(f"duplicate rule name {r.name!r}", self.text, r.pos)
            names.add(r.name)
            rules.append(r)
        if not rules:
            raise self.error("program contains no rules")
        return rules

    def rule(self) -> RuleSyntax:
        start = self.tok
        if start.kind not in ("SYM", "VAR"):
            raise self.error("expected a rule name")
        self.advance()
        self.expect("@")
        if self.at("<=>", "==>"):
            raise self.error(f"rule {start.text!r} has an empty head", cls=DslEmptyHeadError)
        first = self.heads()
        second = None
        if self.at("\\"):
            self.advance()
            second = self.heads()
        if not self.at("<=>", "==>"):
            raise self.error("expected '<=>' or '==>'")
        arrow = self.advance().text
        if arrow == "==>":
            if second is not None:
                raise self.error("propagation rules cannot have a removed head", start)
            kind, kept, removed = PROPAGATION, first, ()
        elif second is None:
            kind, kept, removed = SIMPLIFICATION, (), first
        else:
            kind, kept, removed = SIMPAGATION, first, second

        guard, body = None, []
        if not self.at("."):
            e = self.expr()
            if self.at("|"):
                self.advance()
                guard = e
                if not self.at("."):
                    body.append(self.expr())
            else:
                body.append(e)
            while body and self.at(","):
                self.advance()
                body.append(self.expr())
        self.expect(".")
        r = RuleSyntax(start.text, kept, removed, guard, tuple(body), kind, start.pos)
        self.check_range(r)
        return r

    def check_range(self, r: RuleSyntax):
        bound = {v.name for p in r.heads for v in pattern_vars(p)}
        exprs = ([r.guard] if r.guard is not None else []) + list(r.body)
        for e in exprs:
            for v in expr_vars(e):
                if v.name not in bound:
                    raise UnboundVariableError(
                        f"variable {v.name} is not bound by the head of rule {r.name!r}",
                        self.text, v.pos)

    def heads(self) -> tuple:
        ps = [self.pattern()]
        while self.at(","):
            self.advance()
            ps.append(self.pattern())
        return tuple(ps)

    def pattern(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return PLit(self._int(t), t.pos)
        if self.at("-") and self.toks[self.i + 1].kind == "INT":
            self.advance()
            return PLit(self._int(self.advance(), negative=True), t.pos)
        if t.kind == "VAR":
            self.advance()
            return PVar(t.text, t.pos)
        if t.kind == "SYM":
            self.advance()
            return PLit(Sym(t.text), t.pos)
        if self.at("("):
            self.advance()
            items = [self.pattern()]
            while self.at(","):
                self.advance()
                items.append(self.pattern())
            self.expect(")")
            if len(items) < 2:
                raise self.error("tuple patterns need at least two elements", t)
            return PTup(tuple(items), t.pos)
        raise self.error(f"expected a pattern, found {t.text or 'end of input'!r}")

    # expressions

    def expr(self):
        return self.disjunction()

    def disjunction(self):
        e = self.conjunction()
        while self.at("||"):
            t = self.advance()
            e = BinOp("||", e, self.conjunction(), t.pos)
        return e

    def conjunction(self):
        e = self.comparison()
        while self.at("&&"):
            t = self.advance()
            e = BinOp("&&", e, self.comparison(), t.pos)
        return e

    def comparison(self):
        e = self.additive()
        if self.at("<", "<=", ">", ">=", "==", "!="):
            t = self.advance()
            e = BinOp(t.text, e, self.additive(), t.pos)
            if self.at("<", "<=", ">", ">=", "==", "!="):
                raise self.error("comparisons do not chain; use parentheses")
        return e

    def additive(self):
        e = self.multiplicative()
        while self.at("+", "-"):
            t = self.advance()
            e = BinOp(t.text, e, self.multiplicative(), t.pos)
        return e

    def multiplicative(self):
        e = self.unary()
        while self.at("*", "/") or (self.tok.kind == "KW" and self.tok.text == "mod"):
            t = self.advance()
            e = BinOp(t.text, e, self.unary(), t.pos)
        return e

    def unary(self):
        t = self.tok
        if self.at("!"):
            self.advance()
            return UnOp("!", self.unary(), t.pos)
        if self.at("-"):
            self.advance()
            if self.tok.kind == "INT":
                return Lit(self._int(self.advance(), negative=True), t.pos)
            return UnOp("neg", self.unary(), t.pos)
        return self.atom()

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Lit(self._int(t), t.pos)
        if t.kind == "VAR":
            self.advance()
            return Var(t.text, t.pos)
        if t.kind == "SYM":
            self.advance()
            return Lit(Sym(t.text), t.pos)
        if t.kind == "KW" and t.text in ("true", "false"):
            self.advance()
            return Lit(t.text == "true", t.pos)
        if self.at("("):
            self.advance()
            items = [self.expr()]
            while self.at(","):
                self.advance()
                items.append(self.expr())
            self.expect(")")
            return items[0] if len(items) == 1 else TupleExpr(tuple(items), t.pos)
        raise self.error(f"expected an expression, found {t.text or 'end of input'!r}")


def parse_program(text: str) -> list[RuleSyntax]:
    return Parser(text).program()
