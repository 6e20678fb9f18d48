"""Reader for the line-oriented germ / unfolding file format.

Example::

    # the C5 germ
    germ
    vars x y
    f1 = x
    f2 = y^2
    f3 = x*y^3 - x^5*y

An ``unfolding`` file declares a third variable (the parameter).  Products
may be written with ``*`` or by juxtaposition (``2x y``, ``x(y+1)``); a run
of declared one-letter variables such as ``xy`` is read as their product.
Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .polycore import Polynomial

CANONICAL = {"germ": ("x", "y"), "unfolding": ("x", "y", "t")}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


class GermParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class GermSpec:
    kind: str
    variables: tuple
    components: tuple
    name: str = ""


def _tokenize(text, line, offset):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
            raise GermParseError(f"unexpected character {text[col - offset - 1]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), offset + start + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, variables, gens, line, end_col):
        self.tokens = tokens
        self.i = 0
        self.variables = variables  # name as written -> canonical name
        self.gens = gens
        self.line = line
        self.end_col = end_col

    def error(self, message, tok=None):
        col = tok[2] if tok else self.end_col
        raise GermParseError(message, self.line, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()[1]!r}", self.peek())
        return p

    def expr(self):
        p = self.term()
        while self.peek() and self.peek()[1] in "+-" and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def _starts_factor(self, tok):
        return tok is not None and (tok[0] in ("num", "name") or tok[1] == "(")

    def term(self):
        p = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.take()
                q = self.unary()
                if tok[1] == "*":
                    p = p * q
                else:
                    if not q.is_constant() or not q.constant_term():
                        self.error("division is only allowed by a nonzero constant", tok)
                    p = p / q.constant_term()
            elif self._starts_factor(tok):
                p = p * self.power()
            else:
                return p

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        tok = self.peek()
        if tok and tok[0] == "name":
            self.take()
            factors = self.name(tok[1], tok[2])
        else:
            factors = [self.atom()]
        tok = self.peek()
        if tok and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp is None or exp[0] != "num" or not exp[1].isdigit():
                self.error("exponent must be a nonnegative integer", exp)
            # in a juxtaposed run like xy^2 the exponent binds to the last letter
            factors[-1] = factors[-1] ** int(exp[1])
        out = factors[0]
        for f in factors[1:]:
            out = out * f
        return out

    def atom(self):
        tok = self.take()
        if tok is None:
            self.error("unexpected end of expression")
        kind, text, col = tok
        if kind == "num":
            return Polynomial.constant(self.gens, Fraction(text))
        if text == "(":
            p = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                self.error("missing ')'", close)
            return p
        self.error(f"unexpected {text!r}", tok)

    def name(self, text, col):
        if text in self.variables:
            return [Polynomial.var(self.gens, self.variables[text])]
        # a run of one-letter variables, e.g. xy or x2y
        out = []
        k = 0
        while k < len(text):
            ch = text[k]
            if ch in self.variables:
                factor = Polynomial.var(self.gens, self.variables[ch])
                k += 1
                digits = ""
                while k < len(text) and text[k].isdigit():
                    digits += text[k]
                    k += 1
                out.append(factor ** int(digits) if digits else factor)
            else:
                raise GermParseError(f"unknown identifier {text!r} (not a declared variable)", self.line, col + k)
        return out


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_germ_text(text, name=""):
    """Parse the contents of a germ or unfolding file."""
    kind = None
    variables = None
    gens = None
    comps = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if kind is None:
            if stripped not in CANONICAL:
                raise GermParseError("expected header 'germ' or 'unfolding'", lineno, indent)
            kind = stripped
            continue
        if variables is None:
            words = stripped.split()
            if words[0] != "vars":
                raise GermParseError("expected 'vars' declaration", lineno, indent)
            names = words[1:]
            want = len(CANONICAL[kind])
            if len(names) != want:
                raise GermParseError(f"'{kind}' needs exactly {want} variables", lineno, indent)
            for k, v in enumerate(names):
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise GermParseError(f"invalid variable name {v!r}", lineno, line.find(v) + 1)
            if len(set(names)) != len(names):
                raise GermParseError("repeated variable name", lineno, indent)
            variables = dict(zip(names, CANONICAL[kind]))
            gens = CANONICAL[kind]
            continue
        m = re.match(r"\s*(f[123])\s*=", line)
        if not m:
            raise GermParseError("expected 'f1 = ...', 'f2 = ...' or 'f3 = ...'", lineno, indent)
        key = m.group(1)
        if key in comps:
            raise GermParseError(f"{key} defined twice", lineno, indent)
        body = line[m.end():]
        tokens = _tokenize(body, lineno, m.end())
        parser = _Parser(tokens, variables, gens, lineno, len(line.rstrip()) + 1)
        comps[key] = parser.parse()
    last = len(text.splitlines()) or 1
    if kind is None:
        raise GermParseError("empty file: expected header 'germ' or 'unfolding'", last, 1)
    if variables is None:
        raise GermParseError("missing 'vars' declaration", last, 1)
    missing = [k for k in ("f1", "f2", "f3") if k not in comps]
    if missing:
        raise GermParseError(f"missing component(s) {', '.join(missing)}", last, 1)
    return GermSpec(kind, tuple(variables), (comps["f1"], comps["f2"], comps["f3"]), name)


def load_germ_file(path):
    path = Path(path)
    return parse_germ_text(path.read_text(), name=path.stem)


def format_germ(components, kind="germ"):
    """Inverse of the parser, used to write corpus files."""
    gens = CANONICAL[kind]
    lines = [kind, "vars " + " ".join(gens)]
    for k, f in enumerate(components, start=1):
        lines.append(f"f{k} = {f}")
    return "\n".join(lines) + "\n"


def bundled_fixtures(pattern="*"):
    """Paths of the germ and unfolding files shipped with the package, sorted by name."""
    from importlib.resources import files

    root = Path(str(files("germsing") / "corpus"))
    return sorted(p for p in root.glob(pattern) if p.suffix in (".germ", ".unf"))
