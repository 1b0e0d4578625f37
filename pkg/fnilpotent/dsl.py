"""Text syntax for rings, polynomials and ideals, and the matching printers.

Grammar::

    ring   := "F" INT "[" ident ("," ident)* "]" ( "/" ideal )?
    ideal  := "(" ( poly ( "," poly )* )? ")"
    poly   := sign? term ( ("+" | "-") term )*
    term   := factor ( "*"? factor )*          juxtaposition multiplies
    factor := atom ( ("^" | "**") INT )?
    atom   := INT | ident | "(" poly ")"

Identifiers are ASCII only. Every syntax error is a ``ParseError`` carrying a 1-based line and column.

>>> spec = parse_ring("F2[T1,T2,T3]/(T1^2*T2, T1^2*T3)")
>>> format_ring(spec)
'F2[T1,T2,T3]/(T1^2*T2, T1^2*T3)'
>>> format_poly(parse_poly("3x^2y - (x+y)^2", parse_ring("F5[x,y]")))
'-2*x^2*y - x^2 - 2*x*y - y^2'
>>> parse_ideal("(T1 + T2)", spec)
(T1 + T2)
"""
import re

from fnilpotent.errors import DegreeOverflowError, ParseError
from fnilpotent.ideals import IdealHandle, RingSpec
from fnilpotent.monomials import check_exponents
from fnilpotent.polys import format_poly, poly_pow, variable_names

_TOKEN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<pow>\*\*|\^)
  | (?P<op>[-+*/,()\[\]])
""", re.VERBOSE)

_RING_NAME = re.compile(r'F([0-9]+)$')


class Token:
    __slots__ = ('kind', 'text', 'line', 'column')

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind!r}, {self.text!r}, {self.line}, {self.column})"


def tokenize(text):
    """
    >>> [t.text for t in tokenize("x^2 + 3y")]
    ['x', '^', '2', '+', '3', 'y', '']
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line=line, column=pos - line_start + 1,
                             text=text)
        kind = match.lastgroup
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind != 'space':
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('eof', '', line, pos - line_start + 1))
    return tokens


class Parser:
    """Recursive descent over the token list, building polynomials in ``ring`` (when given)."""

    def __init__(self, text, ring=None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.bind(ring)

    def bind(self, ring):
        self.ring = ring
        self.names = {} if ring is None else dict(zip(variable_names(ring), ring.gens))

    @property
    def current(self):
        return self.tokens[self.i]

    def error(self, message, token=None):
        token = self.current if token is None else token
        return ParseError(message, line=token.line, column=token.column, text=self.text)

    def advance(self):
        token = self.current
        self.i += 1
        return token

    def at(self, *texts):
        return self.current.kind != 'eof' and self.current.text in texts

    def expect(self, text):
        if not self.at(text):
            found = self.current.text or 'end of input'
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_end(self):
        if self.current.kind != 'eof':
            raise self.error(f"unexpected {self.current.text!r} after the end of the expression")

    def integer(self):
        if self.current.kind != 'int':
            raise self.error(f"expected an integer, found {self.current.text or 'end of input'!r}")
        return int(self.advance().text)

    # ring := "F" INT "[" ident ("," ident)* "]" ("/" ideal)?
    def ring_header(self):
        token = self.current
        match = _RING_NAME.match(token.text) if token.kind == 'ident' else None
        if match is None:
            raise self.error("a ring starts with F<p>, e.g. F2[x,y]")
        self.advance()
        p = int(match.group(1))
        self.expect('[')
        names = [self.identifier()]
        seen = {names[0].text}
        while self.at(','):
            self.advance()
            tok = self.identifier()
            if tok.text in seen:
                raise self.error(f"repeated variable {tok.text!r}", tok)
            seen.add(tok.text)
            names.append(tok)
        self.expect(']')
        return p, [t.text for t in names]

    def identifier(self):
        if self.current.kind != 'ident':
            raise self.error(f"expected a variable name, found {self.current.text or 'end of input'!r}")
        return self.advance()

    # ideal := "(" (poly ("," poly)*)? ")"
    def ideal(self):
        self.expect('(')
        gens = []
        if not self.at(')'):
            gens.append(self.poly())
            while self.at(','):
                self.advance()
                gens.append(self.poly())
        self.expect(')')
        return gens

    # poly := sign? term (("+" | "-") term)*
    def poly(self):
        sign = 1
        if self.at('+', '-'):
            sign = -1 if self.advance().text == '-' else 1
        result = self.term() * sign
        while self.at('+', '-'):
            op = self.advance().text
            t = self.term()
            result = result + t if op == '+' else result - t
        return result

    def _starts_factor(self):
        return self.current.kind in ('int', 'ident') or self.at('(')

    # term := factor ("*"? factor)*
    def term(self):
        result = self.factor()
        while self.at('*') or self._starts_factor():
            if self.at('*'):
                self.advance()
            result = result * self.factor()
        return result

    # factor := atom (("^" | "**") INT)?
    def factor(self):
        base_token = self.current
        base = self.atom()
        if self.current.kind == 'pow':
            self.advance()
            exp_token = self.current
            n = self.integer()
            try:
                check_exponents((n,))
            except DegreeOverflowError:
                raise self.error(f"exponent {n} is too large", exp_token)
            if base_token.kind == 'ident':
                i = variable_names(self.ring).index(base_token.text)
                return self.ring.from_dict({tuple(n if j == i else 0 for j in range(len(self.names))): 1})
            return poly_pow(base, n)
        return base

    def atom(self):
        token = self.current
        if token.kind == 'int':
            return self.ring(int(self.advance().text))
        if token.kind == 'ident':
            if token.text not in self.names:
                raise self.error(f"unknown identifier {token.text!r}")
            self.advance()
            return self.names[token.text]
        if self.at('('):
            self.advance()
            inner = self.poly()
            self.expect(')')
            return inner
        raise self.error(f"unexpected {token.text or 'end of input'!r}")


def _guarded(func, text):
    try:
        return func()
    except RecursionError:
        raise ParseError("expression nested too deeply", line=1, column=1, text=text)


def parse_ring(text, order='grevlex'):
    """A RingSpec from ``F<p>[x,y,...]`` optionally followed by ``/(relations)``."""
    def run():
        parser = Parser(text)
        p, names = parser.ring_header()
        base = RingSpec.build(p, names, order=order)
        if not parser.at('/'):
            parser.expect_end()
            return base
        parser.advance()
        parser.bind(base.ambient)
        relations = parser.ideal()
        parser.expect_end()
        return RingSpec.build(p, names, relations, order=order)
    return _guarded(run, text)


def parse_poly(text, spec):
    ring = spec.ambient if isinstance(spec, RingSpec) else spec
    def run():
        parser = Parser(text, ring)
        f = parser.poly()
        parser.expect_end()
        return f
    return _guarded(run, text)


def parse_ideal(text, spec):
    ring = spec.ambient if isinstance(spec, RingSpec) else spec
    def run():
        parser = Parser(text, ring)
        gens = parser.ideal()
        parser.expect_end()
        return IdealHandle(ring, gens)
    return _guarded(run, text)


def parse_sequence(text, spec):
    """A comma-separated list of polynomials, parentheses optional: ``x, y`` or ``(x, y)``."""
    stripped = text.strip()
    if not (stripped.startswith('(') and stripped.endswith(')')):
        text = f"({text})"
    return list(parse_ideal(text, spec).generators)


def format_ideal(I):
    """
    >>> spec = parse_ring("F3[x,y]")
    >>> format_ideal(parse_ideal("()", spec)), format_ideal(parse_ideal("(x, -y^2)", spec))
    ('(0)', '(x, -y^2)')
    """
    return repr(I)


def format_ring(spec):
    head = f"F{spec.p}[{','.join(spec.variables)}]"
    if spec.A.is_zero:
        return head
    return head + '/(' + ', '.join(format_poly(g) for g in spec.A.generators) + ')'
