"""Text format for rings, matrices and complexes (``.spbw`` files).

A document is a sequence of declarations::

    ring qweyl params (q) {
      vars x y;
      rel y*x = q*x*y + 1;
    }
    matrix top over qweyl = [[y, 1 - x]];
    complex res over qweyl side left = (top);

Expressions use ``+ - * / ^`` with the usual precedence. ``*`` is the ring
product and keeps the written order, so ``x*t`` and ``t*x`` differ when sigma
moves ``t``. ``/`` divides by a scalar only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import re
from typing import Union

from .const import Side
from .exceptions import DimensionError, DSLParseError, PresentationError
from .matring import Complex, Mat
from .polyarith import Algebra, Poly, format_combination
from .presentation import Commutation, Presentation, build_presentation
from .scalars import MapKind, Scalar, ScalarField

_LOGGER: logging.Logger = logging.getLogger(__package__)

# groups of increasing binding power
OPERATORS = [
    [("+", "left"), ("-", "left")],
    [("*", "left"), ("/", "left")],
    [("^", "right")],
]
PRECEDENCE = {op: level for level, group in enumerate(OPERATORS) for op, _ in group}
ASSOCIATIVITY = {op: assoc for group in OPERATORS for op, assoc in group}

TOKEN_PATTERN = re.compile(
    r"(?P<newline>\n)"
    r"|(?P<space>[ \t\r]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<symbol>->|<=|[-+*/^=(){}\[\],;:])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise DSLParseError(
                f"unexpected character {text[position]!r}", line, position - line_start + 1
            )
        kind = match.lastgroup
        if kind == "newline":
            line, line_start = line + 1, match.end()
        elif kind not in ("space", "comment"):
            tokens.append(Token(kind, match.group(), line, position - line_start + 1))
        position = match.end()
    tokens.append(Token("eof", "", line, position - line_start + 1))
    return tokens


# syntax tree


@dataclass(frozen=True)
class Num:
    at: tuple[int, int]
    value: int


@dataclass(frozen=True)
class Name:
    at: tuple[int, int]
    id: str


@dataclass(frozen=True)
class Neg:
    at: tuple[int, int]
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    at: tuple[int, int]
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Name, Neg, BinOp]


def _error(message: str, at: tuple[int, int]) -> DSLParseError:
    return DSLParseError(message, *at)


# evaluation

FreeTerms = dict[tuple[int, ...], Scalar]


def _free(node: Expr, field_: ScalarField, variables: tuple[str, ...]) -> FreeTerms:
    """Evaluate in the free algebra: words in the variables, scalars on the left."""
    if isinstance(node, Num):
        return {(): field_.convert(node.value)}
    if isinstance(node, Name):
        if node.id in variables:
            return {(variables.index(node.id),): field_.one}
        if node.id in field_.parameters:
            return {(): field_.gen(node.id)}
        raise _error(f"unknown name {node.id!r}", node.at)
    if isinstance(node, Neg):
        return {word: -value for word, value in _free(node.operand, field_, variables).items()}
    if node.op == "^":
        base = _free(node.left, field_, variables)
        exponent = node.right.value
        if set(base) <= {()}:
            try:
                return {(): field_.power(base.get((), field_.zero), exponent)}
            except ZeroDivisionError as exception:
                raise _error("zero raised to a negative power", node.at) from exception
        if exponent < 0:
            raise _error("negative powers of variables are not allowed", node.at)
        result: FreeTerms = {(): field_.one}
        for _ in range(exponent):
            result = _free_product(result, base, node.at, field_)
        return result
    left = _free(node.left, field_, variables)
    right = _free(node.right, field_, variables)
    if node.op == "*":
        return _free_product(left, right, node.at, field_)
    if node.op == "/":
        if set(right) - {()} or not right.get(()):
            raise _error("division is only by a nonzero scalar", node.right.at)
        inverse = {(): field_.inverse(right[()])}
        return _free_product(left, inverse, node.at, field_)
    sign = 1 if node.op == "+" else -1
    total = dict(left)
    for word, value in right.items():
        total[word] = total.get(word, field_.zero) + sign * value
    return {word: value for word, value in total.items() if value}


def _free_product(
    left: FreeTerms, right: FreeTerms, at: tuple[int, int], field_: ScalarField
) -> FreeTerms:
    product: FreeTerms = {}
    for first, a in left.items():
        for second, b in right.items():
            if first and not field_.is_rational(b):
                raise _error("parameters must be written to the left of variables", at)
            word = first + second
            product[word] = product.get(word, field_.zero) + a * b
    return {word: value for word, value in product.items() if value}


def _scalar(node: Expr, field_: ScalarField) -> Scalar:
    terms = _free(node, field_, ())
    return terms.get((), field_.zero)


def _poly(node: Expr, algebra: Algebra) -> Poly:
    """Evaluate in the ring itself; the engine moves scalars past variables."""
    field_ = algebra.field
    if isinstance(node, Num):
        return algebra.constant(node.value)
    if isinstance(node, Name):
        if node.id in algebra.presentation.variables:
            return algebra.variable(node.id)
        if node.id in field_.parameters:
            return algebra.constant(field_.gen(node.id))
        raise _error(f"unknown name {node.id!r}", node.at)
    if isinstance(node, Neg):
        return -_poly(node.operand, algebra)
    left = _poly(node.left, algebra)
    if node.op == "^":
        base, exponent = left, node.right.value
        if base.degree <= 0:
            try:
                return algebra.constant(field_.power(base.constant_term, exponent))
            except ZeroDivisionError as exception:
                raise _error("zero raised to a negative power", node.at) from exception
        if exponent < 0:
            raise _error("negative powers of variables are not allowed", node.at)
        return algebra.power(base, exponent)
    right = _poly(node.right, algebra)
    if node.op == "*":
        return algebra.mul(left, right)
    if node.op == "/":
        if right.degree != 0:
            raise _error("division is only by a nonzero scalar", node.right.at)
        return algebra.mul(left, algebra.constant(field_.inverse(right.constant_term)))
    return left + right if node.op == "+" else left - right


# documents


@dataclass
class Document:
    """Declarations of one ``.spbw`` text, in source order."""

    rings: dict[str, Presentation] = field(default_factory=dict)
    matrices: dict[str, Mat] = field(default_factory=dict)
    complexes: dict[str, Complex] = field(default_factory=dict)
    options: dict[str, int | str] = field(default_factory=dict)
    owners: dict[str, str] = field(default_factory=dict, compare=False)
    positions: dict[str, tuple[int, int]] = field(default_factory=dict, compare=False)
    algebras: dict[str, Algebra] = field(default_factory=dict, compare=False)

    def algebra(self, ring: str) -> Algebra:
        if ring not in self.algebras:
            self.algebras[ring] = Algebra(self.rings[ring])
        return self.algebras[ring]

    def declare(self, name: str, at: tuple[int, int]) -> None:
        if name in self.positions:
            line, column = self.positions[name]
            raise _error(f"{name!r} already declared at line {line}, column {column}", at)
        self.positions[name] = at

    def ring_of(self, name: str) -> str:
        """Ring a matrix or complex is declared over."""
        return self.owners[name]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.position = 0
        self.document = Document()

    def peek(self) -> Token:
        return self.tokens[self.position]

    def next(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != "eof":
            self.position += 1
        return token

    def at(self) -> tuple[int, int]:
        token = self.peek()
        return (token.line, token.column)

    def accept(self, text: str) -> bool:
        token = self.peek()
        if token.kind in ("symbol", "name") and token.text == text:
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.kind not in ("symbol", "name") or token.text != text:
            found = token.text or "end of input"
            raise DSLParseError(f"expected {text!r}, found {found!r}", token.line, token.column)
        return self.next()

    def name(self) -> str:
        token = self.peek()
        if token.kind != "name":
            found = token.text or "end of input"
            raise DSLParseError(f"expected a name, found {found!r}", token.line, token.column)
        return self.next().text

    def integer(self) -> int:
        token = self.peek()
        if token.kind != "int":
            found = token.text or "end of input"
            raise DSLParseError(f"expected an integer, found {found!r}", token.line, token.column)
        return int(self.next().text)

    # expressions

    def expression(self, min_precedence: int = 0) -> Expr:
        lhs = self.atom()
        while True:
            token = self.peek()
            if token.kind != "symbol" or token.text not in PRECEDENCE:
                return lhs
            precedence = PRECEDENCE[token.text]
            if precedence < min_precedence:
                return lhs
            self.next()
            at = (token.line, token.column)
            if token.text == "^":
                sign = -1 if self.accept("-") else 1
                exponent_at = self.at()
                rhs: Expr = Num(exponent_at, sign * self.integer())
            else:
                following = precedence + 1 if ASSOCIATIVITY[token.text] == "left" else precedence
                rhs = self.expression(following)
            lhs = BinOp(at, token.text, lhs, rhs)

    def atom(self) -> Expr:
        token = self.peek()
        at = (token.line, token.column)
        if token.kind == "symbol" and token.text == "-":
            self.next()
            return Neg(at, self.expression(PRECEDENCE["^"]))
        if token.kind == "symbol" and token.text == "(":
            self.next()
            inner = self.expression()
            self.expect(")")
            return inner
        if token.kind == "int":
            return Num(at, int(self.next().text))
        if token.kind == "name":
            return Name(at, self.next().text)
        found = token.text or "end of input"
        raise DSLParseError(f"expected an expression, found {found!r}", *at)

    # declarations

    def document_(self) -> Document:
        while self.peek().kind != "eof":
            token = self.peek()
            if self.accept("ring"):
                self.ring()
            elif self.accept("matrix"):
                self.matrix()
            elif self.accept("complex"):
                self.complex()
            elif self.accept("option"):
                self.option()
            else:
                raise DSLParseError(
                    f"expected 'ring', 'matrix', 'complex' or 'option', found {token.text!r}",
                    token.line,
                    token.column,
                )
        return self.document

    def option(self) -> None:
        key = self.name()
        self.expect("=")
        token = self.peek()
        self.document.options[key] = self.integer() if token.kind == "int" else self.name()
        self.expect(";")

    def ring(self) -> None:
        at = self.at()
        name = self.name()
        self.document.declare(name, at)
        parameters: list[str] = []
        if self.accept("params"):
            self.expect("(")
            while not self.accept(")"):
                parameters.append(self.name())
        try:
            field_ = ScalarField(parameters)
        except PresentationError as exception:
            raise _error(str(exception), at) from exception
        self.expect("{")
        self.expect("vars")
        variables: list[str] = []
        while not self.accept(";"):
            variables.append(self.name())
        clash = set(variables) & set(parameters)
        if clash:
            raise _error(f"names used as both variable and parameter: {sorted(clash)}", at)
        variables_ = tuple(variables)

        relations: dict[tuple[str, str], tuple] = {}
        sigma: dict[str, dict[str, Scalar]] = {}
        sigma_inverse: dict[str, dict[str, Scalar]] = {}
        delta: dict[str, Scalar] = {}
        gld: int | None = None
        upper = False
        while not self.accept("}"):
            token = self.peek()
            if self.accept("rel"):
                lhs_at = self.at()
                left = self._variable(variables_)
                self.expect("*")
                right = self._variable(variables_)
                if (left, right) in relations:
                    raise _error(f"duplicate relation for {left}*{right}", lhs_at)
                self.expect("=")
                relations[(left, right)] = self._relation(left, right, field_, variables_, lhs_at)
            elif self.accept("sigma"):
                variable = self._variable(variables_)
                self.expect(":")
                parameter = self.name()
                if parameter not in field_.parameters:
                    raise _error(f"unknown parameter {parameter!r}", (token.line, token.column))
                self.expect("->")
                sigma.setdefault(variable, {})[parameter] = _scalar(self.expression(), field_)
                if self.accept("inverse"):
                    sigma_inverse.setdefault(variable, {})[parameter] = _scalar(
                        self.expression(), field_
                    )
            elif self.accept("delta"):
                variable = self._variable(variables_)
                self.expect(":")
                for text in ("(", "sigma", "-", "id", ")", "/"):
                    self.expect(text)
                divisor_at = self.at()
                divisor = _scalar(self.expression(), field_)
                if not divisor:
                    raise _error("delta divisor must be nonzero", divisor_at)
                delta[variable] = divisor
            elif self.accept("gld"):
                upper = self.accept("<=")
                gld = self.integer()
            else:
                raise DSLParseError(
                    f"expected 'rel', 'sigma', 'delta', 'gld' or '}}', found {token.text!r}",
                    token.line,
                    token.column,
                )
            self.expect(";")
        try:
            presentation = build_presentation(
                name,
                variables_,
                relations,
                sigma=sigma,
                sigma_inverse=sigma_inverse,
                delta=delta,
                declared_gld=gld,
                gld_upper_bound=upper,
                field=field_,
            )
        except PresentationError as exception:
            raise _error(str(exception), at) from exception
        self.document.rings[name] = presentation
        _LOGGER.debug("Parsed ring %s with %d variables", name, presentation.n)

    def _variable(self, variables: tuple[str, ...]) -> str:
        at = self.at()
        name = self.name()
        if name not in variables:
            raise _error(f"unknown variable {name!r}", at)
        return name

    def _relation(self, left, right, field_, variables, at) -> tuple:
        j, i = variables.index(left), variables.index(right)
        if j <= i:
            raise _error(f"left-hand side {left}*{right} must be x_j*x_i with j > i", at)
        rhs_at = self.at()
        terms = _free(self.expression(), field_, variables)
        c = terms.pop((i, j), field_.zero)
        linear: dict[str, Scalar] = {}
        d = field_.zero
        for word, value in terms.items():
            if len(word) == 1:
                linear[variables[word[0]]] = value
            elif not word:
                d = value
            else:
                raise _error(
                    f"right-hand side must have the form c*{right}*{left} + sum a_k*x_k + d, "
                    f"found a term in {'*'.join(variables[k] for k in word)}",
                    rhs_at,
                )
        return (c, linear, d)

    def _ring_name(self) -> str:
        at = self.at()
        ring = self.name()
        if ring not in self.document.rings:
            raise _error(f"unknown ring {ring!r}", at)
        return ring

    def matrix(self) -> None:
        at = self.at()
        name = self.name()
        self.document.declare(name, at)
        self.expect("over")
        ring = self._ring_name()
        algebra = self.document.algebra(ring)
        self.expect("=")
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [_poly(self.expression(), algebra)]
            while self.accept(","):
                row.append(_poly(self.expression(), algebra))
            self.expect("]")
            rows.append(row)
            if not self.accept(","):
                break
        self.expect("]")
        self.expect(";")
        try:
            self.document.matrices[name] = Mat.from_rows(algebra, rows)
        except DimensionError as exception:
            raise _error(str(exception), at) from exception
        self.document.owners[name] = ring

    def complex(self) -> None:
        at = self.at()
        name = self.name()
        self.document.declare(name, at)
        self.expect("over")
        ring = self._ring_name()
        self.expect("side")
        side_at = self.at()
        side_text = self.name()
        try:
            side = Side(side_text)
        except ValueError as exception:
            raise _error(f"side must be 'left' or 'right', found {side_text!r}", side_at) from exception
        self.expect("=")
        self.expect("(")
        labels = []
        while True:
            label_at = self.at()
            label = self.name()
            if label not in self.document.matrices:
                raise _error(f"unknown matrix {label!r}", label_at)
            if self.document.owners[label] != ring:
                raise _error(f"matrix {label!r} is not over {ring}", label_at)
            labels.append(label)
            if not self.accept(","):
                break
        self.expect(")")
        self.expect(";")
        try:
            self.document.complexes[name] = Complex(
                side, tuple(self.document.matrices[label] for label in labels), tuple(labels)
            )
        except DimensionError as exception:
            raise _error(str(exception), at) from exception
        self.document.owners[name] = ring


def parse_polynomial(text: str, algebra: Algebra) -> Poly:
    """Evaluate a single expression over ``algebra``."""
    parser = _Parser(text)
    node = parser.expression()
    token = parser.peek()
    if token.kind != "eof":
        raise DSLParseError(f"unexpected {token.text!r} after expression", token.line, token.column)
    return _poly(node, algebra)


def parse(text: str) -> Document:
    document = _Parser(text).document_()
    _LOGGER.debug(
        "Parsed %d ring(s), %d matrix(es), %d complex(es)",
        len(document.rings),
        len(document.matrices),
        len(document.complexes),
    )
    return document


# printing


def format_relation(p: Presentation, j: int, i: int) -> str:
    rel = p.relation(j, i)
    xi, xj = p.variables[i], p.variables[j]
    pairs = [(rel.c, f"{xi}*{xj}")]
    pairs += [(rel.a[k], p.variables[k]) for k in reversed(range(p.n))]
    pairs.append((rel.d, ""))
    return f"rel {xj}*{xi} = {format_combination(p.field, pairs)};"


def format_ring(p: Presentation) -> str:
    field_ = p.field
    lines = [
        f"ring {p.name} params ({' '.join(p.parameters)}) {{",
        f"  vars {' '.join(p.variables)};",
    ]
    commuting = Commutation.commuting(field_, p.n)
    for (j, i) in sorted(p.commutation, key=lambda pair: (pair[1], pair[0])):
        if p.relation(j, i) != commuting:
            lines.append("  " + format_relation(p, j, i))
    for variable, s in zip(p.variables, p.sigma):
        if s.kind is not MapKind.SUBSTITUTION:
            continue
        inverse = dict(s.inverse_images or ())
        for parameter, image in s.images:
            line = f"  sigma {variable}: {parameter} -> {field_.format(image)}"
            if parameter in inverse:
                line += f" inverse {field_.format(inverse[parameter])}"
            lines.append(line + ";")
    for variable, d in zip(p.variables, p.delta):
        if d.kind is MapKind.Q_DIFFERENCE:
            lines.append(f"  delta {variable}: (sigma - id)/({field_.format(d.divisor)});")
    if p.declared_gld is not None:
        lines.append(f"  gld {'<= ' if p.gld_upper_bound else ''}{p.declared_gld};")
    lines.append("}")
    return "\n".join(lines)


def format_matrix(name: str, ring: str, M: Mat) -> str:
    rows = ",\n".join("  [" + ", ".join(str(entry) for entry in row) + "]" for row in M.entries)
    return f"matrix {name} over {ring} = [\n{rows}\n];"


def format_complex(name: str, ring: str, C: Complex) -> str:
    return f"complex {name} over {ring} side {C.side.value} = ({', '.join(C.labels)});"


def format_document(document: Document) -> str:
    blocks = [f"option {key} = {value};" for key, value in document.options.items()]
    blocks += [format_ring(p) for p in document.rings.values()]
    blocks += [
        format_matrix(name, document.ring_of(name), M) for name, M in document.matrices.items()
    ]
    blocks += [
        format_complex(name, document.ring_of(name), C) for name, C in document.complexes.items()
    ]
    return "\n\n".join(blocks) + "\n"


def document_for(
    p: Presentation, complexes: dict[str, Complex] | None = None
) -> Document:
    """Document holding one ring and the complexes given over it."""
    document = Document()
    document.rings[p.name] = p
    document.positions[p.name] = (0, 0)
    for name, C in (complexes or {}).items():
        for label, M in zip(C.labels, C.maps):
            document.matrices[label] = M
            document.owners[label] = p.name
        document.complexes[name] = C
        document.owners[name] = p.name
    return document
