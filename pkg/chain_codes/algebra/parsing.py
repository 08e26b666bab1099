"""chain-codes 文本语法

环规格：

- ``Z/25``：Z_{p^nu}，模数必须是素数幂；
- ``F4[g]/(g^2)``：F_q[γ]/(γ^nu)，``F4`` 或 ``F4[g]/(g)`` 表示 nu = 1。

多项式：

- 系数为整数（负数约化进环）或环元素表达式，``g`` 表示 γ（Z 族中即 p），
  ``a`` 表示剩余域的生成元（仅 r > 1）；
- 变量为 ``x``、``y``（k <= 2）或 ``x1..xk``；
- 运算符 ``+ - * ^`` 与括号，允许隐式乘法（``2x^3``）；
- 多项式列表用逗号或换行分隔，``#`` 到行尾为注释。

格式化输出按降序排列各项，重新解析后与原多项式完全相等。
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import galois

from .chain_ring import Raw, RingElement, RingSpec
from .exceptions import ParseException, ValidationException
from .polynomials import MultiPoly, Poly, QuotPoly, variable_names
from ..utils.logger import get_logger

logger = get_logger("chain_codes.algebra.parsing")

_TOKEN_RE = re.compile(
    r"(?P<space>[ \t\r]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<newline>\n)"
    r"|(?P<number>\d+)"
    r"|(?P<name>[A-Za-z]\d*)"
    r"|(?P<op>[-+*^(),])"
    r"|(?P<error>.)"
)

_Z_RE = re.compile(r"^\s*Z\s*/\s*(\(\s*)?(?P<n>\d+)\s*(?(1)\))\s*$")
_F_RE = re.compile(
    r"^\s*F\s*(?P<q>\d+)\s*(?:\[\s*g\s*\]\s*/\s*\(\s*g\s*(?:\^\s*(?P<nu>\d+)\s*)?\))?\s*$"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """把多项式文本切分为词法单元，位置从 1 开始计数"""
    text = text.replace("−", "-")
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == "error":
            raise ParseException(
                f"unexpected character {match.group()!r}", line=line, column=column
            )
        if kind in ("number", "name", "op", "newline"):
            tokens.append(Token(kind, match.group(), line, column))
        if kind == "newline":
            line += 1
            line_start = match.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _PolyParser:
    """递归下降解析器，边解析边在商环中求值"""

    def __init__(self, tokens: List[Token], spec: RingSpec, dims: Tuple[int, ...]):
        self.tokens = tokens
        self.pos = 0
        self.spec = spec
        self.dims = dims
        self.names = variable_names(len(dims)) if dims else ()

    # === 词法游标 ===

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind == "op" and token.text in ops

    def at_separator(self) -> bool:
        return self.peek().kind == "newline" or self.at_op(",")

    def error(self, message: str, token: Optional[Token] = None) -> ParseException:
        token = token or self.peek()
        return ParseException(message, line=token.line, column=token.column)

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            found = self.peek().text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return self.advance()

    # === 语法 ===

    def parse_list(self) -> List[MultiPoly]:
        items = []
        while True:
            while self.at_separator():
                self.advance()
            if self.peek().kind == "eof":
                return items
            items.append(self.parse_expr())
            if not (self.at_separator() or self.peek().kind == "eof"):
                raise self.error(f"unexpected {self.peek().text!r}")

    def parse_expr(self) -> MultiPoly:
        negate = False
        if self.at_op("+", "-"):
            negate = self.advance().text == "-"
        result = self.parse_term()
        if negate:
            result = -result
        while self.at_op("+", "-"):
            op = self.advance().text
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def starts_factor(self) -> bool:
        token = self.peek()
        return token.kind in ("number", "name") or self.at_op("(")

    def parse_term(self) -> MultiPoly:
        result = self.parse_power()
        while True:
            if self.at_op("*"):
                self.advance()
                result = result * self.parse_power()
            elif self.starts_factor():
                result = result * self.parse_power()
            else:
                return result

    def parse_power(self) -> MultiPoly:
        base = self.parse_atom()
        if not self.at_op("^"):
            return base
        self.advance()
        token = self.peek()
        if token.kind != "number":
            raise self.error("exponent must be a non-negative integer")
        self.advance()
        return base ** int(token.text)

    def parse_atom(self) -> MultiPoly:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return self.constant(self.spec.from_int(int(token.text)))
        if token.kind == "name":
            self.advance()
            return self.resolve_name(token)
        if self.at_op("("):
            self.advance()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        found = token.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def constant(self, raw: Raw) -> MultiPoly:
        return MultiPoly.constant(self.spec, self.dims, RingElement(self.spec, raw))

    def resolve_name(self, token: Token) -> MultiPoly:
        name = token.text
        if name in self.names:
            exponent = [0] * len(self.dims)
            exponent[self.names.index(name)] = 1
            return MultiPoly.monomial(self.spec, self.dims, exponent)
        if name == "g":
            return self.constant(self.spec.gamma_power(1))
        if name == "a":
            if self.spec.r == 1:
                raise self.error(f"field generator 'a' is undefined over F_{self.spec.q}", token)
            return self.constant(self.spec.embed_field(self.spec.p))
        expected = ", ".join(self.names) or "none"
        raise self.error(f"unknown name {name!r} (variables: {expected})", token)


# === 环规格 ===


def parse_ring_spec(text: str) -> RingSpec:
    """解析环规格文本

    Raises:
        ParseException: 语法错误或参数不是素数幂时
    """
    match = _Z_RE.match(text)
    if match:
        modulus = int(match.group("n"))
        p, nu = _prime_power(modulus, text)
        spec = RingSpec.integer_modular(p, nu)
    else:
        match = _F_RE.match(text)
        if not match:
            raise ParseException(
                f"invalid ring spec {text!r}, expected Z/<p^nu> or F<q>[g]/(g^<nu>)"
            )
        p, r = _prime_power(int(match.group("q")), text)
        nu = int(match.group("nu") or 1)
        if nu < 1:
            raise ParseException(f"nilpotency index must be positive in {text!r}")
        try:
            spec = RingSpec.gamma_extension(p, r, nu)
        except ValidationException as e:
            raise ParseException(str(e))
    logger.debug(f"环规格 {text!r} -> {spec}")
    return spec


def _prime_power(value: int, text: str) -> Tuple[int, int]:
    if value < 2:
        raise ParseException(f"{value} is not a prime power in {text!r}")
    primes, exponents = galois.factors(value)
    if len(primes) != 1:
        raise ParseException(f"{value} is not a prime power in {text!r}")
    return int(primes[0]), int(exponents[0])


def format_ring_spec(spec: RingSpec) -> str:
    return str(spec)


def parse_dims(text: str) -> Tuple[int, ...]:
    """解析维数列表，如 ``10,4``"""
    parts = [part.strip() for part in text.split(",")]
    dims = []
    column = 1
    for part in parts:
        if not part.isdigit() or int(part) < 1:
            raise ParseException(f"invalid length {part!r} in dims", column=column)
        dims.append(int(part))
        column += len(part) + 1
    return tuple(dims)


# === 多项式 ===


def parse_poly_list(text: str, spec: RingSpec, dims: Sequence[int]) -> List[MultiPoly]:
    """解析逗号或换行分隔的多项式列表，空文本得到空列表"""
    parser = _PolyParser(tokenize(text), spec, tuple(dims))
    return parser.parse_list()


def parse_poly(text: str, spec: RingSpec, dims: Sequence[int]) -> MultiPoly:
    """解析单个多项式

    Raises:
        ParseException: 语法错误，或文本不是恰好一个多项式时
    """
    parser = _PolyParser(tokenize(text), spec, tuple(dims))
    while parser.at_separator():
        parser.advance()
    if parser.peek().kind == "eof":
        raise parser.error("empty polynomial")
    result = parser.parse_expr()
    while parser.at_separator():
        parser.advance()
    if parser.peek().kind != "eof":
        raise parser.error(f"unexpected {parser.peek().text!r} after polynomial")
    return result


def parse_element(text: str, spec: RingSpec) -> RingElement:
    """解析环元素表达式，如 ``7``、``a + g``"""
    constant = parse_poly(text, spec, ())
    return constant.coeff(())


def read_generators(source: str, spec: RingSpec, dims: Sequence[int]) -> List[MultiPoly]:
    """读取生成元列表，``@path`` 表示从文件读取

    Raises:
        ParseException: 文件无法读取或语法错误时
    """
    if source.startswith("@"):
        path = Path(source[1:])
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseException(f"cannot read generator file {path}: {e}")
        logger.debug(f"从 {path} 读取生成元")
    return parse_poly_list(source, spec, dims)


# === 格式化 ===


def _format_field(spec: RingSpec, w: int) -> str:
    """剩余域元素：r = 1 时为整数，否则为 a 的多项式"""
    if spec.r == 1:
        return str(w)
    digits = []
    while w:
        digits.append(w % spec.p)
        w //= spec.p
    terms = []
    for k in range(len(digits) - 1, -1, -1):
        c = digits[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        power = "a" if k == 1 else f"a^{k}"
        terms.append(power if c == 1 else f"{c}*{power}")
    return " + ".join(terms) or "0"


def _wrap(text: str) -> str:
    return f"({text})" if " + " in text else text


def format_element(spec: RingSpec, raw: Raw) -> str:
    """环元素的文本形式：整数，或按 γ 升幂排列的 ``a + 2*g`` 形式"""
    if not spec.is_gamma:
        return str(raw)
    terms = []
    for i, d in enumerate(raw):
        if d == 0:
            continue
        field_text = _format_field(spec, d)
        if i == 0:
            terms.append(field_text)
            continue
        power = "g" if i == 1 else f"g^{i}"
        terms.append(power if d == 1 else f"{_wrap(field_text)}*{power}")
    return " + ".join(terms) or "0"


def _monomial_text(exponent: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exponent, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(
    f: Union[Poly, QuotPoly, MultiPoly], names: Optional[Sequence[str]] = None
) -> str:
    """多项式的文本形式，末变量优先降序排列"""
    if isinstance(f, QuotPoly):
        f = f.base
    if isinstance(f, Poly):
        spec = f.spec
        terms = [((i,), c) for i, c in enumerate(f.coeffs) if not c.is_zero()]
        names = names or ("x",)
    else:
        spec = f.spec
        terms = list(f.terms())
        names = names or (variable_names(f.k) if f.k else ())
    terms.sort(key=lambda term: term[0][::-1], reverse=True)
    pieces = []
    for exponent, c in terms:
        monomial = _monomial_text(exponent, names)
        coeff = format_element(spec, c.value)
        if not monomial:
            pieces.append(coeff)
        elif coeff == "1":
            pieces.append(monomial)
        else:
            pieces.append(f"{_wrap(coeff)}*{monomial}")
    return " + ".join(pieces) or "0"
