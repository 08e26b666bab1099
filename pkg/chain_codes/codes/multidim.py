"""chain-codes 二维与多维循环码的生成元

两种构造：

- 分层剥离（METHOD1）：按末变量优先的回声形读出各层理想 I_j（y^{n-1-j} 的首系数），
  对每层的生成元 p 在码中找一个 y 次数为 n-1-j、首系数为 p 的见证码字；
- 幂等元分解（METHOD2）：末变量长度 n 整除 q-1 时，R[y]/(y^n-1) 有 n 个本原幂等元 θ_j，
  码分解为 θ_j * C_j，C_j 是码在 y = ζ^j 处的求值像，生成元 θ_j(y) p(x) 可分离。

多维情形先把整除 q-1 的维度排到最后，然后逐个变量递归：
末变量整除 q-1 时用幂等元分解，否则用分层剥离，一维时取阶梯形式。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np

from ..algebra.chain_ring import RingElement, RingSpec, find_primitive_root
from ..algebra.exceptions import (
    OrderNotCompatible,
    ShapeMismatch,
    SpecMismatch,
    VerificationFailure,
    WitnessNotFound,
)
from ..algebra.polynomials import (
    MultiPoly,
    Poly,
    QuotPoly,
    evaluate_axis,
    permute_axes,
)
from ..algebra.types import GenerationMethod, LevelKind, MethodChoice, MonomialOrder
from ..utils.config import get_config
from ..utils.logger import get_logger
from .cyclic_core import (
    CodeSpan,
    canonical_generators,
    codes_equal,
    span_from_generators,
)
from .reports import CanonicalGenSet, Generator, GeneratorReport, Level

logger = get_logger("chain_codes.codes.multidim")


# === 幂等元 ===


@dataclass(frozen=True)
class IdempotentFamily:
    """R[y]/(y^n - 1) 的本原幂等元 θ_0..θ_{n-1}"""

    spec: RingSpec
    n: int
    zeta: RingElement
    thetas: Tuple[QuotPoly, ...]

    def theta(self, i: int, dims: Optional[Sequence[int]] = None, axis: int = -1) -> MultiPoly:
        """θ_i 作为多元多项式，只依赖第 axis 个变量"""
        if dims is None:
            return self.thetas[i].to_multi()
        dims = tuple(dims)
        return MultiPoly.from_poly(self.thetas[i], dims, axis % len(dims))


def verify_root_factorization(spec: RingSpec, n: int, zeta: RingElement) -> None:
    """检查 R[y] 中 y^n - 1 = Π (y - ζ^i)

    Raises:
        VerificationFailure: 分解不成立
    """
    product = Poly(spec, (1,))
    for i in range(n):
        product = product * Poly(spec, (-(zeta**i), 1))
    expected = Poly(spec, tuple([-1] + [0] * (n - 1) + [1]))
    if product != expected:
        raise VerificationFailure(
            f"y^{n} - 1 != prod(y - zeta^i) for zeta = {zeta} in {spec}: got {product}"
        )


def verify_idempotents(family: IdempotentFamily) -> None:
    """检查正交、幂等、和为 1 以及 θ_i * y = ζ^i θ_i

    Raises:
        VerificationFailure: 任一恒等式不成立
    """
    spec, n = family.spec, family.n
    thetas = family.thetas
    zero = QuotPoly(Poly(spec), n)
    y = QuotPoly(Poly.monomial(spec, 1), n)
    total = zero
    for i, theta in enumerate(thetas):
        total = total + theta
        if theta * theta != theta:
            raise VerificationFailure(f"theta_{i} is not idempotent in {spec}")
        if theta * y != theta * (family.zeta**i):
            raise VerificationFailure(f"theta_{i} * y != zeta^{i} * theta_{i} in {spec}")
        for j in range(i + 1, n):
            if theta * thetas[j] != zero:
                raise VerificationFailure(f"theta_{i} * theta_{j} != 0 in {spec}")
    if total != QuotPoly(Poly(spec, (1,)), n):
        raise VerificationFailure(f"sum of idempotents is {total}, not 1")


def idempotents(spec: RingSpec, n: int) -> IdempotentFamily:
    """构造 θ_i(y) = n^{-1} Σ_k ζ^{(n-i)k} y^k 并校验全部恒等式

    Args:
        spec: 链环规格
        n: 阶，须整除 q - 1

    Returns:
        校验过的幂等元族

    Raises:
        OrderNotCompatible: n 不整除 q - 1
    """
    zeta = find_primitive_root(spec, n)
    scale = spec.element(n).inverse()
    powers = [zeta**k for k in range(n)]
    thetas = tuple(
        QuotPoly(Poly(spec, tuple(scale * powers[((n - i) * k) % n] for k in range(n))), n)
        for i in range(n)
    )
    family = IdempotentFamily(spec, n, zeta, thetas)
    verify_idempotents(family)
    verify_root_factorization(spec, n, zeta)
    logger.info(f"{spec} 上 n={n} 的幂等元已构造并校验 (ζ = {zeta})")
    return family


# === 递归构造 ===


@dataclass
class _Outcome:
    generators: List[Generator] = field(default_factory=list)
    levels: List[Level] = field(default_factory=list)
    methods: Set[GenerationMethod] = field(default_factory=set)
    canonical: Optional[CanonicalGenSet] = None


def _place(g: MultiPoly, dims: Tuple[int, ...], degree: int = 0) -> MultiPoly:
    """把少一个变量的 g 放到末变量的 degree 次层上"""
    data = g.spec.array_zeros(dims)
    index = (slice(None),) * (len(dims) - 1) + (degree,)
    data[index] = g.data
    return MultiPoly(g.spec, dims, data)


def _level_generators(span_y: CodeSpan) -> Dict[int, List[MultiPoly]]:
    """末变量优先回声形中，末变量主元次数为 d 的各行的首系数"""
    axis = span_y.k - 1
    tops: Dict[int, List[MultiPoly]] = {}
    for (exponent, _), row in zip(span_y.pivots, span_y.rows):
        d = exponent[axis]
        tops.setdefault(d, []).append(row.slice_axis(axis, d))
    return tops


def _witness(span_y: CodeSpan, p: MultiPoly, degree: int) -> MultiPoly:
    """码中末变量次数为 degree、首系数为 p 的码字

    Raises:
        WitnessNotFound: p 不在对应层理想中
    """
    axis = span_y.k - 1
    target = _place(p, span_y.dims, degree)
    stop = degree * int(np.prod(span_y.dims[:-1], dtype=np.int64)) - 1
    rem = span_y.reduce(target, stop)
    if not rem.slice_axis(axis, degree).is_zero():
        raise WitnessNotFound(f"no codeword with top coefficient {p} at degree {degree}")
    return target - rem


def _canonical_base(spec: RingSpec, dims: Tuple[int, ...], gens: List[MultiPoly]) -> _Outcome:
    canonical = canonical_generators(span_from_generators(spec, dims, gens))
    generators = [
        Generator(g, (g,), f"p_{i}") for i, g in enumerate(canonical.generators())
    ]
    return _Outcome(generators, [], set(), canonical)


def _split(
    spec: RingSpec, dims: Tuple[int, ...], gens: List[MultiPoly], choice: MethodChoice, prefix: str
) -> _Outcome:
    """末变量上的幂等元分解：C_j 是 x_k = ζ^j 处的求值像"""
    k, n = len(dims), dims[-1]
    family = idempotents(spec, n)
    inner = dims[:-1]
    outcome = _Outcome(methods={GenerationMethod.METHOD2})
    for j in range(n):
        point = family.zeta**j
        images = [evaluate_axis(g, k - 1, point) for g in gens]
        label = f"{prefix}C_{j}"
        sub = _construct(spec, inner, images, choice, f"{label}/")
        theta = family.theta(j, dims)
        for g in sub.generators:
            factors = tuple(_place(f, dims) for f in (g.factors or (g.poly,))) + (theta,)
            poly = _place(g.poly, dims) * theta
            outcome.generators.append(Generator(poly, factors, f"theta_{j}*{g.label}"))
        outcome.levels.append(
            Level(
                label,
                LevelKind.COMPONENT,
                inner,
                tuple(g.poly for g in sub.generators),
                sub.canonical,
            )
        )
        outcome.levels.extend(sub.levels)
        outcome.methods |= sub.methods
    return outcome


def _peel(
    spec: RingSpec, dims: Tuple[int, ...], gens: List[MultiPoly], choice: MethodChoice, prefix: str
) -> _Outcome:
    """末变量上的分层剥离：I_j 的每个生成元配一个见证码字"""
    n = dims[-1]
    inner = dims[:-1]
    span_y = span_from_generators(spec, dims, gens, MonomialOrder.LAST_VARIABLE)
    tops = _level_generators(span_y)
    outcome = _Outcome(methods={GenerationMethod.METHOD1})
    for j in range(n):
        degree = n - 1 - j
        label = f"{prefix}I_{j}"
        sub = _construct(spec, inner, tops.get(degree, []), choice, f"{label}/")
        for i, g in enumerate(sub.generators):
            witness = _witness(span_y, g.poly, degree)
            outcome.generators.append(Generator(witness, (), f"P_{i}^({j})"))
        outcome.levels.append(
            Level(
                label,
                LevelKind.IDEAL,
                inner,
                tuple(g.poly for g in sub.generators),
                sub.canonical,
            )
        )
        outcome.levels.extend(sub.levels)
        outcome.methods |= sub.methods
    return outcome


def _construct(
    spec: RingSpec,
    dims: Tuple[int, ...],
    gens: List[MultiPoly],
    choice: MethodChoice,
    prefix: str = "",
) -> _Outcome:
    if len(dims) == 1:
        return _canonical_base(spec, dims, gens)
    if choice is not MethodChoice.METHOD1 and (spec.q - 1) % dims[-1] == 0:
        logger.debug(f"{prefix or '顶层'}: 末变量长度 {dims[-1]} 整除 q-1，使用幂等元分解")
        return _split(spec, dims, gens, choice, prefix)
    logger.debug(f"{prefix or '顶层'}: 对末变量 (长度 {dims[-1]}) 做分层剥离")
    return _peel(spec, dims, gens, choice, prefix)


def _axis_order(
    spec: RingSpec, dims: Tuple[int, ...], choice: MethodChoice, transpose: bool
) -> Tuple[int, ...]:
    k = len(dims)
    if transpose:
        return tuple(reversed(range(k)))
    if choice is MethodChoice.METHOD1:
        return tuple(range(k))
    # 稳定排序：不整除 q-1 的维度在前
    return tuple(sorted(range(k), key=lambda a: (spec.q - 1) % dims[a] == 0))


def _method_label(methods: Set[GenerationMethod]) -> GenerationMethod:
    if methods == {GenerationMethod.METHOD2}:
        return GenerationMethod.METHOD2
    if GenerationMethod.METHOD2 in methods:
        return GenerationMethod.HYBRID
    return GenerationMethod.METHOD1


def _check_generators(spec: RingSpec, dims: Tuple[int, ...], gens: Sequence[MultiPoly]) -> None:
    for g in gens:
        if g.spec != spec:
            raise SpecMismatch(f"generator over {g.spec} for a code over {spec}")
        if g.dims != dims:
            raise ShapeMismatch(f"generator dims {g.dims} differ from {dims}")


def nd_generators(
    spec: RingSpec,
    dims: Sequence[int],
    gens: Sequence[MultiPoly],
    method: Union[MethodChoice, str] = MethodChoice.AUTO,
    transpose: bool = False,
    certify_budget: Optional[int] = None,
    reference: Optional[CodeSpan] = None,
) -> GeneratorReport:
    """多维循环码的生成元

    Args:
        spec: 链环规格
        dims: 各变量长度 (m_1, ..., m_k)
        gens: 码的生成元
        method: auto 按整除性选择；method1 全程分层剥离；method2 要求末变量长度整除 q-1
        transpose: 反转变量顺序后再构造（二维时即行列互换）
        certify_budget: Π m_i 不超过该值时用回声形证书校验跨度，缺省取全局配置
        reference: 已有的输入码回声形，省去重建

    Returns:
        生成元报告，超出预算时 certified 为 False

    Raises:
        OrderNotCompatible: 强制 method2 但末变量长度不整除 q-1
        VerificationFailure: 输出跨度与输入不一致
    """
    dims = tuple(int(m) for m in dims)
    gens = list(gens)
    choice = MethodChoice(method)
    _check_generators(spec, dims, gens)

    axis_order = _axis_order(spec, dims, choice, transpose)
    work_dims = tuple(dims[a] for a in axis_order)
    if choice is MethodChoice.METHOD2 and len(dims) >= 2 and (spec.q - 1) % work_dims[-1]:
        raise OrderNotCompatible(
            f"method2 needs the last length {work_dims[-1]} to divide q-1={spec.q - 1}"
        )
    work_gens = [permute_axes(g, axis_order) for g in gens]
    inner_choice = MethodChoice.METHOD1 if choice is MethodChoice.METHOD1 else MethodChoice.AUTO
    outcome = _construct(spec, work_dims, work_gens, inner_choice)

    inverse = tuple(int(a) for a in np.argsort(axis_order))
    generators = [
        Generator(
            permute_axes(g.poly, inverse),
            tuple(permute_axes(f, inverse) for f in g.factors),
            g.label,
        )
        for g in outcome.generators
    ]
    levels = outcome.levels
    if len(dims) == 1:
        levels = [
            Level(
                "canonical",
                LevelKind.CANONICAL,
                dims,
                tuple(g.poly for g in generators),
                outcome.canonical,
            )
        ]

    budget = get_config().certify_budget if certify_budget is None else certify_budget
    certified = False
    if int(np.prod(dims, dtype=np.int64)) <= budget:
        target = reference or span_from_generators(spec, dims, gens)
        produced = span_from_generators(spec, dims, [g.poly for g in generators])
        if not codes_equal(produced, target):
            raise VerificationFailure("generated span differs from the input code")
        certified = True
    else:
        logger.warning(f"dims={dims} 超出证书预算 {budget}，结果未经跨度校验")

    report = GeneratorReport(
        method=_method_label(outcome.methods),
        dims=dims,
        ring=spec,
        generators=generators,
        levels=levels,
        certified=certified,
        axis_order=axis_order,
    )
    logger.info(
        f"生成完成: {spec}, dims={dims}, 方法 {report.method.value}, "
        f"生成元 {len(generators)} 个, certified={certified}"
    )
    return report


# === 二维入口 ===


def _require_2d(span: CodeSpan) -> None:
    if span.k != 2:
        raise ShapeMismatch(f"expected a 2D code with dims (m, n), got {span.dims}")


def method1_ideals(span: CodeSpan) -> List[CanonicalGenSet]:
    """各层理想 I_0..I_{n-1} 的阶梯形式"""
    _require_2d(span)
    m, n = span.dims
    tops = _level_generators(span.reorder(MonomialOrder.LAST_VARIABLE))
    return [
        canonical_generators(span_from_generators(span.spec, (m,), tops.get(n - 1 - j, [])))
        for j in range(n)
    ]


def method2_components(span: CodeSpan) -> List[CanonicalGenSet]:
    """各分量 C_0..C_{n-1} 的阶梯形式（y = ζ^j 处的求值像）

    Raises:
        OrderNotCompatible: n 不整除 q-1
    """
    _require_2d(span)
    m, n = span.dims
    zeta = find_primitive_root(span.spec, n)
    return [
        canonical_generators(
            span_from_generators(
                span.spec, (m,), [evaluate_axis(row, 1, zeta**j) for row in span.rows]
            )
        )
        for j in range(n)
    ]


def method1_generators(span: CodeSpan, transpose: bool = False) -> GeneratorReport:
    """分层剥离得到的生成元，输出跨度总会与输入比对"""
    _require_2d(span)
    return nd_generators(
        span.spec,
        span.dims,
        span.rows,
        MethodChoice.METHOD1,
        transpose=transpose,
        certify_budget=span.length,
        reference=span,
    )


def method2_generators(span: CodeSpan, transpose: bool = False) -> GeneratorReport:
    """幂等元分解得到的可分离生成元，输出跨度总会与输入比对

    Raises:
        OrderNotCompatible: 所用的 y 长度不整除 q-1
    """
    _require_2d(span)
    return nd_generators(
        span.spec,
        span.dims,
        span.rows,
        MethodChoice.METHOD2,
        transpose=transpose,
        certify_budget=span.length,
        reference=span,
    )


# === 由给定层数据装配 ===


def _as_multi(p: Union[MultiPoly, Poly, QuotPoly], m: int) -> MultiPoly:
    if isinstance(p, MultiPoly):
        if p.dims != (m,):
            raise ShapeMismatch(f"level generator dims {p.dims} differ from ({m},)")
        return p
    return MultiPoly.from_poly(p, (m,))


def assemble_from_levels(
    spec: RingSpec,
    dims: Sequence[int],
    levels: Sequence[Sequence[Union[MultiPoly, Poly, QuotPoly]]],
    lower: Optional[Mapping[Tuple[int, int], Mapping[int, MultiPoly]]] = None,
) -> GeneratorReport:
    """由层理想的生成元装配 P_i^{(j)} = p_i^{(j)} y^{n-1-j} + 低次项

    Args:
        spec: 链环规格
        dims: (m, n)
        levels: levels[j] 为 I_j 的生成元
        lower: {(j, i): {y 次数: 系数}}，缺省时低次项为零

    Returns:
        未校验的生成元报告
    """
    m, n = (int(d) for d in dims)
    if len(levels) > n:
        raise ShapeMismatch(f"{len(levels)} levels for n = {n}")
    lower = lower or {}
    generators = []
    report_levels = []
    for j, level in enumerate(levels):
        degree = n - 1 - j
        polys = [_as_multi(p, m) for p in level]
        for i, p in enumerate(polys):
            poly = _place(p, (m, n), degree)
            for d, coeff in lower.get((j, i), {}).items():
                if d >= degree:
                    raise ShapeMismatch(f"lower term y^{d} not below y^{degree}")
                poly = poly + _place(_as_multi(coeff, m), (m, n), d)
            generators.append(Generator(poly, (), f"P_{i}^({j})"))
        report_levels.append(Level(f"I_{j}", LevelKind.IDEAL, (m,), tuple(polys)))
    return GeneratorReport(
        method=GenerationMethod.METHOD1,
        dims=(m, n),
        ring=spec,
        generators=generators,
        levels=report_levels,
    )


def assemble_from_components(
    spec: RingSpec,
    dims: Sequence[int],
    components: Sequence[Sequence[Union[MultiPoly, Poly, QuotPoly]]],
) -> GeneratorReport:
    """由分量 C_j 的生成元装配 θ_j(y) p_i^{(j)}(x)

    Raises:
        OrderNotCompatible: n 不整除 q-1
    """
    m, n = (int(d) for d in dims)
    if len(components) != n:
        raise ShapeMismatch(f"{len(components)} components for n = {n}")
    family = idempotents(spec, n)
    generators = []
    report_levels = []
    for j, component in enumerate(components):
        theta = family.theta(j, (m, n))
        polys = [_as_multi(p, m) for p in component]
        for i, p in enumerate(polys):
            factor = _place(p, (m, n))
            generators.append(Generator(factor * theta, (factor, theta), f"theta_{j}*p_{i}"))
        report_levels.append(Level(f"C_{j}", LevelKind.COMPONENT, (m,), tuple(polys)))
    return GeneratorReport(
        method=GenerationMethod.METHOD2,
        dims=(m, n),
        ring=spec,
        generators=generators,
        levels=report_levels,
    )
