"""chain-codes 枚举证书

用暴力枚举交叉检查构造结果：

- span：声称的生成元与输入生成元张成同一个码；
- cardinality：回声形给出的 |C| 与枚举结果一致；
- I_j / C_j（二维）：按定义逐字计算的层理想与分量，与构造中使用的阶梯形式一致。

不一致时给出最小反例：非零项最少，其次按系数元组字典序最小。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence

from ..algebra.chain_ring import RingSpec
from ..algebra.parsing import format_poly
from ..algebra.polynomials import MultiPoly
from ..codes.cyclic_core import CodeSpan, cardinality, span_from_generators
from ..codes.multidim import idempotents, method1_ideals, method2_components
from ..utils.logger import get_logger
from .enumeration import EnumeratedCode, Word, enumerate_span, literal_Cj, literal_Ij

logger = get_logger("chain_codes.oracle.certificates")


@dataclass
class CheckResult:
    """单项检查结果"""

    name: str
    passed: bool
    detail: str = ""
    counterexample: Optional[MultiPoly] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "counterexample": (
                format_poly(self.counterexample) if self.counterexample is not None else None
            ),
        }


@dataclass
class OracleCertificate:
    """证书汇总"""

    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    @property
    def counterexample(self) -> Optional[MultiPoly]:
        for check in self.failures:
            if check.counterexample is not None:
                return check.counterexample
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def _nonzero_terms(spec: RingSpec, word: Word) -> int:
    zero = spec.zero()
    return sum(1 for c in word if c != zero)


def minimal_word(spec: RingSpec, words: Iterable[Word]) -> Optional[Word]:
    """非零项最少、其次字典序最小的码字"""
    return min(words, key=lambda w: (_nonzero_terms(spec, w), w), default=None)


def _word_poly(spec: RingSpec, dims: Sequence[int], word: Word) -> MultiPoly:
    data = spec.array_from_raws(word, tuple(dims))
    return MultiPoly(spec, dims, data)


def _compare(
    name: str,
    spec: RingSpec,
    dims: Sequence[int],
    expected: FrozenSet[Word],
    actual: FrozenSet[Word],
) -> CheckResult:
    if expected == actual:
        return CheckResult(name, True, f"{len(actual)} words")
    difference = expected ^ actual
    word = minimal_word(spec, difference)
    side = "missing from" if word in expected else "extra in"
    detail = f"{len(difference)} words differ; minimal one is {side} the claimed set"
    logger.info(f"检查 {name} 失败: {detail}")
    return CheckResult(name, False, detail, _word_poly(spec, dims, word))


def certify_generators(
    spec: RingSpec,
    dims: Sequence[int],
    reference: Sequence[MultiPoly],
    claimed: Sequence[MultiPoly],
    budget: Optional[int] = None,
) -> OracleCertificate:
    """用枚举检查 claimed 与 reference 张成同一个码

    二维时额外检查层理想 I_j，n 整除 q-1 时再检查分量 C_j。

    Raises:
        BudgetExceeded: 枚举超出预算
    """
    dims = tuple(int(m) for m in dims)
    certificate = OracleCertificate()
    expected = enumerate_span(spec, dims, reference, budget)
    actual = enumerate_span(spec, dims, claimed, budget)
    certificate.checks.append(_compare("span", spec, dims, expected.words, actual.words))

    span = span_from_generators(spec, dims, reference)
    size = cardinality(span)
    certificate.checks.append(
        CheckResult(
            "cardinality",
            size == len(expected),
            f"echelon {size}, enumeration {len(expected)}",
        )
    )

    if len(dims) == 2:
        certificate.checks.extend(_level_checks(spec, dims, span, expected, budget))

    logger.info(
        f"枚举证书: {spec}, dims={dims}, "
        f"{'通过' if certificate.passed else '失败'} ({len(certificate.checks)} 项)"
    )
    return certificate


def _level_checks(
    spec: RingSpec,
    dims: Sequence[int],
    span: CodeSpan,
    code: EnumeratedCode,
    budget: Optional[int],
) -> List[CheckResult]:
    m, n = dims
    checks = []
    for j, ideal in enumerate(method1_ideals(span)):
        computed = enumerate_span(spec, (m,), ideal.generators(), budget).words
        checks.append(_compare(f"I_{j}", spec, (m,), literal_Ij(code, j), computed))
    if (spec.q - 1) % n == 0:
        family = idempotents(spec, n)
        for j, component in enumerate(method2_components(span)):
            computed = enumerate_span(spec, (m,), component.generators(), budget).words
            literal = literal_Cj(code, family.thetas[j], budget)
            checks.append(_compare(f"C_{j}", spec, (m,), literal, computed))
    return checks
