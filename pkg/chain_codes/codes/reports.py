"""chain-codes 结果记录

本模块定义构造结果的数据结构：一维阶梯形式 CanonicalGenSet、带因子分解的
Generator、分层数据 Level 以及汇总的 GeneratorReport。
所有记录都提供 to_dict / from_dict，多项式以可重新解析的文本形式保存。
"""

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Any, Dict, List, Optional, Tuple

from ..algebra.chain_ring import RingSpec
from ..algebra.exceptions import ChainCodesException, ValidationException
from ..algebra.parsing import format_poly, parse_poly, parse_ring_spec
from ..algebra.polynomials import MultiPoly, Poly, QuotPoly
from ..algebra.types import GenerationMethod, LevelKind


@dataclass(frozen=True)
class CanonicalEntry:
    """阶梯形式中的一项 γ^i * q(x)"""

    gamma_exponent: int
    q: Poly

    @property
    def degree(self) -> int:
        return self.q.degree

    def generator(self, m: int) -> MultiPoly:
        spec = self.q.spec
        return MultiPoly.from_poly(self.q, (m,)).scale(spec.gamma_power(self.gamma_exponent))

    def to_dict(self) -> Dict[str, Any]:
        return {"gamma_exponent": self.gamma_exponent, "q": format_poly(self.q)}

    def __str__(self) -> str:
        i = self.gamma_exponent
        q = format_poly(self.q)
        if i == 0:
            return q
        power = "g" if i == 1 else f"g^{i}"
        return power if q == "1" else f"{power}*({q})"


@dataclass(frozen=True)
class CanonicalGenSet:
    """一维循环码的阶梯生成元组

    entries 满足 γ 指数严格递减、q 的次数严格递增、q 首一。零码对应空列表。
    """

    spec: RingSpec
    m: int
    entries: Tuple[CanonicalEntry, ...] = ()

    def is_zero(self) -> bool:
        return not self.entries

    def generators(self) -> List[MultiPoly]:
        return [entry.generator(self.m) for entry in self.entries]

    def check_staircase(self) -> bool:
        """检查严格递减的 γ 指数、严格递增的次数以及首一性"""
        for entry in self.entries:
            if not entry.q.is_monic() or not 0 <= entry.gamma_exponent < self.spec.nu:
                return False
        for prev, cur in zip(self.entries, self.entries[1:]):
            if not (prev.gamma_exponent > cur.gamma_exponent and prev.degree < cur.degree):
                return False
        return True

    def bound(self) -> int:
        """生成元个数上界 min(nu, deg q_r + 1)"""
        if not self.entries:
            return 0
        return min(self.spec.nu, self.entries[-1].degree + 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "entries": [entry.to_dict() for entry in self.entries],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], spec: RingSpec) -> "CanonicalGenSet":
        try:
            m = int(data["m"])
            entries = tuple(
                CanonicalEntry(
                    int(item["gamma_exponent"]),
                    QuotPoly.from_multi(parse_poly(item["q"], spec, (m,))).base,
                )
                for item in data["entries"]
            )
            return cls(spec, m, entries)
        except (KeyError, ValueError, TypeError) as e:
            raise ValidationException(f"Invalid CanonicalGenSet format: {e}")

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return ", ".join(str(entry) for entry in self.entries)


@dataclass(frozen=True)
class Generator:
    """一个生成元，可附带一元因子分解"""

    poly: MultiPoly
    factors: Tuple[MultiPoly, ...] = ()
    label: str = ""

    @cached_property
    def separable(self) -> bool:
        """每个因子至多依赖一个变量，且因子之积等于 poly"""
        if not self.factors:
            return len(self.poly.variables()) <= 1
        if any(len(f.variables()) > 1 for f in self.factors):
            return False
        return reduce(lambda a, b: a * b, self.factors) == self.poly

    def to_dict(self) -> Dict[str, Any]:
        return {
            "poly": format_poly(self.poly),
            "label": self.label,
            "factors": [format_poly(f) for f in self.factors],
            "separable": self.separable,
        }

    @classmethod
    def from_dict(
        cls, data: Dict[str, Any], spec: RingSpec, dims: Tuple[int, ...]
    ) -> "Generator":
        try:
            return cls(
                poly=parse_poly(data["poly"], spec, dims),
                factors=tuple(parse_poly(f, spec, dims) for f in data.get("factors", [])),
                label=data.get("label", ""),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise ValidationException(f"Invalid Generator format: {e}")


@dataclass(frozen=True)
class Level:
    """分层数据：Method 1 的 I_j，Method 2 的 C_j"""

    label: str
    kind: LevelKind
    dims: Tuple[int, ...]
    generators: Tuple[MultiPoly, ...] = ()
    canonical: Optional[CanonicalGenSet] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "kind": self.kind.value,
            "dims": list(self.dims),
            "generators": [format_poly(g) for g in self.generators],
            "canonical": self.canonical.to_dict() if self.canonical else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], spec: RingSpec) -> "Level":
        try:
            dims = tuple(int(m) for m in data["dims"])
            canonical = data.get("canonical")
            return cls(
                label=data["label"],
                kind=LevelKind(data["kind"]),
                dims=dims,
                generators=tuple(parse_poly(g, spec, dims) for g in data["generators"]),
                canonical=CanonicalGenSet.from_dict(canonical, spec) if canonical else None,
            )
        except (KeyError, ValueError, TypeError) as e:
            raise ValidationException(f"Invalid Level format: {e}")


@dataclass
class GeneratorReport:
    """构造结果汇总

    certified 为 False 表示规模超出预算而未做跨度证书，不表示失败；
    证书失败会直接抛出 VerificationFailure。
    """

    method: GenerationMethod
    dims: Tuple[int, ...]
    ring: RingSpec
    generators: List[Generator] = field(default_factory=list)
    levels: List[Level] = field(default_factory=list)
    certified: bool = False
    axis_order: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.axis_order:
            self.axis_order = tuple(range(len(self.dims)))

    @property
    def separable_flags(self) -> List[bool]:
        return [g.separable for g in self.generators]

    def polys(self) -> List[MultiPoly]:
        return [g.poly for g in self.generators]

    def to_dict(self) -> Dict[str, Any]:
        """序列化为字典

        Returns:
            字段稳定的报告字典
        """
        return {
            "ring": str(self.ring),
            "dims": list(self.dims),
            "method": self.method.value,
            "generators": [format_poly(g.poly) for g in self.generators],
            "factors": [[format_poly(f) for f in g.factors] for g in self.generators],
            "separable": self.separable_flags,
            "levels": [level.to_dict() for level in self.levels],
            "certified": self.certified,
            "axis_order": list(self.axis_order),
        }

    @classmethod
    def from_dict(
        cls, data: Dict[str, Any], spec: Optional[RingSpec] = None
    ) -> "GeneratorReport":
        """从字典反序列化

        Raises:
            ValidationException: 当数据格式无效时
        """
        try:
            spec = spec or parse_ring_spec(data["ring"])
            dims = tuple(int(m) for m in data["dims"])
            factor_lists = data.get("factors") or [[] for _ in data["generators"]]
            generators = [
                Generator(
                    poly=parse_poly(text, spec, dims),
                    factors=tuple(parse_poly(f, spec, dims) for f in factors),
                )
                for text, factors in zip(data["generators"], factor_lists)
            ]
            return cls(
                method=GenerationMethod(data["method"]),
                dims=dims,
                ring=spec,
                generators=generators,
                levels=[Level.from_dict(level, spec) for level in data.get("levels", [])],
                certified=bool(data.get("certified", False)),
                axis_order=tuple(data.get("axis_order", ())),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise ValidationException(f"Invalid GeneratorReport format: {e}")
        except ChainCodesException as e:
            raise ValidationException(f"Invalid GeneratorReport content: {e}")
