"""chain-codes 暴力枚举

码作为加法群由 b * x^e * g 生成（b 取遍环的加法生成元，e 取遍全部指数，g 取遍生成元），
这里逐个加入加法生成元并按陪集展开，直接得到码的全部码字。
本模块不使用回声形的任何约化例程，结果可以独立地校验主算法。

加法坐标：Z 族每个系数就是一个 Z_{p^nu} 坐标；Gamma 族每个系数拆成 nu * r 个 F_p 数字。
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.chain_ring import Raw, RingSpec
from ..algebra.exceptions import BudgetExceeded, ShapeMismatch
from ..algebra.polynomials import MultiPoly, QuotPoly
from ..utils.config import get_config
from ..utils.logger import get_logger

logger = get_logger("chain_codes.oracle.enumeration")

Word = Tuple[Raw, ...]


def _additive_modulus(spec: RingSpec) -> int:
    return spec.p if spec.is_gamma else spec.modulus


def _to_additive(spec: RingSpec, data: np.ndarray) -> np.ndarray:
    if not spec.is_gamma:
        return np.asarray(data, dtype=np.int64).reshape(-1)
    powers = spec.p ** np.arange(spec.r, dtype=np.int64)
    return ((np.asarray(data, dtype=np.int64)[..., None] // powers) % spec.p).reshape(-1)


def _from_additive(spec: RingSpec, vectors: np.ndarray, dims: Tuple[int, ...]) -> np.ndarray:
    """加法坐标 (K, L) -> 环数组 (K, *dims[, nu])"""
    count = vectors.shape[0]
    if spec.is_gamma:
        powers = spec.p ** np.arange(spec.r, dtype=np.int64)
        vectors = vectors.reshape(count, -1, spec.r) @ powers
    return vectors.reshape((count,) + spec.array_shape_with_digits(dims))


def _key(data: np.ndarray) -> bytes:
    return np.asarray(data, dtype=np.int64).tobytes()


def check_budget(required: int, budget: Optional[int], what: str) -> None:
    budget = get_config().oracle_budget if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget, what)


@dataclass(frozen=True, eq=False)
class EnumeratedCode:
    """显式列出全部码字的码"""

    spec: RingSpec
    dims: Tuple[int, ...]
    arrays: np.ndarray = field(repr=False)  # (|C|, *dims[, nu]) 环数组

    @cached_property
    def keys(self) -> FrozenSet[bytes]:
        return frozenset(_key(a) for a in self.arrays)

    @cached_property
    def words(self) -> FrozenSet[Word]:
        """码字集合，每个码字是按 C 序展开的系数元组"""
        return frozenset(tuple(self.spec.array_raws(a)) for a in self.arrays)

    def __len__(self) -> int:
        return int(self.arrays.shape[0])

    def __contains__(self, f: MultiPoly) -> bool:
        if f.dims != self.dims:
            raise ShapeMismatch(f"word dims {f.dims} differ from code dims {self.dims}")
        return _key(f.data) in self.keys

    def polys(self) -> Iterator[MultiPoly]:
        for a in self.arrays:
            yield MultiPoly(self.spec, self.dims, a)


def _additive_generators(
    spec: RingSpec, dims: Tuple[int, ...], gens: Sequence[MultiPoly]
) -> Iterator[np.ndarray]:
    basis = spec.additive_basis()
    axes = tuple(range(len(dims)))
    for g in gens:
        if g.dims != dims:
            raise ShapeMismatch(f"generator dims {g.dims} differ from {dims}")
        if g.is_zero():
            continue
        for exponent in np.ndindex(*dims):
            shifted = np.roll(g.data, exponent, axis=axes)
            for b in basis:
                yield _to_additive(spec, spec.array_scale(b, shifted))


def enumerate_span(
    spec: RingSpec,
    dims: Sequence[int],
    gens: Sequence[MultiPoly],
    budget: Optional[int] = None,
) -> EnumeratedCode:
    """逐字枚举生成元的循环移位闭包

    Args:
        spec: 链环规格
        dims: 各变量长度
        gens: 生成元
        budget: 候选码字数 |R|^{Π m_i} 的上限，缺省取全局配置

    Raises:
        BudgetExceeded: |R|^{Π m_i} 超出预算
    """
    dims = tuple(int(m) for m in dims)
    length = int(np.prod(dims, dtype=np.int64))
    check_budget(spec.size**length, budget, "span enumeration")

    modulus = _additive_modulus(spec)
    width = length * (spec.nu * spec.r if spec.is_gamma else 1)
    words = np.zeros((1, width), dtype=np.int64)
    seen = {_key(words[0])}
    for s in _additive_generators(spec, dims, gens):
        if _key(s) in seen:
            continue
        # 陪集展开：S + k*s，直到 k*s 落回 S
        blocks = [words]
        t = s % modulus
        while _key(t) not in seen:
            blocks.append((words + t) % modulus)
            t = (t + s) % modulus
        words = np.concatenate(blocks)
        seen = {_key(w) for w in words}

    logger.debug(f"枚举完成: {spec}, dims={dims}, |C| = {words.shape[0]}")
    return EnumeratedCode(spec, dims, _from_additive(spec, words, dims))


def _require_2d(code: EnumeratedCode) -> Tuple[int, int]:
    if len(code.dims) != 2:
        raise ShapeMismatch(f"expected a 2D code with dims (m, n), got {code.dims}")
    return code.dims


def literal_Ij(code: EnumeratedCode, j: int) -> FrozenSet[Word]:
    """按定义计算 I_j：y 次数不超过 n-1-j 的码字中 y^{n-1-j} 的系数"""
    m, n = _require_2d(code)
    degree = n - 1 - j
    mask = code.spec.array_mask(code.arrays)  # (|C|, m, n)
    low = ~mask[:, :, degree + 1 :].any(axis=(1, 2))
    column = code.arrays[low][:, :, degree]
    return frozenset(tuple(code.spec.array_raws(c)) for c in column)


def literal_Cj(
    code: EnumeratedCode,
    theta: Union[QuotPoly, MultiPoly],
    budget: Optional[int] = None,
) -> FrozenSet[Word]:
    """按定义计算 C_j = {g(x) : g(x) θ_j(y) ∈ C}，逐个检查全部 |R|^m 个候选

    Raises:
        BudgetExceeded: |R|^m 超出预算
    """
    m, n = _require_2d(code)
    spec = code.spec
    check_budget(spec.size**m, budget, "component candidates")
    if isinstance(theta, QuotPoly):
        theta = theta.to_multi()
    if theta.dims != (n,):
        raise ShapeMismatch(f"idempotent dims {theta.dims} differ from ({n},)")

    elements = list(spec.elements())
    candidates = np.array(
        list(itertools.product(elements, repeat=m)), dtype=np.int64
    ).reshape((-1,) + spec.array_shape_with_digits((m,)))
    columns: List[np.ndarray] = [
        spec.array_scale(theta.coeff((y,)).value, candidates) for y in range(n)
    ]
    products = np.stack(columns, axis=2)  # (K, m, n[, nu])
    keys = code.keys
    return frozenset(
        tuple(spec.array_raws(candidates[i]))
        for i in range(candidates.shape[0])
        if _key(products[i]) in keys
    )
