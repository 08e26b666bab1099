"""chain-codes 一维与多维循环码的回声形

码 C 是 R^N（N = Π m_i）中对每个变量的循环移位封闭的 R-子模。
本模块把 C 表示为"秩坐标"下的 Howell 回声形：

- 按单项式序给每个指数排秩，首项是秩最大的非零项；
- 每个主元位置至多一行，主元系数恰为 γ^v；
- 对每行 γ^{nu-v} * 行 以及 x_i * 行 都可被约化为零，因此约化判定成员资格是完备的；
- 各行在其他主元位置上的系数约化为模 γ^{v'} 的规范代表元，回声形因而唯一。

一维情形下，阶梯形式 γ^{i_j} q_j(x) 直接从回声形的拐角行读出，
拐角行不能被 γ^v 整除时改用商理想 (C : γ^v) 求首一部分。
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..algebra.chain_ring import RingSpec
from ..algebra.exceptions import ShapeMismatch, SpecMismatch, VerificationFailure
from ..algebra.polynomials import MultiPoly, Poly
from ..algebra.types import MonomialOrder
from ..utils.logger import get_logger
from .reports import CanonicalEntry, CanonicalGenSet

logger = get_logger("chain_codes.codes.cyclic_core")

Exponent = Tuple[int, ...]


def _order_key(order: MonomialOrder) -> Callable[[Exponent], tuple]:
    if order is MonomialOrder.GRADED:
        return lambda e: (sum(e), e)
    return lambda e: e[::-1]


@dataclass(frozen=True)
class _Layout:
    """指数与秩坐标之间的换算表"""

    dims: Tuple[int, ...]
    exponents: Tuple[Exponent, ...]  # 秩 -> 指数
    order_flat: np.ndarray  # 秩 -> C 序平铺下标
    rank_of_flat: np.ndarray
    shifts: Tuple[np.ndarray, ...]  # 第 i 个：乘以 x_i 的源秩置换

    @property
    def size(self) -> int:
        return len(self.exponents)

    def rank(self, exponent: Sequence[int]) -> int:
        flat = int(np.ravel_multi_index(tuple(exponent), self.dims))
        return int(self.rank_of_flat[flat])


@lru_cache(maxsize=64)
def _layout(dims: Tuple[int, ...], order: MonomialOrder) -> _Layout:
    flat_exponents = list(np.ndindex(*dims))
    key = _order_key(order)
    order_flat = sorted(range(len(flat_exponents)), key=lambda f: key(flat_exponents[f]))
    order_flat = np.array(order_flat, dtype=np.int64)
    rank_of_flat = np.empty_like(order_flat)
    rank_of_flat[order_flat] = np.arange(order_flat.size)
    grid = np.arange(order_flat.size).reshape(dims)
    shifts = tuple(
        rank_of_flat[np.roll(grid, 1, axis=axis).reshape(-1)[order_flat]]
        for axis in range(len(dims))
    )
    exponents = tuple(tuple(int(i) for i in flat_exponents[f]) for f in order_flat)
    return _Layout(dims, exponents, order_flat, rank_of_flat, shifts)


class _Echelon:
    """秩坐标向量上的 Howell 回声形构造器

    perms 给出额外的封闭置换（循环移位）；不给时只做 R-模张成。
    """

    def __init__(self, spec: RingSpec, ncols: int, perms: Sequence[np.ndarray] = ()):
        self.spec = spec
        self.ncols = ncols
        self.perms = list(perms)
        self.rows: Dict[int, Tuple[np.ndarray, int]] = {}

    def zeros(self) -> np.ndarray:
        return self.spec.array_zeros((self.ncols,))

    def lead(self, vec: np.ndarray) -> int:
        nz = np.flatnonzero(self.spec.array_mask(vec))
        return int(nz[-1]) if nz.size else -1

    def reduce(self, vec: np.ndarray, stop: int = -1) -> Tuple[np.ndarray, int]:
        """约化直到首项秩 <= stop 或没有可用的主元行，返回 (余项, 首项秩)"""
        spec = self.spec
        while True:
            col = self.lead(vec)
            if col <= stop:
                return vec, col
            row = self.rows.get(col)
            if row is None:
                return vec, col
            pivot, v = row
            c = spec.array_get(vec, col)
            if spec.val(c) < v:
                return vec, col
            t, _ = spec.split(c, v)
            vec = spec.array_axpy(vec, t, pivot)

    def _normalize(self, vec: np.ndarray, col: int) -> Tuple[np.ndarray, int]:
        v, u = self.spec.unit_part(self.spec.array_get(vec, col))
        return self.spec.array_scale(self.spec.inv(u), vec), v

    def _closure(self, row: np.ndarray, v: int) -> List[np.ndarray]:
        out = [row[perm] for perm in self.perms]
        if v > 0:
            out.append(self.spec.array_scale(self.spec.gamma_power(self.spec.nu - v), row))
        return out

    def add(self, vec: np.ndarray) -> bool:
        """加入一个向量并维持封闭性，返回是否插入了新行"""
        queue = deque([vec])
        inserted = False
        while queue:
            rem, col = self.reduce(queue.popleft())
            if col < 0:
                continue
            row, v = self._normalize(rem, col)
            old = self.rows.get(col)
            self.rows[col] = (row, v)
            inserted = True
            logger.debug(f"插入主元行: 秩 {col}, 赋值 {v}")
            if old is not None:
                queue.append(old[0])
            queue.extend(self._closure(row, v))
        return inserted

    def finish(self) -> None:
        """复查封闭性直到稳定，然后做 Hermite 约化"""
        while True:
            pending = [
                vec for row, v in list(self.rows.values()) for vec in self._closure(row, v)
            ]
            changed = False
            for vec in pending:
                changed = self.add(vec) or changed
            if not changed:
                break
        self._hermite()

    def _hermite(self) -> None:
        spec = self.spec
        cols = sorted(self.rows)
        for index, col in enumerate(cols):
            row, v = self.rows[col]
            for lower in reversed(cols[:index]):
                pivot, pv = self.rows[lower]
                t, _ = spec.split(spec.array_get(row, lower), pv)
                if not spec.is_zero(t):
                    row = spec.array_axpy(row, t, pivot)
            self.rows[col] = (row, v)


@dataclass(frozen=True, eq=False)
class CodeSpan:
    """循环码的规范回声形

    Attributes:
        spec: 链环规格
        dims: 各变量的长度 (m_1, ..., m_k)
        order: 单项式序
        pivots: 每行的 (首项指数, γ 赋值)，按秩升序
        vectors: 秩坐标下的各行
    """

    spec: RingSpec
    dims: Tuple[int, ...]
    order: MonomialOrder
    pivots: Tuple[Tuple[Exponent, int], ...] = ()
    vectors: Tuple[np.ndarray, ...] = field(default=(), repr=False)

    @property
    def layout(self) -> _Layout:
        return _layout(self.dims, self.order)

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def length(self) -> int:
        return self.layout.size

    def is_zero(self) -> bool:
        return not self.pivots

    def __len__(self) -> int:
        return len(self.pivots)

    @cached_property
    def rows(self) -> Tuple[MultiPoly, ...]:
        return tuple(self.from_vector(vec) for vec in self.vectors)

    @cached_property
    def _table(self) -> Dict[int, Tuple[np.ndarray, int]]:
        layout = self.layout
        return {
            layout.rank(exponent): (vec, v)
            for (exponent, v), vec in zip(self.pivots, self.vectors)
        }

    # === 坐标换算 ===

    def to_vector(self, f: MultiPoly) -> np.ndarray:
        self._check(f)
        digits = (self.spec.nu,) if self.spec.is_gamma else ()
        flat = f.data.reshape((self.length,) + digits)
        return flat[self.layout.order_flat]

    def from_vector(self, vec: np.ndarray) -> MultiPoly:
        flat = np.empty_like(vec)
        flat[self.layout.order_flat] = vec
        digits = (self.spec.nu,) if self.spec.is_gamma else ()
        return MultiPoly(self.spec, self.dims, flat.reshape(self.dims + digits))

    def rank(self, exponent: Sequence[int]) -> int:
        return self.layout.rank(exponent)

    def _check(self, f: MultiPoly) -> None:
        if f.spec != self.spec:
            raise SpecMismatch(f"polynomial over {f.spec} tested against code over {self.spec}")
        if f.dims != self.dims:
            raise ShapeMismatch(f"polynomial dims {f.dims} differ from code dims {self.dims}")

    def _echelon(self) -> _Echelon:
        echelon = _Echelon(self.spec, self.length)
        echelon.rows = dict(self._table)
        return echelon

    # === 查询 ===

    def reduce(self, f: MultiPoly, stop_rank: int = -1) -> MultiPoly:
        """用回声形约化 f，首项秩不超过 stop_rank 时停止"""
        rem, _ = self._echelon().reduce(self.to_vector(f), stop_rank)
        return self.from_vector(rem)

    def contains(self, f: MultiPoly) -> bool:
        rem, col = self._echelon().reduce(self.to_vector(f))
        return col < 0

    def reorder(self, order: MonomialOrder) -> "CodeSpan":
        """换一种单项式序重建回声形"""
        if order is self.order:
            return self
        return span_from_generators(self.spec, self.dims, self.rows, order)

    def __str__(self) -> str:
        return (
            f"CodeSpan({self.spec}, dims={self.dims}, rows={len(self)}, "
            f"|C|={self.spec.q}^{cardinality_exponent(self)})"
        )


def _span_from_echelon(
    spec: RingSpec,
    dims: Tuple[int, ...],
    order: MonomialOrder,
    rows: Dict[int, Tuple[np.ndarray, int]],
) -> CodeSpan:
    layout = _layout(dims, order)
    cols = sorted(rows)
    return CodeSpan(
        spec=spec,
        dims=dims,
        order=order,
        pivots=tuple((layout.exponents[c], rows[c][1]) for c in cols),
        vectors=tuple(rows[c][0] for c in cols),
    )


def span_from_generators(
    spec: RingSpec,
    dims: Sequence[int],
    gens: Iterable[MultiPoly],
    order: MonomialOrder = MonomialOrder.GRADED,
) -> CodeSpan:
    """生成元的循环移位闭包，结果为规范回声形

    Args:
        spec: 链环规格
        dims: 各变量长度
        gens: 生成元，可以为空（零码）
        order: 单项式序

    Raises:
        SpecMismatch: 生成元所在环不同
        ShapeMismatch: 生成元维数不同
    """
    dims = tuple(int(m) for m in dims)
    layout = _layout(dims, order)
    echelon = _Echelon(spec, layout.size, layout.shifts)
    shell = CodeSpan(spec, dims, order)
    count = 0
    for g in gens:
        echelon.add(shell.to_vector(g))
        count += 1
    echelon.finish()
    span = _span_from_echelon(spec, dims, order, echelon.rows)
    logger.info(
        f"回声形完成: {spec}, dims={dims}, 生成元 {count} 个, 主元行 {len(span)} 个"
    )
    return span


def membership(span: CodeSpan, f: MultiPoly) -> bool:
    """f 是否属于码

    Raises:
        ShapeMismatch: 维数不一致
    """
    return span.contains(f)


def cardinality_exponent(span: CodeSpan) -> int:
    """|C| = q^e 中的 e"""
    return sum(span.spec.nu - v for _, v in span.pivots)


def cardinality(span: CodeSpan) -> int:
    """码的元素个数 Π q^{nu - v}"""
    return span.spec.q ** cardinality_exponent(span)


def codes_equal(a: CodeSpan, b: CodeSpan) -> bool:
    """两个码是否相等（比较规范回声形）"""
    if a.spec != b.spec:
        raise SpecMismatch(f"codes over {a.spec} and {b.spec}")
    if a.dims != b.dims:
        raise ShapeMismatch(f"code dims {a.dims} and {b.dims} differ")
    b = b.reorder(a.order)
    if a.pivots != b.pivots:
        return False
    return all(np.array_equal(x, y) for x, y in zip(a.vectors, b.vectors))


def colon_ideal(span: CodeSpan, v: int) -> CodeSpan:
    """商理想 (C : γ^v) = {f : γ^v f ∈ C}

    在 2N 列上对 (γ^v e_i, e_i) 与 (c, 0) 求回声形，前一块更重要；
    主元落在后一块的行即为商理想的回声形。
    """
    spec = span.spec
    n = span.length
    echelon = _Echelon(spec, 2 * n)
    gamma_v = spec.gamma_power(v)
    for r in range(n):
        vec = echelon.zeros()
        spec.array_set(vec, n + r, gamma_v)
        spec.array_set(vec, r, spec.one())
        echelon.add(vec)
    for row in span.vectors:
        vec = echelon.zeros()
        vec[n:] = row
        echelon.add(vec)
    echelon.finish()
    rows = {col: (vec[:n], pv) for col, (vec, pv) in echelon.rows.items() if col < n}
    logger.debug(f"商理想 (C : g^{v}) 含 {len(rows)} 个主元行")
    return _span_from_echelon(spec, span.dims, span.order, rows)


def _monic_part(span: CodeSpan, vec: np.ndarray, v: int, degree: int) -> Poly:
    """拐角 (v, degree) 处的首一多项式 q，满足 γ^v q ∈ C"""
    spec = span.spec
    raws = spec.array_raws(vec)
    if all(spec.val(c) >= v for c in raws):
        q_raws = [spec.split(c, v)[0] for c in raws]
    else:
        colon = colon_ideal(span, v)
        monic = [
            (exponent[0], vec)
            for (exponent, pv), vec in zip(colon.pivots, colon.vectors)
            if pv == 0
        ]
        if not monic or monic[0][0] != degree:
            raise VerificationFailure(
                f"colon ideal (C : g^{v}) has no monic element of degree {degree}"
            )
        q_raws = spec.array_raws(monic[0][1])
    q_raws = [spec.truncate(c, spec.nu - v) for c in q_raws]
    return Poly.from_raws(spec, q_raws)


def canonical_generators(span: CodeSpan) -> CanonicalGenSet:
    """一维码的阶梯生成元 γ^{i_0} q_0, ..., γ^{i_r} q_r

    按次数升序扫描回声形，保留赋值严格小于此前所有行的拐角行。
    零码返回空集。

    Raises:
        ShapeMismatch: 码不是一维的
    """
    if span.k != 1:
        raise ShapeMismatch(f"canonical generators need a univariate code, got dims {span.dims}")
    m = span.dims[0]
    entries = []
    best = span.spec.nu
    for (exponent, v), vec in zip(span.pivots, span.vectors):
        if v >= best:
            continue
        best = v
        entries.append(CanonicalEntry(v, _monic_part(span, vec, v, exponent[0])))
    logger.debug(f"阶梯形式: {[(e.gamma_exponent, e.degree) for e in entries]}")
    return CanonicalGenSet(span.spec, m, tuple(entries))


def span_of_canonical(gen_set: CanonicalGenSet) -> CodeSpan:
    """由阶梯生成元重建一维码"""
    return span_from_generators(gen_set.spec, (gen_set.m,), gen_set.generators())
