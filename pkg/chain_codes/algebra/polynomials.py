"""chain-codes 多项式

本模块提供链环上的稠密精确多项式运算：

- Poly：一元稠密多项式，系数下标即次数，零多项式的次数为 -inf 哨兵；
- QuotPoly：Poly 在 R[x]/(x^m - 1) 中的剩余类；
- MultiPoly：R[x_1..x_k]/(x_1^{m_1} - 1, ...) 中的元素，系数存放在形状为 dims 的环数组中。

商环中乘以 x_i 就是沿第 i 轴的循环移位，因此乘法按非零项逐个 np.roll 累加。
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from .chain_ring import Raw, RingElement, RingSpec
from .exceptions import RootOrderViolation, ShapeMismatch, SpecMismatch

# 零多项式的次数
NEG_INFINITY = float("-inf")

Scalar = Union[int, RingElement]


def _coerce_scalar(spec: RingSpec, c: Scalar) -> Raw:
    return spec.normalize(c)


@dataclass(frozen=True)
class Poly:
    """链环上的一元稠密多项式"""

    spec: RingSpec
    coeffs: Tuple[RingElement, ...] = ()

    def __post_init__(self):
        coeffs = [self.spec.element(c) for c in self.coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_raws(cls, spec: RingSpec, raws: Sequence[Raw]) -> "Poly":
        return cls(spec, tuple(RingElement(spec, r) for r in raws))

    @classmethod
    def monomial(cls, spec: RingSpec, degree: int, coeff: Scalar = 1) -> "Poly":
        return cls(spec, tuple([0] * degree + [coeff]))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> RingElement:
        return self.coeffs[-1] if self.coeffs else self.spec.element(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.element(1)

    def coefficient(self, i: int) -> RingElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.spec.element(0)

    def raws(self) -> List[Raw]:
        return [c.value for c in self.coeffs]

    def _check(self, other: "Poly") -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"polynomials over {self.spec} and {other.spec}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.spec, tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    def __neg__(self) -> "Poly":
        return Poly(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            c = self.spec.element(other)
            return Poly(self.spec, tuple(a * c for a in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.spec)
        out = [self.spec.element(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.spec, tuple(out))

    __rmul__ = __mul__

    def __call__(self, x: Scalar) -> RingElement:
        """Horner 求值"""
        x = self.spec.element(x)
        acc = self.spec.element(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        from .parsing import format_poly

        return format_poly(self)


@dataclass(frozen=True)
class QuotPoly:
    """R[x]/(x^m - 1) 中的剩余类，构造时按 x^m = 1 折叠"""

    base: Poly
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ShapeMismatch(f"quotient modulus must be positive, got {self.m}")
        if self.base.degree >= self.m:
            folded = [self.base.spec.element(0)] * self.m
            for i, c in enumerate(self.base.coeffs):
                folded[i % self.m] = folded[i % self.m] + c
            object.__setattr__(self, "base", Poly(self.base.spec, tuple(folded)))

    @property
    def spec(self) -> RingSpec:
        return self.base.spec

    @classmethod
    def from_multi(cls, f: "MultiPoly") -> "QuotPoly":
        if f.k != 1:
            raise ShapeMismatch(f"expected a univariate class, got dims {f.dims}")
        return cls(Poly.from_raws(f.spec, f.spec.array_raws(f.data)), f.dims[0])

    def to_multi(self) -> "MultiPoly":
        return MultiPoly.from_poly(self.base, (self.m,))

    def is_zero(self) -> bool:
        return self.base.is_zero()

    def _check(self, other: "QuotPoly") -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"classes over {self.spec} and {other.spec}")
        if other.m != self.m:
            raise ShapeMismatch(f"moduli x^{self.m}-1 and x^{other.m}-1 differ")

    def __add__(self, other: "QuotPoly") -> "QuotPoly":
        self._check(other)
        return QuotPoly(self.base + other.base, self.m)

    def __sub__(self, other: "QuotPoly") -> "QuotPoly":
        self._check(other)
        return QuotPoly(self.base - other.base, self.m)

    def __neg__(self) -> "QuotPoly":
        return QuotPoly(-self.base, self.m)

    def __mul__(self, other: Union["QuotPoly", Scalar]) -> "QuotPoly":
        if isinstance(other, QuotPoly):
            return poly_mul_mod(self, other)
        return QuotPoly(self.base * other, self.m)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.base)


class MultiPoly:
    """R[x_1..x_k]/(x_i^{m_i} - 1) 中的元素

    系数存放在只读环数组 data 中，data[e_1, ..., e_k] 是 x^e 的系数。
    """

    __slots__ = ("spec", "dims", "data")

    def __init__(self, spec: RingSpec, dims: Sequence[int], data: Optional[np.ndarray] = None):
        self.spec = spec
        self.dims = tuple(int(m) for m in dims)
        if any(m < 1 for m in self.dims):
            raise ShapeMismatch(f"dims must be positive, got {self.dims}")
        if data is None:
            data = spec.array_zeros(self.dims)
        elif tuple(data.shape) != spec.array_shape_with_digits(self.dims):
            raise ShapeMismatch(
                f"coefficient array of shape {data.shape} does not match dims {self.dims}"
            )
        data = np.array(data, dtype=np.int64, copy=True)
        data.setflags(write=False)
        self.data = data

    # === 构造 ===

    @classmethod
    def zero(cls, spec: RingSpec, dims: Sequence[int]) -> "MultiPoly":
        return cls(spec, dims)

    @classmethod
    def constant(cls, spec: RingSpec, dims: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls.monomial(spec, dims, (0,) * len(tuple(dims)), c)

    @classmethod
    def one(cls, spec: RingSpec, dims: Sequence[int]) -> "MultiPoly":
        return cls.constant(spec, dims, 1)

    @classmethod
    def monomial(
        cls, spec: RingSpec, dims: Sequence[int], exponent: Sequence[int], coeff: Scalar = 1
    ) -> "MultiPoly":
        dims = tuple(dims)
        data = spec.array_zeros(dims)
        index = tuple(int(e) % m for e, m in zip(exponent, dims))
        spec.array_set(data, index, _coerce_scalar(spec, coeff))
        return cls(spec, dims, data)

    @classmethod
    def from_terms(
        cls, spec: RingSpec, dims: Sequence[int], terms: Dict[Tuple[int, ...], Scalar]
    ) -> "MultiPoly":
        """由 {指数: 系数} 构造，指数按 x_i^{m_i} = 1 折叠"""
        result = cls.zero(spec, dims)
        for exponent, coeff in terms.items():
            result = result + cls.monomial(spec, dims, exponent, coeff)
        return result

    @classmethod
    def from_poly(
        cls, poly: Union[Poly, QuotPoly], dims: Sequence[int], axis: int = 0
    ) -> "MultiPoly":
        """把一元多项式嵌入为只依赖 x_axis 的多元多项式"""
        if isinstance(poly, QuotPoly):
            poly = poly.base
        dims = tuple(dims)
        spec = poly.spec
        data = spec.array_zeros(dims)
        m = dims[axis]
        for i, c in enumerate(poly.coeffs):
            if c.is_zero():
                continue
            index = [0] * len(dims)
            index[axis] = i % m
            index = tuple(index)
            spec.array_set(data, index, spec.add(spec.array_get(data, index), c.value))
        return cls(spec, dims, data)

    # === 基本属性 ===

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def is_zero(self) -> bool:
        return not bool(self.data.any())

    def coeff(self, exponent: Sequence[int]) -> RingElement:
        return RingElement(self.spec, self.spec.array_get(self.data, tuple(exponent)))

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], RingElement]]:
        """按 C 序给出非零项 (指数, 系数)"""
        if self.k == 0:
            if not self.is_zero():
                yield (), self.coeff(())
            return
        mask = self.spec.array_mask(self.data)
        for index in zip(*np.nonzero(mask)):
            exponent = tuple(int(i) for i in index)
            yield exponent, self.coeff(exponent)

    def nonzero_count(self) -> int:
        return int(self.spec.array_mask(self.data).sum())

    def degree_in(self, axis: int) -> Union[int, float]:
        """x_axis 的最高次数，零多项式为 -inf"""
        mask = self.spec.array_mask(self.data)
        other = tuple(a for a in range(self.k) if a != axis)
        present = mask.any(axis=other) if other else mask
        hits = np.flatnonzero(present)
        return int(hits[-1]) if hits.size else NEG_INFINITY

    def variables(self) -> Tuple[int, ...]:
        """实际出现（取非零指数）的变量下标"""
        mask = self.spec.array_mask(self.data)
        used = []
        for axis in range(self.k):
            other = tuple(a for a in range(self.k) if a != axis)
            present = mask.any(axis=other) if other else mask
            if present[1:].any():
                used.append(axis)
        return tuple(used)

    def slice_axis(self, axis: int, exponent: int) -> "MultiPoly":
        """x_axis^exponent 的系数，维数减一"""
        dims = self.dims[:axis] + self.dims[axis + 1 :]
        return MultiPoly(self.spec, dims, np.take(self.data, exponent, axis=axis))

    # === 运算 ===

    def _check(self, other: "MultiPoly") -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"polynomials over {self.spec} and {other.spec}")
        if other.dims != self.dims:
            raise ShapeMismatch(f"dims {self.dims} and {other.dims} differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.dims == other.dims
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.dims, self.data.tobytes()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(self.spec, self.dims, self.spec.array_add(self.data, other.data))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(self.spec, self.dims, self.spec.array_sub(self.data, other.data))

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.spec, self.dims, self.spec.array_neg(self.data))

    def __mul__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return multi_mul_mod(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MultiPoly":
        raw = _coerce_scalar(self.spec, c)
        return MultiPoly(self.spec, self.dims, self.spec.array_scale(raw, self.data))

    def shift(self, axis: int, amount: int = 1) -> "MultiPoly":
        """乘以 x_axis^amount"""
        return MultiPoly(self.spec, self.dims, np.roll(self.data, amount, axis=axis))

    def __pow__(self, e: int) -> "MultiPoly":
        result = MultiPoly.one(self.spec, self.dims)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"MultiPoly({self.spec}, dims={self.dims}, {self})"

    def __str__(self) -> str:
        from .parsing import format_poly

        return format_poly(self)


def poly_mul_mod(a: QuotPoly, b: QuotPoly) -> QuotPoly:
    """R[x]/(x^m - 1) 中的乘法

    Raises:
        ShapeMismatch: 模数不同
        SpecMismatch: 环不同
    """
    a._check(b)
    return QuotPoly.from_multi(multi_mul_mod(a.to_multi(), b.to_multi()))


def multi_mul_mod(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """多元商环中的乘法，每个变量独立按 x_i^{m_i} = 1 折叠"""
    a._check(b)
    spec = a.spec
    if a.k == 0:
        return MultiPoly(spec, (), spec.array_scale(a.coeff(()).value, b.data))
    if a.nonzero_count() > b.nonzero_count():
        a, b = b, a
    result = spec.array_zeros(a.dims)
    axes = tuple(range(a.k))
    for exponent, c in a.terms():
        rolled = np.roll(b.data, exponent, axis=axes)
        result = spec.array_add(result, spec.array_scale(c.value, rolled))
    return MultiPoly(spec, a.dims, result)


def evaluate_axis(f: MultiPoly, axis: int, value: Scalar) -> MultiPoly:
    """把 x_axis 替换为 value，返回少一个变量的多项式"""
    spec = f.spec
    raw = spec.normalize(value)
    dims = f.dims[:axis] + f.dims[axis + 1 :]
    result = spec.array_zeros(dims)
    power = spec.one()
    for e in range(f.dims[axis]):
        layer = np.take(f.data, e, axis=axis)
        result = spec.array_add(result, spec.array_scale(power, layer))
        power = spec.mul(power, raw)
    return MultiPoly(spec, dims, result)


def evaluate_y(f: MultiPoly, zeta_pow: Scalar) -> QuotPoly:
    """二元多项式在 y = zeta_pow 处求值，结果在 R[x]/(x^m - 1) 中

    Raises:
        RootOrderViolation: zeta_pow^n != 1 时
    """
    if f.k != 2:
        raise ShapeMismatch(f"evaluate_y expects dims (m, n), got {f.dims}")
    n = f.dims[1]
    c = f.spec.element(zeta_pow)
    if not (c**n - 1).is_zero():
        raise RootOrderViolation(f"{c}^{n} != 1 in {f.spec}")
    return QuotPoly.from_multi(evaluate_axis(f, 1, c))


def permute_axes(f: MultiPoly, order: Sequence[int]) -> MultiPoly:
    """按 order 重排变量：结果的第 i 个变量是原来的第 order[i] 个"""
    order = tuple(order)
    axes = order + ((f.k,) if f.spec.is_gamma else ())
    dims = tuple(f.dims[a] for a in order)
    return MultiPoly(f.spec, dims, np.transpose(f.data, axes))


def transpose(f: MultiPoly) -> MultiPoly:
    """交换二维码字的行与列：(i, j) -> (j, i)"""
    if f.k != 2:
        raise ShapeMismatch(f"transpose expects dims (m, n), got {f.dims}")
    return permute_axes(f, (1, 0))


def residue_poly(f: Union[Poly, QuotPoly]) -> galois.Poly:
    """逐系数取剩余，得到 F_q 上的 galois 多项式"""
    if isinstance(f, QuotPoly):
        f = f.base
    spec = f.spec
    coeffs = [spec.residue_value(c.value) for c in f.coeffs] or [0]
    return galois.Poly(coeffs, field=spec.field, order="asc")


def variable_names(k: int) -> Tuple[str, ...]:
    """k 元多项式的变量名：x / x, y / x1..xk"""
    if k == 1:
        return ("x",)
    if k == 2:
        return ("x", "y")
    return tuple(f"x{i + 1}" for i in range(k))
