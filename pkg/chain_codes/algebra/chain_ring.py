"""chain-codes 有限链环算术

本模块实现两类有限链环上的精确算术：

- Z_{p^nu}，γ = p，元素表示为 [0, p^nu) 中的整数；
- F_{p^r}[γ]/(γ^nu)，元素表示为 nu 个剩余域系数组成的元组（下标 i 为 γ^i 的系数），
  剩余域元素采用 galois 的整数表示（幂基系数的 p 进制展开）。

剩余域 F_q 由 galois 构造，模多项式取字典序最小的 r 次首一不可约多项式。
为了让回声形约化在纯 Python/numpy 中足够快，GammaExtension 的剩余域加法、乘法、
取负和求逆预先制成查找表。

除标量运算外，RingSpec 还提供"环数组"运算：Z 族使用形状为 S 的 int64 数组，
Gamma 族使用形状为 S + (nu,) 的 int64 数组（最后一维是 γ 进制数字）。
多项式和回声形都建立在这一层之上。
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from .exceptions import (
    NotAUnit,
    NotSimpleRoot,
    OrderNotCompatible,
    SpecMismatch,
    ValidationException,
    VerificationFailure,
)
from .types import RingFamily
from ..utils.logger import get_logger

logger = get_logger("chain_codes.algebra.chain_ring")

# 查找表上限：q * q 个 int64
MAX_TABLE_FIELD = 1024
# Z 族模数上限，保证 int64 乘积不溢出
MAX_MODULUS = 2**31

Raw = Union[int, Tuple[int, ...]]


@dataclass(frozen=True)
class _FieldTables:
    """剩余域查找表"""

    add: np.ndarray
    neg: np.ndarray
    mul: np.ndarray
    inv: np.ndarray
    add_list: List[List[int]]
    neg_list: List[int]
    mul_list: List[List[int]]
    inv_list: List[int]


def minimal_irreducible(p: int, r: int) -> Tuple[int, ...]:
    """返回 F_p 上字典序最小的 r 次首一不可约多项式（降幂系数）"""
    poly = galois.irreducible_poly(p, r, method="min")
    return tuple(int(c) for c in poly.coeffs)


@dataclass(frozen=True)
class RingSpec:
    """有限链环规格

    Args:
        family: 链环族
        p: 剩余域特征
        r: 剩余域扩张次数（Z 族固定为 1）
        nu: γ 的幂零指数
        modulus_poly: 剩余域模多项式（降幂系数），Gamma 族缺省时自动选取
    """

    family: RingFamily
    p: int
    r: int = 1
    nu: int = 1
    modulus_poly: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not isinstance(self.p, int) or not galois.is_prime(self.p):
            raise ValidationException(f"p must be prime, got {self.p}")
        if self.r < 1 or self.nu < 1:
            raise ValidationException(
                f"r and nu must be positive, got r={self.r}, nu={self.nu}"
            )
        if self.family is RingFamily.INTEGER_MODULAR:
            if self.r != 1:
                raise ValidationException("Z/p^nu requires r = 1")
            if self.modulus_poly is not None:
                raise ValidationException("Z/p^nu has no modulus polynomial")
            if self.p**self.nu >= MAX_MODULUS:
                raise ValidationException(
                    f"p^nu = {self.p ** self.nu} exceeds {MAX_MODULUS}"
                )
        else:
            if self.p**self.r > MAX_TABLE_FIELD:
                raise ValidationException(
                    f"residue field of size {self.p ** self.r} exceeds {MAX_TABLE_FIELD}"
                )
            if self.modulus_poly is None:
                object.__setattr__(
                    self, "modulus_poly", minimal_irreducible(self.p, self.r)
                )
            elif len(self.modulus_poly) != self.r + 1 or self.modulus_poly[0] != 1:
                raise ValidationException(
                    f"modulus polynomial must be monic of degree {self.r}"
                )

    # === 构造 ===

    @classmethod
    def integer_modular(cls, p: int, nu: int) -> "RingSpec":
        """构造 Z_{p^nu}"""
        return cls(RingFamily.INTEGER_MODULAR, p, 1, nu)

    @classmethod
    def gamma_extension(cls, p: int, r: int, nu: int) -> "RingSpec":
        """构造 F_{p^r}[γ]/(γ^nu)"""
        return cls(RingFamily.GAMMA_EXTENSION, p, r, nu)

    # === 基本属性 ===

    @property
    def is_gamma(self) -> bool:
        return self.family is RingFamily.GAMMA_EXTENSION

    @property
    def q(self) -> int:
        """剩余域大小"""
        return self.p**self.r

    @property
    def size(self) -> int:
        """环的元素个数 q^nu"""
        return self.q**self.nu

    @property
    def modulus(self) -> int:
        """Z 族的模数 p^nu"""
        return self.p**self.nu

    @cached_property
    def field(self) -> type:
        """剩余域 F_q（galois FieldArray 类）"""
        if self.r == 1:
            return galois.GF(self.p)
        irreducible = galois.Poly(list(self.modulus_poly), field=galois.GF(self.p))
        return galois.GF(self.q, irreducible_poly=irreducible)

    @cached_property
    def _tables(self) -> _FieldTables:
        gf = self.field
        elems = gf.elements
        add = np.asarray((elems[:, None] + elems[None, :]).view(np.ndarray), dtype=np.int64)
        mul = np.asarray((elems[:, None] * elems[None, :]).view(np.ndarray), dtype=np.int64)
        neg = np.asarray((-elems).view(np.ndarray), dtype=np.int64)
        inv = np.zeros(self.q, dtype=np.int64)
        inv[1:] = np.asarray(np.reciprocal(elems[1:]).view(np.ndarray), dtype=np.int64)
        logger.debug(f"剩余域 F_{self.q} 查找表已生成")
        return _FieldTables(
            add=add,
            neg=neg,
            mul=mul,
            inv=inv,
            add_list=add.tolist(),
            neg_list=neg.tolist(),
            mul_list=mul.tolist(),
            inv_list=inv.tolist(),
        )

    def __str__(self) -> str:
        if not self.is_gamma:
            return f"Z/{self.modulus}"
        power = "g" if self.nu == 1 else f"g^{self.nu}"
        return f"F{self.q}[g]/({power})"

    # === 元素 ===

    def normalize(self, value: Union[int, Sequence[int], "RingElement"]) -> Raw:
        """把整数、系数序列或 RingElement 化为规范表示"""
        if isinstance(value, RingElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value.value
        if isinstance(value, (int, np.integer)):
            return self.from_int(int(value))
        digits = [int(d) for d in value]
        if not self.is_gamma or len(digits) > self.nu:
            raise ValidationException(f"cannot interpret {value!r} in {self}")
        if any(d < 0 or d >= self.q for d in digits):
            raise ValidationException(f"digits of {value!r} are outside F_{self.q}")
        return tuple(digits) + (0,) * (self.nu - len(digits))

    def element(self, value: Union[int, Sequence[int], "RingElement"]) -> "RingElement":
        return RingElement(self, self.normalize(value))

    def from_int(self, k: int) -> Raw:
        """整数 k 在 Z -> R 下的像"""
        if not self.is_gamma:
            return k % self.modulus
        return (k % self.p,) + (0,) * (self.nu - 1)

    def zero(self) -> Raw:
        return 0 if not self.is_gamma else (0,) * self.nu

    def one(self) -> Raw:
        return self.from_int(1)

    def gamma_power(self, i: int) -> Raw:
        """γ^i，i >= nu 时为 0"""
        if i >= self.nu:
            return self.zero()
        if not self.is_gamma:
            return self.p**i
        digits = [0] * self.nu
        digits[i] = 1
        return tuple(digits)

    def embed_field(self, w: int) -> Raw:
        """剩余域元素的整数提升（Gamma 族为子环嵌入）"""
        if not self.is_gamma:
            return int(w) % self.modulus
        return (int(w),) + (0,) * (self.nu - 1)

    def elements(self) -> Iterator[Raw]:
        """按固定顺序枚举全部元素：整数按值，Gamma 族按系数元组字典序"""
        if not self.is_gamma:
            yield from range(self.modulus)
        else:
            yield from itertools.product(range(self.q), repeat=self.nu)

    def additive_basis(self) -> List[Raw]:
        """加法群的一组生成元（Z 族为 1，Gamma 族为 γ^i α^k）"""
        if not self.is_gamma:
            return [1]
        basis = []
        for i in range(self.nu):
            for k in range(self.r):
                digits = [0] * self.nu
                digits[i] = self.p**k
                basis.append(tuple(digits))
        return basis

    # === 标量运算（规范表示） ===

    def add(self, a: Raw, b: Raw) -> Raw:
        if not self.is_gamma:
            return (a + b) % self.modulus
        table = self._tables.add_list
        return tuple(table[x][y] for x, y in zip(a, b))

    def neg(self, a: Raw) -> Raw:
        if not self.is_gamma:
            return (-a) % self.modulus
        table = self._tables.neg_list
        return tuple(table[x] for x in a)

    def sub(self, a: Raw, b: Raw) -> Raw:
        return self.add(a, self.neg(b))

    def mul(self, a: Raw, b: Raw) -> Raw:
        if not self.is_gamma:
            return (a * b) % self.modulus
        tables = self._tables
        out = [0] * self.nu
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = tables.mul_list[ai]
            for j in range(self.nu - i):
                bj = b[j]
                if bj:
                    out[i + j] = tables.add_list[out[i + j]][row[bj]]
        return tuple(out)

    def is_zero(self, a: Raw) -> bool:
        return a == self.zero()

    def residue_value(self, a: Raw) -> int:
        """剩余（γ 进制零次部分）的整数表示"""
        return a % self.p if not self.is_gamma else a[0]

    def is_unit(self, a: Raw) -> bool:
        return self.residue_value(a) != 0

    def inv(self, a: Raw) -> Raw:
        """单位元的逆

        Raises:
            NotAUnit: 剩余为零时
        """
        if not self.is_unit(a):
            raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
        if not self.is_gamma:
            return pow(a, -1, self.modulus)
        tables = self._tables
        inv0 = tables.inv_list[a[0]]
        b = [inv0] + [0] * (self.nu - 1)
        # a * b = 1 的逐层解：b_k = -a_0^{-1} * sum_{i=1..k} a_i b_{k-i}
        for k in range(1, self.nu):
            acc = 0
            for i in range(1, k + 1):
                acc = tables.add_list[acc][tables.mul_list[a[i]][b[k - i]]]
            b[k] = tables.mul_list[tables.neg_list[acc]][inv0]
        return tuple(b)

    def power(self, a: Raw, e: int) -> Raw:
        if e < 0:
            return self.power(self.inv(a), -e)
        if not self.is_gamma:
            return pow(a, e, self.modulus)
        result, base = self.one(), a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def val(self, a: Raw) -> int:
        """γ 进赋值，val(0) = nu"""
        if not self.is_gamma:
            if a == 0:
                return self.nu
            v = 0
            while a % self.p == 0:
                a //= self.p
                v += 1
            return v
        for i, d in enumerate(a):
            if d:
                return i
        return self.nu

    def unit_part(self, a: Raw) -> Tuple[int, Raw]:
        """分解 a = γ^v * u，u 为单位元（a = 0 时返回 (nu, 1)）"""
        v = self.val(a)
        if v == self.nu:
            return v, self.one()
        if not self.is_gamma:
            return v, a // self.p**v
        return v, tuple(a[v:]) + (0,) * v

    def split(self, c: Raw, v: int) -> Tuple[Raw, Raw]:
        """带余除法 c = t * γ^v + rem，rem 为模 γ^v 的规范代表元"""
        if not self.is_gamma:
            pv = self.p**v
            rem = c % pv
            return (c - rem) // pv, rem
        rem = tuple(c[:v]) + (0,) * (self.nu - v)
        t = tuple(c[v:]) + (0,) * v
        return t, rem

    def truncate(self, a: Raw, k: int) -> Raw:
        """模 γ^k 的规范代表元"""
        return self.split(a, k)[1]

    def format(self, a: Raw) -> str:
        from .parsing import format_element

        return format_element(self, a)

    # === 环数组运算 ===

    def array_zeros(self, shape: Tuple[int, ...]) -> np.ndarray:
        if not self.is_gamma:
            return np.zeros(shape, dtype=np.int64)
        return np.zeros(tuple(shape) + (self.nu,), dtype=np.int64)

    def array_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if not self.is_gamma:
            return (a + b) % self.modulus
        return self._tables.add[a, b]

    def array_neg(self, a: np.ndarray) -> np.ndarray:
        if not self.is_gamma:
            return (-a) % self.modulus
        return self._tables.neg[a]

    def array_sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if not self.is_gamma:
            return (a - b) % self.modulus
        return self._tables.add[a, self._tables.neg[b]]

    def array_scale(self, t: Raw, a: np.ndarray) -> np.ndarray:
        """标量 t 乘以环数组"""
        if not self.is_gamma:
            return (t * a) % self.modulus
        tables = self._tables
        out = np.zeros_like(a)
        for i, ti in enumerate(t):
            if ti == 0:
                continue
            prod = tables.mul[ti][a[..., : self.nu - i]]
            out[..., i:] = tables.add[out[..., i:], prod]
        return out

    def array_axpy(self, a: np.ndarray, t: Raw, b: np.ndarray) -> np.ndarray:
        """a - t * b"""
        return self.array_sub(a, self.array_scale(t, b))

    def array_mask(self, a: np.ndarray) -> np.ndarray:
        """非零元素的布尔掩码"""
        if not self.is_gamma:
            return a != 0
        return a.any(axis=-1)

    def array_get(self, a: np.ndarray, index) -> Raw:
        if not self.is_gamma:
            return int(a[index])
        return tuple(int(d) for d in a[index])

    def array_set(self, a: np.ndarray, index, value: Raw) -> None:
        a[index] = value

    def array_from_raws(self, raws: Sequence[Raw], shape: Tuple[int, ...]) -> np.ndarray:
        data = np.array(list(raws), dtype=np.int64)
        return data.reshape(self.array_shape_with_digits(shape))

    def array_raws(self, a: np.ndarray) -> List[Raw]:
        """按 C 序展开为规范表示列表"""
        if not self.is_gamma:
            return [int(x) for x in a.reshape(-1)]
        return [tuple(int(d) for d in row) for row in a.reshape(-1, self.nu)]

    def array_shape_with_digits(self, shape: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(shape) + ((self.nu,) if self.is_gamma else ())


@dataclass(frozen=True)
class RingElement:
    """链环元素

    value 总是规范表示。支持 + - * ** 和一元负号，可与 int 混合运算。
    """

    spec: RingSpec
    value: Raw

    def _coerce(self, other) -> Raw:
        if isinstance(other, RingElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"cannot combine elements of {self.spec} and {other.spec}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.spec, self.spec.sub(b, self.value))

    def __neg__(self):
        return RingElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return RingElement(self.spec, self.spec.power(self.value, e))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.spec.is_unit(self.value)

    def inverse(self) -> "RingElement":
        return RingElement(self.spec, self.spec.inv(self.value))

    def valuation(self) -> int:
        return self.spec.val(self.value)

    def residue(self):
        return self.spec.field(self.spec.residue_value(self.value))

    def __str__(self) -> str:
        return self.spec.format(self.value)


def _check_same(a: RingElement, b: RingElement) -> None:
    if a.spec != b.spec:
        raise SpecMismatch(f"elements of {a.spec} and {b.spec} cannot be combined")


def add(a: RingElement, b: RingElement) -> RingElement:
    """精确加法"""
    _check_same(a, b)
    return a + b


def mul(a: RingElement, b: RingElement) -> RingElement:
    """精确乘法，γ^{>=nu} 项自动消失"""
    _check_same(a, b)
    return a * b


def inverse(a: RingElement) -> RingElement:
    """单位元求逆

    Raises:
        NotAUnit: a 的剩余为零时
    """
    return a.inverse()


def valuation(a: RingElement) -> int:
    """γ 进赋值，valuation(0) = nu"""
    return a.valuation()


def residue(a: RingElement):
    """剩余映射 R -> F_q，返回 galois 域元素"""
    return a.residue()


def _has_order(zeta: RingElement, n: int) -> bool:
    if not (zeta**n - 1).is_zero():
        return False
    if n == 1:
        return True
    primes, _ = galois.factors(n)
    return all(not (zeta ** (n // ell) - 1).is_zero() for ell in primes)


def _smallest_field_root(spec: RingSpec, n: int) -> int:
    gf = spec.field
    for w in range(1, spec.q):
        if int(gf(w).multiplicative_order()) == n:
            return w
    raise OrderNotCompatible(f"F_{spec.q} has no element of order {n}")


def hensel_lift_root(spec: RingSpec, n: int, omega) -> RingElement:
    """把剩余域中 x^n - 1 的单根提升到链环

    Newton 迭代 ζ <- ζ - (ζ^n - 1) * (n ζ^{n-1})^{-1}，每步至少使精度翻倍。

    Args:
        spec: 链环规格
        n: 单位根阶
        omega: 剩余域元素（整数表示或 galois 元素）

    Returns:
        唯一的 ζ，满足 residue(ζ) = omega 且 ζ^n = 1

    Raises:
        NotSimpleRoot: omega 不是 x^n - 1 的单根时
    """
    w = int(omega)
    gf = spec.field
    if w == 0 or gf(w) ** n != gf(1):
        raise NotSimpleRoot(f"{w} is not a root of x^{n} - 1 over F_{spec.q}")
    if n % spec.p == 0:
        raise NotSimpleRoot(f"n={n} vanishes in F_{spec.q}, root {w} is not simple")

    zeta = spec.element(spec.embed_field(w))
    for step in range(spec.nu + 1):
        defect = zeta**n - 1
        if defect.is_zero():
            break
        slope = spec.element(n) * zeta ** (n - 1)
        zeta = zeta - defect * slope.inverse()
        logger.debug(f"Newton 第 {step + 1} 步: ζ = {zeta}")
    if not (zeta**n - 1).is_zero():
        raise VerificationFailure(f"Newton lifting of {w} did not converge in {spec}")
    return zeta


def find_primitive_root(spec: RingSpec, n: int) -> RingElement:
    """求链环中的 n 次本原单位根

    先在剩余域中按整数表示顺序找最小的 n 阶元 ω，再提升：
    Gamma 族直接嵌入；Z 族取 Teichmüller 幂 a^{p^{nu-1}}，校验阶，失败时回退到 Newton 提升。

    Raises:
        OrderNotCompatible: n 不整除 q - 1 时
    """
    if n < 1:
        raise ValidationException(f"order must be positive, got {n}")
    if (spec.q - 1) % n:
        raise OrderNotCompatible(f"n={n} does not divide q-1={spec.q - 1} for {spec}")
    if n == 1:
        return spec.element(1)

    omega = _smallest_field_root(spec, n)
    if spec.is_gamma:
        zeta = spec.element(spec.embed_field(omega))
    else:
        zeta = spec.element(pow(omega, spec.p ** (spec.nu - 1), spec.modulus))
        if not _has_order(zeta, n):
            logger.debug(f"Teichmüller 幂校验失败，改用 Newton 提升 (ω={omega})")
            zeta = hensel_lift_root(spec, n, omega)

    if not _has_order(zeta, n):
        raise VerificationFailure(f"lifted root {zeta} does not have order {n} in {spec}")
    logger.debug(f"{spec} 中的 {n} 次本原单位根: ζ = {zeta} (ω = {omega})")
    return zeta
