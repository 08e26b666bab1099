"""chain-codes 异常定义

本模块定义了 chain-codes 的异常体系，为代数计算、文本解析、证书校验和
穷举预算等不同层面的错误提供明确的分类。命令行入口按异常类别映射退出码。
"""

from typing import Any, Optional

# 超过这个位数的整数只给出量级
EXACT_DIGITS = 64


def magnitude(count: int) -> str:
    """大整数的可读量级，位数过多时写成 ~2^k"""
    if count.bit_length() <= EXACT_DIGITS:
        return str(count)
    return f"~2^{count.bit_length() - 1}"


class ChainCodesException(Exception):
    """chain-codes 基础异常

    所有 chain-codes 相关异常的基类。
    """

    pass


class ValidationException(ChainCodesException):
    """数据验证错误

    当配置项、报告字典等输入不符合格式要求时抛出。
    """

    pass


class ParseException(ValidationException):
    """文本解析错误

    环规格或多项式文本不符合语法时抛出，携带出错的行号和列号（从 1 开始）。
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class PreconditionException(ChainCodesException):
    """前置条件错误

    所有"输入不满足运算前提"类错误的父类。
    """

    pass


class SpecMismatch(PreconditionException):
    """环不一致

    参与运算的两个元素或多项式属于不同的链环。
    """

    pass


class ShapeMismatch(PreconditionException):
    """形状不一致

    商环模数 m 或多维长度 (m_1, ..., m_k) 不一致。
    """

    pass


class NotAUnit(PreconditionException):
    """非单位元

    对剩余为零的元素（即属于 ⟨γ⟩ 的元素）求逆时抛出。
    """

    pass


class OrderNotCompatible(PreconditionException):
    """阶不相容

    请求的单位根阶 n 不整除 q - 1。
    """

    pass


class NotSimpleRoot(PreconditionException):
    """非单根

    剩余域中的元素不是 x^n - 1 的单根，Newton 提升无法进行。
    """

    pass


class RootOrderViolation(PreconditionException):
    """代入值不是 n 次单位根

    evaluate_y 的代入值不满足 c^n = 1。
    """

    pass


class VerificationException(ChainCodesException):
    """证书校验错误

    所有构造结果未通过校验的错误的父类。
    """

    pass


class WitnessNotFound(VerificationException):
    """找不到见证码字

    Method 1 中某层理想的生成元找不到对应码字。出现即为内部缺陷。
    """

    pass


class VerificationFailure(VerificationException):
    """校验失败

    张成相等、幂等元恒等式等证书不成立时抛出，可携带反例码字。
    """

    def __init__(self, message: str, counterexample: Optional[Any] = None):
        super().__init__(message)
        self.counterexample = counterexample


class BudgetExceeded(ChainCodesException):
    """超出穷举预算

    暴力枚举所需的候选码字数超过配置的预算时抛出，不做静默截断。
    """

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(
            f"{what} needs {magnitude(required)} candidate words, budget is {budget}"
        )
        self.required = required
        self.budget = budget
