"""chain-codes 类型定义

本模块定义了 chain-codes 的基础枚举类型：链环族、单项式序、生成方法、
输出格式以及命令行退出码。字符串枚举通过 value 序列化。
"""

from enum import Enum, IntEnum


class RingFamily(Enum):
    """链环族枚举

    支持的两类有限链环。
    """

    INTEGER_MODULAR = "integer-modular"  # Z_{p^nu}, gamma = p
    GAMMA_EXTENSION = "gamma-extension"  # F_{p^r}[gamma]/(gamma^nu)


class MonomialOrder(Enum):
    """单项式序枚举

    决定回声形中"首项"的位置。
    """

    # 先比总次数，再按指数元组字典序
    GRADED = "graded"
    # 末变量优先的字典序，用于按 y 分层读取 I_j
    LAST_VARIABLE = "last-variable"


class GenerationMethod(Enum):
    """生成方法枚举

    报告中记录实际使用的构造方法。
    """

    METHOD1 = "method1"
    METHOD2 = "method2"
    HYBRID = "hybrid"


class MethodChoice(Enum):
    """方法选择枚举

    命令行 --method 的取值。
    """

    AUTO = "auto"
    METHOD1 = "method1"
    METHOD2 = "method2"


class OutputFormat(Enum):
    """输出格式枚举"""

    TEXT = "text"
    JSON = "json"


class LevelKind(Enum):
    """层级数据类型枚举"""

    IDEAL = "ideal"  # Method 1 的 I_j
    COMPONENT = "component"  # Method 2 的 C_j
    CANONICAL = "canonical"  # 一维阶梯形式


class ExitCode(IntEnum):
    """命令行退出码"""

    SUCCESS = 0
    PARSE_ERROR = 2
    PRECONDITION = 3
    VERIFICATION_FAILURE = 4
    BUDGET_EXCEEDED = 5
