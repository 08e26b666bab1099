"""chain-codes 暴力枚举校验模块"""

from .enumeration import (
    EnumeratedCode,
    enumerate_span,
    literal_Ij,
    literal_Cj,
)
from .certificates import (
    CheckResult,
    OracleCertificate,
    minimal_word,
    certify_generators,
)

__all__ = [
    # 枚举
    "EnumeratedCode",
    "enumerate_span",
    "literal_Ij",
    "literal_Cj",
    # 证书
    "CheckResult",
    "OracleCertificate",
    "minimal_word",
    "certify_generators",
]
