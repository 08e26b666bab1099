"""chain-codes 循环码构造模块"""

from .reports import (
    CanonicalEntry,
    CanonicalGenSet,
    Generator,
    Level,
    GeneratorReport,
)
from .cyclic_core import (
    CodeSpan,
    span_from_generators,
    membership,
    cardinality,
    cardinality_exponent,
    codes_equal,
    colon_ideal,
    canonical_generators,
    span_of_canonical,
)
from .multidim import (
    IdempotentFamily,
    idempotents,
    verify_idempotents,
    verify_root_factorization,
    method1_ideals,
    method1_generators,
    method2_components,
    method2_generators,
    nd_generators,
    assemble_from_levels,
    assemble_from_components,
)

__all__ = [
    # 结果记录
    "CanonicalEntry",
    "CanonicalGenSet",
    "Generator",
    "Level",
    "GeneratorReport",
    # 回声形
    "CodeSpan",
    "span_from_generators",
    "membership",
    "cardinality",
    "cardinality_exponent",
    "codes_equal",
    "colon_ideal",
    "canonical_generators",
    "span_of_canonical",
    # 多维构造
    "IdempotentFamily",
    "idempotents",
    "verify_idempotents",
    "verify_root_factorization",
    "method1_ideals",
    "method1_generators",
    "method2_components",
    "method2_generators",
    "nd_generators",
    "assemble_from_levels",
    "assemble_from_components",
]
