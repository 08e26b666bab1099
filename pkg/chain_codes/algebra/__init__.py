"""chain-codes 代数核心模块"""

from .exceptions import (
    ChainCodesException,
    ValidationException,
    ParseException,
    PreconditionException,
    SpecMismatch,
    ShapeMismatch,
    NotAUnit,
    OrderNotCompatible,
    NotSimpleRoot,
    RootOrderViolation,
    VerificationException,
    WitnessNotFound,
    VerificationFailure,
    BudgetExceeded,
)
from .types import (
    RingFamily,
    MonomialOrder,
    GenerationMethod,
    MethodChoice,
    OutputFormat,
    LevelKind,
    ExitCode,
)
from .chain_ring import (
    RingSpec,
    RingElement,
    add,
    mul,
    inverse,
    valuation,
    residue,
    find_primitive_root,
    hensel_lift_root,
)
from .polynomials import (
    NEG_INFINITY,
    Poly,
    QuotPoly,
    MultiPoly,
    poly_mul_mod,
    multi_mul_mod,
    evaluate_axis,
    evaluate_y,
    permute_axes,
    transpose,
    residue_poly,
    variable_names,
)
from .parsing import (
    parse_ring_spec,
    format_ring_spec,
    parse_dims,
    parse_poly,
    parse_poly_list,
    parse_element,
    read_generators,
    format_element,
    format_poly,
)

__all__ = [
    # 异常类
    "ChainCodesException",
    "ValidationException",
    "ParseException",
    "PreconditionException",
    "SpecMismatch",
    "ShapeMismatch",
    "NotAUnit",
    "OrderNotCompatible",
    "NotSimpleRoot",
    "RootOrderViolation",
    "VerificationException",
    "WitnessNotFound",
    "VerificationFailure",
    "BudgetExceeded",
    # 类型枚举
    "RingFamily",
    "MonomialOrder",
    "GenerationMethod",
    "MethodChoice",
    "OutputFormat",
    "LevelKind",
    "ExitCode",
    # 链环
    "RingSpec",
    "RingElement",
    "add",
    "mul",
    "inverse",
    "valuation",
    "residue",
    "find_primitive_root",
    "hensel_lift_root",
    # 多项式
    "NEG_INFINITY",
    "Poly",
    "QuotPoly",
    "MultiPoly",
    "poly_mul_mod",
    "multi_mul_mod",
    "evaluate_axis",
    "evaluate_y",
    "permute_axes",
    "transpose",
    "residue_poly",
    "variable_names",
    # 文本语法
    "parse_ring_spec",
    "format_ring_spec",
    "parse_dims",
    "parse_poly",
    "parse_poly_list",
    "parse_element",
    "read_generators",
    "format_element",
    "format_poly",
]
