"""
chain-codes - 有限链环上的循环码与多维循环码

主要组件：
- algebra: 链环、多项式与文本格式
- codes: 一维阶梯生成元和多维生成元构造
- oracle: 暴力枚举证书
- cli: 命令行工具
- utils: 日志和配置
"""

__version__ = "0.1.0"

from . import utils
from . import algebra
from . import codes
from . import oracle
from . import cli

__all__ = [
    # 版本
    "__version__",
    # 子模块
    "algebra",
    "codes",
    "oracle",
    "cli",
    "utils",
]
