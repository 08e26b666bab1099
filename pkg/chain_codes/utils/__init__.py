"""
chain-codes 通用工具模块
"""

from .logger import configure_logging, get_logger
from .config import CodesConfig, get_config, set_config, reset_config

__all__ = [
    # 日志
    "configure_logging",
    "get_logger",
    # 配置
    "CodesConfig",
    "get_config",
    "set_config",
    "reset_config",
]
