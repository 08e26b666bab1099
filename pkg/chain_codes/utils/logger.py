"""chain-codes 日志系统

本模块提供统一的日志接口，支持富文本日志（rich）和标准日志。
控制台日志写到 stderr，保证 stdout 上的报告（特别是 JSON）不被污染。
只有包根日志器 "chain_codes" 挂载处理器，子日志器通过传播继承配置。
"""

import logging
import sys
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "chain_codes"
DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_configured = False


def configure_logging(
    name: Optional[str] = ROOT_LOGGER,
    level: Optional[str] = "warning",
    log_file: Optional[str] = None,
    enable_rich: Optional[bool] = True,
) -> logging.Logger:
    """设置日志器

    创建并配置一个日志器实例。支持控制台输出和文件输出。

    Args:
        name: 日志器名称
        level: 日志级别
        log_file: 日志文件路径，为空时不写文件
        enable_rich: 是否启用 rich 日志

    Returns:
        配置好的日志器
    """
    global _configured

    level = (level or "WARNING").upper()
    enable_rich = enable_rich if enable_rich is not None else True

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # 清除现有处理器
    logger.handlers.clear()

    if enable_rich:
        rich_handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            show_time=True,
            show_level=True,
            show_path=True,
        )
        rich_handler.setLevel(level)
        logger.addHandler(rich_handler)
    else:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter(DEFAULT_FORMAT))
        logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(DEFAULT_FORMAT))
        logger.addHandler(file_handler)

    if name == ROOT_LOGGER:
        _configured = True
    return logger


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """获取日志器

    获取指定名称的日志器。首次调用时按默认值配置包根日志器，
    之后子日志器直接继承根日志器的处理器。

    Args:
        name: 日志器名称，通常是模块路径

    Returns:
        日志器实例
    """
    if not _configured:
        configure_logging(ROOT_LOGGER)
    return logging.getLogger(name)
