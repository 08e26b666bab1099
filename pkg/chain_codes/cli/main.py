"""
chain-codes 命令行入口
"""

import argparse
import sys
from typing import List, Optional, Sequence

from rich.console import Console
from rich.markup import escape

from ..algebra.exceptions import (
    BudgetExceeded,
    ChainCodesException,
    ParseException,
    PreconditionException,
    ValidationException,
    VerificationException,
)
from ..algebra.types import ExitCode, OutputFormat
from ..utils.config import CodesConfig, set_config
from ..utils.logger import ROOT_LOGGER, configure_logging, get_logger
from .commands import CommandRegistry, create_default_registry

logger = get_logger("chain_codes.cli.main")


def _common_parser() -> argparse.ArgumentParser:
    """所有子命令共用的参数"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", default=None, help="TOML 配置文件")
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="输出格式",
    )
    parser.add_argument("--budget", type=int, default=None, help="暴力枚举预算")
    parser.add_argument(
        "--certify-budget", type=int, default=None, help="回声形证书的 Π m_i 上限"
    )
    parser.add_argument("--log-level", default=None, help="日志级别")
    return parser


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    """按注册表构建参数解析器"""
    parser = argparse.ArgumentParser(
        prog="chain-codes",
        description="有限链环上循环码与多维循环码的生成元",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for command in registry.list_commands():
        sub = subparsers.add_parser(
            command.name,
            aliases=command.aliases,
            parents=[common],
            help=command.description,
            description=command.description,
        )
        command.add_arguments(sub)
        sub.set_defaults(command=command.name)
    return parser


def load_config(options: argparse.Namespace) -> CodesConfig:
    """合并配置：命令行参数 > 环境变量 > 配置文件 > 默认值"""
    base = CodesConfig.from_file(options.config) if options.config else None
    config = CodesConfig.from_env(base)

    overrides = {
        "output_format": options.output_format,
        "oracle_budget": options.budget,
        "certify_budget": options.certify_budget,
        "log_level": options.log_level,
        "default_method": getattr(options, "method", None),
        "transpose": getattr(options, "transpose", None),
    }
    config.update(**{key: value for key, value in overrides.items() if value is not None})
    config.validate()
    return config


def main(
    argv: Optional[Sequence[str]] = None,
    console: Optional[Console] = None,
    err_console: Optional[Console] = None,
) -> int:
    """运行命令行

    Args:
        argv: 参数列表，缺省取 sys.argv[1:]
        console: 报告输出控制台
        err_console: 错误输出控制台，缺省时与 console 相同，两者都缺省时写 stderr

    Returns:
        退出码
    """
    if err_console is None:
        err_console = console if console is not None else Console(stderr=True)
    console = console or Console()
    registry = create_default_registry(console)
    parser = build_parser(registry)

    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        options = parser.parse_args(args)
    except SystemExit as e:
        return ExitCode.SUCCESS if e.code in (0, None) else ExitCode.PARSE_ERROR

    try:
        config = load_config(options)
        configure_logging(ROOT_LOGGER, config.log_level, config.log_file, config.enable_rich_logging)
        set_config(config)

        command = registry.get_command(options.command)
        logger.debug(f"执行命令: {command.name}")
        return int(command.execute(options, config))
    except ParseException as e:
        err_console.print(f"[red]语法错误[/red]: {escape(str(e))}")
        return ExitCode.PARSE_ERROR
    except BudgetExceeded as e:
        err_console.print(f"[red]超出预算[/red]: {escape(str(e))}")
        return ExitCode.BUDGET_EXCEEDED
    except VerificationException as e:
        err_console.print(f"[red]校验失败[/red]: {escape(str(e))}")
        return ExitCode.VERIFICATION_FAILURE
    except (PreconditionException, ValidationException) as e:
        err_console.print(f"[red]前置条件不满足[/red]: {escape(str(e))}")
        return ExitCode.PRECONDITION
    except ChainCodesException as e:
        logger.exception("未分类错误")
        err_console.print(f"[red]错误[/red]: {escape(str(e))}")
        return ExitCode.PRECONDITION


def sync_main() -> None:
    """控制台脚本入口"""
    sys.exit(main())


if __name__ == "__main__":
    sync_main()
