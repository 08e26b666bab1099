"""
chain-codes 命令行工具

子命令：canonical、generate、verify、idempotents、root、help
"""

from .commands import (
    BaseCommand,
    CommandRegistry,
    HelpCommand,
    CanonicalCommand,
    GenerateCommand,
    VerifyCommand,
    IdempotentsCommand,
    RootCommand,
    create_default_registry,
)
from .main import build_parser, load_config, main, sync_main

__all__ = [
    # 命令系统
    "BaseCommand",
    "CommandRegistry",
    "HelpCommand",
    # 子命令
    "CanonicalCommand",
    "GenerateCommand",
    "VerifyCommand",
    "IdempotentsCommand",
    "RootCommand",
    "create_default_registry",
    # 入口
    "build_parser",
    "load_config",
    "main",
    "sync_main",
]
