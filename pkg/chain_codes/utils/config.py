"""chain-codes 配置管理

本模块提供统一的配置管理接口，支持环境变量、TOML 配置文件、默认值和运行时配置。
配置优先级：命令行参数 > 环境变量 > 配置文件 > 默认值
"""

import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Optional

import toml

from ..algebra.exceptions import ValidationException
from ..algebra.types import MethodChoice, OutputFormat

ENV_PREFIX = "CHAIN_CODES_"


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass
class CodesConfig:
    """chain-codes 配置类

    包含构造、校验、输出和日志的全部配置选项。
    """

    # 预算配置
    oracle_budget: int = 2**24
    certify_budget: int = 4096

    # 生成配置
    default_method: str = MethodChoice.AUTO.value
    transpose: bool = False

    # 输出配置
    output_format: str = OutputFormat.TEXT.value

    # 日志配置
    log_level: str = "WARNING"
    log_file: Optional[str] = None
    enable_rich_logging: bool = True

    # 自定义配置
    custom: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_env(cls, base: Optional["CodesConfig"] = None) -> "CodesConfig":
        """从环境变量创建配置

        读取环境变量并创建配置实例。环境变量格式：CHAIN_CODES_<配置名>

        Args:
            base: 作为默认值的配置，缺省时使用内置默认值

        Returns:
            从环境变量读取的配置实例
        """
        config = cls(**base.to_kwargs()) if base is not None else cls()

        try:
            # 预算配置
            config.oracle_budget = int(
                os.getenv(f"{ENV_PREFIX}ORACLE_BUDGET", str(config.oracle_budget))
            )
            config.certify_budget = int(
                os.getenv(f"{ENV_PREFIX}CERTIFY_BUDGET", str(config.certify_budget))
            )
        except ValueError as e:
            raise ValidationException(f"Invalid budget in environment: {e}")

        # 生成配置
        config.default_method = os.getenv(
            f"{ENV_PREFIX}DEFAULT_METHOD", config.default_method
        )
        config.transpose = _env_bool(f"{ENV_PREFIX}TRANSPOSE", config.transpose)

        # 输出配置
        config.output_format = os.getenv(
            f"{ENV_PREFIX}OUTPUT_FORMAT", config.output_format
        )

        # 日志配置
        config.log_level = os.getenv(f"{ENV_PREFIX}LOG_LEVEL", config.log_level)
        config.log_file = os.getenv(f"{ENV_PREFIX}LOG_FILE", config.log_file)
        config.enable_rich_logging = _env_bool(
            f"{ENV_PREFIX}ENABLE_RICH_LOGGING", config.enable_rich_logging
        )

        return config

    @classmethod
    def from_file(cls, path: str) -> "CodesConfig":
        """从 TOML 文件创建配置

        键可以放在顶层，也可以放在 [chain_codes] 表中。

        Args:
            path: 配置文件路径

        Returns:
            配置实例

        Raises:
            ValidationException: 文件不存在或格式无效时
        """
        try:
            data = toml.load(path)
        except (OSError, toml.TomlDecodeError) as e:
            raise ValidationException(f"Invalid config file {path}: {e}")

        section = data.get("chain_codes", data)
        config = cls()
        config.update(**section)
        return config

    def update(self, **kwargs) -> None:
        """更新配置项

        Args:
            **kwargs: 要更新的配置项，未知键放入 custom
        """
        known = {f.name for f in fields(self)} - {"custom"}
        for key, value in kwargs.items():
            if key in known:
                setattr(self, key, value)
            else:
                self.custom[key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置项

        Args:
            key: 配置项名称
            default: 默认值

        Returns:
            配置项的值
        """
        if key != "custom" and hasattr(self, key):
            return getattr(self, key)
        return self.custom.get(key, default)

    def validate(self) -> None:
        """校验配置

        Raises:
            ValidationException: 预算非正或方法、格式名未知时
        """
        if self.oracle_budget <= 0 or self.certify_budget < 0:
            raise ValidationException(
                f"Budgets must be positive: oracle={self.oracle_budget}, "
                f"certify={self.certify_budget}"
            )
        try:
            MethodChoice(self.default_method)
            OutputFormat(self.output_format)
        except ValueError as e:
            raise ValidationException(f"Invalid config value: {e}")

    def to_kwargs(self) -> Dict[str, Any]:
        return {
            f.name: (dict(self.custom) if f.name == "custom" else getattr(self, f.name))
            for f in fields(self)
        }

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典

        Returns:
            配置的字典表示
        """
        result = {
            # 预算配置
            "oracle_budget": self.oracle_budget,
            "certify_budget": self.certify_budget,
            # 生成配置
            "default_method": self.default_method,
            "transpose": self.transpose,
            # 输出配置
            "output_format": self.output_format,
            # 日志配置
            "log_level": self.log_level,
            "log_file": self.log_file,
            "enable_rich_logging": self.enable_rich_logging,
        }

        # 添加自定义配置
        result.update(self.custom)
        return result


_global_config: Optional[CodesConfig] = None


def get_config() -> CodesConfig:
    """获取全局配置

    如果配置尚未初始化，则从环境变量创建默认配置。

    Returns:
        全局配置实例
    """
    global _global_config
    if _global_config is None:
        _global_config = CodesConfig.from_env()
    return _global_config


def set_config(config: CodesConfig) -> None:
    """设置全局配置

    Args:
        config: 新的配置实例
    """
    global _global_config
    _global_config = config


def reset_config() -> None:
    """重置全局配置

    下次调用 get_config() 时会重新从环境变量读取。
    """
    global _global_config
    _global_config = None
