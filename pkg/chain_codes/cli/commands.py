"""
命令系统基础类和注册表
"""

import argparse
import json
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ..algebra.chain_ring import RingSpec, find_primitive_root, hensel_lift_root
from ..algebra.exceptions import BudgetExceeded, ShapeMismatch
from ..algebra.parsing import (
    format_poly,
    parse_dims,
    parse_element,
    parse_ring_spec,
    read_generators,
)
from ..algebra.polynomials import MultiPoly
from ..algebra.types import ExitCode, MethodChoice, OutputFormat
from ..codes.cyclic_core import canonical_generators, span_from_generators
from ..codes.multidim import idempotents, nd_generators
from ..codes.reports import GeneratorReport
from ..oracle.certificates import OracleCertificate, certify_generators
from ..utils.config import CodesConfig
from ..utils.logger import get_logger

logger = get_logger("chain_codes.cli.commands")


class BaseCommand(ABC):
    """命令基类"""

    def __init__(
        self,
        name: str,
        description: str,
        aliases: Optional[List[str]] = None,
        console: Optional[Console] = None,
    ):
        self.name = name
        self.description = description
        self.aliases = aliases or []
        self.console = console or Console()

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """注册子命令参数"""

    @abstractmethod
    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        """执行命令

        Args:
            options: 解析后的命令行参数
            config: 合并后的配置

        Returns:
            退出码
        """
        pass

    def get_help(self) -> str:
        """获取命令帮助信息"""
        return f"{self.name}: {self.description}"

    # === 输出辅助 ===

    def emit_json(self, payload: Dict[str, Any]) -> None:
        self.console.out(json.dumps(payload, ensure_ascii=False, indent=2), highlight=False)

    def wants_json(self, config: CodesConfig) -> bool:
        return OutputFormat(config.output_format) is OutputFormat.JSON


class CommandRegistry:
    """命令注册表"""

    def __init__(self):
        self.commands: Dict[str, BaseCommand] = {}
        self.aliases: Dict[str, str] = {}

    def register(self, command: BaseCommand) -> None:
        """注册命令"""
        self.commands[command.name] = command

        # 注册别名
        for alias in command.aliases:
            self.aliases[alias] = command.name

    def unregister(self, name: str) -> None:
        """注销命令"""
        if name in self.commands:
            command = self.commands.pop(name)
            for alias in command.aliases:
                self.aliases.pop(alias, None)

    def get_command(self, name: str) -> Optional[BaseCommand]:
        """获取命令，支持别名"""
        if name in self.commands:
            return self.commands[name]
        if name in self.aliases:
            return self.commands[self.aliases[name]]
        return None

    def get(self, name: str) -> Optional[BaseCommand]:
        """获取命令（get_command的别名）"""
        return self.get_command(name)

    def list_commands(self) -> List[BaseCommand]:
        """列出所有命令"""
        return list(self.commands.values())

    def get_command_names(self) -> List[str]:
        """获取所有命令名（包括别名）"""
        names = list(self.commands.keys())
        names.extend(self.aliases.keys())
        return sorted(names)


# === 共用参数 ===


def _code_arguments(parser: argparse.ArgumentParser, dims_help: str) -> None:
    parser.add_argument("--ring", required=True, help="环规格，如 Z/25 或 F4[g]/(g^2)")
    parser.add_argument("--dims", required=True, help=dims_help)
    parser.add_argument(
        "--gens", default="", help="生成元列表，逗号或换行分隔；@path 从文件读取"
    )


def _method_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--method",
        choices=[choice.value for choice in MethodChoice],
        default=None,
        help="构造方法，缺省取配置 default_method",
    )
    parser.add_argument(
        "--transpose",
        action="store_true",
        default=None,
        help="反转变量顺序后构造（二维时行列互换）",
    )


def _load_code(options: argparse.Namespace) -> Tuple[RingSpec, Tuple[int, ...], List[MultiPoly]]:
    spec = parse_ring_spec(options.ring)
    dims = parse_dims(options.dims)
    gens = read_generators(options.gens, spec, dims)
    logger.debug(f"输入: {spec}, dims={dims}, 生成元 {len(gens)} 个")
    return spec, dims, gens


def _report_table(report: GeneratorReport) -> Table:
    table = Table(title="生成元")
    table.add_column("#", justify="right", style="dim")
    table.add_column("标签", style="cyan")
    table.add_column("多项式")
    table.add_column("可分离", justify="center")
    for index, generator in enumerate(report.generators):
        table.add_row(
            str(index),
            escape(generator.label),
            escape(format_poly(generator.poly)),
            "yes" if generator.separable else "no",
        )
    return table


def _levels_table(report: GeneratorReport) -> Table:
    table = Table(title="分层数据")
    table.add_column("层", style="cyan")
    table.add_column("类型", style="magenta")
    table.add_column("生成元")
    for level in report.levels:
        gens = ", ".join(format_poly(g) for g in level.generators) or "0"
        table.add_row(escape(level.label), level.kind.value, escape(gens))
    return table


def _print_certificate(console: Console, certificate: OracleCertificate) -> None:
    table = Table(title="枚举证书")
    table.add_column("检查", style="cyan")
    table.add_column("结果", justify="center")
    table.add_column("说明")
    for check in certificate.checks:
        status = "[green]通过[/green]" if check.passed else "[red]失败[/red]"
        table.add_row(escape(check.name), status, escape(check.detail))
    console.print(table)
    counterexample = certificate.counterexample
    if counterexample is not None:
        console.print(f"[red]反例:[/red] {escape(format_poly(counterexample))}")


# === 子命令 ===


class CanonicalCommand(BaseCommand):
    """一维循环码的阶梯生成元"""

    def __init__(self, console: Optional[Console] = None):
        super().__init__("canonical", "一维循环码的阶梯生成元", ["can"], console)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        _code_arguments(parser, "码长 m")

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        spec, dims, gens = _load_code(options)
        if len(dims) != 1:
            raise ShapeMismatch(f"canonical needs a single length, got dims {dims}")
        gen_set = canonical_generators(span_from_generators(spec, dims, gens))
        staircase = gen_set.check_staircase()

        if self.wants_json(config):
            self.emit_json(
                {
                    "ring": str(spec),
                    "dims": list(dims),
                    "generators": [format_poly(g) for g in gen_set.generators()],
                    "entries": gen_set.to_dict()["entries"],
                    "staircase": staircase,
                    "bound": gen_set.bound(),
                    "zero_code": gen_set.is_zero(),
                }
            )
            return ExitCode.SUCCESS

        if gen_set.is_zero():
            self.console.print("[yellow]zero code[/yellow]: 没有生成元")
            return ExitCode.SUCCESS
        for entry in gen_set.entries:
            self.console.print(escape(str(entry)))
        exponents = ", ".join(str(e.gamma_exponent) for e in gen_set.entries)
        degrees = ", ".join(str(e.degree) for e in gen_set.entries)
        self.console.print(
            f"[dim]i = ({exponents}), deg = ({degrees}), "
            f"{len(gen_set.entries)} <= bound {gen_set.bound()}, staircase={staircase}[/dim]"
        )
        return ExitCode.SUCCESS


class GenerateCommand(BaseCommand):
    """多维循环码的生成元"""

    def __init__(self, console: Optional[Console] = None):
        super().__init__("generate", "多维循环码的生成元", ["gen"], console)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        _code_arguments(parser, "各变量长度，逗号分隔，如 10,4")
        _method_arguments(parser)
        parser.add_argument("--verify", action="store_true", help="用暴力枚举复核结果")

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        spec, dims, gens = _load_code(options)
        report = nd_generators(
            spec,
            dims,
            gens,
            method=config.default_method,
            transpose=config.transpose,
            certify_budget=config.certify_budget,
        )

        oracle = "not-run"
        certificate = None
        if options.verify:
            try:
                certificate = certify_generators(
                    spec, dims, gens, report.polys(), budget=config.oracle_budget
                )
                oracle = "passed" if certificate.passed else "failed"
            except BudgetExceeded as e:
                logger.warning(f"跳过枚举复核: {e}")
                oracle = "skipped"

        if self.wants_json(config):
            payload = report.to_dict()
            payload["oracle"] = oracle
            if certificate is not None:
                payload["checks"] = certificate.to_dict()["checks"]
            self.emit_json(payload)
        else:
            status = "certified" if report.certified else "[yellow]uncertified[/yellow]"
            self.console.print(
                f"[bold]{escape(str(spec))}[/bold] dims={list(dims)} "
                f"method={report.method.value} {status} oracle={oracle}"
            )
            if report.generators:
                self.console.print(_report_table(report))
            else:
                self.console.print("[yellow]zero code[/yellow]: 没有生成元")
            if report.levels:
                self.console.print(_levels_table(report))
            if certificate is not None:
                _print_certificate(self.console, certificate)

        if oracle == "failed":
            return ExitCode.VERIFICATION_FAILURE
        return ExitCode.SUCCESS


class VerifyCommand(BaseCommand):
    """枚举证书"""

    def __init__(self, console: Optional[Console] = None):
        super().__init__("verify", "用暴力枚举校验生成元", ["check"], console)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        _code_arguments(parser, "各变量长度，逗号分隔")
        _method_arguments(parser)
        parser.add_argument(
            "--claimed", default=None, help="待校验的生成元列表，缺省时重新构造"
        )

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        spec, dims, gens = _load_code(options)
        if options.claimed is not None:
            claimed = read_generators(options.claimed, spec, dims)
        else:
            claimed = nd_generators(
                spec,
                dims,
                gens,
                method=config.default_method,
                transpose=config.transpose,
                certify_budget=config.certify_budget,
            ).polys()
        certificate = certify_generators(spec, dims, gens, claimed, budget=config.oracle_budget)

        if self.wants_json(config):
            counterexample = certificate.counterexample
            self.emit_json(
                {
                    "ring": str(spec),
                    "dims": list(dims),
                    "oracle": "passed" if certificate.passed else "failed",
                    "checks": certificate.to_dict()["checks"],
                    "counterexample": (
                        format_poly(counterexample) if counterexample is not None else None
                    ),
                }
            )
        else:
            _print_certificate(self.console, certificate)

        if not certificate.passed:
            return ExitCode.VERIFICATION_FAILURE
        return ExitCode.SUCCESS


class IdempotentsCommand(BaseCommand):
    """R[y]/(y^n - 1) 的本原幂等元"""

    def __init__(self, console: Optional[Console] = None):
        super().__init__("idempotents", "本原幂等元 θ_0..θ_{n-1}", ["idem"], console)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ring", required=True, help="环规格")
        parser.add_argument("--n", type=int, required=True, help="阶 n，须整除 q-1")

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        spec = parse_ring_spec(options.ring)
        family = idempotents(spec, options.n)
        thetas = [format_poly(theta, names=("y",)) for theta in family.thetas]

        if self.wants_json(config):
            self.emit_json(
                {
                    "ring": str(spec),
                    "n": family.n,
                    "zeta": str(family.zeta),
                    "thetas": thetas,
                }
            )
            return ExitCode.SUCCESS

        self.console.print(f"zeta = {escape(str(family.zeta))}")
        table = Table(title=f"{escape(str(spec))} 上的本原幂等元")
        table.add_column("i", justify="right", style="cyan")
        table.add_column("θ_i(y)")
        for i, theta in enumerate(thetas):
            table.add_row(str(i), escape(theta))
        self.console.print(table)
        return ExitCode.SUCCESS


class RootCommand(BaseCommand):
    """n 次本原单位根"""

    def __init__(self, console: Optional[Console] = None):
        super().__init__("root", "n 次本原单位根", ["zeta"], console)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ring", required=True, help="环规格")
        parser.add_argument("--n", type=int, required=True, help="单位根的阶")
        parser.add_argument(
            "--omega", default=None, help="剩余域中的单根，给出时用 Newton 提升"
        )

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        spec = parse_ring_spec(options.ring)
        if options.omega is not None:
            omega = spec.residue_value(parse_element(options.omega, spec).value)
            zeta = hensel_lift_root(spec, options.n, omega)
        else:
            zeta = find_primitive_root(spec, options.n)

        if self.wants_json(config):
            self.emit_json({"ring": str(spec), "n": options.n, "zeta": str(zeta)})
        else:
            self.console.print(f"zeta = {escape(str(zeta))}")
        return ExitCode.SUCCESS


class HelpCommand(BaseCommand):
    """帮助命令"""

    def __init__(self, registry: CommandRegistry, console: Optional[Console] = None):
        super().__init__("help", "显示帮助信息", ["h"], console)
        self.registry = registry

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("topic", nargs="?", default=None, help="命令名")

    def execute(self, options: argparse.Namespace, config: CodesConfig) -> int:
        if options.topic:
            command = self.registry.get_command(options.topic)
            if command is None:
                self.console.print(f"[red]未找到命令: {escape(options.topic)}[/red]")
                self.console.print(
                    f"[dim]可用: {', '.join(self.registry.get_command_names())}[/dim]"
                )
                return ExitCode.PARSE_ERROR
            self.console.print(f"[bold blue]{escape(command.get_help())}[/bold blue]")
            if command.aliases:
                self.console.print(f"[dim]别名: {', '.join(command.aliases)}[/dim]")
            return ExitCode.SUCCESS

        table = Table(title="可用命令")
        table.add_column("命令", style="cyan")
        table.add_column("别名", style="magenta")
        table.add_column("描述")
        for command in self.registry.list_commands():
            table.add_row(command.name, ", ".join(command.aliases), escape(command.description))
        self.console.print(table)
        return ExitCode.SUCCESS


def create_default_registry(console: Optional[Console] = None) -> CommandRegistry:
    """创建包含全部子命令的注册表"""
    registry = CommandRegistry()
    commands: Sequence[BaseCommand] = (
        CanonicalCommand(console),
        GenerateCommand(console),
        VerifyCommand(console),
        IdempotentsCommand(console),
        RootCommand(console),
    )
    for command in commands:
        registry.register(command)
    registry.register(HelpCommand(registry, console))
    return registry
