import json
import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator
from sympy import isprime

logger = logging.getLogger(__name__)

DEPTH_CAP_ENV = 'CATO_DEPTH_CAP'


class Limits(BaseModel):
    """桌面规模的计算上限"""
    rank_cap: int = Field(4, ge=1, le=4)
    depth_cap: int = Field(10, ge=1)
    default_depth: int = Field(8, ge=0)
    nmax_cap: int = Field(6, ge=0)

    @field_validator('default_depth')
    @classmethod
    def _default_within_cap(cls, value: int, info) -> int:
        cap = info.data.get('depth_cap')
        if cap is not None and value > cap:
            raise ValueError(f"default_depth {value} exceeds depth_cap {cap}")
        return value


class ReportSettings(BaseModel):
    schema_version: int = Field(1, alias='schema')
    format: str = 'json'
    output_dir: str = 'reports'

    @field_validator('format')
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ('json', 'csv'):
            raise ValueError("format must be 'json' or 'csv'")
        return value


class SuiteSettings(BaseModel):
    primes: List[int] = [2, 3, 5, 7]
    expected_abcd_failures: List[str] = ['G2']
    bch_samples: int = 20
    seed: int = 0
    workers: int = 1
    grid_path: Optional[str] = None


def _env_depth_cap() -> Optional[int]:
    raw = os.getenv(DEPTH_CAP_ENV)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{DEPTH_CAP_ENV} must be an integer, got {raw!r}")


@lru_cache(maxsize=1)
def default_limits() -> Limits:
    """未提供配置文件时使用的上限 (仍然读取 .env 与环境变量)"""
    load_dotenv()
    cap = _env_depth_cap()
    if cap is None:
        return Limits()
    return Limits(depth_cap=cap, default_depth=min(8, cap))


_active_limits: ContextVar[Optional[Limits]] = ContextVar('cato_limits', default=None)


def active_limits() -> Limits:
    """库代码使用的上限: 当前上下文安装的 Limits, 否则为 default_limits()"""
    return _active_limits.get() or default_limits()


def install_limits(limits: Optional[Limits]) -> None:
    """在当前上下文安装上限 (也用作进程池的 initializer)"""
    _active_limits.set(limits)


@contextmanager
def use_limits(limits: Limits) -> Iterator[Limits]:
    """
    在 with 块内让库代码使用给定的上限
    Args:
        limits: 通常来自 ConfigLoader.limits()
    """
    token = _active_limits.set(limits)
    try:
        yield limits
    finally:
        _active_limits.reset(token)


class ConfigLoader:
    def __init__(self, config_path: str):
        """
        初始化配置加载器
        Args:
            config_path: 配置文件的完整路径
        """
        self.config_path = config_path
        load_dotenv()
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """加载并验证配置文件"""
        if not os.path.exists(self.config_path):
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")

        with open(self.config_path, 'r', encoding='utf-8') as f:
            config = json.load(f)

        # 验证必要的配置项
        required_keys = ['limits', 'report', 'suites']
        for key in required_keys:
            if key not in config:
                raise KeyError(f"Missing required configuration key: {key}")

        # 环境变量覆盖深度上限
        cap = _env_depth_cap()
        if cap is not None:
            logger.info("depth cap overridden by %s=%d", DEPTH_CAP_ENV, cap)
            config['limits']['depth_cap'] = cap
            config['limits']['default_depth'] = min(config['limits'].get('default_depth', 8), cap)

        # 路径相对于配置文件所在目录
        config_dir = os.path.dirname(os.path.abspath(self.config_path))
        report = config['report']
        if not os.path.isabs(report.get('output_dir', 'reports')):
            report['output_dir'] = os.path.normpath(os.path.join(config_dir, report.get('output_dir', 'reports')))
        grid_path = config['suites'].get('grid_path')
        if grid_path and not os.path.isabs(grid_path):
            config['suites']['grid_path'] = os.path.normpath(os.path.join(config_dir, grid_path))

        return config

    def get_config(self) -> Dict[str, Any]:
        """获取配置"""
        return self.config

    def update_config(self, updates: Dict[str, Any]) -> None:
        """更新配置"""
        for key, value in updates.items():
            if key in self.config:
                self.config[key].update(value)

    def limits(self) -> Limits:
        return Limits(**self.config['limits'])

    def report_settings(self) -> ReportSettings:
        return ReportSettings(**self.config['report'])

    def suite_settings(self) -> SuiteSettings:
        return SuiteSettings(**self.config['suites'])

    def load_grid(self) -> List[Dict[str, Any]]:
        """读取积分性验证网格"""
        grid_path = self.config['suites'].get('grid_path')
        if not grid_path:
            return []
        try:
            with open(grid_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError:
            logger.warning("grid file %s not found, using an empty grid", grid_path)
            return []


class RunConfig(BaseModel):
    """一次命令行运行的参数"""
    command: str
    subcommand: Optional[str] = None
    type_label: Optional[str] = None
    weight: Optional[str] = None
    prime: Optional[int] = None
    depth: Optional[int] = None
    nmax: Optional[int] = None
    m0: Optional[int] = Field(None, ge=0)
    output: Optional[str] = None
    format: str = 'json'

    @field_validator('prime')
    @classmethod
    def _is_prime(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and not isprime(value):
            raise ValueError(f"{value} is not a prime")
        return value

    @field_validator('weight')
    @classmethod
    def _exact_weight(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            for part in value.split(','):
                try:
                    Fraction(part.strip())
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"weight {value!r} is not a list of exact rationals")
        return value

    @field_validator('format')
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ('json', 'csv'):
            raise ValueError("format must be 'json' or 'csv'")
        return value

    def check_limits(self, limits: Limits) -> None:
        if self.depth is not None and not 0 <= self.depth <= limits.depth_cap:
            raise ValueError(f"depth {self.depth} outside [0, {limits.depth_cap}]")
        if self.nmax is not None and not 0 <= self.nmax <= limits.nmax_cap:
            raise ValueError(f"nmax {self.nmax} outside [0, {limits.nmax_cap}]")
