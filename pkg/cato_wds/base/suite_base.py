import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional

from ..errors import CatoError
from ..utils.config_loader import ConfigLoader, Limits, SuiteSettings, default_limits, install_limits, use_limits

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
ERROR = 'error'


class SuiteBase(ABC):
    """验证套件基类，定义统一接口"""

    @abstractmethod
    def initialize(self) -> None:
        """准备根系与缓存"""
        pass

    @abstractmethod
    def run(self, **params) -> Dict[str, Any]:
        """运行套件"""
        pass

    @abstractmethod
    def summary(self, result: Dict[str, Any]) -> Dict[str, Any]:
        """汇总运行结果"""
        pass

    @abstractmethod
    def update_settings(self, settings: Dict[str, Any]) -> None:
        """更新设置"""
        pass


class ConfiguredSuite(SuiteBase):
    """
    读取配置的套件公共部分: 设置, 结果汇总以及按实例并行

    子类提供 name, initialize 与 _run; run 在配置的 Limits 下调用 _run。
    """
    name = 'suite'

    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: 配置文件路径; 为 None 时使用默认设置
        """
        self.config_loader = ConfigLoader(config_path) if config_path else None
        self.settings = self.config_loader.suite_settings() if self.config_loader else SuiteSettings()
        self.limits = self.config_loader.limits() if self.config_loader else default_limits()
        self.initialize()

    def run(self, **params) -> Dict[str, Any]:
        with use_limits(self.limits):
            return self._run(**params)

    @abstractmethod
    def _run(self, **params) -> Dict[str, Any]:
        """套件主体"""
        pass

    def update_settings(self, settings: Dict[str, Any]) -> None:
        """更新设置"""
        merged = self.settings.model_dump()
        merged.update(settings)
        self.settings = SuiteSettings(**merged)
        if self.config_loader:
            self.config_loader.update_config({'suites': settings})

    def summary(self, result: Dict[str, Any]) -> Dict[str, Any]:
        counts = {PASS: 0, FAIL: 0, ERROR: 0}
        for entry in result.get('results', []):
            counts[entry.get('status', ERROR)] = counts.get(entry.get('status', ERROR), 0) + 1
        return {'suite': self.name, 'total': sum(counts.values()), **counts,
                'passed': counts[FAIL] == 0 and counts[ERROR] == 0}

    def _report(self, results: List[Dict[str, Any]], **extra) -> Dict[str, Any]:
        report = {'suite': self.name, **extra, 'results': results}
        report['summary'] = self.summary(report)
        report['passed'] = report['summary']['passed']
        return report

    def _map(self, func: Callable[[Dict[str, Any]], Dict[str, Any]],
             instances: Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]:
        """逐实例执行; workers > 1 时使用进程池 (func 必须是模块级函数)"""
        instances = list(instances)
        if self.settings.workers > 1 and len(instances) > 1:
            with ProcessPoolExecutor(max_workers=self.settings.workers, initializer=install_limits,
                                     initargs=(self.limits,)) as pool:
                return list(pool.map(func, instances))
        return [func(instance) for instance in instances]


def guarded(func: Callable[..., Dict[str, Any]], label: Dict[str, Any], *args, **kwargs) -> Dict[str, Any]:
    """运行单个实例; 输入错误作为 error 条目返回, 不中断整个套件"""
    try:
        entry = func(*args, **kwargs)
    except CatoError as e:
        logger.warning("%s: %s", label, e)
        return {**label, 'status': ERROR, 'error': str(e)}
    except (ValueError, ArithmeticError) as e:
        logger.error("%s: unexpected %s", label, type(e).__name__, exc_info=True)
        return {**label, 'status': ERROR, 'error': f"{type(e).__name__}: {e}"}
    status = entry.get('status', PASS)
    if status == FAIL:
        logger.warning("%s failed", label)
    else:
        logger.info("%s: %s", label, status)
    return {**label, **entry, 'status': status}


def types_within(limits: Limits, types: Iterable[str]) -> List[str]:
    return [t for t in types if int(t[1:]) <= limits.rank_cap]
