"""
命令行入口

    roots TYPE
    check {abcd|chevalley|weyl|integrality|bch} [...]
    verma {dims|singvec|hom|up} [...]
    nil {bch|sigma|reduce|ledger} [...]

退出码: 0 通过, 1 数学检验失败, 2 用法或输入错误, 3 单次查询超出截断深度 (报告 status 为 error)。
"""
import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import SUITES, __version__, create_suite
from .errors import CatoError, DepthError
from .lie.chevalley import LieElement, build_table
from .lie.nilexp import (UnipotentElement, b_sets, bch, choose_extremal, coefficient_valuations,
                         reduce_fully, sigma_series)
from .lie.rootsys import RootSystem, Weight, build_root_system
from .modules.modules_o import (build_verma, hom_dim_verma, simple_quotient, singular_vectors,
                                up_ordering)
from .suites.chevalley import roots_report
from .utils.config_loader import ConfigLoader, Limits, ReportSettings, RunConfig, default_limits, use_limits
from .utils.rational import parse_fraction, parse_int_vector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_QUERY_ERROR = 3


class UsageError(Exception):
    """argparse 的用法错误"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='cato', description='Exact checks for highest weight modules in category O')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--config', help='配置文件路径')
    parser.add_argument('--format', choices=['json', 'csv'], help='报告格式')
    parser.add_argument('--output', help='报告输出文件 (默认标准输出)')
    parser.add_argument('--save', action='store_true', help='写入配置中 report.output_dir 下的默认文件名')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    sub = parser.add_subparsers(dest='command', required=True)

    roots = sub.add_parser('roots', help='根系与 Chevalley 表摘要')
    roots.add_argument('type_label')

    check = sub.add_parser('check', help='运行验证套件')
    check.add_argument('suite', choices=sorted(SUITES))
    check.add_argument('--type', dest='types', action='append', help='根系类型, 可重复')
    check.add_argument('--nmax', type=int)
    check.add_argument('--depth', type=int)
    check.add_argument('--samples', type=int)
    check.add_argument('--workers', type=int)
    check.add_argument('--lambda', dest='weight')
    check.add_argument('--gamma')
    check.add_argument('--n', type=int)
    check.add_argument('--p', type=int)
    check.add_argument('--m0', type=int)

    verma = sub.add_parser('verma', help='截断 Verma/单模查询')
    verma.add_argument('query', choices=['dims', 'singvec', 'hom', 'up'])
    verma.add_argument('--type', dest='type_label', required=True)
    verma.add_argument('--lambda', dest='weight', required=True)
    verma.add_argument('--mu')
    verma.add_argument('--depth', type=int)
    verma.add_argument('--simple', action='store_true')
    verma.add_argument('--reflections', choices=['all', 'simple'], default='all')

    nil = sub.add_parser('nil', help='幂零根基中的指数与约化')
    nil.add_argument('query', choices=['bch', 'sigma', 'reduce', 'ledger'])
    nil.add_argument('--type', dest='type_label', required=True)
    nil.add_argument('--I', dest='levi', default='', help='抛物子集 (1 起编号, 逗号分隔)')
    nil.add_argument('--log', help='log u, 形如 "1,0=1;1,1=1/5"')
    nil.add_argument('--x', help='bch 的第一个参数, 语法同 --log')
    nil.add_argument('--y', help='bch 的第二个参数, 语法同 --log')
    nil.add_argument('--lambda', dest='weight')
    nil.add_argument('--beta')
    nil.add_argument('--p', type=int)
    nil.add_argument('--scale-exp', type=int, default=0)
    nil.add_argument('--depth', type=int)
    nil.add_argument('--simple', action='store_true')
    return parser


# ---- 解析 ----
def _weight(rs: RootSystem, text: Optional[str], name: str = 'lambda') -> Weight:
    if text is None:
        raise CatoError(f"--{name} is required")
    weight = Weight.parse(text)
    if weight.rank != rs.rank:
        raise CatoError(f"--{name} has {weight.rank} coordinates, {rs.type_label} has rank {rs.rank}")
    return weight


def _parabolic(rs: RootSystem, text: str):
    indices = [int(part) - 1 for part in text.split(',') if part.strip()]
    return rs.parabolic(indices)


def _lie(rs: RootSystem, text: Optional[str]) -> LieElement:
    """"β=c;β′=c′" 表示 Σ c·y_β"""
    table = build_table(rs)
    out = table.zero()
    if not text:
        return out
    for item in text.split(';'):
        if not item.strip():
            continue
        if '=' not in item:
            raise CatoError(f"Expected root=coefficient, got {item!r}")
        root, coefficient = item.split('=', 1)
        beta = parse_int_vector(root)
        rs.index(beta)
        out = out + table.y(beta) * parse_fraction(coefficient)
    return out


# ---- 命令 ----
def cmd_roots(args, limits: Limits) -> Dict[str, Any]:
    return {'status': 'pass', **roots_report(args.type_label)}


def cmd_check(args, limits: Limits) -> Dict[str, Any]:
    suite = create_suite(args.suite, args.config)
    if args.workers is not None:
        suite.update_settings({'workers': args.workers})
    params: Dict[str, Any] = {'types': args.types}
    if args.nmax is not None:
        params['nmax'] = args.nmax
    if args.depth is not None:
        params['depth'] = args.depth
    if args.samples is not None:
        params['samples'] = args.samples
    if args.suite == 'integrality' and args.weight is not None:
        if not args.types or len(args.types) != 1:
            raise CatoError("a single --type is required with --lambda")
        missing = [name for name in ('gamma', 'n', 'p') if getattr(args, name) is None]
        if missing:
            raise CatoError(f"missing {', '.join('--' + m for m in missing)}")
        instance = {'type': args.types[0], 'lambda': args.weight, 'gamma': args.gamma, 'n': args.n, 'p': args.p}
        if args.m0 is not None:
            instance['m0'] = args.m0
        if args.depth is not None:
            instance['depth'] = args.depth
        params['instances'] = [instance]
    return suite.run(**params)


def cmd_verma(args, limits: Limits) -> Dict[str, Any]:
    rs = build_root_system(args.type_label)
    table = build_table(rs)
    lam = _weight(rs, args.weight)
    depth = args.depth if args.depth is not None else limits.default_depth
    report: Dict[str, Any] = {'type': rs.type_label, 'lambda': lam.to_json(), 'query': args.query}
    if args.query == 'up':
        mu = _weight(rs, args.mu, 'mu')
        report.update(mu=mu.to_json(), up=up_ordering(rs, mu, lam, args.reflections))
        return report
    try:
        if args.query == 'dims':
            module = (simple_quotient if args.simple else build_verma)(lam, depth, table)
            report.update(module.to_json())
        elif args.query == 'singvec':
            mu = _weight(rs, args.mu, 'mu')
            module = (simple_quotient if args.simple else build_verma)(lam, depth, table)
            report.update(mu=mu.to_json(), kind=module.kind,
                          vectors=[v.to_json() for v in singular_vectors(module, mu)])
        else:
            mu = _weight(rs, args.mu, 'mu')
            report.update(mu=mu.to_json(), hom=hom_dim_verma(mu, lam, depth, table))
    except DepthError as e:
        report.update(status='error', error=str(e))
    return report


def cmd_nil(args, limits: Limits) -> Dict[str, Any]:
    rs = build_root_system(args.type_label)
    table = build_table(rs)
    parabolic = _parabolic(rs, args.levi)
    report: Dict[str, Any] = {'type': rs.type_label, 'query': args.query, 'I': parabolic.labels()}
    if args.query == 'bch':
        report['bch'] = bch(_lie(rs, args.x), _lie(rs, args.y), parabolic).to_json()
        return report

    u = UnipotentElement(_lie(rs, args.log), parabolic)
    report['u'] = u.to_json()
    if args.query == 'reduce':
        if args.p is None:
            raise CatoError("--p is required")
        support, plus, prime = b_sets(u, args.scale_exp, args.p)
        report.update(B=[list(b) for b in support], B_plus=[list(b) for b in plus],
                      B_prime=[list(b) for b in prime], trace=reduce_fully(u, args.scale_exp, args.p))
        return report

    lam = _weight(rs, args.weight)
    depth = args.depth if args.depth is not None else limits.default_depth
    module = (simple_quotient if args.simple else build_verma)(lam, depth, table)
    if args.query == 'sigma':
        report['sigma'] = sigma_series(u, module).to_json()
        return report
    if args.p is None:
        raise CatoError("--p is required")
    beta = parse_int_vector(args.beta) if args.beta else choose_extremal(rs, u.support())
    report.update(beta_plus=list(beta), ledger=coefficient_valuations(u, beta, module, args.p))
    return report


COMMANDS = {'roots': cmd_roots, 'check': cmd_check, 'verma': cmd_verma, 'nil': cmd_nil}


# ---- 输出 ----
def _rows(report: Dict[str, Any]) -> List[Dict[str, Any]]:
    """CSV 行: 结果表, 维数表或账本"""
    if 'results' in report:
        return [{k: v for k, v in entry.items() if not isinstance(v, (list, dict))} for entry in report['results']]
    if 'dims' in report:
        return [{'offset': offset, 'dim': dim} for offset, dim in report['dims'].items()]
    if 'ledger' in report:
        return list(report['ledger'])
    return [{k: json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else v
             for k, v in report.items()}]


def render(report: Dict[str, Any], fmt: str, schema: int = 1) -> str:
    if fmt == 'json':
        return json.dumps({'schema': schema, **report}, indent=2, ensure_ascii=False) + '\n'
    rows = _rows(report)
    fields: List[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def _run_config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        subcommand=getattr(args, 'suite', None) or getattr(args, 'query', None),
        type_label=getattr(args, 'type_label', None) or ((getattr(args, 'types', None) or [None])[0]),
        weight=getattr(args, 'weight', None),
        prime=getattr(args, 'p', None),
        depth=getattr(args, 'depth', None),
        nmax=getattr(args, 'nmax', None),
        m0=getattr(args, 'm0', None),
        output=args.output,
        format=args.format or 'json',
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    _configure_logging(args.verbose)

    try:
        loader = ConfigLoader(args.config) if args.config else None
        limits = loader.limits() if loader else default_limits()
        settings = loader.report_settings() if loader else ReportSettings()
        if args.format is None:
            args.format = settings.format
        run_config = _run_config(args)
        run_config.check_limits(limits)
        with use_limits(limits):
            report = COMMANDS[args.command](args, limits)
    except (CatoError, ValidationError, ValueError, FileNotFoundError, KeyError) as e:
        logger.debug("input rejected", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    output = run_config.output
    if output is None and args.save:
        stem = '_'.join(part for part in (args.command, run_config.subcommand, run_config.type_label) if part)
        output = os.path.join(settings.output_dir, f"{stem}.{run_config.format}")
    _write(render(report, run_config.format, settings.schema_version), output)
    if report.get('status') == 'error':
        return EXIT_QUERY_ERROR
    return EXIT_OK if report.get('passed', True) else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
