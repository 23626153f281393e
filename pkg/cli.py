"""
命令行入口

    python cli.py vectors --generator cross:4
    python cli.py check sphere --h 1,4,6,4,1
    python cli.py link analyze --file K.facets --format table
    python cli.py extend --gamma 1 --d 6 --mode sphere --strategy max
    python cli.py ortho mu --N 4 --scheme chebyshev
    python cli.py macaulay --a 7 --k 2

退出码：0 通过，1 检验失败，2 用法或输入解析错误，3 前置条件（链接条件）不满足
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from config import override_guard
from utils.complex import f_vector, generate, h_vector, load_facets
from utils.errors import CombError, ParseError, PreconditionError, RangeError, ShapeError
from utils.link import analyze
from utils.log import create_logger
from utils.macaulay import (asymptotic_ratio, check_cm_h, check_f_vector, check_sphere_g, macaulay_rep,
                            pseudopower_bounds, pseudopower_scaling_ratio)
from utils.orthopath import (SCHEMES, WeightScheme, coefficient_via_covers, dimer_identity_check, formal_h,
                             formal_unimodality_check, gamma_via_covers, inverse_pair_check, mu_matrix, mu_ratios,
                             named_scheme, unitary_family)
from utils.realize import MODES, extend_gamma, parse_strategy
from utils.report import dumps, to_jsonable, to_table
from utils.vectors import (dehn_sommerville_check, f_to_h, gamma_via_chebyshev, h_from_gamma, h_half_to_gamma,
                           h_to_f, h_to_g)

logger = logging.getLogger("calc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


def _parse_ints(text: str, flag: str) -> List[int]:
    values = []
    for position, token in enumerate(text.split(',')):
        token = token.strip()
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"{flag} 中的 '{token}' 不是整数", position=position)
    return values


def _parse_fracs(text: str, flag: str) -> List[Fraction]:
    values = []
    for position, token in enumerate(text.split(',')):
        try:
            values.append(Fraction(token.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{flag} 中的 '{token.strip()}' 不是有理数", position=position)
    return values


def _load_complex(args):
    if args.generator:
        return generate(args.generator)
    if args.file:
        return load_facets(args.file)
    return None


def _sources(args) -> List[str]:
    names = ("generator", "file", "h", "f", "g", "gamma")
    return [name for name in names if getattr(args, name, None)]


def _resolve_h(args) -> Sequence[int]:
    """从唯一的输入源得到完整 h 向量"""
    sources = _sources(args)
    if len(sources) != 1:
        raise ParseError(f"需要恰好一个输入源，实际为 {sources or '无'}")
    source = sources[0]
    if source in ("generator", "file"):
        return h_vector(_load_complex(args)).entries
    if source == "h":
        return _parse_ints(args.h, "--h")
    if source == "f":
        return f_to_h(_parse_ints(args.f, "--f")).entries
    if args.d is None:
        raise ParseError(f"--{source} 需要同时给出 --d")
    if source == "gamma":
        return h_from_gamma(_parse_ints(args.gamma, "--gamma"), args.d).entries
    half = _parse_ints(args.g, "--g")
    if len(half) != args.d // 2 + 1:
        raise ShapeError(f"--g 应有 {args.d // 2 + 1} 项（g_0..g_{args.d // 2}），实际为 {len(half)}")
    h_half = [sum(half[:i + 1]) for i in range(len(half))]
    return h_half + h_half[:args.d + 1 - len(h_half)][::-1]


def cmd_vectors(args):
    h = list(_resolve_h(args))
    d = len(h) - 1
    gamma_cheb = gamma_via_chebyshev(h, d)
    gamma = h_half_to_gamma(h[:d // 2 + 1], d)
    payload = {
        "d": d,
        "f": h_to_f(h).entries,
        "h": h,
        "g_trunc": h_to_g(h, "trunc").entries,
        "g_ext": h_to_g(h, "ext").entries,
        "dehn_sommerville": dehn_sommerville_check(h),
        "gamma": gamma.entries,
        "gamma_chebyshev": gamma_cheb.entries,
        "gamma_agree": gamma.entries == gamma_cheb.entries,
    }
    rows = [{"vector": key, "entries": payload[key]} for key in ("f", "h", "g_trunc", "g_ext", "gamma")]
    return payload, rows, EXIT_OK


def cmd_check(args):
    if args.mode == "fvector":
        K = _load_complex(args)
        if K is not None:
            f = f_vector(K).entries
        elif args.f:
            f = _parse_ints(args.f, "--f")
        else:
            raise ParseError("fvector 检验需要 --f 或复形输入")
        result = check_f_vector(f)
    else:
        h = _resolve_h(args)
        result = check_sphere_g(h) if args.mode == "sphere" else check_cm_h(h)
    return result.to_json(), None, EXIT_OK if result.ok else EXIT_FAIL


def cmd_link(args):
    K = _load_complex(args)
    if K is None:
        raise ParseError("link analyze 需要 --generator 或 --file")
    report = analyze(K)
    rows = [r for r in report.rows if "skipped" not in r] or report.identities
    return report.to_json(), rows, EXIT_OK if report.ok else EXIT_FAIL


def cmd_extend(args):
    prefix = _parse_ints(args.gamma, "--gamma")
    strategy = parse_strategy(args.strategy, seed=args.seed)
    result = extend_gamma(prefix, args.d, args.mode, strategy)
    payload = {
        "d": args.d,
        "mode": args.mode,
        "steps": result.steps,
        "gamma": result.gamma,
        "complete": result.complete,
        "infeasible_index": result.infeasible_index,
    }
    if result.complete:
        payload["verify"] = result.verify().to_json()
    return payload, result.steps, EXIT_OK if result.complete else EXIT_FAIL


def _scheme(args, N: int) -> WeightScheme:
    if args.weights:
        with open(args.weights, 'r', encoding='utf-8') as f:
            return WeightScheme.from_json(f.read())
    return named_scheme(args.scheme, N)


def cmd_ortho(args):
    if args.action == "mu":
        weights = _scheme(args, args.N)
        mu = mu_matrix(weights, args.N)
        rows = [{"n": n, "k": k, "mu": mu.at(n, k)} for n in range(args.N + 1) for k in range(n + 1)]
        payload = {"N": args.N, "weights": weights.to_json(), "entries": rows, "ratios": mu_ratios(mu),
                   "inverse_ok": inverse_pair_check(weights, args.N)}
        return payload, rows, EXIT_OK if payload["inverse_ok"] else EXIT_FAIL
    if args.action == "invert":
        z = _parse_fracs(args.z, "--z")
        weights = _scheme(args, len(z) - 1)
        vectors = formal_h(z, weights)
        report = formal_unimodality_check(z, weights)
        payload = {"z": z, "q": vectors.q, "h": vectors.h, "g": vectors.g, "unimodality": report.rows,
                   "monotone": report.ok, "sufficient_condition": report.sufficient_condition}
        return payload, report.rows, EXIT_OK
    if args.action == "covers":
        if not 0 <= args.r <= args.m:
            raise RangeError(f"--r 应在 [0, {args.m}] 内")
        weights = _scheme(args, args.m)
        via_covers = coefficient_via_covers(weights, args.m, args.r)
        direct = unitary_family(weights, args.m)[args.m][args.r]
        payload = {"m": args.m, "r": args.r, "via_covers": via_covers, "coefficient": direct,
                   "equal": via_covers == direct}
        if args.m >= 2:
            payload["dimer_identity"] = to_jsonable(dimer_identity_check(args.m, args.r))
        return payload, None, EXIT_OK if payload["equal"] else EXIT_FAIL
    h = _parse_ints(args.h, "--h")
    d = len(h) - 1
    gamma = gamma_via_covers(h)
    matrix = h_half_to_gamma(h[:d // 2 + 1], d).entries
    payload = {"h": h, "gamma": gamma, "gamma_matrix": matrix, "agree": gamma == matrix}
    return payload, None, EXIT_OK if payload["agree"] else EXIT_FAIL


def cmd_macaulay(args):
    rep = macaulay_rep(args.a, args.k)
    bounds = pseudopower_bounds(args.a, args.k)
    payload = {"representation": rep.to_json(), "bounds": to_jsonable(bounds),
               "asymptotic_ratio": asymptotic_ratio(args.a, args.k)}
    if args.beta is not None:
        if args.beta < 1:
            raise RangeError("--beta 必须为正整数")
        payload["scaling_ratio"] = pseudopower_scaling_ratio(args.a, args.beta, args.k)
    return payload, [{"n": n, "i": i} for n, i in rep.terms], EXIT_OK


def _add_common(parser):
    parser.add_argument("--format", choices=["json", "csv", "table"], default="json", help="输出格式")
    parser.add_argument("--guard-faces", type=int, default=None, help="面枚举上限")
    parser.add_argument("--seed", type=int, default=None, help="随机策略的种子")
    parser.add_argument("-v", "--verbose", action="store_true", help="日志同时输出到 stderr")


def _add_sources(parser):
    parser.add_argument("--generator", help="cross:d | simplexboundary:d | cycle:n")
    parser.add_argument("--file", help="面列表文件")
    parser.add_argument("--h", help="逗号分隔的 h 向量")
    parser.add_argument("--f", help="逗号分隔的 f 向量")
    parser.add_argument("--g", help="逗号分隔的截断 g 向量（需 --d）")
    parser.add_argument("--gamma", help="逗号分隔的 gamma 向量（需 --d）")
    parser.add_argument("--d", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algcomb", description="单纯球面组合量的精确计算与检验")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vectors", help="f/h/g/γ 向量")
    _add_sources(p)
    _add_common(p)
    p.set_defaults(handler=cmd_vectors)

    p = sub.add_parser("check", help="可实现性检验")
    p.add_argument("mode", choices=["fvector", "cm", "sphere"])
    _add_sources(p)
    _add_common(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("link", help="链接条件报告")
    p.add_argument("action", choices=["analyze"])
    p.add_argument("--generator")
    p.add_argument("--file")
    _add_common(p)
    p.set_defaults(handler=cmd_link)

    p = sub.add_parser("extend", help="逐项延拓 gamma 向量")
    p.add_argument("--gamma", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=list(MODES), default="sphere")
    p.add_argument("--strategy", default="max", help="max | fraction:ρ | given:a,b,... | random")
    _add_common(p)
    p.set_defaults(handler=cmd_extend)

    p = sub.add_parser("ortho", help="正交多项式与路径计数")
    p.add_argument("action", choices=["mu", "invert", "covers", "gamma-dimers"])
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--scheme", choices=list(SCHEMES), default="chebyshev")
    p.add_argument("--weights", help="权重方案 JSON 文件")
    p.add_argument("--z")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--h")
    _add_common(p)
    p.set_defaults(handler=cmd_ortho)

    p = sub.add_parser("macaulay", help="Macaulay 表示与伪幂")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=int, default=None, help="伸缩比 (βa)^<k> / (β^{(k+1)/k} a^<k>)")
    _add_common(p)
    p.set_defaults(handler=cmd_macaulay)
    return parser


def emit(payload, rows, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json" or (fmt == "csv" and not rows):
        out.write(dumps(payload) + "\n")
    elif fmt == "csv":
        out.write(to_table(rows).to_csv(index=False))
    else:
        for key, value in to_jsonable(payload).items():
            if not isinstance(value, (list, dict)):
                out.write(f"{key}: {value}\n")
        if rows:
            out.write(to_table(rows).to_string(index=False) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    create_logger(verbose=args.verbose)
    try:
        if args.guard_faces is not None:
            override_guard('max_faces', args.guard_faces)
        if args.command == "ortho" and args.action == "invert" and not args.z:
            raise ParseError("ortho invert 需要 --z")
        if args.command == "ortho" and args.action == "gamma-dimers" and not args.h:
            raise ParseError("ortho gamma-dimers 需要 --h")
        payload, rows, code = args.handler(args)
    except PreconditionError as e:
        logger.error(json.dumps({"command": args.command, "error": str(e),
                                 "edges": [list(edge) for edge in e.edges]}, ensure_ascii=False))
        print(dumps({"error": str(e), "violating_edges": [list(edge) for edge in e.edges]}))
        return EXIT_PRECONDITION
    except (CombError, ValueError, OSError) as e:
        logger.error(json.dumps({"command": args.command, "error": str(e)}, ensure_ascii=False))
        print(dumps({"error": str(e)}))
        return EXIT_USAGE
    emit(payload, rows, args.format)
    logger.info(json.dumps({"command": args.command, "exit": code}, ensure_ascii=False))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
