"""Command-line front end.

Exit codes: 0 for success or an equivalent verdict, 1 for a well-formed
negative verdict, 2 for usage, parse, data or resource errors.  Formula
arguments are inline text, or ``@path`` to read the text from a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import archlib
from .algebra import Algebra, AlgebraError, check_laws, classify
from .equivalence import (
    EquivVerdict,
    ResourceError,
    Verdict,
    cross_check,
    decide_equiv,
    oracle_equiv,
    oracle_equiv_fuzzy,
)
from .normalize import (
    NormalizationBudgetExceeded,
    NormalizationMode,
    pcl_normal_form,
    set_rep_to_json,
    to_set_rep,
)
from .semantics import (
    ConfigurationError,
    EvaluationError,
    configuration_from_json,
    configuration_to_json,
    element_to_json,
    eval_closure,
    eval_pcl,
)
from .syntax import ParseError, is_port_name, parse_pcl, ports_of, print_formula

__all__ = ["main", "run", "UsageError"]

# algebras a normal-form mode is sound for
_MODE_ALGEBRAS = {
    NormalizationMode.DEMORGAN: set(Algebra),
    NormalizationMode.KLEENE: {Algebra.BOOL2, Algebra.KLEENE3, Algebra.FUZZY},
    NormalizationMode.BOOLEAN: {Algebra.BOOL2},
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers --------------------------------------------------------


def _read_text(arg: str, what: str) -> str:
    if arg.startswith("@"):
        path = Path(arg[1:])
        try:
            return path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {what} file {str(path)!r}: {exc.strerror}") from None
    return arg


def _formula(arg: str, what: str = "formula"):
    text = _read_text(arg, what)
    try:
        return parse_pcl(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse {what} {text.strip()!r}: {exc}") from None


def _config(arg: str):
    text = arg if arg.lstrip().startswith("{") else None
    if text is None:
        path = Path(arg[1:] if arg.startswith("@") else arg)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read configuration file {str(path)!r}: {exc.strerror}") from None
    try:
        return configuration_from_json(text)
    except ConfigurationError as exc:
        raise UsageError(f"bad configuration {arg!r}: {exc}") from None


def _ports(arg: Optional[str], *formulas) -> List[str]:
    used = set()
    for f in formulas:
        used |= ports_of(f)
    if arg is None:
        if not used:
            raise UsageError("formulas mention no ports; pass --ports")
        return sorted(used)
    ports = [p.strip() for p in arg.split(",") if p.strip()]
    for p in ports:
        if not is_port_name(p):
            raise UsageError(f"invalid port name {p!r} in --ports")
    if len(set(ports)) != len(ports):
        raise UsageError(f"duplicate ports in --ports {arg!r}")
    missing = used - set(ports)
    if missing:
        raise UsageError(f"--ports {arg!r} does not cover {', '.join(sorted(missing))}")
    return ports


def _algebra(name: str) -> Algebra:
    try:
        return Algebra.from_name(name)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from None


def _mode(name: str) -> NormalizationMode:
    return NormalizationMode(name)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _witness_json(algebra: str, v: EquivVerdict) -> Optional[dict]:
    if v.witness is None:
        return None
    return {
        "algebra": algebra,
        "configuration": configuration_to_json(v.witness),
        "values": [element_to_json(x) for x in v.values],
    }


def _print_witness(algebra: str, v: EquivVerdict) -> None:
    left, right = v.values
    print(f"  witness ({algebra}): {v.witness}")
    print(f"  values: left = {left}, right = {right}")


# -- subcommands ----------------------------------------------------------


def _cmd_check(args) -> int:
    if args.expr is not None:
        text = args.expr
    elif args.file == "-":
        text = sys.stdin.read()
    else:
        path = Path(args.file[1:] if args.file.startswith("@") else args.file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read formula file {str(path)!r}: {exc.strerror}") from None
    try:
        z = parse_pcl(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse formula: {exc}") from None
    print(print_formula(z))
    return 0


def _evaluate(args, closure: bool) -> int:
    z = _formula(args.formula)
    g = _config(args.config)
    try:
        value = eval_closure(z, g) if closure else eval_pcl(z, g)
    except EvaluationError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit({"algebra": g.algebra.value, "value": element_to_json(value)})
    else:
        print(element_to_json(value))
    return 0


def _cmd_normalize(args) -> int:
    z = _formula(args.formula)
    ports = _ports(args.ports, z)
    nf = pcl_normal_form(z, ports, _mode(args.mode))
    if args.json:
        out = nf.to_json()
        if args.sets:
            out["sets"] = json.loads(set_rep_to_json(to_set_rep(nf)))
        _emit(out)
        return 0
    print(nf)
    if args.sets:
        print(set_rep_to_json(to_set_rep(nf)))
    return 0


def _cmd_equiv(args) -> int:
    left, right = _formula(args.left, "left formula"), _formula(args.right, "right formula")
    ports = _ports(args.ports, left, right)
    mode = _mode(args.mode)
    if args.algebra is not None:
        algebra = _algebra(args.algebra)
        if algebra not in _MODE_ALGEBRAS[mode]:
            raise UsageError(f"mode {mode.value} is not valid for the {algebra.value} algebra")
    if not args.oracle:
        same = decide_equiv(left, right, ports, mode)
        if args.json:
            _emit({"equivalent": same, "mode": mode.value, "witness": None})
        else:
            print("equivalent" if same else "not equivalent", f"({mode.value} normal forms)")
        return 0 if same else 1
    report = cross_check(left, right, ports, mode)
    witness = None
    for name, v in report.oracles.items():
        if v.refuted:
            witness = (name, v)
            break
    if args.json:
        _emit(
            {
                "equivalent": report.decided,
                "mode": mode.value,
                "witness": _witness_json(*witness) if witness else None,
                "oracles": {name: v.status.value for name, v in report.oracles.items()},
                "discrepancies": [d.kind for d in report.discrepancies],
            }
        )
    else:
        print("equivalent" if report.decided else "not equivalent", f"({mode.value} normal forms)")
        for name, v in report.oracles.items():
            print(f"  oracle {name}: {v.status.value} ({v.samples_checked} configurations)")
        if witness:
            _print_witness(*witness)
        for d in report.discrepancies:
            print(f"  discrepancy: {d.kind}" + (f" ({d.algebra})" if d.algebra else ""))
    return 0 if report.decided else 1


def _cmd_oracle(args) -> int:
    left, right = _formula(args.left, "left formula"), _formula(args.right, "right formula")
    ports = _ports(args.ports, left, right)
    algebra = _algebra(args.algebra)
    if algebra is Algebra.FUZZY:
        if args.grid is None:
            raise UsageError("the fuzzy oracle needs --grid D")
        v = oracle_equiv_fuzzy(left, right, ports, args.grid, args.max_size or 2)
    else:
        if args.grid is not None:
            raise UsageError("--grid only applies to --algebra fuzzy")
        v = oracle_equiv(left, right, ports, algebra, args.max_size)
    if args.json:
        _emit(
            {
                "equivalent": v.status is Verdict.EQUIVALENT,
                "mode": f"oracle:{algebra.value}",
                "status": v.status.value,
                "samples_checked": v.samples_checked,
                "witness": _witness_json(algebra.value, v),
            }
        )
    else:
        print(f"{v.status.value} ({v.samples_checked} configurations checked)")
        if v.refuted:
            _print_witness(algebra.value, v)
    return 1 if v.refuted else 0


def _cmd_template(args) -> int:
    if args.style == "p2p":
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        z, ports = archlib.p2p_formula(args.n)
    else:
        if args.masters < 1 or args.slaves < 1:
            raise UsageError("--masters and --slaves must be at least 1")
        z, ports = archlib.master_slave_formula(args.masters, args.slaves)
    if args.json:
        _emit({"formula": print_formula(z), "ports": ports})
    else:
        print(print_formula(z))
        print("ports: " + ",".join(ports))
    return 0


def _cmd_analyze(args) -> int:
    z = _formula(args.formula)
    g = _config(args.config)
    try:
        value, unc = eval_pcl(z, g), archlib.uncertainty(z, g)
    except EvaluationError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit(
            {
                "algebra": g.algebra.value,
                "value": element_to_json(value),
                "uncertainty": element_to_json(unc),
            }
        )
    else:
        print(f"value: {element_to_json(value)}")
        print(f"uncertainty: {element_to_json(unc)}")
    return 0


def _cmd_laws(args) -> int:
    algebra = _algebra(args.algebra)
    if args.grid is not None and args.grid < 1:
        raise UsageError("--grid must be at least 1")
    report = check_laws(algebra, args.grid)
    cls = classify(algebra, args.grid)
    if args.json:
        _emit(
            {
                "algebra": algebra.value,
                "classification": cls.value,
                "laws": report.results,
                "witnesses": {k: [str(e) for e in v] for k, v in report.witnesses.items()},
            }
        )
    else:
        for line in report.lines():
            print(line)
        print(f"classification: {cls.value}")
    return 0


# -- parser ---------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fpcl", description="Fuzzy interaction/configuration logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    modes = [m.value for m in NormalizationMode]
    algebras = [a.value for a in Algebra]

    c = sub.add_parser("check", help="parse a formula and print it canonically")
    c.add_argument("file", nargs="?", help="formula file ('-' for stdin)")
    c.add_argument("--expr", help="inline formula instead of a file")
    c.set_defaults(func=_cmd_check)

    for name, closure in (("eval", False), ("closure", True)):
        e = sub.add_parser(name, help=f"{'closure value' if closure else 'value'} on a configuration")
        e.add_argument("--formula", required=True)
        e.add_argument("--config", required=True, help="configuration JSON file or inline JSON")
        e.add_argument("--json", action="store_true")
        e.set_defaults(func=lambda a, c=closure: _evaluate(a, c))

    n = sub.add_parser("normalize", help="print the normal form")
    n.add_argument("--formula", required=True)
    n.add_argument("--ports")
    n.add_argument("--mode", choices=modes, default="demorgan")
    n.add_argument("--sets", action="store_true", help="also print the nested-set representation")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=_cmd_normalize)

    q = sub.add_parser("equiv", help="decide equivalence through normal forms")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--ports")
    q.add_argument("--mode", choices=modes, default="demorgan")
    q.add_argument("--algebra", help="target algebra; rejected if the mode is unsound for it")
    q.add_argument("--oracle", action="store_true", help="cross-check with brute-force oracles")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_equiv)

    o = sub.add_parser("oracle", help="brute-force comparison on one algebra")
    o.add_argument("--left", required=True)
    o.add_argument("--right", required=True)
    o.add_argument("--ports")
    o.add_argument("--algebra", required=True, choices=algebras)
    o.add_argument("--max-size", type=int, dest="max_size")
    o.add_argument("--grid", type=int)
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=_cmd_oracle)

    t = sub.add_parser("template", help="architecture style formulas")
    tsub = t.add_subparsers(dest="style", required=True, parser_class=_Parser)
    tp = tsub.add_parser("p2p")
    tp.add_argument("--n", type=int, required=True)
    tp.add_argument("--json", action="store_true")
    tm = tsub.add_parser("master-slave")
    tm.add_argument("--masters", type=int, required=True)
    tm.add_argument("--slaves", type=int, required=True)
    tm.add_argument("--json", action="store_true")
    t.set_defaults(func=_cmd_template)

    a = sub.add_parser("analyze", help="value and uncertainty of a formula on a configuration")
    a.add_argument("--formula", required=True)
    a.add_argument("--config", required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=_cmd_analyze)

    l = sub.add_parser("laws", help="check the algebra laws")
    l.add_argument("--algebra", required=True, choices=algebras)
    l.add_argument("--grid", type=int, help="grid denominator for the fuzzy algebra")
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_laws)
    return p


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command == "check" and args.file is None and args.expr is None:
            raise UsageError("check needs a FILE or --expr")
        return args.func(args)
    except UsageError as exc:
        print(f"fpcl: error: {exc}", file=sys.stderr)
        return 2
    except (ResourceError, NormalizationBudgetExceeded, ConfigurationError, AlgebraError, ValueError) as exc:
        print(f"fpcl: error: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
