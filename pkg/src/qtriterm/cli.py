"""Command-line front end.

    qtriterm eval-phi  --a A --b B --c C --x X --q Q
    qtriterm eval-qr   --a ... --q Q --k K --l L --m M --n N
    qtriterm group     enum|relations|cayley [--generators s3,s4,s5]
    qtriterm verify    base|all|bridge [--which Q|R] [--seed S]
    qtriterm admissible search [--seed S]

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 usage, 2 domain/pole/convergence, 3 group check failure, 4 failed
identity.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import coefficients as co
from . import symmetry as sym
from . import verifier as ver
from .errors import ConvergenceError, DomainError, PoleError, SearchExhausted
from .numeric import DEFAULT_DIGITS, BasePoint, SeriesControl
from .qseries import phi21_eval

SCHEMA = 1
EXIT_USAGE, EXIT_DOMAIN, EXIT_GROUP, EXIT_VERIFY = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    precision_digits: int = DEFAULT_DIGITS
    tol: str | None = None
    max_terms: int = 200_000
    seed: int = 0
    shifts: list[tuple[int, int, int, int]] = field(default_factory=lambda: [tuple(s) for s in ver.DEFAULT_SHIFTS])
    point: dict | None = None

    @classmethod
    def load(cls, args) -> "RunConfig":
        cfg = cls()
        env = os.environ.get("QTRITERM_PRECISION")
        if env:
            cfg.precision_digits = int(env)
        if args.config:
            with open(args.config) as fh:
                data = json.load(fh)
            for key in ("precision_digits", "tol", "max_terms", "seed"):
                if key in data:
                    setattr(cfg, key, data[key])
            if "shifts" in data:
                cfg.shifts = [tuple(int(v) for v in s) for s in data["shifts"]]
            if "point" in data:
                cfg.point = {k: str(v) for k, v in data["point"].items()}
        if args.precision is not None:
            cfg.precision_digits = args.precision
        if args.tol is not None:
            cfg.tol = args.tol
        if getattr(args, "max_terms", None) is not None:
            cfg.max_terms = args.max_terms
        if getattr(args, "seed", None) is not None:
            cfg.seed = args.seed
        if getattr(args, "shifts", None):
            cfg.shifts = _parse_shifts(args.shifts)
        given = {k: getattr(args, k, None) for k in "abcxq"}
        if any(v is not None for v in given.values()):
            merged = dict(cfg.point or {})
            merged.update({k: v for k, v in given.items() if v is not None})
            cfg.point = merged
        return cfg

    def control(self, series_tol: bool = True) -> SeriesControl:
        return SeriesControl(
            digits=self.precision_digits,
            tol=self.tol if series_tol else None,
            max_terms=self.max_terms,
        )

    def base_point(self, ctrl: SeriesControl) -> BasePoint:
        if not self.point or any(k not in self.point for k in "abcxq"):
            raise UsageError("a, b, c, x and q are all required")
        p = self.point
        return BasePoint.make(ctrl, p["a"], p["b"], p["c"], p["x"], p["q"], check=False)


def _parse_shifts(text: str):
    out = []
    for chunk in text.split(";"):
        vals = [int(v) for v in chunk.split(",")]
        if len(vals) != 4:
            raise UsageError(f"shift needs four integers: {chunk!r}")
        out.append(tuple(vals))
    return out


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _point_json(p: BasePoint, ctrl):
    return {k: ctrl.fmt(v) for k, v in zip("abcxq", p.as_tuple())}


def cmd_eval_phi(args, cfg: RunConfig) -> int:
    ctrl = cfg.control()
    p = cfg.base_point(ctrl)
    value, terms = phi21_eval(p.a, p.b, p.c, p.x, p.q, ctrl)
    _emit({"v": SCHEMA, "value": ctrl.fmt(value), "terms_used": terms})
    return 0


def cmd_eval_qr(args, cfg: RunConfig) -> int:
    ctrl = cfg.control()
    p = cfg.base_point(ctrl).validate()
    shift = tuple(getattr(args, k) for k in "klmn")
    res = co.evaluate_qr(shift, p, ctrl)
    _emit({
        "v": SCHEMA,
        "shift": list(shift),
        "Q": ctrl.fmt(res.Q),
        "R": ctrl.fmt(res.R),
        "residual": ctrl.fmt(res.residual),
        "terms_used": res.terms_used,
    })
    return 0


def cmd_group(args, cfg: RunConfig) -> int:
    gens = [g.strip() for g in args.generators.split(",")] if args.generators else list(sym.Q_GENERATORS)
    if args.action == "relations":
        rel = sym.check_relations()
        ok = all(h for _, h in rel)
        _emit({"v": SCHEMA, "all_hold": ok, "relations": [{"relation": n, "holds": h} for n, h in rel]})
        return 0 if ok else EXIT_GROUP
    elements = sym.enumerate_group(gens)
    if args.action == "cayley":
        sys.stdout.write(sym.cayley_dot(elements, gens))
        return 0
    _emit({
        "v": SCHEMA,
        "generators": [sym.ALIASES.get(g, g) for g in gens],
        "order": len(elements),
        "elements": [{"canonical": e.transform.serialize(), "word": list(e.word)} for e in elements],
    })
    return 0


def _resolve_point(cfg: RunConfig, ctrl: SeriesControl) -> BasePoint:
    if cfg.point:
        return cfg.base_point(ctrl).validate()
    found = ver.find_admissible(cfg.seed, ver.Constraints(shifts=tuple(cfg.shifts)), ctrl)
    print(f"admissible point from seed {cfg.seed} (orbit margin {found.orbit_margin:.3e})", file=sys.stderr)
    return found.point


def cmd_verify(args, cfg: RunConfig) -> int:
    ctrl = cfg.control(series_tol=False)
    p = _resolve_point(cfg, ctrl)
    shifts = tuple(cfg.shifts)
    if args.action == "all":
        report = ver.verify_all(p, args.which, ctrl, shifts, cfg.tol)
    elif args.action == "base":
        report = ver.verify_base(p, args.which, ctrl, shifts, cfg.tol)
    else:
        report = ver.verify_base(p, "bridge", ctrl, shifts, cfg.tol)
    _emit(report.to_json(ctrl))
    print(
        f"{report.kind} {report.which}: {len(report.records)} identities, "
        f"{sum(not r.passed for r in report.records)} failed, max relative error {float(report.max_error):.3e}",
        file=sys.stderr,
    )
    return 0 if report.passed else EXIT_VERIFY


def cmd_admissible(args, cfg: RunConfig) -> int:
    ctrl = cfg.control(series_tol=False)
    found = ver.find_admissible(cfg.seed, ver.Constraints(shifts=tuple(cfg.shifts)), ctrl)
    _emit({
        "v": SCHEMA,
        "seed": cfg.seed,
        "point": _point_json(found.point, ctrl),
        "orbit_margin": repr(found.orbit_margin),
    })
    return 0


def _common(p: argparse.ArgumentParser, point=True):
    p.add_argument("--precision", type=int, help="working precision in decimal digits")
    p.add_argument("--tol", help="series tolerance (eval-*) or base identity tolerance (verify)")
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--config", help="JSON run configuration; flags override it")
    if point:
        for name in "abcxq":
            p.add_argument(f"--{name}", help=f"parameter {name} (decimal string)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtriterm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval-phi", help="evaluate 2phi1(a, b; c; q, x)")
    _common(p)
    p.set_defaults(func=cmd_eval_phi)

    p = sub.add_parser("eval-qr", help="coefficients Q, R and the relation residual")
    _common(p)
    for name in "klmn":
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_eval_qr)

    p = sub.add_parser("group", help="enumerate the symmetry group or check its relations")
    p.add_argument("action", choices=("enum", "relations", "cayley"))
    p.add_argument("--generators", help="comma-separated names, e.g. s0,s1,s2,s3 or r0,r1,r2,r3")
    _common(p, point=False)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("verify", help="certify base formulas, the bridge, or all 96 symmetries")
    p.add_argument("action", choices=("base", "all", "bridge"))
    p.add_argument("--which", choices=("Q", "R"), default="Q")
    p.add_argument("--seed", type=int)
    p.add_argument("--shifts", help="semicolon-separated shifts, e.g. '0,0,1,1;2,1,1,0'")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("admissible", help="search for an admissible sample point")
    p.add_argument("action", choices=("search",))
    p.add_argument("--seed", type=int)
    p.add_argument("--shifts")
    _common(p, point=False)
    p.set_defaults(func=cmd_admissible)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.load(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleError, DomainError, ConvergenceError, SearchExhausted) as exc:
        _emit({"v": SCHEMA, "error": type(exc).__name__, "message": str(exc)})
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
