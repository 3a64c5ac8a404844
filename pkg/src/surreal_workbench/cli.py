"""Command-line front end: ``surreal <command> [options] EXPR...``.

Results go to stdout; remainder bounds and errors go to stderr as one
JSON object per line, so stdout stays stable for golden tests.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Iterable, Optional, Sequence

from . import config, signs
from . import parser as P
from . import transseries as ts
from .derivation import compose, derive_tr
from .errors import ParseError, PrecisionLoss, SurrealError
from .evaluator import Evaluator, cut, expand, render
from .hahn import TruncatedResult

COMMANDS = ("eval", "expand", "derive", "compose", "signexp", "simplest", "rank", "paths", "level")


def _coeff_mode(text: str) -> tuple[str, int]:
    if text == "exact":
        return config.EXACT, 50
    if text.startswith("float:"):
        try:
            p = int(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad precision in {text!r}")
        return config.NUMERIC, p
    raise argparse.ArgumentTypeError("expected 'exact' or 'float:P'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surreal", description="Exact surreal-number workbench.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--order", type=int, default=8, help="terms kept by truncating operations")
    ap.add_argument("--coeff", type=_coeff_mode, default=(config.EXACT, 50), help="exact | float:P")
    ap.add_argument("--depth", type=int, default=16, help="nesting depth limit")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("exprs", nargs="*", metavar="EXPR")
    return ap


class Session:
    def __init__(self, cfg: config.Config, out, err):
        self.cfg = cfg
        self.out = out
        self.err = err

    @property
    def json(self) -> bool:
        return self.cfg.format == "json"

    def emit(self, text: str, obj: dict) -> None:
        if self.json:
            self.out.write(json.dumps(obj, separators=(",", ":")) + "\n")
        else:
            self.out.write(text + "\n")

    def diag(self, obj: dict) -> None:
        self.err.write(json.dumps(obj, separators=(",", ":")) + "\n")

    def value(self, src: str, res: TruncatedResult) -> None:
        r = render(res)
        if r.bound is not None:
            self.diag({"input": src, "remainder_bound": r.bound, "order": self.cfg.order})
        self.emit(r.text, {"input": src, "format": r.kind, "text": r.text, "value": r.obj,
                           "remainder_bound": r.bound_obj})

    # commands ---------------------------------------------------------------

    def cmd_eval(self, src: str) -> None:
        res = cut(Evaluator(self.cfg.order)(P.parse(src)), self.cfg.order)
        self.value(src, res)

    def cmd_derive(self, src: str) -> None:
        res = cut(derive_tr(Evaluator(self.cfg.order)(P.parse(src))), self.cfg.order)
        self.value(src, res)

    def cmd_compose(self, f_src: str, x_src: str) -> None:
        ev = Evaluator(self.cfg.order)
        res = compose(ev(P.parse(f_src)), ev(P.parse(x_src)), self.cfg.order)
        self.value(f"{f_src} ; {x_src}", res)

    def cmd_expand(self, src: str) -> None:
        res, text = expand(src, self.cfg.order)
        if res.remainder_bound is not None:
            self.diag({"input": src, "remainder_bound": ts.format_monomial(res.remainder_bound),
                       "order": self.cfg.order})
        r = render(res)
        self.emit(text, {"input": src, "expansion": text, "format": r.kind, "value": r.obj,
                         "remainder_bound": r.bound_obj})

    def cmd_signexp(self, src: str) -> None:
        s = src.strip()
        if s and set(s.replace("−", "-")) <= {"+", "-"}:
            x = signs.SignExpansion.parse(s)
            text = str(signs.to_dyadic(x))
        else:
            d = _dyadic_arg(s)
            x = signs.from_dyadic(d)
            text = str(x)
        self.emit(text, {"input": src, "signs": str(x), "value": str(signs.to_dyadic(x)),
                         "birthday": signs.birthday(x)})

    def cmd_simplest(self, left_src: str, right_src: str) -> None:
        left, right = _set_arg(left_src), _set_arg(right_src)
        x = signs.simplest_in_gap(left, right)
        text = str(signs.to_dyadic(x))
        self.emit(text, {"left": left_src, "right": right_src, "value": text, "signs": str(x),
                         "birthday": signs.birthday(x)})

    def _exact(self, src: str) -> ts.TSeries:
        res = Evaluator(self.cfg.order)(P.parse(src))
        if not res.exact:
            raise PrecisionLoss(f"{src} has no finite exact normal form")
        return res.value

    def cmd_rank(self, src: str) -> None:
        n = ts.nr(self._exact(src))
        self.emit(str(n), {"input": src, "nr": n})

    def cmd_paths(self, src: str) -> None:
        ps = ts.paths(self._exact(src))
        lines = [str(p) for p in ps]
        if self.json:
            self.emit("", {"input": src, "paths": [ts.path_obj(p) for p in ps]})
        else:
            self.out.write("".join(line + "\n" for line in lines))

    def cmd_level(self, x_src: str, y_src: str) -> None:
        lv = ts.level_compare(self._exact(x_src), self._exact(y_src))
        self.emit(lv.value, {"x": x_src, "y": y_src, "level": lv.value})


def _dyadic_arg(s: str):
    from fractions import Fraction

    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {s!r}", 1, frozenset({"NUMBER"}))


def _set_arg(s: str) -> list:
    t = s.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ParseError("expected a set such as {0,1/2}", 1, frozenset({"{"}))
    body = t[1:-1].strip()
    return [_dyadic_arg(x.strip()) for x in body.split(",")] if body else []


_ARITY = {"compose": 2, "simplest": 2, "level": 2}


def _jobs(command: str, exprs: Sequence[str], stdin: Iterable[str]) -> list[tuple[str, ...]]:
    arity = _ARITY.get(command, 1)
    if exprs:
        items = list(exprs)
        if len(items) % arity:
            raise SystemExit(f"surreal {command}: expects arguments in groups of {arity}")
        return [tuple(items[i:i + arity]) for i in range(0, len(items), arity)]
    jobs = []
    for line in stdin:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = tuple(p.strip() for p in line.split(";")) if arity > 1 else (line,)
        if len(parts) != arity:
            raise SystemExit(f"surreal {command}: stdin lines need {arity} parts separated by ';'")
        jobs.append(parts)
    return jobs


_VALUED = ("--order", "--coeff", "--depth", "--format")


def _split_argv(argv: Sequence[str]) -> list[str]:
    """Move known options to the front so that inputs such as ``-+`` or
    ``-5/2`` are read as positionals rather than unknown flags."""
    opts, pos = [], []
    it = iter(argv)
    for a in it:
        if a == "--":
            pos.extend(it)
        elif a in _VALUED:
            opts.append(a)
            value = next(it, None)
            if value is not None:
                opts.append(value)
        elif a in ("-h", "--help") or a.split("=", 1)[0] in _VALUED:
            opts.append(a)
        else:
            pos.append(a)
    return opts + ["--"] + pos


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_split_argv(argv))
    mode, precision = args.coeff
    try:
        cfg = config.Config(order=args.order, coeff_mode=mode, precision=precision,
                            depth_limit=args.depth, format=args.format)
    except ValueError as exc:
        err.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return 2
    jobs = _jobs(args.command, args.exprs, stdin)
    status = 0
    with config.using(cfg):
        session = Session(cfg, out, err)
        handler: Callable = getattr(session, "cmd_" + args.command)
        for job in jobs:
            try:
                handler(*job)
            except SurrealError as exc:
                payload = {"input": " ; ".join(job), "error": exc.code, "exit_code": exc.exit_code,
                           "message": str(exc)}
                if isinstance(exc, ParseError):
                    payload["position"] = exc.position
                    payload["expected"] = sorted(exc.expected)
                session.diag(payload)
                status = status or exc.exit_code
            except RecursionError:
                session.diag({"input": " ; ".join(job), "error": "depth_exceeded", "exit_code": 5,
                              "message": "recursion limit reached"})
                status = status or 5
    return status


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
