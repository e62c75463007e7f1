"""Command-line interface: ``dagdepth <verb> ...``.

Exit status is 0 on success (valid decomposition, winning strategy), 2 when
a decomposition is invalid or a strategy loses, and 1 on usage, parse or
size-limit errors.  ``-`` in place of a file name reads standard input.
"""

from __future__ import annotations

import argparse
import sys

from dagdepth import decomposition as decmod
from dagdepth import game, solver, transform
from dagdepth.digraph import Digraph, parse_digraph, serialize_digraph
from dagdepth.errors import DagDepthError
from dagdepth.generators import FAMILIES, generate

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; usage errors are 1 here
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as fh:
        return fh.read(), path


def _graph(path: str) -> Digraph:
    text, source = _read(path)
    return parse_digraph(text, source)


def _dec(path: str) -> decmod.Decomposition:
    text, source = _read(path)
    return decmod.parse_decomposition(text, source)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _limit(args: argparse.Namespace, default: int) -> int:
    return default if args.limit is None else args.limit


def cmd_ddp(args) -> int:
    value = solver.ddp(_graph(args.graph), _limit(args, solver.DEFAULT_LIMIT))
    _emit(f"{value}\n", None)
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _graph(args.graph)
    dec = decmod.build_decomposition(g, _limit(args, solver.DEFAULT_LIMIT))
    if args.reduce:
        dec = transform.reduce(g, dec)
    _emit(decmod.serialize_decomposition(dec, header=True), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    g, d = _graph(args.graph), _dec(args.dec)
    violation = decmod.check_valid(g, d)
    if violation is None:
        _emit("OK\n", None)
        return EXIT_OK
    _emit(f"{violation}\n", None)
    return EXIT_NEGATIVE


def cmd_verify(args) -> int:
    g, d = _graph(args.graph), _dec(args.dec)
    report = game.verify_strategy(g, d, _limit(args, game.VERIFY_LIMIT))
    _emit(f"{report}\n" if report.won else str(report), None)
    return EXIT_OK if report.won else EXIT_NEGATIVE


def cmd_merge(args) -> int:
    g, d = _graph(args.graph), _dec(args.dec)
    a, b = args.pair
    verdict = transform.merge_verdict(g, d, a, b)
    merged = transform.merge_pair(d, a, b)
    _emit(f"# {verdict}\n" + decmod.serialize_decomposition(merged, header=True), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g, d = _graph(args.graph), _dec(args.dec)
    reduced = transform.reduce(g, d)
    _emit(decmod.serialize_decomposition(reduced, header=True), args.output)
    return EXIT_OK


def cmd_closure(args) -> int:
    g, d = _graph(args.graph), _dec(args.dec)
    _emit(serialize_digraph(transform.closure(g, d)), args.output)
    return EXIT_OK


def cmd_copnumber(args) -> int:
    value = game.copnumber_bruteforce(_graph(args.graph), _limit(args, game.COPNUMBER_LIMIT))
    _emit(f"{value}\n", None)
    return EXIT_OK


def cmd_gen(args) -> int:
    _emit(serialize_digraph(generate(args.family, args.n)), args.output)
    return EXIT_OK


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(obj: Digraph | decmod.Decomposition) -> str:
    if isinstance(obj, decmod.Decomposition):
        lines = ["digraph P {"]
        lines += [f"  {_quote(c)} [label={_quote(f'{c}:{obj.org[c]}')}];" for c in obj.copies]
        edges = sorted(obj.P.edges, key=lambda e: (decmod.copy_key(e[0]), decmod.copy_key(e[1])))
    else:
        lines = ["digraph D {"]
        lines += [f"  {_quote(v)};" for v in obj.vertices]
        edges = obj.sorted_edges()
    lines += [f"  {_quote(a)} -> {_quote(b)};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    text, source = _read(args.file)
    if source.endswith(".dec") or _looks_like_dec(text):
        obj: Digraph | decmod.Decomposition = decmod.parse_decomposition(text, source)
    else:
        obj = parse_digraph(text, source)
    _emit(to_dot(obj), args.output)
    return EXIT_OK


def _looks_like_dec(text: str) -> bool:
    return any(line.split("#", 1)[0].split()[:1] == ["n"] for line in text.splitlines())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dagdepth", description="DAG-depth decompositions and cop strategies.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text, *, graph=True, dec=False, output=False, limit=False):
        p = sub.add_parser(name, help=help_text)
        if graph:
            p.add_argument("graph", help=".dg file or - for stdin")
        if dec:
            p.add_argument("dec", help=".dec file or - for stdin")
        if output:
            p.add_argument("-o", "--output", metavar="FILE")
        if limit:
            p.add_argument("--limit", type=int, metavar="N", help="override the vertex limit")
        p.set_defaults(func=func)
        return p

    verb("ddp", cmd_ddp, "print the DAG-depth", limit=True)
    p = verb("decompose", cmd_decompose, "build an optimal decomposition", output=True, limit=True)
    p.add_argument("--reduce", action="store_true", help="merge optimally mergeable copies")
    verb("validate", cmd_validate, "check the neighbour cover condition", dec=True)
    verb("verify", cmd_verify, "play out every guided strategy", dec=True, limit=True)
    p = verb("merge", cmd_merge, "merge two copies", dec=True, output=True)
    p.add_argument("--pair", nargs=2, required=True, metavar="ID")
    verb("reduce", cmd_reduce, "greedy optimal merging", dec=True, output=True)
    verb("closure", cmd_closure, "largest digraph the decomposition still wins on",
         dec=True, output=True)
    verb("copnumber", cmd_copnumber, "brute-force lift-free cop number", limit=True)
    p = verb("gen", cmd_gen, "generate a digraph family", graph=False, output=True)
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("n", nargs="?", type=int)
    p = verb("export-dot", cmd_export_dot, "Graphviz DOT for a .dg or .dec file",
             graph=False, output=True)
    p.add_argument("file")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (DagDepthError, ValueError, OSError) as exc:
        print(f"dagdepth: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
