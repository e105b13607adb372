"""Text formats for graphs, class families and instances.

Graph files are line oriented::

    c a comment
    p <n> <m>
    e <u> <v>

with vertices 1..n.  An instance file is a graph file that may also carry
``k <budget>`` and ``classes <spec>`` lines.

A class spec is either a comma-separated list of builtin names or
``@path`` to a pattern file.  Pattern files hold one graph block per
pattern, each preceded by ``f <family-index> [family-name]``; blocks with
the same index form one forbidden family.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .classes import ClassError, ClassFamily, ForbiddenFamily, PatternGraph, class_family
from .graph import Graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<text>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _ints(tokens: list[str], count: int, lineno: int, source: str) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)}", lineno, source)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"not an integer in {' '.join(tokens)!r}", lineno, source) from None


class _GraphBlock:
    """Accumulates one ``p``/``e`` block with full validation."""

    def __init__(self, source: str):
        self.source = source
        self.n: int | None = None
        self.m = 0
        self.header_line = 0
        self.edges: set[tuple[int, int]] = set()

    def header(self, tokens: list[str], lineno: int) -> None:
        if self.n is not None:
            raise ParseError("second 'p' header", lineno, self.source)
        n, m = _ints(tokens, 2, lineno, self.source)
        if n < 0 or m < 0:
            raise ParseError("negative vertex or edge count", lineno, self.source)
        self.n, self.m, self.header_line = n, m, lineno

    def edge(self, tokens: list[str], lineno: int) -> None:
        if self.n is None:
            raise ParseError("edge before the 'p' header", lineno, self.source)
        u, v = _ints(tokens, 2, lineno, self.source)
        for x in (u, v):
            if not 1 <= x <= self.n:
                raise ParseError(f"vertex {x} out of range 1..{self.n}", lineno, self.source)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno, self.source)
        key = (min(u, v), max(u, v))
        if key in self.edges:
            raise ParseError(f"duplicate edge {u} {v}", lineno, self.source)
        self.edges.add(key)

    def finish(self, lineno: int) -> Graph:
        if self.n is None:
            raise ParseError("missing 'p <n> <m>' header", lineno, self.source)
        if len(self.edges) != self.m:
            raise ParseError(f"header announces {self.m} edges, found {len(self.edges)}",
                             self.header_line, self.source)
        return Graph(range(1, self.n + 1), self.edges)


@dataclass(frozen=True)
class InstanceFile:
    graph: Graph
    k: int | None = None
    classes: str | None = None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if tokens and tokens[0] != "c":
            yield lineno, tokens


def parse_instance(text: str, source: str = "<text>") -> InstanceFile:
    block = _GraphBlock(source)
    k: int | None = None
    classes: str | None = None
    last = 0
    for lineno, tokens in _lines(text):
        last = lineno
        tag, rest = tokens[0], tokens[1:]
        if tag == "p":
            block.header(rest, lineno)
        elif tag == "e":
            block.edge(rest, lineno)
        elif tag == "k":
            (k,) = _ints(rest, 1, lineno, source)
        elif tag == "classes":
            if len(rest) != 1:
                raise ParseError("expected one class spec", lineno, source)
            classes = rest[0]
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno, source)
    return InstanceFile(block.finish(last), k, classes)


def parse_graph(text: str, source: str = "<text>") -> Graph:
    inst = parse_instance(text, source)
    if inst.k is not None or inst.classes is not None:
        raise ParseError("instance lines in a plain graph file", None, source)
    return inst.graph


def render_graph(g: Graph) -> str:
    """Inverse of parse_graph for graphs on 1..n."""
    n = len(g)
    if g.vertex_set != frozenset(range(1, n + 1)):
        raise ValueError("render_graph needs vertices 1..n")
    out = [f"p {n} {g.num_edges()}"]
    out += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_pattern_file(text: str, source: str = "<text>") -> ClassFamily:
    families: dict[int, tuple[str, list[PatternGraph]]] = {}
    block: _GraphBlock | None = None
    current = 0
    last = 0

    def close(lineno: int) -> None:
        if block is not None:
            name, pats = families[current]
            pats.append(PatternGraph(f"{name}#{len(pats) + 1}", block.finish(lineno)))

    for lineno, tokens in _lines(text):
        last = lineno
        tag, rest = tokens[0], tokens[1:]
        if tag == "f":
            if not rest:
                raise ParseError("expected 'f <family-index> [name]'", lineno, source)
            close(lineno)
            (current,) = _ints(rest[:1], 1, lineno, source)
            if current < 1:
                raise ParseError("family indices start at 1", lineno, source)
            name = rest[1] if len(rest) > 1 else f"family{current}"
            if current in families and len(rest) > 1 and families[current][0] != name:
                raise ParseError(f"family {current} renamed to {name!r}", lineno, source)
            families.setdefault(current, (name, []))
            block = _GraphBlock(source)
        elif tag in ("p", "e"):
            if block is None:
                raise ParseError("pattern block before any 'f' line", lineno, source)
            (block.header if tag == "p" else block.edge)(rest, lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno, source)
    close(last)
    if not families:
        raise ParseError("no families", None, source)
    missing = sorted(set(range(1, max(families) + 1)) - set(families))
    if missing:
        raise ParseError(f"family indices {missing} are missing", None, source)
    try:
        return ClassFamily(tuple(ForbiddenFamily(families[i][0], tuple(families[i][1]))
                                 for i in sorted(families)))
    except ClassError as exc:
        raise ParseError(str(exc), None, source) from None


def parse_class_spec(spec: str) -> ClassFamily:
    spec = spec.strip()
    if spec.startswith("@"):
        path = Path(spec[1:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read pattern file: {exc.strerror}", None, str(path)) from None
        return parse_pattern_file(text, str(path))
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if not names:
        raise ParseError("empty class spec", None, "classes")
    try:
        return class_family(names)
    except ClassError as exc:
        raise ParseError(str(exc), None, "classes") from None
