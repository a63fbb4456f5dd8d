"""Quivers, paths, and presentations A = KQ/I, plus the ``.quiver`` text format.

Paths compose left to right: ``pq`` means "first p, then q", so ``pq`` exists
iff ``t(p) == s(q)``.

Format::

    field: Q            # or: field: Fp 7
    vertices: 1 2
    arrow a1: 1 -> 2
    arrow a2: 2 -> 1
    relation a1*a2*a1
    relation a*b - 2/3 c*d
    nilbound: 6         # required when a relation has two or more terms
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import NonComposablePath, NonParallelRelation, NotAdmissible, ParseError, UnknownArrow
from .linalg import QQ, FieldDescriptor, Scalar


class Arrow(NamedTuple):
    index: int
    name: str
    source: int
    target: int


class Path(NamedTuple):
    """A path in the quiver. Vertices are 0-based indices; arrows are indices.

    A trivial path has ``arrows == ()`` and ``source == target``.
    """

    source: int
    target: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ParseError("arrow names must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("vertex labels must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise ParseError(f"arrow {a.name} has an undeclared endpoint")

    @classmethod
    def build(cls, vertices: Sequence, arrows: Iterable[tuple[str, object, object]]) -> Quiver:
        """Build from vertex labels and ``(name, source_label, target_label)`` triples."""
        labels = tuple(str(v) for v in vertices)
        pos = {v: i for i, v in enumerate(labels)}
        arrs = []
        for i, (name, s, t) in enumerate(arrows):
            try:
                arrs.append(Arrow(i, name, pos[str(s)], pos[str(t)]))
            except KeyError as exc:
                raise ParseError(f"arrow {name} uses undeclared vertex {exc.args[0]}") from None
        return cls(labels, tuple(arrs))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrow_named(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownArrow(f"unknown arrow {name!r}")

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def trivial(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow_path(self, a: int) -> Path:
        arr = self.arrows[a]
        return Path(arr.source, arr.target, (a,))

    def word(self, arrows: Sequence[int]) -> Path:
        """Path from a nonempty arrow-index sequence; NonComposablePath if it does not chain."""
        if not arrows:
            raise ValueError("empty arrow word; use trivial()")
        for x, y in zip(arrows, arrows[1:]):
            if self.arrows[x].target != self.arrows[y].source:
                raise NonComposablePath(
                    f"{self.arrows[x].name}*{self.arrows[y].name} is not composable")
        return Path(self.arrows[arrows[0]].source, self.arrows[arrows[-1]].target, tuple(arrows))

    def parse_path(self, text: str) -> Path:
        """``a*b*c`` or ``e<vertex>`` for a trivial path."""
        text = text.strip()
        if "*" not in text and text not in {a.name for a in self.arrows}:
            m = re.fullmatch(r"e(\S+)", text)
            if m and m.group(1) in self.vertices:
                return self.trivial(self.vertices.index(m.group(1)))
        names = [t.strip() for t in text.split("*")]
        return self.word([self.arrow_named(nm).index for nm in names])

    def path_name(self, p: Path) -> str:
        if p.is_trivial:
            return f"e{self.vertices[p.source]}"
        return "*".join(self.arrows[a].name for a in p.arrows)

    def word_name(self, arrows: Sequence[int]) -> str:
        return "*".join(self.arrows[a].name for a in arrows)


def compose_paths(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class AlgebraPresentation:
    """A bounded quiver algebra KQ/I.

    ``rational_relations`` keep the coefficients as written (exact rationals);
    ``relations`` gives them reduced into ``field``.
    """

    quiver: Quiver
    rational_relations: tuple[Mapping[Path, Scalar], ...]
    field: FieldDescriptor = QQ
    nilbound: int | None = None

    @classmethod
    def create(cls, quiver: Quiver, relations: Iterable[Mapping[Path, Scalar]],
               field: FieldDescriptor = QQ, nilbound: int | None = None) -> AlgebraPresentation:
        rels = []
        for rel in relations:
            rel = {p: c for p, c in rel.items() if c}
            if not rel:
                continue
            _check_relation(quiver, rel)
            rels.append(rel)
        P = cls(quiver, tuple(rels), field, nilbound)
        P.relations()  # surfaces bad denominators mod p
        return P

    def relations(self) -> list[dict[Path, Scalar]]:
        out = []
        for rel in self.rational_relations:
            r = {}
            for p, c in rel.items():
                try:
                    c = self.field.coerce(c)
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc)) from None
                if c:
                    r[p] = c
            if r:
                out.append(r)
        return out

    @property
    def monomial(self) -> bool:
        return all(len(r) == 1 for r in self.relations())

    def with_field(self, field: FieldDescriptor) -> AlgebraPresentation:
        return AlgebraPresentation.create(self.quiver, self.rational_relations, field, self.nilbound)

    def with_nilbound(self, nilbound: int | None) -> AlgebraPresentation:
        return AlgebraPresentation(self.quiver, self.rational_relations, self.field, nilbound)

    def to_text(self) -> str:
        q = self.quiver
        lines = []
        lines.append("field: Q" if self.field.is_rational
                     else f"field: Fp {self.field.characteristic}")
        lines.append("vertices: " + " ".join(q.vertices))
        for a in q.arrows:
            lines.append(f"arrow {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
        for rel in self.rational_relations:
            lines.append("relation " + _format_relation(q, rel))
        if self.nilbound is not None:
            lines.append(f"nilbound: {self.nilbound}")
        return "\n".join(lines) + "\n"


def _check_relation(quiver: Quiver, rel: Mapping[Path, Scalar], line: int | None = None) -> None:
    ends = set()
    for p in rel:
        if p.length < 2:
            raise NotAdmissible(
                f"relation term {quiver.path_name(p)} has length {p.length} < 2", line)
        ends.add((p.source, p.target))
    if len(ends) > 1:
        raise NonParallelRelation("relation terms do not share source and target", line)


def _format_coef(c: Scalar) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_relation(quiver: Quiver, rel: Mapping[Path, Scalar]) -> str:
    parts = []
    for i, (p, c) in enumerate(rel.items()):
        name = quiver.path_name(p)
        sign = "-" if c < 0 else "+"
        mag = abs(Fraction(c))
        body = name if mag == 1 else f"{_format_coef(mag)} {name}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[*+-]))")


def _tokenize(expr: str, line: int) -> list[tuple[str, str]]:
    pos, out = 0, []
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {expr[pos:].strip()[:1]!r} in relation", line)
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_relation(quiver: Quiver, expr: str, line: int = 0) -> dict[Path, Fraction]:
    toks = _tokenize(expr, line)
    if not toks:
        raise ParseError("empty relation", line)
    rel: dict[Path, Fraction] = {}
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i] == ("op", "+") or toks[i] == ("op", "-"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", line)
        first = False
        coef = Fraction(1)
        if i < len(toks) and toks[i][0] == "num":
            coef = Fraction(toks[i][1])
            i += 1
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
        names = []
        while True:
            if i >= len(toks) or toks[i][0] != "name":
                raise ParseError("expected an arrow name", line)
            names.append(toks[i][1])
            i += 1
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
                continue
            break
        try:
            idx = [quiver.arrow_named(n).index for n in names]
        except UnknownArrow as exc:
            raise UnknownArrow(str(exc), line) from None
        try:
            path = quiver.word(idx)
        except NonComposablePath as exc:
            raise NonComposablePath(str(exc), line) from None
        rel[path] = rel.get(path, Fraction(0)) + sign * coef
    return {p: c for p, c in rel.items() if c}


def parse_presentation(text: str) -> AlgebraPresentation:
    field = QQ
    vertices: list[str] | None = None
    arrow_specs: list[tuple[str, str, str, int]] = []
    relation_lines: list[tuple[str, int]] = []
    nilbound = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field:"):
            try:
                field = FieldDescriptor.parse(line[len("field:"):])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif line.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("duplicate vertices line", lineno)
            vertices = line[len("vertices:"):].split()
            if not vertices:
                raise ParseError("no vertices declared", lineno)
        elif line.startswith("arrow"):
            m = re.fullmatch(r"arrow\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(\S+)\s*->\s*(\S+)", line)
            if not m:
                raise ParseError(f"malformed arrow declaration {line!r}", lineno)
            arrow_specs.append((m.group(1), m.group(2), m.group(3), lineno))
        elif line.startswith("relation"):
            m = re.fullmatch(r"relation\s+(.+)", line)
            if not m:
                raise ParseError("empty relation", lineno)
            relation_lines.append((m.group(1), lineno))
        elif line.startswith("nilbound:"):
            val = line[len("nilbound:"):].strip()
            if not val.isdigit() or int(val) < 2:
                raise ParseError("nilbound must be an integer >= 2", lineno)
            nilbound = int(val)
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if vertices is None:
        raise ParseError("missing vertices line")
    vset = set(vertices)
    for name, s, t, lineno in arrow_specs:
        for v in (s, t):
            if v not in vset:
                raise ParseError(f"arrow {name} uses undeclared vertex {v}", lineno)
    names = [a[0] for a in arrow_specs]
    for i, nm in enumerate(names):
        if nm in names[:i]:
            raise ParseError(f"duplicate arrow name {nm}", arrow_specs[i][3])
    quiver = Quiver.build(vertices, [(n, s, t) for n, s, t, _ in arrow_specs])
    rels = []
    for expr, lineno in relation_lines:
        rel = parse_relation(quiver, expr, lineno)
        if not rel:
            raise ParseError("relation is identically zero", lineno)
        _check_relation(quiver, rel, lineno)
        rels.append(rel)
    try:
        return AlgebraPresentation.create(quiver, rels, field, nilbound)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
